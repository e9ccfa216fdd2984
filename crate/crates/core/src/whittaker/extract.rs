use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{QChiBasis, WhittakerError};
use crate::algebras::{MinimalWData, StructureConstants};
use crate::check::Check;
use crate::exact::{Rational, RationalMatrix};
use crate::pbw::{Monomial, NCPoly};

/// Invariant generators of `H = Q_χ^{ad 𝔪}` in Kazhdan degrees 2, 3, 4.
#[derive(Clone, Debug)]
pub struct Extracted {
    /// `Θ_x` for the basis of `𝔤♮`.
    pub natural: Vec<NCPoly>,
    /// `Θ_v` for the basis of `𝔤(1)`.
    pub g1: Vec<NCPoly>,
    /// The normalized image of the Casimir element.
    pub casimir: NCPoly,
    /// `dim F_k H` for `k = 0..=degree`.
    pub invariant_dims: Vec<usize>,
    /// The same count for a polynomial algebra on generators of Kazhdan
    /// degrees 2 (`𝔤♮`), 3 (`𝔤(1)`) and 4 (`C`).
    pub expected_dims: Vec<usize>,
    /// New generators needed in each degree beyond products of earlier ones.
    pub new_per_degree: Vec<usize>,
    /// Constants added to `Θ_x` so that `[Θ_x, Θ_y] = Θ_{[x,y]}` exactly.
    pub constant_shifts: Vec<Rational>,
    natural_constants: StructureConstants,
}

impl Extracted {
    pub fn count(&self) -> usize {
        self.natural.len() + self.g1.len() + 1
    }

    pub fn natural_constants(&self) -> &StructureConstants {
        &self.natural_constants
    }
}

fn weighted_count(weights: &[u32], k: u32) -> usize {
    fn go(weights: &[u32], budget: u32) -> usize {
        match weights.split_first() {
            None => 1,
            Some((&w, rest)) => (0..=budget / w).map(|i| go(rest, budget - i * w)).sum(),
        }
    }
    go(weights, k)
}

fn solve(rows: Vec<Vec<Rational>>, ncols: usize, rhs: &[Rational]) -> Option<Vec<Rational>> {
    RationalMatrix::from_rows(rows, ncols).solve(rhs)
}

fn strip_constant(p: &NCPoly, len: usize) -> NCPoly {
    let mut out = p.clone();
    let c = out.coefficient(&Monomial::one(len));
    out.add_term(Monomial::one(len), -c);
    out
}

/// The invariant in `span(basis)` whose linear coefficients at the enveloping
/// positions `positions` equal `target`.
fn lift_symbol(
    q: &QChiBasis,
    basis: &[NCPoly],
    positions: &[usize],
    target: &[Rational],
    what: &str,
) -> Result<NCPoly, WhittakerError> {
    let n = q.enveloping.ngens();
    let rows: Vec<Vec<Rational>> = positions
        .iter()
        .map(|&p| basis.iter().map(|b| b.coefficient(&Monomial::generator(n, p))).collect())
        .collect();
    let alpha = solve(rows, basis.len(), target)
        .ok_or_else(|| WhittakerError::NotExpressible { what: format!("no invariant with symbol {what}") })?;
    let mut out = NCPoly::zero();
    for (a, b) in alpha.iter().zip(basis) {
        out.add_scaled(b, a);
    }
    Ok(strip_constant(&out, n))
}

pub fn extract_generators(q: &QChiBasis, degree: u32) -> Result<Extracted, WhittakerError> {
    if degree < 4 || q.degree < 4 {
        return Err(WhittakerError::DegreeTooLowForC { degree: degree.min(q.degree) });
    }
    let data = &q.data;
    let n = q.enveloping.ngens();
    let (n0, n1) = (data.natural.len(), data.g1.len());
    let one = NCPoly::one(n);
    let invariant_dims: Vec<usize> =
        (0..=degree).map(|k| q.invariants(k).map(|v| v.len())).collect::<Result<_, _>>()?;
    let weights: Vec<u32> = std::iter::repeat_n(2, n0).chain(std::iter::repeat_n(3, n1)).chain([4]).collect();
    let expected_dims: Vec<usize> = (0..=degree).map(|k| weighted_count(&weights, k)).collect();

    // Θ_x: symbol x on 𝔤(0)
    let v2 = q.invariants(2)?;
    let g0_pos: Vec<usize> = data.part(0).iter().map(|&i| q.position[i]).collect();
    let g0_idx = data.part(0);
    let mut natural = Vec::with_capacity(n0);
    for (name, x) in data.natural_names.iter().zip(&data.natural) {
        let target: Vec<Rational> = g0_idx.iter().map(|&i| x[i].clone()).collect();
        natural.push(lift_symbol(q, &v2, &g0_pos, &target, name)?);
    }
    let sc = data.natural_constants()?;

    // constants making [Θ_a, Θ_b] = Θ_[a,b]
    let mut lower = natural.clone();
    lower.push(one.clone());
    let mut eq_rows = Vec::new();
    let mut eq_rhs = Vec::new();
    for a in 0..n0 {
        for b in a + 1..n0 {
            let br = q.commutator(&natural[a], &natural[b])?;
            let coords = q.express(&br, &lower)?.ok_or_else(|| WhittakerError::NotExpressible {
                what: format!("[Θ_{}, Θ_{}]", data.natural_names[a], data.natural_names[b]),
            })?;
            if coords[..n0] != sc.bracket(a, b)[..] {
                return Err(WhittakerError::NotExpressible {
                    what: format!("[Θ_{}, Θ_{}] has the wrong symbol", data.natural_names[a], data.natural_names[b]),
                });
            }
            eq_rows.push(sc.bracket(a, b));
            eq_rhs.push(coords[n0].clone());
        }
    }
    let shifts = if n0 == 0 {
        Vec::new()
    } else {
        solve(eq_rows, n0, &eq_rhs).ok_or_else(|| WhittakerError::NotExpressible {
            what: "constant shifts for g♮ brackets".into(),
        })?
    };
    for (t, c) in natural.iter_mut().zip(&shifts) {
        t.add_term(Monomial::one(n), c.clone());
    }

    // Θ_v: symbol v on 𝔤(1), then made equivariant
    let v3 = q.invariants(3)?;
    let g1_pos: Vec<usize> = data.g1.iter().map(|&i| q.position[i]).collect();
    let mut g1 = Vec::with_capacity(n1);
    for v in 0..n1 {
        let mut target = vec![Rational::zero(); n1];
        target[v] = Rational::one();
        g1.push(lift_symbol(q, &v3, &g1_pos, &target, &data.g1_names[v])?);
    }
    let actions: Vec<RationalMatrix> = (0..n0).map(|x| data.g1_action(x)).collect();
    let mut lower = natural.clone();
    lower.push(one.clone());
    let unknowns = n1 * n0 + n1;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in 0..n0 {
        for v in 0..n1 {
            let mut d = q.commutator(&natural[x], &g1[v])?;
            for (w, gw) in g1.iter().enumerate() {
                d.add_scaled(gw, &-actions[x].get(w, v).clone());
            }
            let coords = q.express(&d, &lower)?.ok_or_else(|| WhittakerError::NotExpressible {
                what: format!("[Θ_{}, Θ_{}] beyond 𝔤(1)", data.natural_names[x], data.g1_names[v]),
            })?;
            for z in 0..n0 {
                let mut row = vec![Rational::zero(); unknowns];
                for y in 0..n0 {
                    row[v * n0 + y] += sc.coeff(x, y, z);
                }
                for w in 0..n1 {
                    row[w * n0 + z] -= actions[x].get(w, v);
                }
                rows.push(row);
                rhs.push(-coords[z].clone());
            }
            let mut row = vec![Rational::zero(); unknowns];
            for w in 0..n1 {
                row[n1 * n0 + w] -= actions[x].get(w, v);
            }
            rows.push(row);
            rhs.push(-coords[n0].clone());
        }
    }
    if !rows.is_empty() {
        let adj = solve(rows, unknowns, &rhs)
            .ok_or_else(|| WhittakerError::NotExpressible { what: "equivariant choice of Θ_v".into() })?;
        for (v, t) in g1.iter_mut().enumerate() {
            for y in 0..n0 {
                t.add_scaled(&natural[y], &adj[v * n0 + y]);
            }
            t.add_term(Monomial::one(n), adj[n1 * n0 + v].clone());
        }
    }

    // C: Casimir image normalized by its coefficient on e
    let kappa = data.g.killing_form();
    let dim = data.dim();
    let mut omega = NCPoly::zero();
    for i in 0..dim {
        let mut unit = vec![Rational::zero(); dim];
        unit[i] = Rational::one();
        let dual = kappa.solve(&unit).expect("Killing form is nondegenerate");
        for (j, c) in dual.iter().enumerate() {
            if !c.is_zero() {
                let prod = q.enveloping.mul(&q.basis_element(j), &q.basis_element(i))?;
                omega.add_scaled(&prod, c);
            }
        }
    }
    let omega = q.reduce(&omega);
    let lead = omega.coefficient(&Monomial::generator(n, q.position[data.e]));
    if lead.is_zero() {
        return Err(WhittakerError::NotExpressible { what: "Casimir has no e term".into() });
    }
    let casimir = strip_constant(&omega.scaled(&(Rational::one() / lead)), n);

    // new generators per degree
    let mut gens_by_degree: Vec<(u32, NCPoly)> = natural.iter().map(|t| (2, t.clone())).collect();
    gens_by_degree.extend(g1.iter().map(|t| (3, t.clone())));
    gens_by_degree.push((4, casimir.clone()));
    let mut new_per_degree = Vec::new();
    for k in 0..=degree {
        let earlier: Vec<(u32, NCPoly)> = gens_by_degree.iter().filter(|(d, _)| *d < k).cloned().collect();
        let products = products_up_to(q, &earlier, k)?;
        let span = rank_of(q, &products)?;
        new_per_degree.push(invariant_dims[k as usize] - span);
    }

    Ok(Extracted {
        natural,
        g1,
        casimir,
        invariant_dims,
        expected_dims,
        new_per_degree,
        constant_shifts: shifts,
        natural_constants: sc,
    })
}

/// All ordered products of the given generators with total degree ≤ `k`.
fn products_up_to(q: &QChiBasis, gens: &[(u32, NCPoly)], k: u32) -> Result<Vec<NCPoly>, WhittakerError> {
    let n = q.enveloping.ngens();
    let mut out = vec![NCPoly::one(n)];
    let mut frontier = vec![(0u32, NCPoly::one(n), 0usize)];
    while let Some((d, p, start)) = frontier.pop() {
        for (i, (w, g)) in gens.iter().enumerate().skip(start) {
            if d + w <= k {
                let prod = q.mul(&p, g)?;
                out.push(prod.clone());
                frontier.push((d + w, prod, i));
            }
        }
    }
    Ok(out)
}

fn rank_of(q: &QChiBasis, polys: &[NCPoly]) -> Result<usize, WhittakerError> {
    let cols: Vec<Vec<Rational>> = polys.iter().map(|p| q.vector(p)).collect::<Result<_, _>>()?;
    Ok(RationalMatrix::from_columns(&cols, q.monomials.len()).rank())
}

/// Exact checks of relations (A1)–(A3) for the extracted generators.
pub fn relation_checks(q: &QChiBasis, ex: &Extracted) -> Result<Vec<Check>, WhittakerError> {
    let data = &q.data;
    let (n0, n1) = (ex.natural.len(), ex.g1.len());
    let mut a1 = true;
    for a in 0..n0 {
        for b in 0..n0 {
            let mut d = q.commutator(&ex.natural[a], &ex.natural[b])?;
            for (z, c) in ex.natural_constants.bracket(a, b).iter().enumerate() {
                d.add_scaled(&ex.natural[z], &-c.clone());
            }
            a1 &= d.is_zero();
        }
    }
    let mut a2 = true;
    for x in 0..n0 {
        let act = data.g1_action(x);
        for v in 0..n1 {
            let mut d = q.commutator(&ex.natural[x], &ex.g1[v])?;
            for w in 0..n1 {
                d.add_scaled(&ex.g1[w], &-act.get(w, v).clone());
            }
            a2 &= d.is_zero();
        }
    }
    let mut a3 = true;
    for t in ex.natural.iter().chain(&ex.g1) {
        a3 &= q.commutator(&ex.casimir, t)?.is_zero();
    }
    Ok(vec![
        Check::new("[Θ_x, Θ_y] = Θ_[x,y] in Q_χ", a1, ""),
        Check::new("[Θ_x, Θ_v] = Θ_(x·v) in Q_χ", a2, ""),
        Check::new("C is central", a3, ""),
    ])
}

/// `[Θ_u, Θ_v]` written in `U(𝔤♮) ⊗ 𝔽[C]` (generators `𝔤♮` then `C`).
pub fn derive_bracket(q: &QChiBasis, ex: &Extracted, u: usize, v: usize) -> Result<NCPoly, WhittakerError> {
    let n0 = ex.natural.len();
    let n1 = ex.g1.len();
    let n = q.enveloping.ngens();
    let mut basis = vec![NCPoly::one(n)];
    let mut monos = vec![Monomial::one(n0 + 1)];
    for (x, t) in ex.natural.iter().enumerate() {
        basis.push(t.clone());
        monos.push(Monomial::generator(n0 + 1, x));
    }
    for x in 0..n0 {
        for y in x..n0 {
            basis.push(q.mul(&ex.natural[x], &ex.natural[y])?);
            let mut e = vec![0u32; n0 + 1];
            e[x] += 1;
            e[y] += 1;
            monos.push(Monomial::from_naturals(&e));
        }
    }
    basis.push(ex.casimir.clone());
    monos.push(Monomial::generator(n0 + 1, n0));
    let g1_start = basis.len();
    basis.extend(ex.g1.iter().cloned());

    let br = q.commutator(&ex.g1[u], &ex.g1[v])?;
    let coords = q.express(&br, &basis)?.ok_or_else(|| WhittakerError::NotExpressible {
        what: format!("[Θ_{}, Θ_{}] in Kazhdan degree ≤ 4", q.data.g1_names[u], q.data.g1_names[v]),
    })?;
    if coords[g1_start..g1_start + n1].iter().any(|c| !c.is_zero()) {
        return Err(WhittakerError::NotExpressible {
            what: format!("[Θ_{}, Θ_{}] has 𝔤(1) components", q.data.g1_names[u], q.data.g1_names[v]),
        });
    }
    Ok(NCPoly::from_terms(monos.into_iter().zip(coords).filter(|(_, c)| !c.is_zero())))
}

/// Assembles the bracket data for `build_minimal_w`.
pub fn minimal_w_data(q: &QChiBasis, ex: &Extracted) -> Result<(MinimalWData, Vec<Check>), WhittakerError> {
    let n1 = ex.g1.len();
    let mut bracket = BTreeMap::new();
    let mut antisymmetric = true;
    for u in 0..n1 {
        antisymmetric &= derive_bracket(q, ex, u, u)?.is_zero();
        for v in u + 1..n1 {
            let b = derive_bracket(q, ex, u, v)?;
            antisymmetric &= derive_bracket(q, ex, v, u)? == -&b;
            if !b.is_zero() {
                bracket.insert((u, v), b);
            }
        }
    }
    let data = MinimalWData {
        label: format!("W({})", q.data.label),
        g0: ex.natural_constants.clone(),
        g1_names: q.data.g1_names.clone(),
        action: (0..ex.natural.len()).map(|x| q.data.g1_action(x)).collect(),
        central_name: "C".into(),
        bracket,
    };
    Ok((data, vec![Check::new("derived bracket is antisymmetric", antisymmetric, "")]))
}
