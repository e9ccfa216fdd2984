use num_traits::{One, Zero};

use super::{MinimalNilpotentData, WhittakerError};
use crate::algebras::build_enveloping;
use crate::exact::{Rational, RationalMatrix};
use crate::pbw::{Monomial, MonomialIndex, NCPoly, Presentation};

/// `Q_χ = U(𝔤) / U(𝔤)·{x − χ(x) : x ∈ 𝔪}` through Kazhdan degree `degree`.
///
/// `U(𝔤)` is ordered with a complement of `𝔪` first and `𝔪` last, so a PBW
/// monomial `cᵃ mᵇ` reduces to `χ(m)ᵇ cᵃ`; the monomials `cᵃ` form a basis.
#[derive(Debug)]
pub struct QChiBasis {
    pub data: MinimalNilpotentData,
    pub enveloping: Presentation,
    /// Position in `enveloping` of each basis element of `𝔤`.
    pub position: Vec<usize>,
    /// Number of complement generators (they come first).
    pub complement_len: usize,
    /// Kazhdan degree `j + 2` of each enveloping generator.
    pub kazhdan: Vec<u32>,
    pub degree: u32,
    /// Complement monomials of Kazhdan degree ≤ `degree`, by degree.
    pub monomials: MonomialIndex,
    /// χ at each enveloping position.
    chi: Vec<Rational>,
}

pub fn build_qchi(data: &MinimalNilpotentData, degree: u32) -> Result<QChiBasis, WhittakerError> {
    let in_m = |i: &usize| data.m.contains(i);
    let mut order: Vec<usize> = Vec::new();
    order.extend(&data.lagrangian_complement);
    for j in 0..=2 {
        order.extend(data.part(j));
    }
    order.extend(data.m.iter().copied());
    debug_assert!(order[..order.len() - data.m.len()].iter().all(|i| !in_m(i)));
    let enveloping = build_enveloping(&data.g, &order)?.with_name(format!("U({})", data.label));
    let mut position = vec![0; order.len()];
    for (p, &b) in order.iter().enumerate() {
        position[b] = p;
    }
    let complement_len = order.len() - data.m.len();
    let kazhdan: Vec<u32> = order.iter().map(|&b| (data.grading[b] + 2) as u32).collect();
    let chi = order.iter().map(|&b| data.chi[b].clone()).collect();

    let mut monos = Vec::new();
    let mut exps = vec![0u32; order.len()];
    enumerate(&kazhdan[..complement_len], 0, degree, &mut exps, &mut monos);
    monos.sort_by_key(|m: &Monomial| {
        let k: u32 = (0..complement_len).map(|i| kazhdan[i] * (m.exp(i).doubled() as u32 / 2)).sum();
        (k, std::cmp::Reverse(m.clone()))
    });
    Ok(QChiBasis {
        data: data.clone(),
        enveloping,
        position,
        complement_len,
        kazhdan,
        degree,
        monomials: MonomialIndex::new(monos),
        chi,
    })
}

fn enumerate(weights: &[u32], at: usize, budget: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if at == weights.len() {
        out.push(Monomial::from_naturals(exps));
        return;
    }
    let mut k = 0;
    while k * weights[at] <= budget {
        exps[at] = k;
        enumerate(weights, at + 1, budget - k * weights[at], exps, out);
        k += 1;
    }
    exps[at] = 0;
}

impl QChiBasis {
    pub fn kazhdan_degree(&self, m: &Monomial) -> u32 {
        m.exponents()
            .zip(&self.kazhdan)
            .map(|(e, w)| w * e.to_natural().expect("natural exponent") as u32)
            .sum()
    }

    /// Monomials of the complement of exact PBW length `len`.
    pub fn monomials_of_length(&self, len: u64) -> usize {
        self.monomials.monomials().iter().filter(|m| m.total().to_natural() == Some(len)).count()
    }

    /// `dim F_k Q_χ` for `k = 0..=degree`.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.degree)
            .map(|k| self.monomials.monomials().iter().filter(|m| self.kazhdan_degree(m) <= k).count())
            .collect()
    }

    /// Replaces trailing `𝔪` factors by their χ-values.
    pub fn reduce(&self, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m, c) in p.terms() {
            let mut coeff = c.clone();
            let mut kept = m.clone();
            for i in self.complement_len..m.len() {
                let e = m.exp(i).to_natural().expect("natural exponent");
                if e > 0 {
                    for _ in 0..e {
                        coeff *= &self.chi[i];
                    }
                    kept = kept.with_exp(i, crate::exact::HalfInt::ZERO);
                }
            }
            if !coeff.is_zero() {
                out.add_term(kept, coeff);
            }
        }
        out
    }

    /// The class of a basis element of `𝔤`.
    pub fn basis_element(&self, i: usize) -> NCPoly {
        self.enveloping.gen(self.position[i])
    }

    /// The class of `Σ coords[i] x_i`.
    pub fn linear(&self, coords: &[Rational]) -> NCPoly {
        let mut out = NCPoly::zero();
        for (i, c) in coords.iter().enumerate() {
            out.add_scaled(&self.basis_element(i), c);
        }
        self.reduce(&out)
    }

    /// Product of two classes whose representatives are ad 𝔪-invariant on
    /// the left (which makes the product well defined).
    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, WhittakerError> {
        Ok(self.reduce(&self.enveloping.mul(a, b)?))
    }

    pub fn commutator(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, WhittakerError> {
        Ok(self.reduce(&self.enveloping.commutator(a, b)?))
    }

    pub fn vector(&self, p: &NCPoly) -> Result<Vec<Rational>, WhittakerError> {
        self.monomials.vector(p).ok_or_else(|| WhittakerError::NotExpressible {
            what: format!("{} exceeds Kazhdan degree {}", self.enveloping.format(p), self.degree),
        })
    }

    pub fn format(&self, p: &NCPoly) -> String {
        self.enveloping.format(p)
    }

    /// Basis of the ad 𝔪-invariants in `F_k Q_χ`, as polynomials.
    pub fn invariants(&self, k: u32) -> Result<Vec<NCPoly>, WhittakerError> {
        let cols: Vec<usize> =
            (0..self.monomials.len()).filter(|&c| self.kazhdan_degree(&self.monomials.monomials()[c]) <= k).collect();
        let mut stacked: Option<RationalMatrix> = None;
        for &x in &self.data.m {
            let gx = self.basis_element(x);
            let columns: Vec<Vec<Rational>> = cols
                .iter()
                .map(|&c| {
                    let y = NCPoly::monomial(self.monomials.monomials()[c].clone());
                    self.vector(&self.commutator(&gx, &y)?)
                })
                .collect::<Result<_, _>>()?;
            let m = RationalMatrix::from_columns(&columns, self.monomials.len());
            stacked = Some(match stacked {
                None => m,
                Some(s) => s.vstack(&m),
            });
        }
        let kernel = match stacked {
            Some(s) => s.kernel_basis(),
            None => (0..cols.len())
                .map(|i| (0..cols.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect(),
        };
        Ok(kernel
            .into_iter()
            .map(|v| {
                let mut full = vec![Rational::zero(); self.monomials.len()];
                for (x, &c) in v.into_iter().zip(&cols) {
                    full[c] = x;
                }
                self.monomials.poly(&full)
            })
            .collect())
    }

    /// Coordinates of `target` in the span of `basis`, if it lies there.
    pub fn express(&self, target: &NCPoly, basis: &[NCPoly]) -> Result<Option<Vec<Rational>>, WhittakerError> {
        let cols: Vec<Vec<Rational>> = basis.iter().map(|b| self.vector(b)).collect::<Result<_, _>>()?;
        let m = RationalMatrix::from_columns(&cols, self.monomials.len());
        Ok(m.solve(&self.vector(target)?))
    }
}
