use num_traits::Zero;
use serde::Serialize;

use super::WhittakerError;
use crate::algebras::{matrix_from_entries, sln_basis, MatrixCoordinates, StructureConstants};
use crate::exact::{rat, Rational, RationalMatrix};

/// A simple Lie algebra in a basis of `ad h`-eigenvectors, with the minimal
/// nilpotent triple, the Lagrangian `ℓ ⊂ 𝔤(−1)`, `𝔪 = ℓ ⊕ 𝔤(−2)` and the
/// character `χ`.
#[derive(Clone, Debug)]
pub struct MinimalNilpotentData {
    pub label: String,
    pub g: StructureConstants,
    pub matrices: Vec<RationalMatrix>,
    pub e: usize,
    pub h: usize,
    pub f: usize,
    /// `ad h` eigenvalue of each basis element.
    pub grading: Vec<i64>,
    pub lagrangian: Vec<usize>,
    /// The rest of `𝔤(−1)`.
    pub lagrangian_complement: Vec<usize>,
    pub m: Vec<usize>,
    /// `χ` on each basis element, normalized by `χ(f) = 1`.
    pub chi: Vec<Rational>,
    /// Basis of `𝔤♮`, the centralizer of the triple in `𝔤(0)`.
    pub natural_names: Vec<String>,
    pub natural: Vec<Vec<Rational>>,
    /// `𝔤(1)` basis (indices into the basis of `𝔤`).
    pub g1: Vec<usize>,
    pub g1_names: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradingSummary {
    pub label: String,
    /// `dim 𝔤(j)` for `j = −2..=2`.
    pub dims: [usize; 5],
    pub lagrangian: Vec<String>,
    pub m: Vec<String>,
}

impl MinimalNilpotentData {
    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn part(&self, j: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grading[i] == j).collect()
    }

    pub fn summary(&self) -> GradingSummary {
        let names = |v: &[usize]| v.iter().map(|&i| self.g.names()[i].clone()).collect();
        GradingSummary {
            label: self.label.clone(),
            dims: [-2, -1, 0, 1, 2].map(|j| self.part(j).len()),
            lagrangian: names(&self.lagrangian),
            m: names(&self.m),
        }
    }

    fn bracket_basis(&self, a: usize, b: usize) -> Vec<Rational> {
        self.g.bracket(a, b)
    }

    fn from_basis(
        label: &str,
        names: Vec<String>,
        matrices: Vec<RationalMatrix>,
        (e, h, f): (&str, &str, &str),
        natural: Vec<(&str, RationalMatrix)>,
    ) -> Result<Self, WhittakerError> {
        let idx = |n: &str| names.iter().position(|x| x == n).expect("named basis element");
        let (e, h, f) = (idx(e), idx(h), idx(f));
        let g = StructureConstants::from_matrix_basis(names.clone(), &matrices)?;
        let n = g.dim();
        let mut grading = Vec::with_capacity(n);
        for i in 0..n {
            let v = g.bracket(h, i);
            let lambda = v[i].clone();
            let eigen = v.iter().enumerate().all(|(k, c)| if k == i { true } else { c.is_zero() });
            if !eigen || !lambda.is_integer() {
                return Err(WhittakerError::BadBasis(format!("{} is not an ad h eigenvector", names[i])));
            }
            grading.push(lambda.to_integer().try_into().expect("small eigenvalue"));
        }
        if grading.iter().filter(|&&j| j == 2).count() != 1 {
            return Err(WhittakerError::NotMinimalOrbit { dim_top: grading.iter().filter(|&&j| j == 2).count() });
        }
        let coords = MatrixCoordinates::new(&matrices)?;
        let natural_names = natural.iter().map(|(n, _)| n.to_string()).collect();
        let natural: Vec<Vec<Rational>> = natural
            .iter()
            .map(|(n, m)| coords.coordinates(m).ok_or_else(|| WhittakerError::BadBasis(format!("{n} not in g"))))
            .collect::<Result<_, _>>()?;

        let mut data = MinimalNilpotentData {
            label: label.to_string(),
            g,
            matrices,
            e,
            h,
            f,
            grading,
            lagrangian: Vec::new(),
            lagrangian_complement: Vec::new(),
            m: Vec::new(),
            chi: vec![Rational::zero(); n],
            natural_names,
            natural,
            g1: Vec::new(),
            g1_names: Vec::new(),
        };
        data.validate_triple()?;
        data.validate_natural()?;
        data.chi[f] = rat(1);
        data.choose_lagrangian()?;
        data.g1 = data.part(1);
        data.g1_names = (1..=data.g1.len()).map(|k| format!("u{k}")).collect();
        Ok(data)
    }

    fn validate_triple(&self) -> Result<(), WhittakerError> {
        let unit = |i: usize, c: i64| {
            let mut v = vec![Rational::zero(); self.dim()];
            v[i] = rat(c);
            v
        };
        let ok = self.bracket_basis(self.e, self.f) == unit(self.h, 1)
            && self.bracket_basis(self.h, self.e) == unit(self.e, 2)
            && self.bracket_basis(self.h, self.f) == unit(self.f, -2);
        if ok {
            Ok(())
        } else {
            Err(WhittakerError::BadBasis("e, h, f is not an sl2-triple".into()))
        }
    }

    fn validate_natural(&self) -> Result<(), WhittakerError> {
        for (name, x) in self.natural_names.iter().zip(&self.natural) {
            let in_g0 = x.iter().enumerate().all(|(i, c)| c.is_zero() || self.grading[i] == 0);
            let mut ef = vec![Rational::zero(); self.dim()];
            ef[self.e] = rat(1);
            let with_e = self.g.bracket_vec(x, &ef);
            ef[self.e] = rat(0);
            ef[self.f] = rat(1);
            let with_f = self.g.bracket_vec(x, &ef);
            if !in_g0 || with_e.iter().any(|c| !c.is_zero()) || with_f.iter().any(|c| !c.is_zero()) {
                return Err(WhittakerError::BadBasis(format!("{name} does not centralize the triple")));
            }
        }
        let expected = self.part(0).len() - 1;
        let rank = RationalMatrix::from_rows(self.natural.clone(), self.dim()).rank();
        if rank != expected || self.natural.len() != expected {
            return Err(WhittakerError::BadBasis(format!("g♮ basis has rank {rank}, expected {expected}")));
        }
        Ok(())
    }

    /// `⟨x, y⟩ = χ([x, y])` on `𝔤(−1)`.
    pub fn symplectic(&self, x: usize, y: usize) -> Rational {
        self.bracket_basis(x, y).iter().zip(&self.chi).map(|(a, b)| a * b).sum()
    }

    /// Greedy isotropic choice along the basis order of `𝔤(−1)`.
    fn choose_lagrangian(&mut self) -> Result<(), WhittakerError> {
        let minus_one = self.part(-1);
        let mut l: Vec<usize> = Vec::new();
        let mut rest = Vec::new();
        for &x in &minus_one {
            if l.len() < minus_one.len() / 2 && l.iter().all(|&y| self.symplectic(x, y).is_zero()) {
                l.push(x);
            } else {
                rest.push(x);
            }
        }
        // nondegeneracy of the form on 𝔤(−1)
        let gram = RationalMatrix::from_rows(
            minus_one.iter().map(|&a| minus_one.iter().map(|&b| self.symplectic(a, b)).collect()).collect(),
            minus_one.len(),
        );
        if l.len() * 2 != minus_one.len() || gram.rank() != minus_one.len() {
            return Err(WhittakerError::NotLagrangian);
        }
        self.m = l.iter().copied().chain(self.part(-2)).collect();
        // χ vanishes on [𝔪, 𝔪]
        for &a in &self.m {
            for &b in &self.m {
                let v: Rational = self.bracket_basis(a, b).iter().zip(&self.chi).map(|(x, y)| x * y).sum();
                if !v.is_zero() {
                    return Err(WhittakerError::NotLagrangian);
                }
            }
        }
        self.lagrangian = l;
        self.lagrangian_complement = rest;
        Ok(())
    }

    /// Matrix of `x ∈ 𝔤♮` (given by index into `natural`) on `𝔤(1)`:
    /// `[x, v_u] = Σ_w A[w][u] v_w`.
    pub fn g1_action(&self, x: usize) -> RationalMatrix {
        let d1 = self.g1.len();
        let mut a = RationalMatrix::zeros(d1, d1);
        for (u, &vu) in self.g1.iter().enumerate() {
            let mut unit = vec![Rational::zero(); self.dim()];
            unit[vu] = rat(1);
            let img = self.g.bracket_vec(&self.natural[x], &unit);
            for (w, &vw) in self.g1.iter().enumerate() {
                a.set(w, u, img[vw].clone());
            }
        }
        a
    }

    /// Structure constants of `𝔤♮` in its chosen basis.
    pub fn natural_constants(&self) -> Result<StructureConstants, WhittakerError> {
        let n0 = self.natural.len();
        let system = RationalMatrix::from_columns(&self.natural, self.dim());
        let mut sc = StructureConstants::zero(self.natural_names.clone());
        for a in 0..n0 {
            for b in 0..n0 {
                let br = self.g.bracket_vec(&self.natural[a], &self.natural[b]);
                let c = system.solve(&br).ok_or_else(|| WhittakerError::BadBasis("g♮ is not closed".into()))?;
                for (k, v) in c.into_iter().enumerate() {
                    sc.set_raw(a, b, k, v);
                }
            }
        }
        Ok(sc)
    }
}

/// The supported inputs: `sl3`, `sl4`, `sp4` (also `A2`, `A3`, `C2`).
pub fn minimal_nilpotent(name: &str) -> Result<MinimalNilpotentData, WhittakerError> {
    match name {
        "sl3" | "A2" => sl_data(3),
        "sl4" | "A3" => sl_data(4),
        "sp4" | "C2" => sp4_data(),
        other => Err(WhittakerError::Unsupported { name: other.to_string() }),
    }
}

fn sl_data(n: usize) -> Result<MinimalNilpotentData, WhittakerError> {
    let (names, mats) = sln_basis(n);
    let e = format!("E1{n}");
    let f = format!("E{n}1");
    // h = E11 − Enn as an extra name is not in the Chevalley basis; swap H1 for it
    let mut names = names;
    let mut mats = mats;
    let h_pos = names.iter().position(|x| x == "H1").expect("H1");
    names[h_pos] = "h".into();
    mats[h_pos] = matrix_from_entries(n, &[(0, 0, 1), (n - 1, n - 1, -1)]);
    let natural = if n == 3 {
        vec![("z", matrix_from_entries(3, &[(0, 0, 1), (1, 1, -2), (2, 2, 1)]))]
    } else {
        vec![
            ("f0", matrix_from_entries(4, &[(2, 1, 1)])),
            ("h0", matrix_from_entries(4, &[(1, 1, 1), (2, 2, -1)])),
            ("z", matrix_from_entries(4, &[(0, 0, 1), (1, 1, -1), (2, 2, -1), (3, 3, 1)])),
            ("e0", matrix_from_entries(4, &[(1, 2, 1)])),
        ]
    };
    MinimalNilpotentData::from_basis(&format!("sl{n}"), names, mats, (&e, "h", &f), natural)
}

fn sp4_data() -> Result<MinimalNilpotentData, WhittakerError> {
    // 0-based indices of E_ij in the symplectic 4×4 realization
    let m = |entries: &[(usize, usize, i64)]| matrix_from_entries(4, entries);
    let basis: Vec<(&str, RationalMatrix)> = vec![
        ("f", m(&[(2, 0, 1)])),
        ("w1", m(&[(1, 0, 1), (2, 3, -1)])),
        ("w2", m(&[(3, 0, 1), (2, 1, 1)])),
        ("f0", m(&[(3, 1, 1)])),
        ("h", m(&[(0, 0, 1), (2, 2, -1)])),
        ("h0", m(&[(1, 1, 1), (3, 3, -1)])),
        ("e0", m(&[(1, 3, 1)])),
        ("u1", m(&[(0, 1, 1), (3, 2, -1)])),
        ("u2", m(&[(0, 3, 1), (1, 2, 1)])),
        ("e", m(&[(0, 2, 1)])),
    ];
    let natural = vec![
        ("f0", basis[3].1.clone()),
        ("h0", basis[5].1.clone()),
        ("e0", basis[6].1.clone()),
    ];
    for (name, x) in &basis {
        // x^T J + J x = 0 with J = [[0, I], [−I, 0]]
        let j = m(&[(0, 2, 1), (1, 3, 1), (2, 0, -1), (3, 1, -1)]);
        let xt = RationalMatrix::from_rows((0..4).map(|c| (0..4).map(|r| x.get(r, c).clone()).collect()).collect(), 4);
        let s = xt.mul(&j);
        let sum: Vec<Rational> = (0..4).flat_map(|r| (0..4).map(move |c| (r, c))).map(|(r, c)| s.get(r, c) + j.mul(x).get(r, c)).collect();
        if sum.iter().any(|v| !v.is_zero()) {
            return Err(WhittakerError::BadBasis(format!("{name} is not symplectic")));
        }
    }
    let (names, mats): (Vec<String>, Vec<RationalMatrix>) = basis.into_iter().map(|(n, x)| (n.to_string(), x)).unzip();
    MinimalNilpotentData::from_basis("sp4", names, mats, ("e", "h", "f"), natural)
}
