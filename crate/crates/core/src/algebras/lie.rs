use num_traits::{One, Zero};

use super::AlgError;
use crate::exact::{rat, Rational, RationalMatrix};
use crate::pbw::{Monomial, NCPoly, Presentation};

/// Structure constants `[x_i, x_j] = Σ_k c[i][j][k] x_k` of a finite-dimensional
/// Lie algebra over ℚ.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    names: Vec<String>,
    c: Vec<Rational>,
}

impl StructureConstants {
    pub fn zero(names: Vec<String>) -> Self {
        let n = names.len();
        StructureConstants { names, c: vec![Rational::zero(); n * n * n] }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim();
        (i * n + j) * n + k
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[self.idx(i, j, k)]
    }

    /// Sets `[x_i, x_j]` and, unless `i == j`, `[x_j, x_i] = −[x_i, x_j]`.
    pub fn set_bracket(&mut self, i: usize, j: usize, value: &[Rational]) {
        for (k, v) in value.iter().enumerate() {
            let a = self.idx(i, j, k);
            self.c[a] = v.clone();
            if i != j {
                let b = self.idx(j, i, k);
                self.c[b] = -v.clone();
            }
        }
    }

    /// Sets a single coefficient without touching the mirrored entry.
    pub fn set_raw(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let a = self.idx(i, j, k);
        self.c[a] = v;
    }

    pub fn bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        (0..self.dim()).map(|k| self.coeff(i, j, k).clone()).collect()
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket_vec(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in (0..n).filter(|&i| !u[i].is_zero()) {
            for j in (0..n).filter(|&j| !v[j].is_zero()) {
                let s = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.coeff(i, j, k);
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        out
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    if self.coeff(i, j, k) != &-self.coeff(j, i, k).clone() {
                        return Some((i, j));
                    }
                }
            }
        }
        None
    }

    /// First triple `i < j < k` with `[[x_i,x_j],x_k] + [[x_j,x_k],x_i] + [[x_k,x_i],x_j] ≠ 0`.
    pub fn jacobi_violation(&self) -> Option<((usize, usize, usize), Vec<Rational>)> {
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (xi, xj, xk) = (unit(i), unit(j), unit(k));
                    let a = self.bracket_vec(&self.bracket_vec(&xi, &xj), &xk);
                    let b = self.bracket_vec(&self.bracket_vec(&xj, &xk), &xi);
                    let c = self.bracket_vec(&self.bracket_vec(&xk, &xi), &xj);
                    let sum: Vec<Rational> = (0..n).map(|t| &a[t] + &b[t] + &c[t]).collect();
                    if sum.iter().any(|s| !s.is_zero()) {
                        return Some(((i, j, k), sum));
                    }
                }
            }
        }
        None
    }

    /// Structure constants of the span of the given matrices, which must be
    /// linearly independent and closed under the commutator.
    pub fn from_matrix_basis(names: Vec<String>, basis: &[RationalMatrix]) -> Result<Self, AlgError> {
        assert_eq!(names.len(), basis.len());
        let coords = MatrixCoordinates::new(basis)?;
        let mut sc = StructureConstants::zero(names);
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                let comm = commutator_matrix(&basis[i], &basis[j]);
                let v = coords
                    .coordinates(&comm)
                    .ok_or_else(|| AlgError::BadData("matrix span is not closed under brackets".into()))?;
                for (k, x) in v.into_iter().enumerate() {
                    sc.set_raw(i, j, k, x);
                }
            }
        }
        Ok(sc)
    }

    /// Killing form `tr(ad x_i ad x_j)`.
    pub fn killing_form(&self) -> RationalMatrix {
        let n = self.dim();
        let ad = |i: usize| {
            let mut m = RationalMatrix::zeros(n, n);
            for j in 0..n {
                for k in 0..n {
                    m.set(k, j, self.coeff(i, j, k).clone());
                }
            }
            m
        };
        let ads: Vec<RationalMatrix> = (0..n).map(ad).collect();
        let mut out = RationalMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let p = ads[i].mul(&ads[j]);
                let tr = (0..n).fold(Rational::zero(), |acc, t| acc + p.get(t, t));
                out.set(i, j, tr.clone());
                out.set(j, i, tr);
            }
        }
        out
    }
}

pub fn commutator_matrix(a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
    let ab = a.mul(b);
    let ba = b.mul(a);
    let mut out = RationalMatrix::zeros(ab.rows(), ab.cols());
    for i in 0..ab.rows() {
        for j in 0..ab.cols() {
            out.set(i, j, ab.get(i, j) - ba.get(i, j));
        }
    }
    out
}

/// Expresses matrices in a fixed linearly independent basis of matrices.
pub struct MatrixCoordinates {
    system: RationalMatrix,
}

impl MatrixCoordinates {
    pub fn new(basis: &[RationalMatrix]) -> Result<Self, AlgError> {
        let cols: Vec<Vec<Rational>> = basis.iter().map(flatten).collect();
        let len = cols.first().map_or(0, Vec::len);
        let system = RationalMatrix::from_columns(&cols, len);
        if system.rank() != basis.len() {
            return Err(AlgError::BadData("matrix basis is linearly dependent".into()));
        }
        Ok(MatrixCoordinates { system })
    }

    pub fn coordinates(&self, m: &RationalMatrix) -> Option<Vec<Rational>> {
        self.system.solve(&flatten(m))
    }
}

fn flatten(m: &RationalMatrix) -> Vec<Rational> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// The elementary matrix `E_ij` (0-based) of size `n`.
pub fn unit_matrix(n: usize, i: usize, j: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    m.set(i, j, rat(1));
    m
}

/// Integer linear combination of elementary matrices.
pub fn matrix_from_entries(n: usize, entries: &[(usize, usize, i64)]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for &(i, j, v) in entries {
        let cur = m.get(i, j) + rat(v);
        m.set(i, j, cur);
    }
    m
}

/// Universal enveloping algebra with generators `order[0], order[1], …`
/// (indices into the basis of `c`).
pub fn build_enveloping(c: &StructureConstants, order: &[usize]) -> Result<Presentation, AlgError> {
    let n = c.dim();
    let mut check = order.to_vec();
    check.sort_unstable();
    if check != (0..n).collect::<Vec<_>>() {
        return Err(AlgError::BadData("generator order must be a permutation of the basis".into()));
    }
    if let Some((i, j)) = c.antisymmetry_violation() {
        return Err(AlgError::AntisymmetryViolation {
            left: c.names[i].clone(),
            right: c.names[j].clone(),
        });
    }
    if let Some(((i, j, k), sum)) = c.jacobi_violation() {
        let names: Vec<String> = c.names.clone();
        return Err(AlgError::JacobiViolation {
            triple: [names[i].clone(), names[j].clone(), names[k].clone()],
            sum: crate::pbw::format_poly(&names, &linear_poly(&sum)),
        });
    }
    build_enveloping_unchecked(c, order)
}

/// Like [`build_enveloping`] but skips the Jacobi and antisymmetry checks, so
/// that a broken bracket can be fed to the consistency checker.
pub fn build_enveloping_unchecked(c: &StructureConstants, order: &[usize]) -> Result<Presentation, AlgError> {
    let n = c.dim();
    let mut position = vec![0; n];
    for (p, &b) in order.iter().enumerate() {
        position[b] = p;
    }
    let names: Vec<String> = order.iter().map(|&b| c.names[b].clone()).collect();
    let mut rules = Vec::new();
    for q in 0..n {
        for p in 0..q {
            let br = c.bracket(order[q], order[p]);
            let poly = NCPoly::from_terms(
                br.into_iter()
                    .enumerate()
                    .map(|(k, v)| (Monomial::generator(n, position[k]), v)),
            );
            rules.push(((q, p), poly));
        }
    }
    Ok(Presentation::new("U", names, vec![1; n], rules, None)?)
}

/// A linear polynomial from coordinates, generator order = coordinate order.
pub fn linear_poly(v: &[Rational]) -> NCPoly {
    NCPoly::from_terms(v.iter().enumerate().map(|(k, x)| (Monomial::generator(v.len(), k), x.clone())))
}

/// 𝔰𝔩₂ with basis (f, h, e): [h,e]=2e, [h,f]=−2f, [e,f]=h.
pub fn sl2_constants() -> StructureConstants {
    let mut c = StructureConstants::zero(vec!["f".into(), "h".into(), "e".into()]);
    let (f, h, e) = (0, 1, 2);
    let v = |a: i64, b: i64, d: i64| vec![rat(a), rat(b), rat(d)];
    c.set_bracket(h, e, &v(0, 0, 2));
    c.set_bracket(h, f, &v(-2, 0, 0));
    c.set_bracket(e, f, &v(0, 1, 0));
    c
}

pub fn build_sl2() -> Presentation {
    build_enveloping(&sl2_constants(), &[0, 1, 2]).expect("sl2 is a Lie algebra").with_name("U(sl2)")
}

/// Matrix basis of 𝔰𝔩_n in Chevalley order: negative root vectors, Cartan
/// (`h_i = E_ii − E_{i+1,i+1}`), positive root vectors.
pub fn sln_basis(n: usize) -> (Vec<String>, Vec<RationalMatrix>) {
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for i in 1..n {
        for j in 0..i {
            names.push(format!("E{}{}", i + 1, j + 1));
            mats.push(unit_matrix(n, i, j));
        }
    }
    for i in 0..n - 1 {
        names.push(format!("H{}", i + 1));
        mats.push(matrix_from_entries(n, &[(i, i, 1), (i + 1, i + 1, -1)]));
    }
    for i in 0..n {
        for j in i + 1..n {
            names.push(format!("E{}{}", i + 1, j + 1));
            mats.push(unit_matrix(n, i, j));
        }
    }
    (names, mats)
}

pub fn sln_constants(n: usize) -> StructureConstants {
    let (names, mats) = sln_basis(n);
    StructureConstants::from_matrix_basis(names, &mats).expect("sl_n basis")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl3_jacobi_by_direct_summation() {
        let c = sln_constants(3);
        assert_eq!(c.dim(), 8);
        assert!(c.antisymmetry_violation().is_none());
        assert!(c.jacobi_violation().is_none());
    }

    #[test]
    fn killing_form_of_sl2() {
        let k = sl2_constants().killing_form();
        // κ(h,h) = 8, κ(e,f) = 4
        assert_eq!(k.get(1, 1), &rat(8));
        assert_eq!(k.get(0, 2), &rat(4));
        assert_eq!(k.get(0, 0), &rat(0));
    }
}
