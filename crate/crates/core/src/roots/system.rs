use std::collections::{BTreeMap, BTreeSet};

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::RootError;
use crate::exact::{rat, Rational, RationalMatrix};

/// A reduced root system of one simple type (plus the degenerate `A0`, `B0`
/// and the non-simple `D2 = A1 × A1` needed as Levi factors).
///
/// Numbering is Bourbaki for classical types, F4 and G2; E-types follow the
/// OV convention (chain `1..n−1`, node `n` attached to node `n−3`), so that
/// `π1` of E7 is the 56-dimensional module.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    pub kind: char,
    pub rank: usize,
    /// `cartan[i][j] = ⟨α_i^∨, α_j⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Half squared lengths `(α_i, α_i) / 2`.
    pub symmetrizer: Vec<i64>,
    /// Positive roots in simple-root coordinates, by height.
    pub positive_roots: Vec<Vec<i64>>,
    /// Fundamental weights in simple-root coordinates.
    #[serde(skip)]
    pub fundamental_weights: Vec<Vec<Rational>>,
    /// `2ρ^∨` in simple-coroot coordinates: `⟨μ, 2ρ^∨⟩ = Σ μ_i two_rho_check[i]`.
    pub two_rho_check: Vec<i64>,
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

impl RootSystem {
    pub fn new(kind: char, rank: usize) -> Result<Self, RootError> {
        let unknown = || RootError::UnknownType { name: format!("{kind}{rank}") };
        let (edges, symmetrizer) = match (kind, rank) {
            ('A', n) => (chain(n), vec![1; n]),
            ('B', n) => (chain(n), (0..n).map(|i| if i + 1 == n { 1 } else { 2 }).collect()),
            ('C', n) if n >= 1 => (chain(n), (0..n).map(|i| if i + 1 == n { 2 } else { 1 }).collect()),
            ('D', 2) => (Vec::new(), vec![1, 1]),
            ('D', n) if n >= 3 => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                (e, vec![1; n])
            }
            ('E', n @ 6..=8) => {
                let mut e = chain(n - 1);
                e.push((n - 4, n - 1));
                (e, vec![1; n])
            }
            ('F', 4) => (chain(4), vec![2, 2, 1, 1]),
            ('G', 2) => (chain(2), vec![1, 3]),
            _ => return Err(unknown()),
        };
        let n = rank;
        let mut form = vec![vec![0i64; n]; n];
        for i in 0..n {
            form[i][i] = 2 * symmetrizer[i];
        }
        for &(i, j) in &edges {
            let v = -symmetrizer[i].max(symmetrizer[j]);
            form[i][j] = v;
            form[j][i] = v;
        }
        let cartan: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| 2 * form[i][j] / form[i][i]).collect()).collect();
        let positive_roots = positive_roots(&cartan);

        let at = RationalMatrix::from_rows(
            (0..n).map(|i| (0..n).map(|j| rat(cartan[j][i])).collect()).collect(),
            n,
        );
        let fundamental_weights = (0..n)
            .map(|i| {
                // α_j = Σ_i a_ij ω_i, so ω = (Aᵀ)^{−1} α
                let mut e = vec![rat(0); n];
                e[i] = rat(1);
                at.solve(&e).expect("Cartan matrix is invertible")
            })
            .collect();

        let mut two_rho = vec![Rational::zero(); n];
        for beta in &positive_roots {
            let norm = beta_norm(&form, beta);
            for j in 0..n {
                two_rho[j] += Rational::new((2 * beta[j] * symmetrizer[j]).into(), norm.into());
            }
        }
        let two_rho_check = two_rho
            .iter()
            .map(|r| r.to_integer().to_i64().filter(|_| r.is_integer()).expect("integral coroot sum"))
            .collect();
        Ok(RootSystem { kind, rank, cartan, symmetrizer, positive_roots, fundamental_weights, two_rho_check })
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    /// `rank + 2·|Φ⁺|`.
    pub fn dimension(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    /// The expected number of positive roots for the named type.
    pub fn classified_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.kind {
            'A' => n * (n + 1) / 2,
            'B' | 'C' => n * n,
            'D' if n == 2 => 2,
            'D' => n * (n - 1),
            'E' => [36, 63, 120][n - 6],
            'F' => 24,
            _ => 6,
        }
    }

    fn form(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.cartan[i][j] * self.symmetrizer[i]).collect())
            .collect()
    }

    fn check_weight(&self, weight: &[i64]) -> Result<(), RootError> {
        if weight.len() != self.rank || weight.iter().any(|&w| w < 0) {
            return Err(RootError::NonDominantWeight { system: self.label(), weight: weight.to_vec() });
        }
        Ok(())
    }

    /// `⟨μ, 2ρ^∨⟩` for `μ` in fundamental-weight coordinates.
    pub fn principal_eigenvalue(&self, mu: &[i64]) -> i64 {
        mu.iter().zip(&self.two_rho_check).map(|(a, b)| a * b).sum()
    }

    /// The weight `Σ c_j α_j` in fundamental-weight coordinates.
    pub fn root_to_weight(&self, c: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|i| (0..self.rank).map(|j| self.cartan[i][j] * c[j]).sum()).collect()
    }
}

fn beta_norm(form: &[Vec<i64>], beta: &[i64]) -> i64 {
    let n = beta.len();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| beta[i] * form[i][j] * beta[j]).sum()
}

/// Positive roots by root strings: `β + α_i` is a root iff `p − ⟨β, α_i^∨⟩ > 0`.
fn positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut out = Vec::new();
    while !layer.is_empty() {
        all.extend(layer.iter().cloned());
        out.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    out
}

/// Weyl dimension formula `∏_{β>0} ⟨λ+ρ, β^∨⟩ / ⟨ρ, β^∨⟩` for `λ` in
/// fundamental-weight coordinates.
pub fn rep_dimension(rs: &RootSystem, weight: &[i64]) -> Result<u64, RootError> {
    rs.check_weight(weight)?;
    let mut num = Rational::from_integer(1.into());
    for beta in &rs.positive_roots {
        let top: i64 = (0..rs.rank).map(|j| (weight[j] + 1) * beta[j] * rs.symmetrizer[j]).sum();
        let bottom: i64 = (0..rs.rank).map(|j| beta[j] * rs.symmetrizer[j]).sum();
        num *= Rational::new(top.into(), bottom.into());
    }
    Ok(num.to_integer().to_u64().expect("dimension fits in u64"))
}

/// Weight multiplicities of the irreducible module with highest weight
/// `weight` by Freudenthal's recursion. Keys are fundamental-weight
/// coordinates.
pub fn weight_multiplicities(rs: &RootSystem, weight: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>, RootError> {
    rs.check_weight(weight)?;
    let n = rs.rank;
    let form = rs.form();
    let d = &rs.symmetrizer;
    // weights are λ − γ with γ ≥ 0 in root coordinates
    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    mult.insert(vec![0; n], 1);
    let mut layer = vec![vec![0i64; n]];
    let lam_rho: Vec<i64> = weight.iter().map(|w| w + 1).collect();
    while !layer.is_empty() {
        let mut candidates = BTreeSet::new();
        for g in &layer {
            for i in 0..n {
                let mut up = g.clone();
                up[i] += 1;
                candidates.insert(up);
            }
        }
        let mut next = Vec::new();
        for gamma in candidates {
            let denom = 2 * (0..n).map(|j| lam_rho[j] * gamma[j] * d[j]).sum::<i64>() - beta_norm(&form, &gamma);
            let mut numer = 0i64;
            for beta in &rs.positive_roots {
                for k in 1.. {
                    let shifted: Vec<i64> = (0..n).map(|j| gamma[j] - k * beta[j]).collect();
                    if shifted.iter().any(|&x| x < 0) {
                        break;
                    }
                    let Some(&m) = mult.get(&shifted) else { continue };
                    // (λ − shifted, β)
                    let mu = {
                        let w = rs.root_to_weight(&shifted);
                        (0..n).map(|j| weight[j] - w[j]).collect::<Vec<_>>()
                    };
                    let ip: i64 = (0..n).map(|j| mu[j] * beta[j] * d[j]).sum();
                    numer += 2 * m * ip;
                }
            }
            if numer != 0 {
                assert!(denom != 0 && numer % denom == 0, "Freudenthal recursion is integral");
                let m = numer / denom;
                if m > 0 {
                    mult.insert(gamma.clone(), m);
                    next.push(gamma);
                }
            }
        }
        layer = next;
    }
    Ok(mult
        .into_iter()
        .map(|(gamma, m)| {
            let w = rs.root_to_weight(&gamma);
            ((0..n).map(|j| weight[j] - w[j]).collect(), m as u64)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        for (k, n) in [('A', 4), ('B', 3), ('C', 3), ('D', 4), ('D', 2), ('E', 6), ('E', 7), ('E', 8), ('F', 4), ('G', 2)] {
            let rs = RootSystem::new(k, n).unwrap();
            assert_eq!(rs.positive_roots.len(), rs.classified_positive_roots(), "{k}{n}");
        }
        assert_eq!(RootSystem::new('E', 8).unwrap().dimension(), 248);
        assert_eq!(RootSystem::new('G', 2).unwrap().cartan, vec![vec![2, -3], vec![-1, 2]]);
    }

    #[test]
    fn weyl_dimension_examples() {
        let c3 = RootSystem::new('C', 3).unwrap();
        assert_eq!(rep_dimension(&c3, &[0, 0, 1]).unwrap(), 14);
        let a1 = RootSystem::new('A', 1).unwrap();
        assert_eq!(rep_dimension(&a1, &[3]).unwrap(), 4);
        let e7 = RootSystem::new('E', 7).unwrap();
        assert_eq!(rep_dimension(&e7, &[1, 0, 0, 0, 0, 0, 0]).unwrap(), 56);
        assert_eq!(rep_dimension(&e7, &[0; 7]).unwrap(), 1);
        let e6 = RootSystem::new('E', 6).unwrap();
        assert_eq!(rep_dimension(&e6, &[1, 0, 0, 0, 0, 0]).unwrap(), 27);
        assert!(matches!(rep_dimension(&c3, &[1, -1, 0]), Err(RootError::NonDominantWeight { .. })));
    }

    #[test]
    fn freudenthal_agrees_with_weyl() {
        for (k, n, w) in [
            ('A', 2, vec![1, 1]),
            ('C', 3, vec![0, 0, 1]),
            ('G', 2, vec![1, 0]),
            ('B', 3, vec![0, 0, 1]),
            ('D', 6, vec![0, 0, 0, 0, 1, 0]),
            ('E', 7, vec![1, 0, 0, 0, 0, 0, 0]),
        ] {
            let rs = RootSystem::new(k, n).unwrap();
            let total: u64 = weight_multiplicities(&rs, &w).unwrap().values().sum();
            assert_eq!(total, rep_dimension(&rs, &w).unwrap(), "{k}{n} {w:?}");
        }
    }
}
