use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::{build_enveloping, tensor, AlgError, StructureConstants};
use crate::exact::{HalfInt, Rational, RationalMatrix};
use crate::pbw::{format_poly, Monomial, NCPoly, Presentation};

/// Bracket data for a minimal W-algebra: a Lie algebra 𝔤(0), a
/// representation 𝔤(1), a central generator `C`, and the skew bracket
/// `B(u, v) ∈ U(𝔤(0)) ⊗ 𝔽[C]`.
#[derive(Clone, Debug)]
pub struct MinimalWData {
    pub label: String,
    pub g0: StructureConstants,
    pub g1_names: Vec<String>,
    /// `action[x]` is the matrix of basis element `x` on 𝔤(1):
    /// `x · v_u = Σ_w action[x][w][u] v_w`.
    pub action: Vec<RationalMatrix>,
    pub central_name: String,
    /// `B(v_u, v_v)`, written over the generators `g0 ++ [C]`. Missing pairs
    /// are obtained by antisymmetry or are zero.
    pub bracket: BTreeMap<(usize, usize), NCPoly>,
}

impl MinimalWData {
    pub fn dim0(&self) -> usize {
        self.g0.dim()
    }

    pub fn dim1(&self) -> usize {
        self.g1_names.len()
    }

    /// `U(𝔤(0)) ⊗ 𝔽[C]`, the algebra in which `B` takes values.
    pub fn base_algebra(&self) -> Result<Presentation, AlgError> {
        let order: Vec<usize> = (0..self.dim0()).collect();
        let u = build_enveloping(&self.g0, &order)?;
        let c = Presentation::new("F[C]", vec![self.central_name.clone()], vec![1], Vec::new(), None)?;
        tensor(&u, &c)
    }

    pub fn b(&self, u: usize, v: usize) -> NCPoly {
        if let Some(p) = self.bracket.get(&(u, v)) {
            return p.clone();
        }
        if let Some(p) = self.bracket.get(&(v, u)) {
            return -p;
        }
        NCPoly::zero()
    }

    fn base_names(&self) -> Vec<String> {
        let mut n = self.g0.names().to_vec();
        n.push(self.central_name.clone());
        n
    }
}

/// A validated minimal W-algebra presentation.
#[derive(Debug, Serialize)]
pub struct MinimalW {
    #[serde(skip)]
    pub presentation: Presentation,
    pub label: String,
    pub dim0: usize,
    pub dim1: usize,
    /// Whether weights had to be raised to (2, 3, 4) for the relations to be
    /// filtration-lowering.
    pub weights_scaled: bool,
    pub weights: Vec<u32>,
}

impl MinimalW {
    pub fn g0_index(&self, x: usize) -> usize {
        x
    }

    pub fn g1_index(&self, v: usize) -> usize {
        self.dim0 + v
    }

    pub fn central_index(&self) -> usize {
        self.dim0 + self.dim1
    }
}

pub fn build_minimal_w(data: &MinimalWData, consistency_degree: u32) -> Result<MinimalW, AlgError> {
    let (d0, d1) = (data.dim0(), data.dim1());
    if data.action.len() != d0 || data.action.iter().any(|m| m.rows() != d1 || m.cols() != d1) {
        return Err(AlgError::BadData("action matrices have the wrong shape".into()));
    }
    for p in data.bracket.values() {
        if p.terms().any(|(m, _)| m.len() != d0 + 1) {
            return Err(AlgError::BadData("bracket values must live in U(g(0)) ⊗ F[C]".into()));
        }
    }
    check_representation(data)?;
    check_antisymmetry(data)?;
    let base = data.base_algebra()?;
    check_equivariance(data, &base)?;

    let mut names = data.g0.names().to_vec();
    names.extend(data.g1_names.iter().cloned());
    names.push(data.central_name.clone());
    let n = d0 + d1 + 1;

    let mut rules = Vec::new();
    for q in 0..d0 {
        for p in 0..q {
            let poly = NCPoly::from_terms(
                data.g0.bracket(q, p).into_iter().enumerate().map(|(k, c)| (Monomial::generator(n, k), c)),
            );
            rules.push(((q, p), poly));
        }
    }
    for v in 0..d1 {
        for x in 0..d0 {
            // [v, x] = −x·v
            let poly = NCPoly::from_terms(
                (0..d1).map(|w| (Monomial::generator(n, d0 + w), -data.action[x].get(w, v).clone())),
            );
            rules.push(((d0 + v, x), poly));
        }
    }
    let mut b_max = HalfInt::ZERO;
    let base_weights: Vec<u32> = std::iter::repeat_n(1, d0).chain([2]).collect();
    for b in 0..d1 {
        for a in 0..b {
            let poly = data.b(b, a);
            if let Some(deg) = poly.weighted_degree(&base_weights) {
                b_max = b_max.max(deg);
            }
            rules.push(((d0 + b, d0 + a), poly.map_monomials(|m| m.widen(d0, d1))));
        }
    }
    let weights_scaled = b_max >= HalfInt::from_int(2);
    let weights: Vec<u32> = if weights_scaled {
        std::iter::repeat_n(2, d0).chain(std::iter::repeat_n(3, d1)).chain([4]).collect()
    } else {
        std::iter::repeat_n(1, d0).chain(std::iter::repeat_n(1, d1)).chain([2]).collect()
    };
    let presentation = Presentation::new(data.label.clone(), names, weights.clone(), rules, None)?;
    let report = presentation.check_consistency(consistency_degree)?;
    if let Some(f) = report.failures.first() {
        return Err(AlgError::ConsistencyFailure { word: f.word.clone(), defect: f.defect.clone() });
    }
    Ok(MinimalW { presentation, label: data.label.clone(), dim0: d0, dim1: d1, weights_scaled, weights })
}

fn check_representation(data: &MinimalWData) -> Result<(), AlgError> {
    let d0 = data.dim0();
    let d1 = data.dim1();
    for i in 0..d0 {
        for j in i + 1..d0 {
            let ab = data.action[i].mul(&data.action[j]);
            let ba = data.action[j].mul(&data.action[i]);
            let br = data.g0.bracket(i, j);
            for r in 0..d1 {
                for c in 0..d1 {
                    let lhs = (0..d0).fold(Rational::zero(), |acc, k| acc + &br[k] * data.action[k].get(r, c));
                    if lhs != ab.get(r, c) - ba.get(r, c) {
                        return Err(AlgError::RepresentationViolation {
                            left: data.g0.names()[i].clone(),
                            right: data.g0.names()[j].clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_antisymmetry(data: &MinimalWData) -> Result<(), AlgError> {
    for (&(u, v), p) in &data.bracket {
        let bad = if u == v {
            !p.is_zero()
        } else {
            data.bracket.get(&(v, u)).is_some_and(|q| (p + q) != NCPoly::zero())
        };
        if bad {
            return Err(AlgError::AntisymmetryViolation {
                left: data.g1_names[u].clone(),
                right: data.g1_names[v].clone(),
            });
        }
    }
    Ok(())
}

fn check_equivariance(data: &MinimalWData, base: &Presentation) -> Result<(), AlgError> {
    let (d0, d1) = (data.dim0(), data.dim1());
    let names = data.base_names();
    for x in 0..d0 {
        let gx = base.gen(x);
        for u in 0..d1 {
            for v in u + 1..d1 {
                let lhs = base.commutator(&gx, &data.b(u, v))?;
                let mut rhs = NCPoly::zero();
                for w in 0..d1 {
                    rhs.add_scaled(&data.b(w, v), data.action[x].get(w, u));
                    rhs.add_scaled(&data.b(u, w), data.action[x].get(w, v));
                }
                let residual = &lhs - &rhs;
                if !residual.is_zero() {
                    return Err(AlgError::EquivarianceViolation {
                        x: data.g0.names()[x].clone(),
                        u: data.g1_names[u].clone(),
                        v: data.g1_names[v].clone(),
                        residual: format_poly(&names, &residual),
                    });
                }
            }
        }
    }
    Ok(())
}
