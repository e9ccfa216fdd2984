use std::sync::Arc;

use serde::Serialize;

use super::{same_presentation, GenMorphism, MorphError};
use crate::exact::{Rational, RationalMatrix};
use crate::pbw::{MonomialIndex, NCPoly, Presentation};

pub const GROUP_ORDER_BOUND: usize = 8;

/// A finite group of automorphisms, closed under composition.
#[derive(Clone, Debug)]
pub struct AutoGroup {
    algebra: Arc<Presentation>,
    elements: Vec<GenMorphism>,
}

impl AutoGroup {
    pub fn algebra(&self) -> &Arc<Presentation> {
        &self.algebra
    }

    pub fn elements(&self) -> &[GenMorphism] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Closure of `gens` under composition, starting from the identity.
pub fn group_closure(algebra: Arc<Presentation>, gens: &[GenMorphism]) -> Result<AutoGroup, MorphError> {
    for g in gens {
        if !g.is_endomorphism() || !same_presentation(g.source(), &algebra) {
            return Err(MorphError::NotComposable { first: g.name.clone(), second: algebra.name().to_string() });
        }
    }
    let mut elements = vec![GenMorphism::identity(algebra.clone())];
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        for g in gens {
            let next = current.then(g)?;
            if !elements.iter().any(|e| e.same_map(&next)) {
                if elements.len() == GROUP_ORDER_BOUND {
                    return Err(MorphError::OrderBoundExceeded { bound: GROUP_ORDER_BOUND });
                }
                let name = if current.is_identity() { g.name.clone() } else { next.name.clone() };
                elements.push(next.with_name(name));
            }
        }
        frontier += 1;
    }
    Ok(AutoGroup { algebra, elements })
}

/// Fixed-subspace data for the filtered pieces `F_0 ⊂ … ⊂ F_degree`
/// (natural-exponent monomials by PBW length).
#[derive(Clone, Debug)]
pub struct FixedBasis {
    pub degree: u32,
    pub basis: Vec<NCPoly>,
    /// `dims[d] = dim F_d^G` from the Reynolds image.
    pub dims: Vec<usize>,
    /// `dims` recomputed as the common eigenvalue-1 kernel.
    pub eigen_dims: Vec<usize>,
    /// Reynolds averaging is idempotent on every piece.
    pub reynolds_idempotent: bool,
    /// Products of basis elements inside `F_degree` stay fixed.
    pub closed_under_product: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedSummary {
    pub degree: u32,
    pub basis: Vec<String>,
    pub dims: Vec<usize>,
    pub eigen_dims: Vec<usize>,
    pub reynolds_idempotent: bool,
    pub closed_under_product: bool,
}

impl FixedBasis {
    pub fn consistent(&self) -> bool {
        self.dims == self.eigen_dims && self.reynolds_idempotent && self.closed_under_product
    }

    pub fn summary(&self, p: &Presentation) -> FixedSummary {
        FixedSummary {
            degree: self.degree,
            basis: self.basis.iter().map(|b| p.format(b)).collect(),
            dims: self.dims.clone(),
            eigen_dims: self.eigen_dims.clone(),
            reynolds_idempotent: self.reynolds_idempotent,
            closed_under_product: self.closed_under_product,
        }
    }

    /// Dimensions of the graded pieces `F_d^G / F_{d−1}^G`.
    pub fn graded_dims(&self) -> Vec<usize> {
        (0..self.dims.len()).map(|d| self.dims[d] - if d == 0 { 0 } else { self.dims[d - 1] }).collect()
    }
}

fn reynolds(g: &AutoGroup, x: &NCPoly) -> Result<NCPoly, MorphError> {
    let mut out = NCPoly::zero();
    let w = Rational::new(1.into(), (g.order() as i64).into());
    for s in g.elements() {
        out.add_scaled(&s.apply(x)?, &w);
    }
    Ok(out)
}

pub fn fixed_subalgebra_basis(g: &AutoGroup, degree: u32) -> Result<FixedBasis, MorphError> {
    let p = g.algebra();
    let index = MonomialIndex::new(p.monomials_up_to(degree)).sorted_descending();
    let n = index.len();
    let mut averaged = Vec::with_capacity(n);
    let mut idempotent = true;
    let mut images: Vec<Vec<NCPoly>> = Vec::with_capacity(g.order());
    for s in g.elements() {
        let imgs = index
            .monomials()
            .iter()
            .map(|m| s.apply(&NCPoly::monomial(m.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        images.push(imgs);
    }
    let w = Rational::new(1.into(), (g.order() as i64).into());
    for k in 0..n {
        let mut r = NCPoly::zero();
        for imgs in &images {
            r.add_scaled(&imgs[k], &w);
        }
        averaged.push(r);
    }
    for r in averaged.iter().filter(|r| !r.is_zero()).take(32) {
        idempotent &= &reynolds(g, r)? == r;
    }
    let vector = |p: &NCPoly| index.vector(p).ok_or_else(|| MorphError::NotComposable {
        first: "group element".into(),
        second: "filtered piece".into(),
    });

    let mut dims = Vec::new();
    let mut eigen_dims = Vec::new();
    for d in 0..=degree {
        let cols: Vec<usize> = (0..n).filter(|&k| index.monomials()[k].total().to_natural() <= Some(u64::from(d))).collect();
        let rows: Vec<Vec<Rational>> = cols.iter().map(|&k| vector(&averaged[k])).collect::<Result<_, _>>()?;
        dims.push(RationalMatrix::from_rows(rows, n).rank());
        // common kernel of (s − 1) on F_d
        let mut stacked: Option<RationalMatrix> = None;
        for imgs in &images {
            let columns: Vec<Vec<Rational>> = cols
                .iter()
                .map(|&k| {
                    let diff = &imgs[k] - &NCPoly::monomial(index.monomials()[k].clone());
                    vector(&diff)
                })
                .collect::<Result<_, _>>()?;
            let m = RationalMatrix::from_columns(&columns, n);
            stacked = Some(match stacked {
                None => m,
                Some(s) => s.vstack(&m),
            });
        }
        let rank = stacked.map_or(0, |s| s.rank());
        eigen_dims.push(cols.len() - rank);
    }

    let all_rows: Vec<Vec<Rational>> = averaged.iter().map(vector).collect::<Result<_, _>>()?;
    let ech = RationalMatrix::from_rows(all_rows, n).echelon();
    let mut basis: Vec<NCPoly> = ech.rows.iter().map(|r| index.poly_from_integers(r)).collect();
    basis.sort_by(|a, b| a.leading().map(|x| x.0.clone()).cmp(&b.leading().map(|x| x.0.clone())));

    let mut closed = true;
    for a in &basis {
        for b in &basis {
            let (da, db) = (a.total_degree().unwrap_or_default(), b.total_degree().unwrap_or_default());
            if (da + db).to_natural() > Some(u64::from(degree)) {
                continue;
            }
            let prod = p.mul(a, b)?;
            for s in g.elements() {
                closed &= s.apply(&prod)? == prod;
            }
        }
    }
    Ok(FixedBasis {
        degree,
        basis,
        dims,
        eigen_dims,
        reynolds_idempotent: idempotent,
        closed_under_product: closed,
    })
}
