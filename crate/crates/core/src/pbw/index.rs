use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Monomial, NCPoly};
use crate::exact::Rational;

/// A fixed list of monomials used as coordinates for linear algebra.
#[derive(Clone, Debug, Default)]
pub struct MonomialIndex {
    monos: Vec<Monomial>,
    pos: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(monos: impl IntoIterator<Item = Monomial>) -> Self {
        let mut idx = MonomialIndex::default();
        for m in monos {
            idx.insert(m);
        }
        idx
    }

    /// Index of `m`, appending it if new.
    pub fn insert(&mut self, m: Monomial) -> usize {
        if let Some(&i) = self.pos.get(&m) {
            return i;
        }
        self.monos.push(m.clone());
        self.pos.insert(m, self.monos.len() - 1);
        self.monos.len() - 1
    }

    pub fn extend_from(&mut self, p: &NCPoly) {
        for (m, _) in p.terms() {
            self.insert(m.clone());
        }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monos
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.pos.get(m).copied()
    }

    /// Coordinates of `p`; `None` if `p` uses a monomial outside the index.
    pub fn vector(&self, p: &NCPoly) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in p.terms() {
            v[self.position(m)?] = c.clone();
        }
        Some(v)
    }

    pub fn poly(&self, v: &[Rational]) -> NCPoly {
        NCPoly::from_terms(self.monos.iter().zip(v).map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn poly_from_integers(&self, v: &[BigInt]) -> NCPoly {
        NCPoly::from_terms(self.monos.iter().zip(v).map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))))
    }

    /// Sorts the index in descending monomial order, so that echelon pivots
    /// are leading monomials.
    pub fn sorted_descending(&self) -> MonomialIndex {
        let mut monos = self.monos.clone();
        monos.sort_by(|a, b| b.cmp(a));
        MonomialIndex::new(monos)
    }
}
