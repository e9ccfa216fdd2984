use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::{HalfInt, Rational};

/// A PBW monomial `g_0^{a_0} ⋯ g_{n-1}^{a_{n-1}}`, exponents stored doubled so
/// that a localized final generator can carry a half-integer exponent.
///
/// Ordered graded-lexicographically: total exponent first, then exponent
/// vectors compared left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Box<[i64]>,
}

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial { exps: vec![0; len].into_boxed_slice() }
    }

    pub fn generator(len: usize, index: usize) -> Self {
        let mut m = Self::one(len);
        m.exps[index] = 2;
        m
    }

    pub fn from_exponents(exps: &[HalfInt]) -> Self {
        Monomial { exps: exps.iter().map(|e| e.doubled()).collect() }
    }

    pub fn from_naturals(exps: &[u32]) -> Self {
        Monomial { exps: exps.iter().map(|&e| 2 * i64::from(e)).collect() }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exp(&self, i: usize) -> HalfInt {
        HalfInt::from_doubled(self.exps[i])
    }

    pub fn exponents(&self) -> impl Iterator<Item = HalfInt> + '_ {
        self.exps.iter().map(|&d| HalfInt::from_doubled(d))
    }

    pub fn with_exp(&self, i: usize, e: HalfInt) -> Monomial {
        let mut m = self.clone();
        m.exps[i] = e.doubled();
        m
    }

    pub fn add_exp(&self, i: usize, e: HalfInt) -> Monomial {
        self.with_exp(i, self.exp(i) + e)
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Sum of exponents (the unweighted PBW length).
    pub fn total(&self) -> HalfInt {
        HalfInt::from_doubled(self.exps.iter().sum())
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> HalfInt {
        HalfInt::from_doubled(self.exps.iter().zip(weights).map(|(&e, &w)| e * i64::from(w)).sum())
    }

    /// Index of the right-most generator with nonzero exponent.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e != 0)
    }

    /// Inserts `extra` zero exponents at position `at` (used by tensor products
    /// and by embeddings of subalgebras).
    pub fn widen(&self, at: usize, extra: usize) -> Monomial {
        let mut v = Vec::with_capacity(self.exps.len() + extra);
        v.extend_from_slice(&self.exps[..at]);
        v.extend(std::iter::repeat_n(0, extra));
        v.extend_from_slice(&self.exps[at..]);
        Monomial { exps: v.into_boxed_slice() }
    }

    /// Re-indexes exponents: entry `k` of the result is entry `map[k]` of self.
    pub fn permuted(&self, map: &[usize]) -> Monomial {
        Monomial { exps: map.iter().map(|&k| self.exps[k]).collect() }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let a: i64 = self.exps.iter().sum();
        let b: i64 = other.exps.iter().sum();
        a.cmp(&b).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite ℚ-combination of normal-ordered monomials. Zero coefficients are
/// never stored, so structural equality is equality in the algebra.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one(len: usize) -> Self {
        Self::constant(len, Rational::one())
    }

    pub fn constant(len: usize, c: Rational) -> Self {
        Self::term(Monomial::one(len), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = NCPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The constant term, if the polynomial is a scalar.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &NCPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    /// Maximum weighted degree over the support; `None` for zero.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<HalfInt> {
        self.terms.keys().map(|m| m.weighted_degree(weights)).max()
    }

    /// Maximum PBW length over the support.
    pub fn total_degree(&self) -> Option<HalfInt> {
        self.terms.keys().map(Monomial::total).max()
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: NCPoly) -> NCPoly {
        &self + &rhs
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scaled(&-Rational::one())
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn zero_coefficients_are_dropped() {
        let m = Monomial::generator(2, 0);
        let mut p = NCPoly::term(m.clone(), rat(3));
        p.add_term(m, rat(-3));
        assert!(p.is_zero());
        assert_eq!(p, NCPoly::zero());
    }

    #[test]
    fn graded_lex_order() {
        let a = Monomial::from_naturals(&[0, 2]);
        let b = Monomial::from_naturals(&[1, 0]);
        let c = Monomial::from_naturals(&[1, 1]);
        assert!(b < a);
        assert!(a < c);
        assert!(Monomial::from_naturals(&[0, 2]) < Monomial::from_naturals(&[1, 1]));
    }
}
