use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Monomial, NCPoly, PbwError};
use crate::exact::{gen_binomial, HalfInt, Rational};

/// Exponent lattice allowed on a localized final generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    /// ℤ
    Integer,
    /// ½ℤ
    Half,
}

impl Lattice {
    pub fn admits(self, e: HalfInt) -> bool {
        match self {
            Lattice::Integer => e.is_integer(),
            Lattice::Half => true,
        }
    }
}

pub const DEFAULT_SWAP_BOUND: u64 = 1_000_000;
const AD_NILPOTENCY_LIMIT: usize = 64;

/// An algebra given by an ordered generator list and commutation rules
/// `g_j g_i = g_i g_j + R_ji` for `j > i`, each `R_ji` of strictly lower
/// filtration degree than `g_j g_i`.
///
/// Right-multiplication results are memoised internally; the cache never
/// changes observable results.
pub struct Presentation {
    name: String,
    names: Vec<String>,
    weights: Vec<u32>,
    localized: Option<Lattice>,
    rules: HashMap<(usize, usize), NCPoly>,
    /// For a localized final generator L: `ad_powers[i][r] = (ad L)^r (g_i)`.
    ad_powers: Vec<Vec<NCPoly>>,
    swap_bound: u64,
    cache: Mutex<HashMap<(Monomial, usize), NCPoly>>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            name: self.name.clone(),
            names: self.names.clone(),
            weights: self.weights.clone(),
            localized: self.localized,
            rules: self.rules.clone(),
            ad_powers: self.ad_powers.clone(),
            swap_bound: self.swap_bound,
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("name", &self.name)
            .field("generators", &self.names)
            .field("weights", &self.weights)
            .field("localized", &self.localized)
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl Presentation {
    /// Builds and validates a presentation. `rules` maps `(j, i)` with `j > i`
    /// to `R_ji`; absent pairs commute.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        weights: Vec<u32>,
        rules: impl IntoIterator<Item = ((usize, usize), NCPoly)>,
        localized: Option<Lattice>,
    ) -> Result<Self, PbwError> {
        let n = names.len();
        let mut seen = HashSet::new();
        for g in &names {
            if !seen.insert(g.as_str()) {
                return Err(PbwError::DuplicateGenerator(g.clone()));
            }
        }
        if weights.len() != n || weights.contains(&0) {
            return Err(PbwError::BadWeights);
        }
        if localized.is_some() && n == 0 {
            return Err(PbwError::BadWeights);
        }
        let mut table = HashMap::new();
        for ((j, i), r) in rules {
            if j <= i || j >= n {
                return Err(PbwError::BadRulePair { left: j, right: i });
            }
            if r.terms().any(|(m, _)| m.len() != n) {
                return Err(PbwError::BadRulePair { left: j, right: i });
            }
            if let Some(deg) = r.weighted_degree(&weights) {
                let bound = HalfInt::from_int(i64::from(weights[i] + weights[j]));
                if deg >= bound {
                    return Err(PbwError::NonLoweringRelation {
                        left: names[j].clone(),
                        right: names[i].clone(),
                        degree: deg.to_string(),
                        bound: bound.to_string(),
                    });
                }
            }
            if !r.is_zero() {
                table.insert((j, i), r);
            }
        }
        let mut p = Presentation {
            name: name.into(),
            names,
            weights,
            localized,
            rules: table,
            ad_powers: Vec::new(),
            swap_bound: DEFAULT_SWAP_BOUND,
            cache: Mutex::new(HashMap::new()),
        };
        if localized.is_some() {
            p.ad_powers = p.compute_ad_powers()?;
        }
        Ok(p)
    }

    pub fn with_swap_bound(mut self, bound: u64) -> Self {
        self.swap_bound = bound;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Renames the generators, keeping rules and order.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, PbwError> {
        if names.len() != self.names.len() {
            return Err(PbwError::WrongArity { expected: self.names.len(), found: names.len() });
        }
        let mut seen = HashSet::new();
        for g in &names {
            if !seen.insert(g.as_str()) {
                return Err(PbwError::DuplicateGenerator(g.clone()));
            }
        }
        self.names = names;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn localized(&self) -> Option<Lattice> {
        self.localized
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|g| g == name)
    }

    pub fn index(&self, name: &str) -> Result<usize, PbwError> {
        self.index_of(name).ok_or_else(|| PbwError::UnknownGenerator(name.to_string()))
    }

    /// `R_ji` (zero when the generators commute). Requires `j > i`.
    pub fn rule(&self, j: usize, i: usize) -> NCPoly {
        self.rules.get(&(j, i)).cloned().unwrap_or_default()
    }

    pub fn rules(&self) -> impl Iterator<Item = ((usize, usize), &NCPoly)> {
        let mut keys: Vec<_> = self.rules.keys().copied().collect();
        keys.sort_unstable();
        keys.into_iter().map(move |k| (k, &self.rules[&k]))
    }

    pub fn one(&self) -> NCPoly {
        NCPoly::one(self.ngens())
    }

    pub fn constant(&self, c: Rational) -> NCPoly {
        NCPoly::constant(self.ngens(), c)
    }

    pub fn gen(&self, i: usize) -> NCPoly {
        NCPoly::monomial(Monomial::generator(self.ngens(), i))
    }

    pub fn gen_named(&self, name: &str) -> Result<NCPoly, PbwError> {
        Ok(self.gen(self.index(name)?))
    }

    /// `g^e` as a single monomial, after checking the exponent is admissible.
    pub fn gen_pow(&self, i: usize, e: HalfInt) -> Result<NCPoly, PbwError> {
        self.check_exponent(i, e)?;
        Ok(NCPoly::monomial(Monomial::one(self.ngens()).with_exp(i, e)))
    }

    fn final_index(&self) -> usize {
        self.ngens() - 1
    }

    fn is_localized_final(&self, i: usize) -> bool {
        self.localized.is_some() && i == self.final_index()
    }

    fn check_exponent(&self, i: usize, e: HalfInt) -> Result<(), PbwError> {
        let ok = if self.is_localized_final(i) {
            self.localized.is_some_and(|l| l.admits(e))
        } else {
            e.to_natural().is_some()
        };
        if ok {
            Ok(())
        } else {
            Err(PbwError::ExponentNotAllowed { generator: self.names[i].clone(), exponent: e.to_string() })
        }
    }

    /// Checks that every monomial of `p` is admissible here.
    pub fn check_poly(&self, p: &NCPoly) -> Result<(), PbwError> {
        for (m, _) in p.terms() {
            if m.len() != self.ngens() {
                return Err(PbwError::WrongArity { expected: self.ngens(), found: m.len() });
            }
            for (i, e) in m.exponents().enumerate() {
                if !e.is_zero() {
                    self.check_exponent(i, e)?;
                }
            }
        }
        Ok(())
    }

    /// Normal form of the word `g_{i1}^{e1} g_{i2}^{e2} ⋯`.
    pub fn normal_order(&self, word: &[(usize, HalfInt)]) -> Result<NCPoly, PbwError> {
        let mut budget = self.swap_bound;
        let mut acc = self.one();
        for &(i, e) in word {
            if i >= self.ngens() {
                return Err(PbwError::UnknownGenerator(format!("#{i}")));
            }
            self.check_exponent(i, e)?;
            acc = self.right_mul_gen_pow(&acc, i, e, &mut budget)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, PbwError> {
        let mut budget = self.swap_bound;
        let mut out = NCPoly::zero();
        for (mb, cb) in b.terms() {
            let mut left = NCPoly::zero();
            for (ma, ca) in a.terms() {
                left.add_term(ma.clone(), ca * cb);
            }
            let prod = self.right_mul_monomial(&left, mb, &mut budget)?;
            out.add_scaled(&prod, &Rational::one());
        }
        Ok(out)
    }

    pub fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a NCPoly>) -> Result<NCPoly, PbwError> {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, a: &NCPoly, k: u32) -> Result<NCPoly, PbwError> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, PbwError> {
        Ok(&self.mul(a, b)? - &self.mul(b, a)?)
    }

    /// For each generator, the least `n ≤ bound` with `(ad x)^n (g) = 0`.
    pub fn ad_nilpotency_order(&self, x: &NCPoly, bound: usize) -> Result<Vec<usize>, PbwError> {
        (0..self.ngens())
            .map(|i| {
                let mut y = self.gen(i);
                let mut n = 0;
                while !y.is_zero() {
                    if n == bound {
                        return Err(PbwError::NotNilpotent { generator: self.names[i].clone(), bound });
                    }
                    y = self.commutator(x, &y)?;
                    n += 1;
                }
                Ok(n)
            })
            .collect()
    }

    /// Right-multiplies every term of `acc` by the monomial `m`.
    fn right_mul_monomial(&self, acc: &NCPoly, m: &Monomial, budget: &mut u64) -> Result<NCPoly, PbwError> {
        let mut acc = acc.clone();
        for (i, e) in m.exponents().enumerate() {
            if !e.is_zero() {
                acc = self.right_mul_gen_pow(&acc, i, e, budget)?;
            }
        }
        Ok(acc)
    }

    fn right_mul_gen_pow(&self, acc: &NCPoly, i: usize, e: HalfInt, budget: &mut u64) -> Result<NCPoly, PbwError> {
        if self.is_localized_final(i) {
            // The final generator is last in the order, so this only shifts exponents.
            return Ok(shift_exponent(acc, i, e));
        }
        let times = e.to_natural().expect("checked exponent");
        let mut acc = acc.clone();
        for _ in 0..times {
            let mut next = NCPoly::zero();
            for (m, c) in acc.terms() {
                next.add_scaled(&self.mono_times_gen(m, i, budget)?, c);
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Normal form of `m · g_i` for a normal monomial `m`.
    fn mono_times_gen(&self, m: &Monomial, i: usize, budget: &mut u64) -> Result<NCPoly, PbwError> {
        let j = match m.last_nonzero() {
            Some(j) if j > i => j,
            _ => return Ok(NCPoly::monomial(m.add_exp(i, HalfInt::ONE))),
        };
        let key = (m.clone(), i);
        if let Some(hit) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        if *budget == 0 {
            return Err(PbwError::NonTerminating { bound: self.swap_bound });
        }
        *budget -= 1;
        let k = m.exp(j);
        let result = if self.is_localized_final(j) && k.to_natural().is_none() {
            // L^k g_i = Σ_r C(k, r) (ad L)^r(g_i) L^{k-r}
            let head = m.with_exp(j, HalfInt::ZERO);
            let mut out = NCPoly::zero();
            for (r, term) in self.ad_powers[i].iter().enumerate() {
                let coeff = gen_binomial(k, r as u32);
                if coeff.is_zero() {
                    continue;
                }
                let prod = self.mono_times_poly(&head, term, budget)?;
                let shifted = shift_exponent(&prod, j, k - HalfInt::from_int(r as i64));
                out.add_scaled(&shifted, &coeff);
            }
            out
        } else {
            // m = head · g_j, and g_j g_i = g_i g_j + R_ji
            let head = m.add_exp(j, -HalfInt::ONE);
            let swapped = self.mono_times_gen(&head, i, budget)?;
            let mut out = NCPoly::zero();
            for (t, c) in swapped.terms() {
                out.add_scaled(&self.mono_times_gen(t, j, budget)?, c);
            }
            if let Some(r) = self.rules.get(&(j, i)) {
                out.add_scaled(&self.mono_times_poly(&head, r, budget)?, &Rational::one());
            }
            out
        };
        self.cache.lock().expect("cache poisoned").insert(key, result.clone());
        Ok(result)
    }

    fn mono_times_poly(&self, m: &Monomial, p: &NCPoly, budget: &mut u64) -> Result<NCPoly, PbwError> {
        let mut out = NCPoly::zero();
        let start = NCPoly::monomial(m.clone());
        for (t, c) in p.terms() {
            out.add_scaled(&self.right_mul_monomial(&start, t, budget)?, c);
        }
        Ok(out)
    }

    /// `(ad L)^r (g_i)` for the localized final generator `L`, until zero.
    fn compute_ad_powers(&self) -> Result<Vec<Vec<NCPoly>>, PbwError> {
        let last = self.final_index();
        let l = self.gen(last);
        (0..self.ngens())
            .map(|i| {
                let mut powers = vec![self.gen(i)];
                loop {
                    let cur = powers.last().expect("nonempty");
                    // L·cur only involves natural powers of L, so no ad-powers are needed yet.
                    let next = &self.mul(&l, cur)? - &self.mul(cur, &l)?;
                    if next.is_zero() {
                        break;
                    }
                    if powers.len() > AD_NILPOTENCY_LIMIT {
                        return Err(PbwError::NotNilpotent {
                            generator: self.names[i].clone(),
                            bound: AD_NILPOTENCY_LIMIT,
                        });
                    }
                    powers.push(next);
                }
                Ok(powers)
            })
            .collect()
    }

    /// Normal monomials with natural exponents and PBW length ≤ `degree`,
    /// in ascending monomial order.
    pub fn monomials_up_to(&self, degree: u32) -> Vec<Monomial> {
        let n = self.ngens();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(pos: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos == exps.len() {
                out.push(Monomial::from_naturals(exps));
                return;
            }
            for e in 0..=left {
                exps[pos] = e;
                rec(pos + 1, left - e, exps, out);
            }
            exps[pos] = 0;
        }
        rec(0, degree, &mut exps, &mut out);
        out.sort();
        out
    }

    /// Normal monomials of PBW length exactly `degree`.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        self.monomials_up_to(degree)
            .into_iter()
            .filter(|m| m.total() == HalfInt::from_int(i64::from(degree)))
            .collect()
    }
}

fn shift_exponent(p: &NCPoly, i: usize, e: HalfInt) -> NCPoly {
    if e.is_zero() {
        return p.clone();
    }
    p.map_monomials(|m| m.add_exp(i, e))
}
