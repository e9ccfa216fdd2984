use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Lattice, NCPoly, PbwError, Presentation};
use crate::exact::HalfInt;

/// Outcome of an overlap (diamond-lemma) check.
#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub presentation: String,
    pub degree: u32,
    pub overlaps_checked: usize,
    pub words_checked: usize,
    pub failures: Vec<OverlapFailure>,
}

/// A word whose two bracketings normal-order differently.
#[derive(Clone, Debug, Serialize)]
pub struct OverlapFailure {
    pub word: Vec<String>,
    /// Normal form of `(ab)c` (left-nested product).
    pub left: String,
    /// Normal form of `a(bc)` (right-nested product).
    pub right: String,
    /// `left − right`.
    pub defect: String,
}

/// `normal_order(u ++ v) = normal_order(u) · normal_order(v)` on seeded
/// random word pairs.
#[derive(Clone, Debug, Serialize)]
pub struct HomomorphismReport {
    pub presentation: String,
    pub seed: u64,
    pub pairs: usize,
    pub max_len: usize,
    pub failures: Vec<[String; 2]>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Letter = (usize, HalfInt);

impl Presentation {
    fn letters(&self) -> Vec<Letter> {
        let n = self.ngens();
        let mut out: Vec<Letter> = (0..n).map(|i| (i, HalfInt::ONE)).collect();
        match self.localized() {
            Some(Lattice::Integer) => out.push((n - 1, -HalfInt::ONE)),
            Some(Lattice::Half) => {
                out.push((n - 1, -HalfInt::ONE));
                out.push((n - 1, HalfInt::HALF));
                out.push((n - 1, -HalfInt::HALF));
            }
            None => {}
        }
        out
    }

    /// Checks that normal ordering is multiplicative on `pairs` random word
    /// pairs of length ≤ `max_len` each.
    pub fn homomorphism_check(&self, pairs: usize, max_len: usize, seed: u64) -> Result<HomomorphismReport, PbwError> {
        let letters = self.letters();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = |rng: &mut ChaCha8Rng| -> Vec<Letter> {
            let len = rng.gen_range(0..=max_len);
            (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
        };
        let mut failures = Vec::new();
        for _ in 0..pairs {
            let (u, v) = (word(&mut rng), word(&mut rng));
            let whole: Vec<Letter> = u.iter().chain(&v).copied().collect();
            let lhs = self.normal_order(&whole)?;
            let rhs = self.mul(&self.normal_order(&u)?, &self.normal_order(&v)?)?;
            if lhs != rhs {
                let show = |w: &[Letter]| w.iter().map(|l| self.letter_name(l)).collect::<Vec<_>>().join("*");
                failures.push([show(&u), show(&v)]);
            }
        }
        Ok(HomomorphismReport { presentation: self.name().to_string(), seed, pairs, max_len, failures })
    }

    fn letter_name(&self, l: &Letter) -> String {
        if l.1 == HalfInt::ONE {
            self.names()[l.0].clone()
        } else {
            format!("{}^{}", self.names()[l.0], l.1)
        }
    }

    /// Resolves every overlap `g_k g_j g_i` (`k > j > i`) both ways, then
    /// compares left- and right-nested products of every word of length
    /// `3..=degree` over the generators (and the admissible negative/half
    /// powers of a localized final generator).
    pub fn check_consistency(&self, degree: u32) -> Result<ConsistencyReport, PbwError> {
        let degree = degree.max(3);
        let letters = self.letters();
        let mut failures = Vec::new();
        let mut overlaps = 0;
        for a in &letters {
            for b in letters.iter().filter(|b| b.0 < a.0) {
                for c in letters.iter().filter(|c| c.0 < b.0) {
                    overlaps += 1;
                    let (pa, pb, pc) = (self.letter(a)?, self.letter(b)?, self.letter(c)?);
                    let ab = self.mul(&pa, &pb)?;
                    let bc = self.mul(&pb, &pc)?;
                    let left = self.mul(&ab, &pc)?;
                    let right = self.mul(&pa, &bc)?;
                    if left != right {
                        failures.push(self.failure(&[*a, *b, *c], &left, &right));
                    }
                }
            }
        }

        // Left-nested products, built by appending letters on the right.
        let mut left_fold: HashMap<Vec<usize>, NCPoly> = HashMap::new();
        let mut right_fold: HashMap<Vec<usize>, NCPoly> = HashMap::new();
        let letter_polys: Vec<NCPoly> = letters.iter().map(|l| self.letter(l)).collect::<Result<_, _>>()?;
        let mut frontier: Vec<Vec<usize>> = (0..letters.len()).map(|k| vec![k]).collect();
        for w in &frontier {
            left_fold.insert(w.clone(), letter_polys[w[0]].clone());
            right_fold.insert(w.clone(), letter_polys[w[0]].clone());
        }
        let mut words = 0;
        for _len in 2..=degree {
            let mut next = Vec::with_capacity(frontier.len() * letters.len());
            for w in &frontier {
                for (k, poly) in letter_polys.iter().enumerate() {
                    let mut ext = w.clone();
                    ext.push(k);
                    let lp = self.mul(&left_fold[w], poly)?;
                    left_fold.insert(ext.clone(), lp);
                    next.push(ext);
                }
            }
            // Right-nested: prepend the first letter to the already-computed suffix.
            for w in &next {
                let rp = self.mul(&letter_polys[w[0]], &right_fold[&w[1..].to_vec()])?;
                right_fold.insert(w.clone(), rp);
            }
            if next[0].len() >= 3 {
                for w in &next {
                    words += 1;
                    let (l, r) = (&left_fold[w], &right_fold[w]);
                    if l != r {
                        let ls: Vec<Letter> = w.iter().map(|&k| letters[k]).collect();
                        failures.push(self.failure(&ls, l, r));
                    }
                }
            }
            frontier = next;
        }
        Ok(ConsistencyReport {
            presentation: self.name().to_string(),
            degree,
            overlaps_checked: overlaps,
            words_checked: words,
            failures,
        })
    }

    fn letter(&self, l: &Letter) -> Result<NCPoly, PbwError> {
        self.gen_pow(l.0, l.1)
    }

    fn failure(&self, word: &[Letter], left: &NCPoly, right: &NCPoly) -> OverlapFailure {
        OverlapFailure {
            word: word.iter().map(|l| self.letter_name(l)).collect(),
            left: self.format(left),
            right: self.format(right),
            defect: self.format(&(left - right)),
        }
    }
}
