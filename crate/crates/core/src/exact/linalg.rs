//! Exact linear algebra over ℚ.
//!
//! Elimination runs on integer rows (each row scaled to a primitive integer
//! vector), so no rational arithmetic happens inside the inner loop. Pivots
//! are chosen deterministically: for each column left to right, the first
//! remaining row with a nonzero entry.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        RationalMatrix { rows: n, cols, data }
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix");
            for (i, v) in c.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RationalMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn echelon(&self) -> Echelon {
        let rows = (0..self.rows).filter_map(|i| integer_row(self.row(i))).collect();
        Echelon::reduce(rows, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of {v : M·v = 0}, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.echelon().kernel_basis()
    }

    /// A particular solution of M·x = b (free variables set to zero), if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let rows = (0..self.rows)
            .filter_map(|i| {
                let mut r: Vec<Rational> = self.row(i).to_vec();
                r.push(b[i].clone());
                integer_row(&r)
            })
            .collect();
        let ech = Echelon::reduce(rows, self.cols + 1);
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            x[p] = Rational::new(row[self.cols].clone(), row[p].clone());
        }
        Some(x)
    }
}

/// Reduced row echelon form with primitive integer rows and positive pivots.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub cols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<BigInt>>,
}

impl Echelon {
    fn reduce(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..cols {
            let Some(found) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, found);
            let (head, tail) = rows.split_at_mut(rank);
            let (pivot_row, rest) = tail.split_first_mut().expect("pivot row");
            for other in head.iter_mut().chain(rest.iter_mut()) {
                if !other[c].is_zero() {
                    eliminate(other, pivot_row, c);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        rows.truncate(rank);
        for r in rows.iter_mut() {
            make_primitive(r);
        }
        Echelon { cols, pivots, rows }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[p] = Rational::new(-row[f].clone(), row[p].clone());
                    }
                }
                v
            })
            .collect()
    }
}

/// `target ← p·target − a·pivot` where p, a are the column-c entries, then
/// divided by its content.
fn eliminate(target: &mut [BigInt], pivot: &[BigInt], c: usize) {
    let g = target[c].gcd(&pivot[c]);
    let p = &pivot[c] / &g;
    let a = &target[c] / &g;
    for (t, q) in target.iter_mut().zip(pivot) {
        if q.is_zero() {
            if !t.is_zero() {
                *t *= &p;
            }
        } else {
            *t = &*t * &p - &a * q;
        }
    }
    make_primitive(target);
}

fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    let mut lead_negative = None;
    for v in row.iter().filter(|v| !v.is_zero()) {
        if lead_negative.is_none() {
            lead_negative = Some(v.is_negative());
        }
        g = g.gcd(v);
        if g.is_one() && lead_negative == Some(false) {
            return;
        }
    }
    if g.is_zero() {
        return;
    }
    if lead_negative == Some(true) {
        g = -g;
    }
    if !g.is_one() {
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v = &*v / &g;
            }
        }
    }
}

/// Clears denominators; `None` for a zero row.
fn integer_row(row: &[Rational]) -> Option<Vec<BigInt>> {
    if row.iter().all(Zero::is_zero) {
        return None;
    }
    let lcm = row
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    Some(
        row.iter()
            .map(|v| if v.is_zero() { BigInt::zero() } else { v.numer() * (&lcm / v.denom()) })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        let cols = rows[0].len();
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect(), cols)
    }

    /// Plain rational Gauss–Jordan, used as an independent rank oracle.
    fn oracle_rank(a: &RationalMatrix) -> usize {
        let mut rows: Vec<Vec<Rational>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
        let mut rank = 0;
        for c in 0..a.cols() {
            if let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) {
                rows.swap(rank, p);
                let piv = rows[rank][c].clone();
                let prow = rows[rank].clone();
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != rank && !row[c].is_zero() {
                        let f = &row[c] / &piv;
                        for (x, y) in row.iter_mut().zip(&prow) {
                            *x -= &f * y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(2).kernel_basis().is_empty());
        assert_eq!(RationalMatrix::zeros(2, 2).kernel_basis().len(), 2);
        let k = m(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k.len(), 1);
        // proportional to (2, -1)
        assert_eq!(&k[0][0] * rat(-1), &k[0][1] * rat(2));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[rat(1), rat(3)]).is_none());
        let y = b.solve(&[ratio(1, 2), rat(1)]).unwrap();
        assert_eq!(b.mul_vec(&y), vec![ratio(1, 2), rat(1)]);
    }

    proptest! {
        #[test]
        fn rank_nullity(entries in proptest::collection::vec(-3i64..4, 20), r in 1usize..5) {
            let c = 20 / r;
            let a = RationalMatrix::from_rows(
                (0..r).map(|i| (0..c).map(|j| ratio(entries[i * c + j], 1 + (i + j) as i64 % 3)).collect()).collect(),
                c,
            );
            let k = a.kernel_basis();
            prop_assert_eq!(a.rank() + k.len(), c);
            prop_assert_eq!(a.rank(), oracle_rank(&a));
            for v in &k {
                prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn rational_round_trip(a in any::<i32>(), b in 1i32.., c in any::<i32>(), d in 1i32..) {
            let x = ratio(a.into(), b.into());
            let y = ratio(c.into(), d.into());
            prop_assert_eq!((&x + &y) - &y, x);
        }
    }
}
