//! Exact linear algebra over the rationals.
//!
//! [`RationalMatrix`] holds arbitrary-precision rational entries and caches its
//! reduced row echelon form. [`IntSpan`] is an integer view of a row space used
//! for fast membership tests on small integer vectors, and [`integer_rank`]
//! computes ranks of small integer matrices by fraction-free elimination with
//! a rational fallback on overflow.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Reduced row echelon form of a matrix.
#[derive(Debug, Clone)]
pub struct Rref {
    /// Nonzero rows of the reduced form, in pivot order.
    pub rows: Vec<Vec<BigRational>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut w: Vec<BigRational> = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (wc, rc) in w.iter_mut().zip(row) {
                if !rc.is_zero() {
                    *wc -= &f * rc;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` in the basis given by the reduced rows.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

/// Dense matrix with exact rational entries and a cached echelon form.
#[derive(Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
    rref: OnceLock<Rref>,
}

impl Clone for RationalMatrix {
    fn clone(&self) -> Self {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
            rref: OnceLock::new(),
        }
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
            rref: OnceLock::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<BigRational>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        RationalMatrix {
            rows: rows.len(),
            cols,
            data,
            rref: OnceLock::new(),
        }
    }

    pub fn from_int_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<BigRational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows(cols, &rows)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Submatrix keeping the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> RationalMatrix {
        let rows: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        Self::from_rows(cols.len(), &rows)
    }

    pub fn transpose(&self) -> RationalMatrix {
        let rows: Vec<Vec<BigRational>> = (0..self.cols)
            .map(|c| (0..self.rows).map(|r| self.get(r, c).clone()).collect())
            .collect();
        Self::from_rows(self.rows, &rows)
    }

    pub fn rref(&self) -> &Rref {
        self.rref.get_or_init(|| compute_rref(self.rows, self.cols, &self.data))
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[BigRational]) -> bool {
        self.rref().contains(v)
    }

    /// Some `x` with `self * x = rhs`, free variables set to zero.
    pub fn solve(&self, rhs: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug: Vec<BigRational> = Vec::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            aug.extend(self.row(r).iter().cloned());
            aug.push(rhs[r].clone());
        }
        let red = compute_rref(self.rows, self.cols + 1, &aug);
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            x[p] = row[self.cols].clone();
        }
        Some(x)
    }
}

fn compute_rref(rows: usize, cols: usize, data: &[BigRational]) -> Rref {
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|r| data[r * cols..(r + 1) * cols].to_vec())
        .collect();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..cols {
        if lead >= rows {
            break;
        }
        let Some(p) = (lead..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(lead, p);
        let inv = m[lead][c].recip();
        for x in m[lead].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = m[lead].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == lead || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *x -= &f * pv;
                }
            }
        }
        pivots.push(c);
        lead += 1;
    }
    m.truncate(pivots.len());
    Rref {
        rows: m,
        pivots,
        cols,
    }
}

/// Integer form of a row space for fast membership tests.
///
/// Each reduced row is scaled to a primitive integer vector with positive
/// pivot entry. A vector `v` lies in the span iff
/// `L * v == sum_r (L / d_r) * v[p_r] * row_r`, where `d_r` is the pivot entry
/// of row `r` and `L` is the lcm of all `d_r`.
#[derive(Debug, Clone)]
pub struct IntSpan {
    cols: usize,
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
    multipliers: Vec<i128>,
    lcm: i128,
    exact: Rref,
    fits: bool,
}

impl IntSpan {
    pub fn new(rref: &Rref) -> Self {
        let mut rows = Vec::new();
        let mut pivot_entries = Vec::new();
        let mut fits = true;
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            let den = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&den / x.denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            let ints: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
            let sign = if ints[p].is_negative() { -1 } else { 1 };
            let conv: Vec<i128> = ints
                .iter()
                .map(|x| x.to_i128().map(|v| v * sign).unwrap_or_else(|| {
                    fits = false;
                    0
                }))
                .collect();
            pivot_entries.push(conv[p]);
            rows.push(conv);
        }
        let mut lcm: i128 = 1;
        for &d in &pivot_entries {
            if d == 0 {
                fits = false;
                break;
            }
            match (lcm / lcm.gcd(&d)).checked_mul(d) {
                Some(v) => lcm = v,
                None => {
                    fits = false;
                    break;
                }
            }
        }
        let multipliers = pivot_entries
            .iter()
            .map(|&d| if d == 0 { 0 } else { lcm / d })
            .collect();
        IntSpan {
            cols: rref.cols,
            rows,
            pivots: rref.pivots.clone(),
            multipliers,
            lcm,
            exact: rref.clone(),
            fits,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Whether the integer vector `v` lies in the span.
    pub fn contains(&self, v: &[i64]) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        if self.fits {
            if let Some(ans) = self.contains_checked(v) {
                return ans;
            }
        }
        let q: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        self.exact.contains(&q)
    }

    fn contains_checked(&self, v: &[i64]) -> Option<bool> {
        let mut acc: Vec<i128> = Vec::with_capacity(self.cols);
        for &x in v {
            acc.push((x as i128).checked_mul(self.lcm)?);
        }
        for ((row, &p), &m) in self.rows.iter().zip(&self.pivots).zip(&self.multipliers) {
            let vp = v[p] as i128;
            if vp == 0 {
                continue;
            }
            let f = m.checked_mul(vp)?;
            for (a, &r) in acc.iter_mut().zip(row) {
                if r != 0 {
                    *a = a.checked_sub(f.checked_mul(r)?)?;
                }
            }
        }
        Some(acc.iter().all(|&a| a == 0))
    }
}

/// Rank of a small integer matrix given by rows.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    match bareiss_rank(&mut m, cols) {
        Some(r) => r,
        None => RationalMatrix::from_int_rows(cols, rows).rank(),
    }
}

fn bareiss_rank(m: &mut [Vec<i128>], cols: usize) -> Option<usize> {
    let nrows = m.len();
    let mut rank = 0;
    for c in 0..cols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let a = pivot[c];
            for (x, &pv) in row.iter_mut().zip(&pivot) {
                *x = x.checked_mul(a)?.checked_sub(f.checked_mul(pv)?)?;
            }
            let g = row.iter().fold(0i128, |acc, &x| acc.gcd(&x));
            if g > 1 {
                for x in row.iter_mut() {
                    *x /= g;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        RationalMatrix::from_int_rows(rows[0].len(), &rows)
    }

    #[test]
    fn rref_of_two_difference_rows() {
        let a = m(&[&[1, -1, -1, 1, 0, 0], &[1, -1, 0, 0, -1, 1]]);
        let r = a.rref();
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.rows[0], [1, -1, 0, 0, -1, 1].map(q).to_vec());
        assert_eq!(r.rows[1], [0, 0, 1, -1, -1, 1].map(q).to_vec());
        assert_eq!(r.free_columns(), vec![1, 3, 4, 5]);
    }

    #[test]
    fn rank_and_membership() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        assert!(a.row_space_contains(&[q(1), q(3), q(4)]));
        assert!(!a.row_space_contains(&[q(0), q(0), q(1)]));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(a.solve(&[q(3), q(1)]).unwrap(), vec![q(2), q(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[q(1), q(3)]).is_none());
        assert_eq!(b.solve(&[q(1), q(2)]).unwrap(), vec![q(1), q(0)]);
    }

    #[test]
    fn rational_entries_survive_elimination() {
        let a = m(&[&[2, 3], &[4, 5]]);
        let x = a.solve(&[q(1), q(1)]).unwrap();
        assert_eq!(x, vec![ratio(-1, 1), ratio(1, 1)]);
        let b = m(&[&[3, 1], &[1, 3]]);
        assert_eq!(b.solve(&[q(1), q(0)]).unwrap(), vec![ratio(3, 8), ratio(-1, 8)]);
    }

    #[test]
    fn int_span_matches_rational_membership() {
        let a = m(&[&[1, -1, -1, 1, 0, 0], &[1, -1, 0, 0, -1, 1], &[2, 0, 0, 1, 0, -3]]);
        let span = IntSpan::new(a.rref());
        let probes: Vec<Vec<i64>> = vec![
            vec![0, 0, 1, -1, -1, 1],
            vec![1, -1, 0, 0, 0, 0],
            vec![3, -1, -1, 2, 0, -3],
            vec![0, 0, 0, 0, 0, 0],
        ];
        for p in probes {
            let qp: Vec<BigRational> = p.iter().map(|&x| q(x)).collect();
            assert_eq!(span.contains(&p), a.row_space_contains(&qp), "{p:?}");
        }
    }

    #[test]
    fn integer_rank_agrees_with_rational_rank() {
        let rows = vec![vec![1, -1, -1, 1, 0], vec![1, 0, -2, 0, 1], vec![0, 1, -1, -1, 1]];
        assert_eq!(integer_rank(&rows), RationalMatrix::from_int_rows(5, &rows).rank());
        assert_eq!(integer_rank(&rows), 2);
    }
}
