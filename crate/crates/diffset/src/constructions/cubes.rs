//! Equal-sum pairs of congruent affine cubes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::sums::scaled;
use crate::error::{Error, Result};
use crate::pointset::{serialize_rationals, PointSet};
use crate::solution::distinct_differences;

/// Search nodes allowed in opportunistic mode before giving up.
const OPPORTUNISTIC_NODES: u64 = 200_000;

/// Spans up to this size use dense counting arrays.
const DENSE_SPAN: i128 = 1 << 24;

/// Centers `a_1..a_{2s}` with `a_i + a_{s+i}` constant, and steps
/// `d_1..d_{t-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeStructure {
    pub s: usize,
    pub t: usize,
    #[serde(serialize_with = "serialize_rationals")]
    pub centers: Vec<BigRational>,
    #[serde(serialize_with = "serialize_rationals")]
    pub steps: Vec<BigRational>,
}

impl CubeStructure {
    /// All `a_i + e_1 d_1 + ... + e_{t-1} d_{t-1}`, center-major, with the
    /// offset index read as a binary number over the steps.
    pub fn expansion(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.centers.len() << self.steps.len());
        for a in &self.centers {
            for mask in 0usize..(1 << self.steps.len()) {
                let mut v = a.clone();
                for (j, d) in self.steps.iter().enumerate() {
                    if mask >> j & 1 == 1 {
                        v += d;
                    }
                }
                out.push(v);
            }
        }
        out
    }

    fn check_shape(&self) -> Result<()> {
        if self.s == 0 || self.t == 0 {
            return Err(Error::InvalidParameter("s and t must be positive".into()));
        }
        if self.centers.len() != 2 * self.s {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.s,
                found: self.centers.len(),
            });
        }
        if self.steps.len() != self.t - 1 {
            return Err(Error::DimensionMismatch {
                expected: self.t - 1,
                found: self.steps.len(),
            });
        }
        if self.steps.iter().any(|d| !d.is_positive()) {
            return Err(Error::InvalidParameter("steps must be positive".into()));
        }
        let sum = &self.centers[0] + &self.centers[self.s];
        if (1..self.s).any(|i| &self.centers[i] + &self.centers[self.s + i] != sum) {
            return Err(Error::InvalidParameter("center pairs have different sums".into()));
        }
        Ok(())
    }
}

/// Whether to insist on the size hypothesis that guarantees success.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubeMode {
    /// Require the hypothesis and follow the greedy choices only.
    Guaranteed,
    /// Search with backtracking regardless of the hypothesis.
    Opportunistic,
}

/// `3^{t-1} s^2 + (3^{t-1} - 1) / 2`.
pub fn cube_difference_bound(s: u64, t: u32) -> u128 {
    let p = 3u128.pow(t - 1);
    p * (s as u128) * (s as u128) + (p - 1) / 2
}

/// Whether `|A - A| <= (n / 8s)^{1 + 1/(2^t - 1)}`, decided exactly as
/// `D^{2^t - 1} (8s)^{2^t} <= n^{2^t}`.
pub fn cube_hypothesis_holds(n: u64, diffs: u64, s: u64, t: u32) -> Result<bool> {
    if !(1..=16).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} outside 1..=16")));
    }
    let e = 1usize << t;
    let lhs = num_traits::pow(BigInt::from(diffs), e - 1) * num_traits::pow(BigInt::from(8 * s), e);
    Ok(lhs <= num_traits::pow(BigInt::from(n), e))
}

/// Finds an equal-sum cube structure inside `a`.
///
/// The base case takes the sum realized by the most pairs of distinct
/// elements (smallest sum on ties). The step takes the most repeated positive
/// difference (smallest on ties), keeps alternate pairs along each chain of
/// overlapping pairs and recurses on their left endpoints. Opportunistic mode
/// backtracks over further differences.
pub fn find_equal_sum_cubes(a: &PointSet, s: usize, t: usize, mode: CubeMode) -> Result<CubeStructure> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidParameter("s and t must be positive".into()));
    }
    if a.len() < 2 {
        return Err(Error::InvalidParameter("need at least two points".into()));
    }
    if mode == CubeMode::Guaranteed {
        let d = distinct_differences(a) as u64;
        if !cube_hypothesis_holds(a.len() as u64, d, s as u64, t as u32)? {
            return Err(Error::InvalidParameter(format!(
                "size hypothesis fails: |A| = {}, |A - A| = {d}, s = {s}, t = {t}",
                a.len()
            )));
        }
    }
    let (xs, denom) = scaled(a)?;
    let mut nodes = 0u64;
    let found = search(&xs, s, t, mode, &mut nodes);
    let (centers, steps) = match (found, mode) {
        (Some(f), _) => f,
        (None, CubeMode::Opportunistic) => return Err(Error::NotFound),
        (None, CubeMode::Guaranteed) => {
            return Err(Error::Inconsistent("no cube found although the size hypothesis holds".into()))
        }
    };
    let to_q = |v: i128| BigRational::new(BigInt::from(v), denom.clone());
    let cube = CubeStructure {
        s,
        t,
        centers: centers.into_iter().map(to_q).collect(),
        steps: steps.into_iter().map(to_q).collect(),
    };
    cube.check_shape()?;
    let pts = cube.expansion();
    let distinct = PointSet::new(pts.clone());
    if distinct.len() != pts.len() || pts.iter().any(|p| !a.contains(p)) {
        return Err(Error::Inconsistent("cube expansion leaves the set or collides".into()));
    }
    Ok(cube)
}

fn search(xs: &[i128], s: usize, t: usize, mode: CubeMode, nodes: &mut u64) -> Option<(Vec<i128>, Vec<i128>)> {
    *nodes += 1;
    if *nodes > OPPORTUNISTIC_NODES {
        return None;
    }
    if xs.len() < (2 * s) << (t - 1) {
        return None;
    }
    if t == 1 {
        return base_pairs(xs, s);
    }
    let candidates = ranked_differences(xs);
    let need = s << (t - 1);
    for (delta, _) in candidates {
        let left = alternating_left_endpoints(xs, delta);
        if left.len() >= need {
            if let Some((centers, mut steps)) = search(&left, s, t - 1, mode, nodes) {
                steps.push(delta);
                return Some((centers, steps));
            }
        }
        if mode == CubeMode::Guaranteed || *nodes > OPPORTUNISTIC_NODES {
            return None;
        }
    }
    None
}

/// Value counts of the pairs emitted by `pairs`, all within `lo..=hi`,
/// sorted by count descending then value ascending.
fn counts(lo: i128, hi: i128, pairs: impl Fn(&mut dyn FnMut(i128))) -> Vec<(i128, u64)> {
    let mut out: Vec<(i128, u64)> = Vec::new();
    if hi - lo < DENSE_SPAN {
        let mut dense = vec![0u64; (hi - lo + 1) as usize];
        pairs(&mut |v| dense[(v - lo) as usize] += 1);
        for (i, &c) in dense.iter().enumerate() {
            if c > 0 {
                out.push((i as i128 + lo, c));
            }
        }
    } else {
        let mut m: HashMap<i128, u64> = HashMap::new();
        pairs(&mut |v| *m.entry(v).or_insert(0) += 1);
        out = m.into_iter().collect();
    }
    out.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    out
}

fn base_pairs(xs: &[i128], s: usize) -> Option<(Vec<i128>, Vec<i128>)> {
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    let sums = counts(2 * lo, 2 * hi, |f| {
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                f(xs[i] + xs[j]);
            }
        }
    });
    let &(sigma, c) = sums.first()?;
    if (c as usize) < s {
        return None;
    }
    let mut lefts = Vec::with_capacity(s);
    for &x in xs {
        if lefts.len() == s || 2 * x >= sigma {
            break;
        }
        if xs.binary_search(&(sigma - x)).is_ok() {
            lefts.push(x);
        }
    }
    let rights: Vec<i128> = lefts.iter().map(|&x| sigma - x).collect();
    lefts.extend(rights);
    Some((lefts, Vec::new()))
}

fn ranked_differences(xs: &[i128]) -> Vec<(i128, u64)> {
    let span = xs[xs.len() - 1] - xs[0];
    counts(1, span.max(1), |f| {
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                f(xs[j] - xs[i]);
            }
        }
    })
}

fn alternating_left_endpoints(xs: &[i128], delta: i128) -> Vec<i128> {
    let mut out = Vec::new();
    let mut last_taken: Option<i128> = None;
    for &x in xs {
        if xs.binary_search(&(x + delta)).is_err() {
            continue;
        }
        let overlaps = last_taken == Some(x - delta);
        if !overlaps {
            out.push(x);
            last_taken = Some(x);
        } else {
            last_taken = None;
        }
    }
    out
}

/// The expansion points of `cube` as a set, checked against the difference
/// bound `3^{t-1} s^2 + (3^{t-1} - 1) / 2`.
pub fn cube_point_set(cube: &CubeStructure) -> Result<PointSet> {
    cube.check_shape()?;
    if cube.t > 20 {
        return Err(Error::InvalidParameter(format!("t = {} too large", cube.t)));
    }
    let pts = cube.expansion();
    let set = PointSet::new(pts.clone());
    if set.len() != pts.len() {
        return Err(Error::DegenerateCube);
    }
    let d = distinct_differences(&set) as u128;
    let bound = cube_difference_bound(cube.s as u64, cube.t as u32);
    if d > bound {
        return Err(Error::Inconsistent(format!("{d} distinct differences exceed the bound {bound}")));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn cube(s: usize, t: usize, centers: &[i64], steps: &[i64]) -> CubeStructure {
        CubeStructure {
            s,
            t,
            centers: centers.iter().map(|&x| q(x)).collect(),
            steps: steps.iter().map(|&x| q(x)).collect(),
        }
    }

    #[test]
    fn base_case_on_an_interval() {
        let a = PointSet::from_integers(0..6);
        let c = find_equal_sum_cubes(&a, 1, 1, CubeMode::Opportunistic).unwrap();
        assert_eq!(c.centers, vec![q(0), q(5)]);
        assert!(c.steps.is_empty());
    }

    #[test]
    fn one_step_cube() {
        let a = PointSet::from_integers([0, 1, 10, 11]);
        let c = find_equal_sum_cubes(&a, 1, 2, CubeMode::Opportunistic).unwrap();
        assert_eq!(c.centers, vec![q(0), q(10)]);
        assert_eq!(c.steps, vec![q(1)]);
        let pts = cube_point_set(&c).unwrap();
        assert_eq!(pts, a);
        assert_eq!(distinct_differences(&pts), 4);
    }

    #[test]
    fn point_set_examples() {
        let p = cube_point_set(&cube(2, 1, &[0, 3, 5, 2], &[])).unwrap();
        assert_eq!(p, PointSet::from_integers([0, 2, 3, 5]));
        assert_eq!(distinct_differences(&p), 4);
        assert_eq!(cube_difference_bound(2, 1), 4);
        let single = cube_point_set(&cube(1, 1, &[2, 9], &[])).unwrap();
        assert_eq!(distinct_differences(&single), 1);
        assert_eq!(cube_point_set(&cube(1, 2, &[0, 1], &[1])), Err(Error::DegenerateCube));
        assert!(matches!(
            cube_point_set(&cube(2, 1, &[0, 3, 5, 3], &[])),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn bound_values() {
        assert_eq!(cube_difference_bound(1, 2), 4);
        assert_eq!(cube_difference_bound(2, 3), 40);
    }

    #[test]
    fn hypothesis_thresholds() {
        assert!(!cube_hypothesis_holds(62, 61, 1, 1).unwrap());
        assert!(cube_hypothesis_holds(64, 63, 1, 1).unwrap());
        assert!(!cube_hypothesis_holds(60, 59, 1, 3).unwrap());
    }

    #[test]
    fn guaranteed_mode_on_a_large_interval() {
        let a = PointSet::from_integers(1..=64);
        let c = find_equal_sum_cubes(&a, 1, 1, CubeMode::Guaranteed).unwrap();
        assert!(cube_point_set(&c).is_ok());
        let small = PointSet::from_integers(1..=20);
        assert!(matches!(
            find_equal_sum_cubes(&small, 1, 1, CubeMode::Guaranteed),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn sidon_set_has_no_two_pairs() {
        let a = PointSet::from_integers([0, 1, 3, 7, 12, 20]);
        assert_eq!(find_equal_sum_cubes(&a, 2, 1, CubeMode::Opportunistic), Err(Error::NotFound));
    }
}
