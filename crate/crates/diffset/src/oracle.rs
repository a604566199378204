//! Brute-force minimum of distinct differences under a local property.
//!
//! `g_M(n, k, l)` is the least number of distinct positive differences of an
//! `n`-subset of `{0..M}` whose every `k`-subset has at least `l` of them. It
//! is an upper bound on the value over the reals.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use serde::{Serialize, Serializer};

use crate::combinatorics::{binomial, distinct_differences_sorted, next_combination};
use crate::error::{Error, Result};
use crate::par;

/// Default cap on the number of grid sets an oracle call may enumerate.
pub const DEFAULT_ORACLE_BUDGET: u128 = 100_000_000;

/// Value of an oracle call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleValue {
    Finite(u64),
    /// No set can satisfy the property because `l` exceeds `C(k, 2)`.
    Infinite,
    /// No `n`-subset of the grid `{0..M}` has the property, although some
    /// finite set does.
    GridInfeasible,
}

impl OracleValue {
    /// Key for comparisons; both non-finite values sort above every number.
    fn key(self) -> (u8, u64) {
        match self {
            OracleValue::Finite(v) => (0, v),
            OracleValue::Infinite | OracleValue::GridInfeasible => (1, 0),
        }
    }

    /// Total order with every non-finite value treated as `+inf`.
    pub fn compare(self, other: OracleValue) -> Ordering {
        self.key().cmp(&other.key())
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            OracleValue::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl std::fmt::Display for OracleValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleValue::Finite(v) => write!(f, "{v}"),
            OracleValue::Infinite => f.write_str("inf"),
            OracleValue::GridInfeasible => f.write_str("grid-infeasible"),
        }
    }
}

impl Serialize for OracleValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OracleValue::Finite(v) => s.serialize_u64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// Outcome of [`brute_force_g`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub n: u64,
    pub k: u64,
    pub ell: i64,
    #[serde(rename = "M")]
    pub m: u64,
    pub value: OracleValue,
    /// Lexicographically first optimal set, when one exists.
    pub witness: Option<Vec<u64>>,
    /// True when the whole grid was searched.
    pub exact: bool,
}

/// Exact `g_M(n, k, l)` by branch-and-bound over subsets of `{0..M}`.
///
/// Sets are normalized to contain 0 and to be no larger than their reflection.
/// Fails with `BudgetExceeded` when `C(M, n - 1)` exceeds `budget`.
pub fn brute_force_g(n: u64, k: u64, ell: i64, m: u64, budget: u128) -> Result<OracleResult> {
    if k < 1 || n < k {
        return Err(Error::InvalidParameter(format!("need n >= k >= 1, got n = {n}, k = {k}")));
    }
    let result = |value, witness| OracleResult {
        n,
        k,
        ell,
        m,
        value,
        witness,
        exact: true,
    };
    if ell > 0 && ell as u128 > binomial(k, 2) {
        return Ok(result(OracleValue::Infinite, None));
    }
    if m.saturating_add(1) < n {
        return Ok(result(OracleValue::GridInfeasible, None));
    }
    if n == 1 {
        return Ok(result(OracleValue::Finite(0), Some(vec![0])));
    }
    let needed = binomial(m, n - 1);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let m_us = usize::try_from(m).map_err(|_| Error::InvalidParameter("grid bound too large".into()))?;
    let search = Search {
        n: n as usize,
        k: k as usize,
        // Any k distinct points already have k - 1 distinct differences.
        ell: if ell < k as i64 { None } else { Some(ell as usize) },
        m: m_us,
        incumbent: AtomicU64::new(u64::MAX),
    };
    let seconds: Vec<usize> = (1..=m_us).collect();
    let per_branch = par::map(&seconds, |&second| search.branch(second));
    let best = per_branch
        .into_iter()
        .flatten()
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    Ok(match best {
        Some((v, w)) => result(OracleValue::Finite(v), Some(w.into_iter().map(|x| x as u64).collect())),
        // The grid is too small or too coarse for the requirement.
        None => result(OracleValue::GridInfeasible, None),
    })
}

struct Search {
    n: usize,
    k: usize,
    ell: Option<usize>,
    m: usize,
    incumbent: AtomicU64,
}

struct State {
    set: Vec<usize>,
    counts: Vec<u32>,
    distinct: u64,
    best: Option<(u64, Vec<usize>)>,
    combo: Vec<usize>,
    scratch: Vec<i128>,
    points: Vec<i128>,
}

impl Search {
    fn branch(&self, second: usize) -> Option<(u64, Vec<usize>)> {
        let mut st = State {
            set: vec![0],
            counts: vec![0; self.m + 1],
            distinct: 0,
            best: None,
            combo: Vec::new(),
            scratch: Vec::new(),
            points: Vec::new(),
        };
        if self.try_push(&mut st, second) {
            self.extend(&mut st);
            self.pop(&mut st);
        }
        st.best
    }

    fn extend(&self, st: &mut State) {
        let remaining = (self.n - st.set.len()) as u64;
        if st.distinct + remaining > self.incumbent.load(AtomicOrdering::Relaxed) {
            return;
        }
        if remaining == 0 {
            self.leaf(st);
            return;
        }
        let last = *st.set.last().expect("set starts with 0");
        let hi = self.m + 1 - remaining as usize;
        for x in last + 1..=hi {
            if self.try_push(st, x) {
                self.extend(st);
                self.pop(st);
            }
        }
    }

    fn leaf(&self, st: &mut State) {
        let top = *st.set.last().expect("nonempty");
        let reflected = st.set.iter().rev().map(|&x| top - x);
        if reflected.lt(st.set.iter().copied()) {
            return;
        }
        let v = st.distinct;
        let better = match &st.best {
            None => true,
            Some((b, _)) => v < *b,
        };
        if better {
            st.best = Some((v, st.set.clone()));
            self.incumbent.fetch_min(v, AtomicOrdering::Relaxed);
        }
    }

    /// Adds `x` if every new `k`-subset keeps enough differences.
    fn try_push(&self, st: &mut State, x: usize) -> bool {
        if let Some(ell) = self.ell {
            let before = st.set.len();
            if before + 1 >= self.k && !self.new_subsets_ok(st, x, ell) {
                return false;
            }
        }
        for i in 0..st.set.len() {
            let d = x - st.set[i];
            if st.counts[d] == 0 {
                st.distinct += 1;
            }
            st.counts[d] += 1;
        }
        st.set.push(x);
        true
    }

    fn pop(&self, st: &mut State) {
        let x = st.set.pop().expect("nonempty");
        for i in 0..st.set.len() {
            let d = x - st.set[i];
            st.counts[d] -= 1;
            if st.counts[d] == 0 {
                st.distinct -= 1;
            }
        }
    }

    fn new_subsets_ok(&self, st: &mut State, x: usize, ell: usize) -> bool {
        let r = self.k - 1;
        let pool = st.set.len();
        st.combo.clear();
        st.combo.extend(0..r);
        loop {
            st.points.clear();
            st.points.extend(st.combo.iter().map(|&i| st.set[i] as i128));
            st.points.push(x as i128);
            if distinct_differences_sorted(&st.points, &mut st.scratch) < ell {
                return false;
            }
            if r == 0 || !next_combination(&mut st.combo, pool) {
                return true;
            }
        }
    }
}

/// The two monotonicity checks on one parameter triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonotonicityCheck {
    /// `g_M(n, k, l) >= g_M(n, k - 1, l - k + 1)`.
    pub k_step: bool,
    /// `g_M(n, k, l - 1) <= g_M(n, k, l)`.
    pub ell_step: bool,
}

impl MonotonicityCheck {
    pub fn holds(&self) -> bool {
        self.k_step && self.ell_step
    }
}

/// Checks monotonicity in `k` (dropping a point) and in `l` on the grid.
pub fn check_monotonicity(n: u64, k: u64, ell: i64, m: u64, budget: u128) -> Result<MonotonicityCheck> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("need k >= 2, got {k}")));
    }
    let g = brute_force_g(n, k, ell, m, budget)?.value;
    let dropped = brute_force_g(n, k - 1, ell - k as i64 + 1, m, budget)?.value;
    let looser = brute_force_g(n, k, ell - 1, m, budget)?.value;
    Ok(MonotonicityCheck {
        k_step: g.compare(dropped) != Ordering::Less,
        ell_step: looser.compare(g) != Ordering::Greater,
    })
}
