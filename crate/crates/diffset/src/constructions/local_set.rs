//! Random subsets of a 3-AP-free base with every small configuration light.
//!
//! A base set `S` inside `{1..ceil(a n^c)}` is sampled with probability
//! `3n / |S|`. Then one element is deleted from every subset of at most `k`
//! sampled points whose satisfied difference equalities have rank `r` with
//! `c r > m - 1`, where `m` is the subset size. Finally `n` survivors are
//! chosen at random.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ap_free::{is_three_ap_free, three_ap_free_base, BaseMethod};
use super::sums::scaled;
use crate::combinatorics::{binomial, next_combination};
use crate::equality::enumerate_equalities;
use crate::error::{Error, Result};
use crate::linalg::integer_rank;
use crate::par;
use crate::pointset::{format_rational, PointSet};
use crate::solution::distinct_differences;

/// Default cap on subsets generated by the heavy-subset scans.
pub const DEFAULT_HEAVY_BUDGET: u128 = 50_000_000;

/// One deletion made to destroy a heavy subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeavyDeletion {
    pub subset: Vec<i64>,
    pub rank: usize,
    pub deleted: i64,
}

/// Record of one run of [`random_local_set`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub seed: u64,
    pub range_bound: u64,
    pub base_method: BaseMethod,
    pub behrend_size: usize,
    pub inclusion_probability: String,
    pub sampled_size: usize,
    pub deleted_count: usize,
    pub heavy_deletions: Vec<HeavyDeletion>,
}

fn check_exponent(c: &BigRational) -> Result<(u64, u64)> {
    if c <= &BigRational::one() || c > &BigRational::from_integer(2.into()) {
        return Err(Error::InvalidParameter(format!("c = {} outside (1, 2]", format_rational(c))));
    }
    let p = c.numer().to_u64().ok_or_else(|| Error::InvalidParameter("c too large".into()))?;
    let q = c.denom().to_u64().ok_or_else(|| Error::InvalidParameter("c too large".into()))?;
    Ok((p, q))
}

/// `ceil(a * n^c)` for rationals `a > 0` and `c = p/q > 0`, exactly.
pub fn ceil_power(a: &BigRational, n: u64, c: &BigRational) -> Result<BigInt> {
    if !a.is_positive() || !c.is_positive() {
        return Err(Error::InvalidParameter("a and c must be positive".into()));
    }
    let q = c.denom().to_u32().ok_or_else(|| Error::InvalidParameter("c denominator too large".into()))?;
    let p = c.numer().to_u32().ok_or_else(|| Error::InvalidParameter("c numerator too large".into()))?;
    // Smallest N with N^q * den(a)^q >= num(a)^q * n^p.
    let x = num_traits::pow(a.numer().clone(), q as usize) * num_traits::pow(BigInt::from(n), p as usize);
    let y = num_traits::pow(a.denom().clone(), q as usize);
    let mut guess = (&x / &y).nth_root(q);
    while num_traits::pow(guess.clone(), q as usize) * &y < x {
        guess += 1;
    }
    Ok(guess)
}

/// Whether `value <= a * n^c`, exactly.
fn within_power(value: u64, a: &BigRational, n: u64, c: &BigRational) -> bool {
    let q = c.denom().to_usize().unwrap_or(usize::MAX);
    let p = c.numer().to_usize().unwrap_or(usize::MAX);
    num_traits::pow(BigInt::from(value), q) * num_traits::pow(a.denom().clone(), q)
        <= num_traits::pow(a.numer().clone(), q) * num_traits::pow(BigInt::from(n), p)
}

/// Builds an `n`-element set in `{1..ceil(a n^c)}` that is 3-AP-free and has
/// no heavy subset of size at most `k`.
pub fn random_local_set(
    n: usize,
    k: usize,
    c: &BigRational,
    a: &BigRational,
    seed: u64,
    budget: u128,
) -> Result<(PointSet, ConstructionTrace)> {
    let (p, q) = check_exponent(c)?;
    if k < 2 || n == 0 {
        return Err(Error::InvalidParameter(format!("need k >= 2 and n >= 1, got k = {k}, n = {n}")));
    }
    let range = ceil_power(a, n as u64, c)?
        .to_u64()
        .ok_or_else(|| Error::InvalidParameter("range bound too large".into()))?;
    let base = three_ap_free_base(range);
    let s = base.elements.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (sampled, probability): (Vec<i64>, String) = if 3 * n >= s {
        (base.elements.iter().map(|&x| x as i64).collect(), "1".into())
    } else {
        let kept = base
            .elements
            .iter()
            .filter(|_| rng.gen_range(0..s) < 3 * n)
            .map(|&x| x as i64)
            .collect();
        (kept, format_rational(&BigRational::new((3 * n).into(), s.into())))
    };
    let sampled_size = sampled.len();
    let heavy = heavy_connected_subsets(&sampled, k, p, q, budget)?;
    let mut deleted: HashSet<i64> = HashSet::new();
    let mut heavy_deletions = Vec::new();
    for (subset, rank) in heavy {
        if subset.iter().any(|x| deleted.contains(x)) {
            continue;
        }
        let victim = *subset.last().expect("nonempty subset");
        deleted.insert(victim);
        heavy_deletions.push(HeavyDeletion {
            subset,
            rank,
            deleted: victim,
        });
    }
    let survivors: Vec<i64> = sampled.iter().copied().filter(|x| !deleted.contains(x)).collect();
    if survivors.len() < n {
        return Err(Error::InsufficientDensity {
            found: survivors.len(),
            needed: n,
        });
    }
    let mut idx = rand::seq::index::sample(&mut rng, survivors.len(), n).into_vec();
    idx.sort_unstable();
    let chosen = PointSet::from_integers(idx.into_iter().map(|i| survivors[i]));
    let trace = ConstructionTrace {
        seed,
        range_bound: range,
        base_method: base.method,
        behrend_size: s,
        inclusion_probability: probability,
        sampled_size,
        deleted_count: deleted.len(),
        heavy_deletions,
    };
    Ok((chosen, trace))
}

/// Heavy subsets of an AP-free set that are connected unions of additive
/// quadruples with at most `k` elements, sorted, each with its rank.
///
/// In an AP-free set of distinct values the only satisfied difference
/// equalities are `a + b = c + d` on four distinct values. Rank is additive
/// over connected components, so every heavy subset contains a heavy
/// component, and deleting one element of each heavy component suffices.
fn heavy_connected_subsets(xs: &[i64], k: usize, p: u64, q: u64, budget: u128) -> Result<Vec<(Vec<i64>, usize)>> {
    if k < 4 {
        return Ok(Vec::new());
    }
    let mut by_sum: HashMap<i64, Vec<(u32, u32)>> = HashMap::new();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            by_sum.entry(xs[i] + xs[j]).or_default().push((i as u32, j as u32));
        }
    }
    let mut sums: Vec<i64> = by_sum.keys().copied().filter(|s| by_sum[s].len() > 1).collect();
    sums.sort_unstable();
    let mut quads: Vec<[u32; 4]> = Vec::new();
    for s in sums {
        let pairs = &by_sum[&s];
        for u in 0..pairs.len() {
            for v in u + 1..pairs.len() {
                quads.push([pairs[u].0, pairs[u].1, pairs[v].0, pairs[v].1]);
            }
        }
    }
    let mut containing: Vec<Vec<u32>> = vec![Vec::new(); xs.len()];
    for (qi, quad) in quads.iter().enumerate() {
        for &e in quad {
            containing[e as usize].push(qi as u32);
        }
    }
    // A single quadruple spans four distinct points with rank 1, and
    // c * 1 > 3 never holds for c <= 2, so only proper unions are ranked.
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut all: Vec<Vec<u32>> = Vec::new();
    let mut frontier: Vec<Vec<u32>> = quads
        .iter()
        .map(|quad| {
            let mut set = quad.to_vec();
            set.sort_unstable();
            set
        })
        .collect();
    let mut generated = quads.len() as u128;
    if generated > budget {
        return Err(Error::BudgetExceeded { needed: generated, budget });
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for set in &frontier {
            if set.len() >= k {
                continue;
            }
            for &e in set {
                for &qi in &containing[e as usize] {
                    let quad = &quads[qi as usize];
                    let fresh = quad.iter().filter(|x| set.binary_search(x).is_err()).count();
                    if fresh == 0 || set.len() + fresh > k {
                        continue;
                    }
                    let mut grown = set.clone();
                    grown.extend(quad.iter().filter(|x| set.binary_search(x).is_err()));
                    grown.sort_unstable();
                    if seen.insert(grown.clone()) {
                        generated += 1;
                        if generated > budget {
                            return Err(Error::BudgetExceeded { needed: generated, budget });
                        }
                        next.push(grown);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    let ranks = par::map(&all, |set| {
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut visited: HashSet<u32> = HashSet::new();
        for &e in set {
            for &qi in &containing[e as usize] {
                let quad = quads[qi as usize];
                if visited.insert(qi) && quad.iter().all(|x| set.binary_search(x).is_ok()) {
                    let mut row = vec![0i64; set.len()];
                    let pos = |x: u32| set.binary_search(&x).expect("member");
                    row[pos(quad[0])] += 1;
                    row[pos(quad[1])] += 1;
                    row[pos(quad[2])] -= 1;
                    row[pos(quad[3])] -= 1;
                    rows.push(row);
                }
            }
        }
        integer_rank(&rows)
    });
    let mut heavy: Vec<(Vec<i64>, usize)> = all
        .iter()
        .zip(ranks)
        .filter(|(set, r)| p * (*r as u64) > q * (set.len() as u64 - 1))
        .map(|(set, r)| (set.iter().map(|&i| xs[i as usize]).collect(), r))
        .collect();
    heavy.sort();
    Ok(heavy)
}

/// The first subset of at most `k` points, ordered by size then
/// lexicographically, whose satisfied difference equalities have rank `r`
/// with `c r > m - 1`.
///
/// Every subset is visited and every canonical difference equality on it is
/// evaluated, independently of the construction's quadruple search.
pub fn exhaustive_heavy_subsets(a: &PointSet, k: usize, c: &BigRational, budget: u128) -> Result<Option<(Vec<BigRational>, usize)>> {
    let (p, q) = check_exponent(c)?;
    let n = a.len();
    let needed: u128 = (2..=k.min(n)).map(|m| binomial(n as u64, m as u64)).fold(0u128, |x, y| x.saturating_add(y));
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let (xs, _) = scaled(a)?;
    for m in 2..=k.min(n) {
        let eqs: Vec<[usize; 4]> = enumerate_equalities(m, false)
            .iter()
            .map(|e| {
                let [p0, p1] = e.positives();
                let [n0, n1] = e.negatives();
                [p0 - 1, p1 - 1, n0 - 1, n1 - 1]
            })
            .collect();
        let hits = par::map_range(n - m + 1, |first| {
            let mut idx: Vec<usize> = (0..m).map(|j| first + j).collect();
            let mut rest: Vec<usize> = (0..m - 1).collect();
            let tail = n - first - 1;
            loop {
                for j in 0..m - 1 {
                    idx[j + 1] = first + 1 + rest[j];
                }
                let vals: Vec<i128> = idx.iter().map(|&i| xs[i]).collect();
                let rows: Vec<Vec<i64>> = eqs
                    .iter()
                    .filter(|e| vals[e[0]] + vals[e[1]] == vals[e[2]] + vals[e[3]])
                    .map(|e| {
                        let mut row = vec![0i64; m];
                        row[e[0]] += 1;
                        row[e[1]] += 1;
                        row[e[2]] -= 1;
                        row[e[3]] -= 1;
                        row
                    })
                    .collect();
                if !rows.is_empty() {
                    let r = integer_rank(&rows);
                    if p * r as u64 > q * (m as u64 - 1) {
                        return Some((idx.clone(), r));
                    }
                }
                if m == 1 || rest.is_empty() || !next_combination(&mut rest, tail) {
                    return None;
                }
            }
        });
        if let Some((idx, r)) = hits.into_iter().flatten().next() {
            return Ok(Some((idx.iter().map(|&i| a.points()[i].clone()).collect(), r)));
        }
    }
    Ok(None)
}

/// Outcome of the three post-checks on a constructed set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalSetChecks {
    pub range_bound: u64,
    pub in_range: bool,
    pub distinct_differences: usize,
    pub difference_bound_holds: bool,
    pub ap_free: bool,
    pub heavy_subset: Option<Vec<String>>,
}

impl LocalSetChecks {
    pub fn passed(&self) -> bool {
        self.in_range && self.difference_bound_holds && self.ap_free && self.heavy_subset.is_none()
    }
}

/// Checks range and difference bounds, 3-AP-freeness and the absence of
/// heavy subsets of size at most `k`, exhaustively.
pub fn check_local_set(
    set: &PointSet,
    n: usize,
    k: usize,
    c: &BigRational,
    a: &BigRational,
    budget: u128,
) -> Result<LocalSetChecks> {
    let range = ceil_power(a, n as u64, c)?
        .to_u64()
        .ok_or_else(|| Error::InvalidParameter("range bound too large".into()))?;
    let lo = BigRational::one();
    let hi = BigRational::from_integer(range.into());
    let in_range = set.len() == n && set.points().iter().all(|x| x.is_integer() && *x >= lo && *x <= hi);
    let d = distinct_differences(set);
    let (xs, _) = scaled(set)?;
    let heavy = exhaustive_heavy_subsets(set, k, c, budget)?;
    Ok(LocalSetChecks {
        range_bound: range,
        in_range,
        distinct_differences: d,
        difference_bound_holds: within_power(d as u64, a, n as u64, c),
        ap_free: is_three_ap_free(&xs),
        heavy_subset: heavy.map(|(v, _)| v.iter().map(format_rational).collect()),
    })
}
