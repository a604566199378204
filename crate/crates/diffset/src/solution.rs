//! Solutions of configurations and distinct-difference counting.

use std::collections::BTreeSet;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combinatorics::{binomial, distinct_differences_sorted, next_combination};
use crate::configuration::Configuration;
use crate::equality::{enumerate_equalities, DifferenceEquality};
use crate::error::{Error, Result};
use crate::par;
use crate::pointset::PointSet;

/// Initial sampling range for free coordinates of a generic solution.
pub const GENERIC_RANGE: u64 = 1_000_000;
/// Attempts before giving up on a generic solution.
pub const GENERIC_ATTEMPTS: usize = 8;
/// Default number of subsets an exhaustive local-property check may visit.
pub const DEFAULT_LOCAL_BUDGET: u128 = 10_000_000;

/// Number of distinct positive differences of `a`.
pub fn distinct_differences(a: &PointSet) -> usize {
    if let Some(xs) = a.as_integers() {
        let xs: Vec<i128> = xs.into_iter().map(i128::from).collect();
        let mut scratch = Vec::new();
        return distinct_differences_sorted(&xs, &mut scratch);
    }
    let p = a.points();
    let mut diffs = Vec::with_capacity(p.len() * p.len() / 2);
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            diffs.push(&p[j] - &p[i]);
        }
    }
    diffs.sort();
    diffs.dedup();
    diffs.len()
}

/// All canonical equalities satisfied by the tuple `t`.
pub fn configuration_of(t: &[BigRational]) -> Configuration {
    let k = t.len();
    let eqs: Vec<DifferenceEquality> = enumerate_equalities(k, false)
        .into_iter()
        .filter(|e| e.evaluate(t).is_zero())
        .collect();
    Configuration::new(k, eqs).expect("equalities share k")
}

/// Linear parametrization of the solutions of a configuration on a set of
/// coordinates.
///
/// Free coordinates are the smallest indices; each bound coordinate is a
/// rational combination of free ones.
#[derive(Debug, Clone)]
pub struct Parametrization {
    /// Coordinates described, sorted.
    pub coords: Vec<usize>,
    /// Free coordinates, sorted.
    pub free: Vec<usize>,
    /// For each bound coordinate, its index and the coefficients on `free`.
    pub bound: Vec<(usize, Vec<BigRational>)>,
}

impl Parametrization {
    /// Parametrizes the projection of the solution space onto `part`.
    pub fn new(c: &Configuration, part: &[usize]) -> Result<Self> {
        let k = c.k();
        let mut coords = part.to_vec();
        coords.sort_unstable();
        coords.dedup();
        for &i in &coords {
            if i == 0 || i > k {
                return Err(Error::InvalidIndex { index: i, k });
            }
        }
        let outside: Vec<usize> = (1..=k).filter(|i| !coords.contains(i)).collect();
        let mut order: Vec<usize> = outside.clone();
        order.extend(coords.iter().rev());
        let cols: Vec<usize> = order.iter().map(|i| i - 1).collect();
        let m = c.matrix().select_columns(&cols);
        let red = m.rref();
        let first_inside = outside.len();
        let mut bound_pos = Vec::new();
        let mut bound_rows = Vec::new();
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            if p >= first_inside {
                bound_pos.push(p);
                bound_rows.push(row);
            }
        }
        let free_pos: Vec<usize> = (first_inside..order.len())
            .filter(|p| !bound_pos.contains(p))
            .collect();
        let mut free: Vec<usize> = free_pos.iter().map(|&p| order[p]).collect();
        free.sort_unstable();
        let mut bound = Vec::new();
        for (row, &p) in bound_rows.iter().zip(&bound_pos) {
            let coefs: Vec<BigRational> = free
                .iter()
                .map(|f| {
                    let pos = order.iter().position(|x| x == f).expect("free coordinate");
                    -row[pos].clone()
                })
                .collect();
            bound.push((order[p], coefs));
        }
        bound.sort_by_key(|(i, _)| *i);
        Ok(Parametrization {
            coords,
            free,
            bound,
        })
    }

    /// Dimension of the projection.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    /// Values on `coords` for the given free values.
    pub fn evaluate(&self, free_values: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.coords.len()];
        for (f, v) in self.free.iter().zip(free_values) {
            let pos = self.coords.binary_search(f).expect("free coordinate");
            out[pos] = v.clone();
        }
        for (b, coefs) in &self.bound {
            let mut acc = BigRational::zero();
            for (c, v) in coefs.iter().zip(free_values) {
                if !c.is_zero() {
                    acc += c * v;
                }
            }
            let pos = self.coords.binary_search(b).expect("bound coordinate");
            out[pos] = acc;
        }
        out
    }
}

/// Whether `t` solves `c`.
pub fn is_solution(c: &Configuration, t: &[BigRational]) -> bool {
    t.len() == c.k() && c.equalities().iter().all(|e| e.evaluate(t).is_zero())
}

/// Whether the solution `t` satisfies exactly the implied equalities of `c`.
pub fn is_generic(c: &Configuration, t: &[BigRational]) -> Result<bool> {
    if t.len() != c.k() {
        return Err(Error::DimensionMismatch {
            expected: c.k(),
            found: t.len(),
        });
    }
    if !is_solution(c, t) {
        return Err(Error::NotASolution);
    }
    let satisfied = configuration_of(t);
    Ok(satisfied.equalities().iter().all(|e| c.implies(e)))
}

/// A generic solution drawn with the given seed.
///
/// Free coordinates are uniform in `[0, B)` with `B = 10^6`, squared after each
/// failed attempt. The result is scaled to integer entries.
pub fn generic_solution(c: &Configuration, seed: u64) -> Result<Vec<BigRational>> {
    let param = Parametrization::new(c, &(1..=c.k()).collect::<Vec<_>>())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut range = BigInt::from(GENERIC_RANGE);
    for _ in 0..GENERIC_ATTEMPTS {
        let free: Vec<BigRational> = (0..param.dim())
            .map(|_| BigRational::from_integer(rng.gen_bigint_range(&BigInt::zero(), &range)))
            .collect();
        let t = scale_to_integers(param.evaluate(&free));
        if is_generic(c, &t)? {
            return Ok(t);
        }
        range = &range * &range;
    }
    Err(Error::RetryLimitExceeded {
        attempts: GENERIC_ATTEMPTS,
    })
}

fn scale_to_integers(t: Vec<BigRational>) -> Vec<BigRational> {
    let l = t.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let s = BigRational::from_integer(l);
    t.into_iter().map(|x| x * &s).collect()
}

/// Distinct-difference count of a generic solution, confirmed on a second draw.
pub fn generic_diff_count(c: &Configuration, seed: u64) -> Result<usize> {
    let first = PointSet::new(generic_solution(c, seed)?);
    let second = PointSet::new(generic_solution(c, seed ^ 0x9E37_79B9_7F4A_7C15)?);
    let (a, b) = (distinct_differences(&first), distinct_differences(&second));
    if a != b {
        return Err(Error::Inconsistent(format!(
            "generic solutions give {a} and {b} distinct differences"
        )));
    }
    Ok(a)
}

/// Lower bound on `d(C)` for a 2-good configuration on `k` variables with
/// `dim(C) = d`.
pub fn bounding_diffs_lower(k: u64, d: u64) -> Result<u64> {
    if d == 0 || d > k {
        return Err(Error::InvalidParameter(format!("need 1 <= d <= k, got d = {d}, k = {k}")));
    }
    if 2 * d <= k + 2 {
        Ok((d - 1) * (d - 1))
    } else {
        Ok(k * (k - 1) / 2 - (k - d) * (k - d + 1))
    }
}

/// Lower bound on `d(C)` for a 2-good configuration on an odd number of
/// variables.
pub fn odd_bounding_diffs_lower(k: u64) -> Result<u64> {
    if k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("k = {k} must be odd")));
    }
    Ok(((k + 1) * (k + 1) / 4).saturating_sub(4))
}

/// Occurrences of `c` on the coordinates `part` inside `a`, in lexicographic
/// order of the free coordinates.
///
/// An occurrence is a tuple of distinct elements of `a` extending to a solution.
/// Enumeration chooses the free coordinates from `a` and solves for the rest.
pub fn find_occurrences(
    c: &Configuration,
    a: &PointSet,
    part: &[usize],
    limit: Option<usize>,
) -> Result<Vec<Vec<BigRational>>> {
    let param = Parametrization::new(c, part)?;
    let pts = a.points();
    let limit = limit.unwrap_or(usize::MAX);
    if param.coords.len() > pts.len() || limit == 0 {
        return Ok(Vec::new());
    }
    if param.dim() == 0 {
        let t = param.evaluate(&[]);
        return Ok(if occurrence_ok(&t, a) { vec![t] } else { Vec::new() });
    }
    let chunks = par::map_range(pts.len(), |first| {
        let mut found = Vec::new();
        let mut choice = vec![first];
        search_free(&param, a, &mut choice, limit, &mut found);
        found
    });
    let mut out = Vec::new();
    for chunk in chunks {
        for t in chunk {
            if out.len() >= limit {
                return Ok(out);
            }
            out.push(t);
        }
    }
    Ok(out)
}

fn search_free(
    param: &Parametrization,
    a: &PointSet,
    choice: &mut Vec<usize>,
    limit: usize,
    found: &mut Vec<Vec<BigRational>>,
) {
    if found.len() >= limit {
        return;
    }
    let pts = a.points();
    if choice.len() == param.dim() {
        let vals: Vec<BigRational> = choice.iter().map(|&i| pts[i].clone()).collect();
        let t = param.evaluate(&vals);
        if occurrence_ok(&t, a) {
            found.push(t);
        }
        return;
    }
    for i in 0..pts.len() {
        if choice.contains(&i) {
            continue;
        }
        choice.push(i);
        search_free(param, a, choice, limit, found);
        choice.pop();
        if found.len() >= limit {
            return;
        }
    }
}

fn occurrence_ok(t: &[BigRational], a: &PointSet) -> bool {
    let distinct: BTreeSet<&BigRational> = t.iter().collect();
    distinct.len() == t.len() && t.iter().all(|x| a.contains(x))
}

/// How a local-property check proceeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalCheckMode {
    /// Visit every `k`-subset, refusing when there are more than `budget`.
    Exhaustive { budget: u128 },
    /// Draw `samples` random `k`-subsets.
    Sampled { samples: usize, seed: u64 },
}

impl Default for LocalCheckMode {
    fn default() -> Self {
        LocalCheckMode::Exhaustive {
            budget: DEFAULT_LOCAL_BUDGET,
        }
    }
}

/// Result of a local-property check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LocalOutcome {
    /// Every `k`-subset has at least `l` distinct differences.
    Holds,
    /// The first offending subset in lexicographic order.
    Violated { witness: Vec<String>, distinct: usize },
    /// No violation among the sampled subsets; not a proof.
    NoViolationFound { samples: usize },
}

impl LocalOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, LocalOutcome::Holds)
    }
}

/// Whether every `k`-subset of `a` determines at least `l` distinct differences.
pub fn satisfies_local_property(
    a: &PointSet,
    k: usize,
    l: usize,
    mode: LocalCheckMode,
) -> Result<LocalOutcome> {
    let n = a.len();
    if k < 2 || n < k {
        return Err(Error::InvalidParameter(format!("need 2 <= k <= |A|, got k = {k}, |A| = {n}")));
    }
    if l == 0 {
        return Ok(LocalOutcome::Holds);
    }
    let keys: Vec<SortKey> = match a.as_integers() {
        Some(xs) => xs.into_iter().map(|x| SortKey::Int(x as i128)).collect(),
        None => {
            let l = a.points().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let scaled: Option<Vec<i128>> = a
                .points()
                .iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer().to_i128())
                .collect();
            match scaled {
                Some(v) => v.into_iter().map(SortKey::Int).collect(),
                None => a.points().iter().cloned().map(SortKey::Big).collect(),
            }
        }
    };
    match mode {
        LocalCheckMode::Exhaustive { budget } => {
            let needed = binomial(n as u64, k as u64);
            if needed > budget {
                return Err(Error::BudgetExceeded { needed, budget });
            }
            let per_first = par::map_range(n - k + 1, |first| first_violation(&keys, k, l, first));
            match per_first.into_iter().flatten().next() {
                Some((idx, distinct)) => {
                    let witness = idx.iter().map(|&i| crate::pointset::format_rational(&a.points()[i])).collect();
                    Ok(LocalOutcome::Violated { witness, distinct })
                }
                None => Ok(LocalOutcome::Holds),
            }
        }
        LocalCheckMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                let mut idx = rand::seq::index::sample(&mut rng, n, k).into_vec();
                idx.sort_unstable();
                let d = subset_differences(&keys, &idx);
                if d < l {
                    let witness = idx.iter().map(|&i| crate::pointset::format_rational(&a.points()[i])).collect();
                    return Ok(LocalOutcome::Violated { witness, distinct: d });
                }
            }
            Ok(LocalOutcome::NoViolationFound { samples })
        }
    }
}

#[derive(Debug, Clone)]
enum SortKey {
    Int(i128),
    Big(BigRational),
}

fn subset_differences(keys: &[SortKey], idx: &[usize]) -> usize {
    if let SortKey::Int(_) = keys[0] {
        let xs: Vec<i128> = idx
            .iter()
            .map(|&i| match keys[i] {
                SortKey::Int(v) => v,
                SortKey::Big(_) => unreachable!("mixed keys"),
            })
            .collect();
        let mut scratch = Vec::new();
        return distinct_differences_sorted(&xs, &mut scratch);
    }
    let xs: Vec<BigRational> = idx
        .iter()
        .map(|&i| match &keys[i] {
            SortKey::Big(v) => v.clone(),
            SortKey::Int(v) => BigRational::from_integer((*v).into()),
        })
        .collect();
    let mut d = Vec::new();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            d.push(&xs[j] - &xs[i]);
        }
    }
    d.sort();
    d.dedup();
    d.len()
}

fn first_violation(keys: &[SortKey], k: usize, l: usize, first: usize) -> Option<(Vec<usize>, usize)> {
    let n = keys.len();
    let rest_n = n - first - 1;
    let mut rest: Vec<usize> = (0..k - 1).collect();
    let mut idx = vec![0usize; k];
    loop {
        idx[0] = first;
        for (slot, r) in idx[1..].iter_mut().zip(&rest) {
            *slot = first + 1 + r;
        }
        let d = subset_differences(keys, &idx);
        if d < l {
            return Some((idx, d));
        }
        if k == 1 || !next_combination(&mut rest, rest_n) {
            return None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::c_sum;
    use crate::linalg::q;

    fn six_var() -> Configuration {
        Configuration::from_quadruples(6, &[[1, 2, 3, 4], [1, 2, 5, 6]]).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn generic_and_special_solutions() {
        let c = six_var();
        assert!(is_generic(&c, &ints(&[1, 2, 4, 5, 10, 11])).unwrap());
        assert!(!is_generic(&c, &ints(&[1, 2, 4, 5, 9, 10])).unwrap());
        assert_eq!(is_generic(&c, &ints(&[1, 2, 4, 6, 9, 10])), Err(Error::NotASolution));
    }

    #[test]
    fn occurrences_in_the_seven_element_set() {
        let c = six_var();
        let a = PointSet::from_integers([1, 2, 4, 5, 9, 10, 11]);
        let occ = find_occurrences(&c, &a, &[1, 2, 3, 4, 5, 6], None).unwrap();
        assert!(occ.contains(&ints(&[1, 2, 4, 5, 10, 11])));
        assert!(occ.contains(&ints(&[1, 2, 4, 5, 9, 10])));
        let part = find_occurrences(&c, &a, &[1, 2, 3, 4], None).unwrap();
        assert!(part.contains(&ints(&[1, 10, 2, 11])));
        for t in &occ {
            assert!(is_solution(&c, t));
        }
    }

    #[test]
    fn occurrences_respect_limit_and_order() {
        let c = six_var();
        let a = PointSet::from_integers([1, 2, 4, 5, 9, 10, 11]);
        let all = find_occurrences(&c, &a, &[1, 2, 3, 4, 5, 6], None).unwrap();
        let two = find_occurrences(&c, &a, &[1, 2, 3, 4, 5, 6], Some(2)).unwrap();
        assert_eq!(&all[..2], &two[..]);
    }

    #[test]
    fn invalid_configuration_has_no_occurrences() {
        let c = Configuration::from_quadruples(4, &[[1, 2, 3, 4], [1, 2, 4, 3]]).unwrap();
        let a = PointSet::from_integers(0..12);
        assert!(find_occurrences(&c, &a, &[1, 2, 3, 4], None).unwrap().is_empty());
    }

    #[test]
    fn local_property_examples() {
        let a = PointSet::from_integers([0, 1, 3, 4]);
        assert!(satisfies_local_property(&a, 3, 3, LocalCheckMode::default()).unwrap().holds());
        let out = satisfies_local_property(&a, 4, 5, LocalCheckMode::default()).unwrap();
        assert_eq!(
            out,
            LocalOutcome::Violated {
                witness: vec!["0".into(), "1".into(), "3".into(), "4".into()],
                distinct: 4
            }
        );
        let ap = PointSet::from_integers([0, 1, 2]);
        assert!(!satisfies_local_property(&ap, 3, 3, LocalCheckMode::default()).unwrap().holds());
    }

    #[test]
    fn local_property_budget() {
        let a = PointSet::from_integers(0..30);
        let err = satisfies_local_property(&a, 5, 3, LocalCheckMode::Exhaustive { budget: 10 });
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
        let sampled =
            satisfies_local_property(&a, 5, 1, LocalCheckMode::Sampled { samples: 50, seed: 1 }).unwrap();
        assert_eq!(sampled, LocalOutcome::NoViolationFound { samples: 50 });
    }

    #[test]
    fn fractional_points() {
        let (a, _) = PointSet::parse("0\n1/2\n3/2\n2\n").unwrap();
        assert_eq!(distinct_differences(&a), 4);
        assert!(!satisfies_local_property(&a, 4, 5, LocalCheckMode::default()).unwrap().holds());
    }

    #[test]
    fn generic_counts_of_small_configurations() {
        assert_eq!(generic_diff_count(&c_sum(4).unwrap(), 1).unwrap(), 4);
        assert_eq!(generic_diff_count(&Configuration::empty(4), 1).unwrap(), 6);
        assert_eq!(generic_diff_count(&six_var(), 7).unwrap(), 10);
    }

    #[test]
    fn bound_formulas() {
        assert_eq!(bounding_diffs_lower(4, 3).unwrap(), 4);
        assert_eq!(bounding_diffs_lower(6, 4).unwrap(), 9);
        assert_eq!(bounding_diffs_lower(8, 5).unwrap(), 16);
        assert_eq!(bounding_diffs_lower(8, 2).unwrap(), 1);
        assert_eq!(bounding_diffs_lower(8, 8).unwrap(), 28);
        assert_eq!(odd_bounding_diffs_lower(7).unwrap(), 12);
        assert_eq!(odd_bounding_diffs_lower(9).unwrap(), 21);
        assert_eq!(odd_bounding_diffs_lower(3).unwrap(), 0);
        assert!(odd_bounding_diffs_lower(8).is_err());
        assert!(bounding_diffs_lower(4, 0).is_err());
    }

    #[test]
    fn parametrization_free_coordinates_are_lowest() {
        let p = Parametrization::new(&six_var(), &[1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(p.free, vec![1, 2, 3, 5]);
        let p4 = Parametrization::new(&six_var(), &[1, 2, 3, 4]).unwrap();
        assert_eq!(p4.dim(), 3);
    }
}
