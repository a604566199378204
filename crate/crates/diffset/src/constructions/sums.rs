//! Sum multiplicities, additive energy and the repeated-sums inequality.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::PointSet;

pub(crate) fn scaled(a: &PointSet) -> Result<(Vec<i128>, BigInt)> {
    a.scaled_integers()
        .ok_or_else(|| Error::InvalidParameter("scaled points do not fit in 128 bits".into()))
}

/// Occurrence counts of `f(x, y)` over all ordered pairs, keyed by value.
pub(crate) fn pair_counts(xs: &[i128], f: impl Fn(i128, i128) -> i128) -> HashMap<i128, u64> {
    let mut m: HashMap<i128, u64> = HashMap::with_capacity(xs.len() * xs.len());
    for &x in xs {
        for &y in xs {
            *m.entry(f(x, y)).or_insert(0) += 1;
        }
    }
    m
}

/// The most frequent ordered-pair sum (smallest on ties) and its multiplicity.
pub fn max_sum_multiplicity(a: &PointSet) -> Result<(BigRational, u64)> {
    if a.is_empty() {
        return Err(Error::InvalidParameter("empty set".into()));
    }
    let (xs, denom) = scaled(a)?;
    let counts = pair_counts(&xs, |x, y| x + y);
    let (sum, m) = counts
        .into_iter()
        .fold((i128::MAX, 0u64), |acc, (s, c)| if c > acc.1 || (c == acc.1 && s < acc.0) { (s, c) } else { acc });
    Ok((BigRational::new(BigInt::from(sum), denom), m))
}

/// Number of quadruples `(a1, a2, a3, a4)` in `A^4` with `a1 - a2 = a3 - a4`.
pub fn additive_energy(a: &PointSet) -> Result<u128> {
    if a.is_empty() {
        return Err(Error::InvalidParameter("empty set".into()));
    }
    let (xs, _) = scaled(a)?;
    Ok(pair_counts(&xs, |x, y| x - y)
        .values()
        .map(|&c| (c as u128) * (c as u128))
        .sum())
}

/// Both sides of the energy double count for one set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepeatedSumsCheck {
    pub n: u64,
    /// Maximum ordered-pair sum multiplicity.
    pub m: u64,
    /// Number of distinct values `a - b` over ordered pairs, zero included.
    pub d: u64,
    pub energy: u128,
    pub product_holds: bool,
    pub energy_lower_holds: bool,
    pub energy_upper_holds: bool,
}

impl RepeatedSumsCheck {
    pub fn holds(&self) -> bool {
        self.product_holds && self.energy_lower_holds && self.energy_upper_holds
    }
}

/// Checks `m d >= n^2` and `n^4 / d <= E <= n^2 m`, all in integers.
pub fn check_repeated_sums(a: &PointSet) -> Result<RepeatedSumsCheck> {
    let n = a.len() as u128;
    let (_, m) = max_sum_multiplicity(a)?;
    let d = 2 * crate::solution::distinct_differences(a) as u128 + 1;
    let energy = additive_energy(a)?;
    let m128 = m as u128;
    Ok(RepeatedSumsCheck {
        n: n as u64,
        m,
        d: d as u64,
        energy,
        product_holds: m128 * d >= n * n,
        energy_lower_holds: n.pow(4) <= energy * d,
        energy_upper_holds: energy <= n * n * m128,
    })
}
