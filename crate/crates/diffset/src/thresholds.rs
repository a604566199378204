//! Closed-form thresholds for the local-properties problem, in exact arithmetic.
//!
//! Upper bounds give `l` with `g(n, k, l) = o(n^c)`; lower bounds give `l` with
//! `g(n, k, l) = Omega(n^c)`. The exponent attached to a lower bound of order
//! `t` is `1 + 1/(2^t - 1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::pointset::serialize_rational;

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn rat(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

fn to_u128(x: &BigInt) -> Result<u128> {
    x.to_u128()
        .ok_or_else(|| Error::InvalidParameter(format!("value {x} does not fit in 128 bits")))
}

fn ceil_rational(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

fn check_exponent(c: &BigRational) -> Result<()> {
    let one = BigRational::one();
    if *c <= one || *c > BigRational::from_integer(big(2)) {
        return Err(Error::InvalidParameter(format!("exponent must lie in (1, 2], got {c}")));
    }
    Ok(())
}

/// `1 + 1/(2^t - 1)`.
pub fn lower_exponent(t: u32) -> BigRational {
    let p = BigInt::one() << t as usize;
    rat(p.clone(), p - 1)
}

/// `3^(t-1) / 4^t`, the leading coefficient of the order-`t` lower bound.
pub fn lower_coefficient(t: u32) -> BigRational {
    rat(BigInt::from(3).pow(t - 1), BigInt::from(4).pow(t))
}

/// `((c - 1) / c)^2`, the leading coefficient of the upper bound at exponent `c`.
pub fn upper_coefficient(c: &BigRational) -> BigRational {
    let q = (c - BigRational::one()) / c;
    &q * &q
}

/// `ceil((c - 1)(k - 1)/c)^2`.
pub fn upper_bound_ell(k: u64, c: &BigRational) -> Result<u128> {
    check_exponent(c)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let x = ceil_rational(&((c - BigRational::one()) * BigRational::from_integer(big(k - 1)) / c));
    to_u128(&(&x * &x))
}

/// `(k + 1)^2 / 4 - 4`, the sharper quadratic upper bound for odd `k >= 3`.
pub fn odd_upper_bound(k: u64) -> Result<u128> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("need odd k >= 3, got {k}")));
    }
    let h = (k as u128).div_ceil(2);
    Ok(h * h - 4)
}

/// The `l` for which the order-`t` lower bound gives `Omega(n^(1 + 1/(2^t - 1)))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBound {
    pub k: u64,
    pub t: u32,
    pub ell: u128,
    #[serde(serialize_with = "serialize_rational")]
    pub exponent: BigRational,
    /// Whether `2^t` divides `k`.
    pub divisible: bool,
    /// `k mod 2^t`.
    pub remainder: u64,
    /// `3^(t-1) k^2 / 4^t + 2^t k + (3^(t-1) + 1)/2`, valid for every `k`.
    #[serde(serialize_with = "serialize_rational")]
    pub ell_plus: BigRational,
}

fn divisible_ell(k: &BigInt, t: u32) -> BigInt {
    let p3 = BigInt::from(3).pow(t - 1);
    (&p3 * k * k) / BigInt::from(4).pow(t) + (p3 + 1) / 2
}

/// Order-`t` lower bound on `l`.
///
/// When `2^t | k` this is `3^(t-1) k^2 / 4^t + (3^(t-1) + 1)/2`. Otherwise,
/// with `r = k mod 2^t`, the divisible value for `k - r` is lifted by
/// `(k - 1) + ... + (k - r)`, one point at a time. The looser closed form
/// `ell_plus` is reported alongside. `require_divisibility` turns the
/// non-divisible case into an error.
pub fn lower_bound_ell(k: u64, t: u32, require_divisibility: bool) -> Result<LowerBound> {
    if t == 0 || t > 64 {
        return Err(Error::InvalidParameter(format!("need 1 <= t <= 64, got {t}")));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let modulus = 1u128 << t;
    let r = (k as u128 % modulus) as u64;
    if require_divisibility && r != 0 {
        return Err(Error::InvalidParameter(format!("2^{t} does not divide k = {k}")));
    }
    let base = divisible_ell(&big(k - r), t);
    let lift: u128 = (1..=r as u128).map(|j| k as u128 - j).sum();
    Ok(LowerBound {
        k,
        t,
        ell: to_u128(&base)? + lift,
        exponent: lower_exponent(t),
        divisible: r == 0,
        remainder: r,
        ell_plus: ell_plus(&big(k), t),
    })
}

/// `(lower, upper)` bounds on the quadratic threshold, `k >= 4`.
pub fn quadratic_threshold(k: u64) -> Result<(u128, u128)> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("need k >= 4, got {k}")));
    }
    let k = k as u128;
    if k.is_multiple_of(2) {
        let v = k * k / 4 + 1;
        Ok((v, v))
    } else {
        let v = (k + 1) * (k + 1) / 4;
        Ok((v - 3, v))
    }
}

/// Coefficients `a1 < a2` bracketing the threshold for `Omega(n^c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NcCoefficients {
    #[serde(serialize_with = "serialize_rational")]
    pub c: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub a1: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub a2: BigRational,
    pub t: u32,
}

/// `a1 = ((c-1)/c)^2 / 2`, `a2 = (3/4)^(t+1) / 2` with `t` the largest
/// integer such that `c <= 1 + 1/(2^t - 1)`.
///
/// Also confirms `0 < a1 < a2 < 1/2` and
/// `(3/4)(2 a1)^(log_4(4/3)) <= 2 a2 < (2 a1)^(log_4(4/3))`. Writing
/// `u = c/(c-1)`, the sandwich is equivalent to `2^t <= u < 2^(t+1)`, which
/// is compared exactly.
pub fn nc_threshold_coefficients(c: &BigRational) -> Result<NcCoefficients> {
    check_exponent(c)?;
    let u = c / (c - BigRational::one());
    // 2^t <= u, largest such t.
    let mut t = 0u32;
    while BigRational::from_integer(BigInt::one() << (t + 1) as usize) <= u {
        t += 1;
    }
    let half = rat(big(1), big(2));
    let a1 = upper_coefficient(c) * &half;
    let a2 = rat(BigInt::from(3).pow(t + 1), BigInt::from(4).pow(t + 1)) * &half;
    let two_t = BigRational::from_integer(BigInt::one() << t as usize);
    let sandwich = two_t <= u && u < &two_t * BigRational::from_integer(big(2));
    let ordered = a1.is_positive() && a1 < a2 && a2 < half;
    if t == 0 || !sandwich || !ordered {
        return Err(Error::Inconsistent(format!("coefficients for c = {c} out of order")));
    }
    Ok(NcCoefficients { c: c.clone(), a1, a2, t })
}

/// Exponents `c1 < c2` with `g(n, k, a k^2)` between `n^c1` and `n^c2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyExponents {
    #[serde(serialize_with = "serialize_rational")]
    pub a: BigRational,
    pub t: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub c1: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub c2: BigRational,
    /// Dyadic rational just above `sqrt(a)` with `c2 = 1/(1 - q)`.
    #[serde(serialize_with = "serialize_rational")]
    pub q: BigRational,
}

/// Fractional bits of the dyadic rational used for `c2`.
pub const POLY_DYADIC_BITS: u32 = 16;

/// `c1 = 1 + 1/(2^t - 1)` for the least `t` with `a > 3^(t-1)/4^t`, and
/// `c2 = 1/(1 - q)` where `q` is the least multiple of `2^-16` above `sqrt(a)`.
pub fn poly_bounds_exponents(a: &BigRational) -> Result<PolyExponents> {
    if !a.is_positive() || *a >= rat(big(1), big(4)) {
        return Err(Error::InvalidParameter(format!("need 0 < a < 1/4, got {a}")));
    }
    let mut t = 1u32;
    while *a <= lower_coefficient(t) {
        t += 1;
    }
    let c1 = lower_exponent(t);
    let scale = BigInt::one() << (2 * POLY_DYADIC_BITS) as usize;
    let floor_scaled = (a.numer() * &scale).div_floor(a.denom());
    let s = floor_scaled.sqrt();
    let q = rat(s + 1, BigInt::one() << POLY_DYADIC_BITS as usize);
    let c2 = BigRational::one() / (BigRational::one() - &q);
    let two = BigRational::from_integer(big(2));
    let sound = &q * &q > *a && c1 > BigRational::one() && c1 < c2 && c2 <= two;
    if !sound {
        return Err(Error::Inconsistent(format!("exponents for a = {a} out of order")));
    }
    Ok(PolyExponents {
        a: a.clone(),
        t,
        c1,
        c2,
        q,
    })
}

/// `3^(t-1) k^2 / 4^t + 2^t k + (3^(t-1) + 1)/2`.
pub fn ell_plus(k: &BigInt, t: u32) -> BigRational {
    let p3 = BigInt::from(3).pow(t - 1);
    let lead = rat(&p3 * k * k, BigInt::from(4).pow(t));
    let lin = BigRational::from_integer((BigInt::one() << t as usize) * k);
    lead + lin + rat(p3 + 1, big(2))
}

/// `ceil((k - 1) / 2^t)^2`.
pub fn ell_minus(k: &BigInt, t: u32) -> BigInt {
    let x = ceil_rational(&rat(k - 1, BigInt::one() << t as usize));
    &x * &x
}

/// One rung of the exponent ladder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderRung {
    /// `t_i = 10^i`.
    pub t: String,
    /// `ceil(ell_plus(t_i))`.
    pub ell: String,
    /// `ell_minus(t_i + 1)`.
    pub ell_minus_next: String,
}

/// Distinct-exponent ladder for a given `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkLadder {
    pub k: String,
    /// Largest `i >= 0` with `3 * 4^(10^i) <= k`, or 0.
    pub r: u32,
    /// `max(r, 1)`: at least one exponent always occurs.
    pub distinct_exponents_lower: u32,
    pub rungs: Vec<LadderRung>,
}

/// Largest `i >= 0` with `3 * 4^(10^i) <= k`, or `None` when `k < 12`.
fn ladder_height(k: &BigInt) -> Option<u32> {
    let fits = |e: u64| -> bool {
        // 4^e = 2^(2e); compare bit lengths before building the power.
        let bits = k.bits();
        if 2 * e + 2 > bits + 1 {
            return false;
        }
        BigInt::from(3) * (BigInt::one() << (2 * e) as usize) <= *k
    };
    if !fits(1) {
        return None;
    }
    let mut i = 0u32;
    let mut e = 10u64;
    while fits(e) {
        i += 1;
        e = match e.checked_mul(10) {
            Some(v) => v,
            None => break,
        };
    }
    Some(i)
}

/// Builds the ladder `t_i = 10^i`, `l_i = ceil(ell_plus(t_i))` for `1 <= i <= r`.
///
/// Confirms `ell_plus(t_(i+1)) <= ell_minus(t_i + 1)`, that the `l_i` strictly
/// decrease, and that every `l_i` lies in `[0, C(k, 2)]`.
pub fn sk_ladder(k: &BigInt) -> Result<SkLadder> {
    if *k < big(2) {
        return Err(Error::InvalidParameter(format!("need k >= 2, got {k}")));
    }
    let r = ladder_height(k).unwrap_or(0);
    let pairs = k * (k - 1) / 2;
    let mut rungs = Vec::new();
    let mut prev: Option<BigInt> = None;
    for i in 1..=r {
        let t = 10u32.pow(i);
        let ell = ceil_rational(&ell_plus(k, t));
        let minus_next = ell_minus(k, t + 1);
        if ell.is_negative() || ell > pairs || prev.as_ref().is_some_and(|p| &ell >= p) {
            return Err(Error::Inconsistent(format!("ladder rung {i} out of range")));
        }
        if i < r {
            let next = ell_plus(k, 10u32.pow(i + 1));
            if next > BigRational::from_integer(minus_next.clone()) {
                return Err(Error::Inconsistent(format!("ladder rungs {i} and {} do not interleave", i + 1)));
            }
        }
        rungs.push(LadderRung {
            t: t.to_string(),
            ell: ell.to_string(),
            ell_minus_next: minus_next.to_string(),
        });
        prev = Some(ell);
    }
    Ok(SkLadder {
        k: k.to_string(),
        r,
        distinct_exponents_lower: r.max(1),
        rungs,
    })
}

/// Both sides of `ell_plus(10t) <= ell_minus(t + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpacingCheck {
    pub t: u32,
    pub ell_plus: String,
    pub ell_minus: String,
    pub holds: bool,
}

/// Evaluates the rung spacing inequality for `t >= 2` and `k >= 3 * 4^(10t)`.
pub fn ladder_spacing(t: u32, k: &BigInt) -> Result<SpacingCheck> {
    if t < 2 {
        return Err(Error::InvalidParameter(format!("need t >= 2, got {t}")));
    }
    let floor = BigInt::from(3) * BigInt::from(4).pow(10 * t);
    if *k < floor {
        return Err(Error::InvalidParameter(format!("need k >= 3 * 4^{}", 10 * t)));
    }
    let plus = ell_plus(k, 10 * t);
    let minus = ell_minus(k, t + 1);
    Ok(SpacingCheck {
        t,
        ell_plus: crate::pointset::format_rational(&plus),
        ell_minus: minus.to_string(),
        holds: plus <= BigRational::from_integer(minus),
    })
}

/// Direction of a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `g(n, k, l) = o(n^c)`.
    Upper,
    /// `g(n, k, l) = Omega(n^c)`.
    Lower,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        }
    }
}

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdRow {
    pub source: &'static str,
    pub ell: u128,
    #[serde(serialize_with = "serialize_rational")]
    pub exponent: BigRational,
    pub direction: Direction,
    /// Whether `0 <= l <= C(k, 2)`.
    pub in_range: bool,
}

/// All bounds for one `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub k: u64,
    pub quadratic_lower: u128,
    pub quadratic_upper: u128,
    pub rows: Vec<ThresholdRow>,
}

/// Orders used for the report rows.
pub const REPORT_ORDERS: u32 = 6;

/// Upper and lower bounds at the exponents `1 + 1/(2^t - 1)`, `t = 1..=6`,
/// plus the odd-`k` quadratic upper bound.
pub fn threshold_report(k: u64) -> Result<ThresholdReport> {
    let (quadratic_lower, quadratic_upper) = quadratic_threshold(k)?;
    let pairs = binomial(k, 2);
    let mut rows = Vec::new();
    if k % 2 == 1 {
        let ell = odd_upper_bound(k)?;
        rows.push(ThresholdRow {
            source: "odd-upper",
            ell,
            exponent: BigRational::from_integer(big(2)),
            direction: Direction::Upper,
            in_range: ell <= pairs,
        });
    }
    for t in 1..=REPORT_ORDERS {
        let c = lower_exponent(t);
        let ell = upper_bound_ell(k, &c)?;
        rows.push(ThresholdRow {
            source: "upper",
            ell,
            exponent: c.clone(),
            direction: Direction::Upper,
            in_range: ell <= pairs,
        });
        let lb = lower_bound_ell(k, t, false)?;
        rows.push(ThresholdRow {
            source: if lb.divisible { "lower-divisible" } else { "lower-remainder" },
            ell: lb.ell,
            exponent: c,
            direction: Direction::Lower,
            in_range: lb.ell <= pairs,
        });
    }
    Ok(ThresholdReport {
        k,
        quadratic_lower,
        quadratic_upper,
        rows,
    })
}

/// One plot point `(l / k^2, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FigureRow {
    #[serde(serialize_with = "serialize_rational")]
    pub coeff: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub exponent: BigRational,
    pub direction: Direction,
    pub source: &'static str,
}

/// Header of the plot-ready CSV.
pub const FIGURE_HEADER: [&str; 4] = ["coeff", "exponent", "direction", "source"];

/// Steps of the `c` grid `1 + j/16` used for upper-bound curves.
pub const FIGURE_GRID_STEPS: u64 = 16;

/// Staircase orders `t = 1..=10`.
pub const FIGURE_ORDERS: u32 = 10;

/// Leading-coefficient curves and their values at a concrete `k >= 4`.
///
/// Rows tagged `upper-curve` and `lower-staircase` are the limiting
/// coefficients; `upper-k` and `lower-k` divide the exact `l` for this `k`
/// by `k^2`.
pub fn figure_curve_data(k: u64) -> Result<Vec<FigureRow>> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("need k >= 4, got {k}")));
    }
    let k2 = BigRational::from_integer(big(k) * big(k));
    let mut rows = Vec::new();
    for j in 1..=FIGURE_GRID_STEPS {
        let c = BigRational::one() + rat(big(j), big(FIGURE_GRID_STEPS));
        rows.push(FigureRow {
            coeff: upper_coefficient(&c),
            exponent: c.clone(),
            direction: Direction::Upper,
            source: "upper-curve",
        });
        rows.push(FigureRow {
            coeff: BigRational::from_integer(BigInt::from(upper_bound_ell(k, &c)?)) / &k2,
            exponent: c,
            direction: Direction::Upper,
            source: "upper-k",
        });
    }
    for t in 1..=FIGURE_ORDERS {
        let c = lower_exponent(t);
        rows.push(FigureRow {
            coeff: lower_coefficient(t),
            exponent: c.clone(),
            direction: Direction::Lower,
            source: "lower-staircase",
        });
        let lb = lower_bound_ell(k, t, false)?;
        rows.push(FigureRow {
            coeff: BigRational::from_integer(BigInt::from(lb.ell)) / &k2,
            exponent: c,
            direction: Direction::Lower,
            source: "lower-k",
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, ratio};

    #[test]
    fn upper_values() {
        assert_eq!(upper_bound_ell(8, &q(2)).unwrap(), 16);
        assert_eq!(upper_bound_ell(7, &q(2)).unwrap(), 9);
        assert_eq!(upper_bound_ell(2, &q(2)).unwrap(), 1);
        assert_eq!(upper_bound_ell(2, &ratio(17, 16)).unwrap(), 1);
        assert_eq!(odd_upper_bound(7).unwrap(), 12);
        assert!(upper_bound_ell(8, &q(1)).is_err());
        assert!(upper_bound_ell(8, &ratio(5, 2)).is_err());
        assert!(odd_upper_bound(8).is_err());
    }

    #[test]
    fn lower_values() {
        let a = lower_bound_ell(8, 1, true).unwrap();
        assert_eq!((a.ell, a.exponent), (17, q(2)));
        let b = lower_bound_ell(8, 2, true).unwrap();
        assert_eq!((b.ell, b.exponent), (14, ratio(4, 3)));
        let c = lower_bound_ell(7, 1, false).unwrap();
        assert_eq!((c.ell, c.remainder, c.divisible), (16, 1, false));
        assert_eq!(c.ell_plus, ratio(109, 4));
        assert!(lower_bound_ell(7, 1, true).is_err());
        assert!(lower_bound_ell(7, 0, false).is_err());
    }

    #[test]
    fn remainder_path_never_exceeds_closed_form() {
        for k in 1..200u64 {
            for t in 1..=6 {
                let lb = lower_bound_ell(k, t, false).unwrap();
                assert!(BigRational::from_integer(BigInt::from(lb.ell)) <= lb.ell_plus, "k = {k}, t = {t}");
            }
        }
    }

    #[test]
    fn quadratic_values() {
        assert_eq!(quadratic_threshold(8).unwrap(), (17, 17));
        assert_eq!(quadratic_threshold(7).unwrap(), (13, 16));
        assert_eq!(quadratic_threshold(4).unwrap(), (5, 5));
        assert!(quadratic_threshold(3).is_err());
        for k in (4..60u64).step_by(2) {
            assert_eq!(upper_bound_ell(k, &q(2)).unwrap() + 1, lower_bound_ell(k, 1, true).unwrap().ell);
        }
        for k in (5..61u64).step_by(2) {
            let (lo, hi) = quadratic_threshold(k).unwrap();
            assert_eq!(lo, odd_upper_bound(k).unwrap() + 1);
            assert_eq!(hi, lower_bound_ell(k, 1, false).unwrap().ell);
        }
    }

    #[test]
    fn nc_values() {
        let a = nc_threshold_coefficients(&q(2)).unwrap();
        assert_eq!((a.t, a.a1.clone(), a.a2.clone()), (1, ratio(1, 8), ratio(9, 32)));
        let b = nc_threshold_coefficients(&ratio(3, 2)).unwrap();
        assert_eq!((b.t, b.a1.clone(), b.a2.clone()), (1, ratio(1, 18), ratio(9, 32)));
        let c = nc_threshold_coefficients(&ratio(17, 16)).unwrap();
        assert_eq!(c.t, 4);
        assert_eq!(c.a2, ratio(243, 2048));
    }

    #[test]
    fn nc_sandwich_in_floating_point() {
        let e = (4.0f64 / 3.0).ln() / 4.0f64.ln();
        for j in 1..=64i64 {
            let c = BigRational::one() + ratio(j, 64);
            let r = nc_threshold_coefficients(&c).unwrap();
            let a1 = r.a1.to_f64().unwrap();
            let a2 = r.a2.to_f64().unwrap();
            let hi = (2.0 * a1).powf(e);
            assert!(0.75 * hi <= 2.0 * a2 * (1.0 + 1e-12), "c = {c}");
            assert!(2.0 * a2 < hi * (1.0 + 1e-12), "c = {c}");
        }
    }

    #[test]
    fn poly_values() {
        let a = poly_bounds_exponents(&ratio(1, 5)).unwrap();
        assert_eq!((a.t, a.c1.clone()), (2, ratio(4, 3)));
        let b = poly_bounds_exponents(&ratio(3, 16)).unwrap();
        assert_eq!((b.t, b.c1.clone()), (3, ratio(8, 7)));
        assert!(poly_bounds_exponents(&ratio(1, 4)).is_err());
        assert!(poly_bounds_exponents(&q(0)).is_err());
        // c2 admits a: a < ((c2 - 1)/c2)^2.
        assert!(upper_coefficient(&b.c2) > ratio(3, 16));
    }

    #[test]
    fn poly_exponents_shrink_with_a() {
        let mut prev: Option<PolyExponents> = None;
        for i in 3..40u32 {
            let a = rat(big(1), BigInt::from(2).pow(i));
            let p = poly_bounds_exponents(&a).unwrap();
            if let Some(pr) = &prev {
                assert!(p.c1 <= pr.c1 && p.c2 <= pr.c2, "a = {a}");
            }
            prev = Some(p);
        }
        let last = prev.unwrap();
        assert!(last.c2 < ratio(1001, 1000));
    }

    #[test]
    fn ladder_values() {
        let small = sk_ladder(&big(16)).unwrap();
        assert_eq!((small.r, small.distinct_exponents_lower, small.rungs.len()), (0, 1, 0));
        assert_eq!(sk_ladder(&big(5)).unwrap().r, 0);
        let k = BigInt::from(3) * BigInt::from(4).pow(100);
        let l = sk_ladder(&k).unwrap();
        assert_eq!(l.r, 2);
        assert_eq!(l.rungs[0].t, "10");
        assert_eq!(l.rungs[1].t, "100");
        let just_below = &k - 1;
        assert_eq!(sk_ladder(&just_below).unwrap().r, 1);
    }

    #[test]
    fn spacing_at_smallest_admissible_k() {
        for t in 2..=5u32 {
            let k = BigInt::from(3) * BigInt::from(4).pow(10 * t);
            assert!(ladder_spacing(t, &k).unwrap().holds, "t = {t}");
        }
        assert!(ladder_spacing(1, &big(1 << 40)).is_err());
        assert!(ladder_spacing(2, &big(1000)).is_err());
    }

    #[test]
    fn figure_rows() {
        let rows = figure_curve_data(8).unwrap();
        let stair: Vec<_> = rows.iter().filter(|r| r.source == "lower-staircase").collect();
        assert_eq!(stair.len(), 10);
        assert_eq!((stair[0].coeff.clone(), stair[0].exponent.clone()), (ratio(1, 4), q(2)));
        assert_eq!((stair[1].coeff.clone(), stair[1].exponent.clone()), (ratio(3, 16), ratio(4, 3)));
        let top = rows.iter().find(|r| r.source == "upper-curve" && r.exponent == q(2)).unwrap();
        assert_eq!(top.coeff, ratio(1, 4));
        assert!(figure_curve_data(3).is_err());
    }

    #[test]
    fn report_contains_quadratic_rows() {
        let r = threshold_report(8).unwrap();
        assert!(r
            .rows
            .iter()
            .any(|row| row.ell == 17 && row.exponent == q(2) && row.direction == Direction::Lower));
        assert!(r.rows.iter().all(|row| row.exponent > q(1) && row.exponent <= q(2)));
        let odd = threshold_report(7).unwrap();
        assert_eq!(odd.rows[0].ell, 12);
    }
}
