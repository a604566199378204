//! Configurations: finite sets of difference equalities on `k` variables.
//!
//! All linear-algebra questions (dimension, projection dimensions, implication,
//! validity, AP-freeness, heaviness) are answered exactly from the rational
//! coefficient matrix whose rows are the equalities' contents.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::equality::{enumerate_equalities, enumerate_on, DifferenceEquality};
use crate::error::{Error, Result};
use crate::linalg::{integer_rank, IntSpan, RationalMatrix};
use crate::par;

/// Largest `k` for which subset scans run by default.
pub const DEFAULT_SUBSET_CAP: usize = 16;

/// A set of canonical difference equalities on `k` variables.
#[derive(Debug)]
pub struct Configuration {
    k: usize,
    equalities: Vec<DifferenceEquality>,
    matrix: OnceLock<RationalMatrix>,
    span: OnceLock<IntSpan>,
}

impl Clone for Configuration {
    fn clone(&self) -> Self {
        Configuration {
            k: self.k,
            equalities: self.equalities.clone(),
            matrix: OnceLock::new(),
            span: OnceLock::new(),
        }
    }
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.equalities == other.equalities
    }
}

impl Eq for Configuration {}

/// On-disk form: `{"k": int, "equalities": [[i1, i2, i3, i4], ...]}`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationFile {
    pub k: usize,
    pub equalities: Vec<[usize; 4]>,
}

impl Configuration {
    /// Builds a configuration, sorting and deduplicating the equalities.
    pub fn new(k: usize, equalities: Vec<DifferenceEquality>) -> Result<Self> {
        let mut eqs = Vec::with_capacity(equalities.len());
        for e in equalities {
            if e.k() != k {
                let widened = e.with_k(k)?;
                eqs.push(widened);
            } else {
                eqs.push(e);
            }
        }
        eqs.sort_unstable();
        eqs.dedup();
        Ok(Configuration {
            k,
            equalities: eqs,
            matrix: OnceLock::new(),
            span: OnceLock::new(),
        })
    }

    pub fn from_quadruples(k: usize, quads: &[[usize; 4]]) -> Result<Self> {
        let eqs = quads
            .iter()
            .map(|&q| DifferenceEquality::new(k, q))
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, eqs)
    }

    pub fn from_file(f: &ConfigurationFile) -> Result<Self> {
        Self::from_quadruples(f.k, &f.equalities)
    }

    pub fn to_file(&self) -> ConfigurationFile {
        ConfigurationFile {
            k: self.k,
            equalities: self.equalities.iter().map(|e| e.quadruple()).collect(),
        }
    }

    pub fn empty(k: usize) -> Self {
        Configuration {
            k,
            equalities: Vec::new(),
            matrix: OnceLock::new(),
            span: OnceLock::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn equalities(&self) -> &[DifferenceEquality] {
        &self.equalities
    }

    pub fn len(&self) -> usize {
        self.equalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equalities.is_empty()
    }

    /// Integer coefficient rows.
    pub fn int_rows(&self) -> Vec<Vec<i64>> {
        self.equalities.iter().map(|e| e.content()).collect()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        self.matrix
            .get_or_init(|| RationalMatrix::from_int_rows(self.k, &self.int_rows()))
    }

    pub fn span(&self) -> &IntSpan {
        self.span.get_or_init(|| IntSpan::new(self.matrix().rref()))
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    /// Dimension of the solution space in `Q^k`.
    pub fn dim(&self) -> usize {
        self.k - self.rank()
    }

    /// Dimension of the projection of the solution space onto `part`.
    pub fn dim_of(&self, part: &[usize]) -> Result<usize> {
        let mask = self.mask_of(part)?;
        Ok(self.dim_of_mask(mask, &self.int_rows()))
    }

    fn mask_of(&self, part: &[usize]) -> Result<u64> {
        let mut mask = 0u64;
        for &i in part {
            if i == 0 || i > self.k {
                return Err(Error::InvalidIndex { index: i, k: self.k });
            }
            mask |= 1 << (i - 1);
        }
        Ok(mask)
    }

    fn dim_of_mask(&self, mask: u64, rows: &[Vec<i64>]) -> usize {
        let size = mask.count_ones() as usize;
        let outside: Vec<usize> = (0..self.k).filter(|&c| mask & (1 << c) == 0).collect();
        let restricted: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| outside.iter().map(|&c| r[c]).collect())
            .collect();
        let r_out = if outside.is_empty() { 0 } else { integer_rank(&restricted) };
        size - (self.rank() - r_out)
    }

    /// Whether the content of `e` lies in the row space.
    pub fn implies(&self, e: &DifferenceEquality) -> bool {
        if e.k() != self.k {
            return match e.with_k(self.k) {
                Ok(w) => self.span().contains(&w.content()),
                Err(_) => false,
            };
        }
        self.span().contains(&e.content())
    }

    /// Whether an arbitrary integer linear form is implied.
    pub fn implies_form(&self, form: &[i64]) -> bool {
        self.span().contains(form)
    }

    /// Whether both configurations have the same row space.
    pub fn equivalent(&self, other: &Configuration) -> bool {
        if self.k != other.k {
            return false;
        }
        self.rank() == other.rank()
            && self.equalities.iter().all(|e| other.implies(e))
            && other.equalities.iter().all(|e| self.implies(e))
    }

    /// Every canonical equality implied, sorted.
    pub fn implied_equalities(&self, nondegenerate_only: bool) -> Vec<DifferenceEquality> {
        let all = enumerate_equalities(self.k, nondegenerate_only);
        let keep = par::map(&all, |e| self.implies(e));
        all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect()
    }

    /// Implied nondegenerate equalities, enumerated over the support only.
    ///
    /// Every row vanishes off the support, so nothing else can be implied.
    pub fn implied_on_support(&self) -> Vec<DifferenceEquality> {
        let support = self.support();
        let all = enumerate_on(self.k, &support, true);
        let keep = par::map(&all, |e| self.implies(e));
        all.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect()
    }

    /// Variables appearing in some equality.
    pub fn support(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.equalities.iter().flat_map(|e| e.variables()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// First implied `x_a - x_b = 0`, if any.
    pub fn validity_witness(&self) -> Option<(usize, usize)> {
        for a in 1..=self.k {
            for b in a + 1..=self.k {
                let mut v = vec![0i64; self.k];
                v[a - 1] = 1;
                v[b - 1] = -1;
                if self.implies_form(&v) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.validity_witness().is_none()
    }

    /// First implied `x_a - 2x_b + x_c = 0` with distinct `a, b, c`.
    pub fn ap_witness(&self) -> Option<DifferenceEquality> {
        for b in 1..=self.k {
            for a in 1..=self.k {
                for c in a + 1..=self.k {
                    if a == b || c == b {
                        continue;
                    }
                    let e = DifferenceEquality::from_pairs(self.k, [a, c], [b, b])
                        .expect("distinct indices");
                    if self.implies(&e) {
                        return Some(e);
                    }
                }
            }
        }
        None
    }

    pub fn is_ap_free(&self) -> bool {
        self.ap_witness().is_none()
    }

    /// All `c`-heavy parts, sorted by size then lexicographically.
    ///
    /// A nonempty `I` is `c`-heavy when `dim_I < ((c - 1)|I| + 1) / c`.
    pub fn heavy_parts(&self, c: &BigRational, cap: usize) -> Result<Vec<Vec<usize>>> {
        check_c(c)?;
        if self.k > cap || self.k >= 63 {
            return Err(Error::TooManySubsets { k: self.k, cap });
        }
        let (p, qd) = c_as_ints(c)?;
        let rows = self.int_rows();
        let total = 1usize << self.k;
        let heavy = par::map_range(total - 1, |m| {
            let mask = (m + 1) as u64;
            let size = mask.count_ones() as i128;
            let d = self.dim_of_mask(mask, &rows) as i128;
            p * d < (p - qd) * size + qd
        });
        let mut parts: Vec<Vec<usize>> = heavy
            .iter()
            .enumerate()
            .filter(|(_, h)| **h)
            .map(|(m, _)| {
                let mask = (m + 1) as u64;
                (0..self.k).filter(|&i| mask & (1 << i) != 0).map(|i| i + 1).collect()
            })
            .collect();
        parts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(parts)
    }

    /// Whether no part is `c`-heavy.
    pub fn is_light(&self, c: &BigRational, cap: usize) -> Result<bool> {
        Ok(self.heavy_parts(c, cap)?.is_empty())
    }

    /// Classifies the configuration as `c`-good or names the first failure.
    pub fn goodness(&self, c: &BigRational, cap: usize) -> Result<Goodness> {
        if let Some((a, b)) = self.validity_witness() {
            return Ok(Goodness::Invalid { a, b });
        }
        if let Some(e) = self.ap_witness() {
            return Ok(Goodness::ApContaining { witness: e });
        }
        let heavy = self.heavy_parts(c, cap)?;
        if let Some(part) = heavy.into_iter().next() {
            return Ok(Goodness::Heavy { part });
        }
        Ok(Goodness::Good)
    }

    pub fn is_c_good(&self, c: &BigRational, cap: usize) -> Result<bool> {
        Ok(self.goodness(c, cap)? == Goodness::Good)
    }

    /// Configuration on the same `k` with one more equality.
    pub fn with(&self, e: DifferenceEquality) -> Result<Configuration> {
        let mut eqs = self.equalities.clone();
        eqs.push(e);
        Configuration::new(self.k, eqs)
    }
}

/// Outcome of a `c`-goodness check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Goodness {
    Good,
    /// `x_a - x_b = 0` is implied.
    Invalid { a: usize, b: usize },
    /// A three-term progression relation is implied.
    ApContaining { witness: DifferenceEquality },
    /// The smallest heavy part.
    Heavy { part: Vec<usize> },
}

fn check_c(c: &BigRational) -> Result<()> {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    if c <= &one || c > &two {
        return Err(Error::InvalidParameter(format!("c = {c} must lie in (1, 2]")));
    }
    Ok(())
}

fn c_as_ints(c: &BigRational) -> Result<(i128, i128)> {
    match (c.numer().to_i128(), c.denom().to_i128()) {
        (Some(p), Some(q)) if q.is_positive() && p.abs() < (1 << 60) && q < (1 << 60) => Ok((p, q)),
        _ => Err(Error::InvalidParameter(format!("c = {c} has too large a representation"))),
    }
}

/// Whether `members` minimally imply `target`, with the combination coefficients.
///
/// Minimal means the members are linearly independent and every coefficient in
/// the unique expression of the target's content is nonzero.
pub fn minimal_implication_coefficients(
    members: &[DifferenceEquality],
    target: &DifferenceEquality,
) -> Option<Vec<BigRational>> {
    let k = target.k();
    let rows: Vec<Vec<i64>> = members.iter().map(|e| e.content()).collect();
    if rows.iter().any(|r| r.len() != k) {
        return None;
    }
    if integer_rank(&rows) != rows.len() {
        return None;
    }
    let m = RationalMatrix::from_int_rows(k, &rows).transpose();
    let rhs: Vec<BigRational> = target
        .content()
        .iter()
        .map(|&x| BigRational::from_integer(x.into()))
        .collect();
    let eps = m.solve(&rhs)?;
    if eps.iter().any(Zero::is_zero) {
        return None;
    }
    Some(eps)
}

/// Whether the equalities are linearly independent.
pub fn independent(eqs: &[DifferenceEquality]) -> bool {
    let rows: Vec<Vec<i64>> = eqs.iter().map(|e| e.content()).collect();
    integer_rank(&rows) == rows.len()
}

/// Equal-sum configuration on an even number `k >= 4` of variables:
/// `x_1 + x_d = x_2 + x_{d+1} = ... = x_{k-d+1} + x_k` with `d = k/2 + 1`.
pub fn c_sum(k: usize) -> Result<Configuration> {
    if k < 4 || !k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("c_sum needs even k >= 4, got {k}")));
    }
    let d = k / 2 + 1;
    Configuration::new(k, sum_chain(k, d, k - d + 1)?)
}

/// Odd extension for `k >= 7`: the equal-sum chain on `x_1..x_{k-1}` plus
/// `x_1 - x_2 - x_3 + x_k = 0`.
pub fn c_sum_plus(k: usize) -> Result<Configuration> {
    if k < 7 || k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("c_sum_plus needs odd k >= 7, got {k}")));
    }
    let d = k.div_ceil(2);
    let mut eqs = sum_chain(k, d, d - 1)?;
    eqs.push(DifferenceEquality::new(k, [1, 2, 3, k])?);
    Configuration::new(k, eqs)
}

fn sum_chain(k: usize, d: usize, pairs: usize) -> Result<Vec<DifferenceEquality>> {
    (1..pairs)
        .map(|j| DifferenceEquality::new(k, [j, j + 1, j + d, j + d - 1]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;
    use num_traits::Signed;

    fn six_var() -> Configuration {
        Configuration::from_quadruples(6, &[[1, 2, 3, 4], [1, 2, 5, 6]]).unwrap()
    }

    #[test]
    fn six_variable_dimensions() {
        let c = six_var();
        assert_eq!(c.dim(), 4);
        assert_eq!(c.dim_of(&[1, 2, 3, 4]).unwrap(), 3);
        assert_eq!(c.dim_of(&[3, 4, 5, 6]).unwrap(), 3);
        assert_eq!(c.dim_of(&[1, 2, 3, 5]).unwrap(), 4);
        assert_eq!(c.dim_of(&[1, 2, 3, 4, 5, 6]).unwrap(), 4);
    }

    #[test]
    fn six_variable_implication() {
        let c = six_var();
        let e = DifferenceEquality::new(6, [3, 4, 5, 6]).unwrap();
        assert!(c.implies(&e));
        let f = DifferenceEquality::new(6, [1, 3, 5, 6]).unwrap();
        assert!(!c.implies(&f));
    }

    #[test]
    fn dim_of_rejects_bad_index() {
        assert!(matches!(six_var().dim_of(&[0]), Err(Error::InvalidIndex { .. })));
        assert!(matches!(six_var().dim_of(&[7]), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn duplicates_collapse() {
        let c = Configuration::from_quadruples(4, &[[1, 2, 3, 4], [4, 3, 2, 1], [2, 1, 4, 3]]).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn minimal_implication_of_the_dependent_triple() {
        let k = 6;
        let members = vec![
            DifferenceEquality::new(k, [1, 2, 3, 4]).unwrap(),
            DifferenceEquality::new(k, [1, 2, 5, 6]).unwrap(),
        ];
        let target = DifferenceEquality::new(k, [3, 4, 5, 6]).unwrap();
        let eps = minimal_implication_coefficients(&members, &target).unwrap();
        assert_eq!(eps.len(), 2);
        assert!(eps.iter().all(|e| e.abs() == BigRational::one()));
        assert!(minimal_implication_coefficients(&members[..1], &target).is_none());
    }

    #[test]
    fn goodness_of_the_four_illustrations() {
        let two = ratio(2, 1);
        let a = Configuration::from_quadruples(4, &[[1, 2, 3, 4], [1, 2, 4, 3]]).unwrap();
        assert!(!a.is_valid());
        let heavy = a.heavy_parts(&two, 16).unwrap();
        assert!(heavy.contains(&vec![3, 4]));
        assert!(heavy.contains(&vec![1, 2, 3, 4]));
        assert!(matches!(a.goodness(&two, 16).unwrap(), Goodness::Invalid { .. }));

        let b = Configuration::from_quadruples(5, &[[1, 2, 3, 4], [1, 3, 5, 2]]).unwrap();
        assert!(b.is_valid());
        assert!(b.is_light(&two, 16).unwrap());
        let w = b.ap_witness().unwrap();
        assert_eq!(w.positives(), [2, 2]);
        assert_eq!(w.negatives(), [4, 5]);
        assert!(matches!(b.goodness(&two, 16).unwrap(), Goodness::ApContaining { .. }));

        let c = Configuration::from_quadruples(
            12,
            &[[1, 2, 3, 4], [1, 2, 5, 6], [1, 2, 7, 8], [1, 3, 5, 7], [9, 10, 11, 12]],
        )
        .unwrap();
        assert!(c.is_valid());
        assert!(c.is_ap_free());
        let heavy = c.heavy_parts(&two, 16).unwrap();
        assert!(heavy.contains(&(1..=8).collect::<Vec<_>>()));
        assert!(!c.is_c_good(&two, 16).unwrap());

        let d = Configuration::from_quadruples(6, &[[1, 2, 5, 4], [1, 3, 6, 4]]).unwrap();
        assert_eq!(d.goodness(&two, 16).unwrap(), Goodness::Good);
    }

    #[test]
    fn c_outside_range_is_rejected() {
        let c = six_var();
        assert!(c.heavy_parts(&ratio(1, 1), 16).is_err());
        assert!(c.heavy_parts(&ratio(5, 2), 16).is_err());
        assert!(matches!(
            c.heavy_parts(&ratio(2, 1), 3),
            Err(Error::TooManySubsets { k: 6, cap: 3 })
        ));
    }

    #[test]
    fn named_configurations() {
        let s4 = c_sum(4).unwrap();
        assert_eq!(s4.len(), 1);
        assert_eq!(s4.equalities()[0].content(), vec![1, -1, 1, -1]);
        let s6 = c_sum(6).unwrap();
        assert_eq!(s6.dim(), 4);
        let p7 = c_sum_plus(7).unwrap();
        assert_eq!(p7.len(), 3);
        assert_eq!(p7.dim(), 4);
        assert!(c_sum(5).is_err());
        assert!(c_sum_plus(5).is_err());
    }

    #[test]
    fn equivalence_is_row_space_equality() {
        let a = six_var();
        let b = Configuration::from_quadruples(6, &[[1, 2, 3, 4], [3, 4, 5, 6]]).unwrap();
        assert!(a.equivalent(&b));
        let c = Configuration::from_quadruples(6, &[[1, 2, 3, 4]]).unwrap();
        assert!(!a.equivalent(&c));
    }
}
