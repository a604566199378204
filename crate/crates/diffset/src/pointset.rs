//! Finite sets of rationals and their text format.
//!
//! The text format has one value per line, written as an integer or `p/q`.
//! Blank lines and anything after `#` are ignored. Duplicates are dropped and
//! reported as warnings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A finite set of rationals, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointSet {
    points: Vec<BigRational>,
}

impl PointSet {
    pub fn new(mut points: Vec<BigRational>) -> Self {
        points.sort();
        points.dedup();
        PointSet { points }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(xs: I) -> Self {
        Self::new(xs.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
    }

    pub fn points(&self) -> &[BigRational] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.points.binary_search(x).is_ok()
    }

    /// The points as `i64` values when all are integers in range.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.points
            .iter()
            .map(|p| if p.is_integer() { p.to_integer().to_i64() } else { None })
            .collect()
    }

    /// The points scaled by the least common denominator, when every scaled
    /// value fits in `i128`. Returns the values and the denominator.
    pub fn scaled_integers(&self) -> Option<(Vec<i128>, BigInt)> {
        let l = self
            .points
            .iter()
            .fold(BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let scale = BigRational::from_integer(l.clone());
        let xs = self
            .points
            .iter()
            .map(|x| (x * &scale).to_integer().to_i128())
            .collect::<Option<Vec<i128>>>()?;
        Some((xs, l))
    }

    /// Parses the text format, returning the set and one warning per duplicate.
    pub fn parse(text: &str) -> Result<(PointSet, Vec<String>)> {
        let mut pts = Vec::new();
        let mut warnings = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let v = parse_rational(line).map_err(|message| Error::Parse { line: n + 1, message })?;
            if !seen.insert(v.clone()) {
                warnings.push(format!("line {}: duplicate value {line} ignored", n + 1));
                continue;
            }
            pts.push(v);
        }
        Ok((PointSet::new(pts), warnings))
    }

    /// Serializes in the text format, one value per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for p in &self.points {
            s.push_str(&format_rational(p));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(format_rational).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Parses `n` or `p/q`.
pub fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator {p:?}: {e}"))?;
        let q = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator {q:?}: {e}"))?;
        if q.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(p, q))
    } else {
        BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|e| format!("bad value {s:?}: {e}"))
    }
}

/// Renders a rational as `n` or `p/q` in lowest terms.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serializes a rational as its `n` or `p/q` string.
pub fn serialize_rational<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

/// Serializes a list of rationals as strings.
pub fn serialize_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&format_rational(x))?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments_fractions_and_duplicates() {
        let text = "# header\n3\n1/2   # half\n\n-4\n3\n2/4\n";
        let (set, warnings) = PointSet::parse(text).unwrap();
        assert_eq!(set.to_text(), "-4\n1/2\n3\n");
        assert_eq!(warnings.len(), 2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = PointSet::parse("1\nx\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(PointSet::parse("1/0").is_err());
    }

    #[test]
    fn integer_view() {
        let s = PointSet::from_integers([5, 1, 3]);
        assert_eq!(s.as_integers(), Some(vec![1, 3, 5]));
        let (h, _) = PointSet::parse("1/2\n").unwrap();
        assert_eq!(h.as_integers(), None);
    }
}
