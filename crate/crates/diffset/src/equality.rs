//! Difference equalities `x_a + x_b = x_c + x_d` in canonical form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A difference equality `x_{i1} - x_{i2} - x_{i3} + x_{i4} = 0` on `k` variables.
///
/// Stored as the sorted positive pair `{i1, i4}` and sorted negative pair
/// `{i2, i3}`, oriented so the positive pair is lexicographically smaller.
/// Indices are 1-based. Any rearrangement or negation of the same quadruple
/// canonicalizes to the same value, and the derived ordering is the
/// lexicographic order on `(positives, negatives)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DifferenceEquality {
    pos: [usize; 2],
    neg: [usize; 2],
    k: usize,
}

impl DifferenceEquality {
    /// Canonicalizes the quadruple `(i1, i2, i3, i4)`.
    pub fn new(k: usize, quad: [usize; 4]) -> Result<Self> {
        for &i in &quad {
            if i == 0 || i > k {
                return Err(Error::InvalidIndex { index: i, k });
            }
        }
        let mut pos = [quad[0], quad[3]];
        let mut neg = [quad[1], quad[2]];
        pos.sort_unstable();
        neg.sort_unstable();
        if pos == neg {
            return Err(Error::IdentityEquality(quad));
        }
        if neg < pos {
            std::mem::swap(&mut pos, &mut neg);
        }
        Ok(DifferenceEquality { pos, neg, k })
    }

    /// Builds the equality with the given positive and negative pairs.
    pub fn from_pairs(k: usize, pos: [usize; 2], neg: [usize; 2]) -> Result<Self> {
        Self::new(k, [pos[0], neg[0], neg[1], pos[1]])
    }

    /// Recovers a nondegenerate equality from its coefficient vector.
    ///
    /// Returns `None` unless the positive and negative coefficients each sum
    /// to exactly 2 (up to a global sign), which is the only case where the
    /// multiset pair is determined by the content.
    pub fn from_content(content: &[i64]) -> Option<Self> {
        let k = content.len();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (idx, &c) in content.iter().enumerate() {
            let reps = c.unsigned_abs() as usize;
            let target = if c > 0 { &mut pos } else { &mut neg };
            for _ in 0..reps {
                target.push(idx + 1);
            }
        }
        if pos.len() != 2 || neg.len() != 2 {
            return None;
        }
        Self::from_pairs(k, [pos[0], pos[1]], [neg[0], neg[1]]).ok()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn positives(&self) -> [usize; 2] {
        self.pos
    }

    pub fn negatives(&self) -> [usize; 2] {
        self.neg
    }

    /// The quadruple `(i1, i2, i3, i4)` of the canonical form.
    pub fn quadruple(&self) -> [usize; 4] {
        [self.pos[0], self.neg[0], self.neg[1], self.pos[1]]
    }

    /// Same equality viewed on `k` variables, `k` at least the largest index.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(k, self.quadruple())
    }

    /// Coefficient vector of length `k`.
    pub fn content(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.k];
        v[self.pos[0] - 1] += 1;
        v[self.pos[1] - 1] += 1;
        v[self.neg[0] - 1] -= 1;
        v[self.neg[1] - 1] -= 1;
        v
    }

    /// Whether the two multisets intersect, so the content is `x_a - x_b`.
    pub fn is_degenerate(&self) -> bool {
        self.pos.iter().any(|p| self.neg.contains(p))
    }

    /// Distinct variable indices with nonzero coefficient, sorted.
    pub fn variables(&self) -> Vec<usize> {
        let c = self.content();
        (0..self.k).filter(|&i| c[i] != 0).map(|i| i + 1).collect()
    }

    pub fn involves(&self, i: usize) -> bool {
        i >= 1 && i <= self.k && self.content()[i - 1] != 0
    }

    /// Sign of `x_i` in the content: `1`, `-1` or `0`.
    pub fn sign_of(&self, i: usize) -> i64 {
        if i == 0 || i > self.k {
            return 0;
        }
        self.content()[i - 1].signum()
    }

    /// Sorted pairs `(i, j)` of distinct variables with opposite signs.
    pub fn opposite_pairs(&self) -> Vec<(usize, usize)> {
        let c = self.content();
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                if c[i] * c[j] < 0 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Sorted pairs `(i, j)` of distinct variables with the same sign.
    pub fn same_sign_pairs(&self) -> Vec<(usize, usize)> {
        let c = self.content();
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                if c[i] * c[j] > 0 {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Value of the content at a tuple.
    pub fn evaluate<T>(&self, t: &[T]) -> T
    where
        T: Clone + std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
    {
        t[self.pos[0] - 1].clone() + t[self.pos[1] - 1].clone()
            - t[self.neg[0] - 1].clone()
            - t[self.neg[1] - 1].clone()
    }
}

impl fmt::Display for DifferenceEquality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", format_linear_form(&self.content()))
    }
}

/// Renders a coefficient vector as `x1 - 2x2 + x3`.
pub fn format_linear_form(content: &[i64]) -> String {
    let mut s = String::new();
    for (i, &c) in content.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mag = c.unsigned_abs();
        let coef = if mag == 1 { String::new() } else { mag.to_string() };
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        s.push_str(&format!("{coef}x{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// All 2-multisets `{a <= b}` of `1..=k` in lexicographic order.
pub fn pair_multisets(k: usize) -> Vec<[usize; 2]> {
    let mut out = Vec::with_capacity(k * (k + 1) / 2);
    for a in 1..=k {
        for b in a..=k {
            out.push([a, b]);
        }
    }
    out
}

/// Every canonical difference equality on `k` variables, sorted.
pub fn enumerate_equalities(k: usize, nondegenerate_only: bool) -> Vec<DifferenceEquality> {
    let ms = pair_multisets(k);
    let mut out = Vec::new();
    for (x, p) in ms.iter().enumerate() {
        for n in &ms[x + 1..] {
            let eq = DifferenceEquality { pos: *p, neg: *n, k };
            if nondegenerate_only && eq.is_degenerate() {
                continue;
            }
            out.push(eq);
        }
    }
    out
}

/// Canonical equalities on the given variable subset, sorted.
pub fn enumerate_on(k: usize, vars: &[usize], nondegenerate_only: bool) -> Vec<DifferenceEquality> {
    let mut vs = vars.to_vec();
    vs.sort_unstable();
    vs.dedup();
    let mut ms = Vec::new();
    for (x, &a) in vs.iter().enumerate() {
        for &b in &vs[x..] {
            ms.push([a, b]);
        }
    }
    let mut out = Vec::new();
    for (x, p) in ms.iter().enumerate() {
        for n in &ms[x + 1..] {
            let eq = DifferenceEquality { pos: *p, neg: *n, k };
            if nondegenerate_only && eq.is_degenerate() {
                continue;
            }
            out.push(eq);
        }
    }
    out.sort_unstable();
    out
}
