//! Subsets of `{1..n}` without 3-term arithmetic progressions.

use serde::Serialize;

use crate::par;
use crate::pointset::PointSet;

/// Largest `n` handled by exact branch-and-bound.
pub const EXACT_LIMIT: u64 = 40;

/// Largest digit bound tried by the sphere-layer scan.
const MAX_DIGIT_BOUND: u64 = 256;

/// How a base set was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum BaseMethod {
    /// Maximum-size set by exhaustive search.
    Exact,
    /// Numbers whose shifted base-3 digits are all 0 or 1.
    Greedy,
    /// Numbers with digits below `digit_bound` in base `2 * digit_bound - 1`
    /// and digit squares summing to `radius`.
    SphereLayer { digit_bound: u64, radius: u64 },
}

/// A 3-AP-free subset of `{1..n}` with its provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApFreeBase {
    pub n: u64,
    pub elements: Vec<u64>,
    pub method: BaseMethod,
}

/// A 3-AP-free subset of `{1..n}`; empty for `n = 0`.
pub fn behrend_set(n: u64) -> PointSet {
    PointSet::from_integers(three_ap_free_base(n).elements.into_iter().map(|x| x as i64))
}

/// The largest of the exact, greedy and sphere-layer candidates.
///
/// Exact search is used up to [`EXACT_LIMIT`]. Ties prefer exact, then
/// greedy, then sphere layers.
pub fn three_ap_free_base(n: u64) -> ApFreeBase {
    if n <= EXACT_LIMIT {
        return ApFreeBase {
            n,
            elements: exact_max(n),
            method: BaseMethod::Exact,
        };
    }
    let greedy = greedy_base3(n);
    let layer = best_sphere_layer(n);
    match layer {
        Some((elements, digit_bound, radius)) if elements.len() > greedy.len() => ApFreeBase {
            n,
            elements,
            method: BaseMethod::SphereLayer { digit_bound, radius },
        },
        _ => ApFreeBase {
            n,
            elements: greedy,
            method: BaseMethod::Greedy,
        },
    }
}

/// Whether a sorted slice of distinct integers has no `a + c = 2b`.
pub fn is_three_ap_free(xs: &[i128]) -> bool {
    let n = xs.len();
    for i in 0..n {
        for j in i + 2..n {
            let s = xs[i] + xs[j];
            if s % 2 == 0 && xs[i + 1..j].binary_search(&(s / 2)).is_ok() {
                return false;
            }
        }
    }
    true
}

fn greedy_base3(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    // Enumerate numbers with base-3 digits in {0, 1} by reading binary counters.
    let mut b: u64 = 0;
    loop {
        let mut x = 0u64;
        let mut pow = 1u64;
        let mut bits = b;
        let mut overflow = false;
        while bits > 0 {
            if bits & 1 == 1 {
                x = match x.checked_add(pow) {
                    Some(v) => v,
                    None => {
                        overflow = true;
                        break;
                    }
                };
            }
            bits >>= 1;
            if bits > 0 {
                pow = match pow.checked_mul(3) {
                    Some(v) => v,
                    None => {
                        overflow = true;
                        break;
                    }
                };
            }
        }
        if overflow || x >= n {
            break;
        }
        out.push(x + 1);
        b += 1;
    }
    out
}

fn best_sphere_layer(n: u64) -> Option<(Vec<u64>, u64, u64)> {
    if n < 2 {
        return None;
    }
    let bounds: Vec<u64> = (2..=MAX_DIGIT_BOUND.min(n)).collect();
    let best = par::map(&bounds, |&d| {
        let base = 2 * d - 1;
        let mut counts: Vec<usize> = Vec::new();
        visit_layer_numbers(n - 1, base, d, &mut |_, r| {
            if counts.len() <= r as usize {
                counts.resize(r as usize + 1, 0);
            }
            counts[r as usize] += 1;
        });
        let (radius, size) = counts
            .iter()
            .enumerate()
            .fold((0usize, 0usize), |acc, (r, &c)| if c > acc.1 { (r, c) } else { acc });
        (size, d, radius as u64)
    });
    let (size, d, radius) = best
        .into_iter()
        .fold((0usize, 0u64, 0u64), |acc, x| if x.0 > acc.0 { x } else { acc });
    if size == 0 {
        return None;
    }
    let mut elements = Vec::with_capacity(size);
    visit_layer_numbers(n - 1, 2 * d - 1, d, &mut |x, r| {
        if r == radius {
            elements.push(x + 1);
        }
    });
    elements.sort_unstable();
    Some((elements, d, radius))
}

/// Calls `f(x, sum of squared digits)` for every `x <= max` whose base-`base`
/// digits are all below `d`.
fn visit_layer_numbers(max: u64, base: u64, d: u64, f: &mut dyn FnMut(u64, u64)) {
    let mut top = 1u64;
    while let Some(next) = top.checked_mul(base) {
        if next > max {
            break;
        }
        top = next;
    }
    fn rec(value: u64, pow: u64, base: u64, d: u64, max: u64, r: u64, f: &mut dyn FnMut(u64, u64)) {
        for digit in 0..d {
            let v = match digit.checked_mul(pow).and_then(|x| x.checked_add(value)) {
                Some(v) if v <= max => v,
                _ => break,
            };
            let r2 = r + digit * digit;
            if pow == 1 {
                f(v, r2);
            } else {
                rec(v, pow / base, base, d, max, r2, f);
            }
        }
    }
    rec(0, top, base, d, max, 0, f);
}

/// Maximum 3-AP-free subset of `{1..n}` by branch-and-bound, `n <= 63`.
///
/// Elements are decided in increasing order, inclusion first, so the result
/// is the lexicographically first maximum set in that search order. The bound
/// uses the optimum for shorter intervals, computed along the way.
fn exact_max(n: u64) -> Vec<u64> {
    assert!(n <= 63, "exact search supports n <= 63");
    let n = n as usize;
    let mut best_len = vec![0usize; n + 1];
    let mut result = Vec::new();
    for len in 1..=n {
        let mut best: Vec<usize> = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        search(0, len, 0u64, &mut cur, &mut best, &best_len);
        best_len[len] = best.len();
        if len == n {
            result = best;
        }
    }
    result.into_iter().map(|x| x as u64 + 1).collect()
}

fn search(pos: usize, len: usize, forbidden: u64, cur: &mut Vec<usize>, best: &mut Vec<usize>, r3: &[usize]) {
    if cur.len() > best.len() {
        *best = cur.clone();
    }
    if pos == len {
        return;
    }
    let remaining = if pos == 0 { len } else { r3[len - pos] };
    if cur.len() + remaining <= best.len() {
        return;
    }
    if forbidden & (1u64 << pos) == 0 {
        let mut f = forbidden;
        for &a in cur.iter() {
            let c = 2 * pos - a;
            if c < len {
                f |= 1u64 << c;
            }
        }
        cur.push(pos);
        search(pos + 1, len, f, cur, best, r3);
        cur.pop();
    }
    search(pos + 1, len, forbidden, cur, best, r3);
}
