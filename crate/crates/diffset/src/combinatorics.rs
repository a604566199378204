//! Small counting and enumeration helpers.

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic order.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of distinct positive differences of a sorted slice of distinct values.
pub fn distinct_differences_sorted(xs: &[i128], scratch: &mut Vec<i128>) -> usize {
    scratch.clear();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            scratch.push(xs[j] - xs[i]);
        }
    }
    scratch.sort_unstable();
    scratch.dedup();
    scratch.len()
}
