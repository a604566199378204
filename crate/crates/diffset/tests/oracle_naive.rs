//! The oracle against plain enumeration of every n-subset of {0..M}, with
//! no translation or reflection normalization and no pruning.

use std::collections::BTreeSet;

use diffset::oracle::{brute_force_g, OracleValue, DEFAULT_ORACLE_BUDGET};

fn subsets(universe: &[u64], size: usize) -> Vec<Vec<u64>> {
    fn rec(universe: &[u64], size: usize, start: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..universe.len() {
            cur.push(universe[i]);
            rec(universe, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(universe, size, 0, &mut Vec::new(), &mut out);
    out
}

fn positive_differences(xs: &[u64]) -> usize {
    let mut d = BTreeSet::new();
    for a in xs {
        for b in xs {
            if a > b {
                d.insert(a - b);
            }
        }
    }
    d.len()
}

/// Minimum distinct differences over n-subsets of {0..m} whose k-subsets
/// all have at least `ell` distinct differences.
fn naive_g(n: usize, k: usize, ell: usize, m: u64) -> Option<(usize, Vec<u64>)> {
    let grid: Vec<u64> = (0..=m).collect();
    let mut best: Option<(usize, Vec<u64>)> = None;
    for set in subsets(&grid, n) {
        if !subsets(&set, k).iter().all(|s| positive_differences(s) >= ell) {
            continue;
        }
        let d = positive_differences(&set);
        if best.as_ref().is_none_or(|(b, _)| d < *b) {
            best = Some((d, set));
        }
    }
    best
}

#[test]
fn oracle_matches_naive_enumeration() {
    let mut compared = 0;
    for n in 2..=5usize {
        for k in 2..=n {
            for ell in 1..=k * (k - 1) / 2 {
                for m in [(n - 1) as u64, 7, 10] {
                    if m + 1 < n as u64 {
                        continue;
                    }
                    let r = brute_force_g(n as u64, k as u64, ell as i64, m, DEFAULT_ORACLE_BUDGET).unwrap();
                    match naive_g(n, k, ell, m) {
                        Some((d, _)) => {
                            assert_eq!(r.value, OracleValue::Finite(d as u64), "n={n} k={k} ell={ell} M={m}");
                            let w = r.witness.expect("finite values carry a witness");
                            assert_eq!(w.len(), n);
                            assert!(w.iter().all(|&x| x <= m));
                            assert_eq!(positive_differences(&w), d);
                            assert!(subsets(&w, k).iter().all(|s| positive_differences(s) >= ell));
                        }
                        None => assert_eq!(r.value, OracleValue::GridInfeasible, "n={n} k={k} ell={ell} M={m}"),
                    }
                    compared += 1;
                }
            }
        }
    }
    assert!(compared > 50);
}

#[test]
fn six_points_on_a_small_grid() {
    for (k, ell) in [(3usize, 2usize), (3, 3), (4, 5), (4, 6), (5, 8)] {
        let r = brute_force_g(6, k as u64, ell as i64, 12, DEFAULT_ORACLE_BUDGET).unwrap();
        let naive = naive_g(6, k, ell, 12).map(|(d, _)| OracleValue::Finite(d as u64)).unwrap_or(OracleValue::GridInfeasible);
        assert_eq!(r.value, naive, "k={k} ell={ell}");
    }
}
