//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Every numeric comparison is exact (integers or rationals); the only
//! tolerances are the wall-clock limits below.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use diffset::configuration::{c_sum, c_sum_plus, DEFAULT_SUBSET_CAP};
use diffset::constructions::{
    additive_energy, check_local_set, cube_hypothesis_holds, cube_point_set, find_equal_sum_cubes, random_local_set,
    CubeMode, DEFAULT_HEAVY_BUDGET,
};
use diffset::implication::{difference_aligned_pairs, find_n_implications, sum_aligned_pairs, AnchoredCollection};
use diffset::oracle::{brute_force_g, check_monotonicity, OracleValue, DEFAULT_ORACLE_BUDGET};
use diffset::solution::generic_diff_count;
use diffset::thresholds::{
    figure_curve_data, ladder_spacing, lower_bound_ell, odd_upper_bound, quadratic_threshold, threshold_report,
    upper_bound_ell,
};
use diffset::verify::{run_lemma_set, VerifyOptions};
use diffset::{Configuration, Goodness, PointSet};

const LIMIT_WORKED_EXAMPLES: Duration = Duration::from_secs(1);
const LIMIT_EQUALITY_CASES: Duration = Duration::from_secs(5);
const LIMIT_CERTIFY_SUITE: Duration = Duration::from_secs(60);
const LIMIT_IMPLICATION_SUITE: Duration = Duration::from_secs(120);
const LIMIT_REPEATED_SUMS: Duration = Duration::from_secs(10);
const LIMIT_CUBES: Duration = Duration::from_secs(30);
const LIMIT_LOCAL_SETS: Duration = Duration::from_secs(120);
const LIMIT_ORACLE: Duration = Duration::from_secs(300);
const LIMIT_THRESHOLDS: Duration = Duration::from_secs(1);
/// Determinism has no stated limit; this only guards against hangs.
const LIMIT_DETERMINISM: Duration = Duration::from_secs(300);

const SUITE_SAMPLES: usize = 500;
const SUITE_K: usize = 10;
const SUITE_MAX_SIZE: usize = 4;
const SUITE_SEED: u64 = 1;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn worked_examples() -> Outcome {
    let e = |x: diffset::Error| x.to_string();
    let c = Configuration::from_quadruples(6, &[[1, 2, 3, 4], [1, 2, 5, 6]]).map_err(e)?;
    let dims = [
        c.dim(),
        c.dim_of(&[1, 2, 3, 4]).map_err(e)?,
        c.dim_of(&[3, 4, 5, 6]).map_err(e)?,
        c.dim_of(&[1, 2, 3, 5]).map_err(e)?,
    ];
    check(dims == [4, 3, 3, 4], format!("dimensions {dims:?}, expected [4, 3, 3, 4]"))?;

    let two = q(2);
    let a = Configuration::from_quadruples(4, &[[1, 2, 3, 4], [1, 2, 4, 3]]).map_err(e)?;
    check(matches!(a.goodness(&two, DEFAULT_SUBSET_CAP).map_err(e)?, Goodness::Invalid { .. }), "(a) not invalid")?;
    let heavy_a = a.heavy_parts(&two, DEFAULT_SUBSET_CAP).map_err(e)?;
    check(heavy_a.contains(&vec![3, 4]) && heavy_a.contains(&vec![1, 2, 3, 4]), "(a) heavy parts")?;

    let b = Configuration::from_quadruples(5, &[[1, 2, 3, 4], [1, 3, 5, 2]]).map_err(e)?;
    match b.goodness(&two, DEFAULT_SUBSET_CAP).map_err(e)? {
        Goodness::ApContaining { witness } => {
            check(witness.content() == vec![0, -2, 0, 1, 1] || witness.content() == vec![0, 2, 0, -1, -1], "(b) witness")?
        }
        g => return Err(format!("(b) classified as {g:?}")),
    }

    let c12 = Configuration::from_quadruples(
        12,
        &[[1, 2, 3, 4], [1, 2, 5, 6], [1, 2, 7, 8], [1, 3, 5, 7], [9, 10, 11, 12]],
    )
    .map_err(e)?;
    let heavy_c = c12.heavy_parts(&two, DEFAULT_SUBSET_CAP).map_err(e)?;
    check(c12.is_valid() && c12.is_ap_free(), "(c) should be valid and AP-free")?;
    check(heavy_c.contains(&(1..=8).collect()), "(c) missing heavy part {1..8}")?;
    check(matches!(c12.goodness(&two, DEFAULT_SUBSET_CAP).map_err(e)?, Goodness::Heavy { .. }), "(c) not heavy")?;

    let d = Configuration::from_quadruples(6, &[[1, 2, 5, 4], [1, 3, 6, 4]]).map_err(e)?;
    check(d.goodness(&two, DEFAULT_SUBSET_CAP).map_err(e)? == Goodness::Good, "(d) not 2-good")?;
    check(d.heavy_parts(&two, DEFAULT_SUBSET_CAP).map_err(e)?.is_empty(), "(d) has heavy parts")?;
    Ok("dims (4; 3; 3; 4); invalid / AP-containing / 2-heavy {1..8} / 2-good".into())
}

fn equality_cases() -> Outcome {
    let seeds = [1u64, 2];
    let mut seen = Vec::new();
    for k in [4usize, 6, 8] {
        let c = c_sum(k).map_err(|e| e.to_string())?;
        let d = c.dim();
        let expected = k * (k - 1) / 2 - (k - d) * (k - d + 1);
        for seed in seeds {
            let got = generic_diff_count(&c, seed).map_err(|e| e.to_string())?;
            check(got == expected, format!("sum configuration k = {k}, seed {seed}: {got} != {expected}"))?;
        }
        seen.push(format!("k={k}:{expected}"));
    }
    for k in [7usize, 9] {
        let c = c_sum_plus(k).map_err(|e| e.to_string())?;
        let expected = (k + 1) * (k + 1) / 4 - 4;
        for seed in seeds {
            let got = generic_diff_count(&c, seed).map_err(|e| e.to_string())?;
            check(got == expected, format!("extended sum configuration k = {k}, seed {seed}: {got} != {expected}"))?;
        }
        seen.push(format!("k={k}+:{expected}"));
    }
    Ok(format!("{} with seeds {seeds:?}", seen.join(" ")))
}

fn suite_options() -> VerifyOptions {
    VerifyOptions {
        k: SUITE_K,
        samples: SUITE_SAMPLES,
        seed: SUITE_SEED,
        max_size: SUITE_MAX_SIZE,
    }
}

fn lemma_suite(names: &[&str], require_coverage: &[&str]) -> Result<(String, diffset::verify::VerifyReport), String> {
    let r = run_lemma_set(names, &suite_options()).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for l in &r.lemmas {
        check(l.holds(), format!("{}: {} violations, first {:?}", l.lemma, l.checked - l.passed, l.counterexamples.first()))?;
        parts.push(format!("{} {}/{}", l.lemma, l.passed, l.checked));
    }
    for name in require_coverage {
        let l = r.lemma(name).expect("requested");
        check(l.checked > 0, format!("{name} never applied"))?;
    }
    Ok((format!("{} samples + {} injected: {}", r.sampled, r.injected, parts.join(", ")), r))
}

fn certify_suite() -> Outcome {
    let (msg, _) = lemma_suite(&["2s-certify", "2s-certify-equality"], &["2s-certify", "2s-certify-equality"])?;
    Ok(msg)
}

fn implication_suite() -> Outcome {
    let names = ["3-impls-path", "3-impls-disjoint", "2-impls", "4-impl"];
    let (msg, _) = lemma_suite(&names, &names)?;
    let e = |x: diffset::Error| x.to_string();
    let ex1 = AnchoredCollection::from_quadruples(9, 1, &[[1, 2, 3, 4], [1, 5, 6, 2], [1, 5, 7, 4], [1, 8, 9, 7]]).map_err(e)?;
    let ex2 = AnchoredCollection::from_quadruples(9, 1, &[[1, 2, 3, 4], [1, 5, 6, 2], [1, 7, 8, 4], [1, 5, 9, 7]]).map_err(e)?;
    let target = vec![0i64, 0, -1, 0, 0, -1, 0, 1, 1];
    for (name, ex) in [("first", &ex1), ("second", &ex2)] {
        let found = find_n_implications(ex, 4).map_err(e)?;
        check(found.len() == 1, format!("{name} example: {} 4-implications", found.len()))?;
        let eqs = ex.equalities();
        check(
            difference_aligned_pairs(eqs).len() == 1 && sum_aligned_pairs(eqs).len() == 1,
            format!("{name} example: alignment pattern"),
        )?;
        if name == "first" {
            let c = found[0].produced.content();
            let neg: Vec<i64> = c.iter().map(|x| -x).collect();
            check(c == target || neg == target, format!("produced {} instead of -x3-x6+x8+x9", found[0].produced))?;
        }
    }
    Ok(format!("{msg}; injected example produces -x3 - x6 + x8 + x9 = 0"))
}

fn repeated_sums() -> Outcome {
    let options = VerifyOptions {
        samples: 1000,
        ..suite_options()
    };
    let r = run_lemma_set(&["repeated-sums"], &options).map_err(|e| e.to_string())?;
    let l = &r.lemmas[0];
    check(l.holds(), format!("violations: {:?}", l.counterexamples))?;
    check(l.checked == 1001, format!("{} sets checked, expected 1000 random + 1 hand", l.checked))?;
    let energy = additive_energy(&PointSet::from_integers([0, 1, 2, 3])).map_err(|e| e.to_string())?;
    check(energy == 44, format!("energy of {{0,1,2,3}} = {energy}"))?;
    Ok(format!("{} random sets, energy({{0,1,2,3}}) = 44", l.checked - 1))
}

fn cubes() -> Outcome {
    let mut applicable = 0;
    let mut opportunistic = 0;
    for n in 20..=60i64 {
        let a = PointSet::from_integers(1..=n);
        for s in 1..=2usize {
            for t in 1..=3usize {
                let holds = cube_hypothesis_holds(n as u64, (n - 1) as u64, s as u64, t as u32).map_err(|e| e.to_string())?;
                if holds {
                    applicable += 1;
                    let c = find_equal_sum_cubes(&a, s, t, CubeMode::Guaranteed)
                        .map_err(|e| format!("n = {n}, s = {s}, t = {t}: {e}"))?;
                    cube_point_set(&c).map_err(|e| format!("n = {n}, s = {s}, t = {t}: {e}"))?;
                }
                // Outside the hypothesis any cube found must still obey the bound.
                if let Ok(c) = find_equal_sum_cubes(&a, s, t, CubeMode::Opportunistic) {
                    cube_point_set(&c).map_err(|e| format!("n = {n}, s = {s}, t = {t}: {e}"))?;
                    opportunistic += 1;
                }
            }
        }
    }
    // The hypothesis first holds for intervals at these sizes.
    let guaranteed = [(1usize, 1usize, 64i64), (2, 1, 256), (1, 2, 4096)];
    for (s, t, n) in guaranteed {
        let holds = cube_hypothesis_holds(n as u64, (n - 1) as u64, s as u64, t as u32).map_err(|e| e.to_string())?;
        check(holds, format!("hypothesis fails at n = {n}, s = {s}, t = {t}"))?;
        let a = PointSet::from_integers(1..=n);
        let c = find_equal_sum_cubes(&a, s, t, CubeMode::Guaranteed).map_err(|e| format!("n = {n}: {e}"))?;
        cube_point_set(&c).map_err(|e| format!("n = {n}: {e}"))?;
    }
    Ok(format!(
        "hypothesis holds on {applicable} of 246 (n, s, t) with n <= 60; {opportunistic} opportunistic cubes obey the bound; \
         guaranteed at (s,t,n) = (1,1,64), (2,1,256), (1,2,4096)"
    ))
}

fn local_sets() -> Outcome {
    let sizes = 40usize..=80;
    let seeds = [1u64, 2, 3];
    for n in sizes.clone() {
        for seed in seeds {
            let (set, _) = random_local_set(n, 4, &q(2), &q(1), seed, DEFAULT_HEAVY_BUDGET)
                .map_err(|e| format!("n = {n}, seed {seed}: {e}"))?;
            let c = check_local_set(&set, n, 4, &q(2), &q(1), DEFAULT_HEAVY_BUDGET)
                .map_err(|e| format!("n = {n}, seed {seed}: {e}"))?;
            check(c.passed(), format!("n = {n}, seed {seed}: {c:?}"))?;
        }
    }
    Ok(format!("every n in {sizes:?} x seeds {seeds:?}, k = 4, c = 2, a = 1, exhaustive checks"))
}

fn oracle() -> Outcome {
    let e = |x: diffset::Error| x.to_string();
    for n in 3..=8u64 {
        let m = 2 * (n - 1);
        let r = brute_force_g(n, 3, 2, m, DEFAULT_ORACLE_BUDGET).map_err(e)?;
        check(r.value == OracleValue::Finite(n - 1), format!("g_{m}({n},3,2) = {}", r.value))?;
        let w = r.witness.ok_or("missing witness")?;
        let step = w[1] - w[0];
        check(w.windows(2).all(|p| p[1] - p[0] == step), format!("witness {w:?} is not an AP"))?;
    }
    for m in [12u64, 16] {
        let r = brute_force_g(4, 3, 3, m, DEFAULT_ORACLE_BUDGET).map_err(e)?;
        check(r.value == OracleValue::Finite(4), format!("g_{m}(4,3,3) = {}", r.value))?;
    }
    for n in 4..=7u64 {
        let r = brute_force_g(n, 4, 7, 20, DEFAULT_ORACLE_BUDGET).map_err(e)?;
        check(r.value == OracleValue::Infinite, format!("g({n},4,7) = {}", r.value))?;
    }
    let mut triples = 0;
    for n in 2..=7u64 {
        for k in 2..=n {
            for ell in 1..=(k * (k - 1) / 2) as i64 {
                for m in [n - 1, 12, 20] {
                    if m < n - 1 {
                        continue;
                    }
                    let c = check_monotonicity(n, k, ell, m, DEFAULT_ORACLE_BUDGET).map_err(e)?;
                    check(c.holds(), format!("monotonicity fails at n = {n}, k = {k}, ell = {ell}, M = {m}: {c:?}"))?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("AP pins n = 3..8, g(4,3,3) = 4 at M = 12, 16, g(.,4,7) = inf, monotonicity on {triples} (n,k,ell,M)"))
}

fn thresholds() -> Outcome {
    let e = |x: diffset::Error| x.to_string();
    check(quadratic_threshold(8).map_err(e)? == (17, 17), "quadratic threshold at 8")?;
    check(quadratic_threshold(7).map_err(e)? == (13, 16), "quadratic threshold at 7")?;
    let lb = lower_bound_ell(8, 2, true).map_err(e)?;
    check(lb.ell == 14 && lb.exponent == ratio(4, 3), format!("lower bound (8, 2) = ({}, {})", lb.ell, lb.exponent))?;
    let generic = upper_bound_ell(7, &q(2)).map_err(e)?;
    let odd = odd_upper_bound(7).map_err(e)?;
    check(odd == 12 && odd > generic, format!("odd upper bound {odd}, generic {generic}"))?;
    let report = threshold_report(7).map_err(e)?;
    check(
        report.rows.iter().any(|r| r.source == "odd-upper" && r.ell == 12 && r.exponent == q(2)),
        "report at 7 lacks the odd upper row",
    )?;
    let rows = figure_curve_data(8).map_err(e)?;
    for (coeff, exp) in [(ratio(1, 4), q(2)), (ratio(3, 16), ratio(4, 3))] {
        check(
            rows.iter().any(|r| r.coeff == coeff && r.exponent == exp),
            format!("no figure row ({coeff}, {exp})"),
        )?;
    }
    let k = BigInt::from(3) * num_traits_pow4(20);
    let spacing = ladder_spacing(2, &k).map_err(e)?;
    check(spacing.holds, format!("spacing fails: {} vs {}", spacing.ell_plus, spacing.ell_minus))?;
    Ok(format!(
        "(17,17), (13,16), (14, 4/3), odd bound 12 supersedes {generic}, rows (1/4,2) (3/16,4/3), ladder spacing at t = 2, k = 3*4^20"
    ))
}

fn num_traits_pow4(e: u32) -> BigInt {
    BigInt::from(4).pow(e)
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("diffset-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, r#"{"k": 9, "equalities": [[1, 2, 3, 4], [1, 5, 6, 2], [1, 5, 7, 4], [1, 8, 9, 7]]}"#)
        .map_err(|e| e.to_string())?;
    let cfg = cfg.to_str().unwrap().to_string();
    let invocations: Vec<(Vec<&str>, bool)> = vec![
        (vec!["analyze-config", "--in", &cfg, "--seed", "3"], false),
        (vec!["enumerate", "--in", &cfg, "--order", "4"], false),
        (vec!["enumerate", "--k", "6", "--format", "csv"], false),
        (vec!["construct", "behrend", "--n", "3000"], false),
        (vec!["construct", "local-set", "--n", "40", "--k", "4", "--c", "2", "--a", "1", "--seed", "7"], false),
        (vec!["construct", "cubes", "--interval", "64", "--s", "1", "--t", "2"], false),
        (vec!["oracle", "g", "--n", "6", "--k", "4", "--ell", "5", "--M", "16", "--monotonicity"], true),
        (vec!["oracle", "g", "--n", "5", "--k", "3", "--ell", "3", "--M", "14", "--format", "csv"], true),
        (vec!["verify", "--lemma", "all", "--k", "9", "--samples", "60", "--seed", "4"], true),
        (vec!["verify", "--lemma", "2s-certify", "--k", "8", "--samples", "200", "--seed", "1"], true),
        (vec!["verify", "--lemma", "repeated-sums", "--samples", "300", "--seed", "2"], true),
        (vec!["thresholds", "--k", "8", "--c", "3/2", "--a", "1/8", "--ladder-k", "1000000000"], false),
        (vec!["figure-data", "--k", "8", "--format", "csv"], false),
    ];
    let exe = env!("CARGO_BIN_EXE_diffset");
    let run = |args: &[&str]| -> Result<Vec<u8>, String> {
        let out = Command::new(exe).args(args).env_remove("DIFFSET_BUDGET").output().map_err(|e| e.to_string())?;
        check(out.status.success(), format!("{args:?} exited {:?}", out.status.code()))?;
        Ok(out.stdout)
    };
    let mut compared = 0;
    for (args, jobs) in &invocations {
        let first = run(args)?;
        check(first == run(args)?, format!("{args:?} differs between runs"))?;
        compared += 1;
        if *jobs {
            let one = run(&[args.as_slice(), &["--jobs", "1"]].concat())?;
            let four = run(&[args.as_slice(), &["--jobs", "4"]].concat())?;
            check(one == four && one == first, format!("{args:?} differs between --jobs 1 and --jobs 4"))?;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{compared} invocations byte-identical; oracle and verify identical under --jobs 1 and 4"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("worked-example regression", LIMIT_WORKED_EXAMPLES, worked_examples),
        ("equality-case regression", LIMIT_EQUALITY_CASES, equality_cases),
        ("certified-index suite", LIMIT_CERTIFY_SUITE, certify_suite),
        ("implication-structure suite", LIMIT_IMPLICATION_SUITE, implication_suite),
        ("repeated sums", LIMIT_REPEATED_SUMS, repeated_sums),
        ("equal-sum cubes", LIMIT_CUBES, cubes),
        ("construction postconditions", LIMIT_LOCAL_SETS, local_sets),
        ("oracle pins", LIMIT_ORACLE, oracle),
        ("threshold formulas", LIMIT_THRESHOLDS, thresholds),
        ("determinism", LIMIT_DETERMINISM, determinism),
    ];
    // Optional criterion numbers on the command line select a subset.
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; too slow")),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{:>2}] {name} ({:.2}s, limit {}s): {detail}",
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
