//! Subcommand grammar and dispatch.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use diffset::configuration::DEFAULT_SUBSET_CAP;
use diffset::constructions::{
    check_local_set, cube_difference_bound, cube_point_set, find_equal_sum_cubes, random_local_set,
    three_ap_free_base, CubeMode, DEFAULT_HEAVY_BUDGET,
};
use diffset::implication::{find_n_implications, AnchoredCollection};
use diffset::oracle::{brute_force_g, check_monotonicity, DEFAULT_ORACLE_BUDGET};
use diffset::pointset::{format_rational, parse_rational};
use diffset::solution::{distinct_differences, generic_diff_count};
use diffset::thresholds::{
    figure_curve_data, nc_threshold_coefficients, poly_bounds_exponents, sk_ladder, threshold_report, FIGURE_HEADER,
};
use diffset::verify::{run_lemma, VerifyOptions};
use diffset::{par, Configuration, ConfigurationFile, DifferenceEquality, Error, PointSet};

use crate::output::{Format, Report};

/// Environment variable overriding default work budgets.
pub const BUDGET_ENV: &str = "DIFFSET_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "diffset", version, about = "Difference equalities and local distinct-difference properties")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout; `construct` writes the point set here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension, validity, AP-freeness, heavy parts and generic difference count of a configuration.
    AnalyzeConfig {
        /// Configuration JSON: {"k": .., "equalities": [[i1, i2, i3, i4], ..]}.
        #[arg(long = "in")]
        input: PathBuf,
        /// Difference exponent c > 1.
        #[arg(long, default_value = "2", value_parser = rational)]
        c: BigRational,
        /// Largest k for the heavy-part scan.
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: usize,
        /// Seed for the generic solution.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also report the projection dimension onto these variables.
        #[arg(long, value_delimiter = ',')]
        part: Option<Vec<usize>>,
    },
    /// Lists difference equalities on k variables, those implied by a configuration,
    /// or the minimal implications of a given order.
    Enumerate {
        /// Number of variables.
        #[arg(long, required_unless_present = "input")]
        k: Option<usize>,
        /// Configuration JSON, as for analyze-config.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Keep only equalities involving this variable.
        #[arg(long)]
        involving: Option<usize>,
        /// Include degenerate equalities, whose two sides share a variable.
        #[arg(long)]
        all: bool,
        /// List minimal implications of this order (2, 3 or 4) through the anchor.
        #[arg(long, requires = "input")]
        order: Option<usize>,
        /// Variable every listed implication must involve.
        #[arg(long, default_value_t = 1)]
        anchor: usize,
    },
    /// Builds sets.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        what: Oracle,
    },
    /// Checks a structural lemma on random collections; exits 1 on a counterexample.
    Verify {
        /// Lemma name, or "all".
        #[arg(long)]
        lemma: String,
        /// Largest number of variables in a sample (5 to 12).
        #[arg(long, default_value_t = 8)]
        k: usize,
        /// Number of random collections.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Base seed; sample i uses stream i.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest collection size (2 to 6).
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Threshold formulas for k.
    Thresholds {
        /// Number of points in each local subset.
        #[arg(long)]
        k: u64,
        /// Also report the exponent bracket for difference exponent c.
        #[arg(long, value_parser = rational)]
        c: Option<BigRational>,
        /// Also report the exponent bracket for polynomial coefficient a.
        #[arg(long, value_parser = rational)]
        a: Option<BigRational>,
        /// Also report the ladder of distinct exponents for this (arbitrarily large) k.
        #[arg(long, value_parser = bigint)]
        ladder_k: Option<BigInt>,
    },
    /// Upper and lower curves of the coefficient-exponent plane.
    FigureData {
        /// Number of points in each local subset.
        #[arg(long)]
        k: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// A 3-AP-free subset of {1..n}.
    Behrend {
        /// Size of the interval.
        #[arg(long)]
        n: u64,
    },
    /// A random 3-AP-free set of size n in {1..ceil(a n^c)} with no heavy subset of size <= k.
    LocalSet {
        /// Number of points.
        #[arg(long)]
        n: usize,
        /// Local subset size.
        #[arg(long)]
        k: usize,
        /// Difference exponent c in (1, 2].
        #[arg(long, value_parser = rational)]
        c: BigRational,
        /// Scale a of the ambient interval {1..ceil(a n^c)}.
        #[arg(long, default_value = "1", value_parser = rational)]
        a: BigRational,
        /// Seed for the random choices.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Work budget for the heavy-subset scan.
        #[arg(long)]
        budget: Option<u128>,
        /// Re-check the output exhaustively.
        #[arg(long)]
        check: bool,
    },
    /// An equal-sum cube inside a set.
    Cubes {
        /// Point set file, one rational per line.
        #[arg(long = "in", required_unless_present = "interval", conflicts_with = "interval")]
        input: Option<PathBuf>,
        /// Use {1..N}.
        #[arg(long)]
        interval: Option<i64>,
        /// Number of coordinate pairs.
        #[arg(long)]
        s: usize,
        /// Number of cube steps.
        #[arg(long)]
        t: usize,
        /// Guaranteed size thresholds or best-effort search.
        #[arg(long, value_enum, default_value_t = Mode::Opportunistic)]
        mode: Mode,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Guaranteed,
    Opportunistic,
}

#[derive(Debug, Subcommand)]
enum Oracle {
    /// Minimum number of distinct differences of an n-subset of {0..M} with the (k, ell)-local property.
    G {
        /// Number of points.
        #[arg(long)]
        n: u64,
        /// Local subset size.
        #[arg(long)]
        k: u64,
        /// Required distinct differences in each k-subset.
        #[arg(long, allow_hyphen_values = true)]
        ell: i64,
        /// Largest grid point.
        #[arg(long = "M", alias = "m")]
        m: u64,
        /// Work budget; the search needs C(M, n - 1) candidate sets.
        #[arg(long)]
        budget: Option<u128>,
        /// Also check both monotonicity relations at this triple.
        #[arg(long)]
        monotonicity: bool,
    },
}

fn rational(s: &str) -> Result<BigRational, String> {
    parse_rational(s)
}

fn bigint(s: &str) -> Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("not an integer: {s}"))
}

/// What the process prints and its exit status.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

pub enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 1, with a structured reason on stderr.
    Domain(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let mut v = json!({ "error": error_kind(&e), "message": e.to_string() });
        if let Error::BudgetExceeded { needed, budget } = e {
            v["needed"] = number(needed);
            v["budget"] = number(budget);
        }
        Failure::Domain(v)
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Domain(json!({ "error": "io", "message": format!("{}: {e}", path.display()) }))
}

fn number(x: u128) -> Value {
    u64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidIndex { .. } => "invalid_index",
        Error::IdentityEquality(_) => "identity_equality",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::InvalidParameter(_) => "invalid_parameter",
        Error::TooManySubsets { .. } => "too_many_subsets",
        Error::RetryLimitExceeded { .. } => "retry_limit_exceeded",
        Error::NotASolution => "not_a_solution",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::AnchorMissing(_) => "anchor_missing",
        Error::NotIndependent => "not_independent",
        Error::NotTwoGood(_) => "not_two_good",
        Error::NotAPath => "not_a_path",
        Error::InsufficientDensity { .. } => "insufficient_density",
        Error::NotFound => "not_found",
        Error::DegenerateCube => "degenerate_cube",
        Error::DegenerateInput(_) => "degenerate_input",
        Error::Inconsistent(_) => "inconsistent",
        Error::UnknownLemma(_) => "unknown_lemma",
        Error::Parse { .. } => "parse",
    }
}

/// Explicit flag, else the environment override, else `default`.
fn resolve_budget(flag: Option<u128>, default: u128) -> Result<u128, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{BUDGET_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(default),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn read_configuration(path: &Path) -> Result<Configuration, Failure> {
    let text = read(path)?;
    let file: ConfigurationFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Domain(json!({ "error": "parse", "message": format!("{}: {e}", path.display()) })))?;
    Ok(Configuration::from_file(&file)?)
}

fn read_points(path: &Path) -> Result<PointSet, Failure> {
    let (set, _) = PointSet::parse(&read(path)?)?;
    Ok(set)
}

fn strings(points: &PointSet) -> Vec<String> {
    points.points().iter().map(format_rational).collect()
}

fn equality_json(e: &DifferenceEquality) -> Value {
    json!({ "quadruple": e.quadruple(), "form": e.to_string() })
}

fn equality_row(e: &DifferenceEquality) -> Vec<String> {
    let mut row: Vec<String> = e.quadruple().iter().map(|x| x.to_string()).collect();
    row.push(e.to_string());
    row
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Parses nothing; runs an already parsed command line.
pub fn run(cli: Cli) -> Result<Outcome, Failure> {
    let jobs = cli.jobs as usize;
    let format = cli.format;
    let out = cli.out.clone();
    let (report, code, name) = par::with_jobs(jobs, move || dispatch(cli.command, cli.out.as_deref()))?;
    let text = report
        .render(format)
        .ok_or_else(|| Failure::Usage(format!("--format {format:?} is not available for {name}").to_lowercase()))?;
    match out {
        Some(path) if name != "construct" => {
            write(&path, &text)?;
            Ok(Outcome { stdout: String::new(), code })
        }
        _ => Ok(Outcome { stdout: text, code }),
    }
}

fn dispatch(command: Command, out: Option<&Path>) -> Result<(Report, u8, &'static str), Failure> {
    Ok(match command {
        Command::AnalyzeConfig { input, c, cap, seed, part } => {
            (analyze_config(&input, &c, cap, seed, part)?, 0, "analyze-config")
        }
        Command::Enumerate { k, input, involving, all, order, anchor } => {
            (enumerate(k, input.as_deref(), involving, all, order, anchor)?, 0, "enumerate")
        }
        Command::Construct { what } => (construct(what, out)?, 0, "construct"),
        Command::Oracle { what: Oracle::G { n, k, ell, m, budget, monotonicity } } => {
            (oracle_g(n, k, ell, m, resolve_budget(budget, DEFAULT_ORACLE_BUDGET)?, monotonicity)?, 0, "oracle")
        }
        Command::Verify { lemma, k, samples, seed, max_size } => {
            let (report, ok) = verify(&lemma, VerifyOptions { k, samples, seed, max_size })?;
            (report, if ok { 0 } else { 1 }, "verify")
        }
        Command::Thresholds { k, c, a, ladder_k } => (thresholds(k, c, a, ladder_k)?, 0, "thresholds"),
        Command::FigureData { k } => (figure_data(k)?, 0, "figure-data"),
    })
}

fn analyze_config(
    input: &Path,
    c: &BigRational,
    cap: usize,
    seed: u64,
    part: Option<Vec<usize>>,
) -> Result<Report, Failure> {
    let cfg = read_configuration(input)?;
    let heavy = cfg.heavy_parts(c, cap)?;
    let goodness = cfg.goodness(c, cap)?;
    let d = generic_diff_count(&cfg, seed)?;
    let mut json = json!({
        "k": cfg.k(),
        "equalities": cfg.to_file().equalities,
        "rank": cfg.rank(),
        "dim": cfg.dim(),
        "valid": cfg.is_valid(),
        "ap_free": cfg.is_ap_free(),
        "c": format_rational(c),
        "heavy_parts": heavy,
        "goodness": to_json(&goodness),
        "d_of_C": d,
        "seed": seed,
    });
    let mut text = format!(
        "k = {}\ndim = {}\nvalid = {}\nap_free = {}\nheavy parts = {}\nd(C) = {d}\n",
        cfg.k(),
        cfg.dim(),
        cfg.is_valid(),
        cfg.is_ap_free(),
        heavy.len()
    );
    if let Some(p) = part {
        let dp = cfg.dim_of(&p)?;
        json["part"] = json!(p);
        json["dim_part"] = json!(dp);
        let _ = writeln!(text, "dim on {p:?} = {dp}");
    }
    Ok(Report::new(json, text))
}

fn enumerate(
    k: Option<usize>,
    input: Option<&Path>,
    involving: Option<usize>,
    all: bool,
    order: Option<usize>,
    anchor: usize,
) -> Result<Report, Failure> {
    let keep = |e: &DifferenceEquality| involving.is_none_or(|i| e.involves(i));
    let (k, eqs) = match input {
        Some(path) => {
            let cfg = read_configuration(path)?;
            if let Some(order) = order {
                return implications(&cfg, anchor, order);
            }
            (cfg.k(), cfg.implied_equalities(!all))
        }
        None => {
            let k = k.expect("clap requires --k without --in");
            if k > 64 {
                return Err(Error::InvalidParameter(format!("k = {k} too large to enumerate")).into());
            }
            (k, diffset::equality::enumerate_equalities(k, !all))
        }
    };
    let eqs: Vec<DifferenceEquality> = eqs.into_iter().filter(|e| keep(e)).collect();
    let json = json!({
        "k": k,
        "count": eqs.len(),
        "equalities": eqs.iter().map(equality_json).collect::<Vec<_>>(),
    });
    let text: String = eqs.iter().map(|e| format!("{e}\n")).collect();
    Ok(Report::new(json, text).with_table(vec!["i1", "i2", "i3", "i4", "form"], eqs.iter().map(equality_row).collect()))
}

fn implications(cfg: &Configuration, anchor: usize, order: usize) -> Result<Report, Failure> {
    let coll = AnchoredCollection::new(cfg.k(), anchor, cfg.equalities().to_vec())?;
    let found = find_n_implications(&coll, order)?;
    let items: Vec<Value> = found
        .iter()
        .map(|m| {
            json!({
                "members": m.members.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "produced": equality_json(&m.produced),
                "coefficients": m.coefficients.iter().map(format_rational).collect::<Vec<_>>(),
            })
        })
        .collect();
    let json = json!({ "k": cfg.k(), "anchor": anchor, "order": order, "implications": items });
    let mut text = String::new();
    let mut rows = Vec::new();
    for m in &found {
        let members: Vec<String> = m.members.iter().map(|i| (i + 1).to_string()).collect();
        let _ = writeln!(text, "{{{}}} => {}", members.join(", "), m.produced);
        rows.push(vec![members.join(" "), m.produced.to_string()]);
    }
    Ok(Report::new(json, text).with_table(vec!["members", "produced"], rows))
}

fn construct(what: Construct, out: Option<&Path>) -> Result<Report, Failure> {
    let (report, points) = match what {
        Construct::Behrend { n } => {
            let base = three_ap_free_base(n);
            let set = PointSet::from_integers(base.elements.iter().map(|&x| x as i64));
            let json = json!({
                "n": n,
                "size": set.len(),
                "base": to_json(&base.method),
                "points": strings(&set),
            });
            let text = format!("{} points in 1..={n}\n{}", set.len(), set.to_text());
            (Report::new(json, text), set)
        }
        Construct::LocalSet { n, k, c, a, seed, budget, check } => {
            let budget = resolve_budget(budget, DEFAULT_HEAVY_BUDGET)?;
            let (set, trace) = random_local_set(n, k, &c, &a, seed, budget)?;
            let mut json = json!({
                "n": n,
                "k": k,
                "c": format_rational(&c),
                "a": format_rational(&a),
                "points": strings(&set),
                "trace": to_json(&trace),
            });
            let mut text = format!(
                "{} points in 1..={} (seed {seed}, {} deleted)\n",
                set.len(),
                trace.range_bound,
                trace.deleted_count
            );
            if check {
                let checks = check_local_set(&set, n, k, &c, &a, budget)?;
                let _ = writeln!(text, "checks passed = {}", checks.passed());
                json["checks"] = to_json(&checks);
            }
            text.push_str(&set.to_text());
            (Report::new(json, text), set)
        }
        Construct::Cubes { input, interval, s, t, mode } => {
            let a = match (input, interval) {
                (Some(path), _) => read_points(&path)?,
                (None, Some(n)) => PointSet::from_integers(1..=n),
                (None, None) => unreachable!("clap requires --in or --interval"),
            };
            let mode = match mode {
                Mode::Guaranteed => CubeMode::Guaranteed,
                Mode::Opportunistic => CubeMode::Opportunistic,
            };
            let cube = find_equal_sum_cubes(&a, s, t, mode)?;
            let set = cube_point_set(&cube)?;
            let d = distinct_differences(&set);
            let bound = cube_difference_bound(s as u64, t as u32);
            let json = json!({
                "cube": to_json(&cube),
                "points": strings(&set),
                "distinct_differences": d,
                "bound": number(bound),
            });
            let text = format!("{} points, {d} distinct differences (bound {bound})\n{}", set.len(), set.to_text());
            (Report::new(json, text), set)
        }
    };
    if let Some(path) = out {
        write(path, &points.to_text())?;
    }
    Ok(report)
}

fn oracle_g(n: u64, k: u64, ell: i64, m: u64, budget: u128, monotonicity: bool) -> Result<Report, Failure> {
    let r = brute_force_g(n, k, ell, m, budget)?;
    let mut json = to_json(&r);
    let witness = r
        .witness
        .as_ref()
        .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .unwrap_or_default();
    let mut text = format!("g_{m}({n}, {k}, {ell}) = {}\n", r.value);
    if !witness.is_empty() {
        let _ = writeln!(text, "witness: {witness}");
    }
    if monotonicity {
        let check = check_monotonicity(n, k, ell, m, budget)?;
        json["monotonicity"] = to_json(&check);
        let _ = writeln!(text, "monotonicity holds = {}", check.holds());
    }
    let row = vec![
        n.to_string(),
        k.to_string(),
        ell.to_string(),
        m.to_string(),
        r.value.to_string(),
        r.exact.to_string(),
        witness,
    ];
    Ok(Report::new(json, text).with_table(vec!["n", "k", "ell", "M", "value", "exact", "witness"], vec![row]))
}

fn verify(lemma: &str, options: VerifyOptions) -> Result<(Report, bool), Failure> {
    let r = run_lemma(lemma, &options)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for l in &r.lemmas {
        let status = if l.holds() { "pass" } else { "FAIL" };
        let _ = writeln!(text, "{status} {} ({}/{} checked inputs)", l.lemma, l.passed, l.checked);
        rows.push(vec![
            l.lemma.clone(),
            l.checked.to_string(),
            l.passed.to_string(),
            l.counterexamples.len().to_string(),
        ]);
    }
    let ok = r.holds();
    let mut json = to_json(&r);
    json["pass"] = json!(ok);
    Ok((
        Report::new(json, text).with_table(vec!["lemma", "checked", "passed", "counterexamples"], rows),
        ok,
    ))
}

fn thresholds(
    k: u64,
    c: Option<BigRational>,
    a: Option<BigRational>,
    ladder_k: Option<BigInt>,
) -> Result<Report, Failure> {
    let r = threshold_report(k)?;
    let mut json = to_json(&r);
    let mut text = format!("k = {k}\nquadratic threshold in [{}, {}]\n", r.quadratic_lower, r.quadratic_upper);
    let mut rows = Vec::new();
    for row in &r.rows {
        let _ = writeln!(
            text,
            "{} ell = {} exponent {} ({})",
            row.direction.as_str(),
            row.ell,
            format_rational(&row.exponent),
            row.source
        );
        rows.push(vec![
            row.source.to_string(),
            row.ell.to_string(),
            format_rational(&row.exponent),
            row.direction.as_str().to_string(),
            row.in_range.to_string(),
        ]);
    }
    if let Some(c) = c {
        let nc = nc_threshold_coefficients(&c)?;
        let _ = writeln!(text, "exponent {}: t = {}", format_rational(&c), nc.t);
        json["nc"] = to_json(&nc);
    }
    if let Some(a) = a {
        let p = poly_bounds_exponents(&a)?;
        let _ = writeln!(text, "coefficient {}: t = {}", format_rational(&a), p.t);
        json["poly"] = to_json(&p);
    }
    if let Some(big) = ladder_k {
        let l = sk_ladder(&big)?;
        let _ = writeln!(text, "ladder: r = {}, {} rungs", l.r, l.rungs.len());
        json["ladder"] = to_json(&l);
    }
    Ok(Report::new(json, text).with_table(vec!["source", "ell", "exponent", "direction", "in_range"], rows))
}

fn figure_data(k: u64) -> Result<Report, Failure> {
    let rows = figure_curve_data(k)?;
    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                format_rational(&r.coeff),
                format_rational(&r.exponent),
                r.direction.as_str().to_string(),
                r.source.to_string(),
            ]
        })
        .collect();
    let text: String = table.iter().map(|r| format!("{}\n", r.join(" "))).collect();
    let json = json!({ "k": k, "rows": to_json(&rows) });
    let header: Vec<&'static str> = FIGURE_HEADER.to_vec();
    Ok(Report::new(json, text).with_table(header, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("diffset").chain(args.iter().copied()))
    }

    #[test]
    fn grammar_accepts_the_documented_forms() {
        assert!(parse(&["analyze-config", "--in", "cfg.json", "--c", "2"]).is_ok());
        assert!(parse(&["construct", "local-set", "--n", "40", "--k", "4", "--c", "2", "--a", "1", "--seed", "7"]).is_ok());
        assert!(parse(&["oracle", "g", "--n", "4", "--k", "3", "--ell", "3", "--M", "12"]).is_ok());
        assert!(parse(&["verify", "--lemma", "2s-certify", "--k", "8", "--samples", "500", "--seed", "1"]).is_ok());
        assert!(parse(&["thresholds", "--k", "8", "--format", "csv"]).is_ok());
        assert!(parse(&["figure-data", "--k", "8"]).is_ok());
    }

    #[test]
    fn usage_errors_name_the_flag() {
        let e = parse(&["thresholds", "--k", "eight"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("--k"));
        let e = parse(&["analyze-config", "--in", "x", "--c", "two"]).unwrap_err();
        assert!(e.to_string().contains("--c"));
        assert!(parse(&["enumerate"]).is_err());
        assert!(parse(&["oracle", "g", "--n", "4", "--k", "3", "--ell", "3", "--M", "12", "--jobs", "0"]).is_err());
    }

    #[test]
    fn budget_errors_carry_numbers() {
        let Failure::Domain(v) = Failure::from(Error::BudgetExceeded { needed: 10, budget: 3 }) else {
            panic!("expected a domain failure");
        };
        assert_eq!(v["error"], "budget_exceeded");
        assert_eq!(v["needed"], 10);
        assert_eq!(v["budget"], 3);
        assert_eq!(number(u128::MAX), Value::from(u128::MAX.to_string()));
    }
}
