//! Randomized verification of structural lemmas about anchored collections.
//!
//! Each sample is a random linearly independent, 2-good collection of
//! difference equalities through `x_1`, drawn by rejection sampling. A fixed
//! set of hand-built collections is appended whenever at least one sample is
//! requested. Every registered lemma is checked on every collection where its
//! hypothesis applies; failures are reported with the offending collection.
//! Two further families check additive inequalities on random integer sets
//! and random equal-sum cubes.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::configuration::{independent, Configuration, ConfigurationFile, DEFAULT_SUBSET_CAP};
use crate::constructions::{check_repeated_sums, cube_difference_bound, CubeStructure};
use crate::equality::{enumerate_equalities, DifferenceEquality};
use crate::error::{Error, Result};
use crate::implication::{
    alignment_unchecked, avoiding_bound, avoiding_case, certified_indices, count_implied_not_involving,
    difference_aligned_pairs, find_n_implications, g3_graph, minimal_implications, normalize_to_sprime,
    opposite_sign_indices, sum_aligned_pairs, unit_coefficients, AnchoredCollection, AvoidingCase,
    MinimalImplication, Normalized,
};
use crate::par;
use crate::pointset::{format_rational, PointSet};
use crate::solution::{bounding_diffs_lower, distinct_differences, generic_diff_count, odd_bounding_diffs_lower};

/// Registered lemma names, in report order.
pub const LEMMAS: [&str; 20] = [
    "2s-certify",
    "2s-certify-equality",
    "sprime-certify",
    "gen-min-impl",
    "2-good-min-impl",
    "min-impl-unique",
    "2-eqns-5-vars",
    "3-impls-path",
    "3-impls-disjoint",
    "2-impls",
    "4-impl",
    "4-impls-overlap",
    "4-impls-7",
    "many-4-impls",
    "impls-not-i",
    "c-light-alt",
    "bounding-diffs",
    "odd-bounding-diffs",
    "repeated-sums",
    "cube-few-diffs",
];

/// Lemmas checked on anchored collections.
const COLLECTION_LEMMAS: usize = 18;

/// Anchor variable of every sampled collection.
pub const ANCHOR: usize = 1;

/// Attempts per sample before the sampler gives up.
pub const MAX_ATTEMPTS: usize = 20_000;

/// Counterexamples kept per lemma.
pub const MAX_COUNTEREXAMPLES: usize = 5;

/// Largest integer set drawn by the repeated-sums family.
pub const MAX_SET_SIZE: usize = 60;

/// Parameters of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    /// Largest number of variables; samples use `5..=k`.
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
    /// Largest collection size; samples use `2..=max_size`.
    pub max_size: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            k: 8,
            samples: 200,
            seed: 1,
            max_size: 4,
        }
    }
}

/// A failing input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Counterexample {
    Configuration(ConfigurationFile),
    Points { points: Vec<String> },
}

/// Tally for one lemma.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    /// Inputs on which the hypothesis applied.
    pub checked: u64,
    pub passed: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl LemmaReport {
    fn new(name: &str) -> Self {
        LemmaReport {
            lemma: name.to_string(),
            checked: 0,
            passed: 0,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Counterexample) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(witness());
        }
    }

    pub fn holds(&self) -> bool {
        self.checked == self.passed
    }
}

/// Outcome of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub options: VerifyOptions,
    /// Random collections drawn.
    pub sampled: u64,
    /// Hand-built collections appended.
    pub injected: u64,
    /// Random draws discarded as dependent or not 2-good.
    pub rejected: u64,
    pub lemmas: Vec<LemmaReport>,
}

impl VerifyReport {
    pub fn holds(&self) -> bool {
        self.lemmas.iter().all(LemmaReport::holds)
    }

    pub fn lemma(&self, name: &str) -> Option<&LemmaReport> {
        self.lemmas.iter().find(|l| l.lemma == name)
    }
}

/// Runs every registered lemma.
pub fn verify_structure_lemmas(options: &VerifyOptions) -> Result<VerifyReport> {
    run_lemma_set(&LEMMAS, options)
}

/// Runs one lemma by name, or every lemma for `"all"`.
pub fn run_lemma(name: &str, options: &VerifyOptions) -> Result<VerifyReport> {
    if name == "all" {
        return verify_structure_lemmas(options);
    }
    run_lemma_set(&[name], options)
}

/// Runs the named lemmas on one shared sample.
pub fn run_lemma_set(names: &[&str], options: &VerifyOptions) -> Result<VerifyReport> {
    if let Some(unknown) = names.iter().find(|n| !LEMMAS.contains(n)) {
        return Err(Error::UnknownLemma(unknown.to_string()));
    }
    if !(5..=12).contains(&options.k) {
        return Err(Error::InvalidParameter(format!("k must lie in 5..=12, got {}", options.k)));
    }
    if !(2..=6).contains(&options.max_size) {
        return Err(Error::InvalidParameter(format!(
            "max_size must lie in 2..=6, got {}",
            options.max_size
        )));
    }
    let selected: Vec<usize> = LEMMAS
        .iter()
        .enumerate()
        .filter(|(_, l)| names.contains(l))
        .map(|(i, _)| i)
        .collect();
    let mut reports: Vec<LemmaReport> = selected.iter().map(|&i| LemmaReport::new(LEMMAS[i])).collect();
    let mut out = VerifyReport {
        options: options.clone(),
        sampled: 0,
        injected: 0,
        rejected: 0,
        lemmas: Vec::new(),
    };
    let collection_lemmas: Vec<usize> = selected.iter().copied().filter(|&i| i < COLLECTION_LEMMAS).collect();
    if !collection_lemmas.is_empty() && options.samples > 0 {
        let pools: Vec<Vec<DifferenceEquality>> = (0..=options.k)
            .map(|k| {
                if k < 5 {
                    Vec::new()
                } else {
                    enumerate_equalities(k, true).into_iter().filter(|e| e.involves(ANCHOR)).collect()
                }
            })
            .collect();
        let drawn = par::map_range(options.samples, |i| draw_collection(options, &pools, i));
        let mut collections = Vec::with_capacity(drawn.len());
        for d in drawn {
            let (c, rejected) = d?;
            out.rejected += rejected;
            collections.push(c);
        }
        out.sampled = collections.len() as u64;
        let injected = injected_collections()?;
        out.injected = injected.len() as u64;
        collections.extend(injected);
        let seeds: Vec<(usize, AnchoredCollection)> = collections.into_iter().enumerate().collect();
        let outcomes = par::map(&seeds, |(i, c)| {
            let s = Sample::new(c.clone(), sample_seed(options.seed, *i as u64));
            collection_lemmas.iter().map(|&l| check_collection(l, &s)).collect::<Vec<_>>()
        });
        for (o, (_, c)) in outcomes.into_iter().zip(&seeds) {
            for (res, &l) in o.into_iter().zip(&collection_lemmas) {
                if let Some(ok) = res {
                    let slot = selected.iter().position(|&x| x == l).expect("selected");
                    reports[slot].record(ok, || Counterexample::Configuration(c.configuration().to_file()));
                }
            }
        }
    }
    for (slot, &l) in selected.iter().enumerate() {
        match LEMMAS[l] {
            "repeated-sums" => repeated_sums_family(options, &mut reports[slot])?,
            "cube-few-diffs" => cube_family(options, &mut reports[slot])?,
            _ => {}
        }
    }
    out.lemmas = reports;
    Ok(out)
}

fn sample_seed(seed: u64, index: u64) -> u64 {
    seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws one independent 2-good collection through `x_1`.
fn draw_collection(
    options: &VerifyOptions,
    pools: &[Vec<DifferenceEquality>],
    index: usize,
) -> Result<(AnchoredCollection, u64)> {
    let mut rng = rng_for(options.seed, index as u64);
    let two = BigRational::from_integer(BigInt::from(2));
    for attempt in 0..MAX_ATTEMPTS {
        let k = rng.gen_range(5..=options.k);
        let size = rng.gen_range(2..=options.max_size);
        let pool = &pools[k];
        let mut idx = sample(&mut rng, pool.len(), size).into_vec();
        idx.sort_unstable();
        let eqs: Vec<DifferenceEquality> = idx.iter().map(|&i| pool[i]).collect();
        if !independent(&eqs) {
            continue;
        }
        let coll = AnchoredCollection::new(k, ANCHOR, eqs)?;
        if coll.configuration().is_c_good(&two, DEFAULT_SUBSET_CAP)? {
            return Ok((coll, attempt as u64));
        }
    }
    Err(Error::RetryLimitExceeded { attempts: MAX_ATTEMPTS })
}

/// Hand-built collections exercising 3- and 4-implications.
pub fn injected_collections() -> Result<Vec<AnchoredCollection>> {
    let quads: [(usize, &[[usize; 4]]); 7] = [
        // Blue box: one 3-implication.
        (7, &[[1, 2, 3, 4], [1, 5, 6, 2], [1, 3, 5, 7]]),
        // Two disjoint 3-implications.
        (
            15,
            &[
                [1, 2, 3, 4],
                [1, 5, 6, 2],
                [1, 3, 5, 7],
                [1, 8, 9, 6],
                [1, 10, 11, 12],
                [1, 13, 14, 10],
                [1, 13, 15, 12],
            ],
        ),
        // 4-implications with one difference-aligned pair, both shapes.
        (9, &[[1, 2, 3, 4], [1, 5, 6, 2], [1, 5, 7, 4], [1, 8, 9, 7]]),
        (9, &[[1, 2, 3, 4], [1, 5, 6, 2], [1, 7, 8, 4], [1, 5, 9, 7]]),
        // Two 4-implications sharing three equations.
        (11, &[[1, 2, 3, 4], [1, 5, 6, 2], [1, 5, 7, 4], [1, 8, 9, 7], [1, 10, 11, 7]]),
        // A stack of pairwise sum-aligned equalities.
        (8, &[[1, 3, 4, 2], [1, 5, 6, 2], [1, 7, 8, 2]]),
        // A 2-implication.
        (6, &[[1, 3, 4, 2], [1, 5, 6, 2]]),
    ];
    quads
        .iter()
        .map(|(k, q)| AnchoredCollection::from_quadruples(*k, ANCHOR, q))
        .collect()
}

struct Sample {
    coll: AnchoredCollection,
    cfg: Configuration,
    implications: Result<Vec<MinimalImplication>>,
    certified: Result<Vec<usize>>,
    sprime: Result<Normalized>,
    seed: u64,
}

impl Sample {
    fn new(coll: AnchoredCollection, seed: u64) -> Self {
        let cfg = coll.configuration();
        Sample {
            implications: minimal_implications(&coll),
            certified: certified_indices(&coll),
            sprime: normalize_to_sprime(&coll),
            cfg,
            coll,
            seed,
        }
    }

    fn of_order(&self, order: usize) -> Option<Vec<&MinimalImplication>> {
        let impls = self.implications.as_ref().ok()?;
        Some(
            impls
                .iter()
                .filter(|m| m.members.len() == order && m.produced.involves(ANCHOR) == (order % 2 == 1))
                .collect(),
        )
    }

    fn equalities(&self, members: &[usize]) -> Vec<DifferenceEquality> {
        members.iter().map(|&m| self.coll.equalities()[m]).collect()
    }
}

/// Variables of `eqs` with the number of equalities containing each.
fn occurrences(eqs: &[DifferenceEquality]) -> Vec<(usize, usize)> {
    let mut vars: Vec<usize> = eqs.iter().flat_map(|e| e.variables()).collect();
    vars.sort_unstable();
    vars.dedup();
    vars.into_iter()
        .map(|v| (v, eqs.iter().filter(|e| e.involves(v)).count()))
        .collect()
}

fn variable_count(eqs: &[DifferenceEquality]) -> usize {
    occurrences(eqs).len()
}

/// Result of one lemma on one collection; `None` when the hypothesis fails.
fn check_collection(lemma: usize, s: &Sample) -> Option<bool> {
    let size = s.coll.len();
    match LEMMAS[lemma] {
        "2s-certify" => Some(s.certified.as_ref().is_ok_and(|c| c.len() <= 2 * size)),
        "2s-certify-equality" => {
            let c = s.certified.as_ref().ok()?.len();
            if c + 1 < 2 * size {
                return None;
            }
            let Ok(n) = &s.sprime else { return Some(false) };
            let pairs = difference_aligned_pairs(&n.equalities).len();
            Some(if c == 2 * size { pairs == 0 } else { pairs == 1 })
        }
        "sprime-certify" => Some(sprime_ok(s)),
        "gen-min-impl" => {
            let impls = s.implications.as_ref().ok()?;
            Some(impls.iter().all(|m| general_minimal_ok(s, m)))
        }
        "2-good-min-impl" => {
            let impls = s.implications.as_ref().ok()?;
            Some(impls.iter().all(|m| two_good_minimal_ok(s, m)))
        }
        "min-impl-unique" => Some(minimal_by_subsets(s)),
        "2-eqns-5-vars" => Some(pairs_share_few(s)),
        "3-impls-path" => {
            let threes = s.of_order(3)?;
            if threes.is_empty() {
                return None;
            }
            Some(threes.iter().all(|t| is_path(s, t)))
        }
        "3-impls-disjoint" => {
            let threes = s.of_order(3)?;
            if threes.len() < 2 {
                return None;
            }
            Some(pairwise_disjoint(&threes))
        }
        "2-impls" => {
            let twos = s.of_order(2)?;
            if twos.is_empty() {
                return None;
            }
            Some(twos.iter().all(|t| {
                let e = s.equalities(&t.members);
                let a = alignment_unchecked(&e[0], &e[1]);
                a.is_difference() || a.is_sum()
            }))
        }
        "4-impl" => {
            let fours = s.of_order(4)?;
            let eligible: Vec<_> = fours
                .into_iter()
                .filter(|t| difference_aligned_pairs(&s.equalities(&t.members)).len() <= 1)
                .collect();
            if eligible.is_empty() {
                return None;
            }
            Some(eligible.iter().all(|t| {
                let e = s.equalities(&t.members);
                difference_aligned_pairs(&e).len() == 1 && sum_aligned_pairs(&e).len() == 1
            }))
        }
        "4-impls-overlap" => {
            if difference_aligned_pairs(s.coll.equalities()).len() != 1 {
                return None;
            }
            let fours = s.of_order(4)?;
            if fours.len() < 2 {
                return None;
            }
            let mut ok = true;
            for (a, x) in fours.iter().enumerate() {
                for y in &fours[a + 1..] {
                    let shared: Vec<usize> = x.members.iter().copied().filter(|m| y.members.contains(m)).collect();
                    ok &= shared.len() == 3 && variable_count(&s.equalities(&shared)) == 7;
                }
            }
            Some(ok)
        }
        "4-impls-7" => {
            let fours = s.of_order(4)?;
            let eligible: Vec<_> = fours
                .into_iter()
                .filter(|t| difference_aligned_pairs(&s.equalities(&t.members)).len() == 1)
                .collect();
            if eligible.is_empty() {
                return None;
            }
            Some(eligible.iter().all(|t| seven_variable_triple_ok(s, t)))
        }
        "many-4-impls" => {
            if difference_aligned_pairs(s.coll.equalities()).len() > 1 {
                return None;
            }
            let fours = s.of_order(4)?;
            if fours.len() < 2 {
                return None;
            }
            let common: Vec<usize> = fours[0]
                .members
                .iter()
                .copied()
                .filter(|m| fours.iter().all(|t| t.members.contains(m)))
                .collect();
            if common.len() < 3 {
                return Some(false);
            }
            let fourth: Vec<DifferenceEquality> = fours
                .iter()
                .filter_map(|t| t.members.iter().find(|m| !common.contains(m)).map(|&m| s.coll.equalities()[m]))
                .collect();
            Some(fourth.len() == fours.len() && sum_aligned_pairs(&fourth).len() == fourth.len() * (fourth.len() - 1) / 2)
        }
        "impls-not-i" => {
            let mut targets = vec![s.coll.clone()];
            if let Ok(n) = &s.sprime {
                if let Ok(c) = AnchoredCollection::new(s.coll.k(), ANCHOR, n.equalities.clone()) {
                    targets.push(c);
                }
            }
            let mut applied = false;
            let mut ok = true;
            for t in targets {
                let case = avoiding_case(&t);
                let Some(bound) = avoiding_bound(case, t.len()) else { continue };
                applied = true;
                let count = count_implied_not_involving(&t);
                ok &= if case == AvoidingCase::AllSumAligned { count == bound } else { count <= bound };
            }
            applied.then_some(ok)
        }
        "c-light-alt" => Some(light_alternative_ok(s)),
        "bounding-diffs" => {
            let d = generic_diff_count(&s.cfg, s.seed).ok()? as u64;
            let lower = bounding_diffs_lower(s.coll.k() as u64, s.cfg.dim() as u64).ok()?;
            Some(d >= lower)
        }
        "odd-bounding-diffs" => {
            let k = s.coll.k() as u64;
            if k.is_multiple_of(2) {
                return None;
            }
            let d = generic_diff_count(&s.cfg, s.seed).ok()? as u64;
            Some(d >= odd_bounding_diffs_lower(k).ok()?)
        }
        _ => None,
    }
}

fn sprime_ok(s: &Sample) -> bool {
    let (Ok(n), Ok(cert)) = (&s.sprime, &s.certified) else {
        return false;
    };
    let eqs = &n.equalities;
    let Ok(sp) = AnchoredCollection::new(s.coll.k(), ANCHOR, eqs.clone()) else {
        return false;
    };
    eqs.len() == s.coll.len()
        && independent(eqs)
        && sp.configuration().equivalent(&s.cfg)
        && *cert == opposite_sign_indices(eqs, ANCHOR)
}

fn general_minimal_ok(s: &Sample, m: &MinimalImplication) -> bool {
    let t = m.members.len();
    let members = s.equalities(&m.members);
    let mut with_produced = members.clone();
    with_produced.push(m.produced);
    let occ = occurrences(&with_produced);
    let vars = variable_count(&members);
    if vars > 2 * t + 2 {
        return false;
    }
    if vars == 2 * t + 2 && occ.iter().any(|&(_, c)| c != 2) {
        return false;
    }
    // Proper nonempty subsets T' introduce at most 2|T'| private variables.
    for mask in 1u32..(1 << t) - 1 {
        let inside: Vec<DifferenceEquality> = (0..t).filter(|j| mask >> j & 1 == 1).map(|j| members[j]).collect();
        let outside: Vec<DifferenceEquality> = (0..t).filter(|j| mask >> j & 1 == 0).map(|j| members[j]).collect();
        let outside_vars: Vec<usize> = outside.iter().flat_map(|e| e.variables()).collect();
        let private = occurrences(&inside)
            .iter()
            .filter(|(v, _)| !outside_vars.contains(v))
            .count();
        if private > 2 * inside.len() {
            return false;
        }
    }
    true
}

fn two_good_minimal_ok(s: &Sample, m: &MinimalImplication) -> bool {
    let t = m.members.len();
    let members = s.equalities(&m.members);
    let mut with_produced = members.clone();
    with_produced.push(m.produced);
    let occ = occurrences(&with_produced);
    let vars = variable_count(&members);
    let shape = if vars == 2 * t + 2 {
        occ.iter().all(|&(_, c)| c == 2)
    } else if vars == 2 * t + 1 {
        occ.iter().filter(|&&(_, c)| c == 4).count() == 1 && occ.iter().all(|&(_, c)| c == 2 || c == 4)
    } else {
        false
    };
    shape && unit_coefficients(&m.coefficients)
}

/// Rebuilds the minimal implications by scanning every sub-collection and
/// compares them with the solved list; also checks at most one produced
/// equality per sub-collection.
fn minimal_by_subsets(s: &Sample) -> bool {
    let Ok(listed) = &s.implications else { return false };
    let n = s.coll.len();
    let mut found: Vec<(Vec<usize>, DifferenceEquality)> = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        let cfg = s.coll.subset(&members).configuration();
        let smaller: Vec<Configuration> = members
            .iter()
            .map(|&drop| {
                let rest: Vec<usize> = members.iter().copied().filter(|&m| m != drop).collect();
                s.coll.subset(&rest).configuration()
            })
            .collect();
        let minimal: Vec<DifferenceEquality> = cfg
            .implied_on_support()
            .into_iter()
            .filter(|e| smaller.iter().all(|c| !c.implies(e)))
            .collect();
        if minimal.len() > 1 {
            return false;
        }
        found.extend(minimal.into_iter().map(|e| (members.clone(), e)));
    }
    found.sort();
    let mut solved: Vec<(Vec<usize>, DifferenceEquality)> =
        listed.iter().map(|m| (m.members.clone(), m.produced)).collect();
    solved.sort();
    found == solved
}

fn pairs_share_few(s: &Sample) -> bool {
    let implied = s.cfg.implied_on_support();
    for (a, x) in implied.iter().enumerate() {
        for y in &implied[a + 1..] {
            let shared = x.variables().iter().filter(|v| y.involves(**v)).count();
            let al = alignment_unchecked(x, y);
            if shared > 2 || (al.is_difference() && al.is_sum()) {
                return false;
            }
        }
    }
    true
}

/// Difference-alignment graph on members plus produced, built directly and
/// compared with [`g3_graph`].
fn is_path(s: &Sample, t: &MinimalImplication) -> bool {
    let mut v = s.equalities(&t.members);
    v.push(t.produced);
    let mut degree = [0usize; 4];
    let mut edges = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            if alignment_unchecked(&v[a], &v[b]).is_difference() {
                degree[a] += 1;
                degree[b] += 1;
                edges.push((a, b));
            }
        }
    }
    // Three edges on four vertices, none of degree 3, and connected.
    let mut comp = [0usize, 1, 2, 3];
    for &(a, b) in &edges {
        let (ra, rb) = (comp[a], comp[b]);
        for c in comp.iter_mut() {
            if *c == rb {
                *c = ra;
            }
        }
    }
    let direct = edges.len() == 3 && degree.iter().all(|&d| (1..=2).contains(&d)) && comp.iter().all(|&c| c == comp[0]);
    let members = [v[0], v[1], v[2]];
    direct && g3_graph(&members, &t.produced).is_ok()
}

fn pairwise_disjoint(ts: &[&MinimalImplication]) -> bool {
    for (a, x) in ts.iter().enumerate() {
        for y in &ts[a + 1..] {
            if x.members.iter().any(|m| y.members.contains(m)) {
                return false;
            }
        }
    }
    true
}

fn seven_variable_triple_ok(s: &Sample, t: &MinimalImplication) -> bool {
    let mut triples = Vec::new();
    for skip in 0..4 {
        let three: Vec<usize> = (0..4).filter(|&j| j != skip).map(|j| t.members[j]).collect();
        if variable_count(&s.equalities(&three)) == 7 {
            triples.push((three, t.members[skip]));
        }
    }
    match triples.len() {
        0 => true,
        1 => {
            let (three, fourth) = &triples[0];
            let sub = s.coll.subset(three);
            let Ok(produced) = find_n_implications(&sub, 3) else { return false };
            produced.len() == 1
                && produced[0].members.len() == 3
                && alignment_unchecked(&produced[0].produced, &s.coll.equalities()[*fourth]).is_sum()
        }
        _ => false,
    }
}

/// Independent sets of up to three implied equalities touch at least
/// `2t + 1` variables.
fn light_alternative_ok(s: &Sample) -> bool {
    const MAX_IMPLIED: usize = 30;
    let mut eqs = s.cfg.implied_on_support();
    if eqs.len() > MAX_IMPLIED {
        eqs = s.coll.equalities().to_vec();
    }
    let n = eqs.len();
    for a in 0..n {
        if variable_count(&eqs[a..=a]) < 3 {
            return false;
        }
        for b in a + 1..n {
            let two = [eqs[a], eqs[b]];
            if independent(&two) && variable_count(&two) < 5 {
                return false;
            }
            for c in b + 1..n {
                let three = [eqs[a], eqs[b], eqs[c]];
                if independent(&three) && variable_count(&three) < 7 {
                    return false;
                }
            }
        }
    }
    true
}

fn repeated_sums_family(options: &VerifyOptions, report: &mut LemmaReport) -> Result<()> {
    if options.samples == 0 {
        return Ok(());
    }
    let hand = PointSet::from_integers([0, 1, 2, 3]);
    let c = check_repeated_sums(&hand)?;
    report.record(c.holds() && c.energy == 44 && c.m == 4, || points_of(&hand));
    let sets = par::map_range(options.samples, |i| {
        let mut rng = rng_for(options.seed ^ 0x5EED_0001, i as u64);
        let n = rng.gen_range(2..=MAX_SET_SIZE);
        let ranges = [n, 2 * n, n * n, 1_000_000];
        let range = ranges[rng.gen_range(0..ranges.len())];
        let xs: Vec<i64> = sample(&mut rng, range, n).into_iter().map(|x| x as i64).collect();
        let set = PointSet::from_integers(xs);
        let ok = check_repeated_sums(&set).map(|c| c.holds());
        (set, ok)
    });
    for (set, ok) in sets {
        report.record(ok?, || points_of(&set));
    }
    Ok(())
}

fn cube_family(options: &VerifyOptions, report: &mut LemmaReport) -> Result<()> {
    let cubes = par::map_range(options.samples, |i| {
        let mut rng = rng_for(options.seed ^ 0x5EED_0002, i as u64);
        let s = rng.gen_range(1..=3usize);
        let t = rng.gen_range(1..=3usize);
        let spread: i64 = if rng.gen_bool(0.5) { 10 } else { 1000 };
        let total = rng.gen_range(0..=2 * spread);
        let low: Vec<i64> = (0..s).map(|_| rng.gen_range(0..=spread)).collect();
        let mut centers: Vec<i64> = low.clone();
        centers.extend(low.iter().map(|a| total - a));
        let steps: Vec<i64> = (0..t - 1).map(|_| rng.gen_range(1..=spread)).collect();
        let cube = CubeStructure {
            s,
            t,
            centers: centers.into_iter().map(|x| BigRational::from_integer(x.into())).collect(),
            steps: steps.into_iter().map(|x| BigRational::from_integer(x.into())).collect(),
        };
        let set = PointSet::new(cube.expansion());
        let ok = distinct_differences(&set) as u128 <= cube_difference_bound(s as u64, t as u32);
        (set, ok)
    });
    for (set, ok) in cubes {
        report.record(ok, || points_of(&set));
    }
    Ok(())
}

fn points_of(set: &PointSet) -> Counterexample {
    Counterexample::Points {
        points: set.points().iter().map(format_rational).collect(),
    }
}
