//! Exhaustive search for Burau-kernel elements among commutators of twists.
//!
//! For each conjugating word `ψ` the candidate is `[ψ⁻¹·core_a·ψ, core_b]`.
//! A filter discards `ψ` whose twist cannot commute with `core_b` under
//! Burau; survivors are verified and the certified ones reported.

use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::artin::{act, conjugate_equal, generator_images, FreeWord};
use crate::braid::{BraidError, BraidWord, Letter};
use crate::burau::{burau, BurauMatrix, Variant};
use crate::disc::{pairing, parse_arcs, DiscError, EndpointTag, PolylineArc};
use crate::fixtures;
use crate::kernel::{boundary_twist_word, commuting_check, verify_kernel, KernelReport};
use crate::laurent::LaurentPoly;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error("search would examine {count} candidates, over the limit of {limit}")]
    TooManyCandidates { count: u128, limit: u128 },
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error("noodle index {j} is invalid: {reason}")]
    BadNoodle { j: usize, reason: String },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FilterKind {
    Pairing,
    Commute,
    None,
}

impl std::str::FromStr for FilterKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pairing" => Ok(FilterKind::Pairing),
            "commute" => Ok(FilterKind::Commute),
            "none" => Ok(FilterKind::None),
            other => Err(format!("unknown filter `{other}` (pairing | commute | none)")),
        }
    }
}

impl std::fmt::Display for FilterKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FilterKind::Pairing => "pairing",
            FilterKind::Commute => "commute",
            FilterKind::None => "none",
        })
    }
}

/// Generators in enumeration order: `σ1, σ1⁻¹, σ2, σ2⁻¹, ...`.
fn generators(n: usize) -> Vec<Letter> {
    (1..n).flat_map(|i| [Letter::pos(i), Letter::neg(i)]).collect()
}

/// Whether `next` may follow `last`. Free reduction is always applied; with
/// `commuting` set, far-commuting neighbours must appear in increasing index
/// order.
fn may_follow(last: Option<Letter>, next: Letter, commuting: bool) -> bool {
    match last {
        None => true,
        Some(l) if l.is_inverse_of(next) => false,
        Some(l) => !(commuting && l.index >= next.index + 2),
    }
}

/// Depth-first preorder over freely reduced words of length at most
/// `maxlen`, starting from `prefix`.
pub struct ConjugatorStream {
    n: usize,
    maxlen: usize,
    commuting: bool,
    gens: Vec<Letter>,
    stack: Vec<Vec<Letter>>,
}

impl Iterator for ConjugatorStream {
    type Item = BraidWord;

    fn next(&mut self) -> Option<BraidWord> {
        let word = self.stack.pop()?;
        if word.len() < self.maxlen {
            for &g in self.gens.iter().rev() {
                if may_follow(word.last().copied(), g, self.commuting) {
                    let mut child = word.clone();
                    child.push(g);
                    self.stack.push(child);
                }
            }
        }
        Some(BraidWord::new(self.n, word).expect("generated letters are in range"))
    }
}

/// The subtree of words extending `prefix` (itself included).
pub fn enumerate_from(n: usize, maxlen: usize, prefix: Vec<Letter>, commuting: bool) -> ConjugatorStream {
    let stack = if prefix.len() <= maxlen { vec![prefix] } else { Vec::new() };
    ConjugatorStream { n, maxlen, commuting, gens: generators(n), stack }
}

/// All conjugating words: `ε` first, then each first-letter subtree.
pub fn enumerate_conjugators(n: usize, maxlen: usize, commuting: bool) -> ConjugatorStream {
    enumerate_from(n, maxlen, Vec::new(), commuting)
}

/// Number of words [`enumerate_conjugators`] yields.
pub fn count_conjugators(n: usize, maxlen: usize, commuting: bool) -> u128 {
    let gens = generators(n);
    // ends[k] = number of words of the current length ending in gens[k].
    let mut ends: Vec<u128> = vec![1; gens.len()];
    let mut total: u128 = 1;
    for len in 1..=maxlen {
        if len > 1 {
            ends = gens
                .iter()
                .map(|&g| {
                    gens.iter()
                        .zip(&ends)
                        .filter(|(&l, _)| may_follow(Some(l), g, commuting))
                        .map(|(_, &c)| c)
                        .fold(0u128, u128::saturating_add)
                })
                .collect();
        }
        total = ends.iter().fold(total, |acc, &c| acc.saturating_add(c));
    }
    total
}

/// The pairing of `ψ(α₀)` against the noodle `p0 → q_j`, computed from
/// the reduced Burau matrix of `ψ`, where `α₀` is the straight arc
/// `q1 → q2`.
///
/// The entry formula is fitted against the geometric pairing on the
/// bundled calibration arcs; obtain one through [`calibrate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CalibratedFunctional {
    pub mirror: bool,
    pub invert_t: bool,
    /// Coefficient of row `j-1` of the first column.
    pub a: LaurentPoly,
    /// Coefficient of row `j` of the first column.
    pub b: LaurentPoly,
    /// How many candidate formulas fit the calibration data.
    pub fits: usize,
    pub calibration_points: usize,
}

fn mirror_word(w: &BraidWord) -> BraidWord {
    let letters = w.letters().iter().map(|l| l.inverse()).collect();
    BraidWord::new(w.n(), letters).expect("same indices")
}

/// Decodes a calibration arc name: `s<i>` is `σ_i`, `S<i>` its inverse,
/// `e` the identity.
fn word_from_arc_name(name: &str, n: usize) -> Result<BraidWord, SearchError> {
    let bad = || SearchError::Calibration(format!("cannot read a braid word from arc name `{name}`"));
    if name == "e" {
        return Ok(BraidWord::identity(n));
    }
    let mut letters = Vec::new();
    let chars: Vec<char> = name.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let sign = match chars[k] {
            's' => 1,
            'S' => -1,
            _ => return Err(bad()),
        };
        let start = k + 1;
        k = start;
        while k < chars.len() && chars[k].is_ascii_digit() {
            k += 1;
        }
        let index: usize = chars[start..k].iter().collect::<String>().parse().map_err(|_| bad())?;
        letters.push(Letter { index, sign });
    }
    Ok(BraidWord::new(n, letters)?)
}

/// Endpoints of `ψ(α₀)`.
pub fn moved_endpoints(psi: &BraidWord) -> (usize, usize) {
    let p = psi.permutation();
    (p.apply(1), p.apply(2))
}

fn column_combination(m: &BurauMatrix, j: usize, a: &LaurentPoly, b: &LaurentPoly, invert: bool) -> LaurentPoly {
    let entry = |row: usize| -> LaurentPoly {
        let e = m.get(row - 1, 0);
        if invert { e.invert_t() } else { e.clone() }
    };
    let mut f = LaurentPoly::zero();
    if j >= 2 && !a.is_zero() {
        f += &(a * &entry(j - 1));
    }
    if j < m.size() + 1 && !b.is_zero() {
        f += &(b * &entry(j));
    }
    f
}

fn one_minus_t() -> LaurentPoly {
    LaurentPoly::from_terms([(0, 1), (1, -1)])
}

struct CalibrationPoint {
    word: BraidWord,
    j: usize,
    geometric: LaurentPoly,
}

fn calibration_points() -> Result<Vec<CalibrationPoint>, SearchError> {
    let set = parse_arcs(fixtures::CALIBRATION)?;
    let n = set.model.n;
    let mut out = Vec::new();
    for arc in &set.arcs {
        let word = word_from_arc_name(&arc.name, n)?;
        let (e1, e2) = moved_endpoints(&word);
        let tags = [EndpointTag::Puncture(e1), EndpointTag::Puncture(e2)];
        if !(tags.contains(&arc.start) && tags.contains(&arc.end)) {
            return Err(SearchError::Calibration(format!("arc `{}` does not join q{e1} and q{e2}", arc.name)));
        }
        for j in 1..=n {
            if j == e1 || j == e2 {
                continue;
            }
            let noodle = PolylineArc::straight(format!("N{j}"), EndpointTag::Basepoint, EndpointTag::Puncture(j));
            let geometric = pairing(&set.model, arc, &noodle)?.value;
            out.push(CalibrationPoint { word: word.clone(), j, geometric });
        }
    }
    Ok(out)
}

/// All candidate formulas consistent with the calibration arcs, in a fixed
/// order. Each is `(mirror, invert_t, a, b)`.
pub fn calibration_fits() -> Result<Vec<(bool, bool, LaurentPoly, LaurentPoly)>, SearchError> {
    let points = calibration_points()?;
    let mut units = vec![LaurentPoly::zero()];
    for k in -2..=2 {
        units.push(LaurentPoly::monomial(k, 1));
        units.push(LaurentPoly::monomial(k, -1));
    }
    let target: Vec<LaurentPoly> = points.iter().map(|p| &p.geometric * &one_minus_t()).collect();
    let mut fits = Vec::new();
    for mirror in [false, true] {
        let mats: Vec<BurauMatrix> = points
            .iter()
            .map(|p| burau(&if mirror { mirror_word(&p.word) } else { p.word.clone() }, Variant::Reduced))
            .collect();
        for invert in [false, true] {
            for a in &units {
                for b in &units {
                    if a.is_zero() && b.is_zero() {
                        continue;
                    }
                    let ok = points.iter().zip(&mats).zip(&target).all(|((p, m), t)| {
                        column_combination(m, p.j, a, b, invert).unit_equivalent(t)
                    });
                    if ok {
                        fits.push((mirror, invert, a.clone(), b.clone()));
                    }
                }
            }
        }
    }
    Ok(fits)
}

/// Fits the entry formula and picks the unmirrored, uninverted fit with
/// `a = 1` when there is one.
pub fn calibrate() -> Result<CalibratedFunctional, SearchError> {
    let fits = calibration_fits()?;
    let points = calibration_points()?.len();
    let chosen = fits
        .iter()
        .find(|(m, i, a, _)| !m && !i && a.is_one())
        .or_else(|| fits.first())
        .ok_or_else(|| SearchError::Calibration("no candidate formula matches the geometric pairings".into()))?;
    Ok(CalibratedFunctional {
        mirror: chosen.0,
        invert_t: chosen.1,
        a: chosen.2.clone(),
        b: chosen.3.clone(),
        fits: fits.len(),
        calibration_points: points,
    })
}

impl CalibratedFunctional {
    /// Raw combination `f`, equal to `(1 - t)` times the pairing up to unit.
    pub fn raw(&self, psi: &BraidWord, j: usize) -> Result<LaurentPoly, SearchError> {
        let n = psi.n();
        if j == 0 || j > n {
            return Err(SearchError::BadNoodle { j, reason: format!("expected 1..={n}") });
        }
        let (e1, e2) = moved_endpoints(psi);
        if j == e1 || j == e2 {
            return Err(SearchError::BadNoodle { j, reason: format!("q{j} is an endpoint of the moved arc") });
        }
        let w = if self.mirror { mirror_word(psi) } else { psi.clone() };
        Ok(column_combination(&burau(&w, Variant::Reduced), j, &self.a, &self.b, self.invert_t))
    }

    pub fn pairing(&self, psi: &BraidWord, j: usize) -> Result<LaurentPoly, SearchError> {
        let f = self.raw(psi, j)?;
        f.div_one_minus_t()
            .ok_or_else(|| SearchError::Calibration(format!("{f} is not divisible by 1 - t")))
    }
}

static CALIBRATION: OnceLock<Result<CalibratedFunctional, String>> = OnceLock::new();

/// The calibrated functional, fitted once per process.
pub fn calibrated() -> Result<&'static CalibratedFunctional, SearchError> {
    CALIBRATION
        .get_or_init(|| calibrate().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| SearchError::Calibration(e.clone()))
}

/// Pairing of `ψ(q1 → q2)` with the noodle to `q_j`, up to a unit.
pub fn pairing_functional(psi: &BraidWord, j: usize) -> Result<LaurentPoly, SearchError> {
    calibrated()?.pairing(psi, j)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub n: usize,
    pub max_conjugator_length: usize,
    pub core_a: BraidWord,
    pub core_b: BraidWord,
    pub filter: FilterKind,
    /// Worker threads; 0 uses rayon's default.
    pub jobs: usize,
    /// Skip far-commuting neighbours out of index order.
    pub commuting_pruning: bool,
    /// Extra conjugators examined before the enumeration.
    pub seeds: Vec<BraidWord>,
    pub max_candidates: u128,
    #[serde(skip)]
    pub checkpoint: Option<PathBuf>,
}

pub const DEFAULT_MAX_CANDIDATES: u128 = 100_000_000;

impl SearchConfig {
    /// Cores `σ1` and the boundary twist, commute filter.
    pub fn new(n: usize, max_conjugator_length: usize) -> Result<Self, SearchError> {
        Ok(Self {
            n,
            max_conjugator_length,
            core_a: BraidWord::parse("s1", n)?,
            core_b: boundary_twist_word(n)?,
            filter: FilterKind::Commute,
            jobs: 0,
            commuting_pruning: false,
            seeds: Vec::new(),
            max_candidates: DEFAULT_MAX_CANDIDATES,
            checkpoint: None,
        })
    }

    pub fn with_filter(mut self, filter: FilterKind) -> Self {
        self.filter = filter;
        self
    }

    /// Whether the pairing functional decides the filter exactly: the cores
    /// must be `σ1` and the boundary twist.
    fn pairing_applies(&self) -> bool {
        self.core_a.letters() == [Letter::pos(1)]
            && boundary_twist_word(self.n).is_ok_and(|b| b == self.core_b)
    }

    pub fn effective_filter(&self) -> FilterKind {
        match self.filter {
            FilterKind::Pairing if !self.pairing_applies() => FilterKind::Commute,
            f => f,
        }
    }
}

/// A kernel element found by the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certified {
    /// Position in the candidate stream (seeds first).
    pub index: u64,
    pub conjugator: BraidWord,
    pub twist: BraidWord,
    pub report: KernelReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub max_conjugator_length: usize,
    pub filter: FilterKind,
    pub effective_filter: FilterKind,
    pub commuting_pruning: bool,
    pub core_a: BraidWord,
    pub core_b: BraidWord,
    pub seeds: usize,
    pub candidates_examined: u64,
    pub filter_survivors: u64,
    pub duplicates_removed: u64,
    pub certified: Vec<Certified>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Default)]
struct Outcome {
    examined: u64,
    survivors: u64,
    /// Local index within the unit, conjugator, twist, report.
    found: Vec<(u64, BraidWord, BraidWord, KernelReport)>,
}

impl Outcome {
    fn absorb(&mut self, other: Outcome) {
        let offset = self.examined;
        self.examined += other.examined;
        self.survivors += other.survivors;
        self.found.extend(other.found.into_iter().map(|(i, c, t, r)| (i + offset, c, t, r)));
    }
}

struct Evaluator<'a> {
    cfg: &'a SearchConfig,
    filter: FilterKind,
    core_b_matrix: BurauMatrix,
    functional: Option<&'static CalibratedFunctional>,
}

impl<'a> Evaluator<'a> {
    fn new(cfg: &'a SearchConfig) -> Result<Self, SearchError> {
        let filter = cfg.effective_filter();
        let functional = if filter == FilterKind::Pairing { Some(calibrated()?) } else { None };
        Ok(Self { cfg, filter, core_b_matrix: burau(&cfg.core_b, Variant::Reduced), functional })
    }

    fn passes(&self, psi: &BraidWord, twist: &BraidWord) -> bool {
        match self.filter {
            FilterKind::None => true,
            FilterKind::Commute => burau(twist, Variant::Reduced).commutes_with(&self.core_b_matrix),
            FilterKind::Pairing => {
                let inv = psi.inverse();
                match self.functional.expect("calibrated").pairing(&inv, self.cfg.n) {
                    Ok(p) => p.is_zero(),
                    // The moved arc ends at q_n; decide by the matrices instead.
                    Err(_) => burau(twist, Variant::Reduced).commutes_with(&self.core_b_matrix),
                }
            }
        }
    }

    fn evaluate(&self, words: impl Iterator<Item = BraidWord>) -> Result<Outcome, SearchError> {
        let mut out = Outcome::default();
        for psi in words {
            let local = out.examined;
            out.examined += 1;
            let twist = self.cfg.core_a.conjugate_by(&psi)?;
            if !self.passes(&psi, &twist) {
                continue;
            }
            out.survivors += 1;
            let candidate = BraidWord::commutator(&twist, &self.cfg.core_b)?;
            let report = verify_kernel(&candidate);
            if report.certified {
                out.found.push((local, psi, twist, report));
            }
        }
        Ok(out)
    }
}

/// One checkpoint group: group 0 holds the seeds and the empty word; group
/// `g > 0` is the subtree under the `g`-th generator.
fn group_units(cfg: &SearchConfig, group: usize) -> Vec<(Vec<Letter>, bool)> {
    let gens = generators(cfg.n);
    if group == 0 {
        return vec![(Vec::new(), false)];
    }
    if cfg.max_conjugator_length == 0 {
        return Vec::new();
    }
    let first = gens[group - 1];
    let mut units = vec![(vec![first], false)];
    if cfg.max_conjugator_length >= 2 {
        for &g in &gens {
            if may_follow(Some(first), g, cfg.commuting_pruning) {
                units.push((vec![first, g], true));
            }
        }
    }
    units
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Checkpoint {
    n: usize,
    max_conjugator_length: usize,
    filter: FilterKind,
    commuting_pruning: bool,
    core_a: String,
    core_b: String,
    seeds: Vec<String>,
    completed_groups: usize,
    examined: u64,
    survivors: u64,
    /// Stream index and conjugator of every certified element so far.
    found: Vec<(u64, String)>,
}

impl Checkpoint {
    fn matches(&self, cfg: &SearchConfig) -> bool {
        self.n == cfg.n
            && self.max_conjugator_length == cfg.max_conjugator_length
            && self.filter == cfg.filter
            && self.commuting_pruning == cfg.commuting_pruning
            && self.core_a == cfg.core_a.to_string()
            && self.core_b == cfg.core_b.to_string()
            && self.seeds == cfg.seeds.iter().map(ToString::to_string).collect::<Vec<_>>()
    }
}

/// Progress after each completed group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub completed_groups: usize,
    pub total_groups: usize,
    pub examined: u64,
    pub survivors: u64,
    pub certified: usize,
}

pub fn run_search(cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    run_search_with_progress(cfg, |_| {})
}

pub fn run_search_with_progress(
    cfg: &SearchConfig,
    mut progress: impl FnMut(Progress),
) -> Result<SearchResult, SearchError> {
    let started = Instant::now();
    for w in std::iter::once(&cfg.core_a).chain([&cfg.core_b]).chain(&cfg.seeds) {
        if w.n() != cfg.n {
            return Err(BraidError::StrandMismatch { left: cfg.n, right: w.n() }.into());
        }
    }
    let total = count_conjugators(cfg.n, cfg.max_conjugator_length, cfg.commuting_pruning) + cfg.seeds.len() as u128;
    if total > cfg.max_candidates {
        return Err(SearchError::TooManyCandidates { count: total, limit: cfg.max_candidates });
    }
    let eval = Evaluator::new(cfg)?;
    let total_groups = 1 + generators(cfg.n).len();
    let mut acc = Outcome::default();
    let mut start_group = 0;

    if let Some(path) = &cfg.checkpoint {
        if path.exists() {
            let cp: Checkpoint = serde_json::from_str(&std::fs::read_to_string(path)?)
                .map_err(|e| SearchError::Checkpoint(format!("{}: {e}", path.display())))?;
            if !cp.matches(cfg) {
                return Err(SearchError::Checkpoint(format!("{} was written for a different search", path.display())));
            }
            start_group = cp.completed_groups;
            acc.examined = cp.examined;
            acc.survivors = cp.survivors;
            for (index, text) in cp.found {
                let psi = BraidWord::parse(&text, cfg.n)?;
                let twist = cfg.core_a.conjugate_by(&psi)?;
                let report = verify_kernel(&BraidWord::commutator(&twist, &cfg.core_b)?);
                if !report.certified {
                    return Err(SearchError::Checkpoint(format!("stored element {text} does not re-verify")));
                }
                acc.found.push((index, psi, twist, report));
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| SearchError::Checkpoint(format!("thread pool: {e}")))?;

    for group in start_group..total_groups {
        let units = group_units(cfg, group);
        let outcomes: Vec<Result<Outcome, SearchError>> = pool.install(|| {
            units
                .par_iter()
                .map(|(prefix, subtree)| {
                    if *subtree {
                        eval.evaluate(enumerate_from(cfg.n, cfg.max_conjugator_length, prefix.clone(), cfg.commuting_pruning))
                    } else if group == 0 {
                        let seeds = cfg.seeds.iter().cloned();
                        eval.evaluate(seeds.chain(std::iter::once(BraidWord::identity(cfg.n))))
                    } else {
                        eval.evaluate(std::iter::once(BraidWord::new(cfg.n, prefix.clone()).expect("valid prefix")))
                    }
                })
                .collect()
        });
        for o in outcomes {
            acc.absorb(o?);
        }
        if let Some(path) = &cfg.checkpoint {
            let cp = Checkpoint {
                n: cfg.n,
                max_conjugator_length: cfg.max_conjugator_length,
                filter: cfg.filter,
                commuting_pruning: cfg.commuting_pruning,
                core_a: cfg.core_a.to_string(),
                core_b: cfg.core_b.to_string(),
                seeds: cfg.seeds.iter().map(ToString::to_string).collect(),
                completed_groups: group + 1,
                examined: acc.examined,
                survivors: acc.survivors,
                found: acc.found.iter().map(|(i, c, _, _)| (*i, c.to_string())).collect(),
            };
            let text = serde_json::to_string_pretty(&cp).map_err(|e| SearchError::Checkpoint(e.to_string()))?;
            std::fs::write(path, text)?;
        }
        progress(Progress {
            completed_groups: group + 1,
            total_groups,
            examined: acc.examined,
            survivors: acc.survivors,
            certified: acc.found.len(),
        });
    }

    let (certified, duplicates) = dedupe(cfg, acc.found);
    Ok(SearchResult {
        n: cfg.n,
        max_conjugator_length: cfg.max_conjugator_length,
        filter: cfg.filter,
        effective_filter: cfg.effective_filter(),
        commuting_pruning: cfg.commuting_pruning,
        core_a: cfg.core_a.clone(),
        core_b: cfg.core_b.clone(),
        seeds: cfg.seeds.len(),
        candidates_examined: acc.examined,
        filter_survivors: acc.survivors,
        duplicates_removed: duplicates,
        certified,
        elapsed: started.elapsed(),
    })
}

/// Keeps the first of each family of equal twists. For a single-generator
/// core `σ_i` the twist is determined by the free homotopy class of the
/// image of `x_i x_{i+1}`; other cores are compared by their full action.
fn dedupe(cfg: &SearchConfig, found: Vec<(u64, BraidWord, BraidWord, KernelReport)>) -> (Vec<Certified>, u64) {
    let single = match cfg.core_a.letters() {
        [l] => Some(l.index),
        _ => None,
    };
    let key = |psi: &BraidWord, twist: &BraidWord| -> Vec<FreeWord> {
        match single {
            Some(i) => {
                let loop_word = FreeWord::from_letters([(i, 1), (i + 1, 1)]);
                vec![act(&psi.inverse(), &loop_word)]
            }
            None => generator_images(twist),
        }
    };
    let mut kept: Vec<(Vec<FreeWord>, Certified)> = Vec::new();
    let mut duplicates = 0;
    for (index, psi, twist, report) in found {
        let k = key(&psi, &twist);
        let seen = kept.iter().any(|(other, _)| match single {
            Some(_) => conjugate_equal(&other[0], &k[0]),
            None => *other == k,
        });
        if seen {
            duplicates += 1;
        } else {
            kept.push((k, Certified { index, conjugator: psi, twist, report }));
        }
    }
    (kept.into_iter().map(|(_, c)| c).collect(), duplicates)
}

/// The commute filter on its own: does `ψ⁻¹·core_a·ψ` commute with `core_b`
/// under reduced Burau?
pub fn commute_filter(psi: &BraidWord, cfg: &SearchConfig) -> Result<bool, SearchError> {
    Ok(commuting_check(&cfg.core_a.conjugate_by(psi)?, &cfg.core_b))
}

/// A conjugator reproducing the built-in `n = 5` arc pair with cores `σ1`
/// and the boundary twist.
///
/// With `h = (σ1σ2σ3σ4)³` one has `h σ1 h⁻¹ = σ4`, so `ψ = h⁻¹ ψ1 ψ2⁻¹`
/// gives `ψ⁻¹ σ1 ψ = ψ2 (ψ1⁻¹ σ4 ψ1) ψ2⁻¹`; the resulting commutator is the
/// built-in kernel element conjugated by `ψ2⁻¹`.
pub fn builtin_seed(n: usize) -> Option<BraidWord> {
    if n != 5 {
        return None;
    }
    let (a, b) = crate::kernel::builtin_twists(5).ok()?;
    let h = BraidWord::parse("s1 s2 s3 s4", 5).ok()?.pow(3);
    let w = h.inverse().concat(&a.conjugator).ok()?.concat(&b.conjugator.inverse()).ok()?;
    Some(w.free_reduce())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artin::is_trivial_braid;
    use crate::testutil::arb_word;
    use proptest::prelude::*;

    fn w(s: &str, n: usize) -> BraidWord {
        BraidWord::parse(s, n).unwrap()
    }

    #[test]
    fn enumeration_counts_and_order() {
        let words: Vec<String> = enumerate_conjugators(3, 1, false).map(|w| w.to_string()).collect();
        assert_eq!(words, ["e", "s1", "s1^-1", "s2", "s2^-1"]);
        assert_eq!(enumerate_conjugators(3, 2, false).count(), 17);
        let two: Vec<String> = enumerate_conjugators(3, 2, false).take(5).map(|w| w.to_string()).collect();
        assert_eq!(two, ["e", "s1", "s1^2", "s1 s2", "s1 s2^-1"]);
        for (n, len) in [(3, 6), (4, 4), (5, 3)] {
            for pruning in [false, true] {
                let c = enumerate_conjugators(n, len, pruning).count() as u128;
                assert_eq!(c, count_conjugators(n, len, pruning));
            }
        }
        assert!(count_conjugators(4, 4, true) < count_conjugators(4, 4, false));
    }

    #[test]
    fn enumeration_is_reduced_and_distinct() {
        let all: Vec<BraidWord> = enumerate_conjugators(4, 4, false).collect();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|w| *w == w.free_reduce()));
        // Free-reduction pruning alone loses nothing: every reduced word of
        // length 3 appears.
        assert_eq!(all.iter().filter(|w| w.len() == 3).count(), 6 * 5 * 5);
    }

    #[test]
    fn restart_from_prefix_matches_full_stream() {
        let full: Vec<BraidWord> = enumerate_conjugators(3, 5, false).collect();
        let mut pieced: Vec<BraidWord> = Vec::new();
        let cfg = SearchConfig::new(3, 5).unwrap();
        for group in 0..5 {
            for (prefix, subtree) in group_units(&cfg, group) {
                if subtree {
                    pieced.extend(enumerate_from(3, 5, prefix, false));
                } else {
                    pieced.push(BraidWord::new(3, prefix).unwrap());
                }
            }
        }
        assert_eq!(pieced, full);
    }

    #[test]
    fn calibration_selects_expected_formula() {
        let f = calibrate().unwrap();
        assert!(!f.mirror && !f.invert_t);
        assert_eq!(f.a, LaurentPoly::one());
        assert_eq!(f.b, LaurentPoly::monomial(-1, -1));
        assert!(f.fits > 1);
        assert_eq!(f.calibration_points, 16);
    }

    #[test]
    fn calibrated_functional_matches_every_fixture() {
        let points = calibration_points().unwrap();
        for p in points {
            let got = pairing_functional(&p.word, p.j).unwrap();
            assert!(got.unit_equivalent(&p.geometric), "{} j={}: {got} vs {}", p.word, p.j, p.geometric);
        }
    }

    #[test]
    fn pairing_functional_examples() {
        assert!(pairing_functional(&BraidWord::identity(5), 4).unwrap().is_zero());
        assert!(!pairing_functional(&w("s2^-1", 5), 2).unwrap().is_zero());
        assert!(pairing_functional(&w("s2", 5), 3).is_err());
        assert!(pairing_functional(&BraidWord::identity(5), 1).is_err());
        assert!(pairing_functional(&BraidWord::identity(5), 6).is_err());
        let seed = builtin_seed(5).unwrap();
        assert!(pairing_functional(&seed.inverse(), 5).unwrap().is_zero());
    }

    #[test]
    fn all_fits_agree_up_to_symmetry() {
        let fits = calibration_fits().unwrap();
        let words: Vec<BraidWord> = enumerate_conjugators(4, 3, false).collect();
        for psi in &words {
            let (e1, e2) = moved_endpoints(psi);
            for j in (1..=4).filter(|&j| j != e1 && j != e2) {
                let reference = calibrated().unwrap().raw(psi, j).unwrap();
                for (mirror, invert, a, b) in &fits {
                    let m = burau(&if *mirror { mirror_word(psi) } else { psi.clone() }, Variant::Reduced);
                    let f = column_combination(&m, j, a, b, *invert);
                    assert!(
                        f.unit_equivalent(&reference) || f.unit_equivalent(&reference.invert_t()),
                        "{psi} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn commute_filter_examples() {
        let cfg = SearchConfig::new(5, 0).unwrap();
        assert!(commute_filter(&BraidWord::identity(5), &cfg).unwrap());
        // Twists inside the first four punctures commute with the boundary twist.
        assert!(commute_filter(&w("s2 s3^-1", 5), &cfg).unwrap());
        // (σ1σ2σ3σ4)⁻³ carries the σ1 twist to σ4, which does not commute.
        assert!(!commute_filter(&w("s1 s2 s3 s4", 5).pow(3).inverse(), &cfg).unwrap());
        assert!(commute_filter(&builtin_seed(5).unwrap(), &cfg).unwrap());
    }

    #[test]
    fn seeded_search_finds_the_built_in_element() {
        let mut cfg = SearchConfig::new(5, 1).unwrap();
        cfg.seeds.push(builtin_seed(5).unwrap());
        for filter in [FilterKind::Commute, FilterKind::Pairing] {
            cfg.filter = filter;
            let res = run_search(&cfg).unwrap();
            assert_eq!(res.effective_filter, filter);
            assert_eq!(res.certified.len(), 1);
            let found = &res.certified[0];
            assert_eq!(found.index, 0);
            // The found twist is ψ2·(twist a)·ψ2⁻¹, so the element is the
            // built-in one conjugated by ψ2⁻¹.
            let (a, b) = crate::kernel::builtin_twists(5).unwrap();
            let expected = crate::kernel::conjugated_twist(&a).unwrap().conjugate_by(&b.conjugator.inverse()).unwrap();
            let relation = found.twist.concat(&expected.inverse()).unwrap();
            assert!(is_trivial_braid(&relation));
            assert_eq!(found.report.word, BraidWord::commutator(&found.twist, &cfg.core_b).unwrap());
        }
    }

    #[test]
    fn small_searches_certify_nothing() {
        for filter in [FilterKind::Commute, FilterKind::Pairing, FilterKind::None] {
            let cfg = SearchConfig::new(3, 4).unwrap().with_filter(filter);
            let res = run_search(&cfg).unwrap();
            assert_eq!(res.candidates_examined as u128, count_conjugators(3, 4, false));
            assert!(res.certified.is_empty());
        }
    }

    #[test]
    fn pairing_survivors_are_commute_survivors() {
        let cfg = SearchConfig::new(4, 3).unwrap();
        let eval_c = Evaluator::new(&cfg).unwrap();
        let pcfg = cfg.clone().with_filter(FilterKind::Pairing);
        let eval_p = Evaluator::new(&pcfg).unwrap();
        let mut pairing_count = 0;
        for psi in enumerate_conjugators(4, 3, false) {
            let twist = cfg.core_a.conjugate_by(&psi).unwrap();
            if eval_p.passes(&psi, &twist) {
                pairing_count += 1;
                assert!(eval_c.passes(&psi, &twist), "{psi}");
            }
        }
        assert!(pairing_count > 0);
    }

    #[test]
    fn pairing_filter_falls_back_for_other_cores() {
        let mut cfg = SearchConfig::new(4, 1).unwrap().with_filter(FilterKind::Pairing);
        cfg.core_a = w("s2", 4);
        assert_eq!(cfg.effective_filter(), FilterKind::Commute);
    }

    #[test]
    fn parallel_width_does_not_change_results() {
        let mut base = SearchConfig::new(4, 3).unwrap();
        base.seeds.push(w("s2 s3^-1", 4));
        let mut one = base.clone();
        one.jobs = 1;
        let mut four = base;
        four.jobs = 4;
        let a = run_search(&one).unwrap();
        let b = run_search(&four).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn resource_limit_is_an_error() {
        let mut cfg = SearchConfig::new(4, 6).unwrap();
        cfg.max_candidates = 1000;
        assert!(matches!(run_search(&cfg), Err(SearchError::TooManyCandidates { .. })));
    }

    #[test]
    fn checkpoint_resume_gives_same_result() {
        let dir = std::env::temp_dir().join(format!("burau-cp-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cp.json");
        let _ = std::fs::remove_file(&path);
        let mut cfg = SearchConfig::new(5, 1).unwrap();
        cfg.seeds.push(builtin_seed(5).unwrap());
        let plain = run_search(&cfg).unwrap();
        cfg.checkpoint = Some(path.clone());
        let first = run_search(&cfg).unwrap();
        assert!(path.exists());
        // Resuming from a finished checkpoint does no new work.
        let again = run_search(&cfg).unwrap();
        assert_eq!(serde_json::to_string(&plain).unwrap(), serde_json::to_string(&first).unwrap());
        assert_eq!(serde_json::to_string(&plain).unwrap(), serde_json::to_string(&again).unwrap());
        let mut other = cfg.clone();
        other.max_conjugator_length = 2;
        assert!(matches!(run_search(&other), Err(SearchError::Checkpoint(_))));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn dedupe_drops_repeated_twists() {
        let mut cfg = SearchConfig::new(5, 0).unwrap();
        let seed = builtin_seed(5).unwrap();
        // σ1 fixes the arc q1 -> q2, so it does not change the twist.
        let same_twist = w("s1", 5).concat(&seed).unwrap();
        cfg.seeds = vec![seed, same_twist];
        let res = run_search(&cfg).unwrap();
        assert_eq!(res.certified.len(), 1);
        assert_eq!(res.duplicates_removed, 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn commute_filter_has_no_false_negatives(psi in arb_word(4, 5)) {
            let cfg = SearchConfig::new(4, 0).unwrap();
            let twist = cfg.core_a.conjugate_by(&psi).unwrap();
            let c = BraidWord::commutator(&twist, &cfg.core_b).unwrap();
            if verify_kernel(&c).burau_trivial {
                prop_assert!(commute_filter(&psi, &cfg).unwrap());
            }
        }

        #[test]
        fn certified_elements_reverify(psi in arb_word(5, 3)) {
            let mut cfg = SearchConfig::new(5, 0).unwrap();
            cfg.seeds = vec![psi];
            let res = run_search(&cfg).unwrap();
            for c in res.certified {
                prop_assert!(verify_kernel(&c.report.word).certified);
            }
        }
    }
}
