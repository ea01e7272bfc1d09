use std::path::{Path, PathBuf};
use std::process::ExitCode;

use burau_core::braid::WORD_GRAMMAR;
use burau_core::disc::{self, ArcSet, DiscError};
use burau_core::kernel::{builtin_kernel_element, verify_kernel, KernelError};
use burau_core::search::{self, FilterKind, SearchConfig, SearchError};
use burau_core::{burau, fixtures, BraidError, BraidWord, Variant};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const FIXTURE_GRAMMAR: &str = "\
arc fixture: first line `disc n=<n>`, then blocks `arc <name> from <q<i>|p0> to <q<j>|p0>` \
followed by vertex lines `<x> <y>` with exact rationals (`p/q` or integer); \
`#` starts a comment";

#[derive(Parser)]
#[command(name = "burau", version, about = "Burau representation, disc pairings and kernel elements")]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Burau matrix of a braid word.
    Burau(BurauArgs),
    /// Lifted intersection pairing of two arcs in a fixture.
    Pairing(PairingArgs),
    /// Check that a word is a nontrivial braid with identity Burau image.
    VerifyKernel(VerifyArgs),
    /// Search commutators of conjugated twists for kernel elements.
    Search(SearchArgs),
    /// Draw the arcs of a fixture as SVG.
    Svg(SvgArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Reduced,
    Unreduced,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Reduced => Variant::Reduced,
            VariantArg::Unreduced => Variant::Unreduced,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    Pairing,
    Commute,
    None,
}

impl From<FilterArg> for FilterKind {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::Pairing => FilterKind::Pairing,
            FilterArg::Commute => FilterKind::Commute,
            FilterArg::None => FilterKind::None,
        }
    }
}

#[derive(Args)]
struct BurauArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    #[arg(long, value_enum, default_value = "reduced")]
    variant: VariantArg,
    /// Also print the matrix at t = 1.
    #[arg(long)]
    t1: bool,
}

#[derive(Args)]
struct PairingArgs {
    /// Fixture file, or a bundled fixture name (d5, d6, calibration).
    #[arg(long)]
    fixture: String,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    /// Write a drawing of both arcs with the crossings marked.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// List every crossing in order along beta.
    #[arg(long)]
    show_crossings: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "element")]
struct ElementArgs {
    /// Use the built-in kernel element for this n (5 or 6).
    #[arg(long, group = "element")]
    paper: bool,
    #[arg(long, group = "element", allow_hyphen_values = true)]
    word: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    element: ElementArgs,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    max_len: usize,
    #[arg(long, value_enum, default_value = "commute")]
    filter: FilterArg,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Resume from and save progress to this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// First twist core (default s1).
    #[arg(long, allow_hyphen_values = true)]
    core_a: Option<String>,
    /// Second twist core (default: the boundary twist).
    #[arg(long, allow_hyphen_values = true)]
    core_b: Option<String>,
    /// Extra conjugator examined before the enumeration (repeatable).
    #[arg(long, allow_hyphen_values = true)]
    seed: Vec<String>,
    /// Seed with the conjugator that reproduces the built-in n = 5 element.
    #[arg(long)]
    builtin_seed: bool,
    /// Skip far-commuting neighbour letters out of index order.
    #[arg(long)]
    commuting_pruning: bool,
    #[arg(long, default_value_t = search::DEFAULT_MAX_CANDIDATES)]
    max_candidates: u128,
}

#[derive(Args)]
struct SvgArgs {
    #[arg(long)]
    fixture: String,
    /// Output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Mark the crossings of this arc pair (alpha, then beta).
    #[arg(long, num_args = 2, value_names = ["ALPHA", "BETA"])]
    crossings: Option<Vec<String>>,
}

/// Failures that end the process, with their exit code.
enum Failure {
    Usage(String, &'static str),
    Runtime(String),
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        Failure::Usage(e.to_string(), WORD_GRAMMAR)
    }
}

impl From<DiscError> for Failure {
    fn from(e: DiscError) -> Self {
        match e {
            DiscError::Io(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string(), FIXTURE_GRAMMAR),
        }
    }
}

impl From<KernelError> for Failure {
    fn from(e: KernelError) -> Self {
        Failure::Usage(e.to_string(), WORD_GRAMMAR)
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Braid(b) => b.into(),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn load_fixture(name: &str) -> Result<ArcSet, Failure> {
    if Path::new(name).exists() {
        return Ok(disc::load_arcs(name)?);
    }
    match fixtures::builtin(name) {
        Some(text) => Ok(disc::parse_arcs(text)?),
        None => Err(Failure::Usage(
            format!("no fixture file `{name}` and no bundled fixture of that name (bundled: {})", fixtures::NAMES.join(", ")),
            FIXTURE_GRAMMAR,
        )),
    }
}

fn cmd_burau(a: BurauArgs, as_json: bool) -> Result<u8, Failure> {
    let word = BraidWord::parse(&a.word, a.n)?;
    let m = burau(&word, a.variant.into());
    if as_json {
        let mut out = json!({ "n": a.n, "word": word, "matrix": m });
        if a.t1 {
            let t1: Vec<Vec<String>> =
                m.specialize_t1().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
            out["t1"] = json!(t1);
        }
        print_json(&out);
    } else {
        println!("{m}");
        if a.t1 {
            println!();
            for row in m.specialize_t1() {
                println!("{}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            }
        }
    }
    Ok(0)
}

fn cmd_pairing(a: PairingArgs, as_json: bool) -> Result<u8, Failure> {
    let set = load_fixture(&a.fixture)?;
    let (alpha, beta) = (set.get(&a.alpha)?, set.get(&a.beta)?);
    let list = disc::crossings(&set.model, alpha, beta)?;
    let value = list.sum();
    let remark = disc::remark_check(&set.model, alpha, beta, &list);
    if let Some(path) = &a.svg {
        disc::export_svg(&set.model, &[alpha, beta], Some(&list), path)?;
    }
    if as_json {
        let mut out = json!({
            "fixture": a.fixture,
            "alpha": a.alpha,
            "beta": a.beta,
            "pairing": value,
            "crossings": list.len(),
            "normalization": disc::NORMALIZATION,
            "remark": remark,
        });
        if a.show_crossings {
            out["crossing_list"] = json!(list.crossings);
        }
        print_json(&out);
    } else {
        println!("{value}");
        println!("crossings: {}", list.len());
        println!("remark: {} checked, {} skipped, {} failed", remark.checked, remark.skipped, remark.failures.len());
        if a.show_crossings {
            for (k, c) in list.iter().enumerate() {
                println!("{:>4}  {:<8} at ({})", k + 1, c.monomial(), c.point);
            }
        }
    }
    Ok(0)
}

fn cmd_verify(a: VerifyArgs, as_json: bool) -> Result<u8, Failure> {
    let word = match a.element.word {
        Some(text) => BraidWord::parse(&text, a.n)?,
        None => builtin_kernel_element(a.n)?,
    };
    let report = verify_kernel(&word);
    if as_json {
        print_json(&report);
    } else {
        println!("{report}");
    }
    Ok(if report.certified { 0 } else { 1 })
}

fn cmd_search(a: SearchArgs, as_json: bool) -> Result<u8, Failure> {
    let mut cfg = SearchConfig::new(a.n, a.max_len)?.with_filter(a.filter.into());
    if let Some(text) = &a.core_a {
        cfg.core_a = BraidWord::parse(text, a.n)?;
    }
    if let Some(text) = &a.core_b {
        cfg.core_b = BraidWord::parse(text, a.n)?;
    }
    if a.builtin_seed {
        let seed = search::builtin_seed(a.n)
            .ok_or_else(|| Failure::Usage(format!("no built-in seed for n = {}", a.n), WORD_GRAMMAR))?;
        cfg.seeds.push(seed);
    }
    for text in &a.seed {
        cfg.seeds.push(BraidWord::parse(text, a.n)?);
    }
    cfg.jobs = a.jobs;
    cfg.commuting_pruning = a.commuting_pruning;
    cfg.max_candidates = a.max_candidates;
    cfg.checkpoint = a.checkpoint;

    let result = search::run_search_with_progress(&cfg, |p| {
        eprintln!(
            "[{}/{}] examined {} survivors {} certified {}",
            p.completed_groups, p.total_groups, p.examined, p.survivors, p.certified
        );
    })?;
    eprintln!("elapsed {:.3}s", result.elapsed.as_secs_f64());

    if as_json {
        print_json(&result);
    } else {
        println!("strands             {}", result.n);
        println!("max length          {}", result.max_conjugator_length);
        println!("cores               {} | {}", result.core_a, result.core_b);
        println!("filter              {} (effective {})", result.filter, result.effective_filter);
        println!("seeds               {}", result.seeds);
        println!("examined            {}", result.candidates_examined);
        println!("filter survivors    {}", result.filter_survivors);
        println!("duplicates removed  {}", result.duplicates_removed);
        println!("certified           {}", result.certified.len());
        for c in &result.certified {
            println!();
            println!("#{} conjugator {}", c.index, c.conjugator);
            println!("{}", c.report);
        }
    }
    Ok(0)
}

fn cmd_svg(a: SvgArgs, as_json: bool) -> Result<u8, Failure> {
    let set = load_fixture(&a.fixture)?;
    let (arcs, list) = match &a.crossings {
        Some(pair) => {
            let (alpha, beta) = (set.get(&pair[0])?, set.get(&pair[1])?);
            (vec![alpha, beta], Some(disc::crossings(&set.model, alpha, beta)?))
        }
        None => (set.arcs.iter().collect(), None),
    };
    let svg = disc::render_svg(&set.model, &arcs, list.as_ref());
    match &a.out {
        Some(path) => {
            std::fs::write(path, &svg)?;
            if as_json {
                print_json(&json!({ "path": path, "bytes": svg.len(), "arcs": arcs.len() }));
            } else {
                println!("wrote {} ({} arcs)", path.display(), arcs.len());
            }
        }
        None if as_json => print_json(&json!({ "svg": svg })),
        None => print!("{svg}"),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            if !usage {
                return ExitCode::SUCCESS;
            }
            eprintln!("\n{WORD_GRAMMAR}");
            return ExitCode::from(2);
        }
    };
    let json = cli.json;
    let outcome = match cli.command {
        Command::Burau(a) => cmd_burau(a, json),
        Command::Pairing(a) => cmd_pairing(a, json),
        Command::VerifyKernel(a) => cmd_verify(a, json),
        Command::Search(a) => cmd_search(a, json),
        Command::Svg(a) => cmd_svg(a, json),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg, grammar)) => {
            eprintln!("error: {msg}\n\n{grammar}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
