use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use necklace_core::cyclic_oracle::cyclic_cohomology;
use necklace_core::graph::{classes_by_edges, select, GraphComplex, GraphOptions};
use necklace_core::necklace::NecklaceSpace;
use necklace_core::report::all_passed;
use necklace_core::scalar::format as fmt_q;
use necklace_core::stringy::StringyCategory;
use necklace_core::{master, suites, Error, FrobeniusAlgebra, NecklaceElement, Report};

#[derive(Parser)]
#[command(name = "necklace", version, about = "Exact checks for cyclic-word bialgebras, master equations and fat-graph complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// RNG seed for randomized suites.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Highest α-order checked.
    #[arg(long, global = true, default_value_t = 3)]
    gmax: i64,
    /// Truncation order: factor cap for exp-check, t-order for bv-suite.
    #[arg(long, global = true)]
    truncation: Option<usize>,
    /// Edge window for graph commands.
    #[arg(long, global = true, default_value_t = 3)]
    jmax: usize,
    /// Vertex window for graph commands; degree bound for cyclic-oracle.
    #[arg(long, global = true)]
    kmax: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON reports to `<dir>/<subcommand>.json`.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate grading, associativity, invariance and nondegeneracy of an algebra.
    FrobeniusCheck { input: PathBuf },
    /// Bracket of the `left` and `right` elements of an input file.
    NecklaceBracket { input: PathBuf },
    /// Cobracket of the `element` of an input file.
    NecklaceCobracket { input: PathBuf },
    /// Master equation for an algebra (via its raised tensor) or a category.
    MasterCheck { input: PathBuf },
    /// `δ_α exp(R/α) = 0` on a finite window.
    ExpCheck { input: PathBuf },
    /// Randomized BV identities.
    BvSuite {
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Deformation ranks against Connes' complex; built-in algebras when no input is given.
    CyclicOracle { input: Option<PathBuf> },
    /// Master equation and composability for a category description.
    StringyValidate { input: PathBuf },
    /// Count (and optionally list) fat graphs by vertices and edges.
    GraphsEnumerate {
        #[arg(long)]
        colored: bool,
        #[arg(long)]
        connected: bool,
        /// Print every orientable graph in exchange form.
        #[arg(long)]
        list: bool,
    },
    /// Homology of the diagonal complexes in degrees below `--jmax`.
    GraphsHomology {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        parity: Option<u8>,
        #[arg(long, default_value_t = 1)]
        alpha: i64,
        #[arg(long)]
        colored: bool,
    },
    /// Every suite at fixed sizes.
    Selftest,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::FrobeniusCheck { .. } => "frobenius-check",
            Command::NecklaceBracket { .. } => "necklace-bracket",
            Command::NecklaceCobracket { .. } => "necklace-cobracket",
            Command::MasterCheck { .. } => "master-check",
            Command::ExpCheck { .. } => "exp-check",
            Command::BvSuite { .. } => "bv-suite",
            Command::CyclicOracle { .. } => "cyclic-oracle",
            Command::StringyValidate { .. } => "stringy-validate",
            Command::GraphsEnumerate { .. } => "graphs-enumerate",
            Command::GraphsHomology { .. } => "graphs-homology",
            Command::Selftest => "selftest",
        }
    }
}

/// Failure to make sense of the input, as opposed to a failed check.
enum Failure {
    Input(anyhow::Error),
    Check(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::Json(_)
            | Error::Io(_)
            | Error::DuplicateGenerator(_)
            | Error::UnknownGenerator(_)
            | Error::DegreeViolation(..)
            | Error::SymmetryConflict(..)
            | Error::MalformedGraph(_) => Failure::Input(e.into()),
            other => Failure::Check(other),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Run = std::result::Result<Vec<Report>, Failure>;

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn field<'a>(doc: &'a Value, key: &str) -> anyhow::Result<&'a Value> {
    doc.get(key).with_context(|| format!("missing field {key:?}"))
}

/// Algebra descriptions carry `generators`; category descriptions carry `objects`.
fn load_category(doc: &Value) -> std::result::Result<StringyCategory, Failure> {
    if doc.get("objects").is_some() {
        Ok(StringyCategory::from_json(doc)?)
    } else {
        Ok(StringyCategory::one_object(&FrobeniusAlgebra::from_json_unchecked(doc)?)?)
    }
}

fn frobenius_check(input: &Path) -> Run {
    let alg = FrobeniusAlgebra::from_json(&read_json(input)?)?;
    let mut r = Report::new("frobenius_check").detail("dimension", alg.space().dim()).detail("products", alg.mult_table().len());
    if !alg.form().is_nondegenerate() {
        r = r.fail("the form is degenerate");
    }
    Ok(vec![r])
}

fn bracket(input: &Path) -> Run {
    let doc = read_json(input)?;
    let alg = FrobeniusAlgebra::from_json(field(&doc, "space")?)?;
    let space = NecklaceSpace::from_form(alg.form());
    let left = NecklaceElement::from_json(&space, field(&doc, "left")?)?;
    let right = NecklaceElement::from_json(&space, field(&doc, "right")?)?;
    let out = left.bracket(&right)?;
    Ok(vec![Report::new("necklace_bracket").detail("terms", out.terms().len()).detail("result", out.to_json())])
}

fn cobracket(input: &Path) -> Run {
    let doc = read_json(input)?;
    let alg = FrobeniusAlgebra::from_json(field(&doc, "space")?)?;
    let space = NecklaceSpace::from_form(alg.form());
    let h = NecklaceElement::from_json(&space, field(&doc, "element")?)?;
    let terms: Vec<Value> = h
        .cobracket()
        .iter()
        .map(|((a, b), c)| json!({"left": a.letters(), "right": b.letters(), "coeff": fmt_q(c)}))
        .collect();
    Ok(vec![Report::new("necklace_cobracket").detail("terms", terms.len()).detail("result", terms)])
}

fn master_check(input: &Path, g: &Global) -> Run {
    let doc = read_json(input)?;
    if doc.get("objects").is_none() {
        let alg = FrobeniusAlgebra::from_json_unchecked(&doc)?;
        let mut reports = suites::master_suite("input", &alg, g.gmax, 1)?;
        reports.retain(|r| !r.check.starts_with("exp_check"));
        return Ok(reports);
    }
    let cat = StringyCategory::from_json(&doc)?;
    Ok(vec![master::check_master_full(&cat.wedge(), cat.r(), g.gmax)])
}

fn exp_check(input: &Path, g: &Global) -> Run {
    let cat = load_category(&read_json(input)?)?;
    let cap = g.truncation.unwrap_or(3);
    Ok(vec![master::exp_closedness_check(&cat.wedge(), cat.r(), g.gmax, cap)?])
}

fn cyclic_oracle(input: Option<&Path>, g: &Global) -> Run {
    let k_max = g.kmax.unwrap_or(3);
    let Some(path) = input else {
        return Ok(suites::oracle_suite(k_max)?);
    };
    let alg = FrobeniusAlgebra::from_json(&read_json(path)?)?;
    let def = master::deformation_cohomology(&alg.to_a_infinity()?, k_max + 1)?;
    let connes = cyclic_cohomology(&alg, k_max);
    let mismatched = (0..=k_max).filter(|k| def.ranks.get(k) != connes.get(k)).count();
    Ok(vec![Report::new("cyclic_oracle")
        .with_truncation(json!({"k_max": k_max}))
        .residual(mismatched)
        .detail("deformation_ranks", json!(def.ranks))
        .detail("connes_ranks", json!(connes))])
}

fn graphs_enumerate(colored: bool, connected: bool, list: bool, g: &Global) -> Run {
    let kmax = g.kmax.unwrap_or(2 * g.jmax);
    let classes = classes_by_edges(g.jmax, colored);
    let opts = GraphOptions { colored, connected, ..Default::default() };
    let mut counts = Vec::new();
    let mut graphs = Vec::new();
    for j in 0..=g.jmax {
        for k in 0..=kmax.min(2 * j) {
            let e = select(&classes, k, j, opts);
            if e.graphs.is_empty() && e.vanishing.is_empty() {
                continue;
            }
            counts.push(json!({"k": k, "j": j, "orientable": e.graphs.len(), "vanishing": e.vanishing.len()}));
            if list {
                graphs.extend(e.graphs.iter().map(|x| json!({"k": k, "j": j, "graph": x.to_exchange()})));
            }
        }
    }
    let mut r = Report::new("graphs_enumerate")
        .with_truncation(json!({"kmax": kmax, "jmax": g.jmax}))
        .detail("colored", colored)
        .detail("connected", connected)
        .detail("counts", counts);
    if list {
        r = r.detail("graphs", graphs);
    }
    Ok(vec![r])
}

fn graphs_homology(parity: Option<u8>, alpha: i64, colored: bool, g: &Global) -> Run {
    let gc = GraphComplex::new(colored, g.jmax);
    let parities = parity.map_or(vec![0, 1], |p| vec![p]);
    let mut out = Vec::new();
    for p in parities {
        let h = gc.diagonal_homology(p, g.jmax, alpha)?;
        out.push(
            Report::new(format!("graphs_homology[class{p}]"))
                .with_truncation(json!({"degrees": g.jmax}))
                .detail("colored", colored)
                .detail("table", serde_json::to_value(&h).expect("serializable")),
        );
    }
    Ok(out)
}

fn dispatch(cmd: &Command, g: &Global) -> Run {
    match cmd {
        Command::FrobeniusCheck { input } => frobenius_check(input),
        Command::NecklaceBracket { input } => bracket(input),
        Command::NecklaceCobracket { input } => cobracket(input),
        Command::MasterCheck { input } => master_check(input, g),
        Command::ExpCheck { input } => exp_check(input, g),
        Command::BvSuite { trials } => Ok(suites::bv_suite(g.seed, *trials, g.truncation.unwrap_or(4))),
        Command::CyclicOracle { input } => cyclic_oracle(input.as_deref(), g),
        Command::StringyValidate { input } => {
            let cat = StringyCategory::from_json(&read_json(input)?)?;
            Ok(vec![cat.validate(g.gmax)?])
        }
        Command::GraphsEnumerate { colored, connected, list } => graphs_enumerate(*colored, *connected, *list, g),
        Command::GraphsHomology { parity, alpha, colored } => graphs_homology(*parity, *alpha, *colored, g),
        Command::Selftest => Ok(suites::selftest(g.seed)?),
    }
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("NECKLACE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().with_context(|| format!("NECKLACE_THREADS={raw:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    Ok(())
}

fn emit(reports: &[Report], g: &Global, name: &str) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(reports)?;
    if let Some(dir) = &g.fixtures {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("{name}.json")), format!("{text}\n"))?;
    }
    let mut out = std::io::stdout().lock();
    let written = match g.format {
        Format::Json => writeln!(out, "{text}"),
        Format::Text => reports.iter().try_for_each(|r| writeln!(out, "{r}")),
    };
    match written {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let name = cli.command.name();
    let reports = match dispatch(&cli.command, &cli.global) {
        Ok(r) => r,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
        Err(Failure::Check(e)) => vec![Report::new(name.replace('-', "_")).fail(e.to_string())],
    };
    if let Err(e) = emit(&reports, &cli.global, name) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(if all_passed(&reports) { 0 } else { 1 })
}
