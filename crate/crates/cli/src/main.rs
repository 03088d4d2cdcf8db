//! `ed-defect` command-line front end. Every run prints one JSON report on
//! stdout and a short summary on stderr.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ed_defect::critical::{slice_with_generic_linear, VarietyPresentation, WeightMode};
use ed_defect::groebner::{milnor_number, symbolic_ed_degree, OracleOptions, OracleReport, DEFAULT_MILNOR_CAP};
use ed_defect::homotopy::{
    ed_degree, isolated_singularities, milnor_at_point, recognize_point, EdDegreeReport, TrackerSettings,
};
use ed_defect::poly::{parse_polynomial, Coefficient, Domain, Gaussian, Monomial, Polynomial, RingContext};
use ed_defect::segre::{ded_rank_one, ded_rank_one_binomial, ded_rank_one_inclusion_exclusion, DEFAULT_BINOMIAL_CAP};
use ed_defect::strata::{alpha_coefficients, b_from_links, ded_from_strata, ded_sliced, StratumPoset};
use ed_defect::sysfile::{parse_system, write_system};

const EXIT_ERROR: u8 = 1;
const EXIT_DISAGREEMENT: u8 = 3;

#[derive(Parser)]
#[command(name = "ed-defect", version, about = "Euclidean distance degrees and their defect")]
struct Cli {
    /// Worker threads for path tracking; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Unit,
    Generic,
    Weighted,
}

#[derive(clap::Args, Clone)]
struct SeedArgs {
    /// Base seed; stability runs use seed, seed+1, ...
    #[arg(long, env = "ED_DEFECT_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of seeds the homotopy count must agree across.
    #[arg(long, default_value_t = 2)]
    runs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// ED degree by homotopy continuation, optionally checked symbolically.
    EdDegree {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_enum, default_value = "generic")]
        mode: Mode,
        /// Comma-separated weights for `--mode weighted`, e.g. `1,2,1/3,I`.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<String>,
        #[command(flatten)]
        seeds: SeedArgs,
        #[arg(long)]
        oracle: bool,
    },
    /// GED, UED and their difference.
    EdDefect {
        #[arg(long)]
        system: PathBuf,
        #[command(flatten)]
        seeds: SeedArgs,
        #[arg(long)]
        oracle: bool,
    },
    /// ED degree from a Gröbner basis over prime fields only.
    Oracle {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_enum, default_value = "generic")]
        mode: Mode,
        #[arg(long, value_delimiter = ',')]
        weights: Vec<String>,
        #[arg(long, env = "ED_DEFECT_SEED", default_value_t = 0)]
        seed: u64,
        /// Primes to run on (default: two primes chosen for the coefficients).
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u32>,
    },
    /// Milnor number of a hypersurface germ at the origin.
    Milnor {
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_MILNOR_CAP)]
        cap: u32,
    },
    /// Isolated singular points of X ∩ Q and their Milnor numbers.
    SingLocus {
        #[arg(long)]
        system: PathBuf,
        #[command(flatten)]
        seeds: SeedArgs,
    },
    /// DED from a strata specification.
    StrataDefect {
        #[arg(long)]
        spec: PathBuf,
    },
    /// DED of the s×t rank-one matrix variety from its generating functions.
    SegreDefect {
        s: usize,
        t: usize,
        #[arg(long, default_value_t = DEFAULT_BINOMIAL_CAP)]
        cap: usize,
    },
    /// Writes the system cut by K generic linear forms.
    Slice {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, env = "ED_DEFECT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    inputs: Value,
    result: Value,
    #[serde(skip_serializing_if = "Value::is_null")]
    routes: Value,
    seeds: Vec<u64>,
    timings_ms: BTreeMap<&'static str, f64>,
    #[serde(skip_serializing_if = "Value::is_null")]
    diagnostics: Value,
}

impl RunReport {
    fn new(command: &'static str, inputs: Value) -> Self {
        RunReport {
            command,
            inputs,
            result: Value::Null,
            routes: Value::Null,
            seeds: Vec::new(),
            timings_ms: BTreeMap::new(),
            diagnostics: Value::Null,
        }
    }
}

/// A failure with a machine-readable category.
#[derive(Debug)]
struct Failure {
    category: &'static str,
    kind: String,
    message: String,
}

impl Failure {
    fn new<E: std::fmt::Debug + Display>(category: &'static str, err: E) -> Self {
        let debug = format!("{err:?}");
        let kind = debug
            .split(|c: char| !c.is_alphanumeric() && c != '_')
            .next()
            .unwrap_or("")
            .to_string();
        Failure {
            category,
            kind,
            message: err.to_string(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Failure {
            category: "io",
            kind: format!("{:?}", err.kind()),
            message: format!("{}: {err}", path.display()),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            category: "usage",
            kind: "InvalidArgument".into(),
            message: message.into(),
        }
    }
}

/// Result of a subcommand: the report plus whether every cross-check agreed.
struct Outcome {
    report: RunReport,
    summary: String,
    agreed: bool,
}

fn timed<T>(timings: &mut BTreeMap<&'static str, f64>, label: &'static str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.insert(label, start.elapsed().as_secs_f64() * 1e3);
    out
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn load_system(path: &Path) -> Result<VarietyPresentation, Failure> {
    parse_system(&read(path)?).map_err(|e| Failure::new("parse", e))
}

fn settings(seeds: &SeedArgs, threads: usize) -> TrackerSettings {
    TrackerSettings {
        seed: seeds.seed,
        stability_runs: seeds.runs,
        threads,
        ..TrackerSettings::default()
    }
}

fn parse_weight(text: &str) -> Result<Gaussian, Failure> {
    let ring = RingContext::new::<&str>(&[], Domain::GaussianRational).map_err(|e| Failure::new("parse", e))?;
    let p: Polynomial<Gaussian> = parse_polynomial(text, &ring).map_err(|e| Failure::new("parse", e))?;
    Ok(p.coefficient(&Monomial::one(0)).cloned().unwrap_or_else(|| Gaussian::from_ints(0, 0)))
}

fn weight_mode(mode: Mode, weights: &[String]) -> Result<WeightMode, Failure> {
    match (mode, weights.is_empty()) {
        (Mode::Unit, true) => Ok(WeightMode::Unit),
        (Mode::Generic, true) => Ok(WeightMode::Generic),
        (Mode::Weighted, false) => Ok(WeightMode::Weighted(
            weights.iter().map(|w| parse_weight(w)).collect::<Result<_, _>>()?,
        )),
        (Mode::Weighted, true) => Err(Failure::usage("--mode weighted needs --weights")),
        (_, false) => Err(Failure::usage("--weights is only valid with --mode weighted")),
    }
}

fn mode_name(mode: &WeightMode) -> &'static str {
    match mode {
        WeightMode::Unit => "unit",
        WeightMode::Generic => "generic",
        WeightMode::Weighted(_) => "weighted",
    }
}

fn system_inputs(path: &Path, variety: &VarietyPresentation) -> Value {
    json!({
        "system": path.display().to_string(),
        "variables": variety.ring().variable_names(),
        "generators": variety.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "codim": variety.codim(),
        "kind": variety.kind(),
    })
}

fn homotopy_count(
    variety: &VarietyPresentation,
    mode: &WeightMode,
    settings: &TrackerSettings,
) -> Result<EdDegreeReport, Failure> {
    ed_degree(variety, mode, settings).map_err(|e| Failure::new("homotopy", e))
}

fn oracle_count(variety: &VarietyPresentation, mode: &WeightMode, seed: u64) -> Result<OracleReport, Failure> {
    symbolic_ed_degree(variety, mode, &OracleOptions::for_variety(variety, seed)).map_err(|e| Failure::new("groebner", e))
}

fn run_ed_degree(
    system: &Path,
    mode: Mode,
    weights: &[String],
    seeds: &SeedArgs,
    oracle: bool,
    threads: usize,
) -> Result<Outcome, Failure> {
    let variety = load_system(system)?;
    let mode = weight_mode(mode, weights)?;
    let settings = settings(seeds, threads);
    let mut inputs = system_inputs(system, &variety);
    inputs["mode"] = json!(mode_name(&mode));
    inputs["weights"] = json!(weights);
    let mut report = RunReport::new("ed-degree", inputs);
    let homotopy = timed(&mut report.timings_ms, "homotopy", || homotopy_count(&variety, &mode, &settings))?;
    report.seeds = homotopy.runs.iter().map(|r| r.seed).collect();
    let mut summary = format!("ED degree ({}): {}", mode_name(&mode), homotopy.count);
    let mut agreed = true;
    let mut routes = json!({ "homotopy": homotopy });
    report.result = json!({ "ed_degree": homotopy.count });
    if oracle {
        let symbolic = timed(&mut report.timings_ms, "oracle", || oracle_count(&variety, &mode, seeds.seed))?;
        agreed = symbolic.count == homotopy.count;
        summary += &format!("; oracle {} ({})", symbolic.count, if agreed { "agrees" } else { "DISAGREES" });
        routes["oracle"] = json!(symbolic);
        report.result["oracle_agrees"] = json!(agreed);
    }
    report.routes = routes;
    Ok(Outcome { report, summary, agreed })
}

fn run_ed_defect(system: &Path, seeds: &SeedArgs, oracle: bool, threads: usize) -> Result<Outcome, Failure> {
    let variety = load_system(system)?;
    let settings = settings(seeds, threads);
    let mut report = RunReport::new("ed-defect", system_inputs(system, &variety));
    let generic = timed(&mut report.timings_ms, "homotopy_generic", || {
        homotopy_count(&variety, &WeightMode::Generic, &settings)
    })?;
    let unit = timed(&mut report.timings_ms, "homotopy_unit", || {
        homotopy_count(&variety, &WeightMode::Unit, &settings)
    })?;
    report.seeds = generic.runs.iter().map(|r| r.seed).collect();
    let defect = generic.count as i64 - unit.count as i64;
    let mut summary = format!("GED {}  UED {}  DED {}", generic.count, unit.count, defect);
    report.result = json!({ "ged": generic.count, "ued": unit.count, "ded": defect });
    let mut routes = json!({ "homotopy": { "generic": generic, "unit": unit } });
    let mut agreed = true;
    if oracle {
        let og = timed(&mut report.timings_ms, "oracle_generic", || {
            oracle_count(&variety, &WeightMode::Generic, seeds.seed)
        })?;
        let ou = timed(&mut report.timings_ms, "oracle_unit", || {
            oracle_count(&variety, &WeightMode::Unit, seeds.seed)
        })?;
        agreed = og.count == generic.count && ou.count == unit.count;
        summary += &format!(
            "; oracle GED {} UED {} ({})",
            og.count,
            ou.count,
            if agreed { "agrees" } else { "DISAGREES" }
        );
        report.result["oracle_agrees"] = json!(agreed);
        routes["oracle"] = json!({ "generic": og, "unit": ou });
    }
    report.routes = routes;
    Ok(Outcome { report, summary, agreed })
}

fn run_oracle(system: &Path, mode: Mode, weights: &[String], seed: u64, primes: &[u32]) -> Result<Outcome, Failure> {
    let variety = load_system(system)?;
    let mode = weight_mode(mode, weights)?;
    let mut options = OracleOptions::for_variety(&variety, seed);
    if !primes.is_empty() {
        options.primes = primes.to_vec();
    }
    let mut inputs = system_inputs(system, &variety);
    inputs["mode"] = json!(mode_name(&mode));
    inputs["primes"] = json!(options.primes);
    let mut report = RunReport::new("oracle", inputs);
    let symbolic = timed(&mut report.timings_ms, "oracle", || {
        symbolic_ed_degree(&variety, &mode, &options).map_err(|e| Failure::new("groebner", e))
    })?;
    report.seeds = symbolic.runs.iter().map(|r| r.seed).collect();
    report.result = json!({ "ed_degree": symbolic.count });
    let summary = format!("ED degree ({}) over prime fields: {}", mode_name(&mode), symbolic.count);
    report.routes = json!({ "oracle": symbolic });
    Ok(Outcome { report, summary, agreed: true })
}

fn run_milnor(poly: &str, vars: &[String], cap: u32) -> Result<Outcome, Failure> {
    let ring = RingContext::new(vars, Domain::GaussianRational).map_err(|e| Failure::new("parse", e))?;
    let g: Polynomial<Gaussian> = parse_polynomial(poly, &ring).map_err(|e| Failure::new("parse", e))?;
    let mut report = RunReport::new("milnor", json!({ "poly": poly, "vars": vars, "cap": cap }));
    let result = timed(&mut report.timings_ms, "mora", || milnor_number(&g, cap)).map_err(|e| Failure::new("groebner", e))?;
    report.result = json!({ "mu": result.mu });
    report.diagnostics = json!({ "standard_monomials": result.standard_monomials });
    let summary = format!("Milnor number of {g}: {}", result.mu);
    Ok(Outcome { report, summary, agreed: true })
}

fn render_point(point: &[Gaussian]) -> Vec<String> {
    point.iter().map(|c| c.render().0).collect()
}

fn run_sing_locus(system: &Path, seeds: &SeedArgs, threads: usize) -> Result<Outcome, Failure> {
    let variety = load_system(system)?;
    let settings = settings(seeds, threads);
    let mut report = RunReport::new("sing-locus", system_inputs(system, &variety));
    let locus = timed(&mut report.timings_ms, "homotopy", || {
        isolated_singularities(&variety, &settings).map_err(|e| Failure::new("homotopy", e))
    })?;
    report.seeds = locus.seeds.clone();
    let mut points = Vec::new();
    let mut total = 0u64;
    let start = Instant::now();
    for numeric in &locus.points {
        let exact = recognize_point(numeric).map_err(|e| Failure::new("homotopy", e))?;
        let local = milnor_at_point(&variety, &exact, seeds.seed).map_err(|e| Failure::new("homotopy", e))?;
        total += local.mu;
        points.push(json!({
            "point": render_point(&exact),
            "numeric": numeric.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "mu": local.mu,
            "route": local.route,
            "local_equation": local.local_equation,
        }));
    }
    report.timings_ms.insert("milnor", start.elapsed().as_secs_f64() * 1e3);
    report.result = json!({ "num_points": points.len(), "milnor_sum": total });
    report.diagnostics = json!({ "paths": locus.paths });
    report.routes = json!({ "points": points });
    let summary = format!("{} isolated singular points of X ∩ Q, Σμ = {total}", locus.points.len());
    Ok(Outcome { report, summary, agreed: true })
}

fn run_strata(spec: &Path) -> Result<Outcome, Failure> {
    let poset = StratumPoset::from_json(&read(spec)?).map_err(|e| Failure::new("strata", e))?;
    let strata_err = |e| Failure::new("strata", e);
    let matrices = b_from_links(&poset).map_err(strata_err)?;
    let alpha = alpha_coefficients(&poset).map_err(strata_err)?;
    let ded = ded_from_strata(&poset).map_err(strata_err)?;
    let mut report = RunReport::new("strata-defect", json!({ "spec": spec.display().to_string(), "poset": poset }));
    report.result = json!({ "ded": ded });
    let mut routes = json!({ "alpha": alpha, "mu": poset.names().into_iter().zip(poset.mus()).collect::<BTreeMap<_, _>>() });
    let mut summary = format!("DED = {ded}");
    if let Some(sliced) = &poset.sliced_ged {
        let value = ded_sliced(&poset, sliced).map_err(strata_err)?;
        routes["sliced_ded"] = json!(value);
        summary += &format!("; sliced {value}");
    }
    report.routes = routes;
    report.diagnostics = json!({ "matrices": matrices });
    Ok(Outcome { report, summary, agreed: true })
}

fn run_segre(s: usize, t: usize, cap: usize) -> Result<Outcome, Failure> {
    let series_err = |e| Failure::new("series", e);
    let mut report = RunReport::new("segre-defect", json!({ "s": s, "t": t, "cap": cap }));
    let product = ded_rank_one(s, t).map_err(series_err)?;
    let binomial = ded_rank_one_binomial(s, t, cap).map_err(series_err)?;
    let inclusion = ded_rank_one_inclusion_exclusion(s, t).map_err(series_err)?;
    let agreed = product == binomial && binomial == inclusion;
    report.result = json!({ "ded": product.to_string(), "routes_agree": agreed });
    report.routes = json!({
        "product": product.to_string(),
        "binomial": binomial.to_string(),
        "inclusion_exclusion": inclusion.to_string(),
    });
    let summary = format!(
        "DED(X_{{{s},{t}}}) = {product} ({})",
        if agreed { "routes agree" } else { "routes DISAGREE" }
    );
    Ok(Outcome { report, summary, agreed })
}

fn run_slice(system: &Path, k: usize, seed: u64, out: &Path) -> Result<Outcome, Failure> {
    let variety = load_system(system)?;
    let sliced = slice_with_generic_linear(&variety, k, seed).map_err(|e| Failure::new("critical", e))?;
    let comment = format!("{} cut by {k} generic linear forms (seed {seed})", system.display());
    std::fs::write(out, write_system(&sliced, Some(&comment))).map_err(|e| Failure::io(out, e))?;
    let mut inputs = system_inputs(system, &variety);
    inputs["k"] = json!(k);
    let mut report = RunReport::new("slice", inputs);
    report.seeds = vec![seed];
    report.result = json!({
        "out": out.display().to_string(),
        "codim": sliced.codim(),
        "generators": sliced.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
    });
    let summary = format!("wrote {} ({} generators)", out.display(), sliced.generators().len());
    Ok(Outcome { report, summary, agreed: true })
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::EdDegree { system, mode, weights, seeds, oracle } => {
            run_ed_degree(system, *mode, weights, seeds, *oracle, cli.threads)
        }
        Command::EdDefect { system, seeds, oracle } => run_ed_defect(system, seeds, *oracle, cli.threads),
        Command::Oracle { system, mode, weights, seed, primes } => run_oracle(system, *mode, weights, *seed, primes),
        Command::Milnor { poly, vars, cap } => run_milnor(poly, vars, *cap),
        Command::SingLocus { system, seeds } => run_sing_locus(system, seeds, cli.threads),
        Command::StrataDefect { spec } => run_strata(spec),
        Command::SegreDefect { s, t, cap } => run_segre(*s, *t, *cap),
        Command::Slice { system, k, seed, out } => run_slice(system, *k, *seed, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(outcome) => {
            println!("{}", serde_json::to_string_pretty(&outcome.report).expect("report serializes"));
            eprintln!("{}", outcome.summary);
            if outcome.agreed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_DISAGREEMENT)
            }
        }
        Err(failure) => {
            let doc = json!({
                "error": { "category": failure.category, "kind": failure.kind, "message": failure.message }
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("error serializes"));
            eprintln!("error ({}): {}", failure.category, failure.message);
            ExitCode::from(EXIT_ERROR)
        }
    }
}
