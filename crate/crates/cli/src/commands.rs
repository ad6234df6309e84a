//! Argument parsing and the three subcommands.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use garsia_core::entropy::{
    analyze_graph, build_for, AnalysisConfig, EntropyReport, Estimators, DEFAULT_MAX_CLASSES,
};
use garsia_core::graph::{build_graph, Bias, TransitionGraph, DEFAULT_MAX_VERTICES};
use garsia_core::numberfield::{
    BoundaryRule, IntPolynomial, MembershipConfig, NumberFieldContext, DEFAULT_PRECISION, MAX_PRECISION,
};
use garsia_core::Error;

use crate::cache::GraphCache;
use crate::format;
use crate::sweep::{render_table, sweep, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(PathBuf, io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => exit_code(e),
            CliError::Io(..) => EXIT_INTERNAL,
            CliError::Usage(_) => EXIT_PARSE,
        }
    }
}

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::NotMonic
        | Error::DegreeTooSmall
        | Error::Reducible(_)
        | Error::NoRootInRange
        | Error::MultipleRootsInRange(_)
        | Error::InvalidBias
        | Error::InvalidGraph(_) => EXIT_PARSE,
        Error::PrecisionExhausted(_) => EXIT_PRECISION,
        Error::VertexBudget { .. } | Error::ClassBudget { .. } | Error::TooLarge(_) => EXIT_BUDGET,
        _ => EXIT_INTERNAL,
    }
}

#[derive(Parser, Debug)]
#[command(name = "garsia", version, about = "Certified entropy and dimension bounds for Bernoulli convolutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bounds for a single polynomial.
    Analyze(AnalyzeArgs),
    /// Spectral bounds for every hyperbolic β of one degree.
    Sweep(SweepArgs),
    /// Write the transition graph as JSON or DOT.
    Export(ExportArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Minimal polynomial, e.g. "x^3-x-1" or "-1,-1,0,1" (constant term first).
    #[arg(long = "poly", value_name = "POLY")]
    pub poly: Option<String>,
    /// Working precision in bits.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Keep vertices exactly on the boundary of V_β.
    #[arg(long)]
    pub inclusive_boundary: bool,
    /// Give up (exit 4) once the graph has more vertices than this.
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    pub max_vertices: usize,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Minimal polynomial (alternative to --poly).
    #[arg(value_name = "POLY", conflicts_with = "poly")]
    pub positional: Option<String>,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Word length.
    #[arg(long, default_value_t = 9)]
    pub n: usize,
    /// Bias of the digit 0, as "1/3" or "0.25".
    #[arg(long, default_value = "1/2")]
    pub p: String,
    /// Skip pruning: no L̃ₙ, spectral bound on the full graph.
    #[arg(long)]
    pub no_prune: bool,
    /// Comma-separated subset of Hn,Ln,Lnprime,Ltilde,spectral,theorem1.
    #[arg(long, default_value = "all")]
    pub estimators: String,
    /// Give up (exit 4) once there are more value classes than this.
    #[arg(long, default_value_t = DEFAULT_MAX_CLASSES)]
    pub max_classes: usize,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Graph cache directory (defaults to $GARSIA_CACHE_DIR).
    #[arg(long, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    /// Analyze a previously exported (unpruned) JSON graph.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Floating-point masses instead of exact integers.
    #[arg(long)]
    pub float: bool,
    /// Carry product matrices and check them at every merge.
    #[arg(long)]
    pub check_products: bool,
    /// Include wall-clock times per phase.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub degree: usize,
    /// Per-polynomial vertex budget; rows over it print "?".
    #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
    pub budget_vertices: usize,
    #[arg(long, default_value = "1/2")]
    pub p: String,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    #[arg(long)]
    pub inclusive_boundary: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
    pub format: GraphFormat,
    /// Export the pruned graph.
    #[arg(long)]
    pub pruned: bool,
    /// Truncation depth when β is not hyperbolic.
    #[arg(long, default_value_t = 9)]
    pub depth: usize,
    /// Output file (stdout when absent).
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Run with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(&a, out, err),
        Command::Sweep(s) => cmd_sweep(&s, out),
        Command::Export(x) => cmd_export(&x, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn context(poly: &str, field: &FieldArgs) -> Result<NumberFieldContext, CliError> {
    if !(16..=MAX_PRECISION).contains(&field.precision) {
        return Err(CliError::Usage(format!("precision must lie in 16..={MAX_PRECISION}")));
    }
    let p = IntPolynomial::parse(poly)?;
    let boundary = if field.inclusive_boundary { BoundaryRule::Inclusive } else { BoundaryRule::Strict };
    let config = MembershipConfig { boundary, ..MembershipConfig::default() };
    Ok(NumberFieldContext::with_config(p, field.precision, config)?)
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |e| CliError::Io(path.to_path_buf(), e)
}

/// Build, load from cache, or import the unpruned graph for an analysis.
fn obtain_graph(
    ctx: &NumberFieldContext,
    a: &AnalyzeArgs,
    cfg: &AnalysisConfig,
) -> Result<TransitionGraph, CliError> {
    if let Some(path) = &a.graph {
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        let g = format::from_json(&text)?;
        g.verify(ctx)?;
        return Ok(g);
    }
    let depth = (!ctx.is_hyperbolic()).then_some(cfg.n);
    let cache = GraphCache::resolve(a.cache.as_deref()).map_err(io_err(a.cache.as_deref().unwrap_or(Path::new("."))))?;
    if let Some(g) = cache.as_ref().and_then(|c| c.load(ctx, depth)) {
        if g.len() > cfg.max_vertices {
            return Err(Error::VertexBudget { budget: cfg.max_vertices, depth: 0, vertices: g.len() }.into());
        }
        return Ok(g);
    }
    let g = build_for(ctx, cfg)?;
    if let Some(c) = &cache {
        c.store(ctx, depth, &g).map_err(io_err(c.dir()))?;
    }
    Ok(g)
}

pub fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let poly = a
        .positional
        .as_deref()
        .or(a.field.poly.as_deref())
        .ok_or_else(|| CliError::Usage("a polynomial is required".into()))?;
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let cfg = AnalysisConfig {
        n: a.n,
        bias: Bias::parse(&a.p)?,
        prune: !a.no_prune,
        estimators: Estimators::parse(&a.estimators)?,
        max_vertices: a.field.max_vertices,
        max_classes: a.max_classes,
        with_products: a.check_products,
        float_only: a.float,
        ..AnalysisConfig::default()
    };
    let t0 = Instant::now();
    let ctx = context(poly, &a.field)?;
    let t1 = Instant::now();
    let graph = obtain_graph(&ctx, a, &cfg)?;
    let t2 = Instant::now();
    let mut report = analyze_graph(&ctx, &graph, &cfg)?;
    let t3 = Instant::now();
    report.graph_hash = Some(format::graph_hash(&graph)?);
    if a.timings {
        let secs = |x: Instant, y: Instant| (y - x).as_secs_f64();
        report.timings = Some(vec![
            ("context".into(), secs(t0, t1)),
            ("graph".into(), secs(t1, t2)),
            ("estimators".into(), secs(t2, t3)),
        ]);
    }
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let text = if a.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        render_report(&report)
    };
    out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>")))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or("-".to_string(), |x| format!("{x:.5}"))
}

/// Human-readable report; the conclusion is the last line.
pub fn render_report(r: &EntropyReport) -> String {
    let mut s = String::new();
    let kind = format!("{:?}", r.classification).to_uppercase();
    let _ = writeln!(s, "polynomial       {}", r.polynomial);
    let _ = writeln!(s, "beta             {:.10}  ({kind}, r = {}, l = {})", r.beta, r.r, r.l);
    let depth = r.truncation_depth.map_or("complete".to_string(), |d| format!("truncated at depth {d}"));
    let pruned = r.graph_sizes.1.map_or(String::new(), |p| format!(", {p} after pruning"));
    let _ = writeln!(s, "graph            {} vertices{pruned} ({depth})", r.graph_sizes.0);
    let _ = writeln!(s, "value classes    {} at n = {}, p = {}", r.num_value_classes, r.n, r.p);
    let _ = writeln!(s, "{:<16} {:>10}  {:>10}", "estimator", "nats", "/ ln beta");
    let rows = [
        ("H_n / n", Some(r.hn_over_n), Some(r.hn_ratio)),
        ("L_n / n", r.ln_over_n, r.ln_ratio),
        ("L'_n / n", r.lnprime_over_n, r.lnprime_ratio),
        ("L~_n / n", r.ltilde_over_n, r.ltilde_ratio),
        ("-ln lambda", r.spectral_bound, r.spectral_ratio),
    ];
    for (name, v, q) in rows {
        if v.is_some() {
            let _ = writeln!(s, "{name:<16} {:>10}  {:>10}", fmt_opt(v), fmt_opt(q));
        }
    }
    if let Some(lo) = r.theorem1_lower {
        let _ = writeln!(s, "theorem 1        [{lo:.5}, {:.5}]", r.theorem1_upper);
    }
    let best = r.best_lower_estimator.as_deref().unwrap_or("none");
    let _ = writeln!(s, "dimension        [{:.5}, {:.5}]  (lower bound from {best})", r.dim_lower, r.dim_upper);
    let _ = writeln!(s, "0.44 bound       {:.5}", r.bv_comparison);
    if r.dim_below_one_witnessed {
        let _ = writeln!(s, "upper bound      H_n/(n ln beta) < 1 witnessed");
    }
    let _ = writeln!(s, "conclusion: {}", r.conclusion);
    s
}

pub fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if !(2..=MAX_SWEEP_DEGREE).contains(&a.degree) {
        return Err(CliError::Usage(format!("--degree must lie in 2..={MAX_SWEEP_DEGREE}")));
    }
    let cfg = SweepConfig {
        degree: a.degree,
        max_vertices: a.budget_vertices,
        bias: Bias::parse(&a.p)?,
        precision: a.precision,
        boundary: if a.inclusive_boundary { BoundaryRule::Inclusive } else { BoundaryRule::Strict },
    };
    let rows = sweep(&cfg);
    let text = if a.json {
        serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n"
    } else {
        render_table(&rows)
    };
    out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>")))
}

/// Largest degree accepted by `sweep`.
pub const MAX_SWEEP_DEGREE: usize = 8;

pub fn cmd_export(a: &ExportArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let poly = a.field.poly.as_deref().ok_or_else(|| CliError::Usage("--poly is required".into()))?;
    let ctx = context(poly, &a.field)?;
    let depth = (!ctx.is_hyperbolic()).then_some(a.depth);
    let mut g = build_graph(&ctx, depth, a.field.max_vertices)?;
    if a.pruned {
        g = g.pruned();
    }
    let text = match a.format {
        GraphFormat::Json => format::to_json(&g)? + "\n",
        GraphFormat::Dot => format::to_dot(&g),
    };
    match &a.output {
        Some(path) => std::fs::write(path, text).map_err(io_err(path)),
        None => out.write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>"))),
    }
}
