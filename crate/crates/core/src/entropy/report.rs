//! The full analysis of one `β`: graph, value classes, every estimator and
//! the dimension conclusion.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{build_graph, Bias, Depth, TransitionGraph, DEFAULT_MAX_VERTICES};
use crate::numberfield::{Classification, NumberFieldContext};

use super::classes::{enumerate_value_classes, ClassOptions, DEFAULT_MAX_CLASSES};
use super::spectral::{spectral_lower_bound, SpectralBound, DEFAULT_MAX_ITERATIONS};
use super::{
    compute_hn, compute_row_estimates, dimension_bounds, mahler_comparison, ratio, ratio_lower, ratio_upper,
    theorem1_enclosure,
};

pub const SALEM_WARNING: &str =
    "beta is a Salem number: finite-time estimates cannot certify dimension 1, and none is claimed";
pub const PISOT_WARNING: &str = "beta is a Pisot number, so the dimension is strictly below 1";

/// Which optional estimators to evaluate. `Hₙ` is always computed since it
/// supplies the upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Estimators {
    pub ln: bool,
    pub ln_prime: bool,
    pub ltilde: bool,
    pub spectral: bool,
    pub theorem1: bool,
}

impl Estimators {
    pub const ALL: Estimators = Estimators { ln: true, ln_prime: true, ltilde: true, spectral: true, theorem1: true };
    pub const NONE: Estimators =
        Estimators { ln: false, ln_prime: false, ltilde: false, spectral: false, theorem1: false };

    /// Comma-separated names from `Hn, Ln, Lnprime, Ltilde, spectral, theorem1`
    /// (case-insensitive), or `all`.
    pub fn parse(list: &str) -> Result<Self> {
        let mut e = Estimators::NONE;
        let mut any = false;
        for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            any = true;
            match name.to_ascii_lowercase().as_str() {
                "all" => e = Estimators::ALL,
                "hn" => {}
                "ln" => e.ln = true,
                "lnprime" | "ln'" => e.ln_prime = true,
                "ltilde" => e.ltilde = true,
                "spectral" => e.spectral = true,
                "theorem1" => e.theorem1 = true,
                other => return Err(Error::Parse(format!("unknown estimator '{other}'"))),
            }
        }
        if !any {
            return Err(Error::Parse("empty estimator list".to_string()));
        }
        Ok(e)
    }
}

impl Default for Estimators {
    fn default() -> Self {
        Estimators::ALL
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisConfig {
    pub n: usize,
    pub bias: Bias,
    /// Use the pruned graph for the spectral bound and compute `L̃ₙ`.
    pub prune: bool,
    pub estimators: Estimators,
    pub max_vertices: usize,
    pub max_classes: usize,
    /// Carry product matrices and check equality at every merge.
    pub with_products: bool,
    /// Use `f64` masses instead of exact integers.
    pub float_only: bool,
    pub spectral_iterations: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            n: 9,
            bias: Bias::half(),
            prune: true,
            estimators: Estimators::ALL,
            max_vertices: DEFAULT_MAX_VERTICES,
            max_classes: DEFAULT_MAX_CLASSES,
            with_products: false,
            float_only: false,
            spectral_iterations: DEFAULT_MAX_ITERATIONS,
        }
    }
}

/// Everything reported for one `β`. Entropy-like quantities are in natural
/// log; `*_ratio` fields are divided by `ln β`.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct EntropyReport {
    pub polynomial: String,
    pub degree: usize,
    pub beta: f64,
    pub n: usize,
    pub p: String,
    pub precision: u32,
    pub classification: Classification,
    pub hyperbolic: bool,
    pub r: usize,
    pub l: usize,
    /// Upper end of the enclosure of `C(β)`.
    pub c_beta: f64,
    /// `(full, pruned)` vertex counts.
    pub graph_sizes: (usize, Option<usize>),
    /// `None` for a complete graph, else the truncation depth.
    pub truncation_depth: Option<usize>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub graph_hash: Option<String>,
    pub num_value_classes: usize,
    #[cfg_attr(feature = "serde", serde(rename = "Hn_over_n"))]
    pub hn_over_n: f64,
    #[cfg_attr(feature = "serde", serde(rename = "Ln_over_n"))]
    pub ln_over_n: Option<f64>,
    #[cfg_attr(feature = "serde", serde(rename = "Lnprime_over_n"))]
    pub lnprime_over_n: Option<f64>,
    #[cfg_attr(feature = "serde", serde(rename = "Ltilde_over_n"))]
    pub ltilde_over_n: Option<f64>,
    #[cfg_attr(feature = "serde", serde(rename = "Hn_ratio"))]
    pub hn_ratio: f64,
    #[cfg_attr(feature = "serde", serde(rename = "Ln_ratio"))]
    pub ln_ratio: Option<f64>,
    #[cfg_attr(feature = "serde", serde(rename = "Lnprime_ratio"))]
    pub lnprime_ratio: Option<f64>,
    #[cfg_attr(feature = "serde", serde(rename = "Ltilde_ratio"))]
    pub ltilde_ratio: Option<f64>,
    pub spectral: Option<SpectralBound>,
    /// `-ln λ`.
    pub spectral_bound: Option<f64>,
    pub spectral_ratio: Option<f64>,
    pub theorem1_lower: Option<f64>,
    pub theorem1_upper: f64,
    pub dim_lower: f64,
    pub dim_upper: f64,
    pub best_lower_estimator: Option<String>,
    pub bv_comparison: f64,
    pub dim_one_certified: bool,
    /// Certified upper end of `Hₙ/(n ln β)` is below 1.
    pub dim_below_one_witnessed: bool,
    pub conclusion: String,
    pub warnings: Vec<String>,
    #[cfg_attr(feature = "serde", serde(skip_serializing_if = "Option::is_none"))]
    pub timings: Option<Vec<(String, f64)>>,
}

/// Build the graph and run the analysis.
pub fn analyze(ctx: &NumberFieldContext, cfg: &AnalysisConfig) -> Result<EntropyReport> {
    let g = build_for(ctx, cfg)?;
    analyze_graph(ctx, &g, cfg)
}

/// The graph `analyze` uses: the full `V_β` when `β` is hyperbolic, else the
/// depth-`n` truncation.
pub fn build_for(ctx: &NumberFieldContext, cfg: &AnalysisConfig) -> Result<TransitionGraph> {
    let depth = if ctx.is_hyperbolic() { None } else { Some(cfg.n) };
    build_graph(ctx, depth, cfg.max_vertices)
}

/// Run the analysis on an already built, unpruned graph.
pub fn analyze_graph(ctx: &NumberFieldContext, full: &TransitionGraph, cfg: &AnalysisConfig) -> Result<EntropyReport> {
    if cfg.n == 0 {
        return Err(Error::Parse("word length must be at least 1".to_string()));
    }
    if full.min_poly() != ctx.min_poly() {
        return Err(Error::InvalidGraph("graph belongs to a different polynomial".to_string()));
    }
    if full.is_pruned() {
        return Err(Error::InvalidGraph("analysis needs the unpruned graph".to_string()));
    }
    let n = cfg.n;
    let nf = n as f64;
    let complete = full.is_complete();
    let mut warnings = Vec::new();
    let class = ctx.classify();
    match class {
        Classification::Salem => warnings.push(SALEM_WARNING.to_string()),
        Classification::Pisot => warnings.push(PISOT_WARNING.to_string()),
        Classification::Other => {}
    }
    if !complete {
        warnings.push(format!(
            "graph truncated at depth {n}: row-sum and spectral bounds are reported but not certified"
        ));
    }

    let pruned = cfg.prune.then(|| full.pruned());
    let mp_full = full.matrices(cfg.bias);
    let opts = ClassOptions { with_products: cfg.with_products, max_classes: cfg.max_classes, float_only: cfg.float_only };
    let table = enumerate_value_classes(&mp_full, n, opts)?;
    let hn = compute_hn(&table);

    let est = cfg.estimators;
    let rows_full = if est.ln || est.ln_prime { Some(compute_row_estimates(&table, &mp_full)?) } else { None };
    let rows_pruned = match (&pruned, est.ltilde) {
        (Some(pg), true) => Some(compute_row_estimates(&table, &pg.matrices(cfg.bias))?),
        _ => None,
    };
    let spectral = if est.spectral {
        let g = pruned.as_ref().unwrap_or(full);
        match spectral_lower_bound(&g.matrices(cfg.bias), cfg.spectral_iterations) {
            Ok(s) => Some(s),
            Err(Error::SpectralNotConverged { lo, hi }) => {
                warnings.push(format!("Perron iteration stopped with bracket [{lo}, {hi}]"));
                Some(SpectralBound { lambda_lo: lo, lambda_hi: hi, bound: -crate::bounds::ln_up(hi), iterations: cfg.spectral_iterations })
            }
            Err(e) => return Err(e),
        }
    } else {
        None
    };

    let (t1_lower, t1_upper) = theorem1_enclosure(ctx, &hn, n);
    let theorem1_lower = est.theorem1.then_some(t1_lower);

    // Certified lower ends of every bound on H.
    let mut candidates: Vec<(&str, f64)> = Vec::new();
    if let Some(t) = theorem1_lower {
        candidates.push(("theorem1", t));
    }
    if complete {
        if let Some(r) = &rows_full {
            if est.ln {
                candidates.push(("Ln", crate::bounds::div_down(r.ln.lower(), nf)));
            }
            if est.ln_prime {
                candidates.push(("Lnprime", crate::bounds::div_down(r.ln_prime.lower(), nf)));
            }
        }
        if let Some(r) = &rows_pruned {
            candidates.push(("Ltilde", crate::bounds::div_down(r.ln_prime.lower(), nf)));
        }
        if let Some(s) = &spectral {
            candidates.push(("spectral", s.bound));
        }
    }
    let best = candidates
        .iter()
        .copied()
        .fold(None::<(&str, f64)>, |acc, c| match acc {
            Some(a) if a.1 >= c.1 => Some(a),
            _ => Some(c),
        });
    let (dim_lower, dim_upper) = dimension_bounds(ctx, best.map_or(0.0, |b| b.1), t1_upper);
    let dim_one_certified = class != Classification::Salem && best.is_some_and(|b| ratio_lower(ctx, b.1) >= 1.0);
    let dim_below_one_witnessed = ratio_upper(ctx, t1_upper) < 1.0;
    let conclusion = if dim_one_certified {
        "dim = 1 certified".to_string()
    } else if class == Classification::Pisot {
        format!("Pisot: dim < 1, lower bound = {dim_lower:.5}")
    } else {
        "inconclusive".to_string()
    };

    let over_n = |v: f64| v / nf;
    let pick = |on: bool, e: Option<f64>| if on { e } else { None };
    let ln_over_n = pick(est.ln, rows_full.map(|r| over_n(r.ln.value)));
    let lnprime_over_n = pick(est.ln_prime, rows_full.map(|r| over_n(r.ln_prime.value)));
    let ltilde_over_n = rows_pruned.map(|r| over_n(r.ln_prime.value));
    let hn_over_n = over_n(hn.value);
    Ok(EntropyReport {
        polynomial: ctx.min_poly().to_string(),
        degree: ctx.degree(),
        beta: ctx.beta_f64(),
        n,
        p: cfg.bias.to_string(),
        precision: ctx.precision_bits(),
        classification: class,
        hyperbolic: ctx.is_hyperbolic(),
        r: ctx.r(),
        l: ctx.l(),
        c_beta: ctx.c_beta().to_f64_bounds().1,
        graph_sizes: (full.len(), pruned.as_ref().map(TransitionGraph::len)),
        truncation_depth: match full.depth() {
            Depth::Complete => None,
            Depth::Truncated(d) => Some(d),
        },
        graph_hash: None,
        num_value_classes: table.len(),
        hn_over_n,
        ln_over_n,
        lnprime_over_n,
        ltilde_over_n,
        hn_ratio: ratio(ctx, hn_over_n),
        ln_ratio: ln_over_n.map(|v| ratio(ctx, v)),
        lnprime_ratio: lnprime_over_n.map(|v| ratio(ctx, v)),
        ltilde_ratio: ltilde_over_n.map(|v| ratio(ctx, v)),
        spectral_bound: spectral.map(|s| s.bound),
        spectral_ratio: spectral.map(|s| ratio(ctx, s.bound)),
        spectral,
        theorem1_lower,
        theorem1_upper: t1_upper,
        dim_lower,
        dim_upper,
        best_lower_estimator: best.map(|b| b.0.to_string()),
        bv_comparison: mahler_comparison(ctx),
        dim_one_certified,
        dim_below_one_witnessed,
        conclusion,
        warnings,
        timings: None,
    })
}
