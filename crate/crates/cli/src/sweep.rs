//! Degree sweeps over monic `{-1, 0, 1}` polynomials.

use rayon::prelude::*;
use serde::Serialize;

use garsia_core::entropy::{spectral_lower_bound, DEFAULT_MAX_ITERATIONS};
use garsia_core::graph::{build_graph, Bias};
use garsia_core::numberfield::{
    BoundaryRule, Classification, IntPolynomial, MembershipConfig, NumberFieldContext,
};
use garsia_core::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub degree: usize,
    pub max_vertices: usize,
    pub bias: Bias,
    pub precision: u32,
    pub boundary: BoundaryRule,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub polynomial: String,
    pub beta: f64,
    pub pisot: bool,
    /// `-ln λ / ln β`, absent when the graph exceeded the budget.
    pub ratio: Option<f64>,
    pub lambda: Option<(f64, f64)>,
    pub full_size: Option<usize>,
    pub pruned_size: Option<usize>,
    pub error: Option<String>,
}

/// Monic polynomials of the given degree with coefficients in `{-1, 0, 1}`
/// that define some `β ∈ (1, 2)`, ordered by `a_{d-1}, ..., a_0` with
/// `-1 < 0 < 1`.
pub fn candidates(degree: usize) -> Vec<IntPolynomial> {
    let total = 3usize.pow(degree as u32);
    let mut out: Vec<(Vec<i64>, IntPolynomial)> = (0..total)
        .filter_map(|mut k| {
            // Lower coefficients first, each digit mapped 0, 1, 2 -> -1, 0, 1.
            let mut c = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                c.push((k % 3) as i64 - 1);
                k /= 3;
            }
            c.push(1);
            let p = IntPolynomial::from_i64(&c).ok()?;
            let key = c[..degree].iter().rev().copied().collect();
            Some((key, p))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.dedup_by(|a, b| a.1 == b.1);
    out.into_iter().map(|e| e.1).collect()
}

/// The row for one polynomial, or `None` if `β` is not hyperbolic.
pub fn sweep_row(p: IntPolynomial, cfg: &SweepConfig) -> Option<SweepRow> {
    let name = p.to_string();
    let mc = MembershipConfig { boundary: cfg.boundary, ..MembershipConfig::default() };
    let ctx = match NumberFieldContext::with_config(p, cfg.precision, mc) {
        Ok(c) => c,
        Err(e) => return Some(failed(name, f64::NAN, false, &e)),
    };
    if !ctx.is_hyperbolic() {
        return None;
    }
    let pisot = ctx.classify() == Classification::Pisot;
    let beta = ctx.beta_f64();
    let run = || -> Result<SweepRow> {
        let full = build_graph(&ctx, None, cfg.max_vertices)?;
        let pruned = full.pruned();
        let s = spectral_lower_bound(&pruned.matrices(cfg.bias), DEFAULT_MAX_ITERATIONS)?;
        Ok(SweepRow {
            polynomial: name.clone(),
            beta,
            pisot,
            ratio: Some(garsia_core::entropy::ratio(&ctx, s.bound)),
            lambda: Some((s.lambda_lo, s.lambda_hi)),
            full_size: Some(full.len()),
            pruned_size: Some(pruned.len()),
            error: None,
        })
    };
    Some(run().unwrap_or_else(|e| failed(name.clone(), beta, pisot, &e)))
}

fn failed(polynomial: String, beta: f64, pisot: bool, e: &Error) -> SweepRow {
    SweepRow { polynomial, beta, pisot, ratio: None, lambda: None, full_size: None, pruned_size: None, error: Some(e.to_string()) }
}

/// All hyperbolic rows of the given degree, in table order.
pub fn sweep(cfg: &SweepConfig) -> Vec<SweepRow> {
    candidates(cfg.degree)
        .into_par_iter()
        .filter_map(|p| sweep_row(p, cfg))
        .collect()
}

/// Fixed-width table in the layout of the published tables.
pub fn render_table(rows: &[SweepRow]) -> String {
    let width = rows.iter().map(|r| r.polynomial.len()).max().unwrap_or(10).max(10);
    let mut out = format!("{:<width$}  {:>6}  {:<9}  {:>8}  {:>7}\n", "polynomial", "beta", "type", "-lnλ/lnβ", "|G'|");
    for r in rows {
        let kind = if r.pisot { "Pisot" } else { "not Pisot" };
        let ratio = r.ratio.map_or("?".to_string(), |v| format!("{v:.5}"));
        let size = r.pruned_size.map_or("?".to_string(), |v| v.to_string());
        out.push_str(&format!("{:<width$}  {:>6.4}  {:<9}  {:>8}  {:>7}\n", r.polynomial, r.beta, kind, ratio, size));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_three_candidates_in_table_order() {
        let names: Vec<String> = candidates(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["x^3 - x^2 - x - 1", "x^3 - x^2 - 1", "x^3 - x - 1"]);
    }

    #[test]
    fn degree_two_has_only_the_golden_ratio() {
        let cfg = SweepConfig {
            degree: 2,
            max_vertices: 1000,
            bias: Bias::half(),
            precision: 128,
            boundary: BoundaryRule::Strict,
        };
        let rows = sweep(&cfg);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].pruned_size, Some(5));
        assert!(render_table(&rows).contains("0.99240"));
    }

    #[test]
    fn budget_overflow_prints_question_mark() {
        let cfg = SweepConfig {
            degree: 3,
            max_vertices: 20,
            bias: Bias::half(),
            precision: 128,
            boundary: BoundaryRule::Strict,
        };
        let rows = sweep(&cfg);
        let t = render_table(&rows);
        assert!(rows[0].ratio.is_some());
        assert!(rows[1].ratio.is_none() && rows[1].error.is_some());
        assert!(t.lines().nth(2).unwrap().ends_with('?'));
    }
}
