//! Entropy estimators: `Hₙ`, `Lₙ`, `Lₙ′` (and `L̃ₙ` on a pruned graph), the
//! Perron-root bound, the explicit enclosure of the entropy and the
//! resulting dimension bounds. Logarithms are natural.

pub mod classes;
pub mod report;
pub mod spectral;

use alloc::vec;
use alloc::vec::Vec;

use crate::bounds::{add_up, div_down, div_up, ln_up, sub_down};
use crate::error::Result;
use crate::graph::MatrixPair;
use crate::numberfield::NumberFieldContext;

pub use classes::{enumerate_value_classes, ClassOptions, ClassTable, Product, ValueClass};
pub use report::{analyze, analyze_graph, build_for, AnalysisConfig, EntropyReport, Estimators};
pub use classes::DEFAULT_MAX_CLASSES;
pub use spectral::{spectral_lower_bound, SpectralBound, DEFAULT_MAX_ITERATIONS};

const U: f64 = f64::EPSILON / 2.0;

/// A floating value with a bound on its accumulated rounding error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    pub fn lower(&self) -> f64 {
        sub_down(self.value, self.error)
    }

    pub fn upper(&self) -> f64 {
        add_up(self.value, self.error)
    }
}

/// Error allowance for `Σ m_c ℓ_c` over `k` terms with `Σ m_c = 1`,
/// where each `ℓ_c` is a logarithm of magnitude at most `max_log`.
fn allowance(k: usize, max_log: f64) -> f64 {
    8.0 * U * (k as f64 + 8.0) * (max_log + 2.0)
}

/// `Hₙ = -Σ mass · ln(mass)` over value classes.
pub fn compute_hn(table: &ClassTable) -> Estimate {
    let mut h = 0.0;
    let mut max_log: f64 = 0.0;
    let nl = table.n as f64 * libm::log(table.bias.den() as f64);
    for c in &table.classes {
        let l = c.ln_mass(table.n, table.bias);
        h -= c.mass * l;
        max_log = max_log.max(l.abs() + nl);
    }
    Estimate { value: h, error: allowance(table.len(), max_log) }
}

/// `Lₙ` and `Lₙ′` together, streamed over the classes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RowEstimates {
    /// `-max_i Σ mass · ln(row sum i)`.
    pub ln: Estimate,
    /// `-Σ mass · ln(max_i row sum i)`.
    pub ln_prime: Estimate,
    /// Row attaining the maximum in `Lₙ`.
    pub argmax_row: usize,
}

/// Row sums of `M_{a_1} ⋯ M_{a_n}` for the class representative, as
/// natural logarithms (`-inf` for empty rows).
fn class_row_logs(table: &ClassTable, mp: &MatrixPair<'_>, c: &ValueClass, out: &mut Vec<f64>) -> Result<()> {
    let dim = mp.dim();
    out.clear();
    let scale = crate::entropy::classes::exact_scale(mp.bias(), table.n).map_or(f64::INFINITY, |s| s as f64);
    let log = |r: f64| if r > 0.0 { libm::log(r / scale) } else { f64::NEG_INFINITY };
    if let Some(prod) = c.product.as_ref().filter(|p| p.dim() == dim) {
        out.extend(prod.row_sums().into_iter().map(|r| log(r as f64)));
        return Ok(());
    }
    if table.scale.is_some() {
        let mut v = vec![1u128; dim];
        let mut w = vec![0u128; dim];
        for &a in c.word.iter().rev() {
            for (i, wi) in w.iter_mut().enumerate() {
                let mut s: u128 = 0;
                for (j, wt) in mp.row(a, i) {
                    s = s
                        .checked_add((wt as u128).checked_mul(v[j]).ok_or(crate::Error::Overflow)?)
                        .ok_or(crate::Error::Overflow)?;
                }
                *wi = s;
            }
            core::mem::swap(&mut v, &mut w);
        }
        out.extend(v.into_iter().map(|r| log(r as f64)));
    } else {
        let den = mp.bias().den() as f64;
        let mut v = vec![1.0f64; dim];
        let mut w = vec![0.0f64; dim];
        for &a in c.word.iter().rev() {
            for (i, wi) in w.iter_mut().enumerate() {
                *wi = mp.row(a, i).map(|(j, wt)| wt as f64 / den * v[j]).sum();
            }
            core::mem::swap(&mut v, &mut w);
        }
        out.extend(v.into_iter().map(|r| if r > 0.0 { libm::log(r) } else { f64::NEG_INFINITY }));
    }
    Ok(())
}

/// Both row-based estimators on the graph underlying `mp`.
pub fn compute_row_estimates(table: &ClassTable, mp: &MatrixPair<'_>) -> Result<RowEstimates> {
    let dim = mp.dim();
    let mut sums = vec![0.0f64; dim];
    let mut ln_prime = 0.0;
    let mut max_log: f64 = 0.0;
    let mut logs = Vec::with_capacity(dim);
    let nl = table.n as f64 * libm::log(mp.bias().den() as f64);
    for c in &table.classes {
        class_row_logs(table, mp, c, &mut logs)?;
        let mut best = f64::NEG_INFINITY;
        for (s, &l) in sums.iter_mut().zip(&logs) {
            *s += c.mass * l;
            best = best.max(l);
            if l.is_finite() {
                max_log = max_log.max(l.abs() + nl);
            }
        }
        ln_prime -= c.mass * best;
    }
    let (argmax_row, best) = sums
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &s)| if s > acc.1 { (i, s) } else { acc });
    let err = allowance(table.len(), max_log);
    Ok(RowEstimates {
        ln: Estimate { value: -best, error: err },
        ln_prime: Estimate { value: ln_prime, error: err },
        argmax_row,
    })
}

/// `Lₙ = -sup_i Σ mass · ln(Σ_j (M_{x,n})_{ij})`.
pub fn compute_ln(table: &ClassTable, mp: &MatrixPair<'_>) -> Result<f64> {
    Ok(compute_row_estimates(table, mp)?.ln.value)
}

/// `Lₙ′ = -Σ mass · ln ‖M_{x,n}‖` with the row-sum norm. On a pruned graph
/// this is `L̃ₙ`.
pub fn compute_ln_prime(table: &ClassTable, mp: &MatrixPair<'_>) -> Result<f64> {
    Ok(compute_row_estimates(table, mp)?.ln_prime.value)
}

/// Certified enclosure `[lower, upper]` of `H(β, p)` from `Hₙ`:
/// `lower = Hₙ/n - (ln(C(β) + 1) + l ln(n + 1))/n`, `upper = Hₙ/n`.
pub fn theorem1_enclosure(ctx: &NumberFieldContext, hn: &Estimate, n: usize) -> (f64, f64) {
    let nf = n as f64;
    let c_hi = ctx.c_beta().to_f64_bounds().1;
    let mut corr = ln_up(c_hi + 1.0).next_up();
    if ctx.l() > 0 {
        corr = (corr + (ctx.l() as f64 * ln_up(nf + 1.0)).next_up()).next_up();
    }
    let lower = div_down(sub_down(hn.lower(), corr), nf);
    let upper = div_up(hn.upper(), nf);
    (lower, upper)
}

/// `min(1, lower / ln β)` and `min(1, upper / ln β)` with outward rounding.
pub fn dimension_bounds(ctx: &NumberFieldContext, lower: f64, upper: f64) -> (f64, f64) {
    let (lb_lo, lb_hi) = ctx.ln_beta_bounds();
    let lo = if lower >= 0.0 { div_down(lower, lb_hi) } else { div_down(lower, lb_lo) };
    let hi = div_up(upper, lb_lo);
    (lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0))
}

/// `0.44 · min(ln 2, ln M_β) / ln β`, for comparison with a known general
/// lower bound on the entropy.
pub fn mahler_comparison(ctx: &NumberFieldContext) -> f64 {
    let m = ctx.mahler().mid().to_f64_approx();
    let v = libm::log(m).min(core::f64::consts::LN_2);
    0.44 * v / libm::log(ctx.beta_f64())
}

/// Ratio of a natural-log quantity to `ln β`.
pub fn ratio(ctx: &NumberFieldContext, value: f64) -> f64 {
    value / libm::log(ctx.beta_f64())
}

/// Rounded-down lower end of a ratio, for certified comparisons.
pub(crate) fn ratio_lower(ctx: &NumberFieldContext, value: f64) -> f64 {
    let (lo, hi) = ctx.ln_beta_bounds();
    if value >= 0.0 {
        div_down(value, hi)
    } else {
        div_down(value, lo)
    }
}

/// Rounded-up upper end of a ratio.
pub(crate) fn ratio_upper(ctx: &NumberFieldContext, value: f64) -> f64 {
    let (lo, hi) = ctx.ln_beta_bounds();
    if value >= 0.0 {
        div_up(value, lo)
    } else {
        div_up(value, hi)
    }
}
