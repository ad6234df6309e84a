//! Perron root of the averaged matrix `p M₀ + (1 - p) M₁` with a certified
//! Collatz–Wielandt bracket.
//!
//! The spectral radius of a nonnegative matrix is the largest spectral
//! radius of its strongly connected components, so each nontrivial
//! component is handled separately. For an irreducible block `B` and any
//! positive vector `v`, `min_i (Bv)_i / v_i <= λ(B) <= max_i (Bv)_i / v_i`.
//! The vector comes from power iteration on `B + σI`, which is primitive
//! and so converges even when `B` is periodic.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{MatrixPair, LABELS};

/// Stop once the bracket is narrower than this.
pub const BRACKET_WIDTH: f64 = 1e-10;
/// Default iteration budget per component.
pub const DEFAULT_MAX_ITERATIONS: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SpectralBound {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    /// `-ln λ`, rounded down from the upper end of the bracket.
    pub bound: f64,
    pub iterations: usize,
}

/// Strongly connected components by Tarjan's algorithm, iteratively.
pub(crate) fn strongly_connected(adj: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let n = adj.len();
    let mut index = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0u32;
    let mut call: Vec<(u32, usize)> = Vec::new();
    for root in 0..n as u32 {
        if index[root as usize] != u32::MAX {
            continue;
        }
        call.push((root, 0));
        while let Some(top) = call.last_mut() {
            let (v, pos) = *top;
            let vu = v as usize;
            if index[vu] == u32::MAX {
                index[vu] = counter;
                low[vu] = counter;
                counter += 1;
                stack.push(v);
                on_stack[vu] = true;
            }
            if pos < adj[vu].len() {
                top.1 += 1;
                let w = adj[vu][pos];
                let wu = w as usize;
                if index[wu] == u32::MAX {
                    call.push((w, 0));
                } else if on_stack[wu] {
                    low[vu] = low[vu].min(index[wu]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                let pu = parent as usize;
                low[pu] = low[pu].min(low[vu]);
            }
            if low[vu] == index[vu] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w as usize] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}

/// Certified bracket on the Perron root and the bound `-ln λ`.
pub fn spectral_lower_bound(mp: &MatrixPair<'_>, max_iterations: usize) -> Result<SpectralBound> {
    let g = mp.graph();
    let n = g.len();
    let den = mp.bias().den() as f64;
    let lw = mp.averaged_label_weights();
    let weights: [f64; 3] = core::array::from_fn(|k| lw[k] as f64 / (den * den));

    let adj: Vec<Vec<u32>> = (0..n)
        .map(|i| g.out_edges(i).iter().flatten().copied().collect())
        .collect();
    let mut lo_best = 0.0f64;
    let mut hi_best = 0.0f64;
    let mut total_iter = 0usize;
    let mut local = vec![u32::MAX; n];
    for comp in strongly_connected(&adj) {
        let m = comp.len();
        if m == 1 && !adj[comp[0] as usize].contains(&comp[0]) {
            continue;
        }
        for (k, &v) in comp.iter().enumerate() {
            local[v as usize] = k as u32;
        }
        // Block rows as (local column, weight).
        let rows: Vec<Vec<(u32, f64)>> = comp
            .iter()
            .map(|&v| {
                LABELS
                    .iter()
                    .zip(&weights)
                    .filter_map(|(&e, &w)| {
                        let t = g.target(v as usize, e)?;
                        let lt = local[t];
                        (lt != u32::MAX).then_some((lt, w))
                    })
                    .collect()
            })
            .collect();
        let (lo, hi, it) = block_perron(&rows, max_iterations)?;
        total_iter += it;
        for &v in &comp {
            local[v as usize] = u32::MAX;
        }
        lo_best = lo_best.max(lo);
        hi_best = hi_best.max(hi);
    }
    let bound = crate::bounds::ln_up(hi_best);
    Ok(SpectralBound { lambda_lo: lo_best, lambda_hi: hi_best, bound: -bound, iterations: total_iter })
}

fn block_perron(rows: &[Vec<(u32, f64)>], max_iterations: usize) -> Result<(f64, f64, usize)> {
    const U: f64 = f64::EPSILON / 2.0;
    let m = rows.len();
    let sigma = 0.5 * rows.iter().map(|r| r.iter().map(|e| e.1).sum::<f64>()).fold(0.0, f64::max);
    let mut v = vec![1.0f64; m];
    let mut bv = vec![0.0f64; m];
    let (mut lo, mut hi) = (0.0, f64::INFINITY);
    for it in 1..=max_iterations {
        for (i, r) in rows.iter().enumerate() {
            bv[i] = r.iter().map(|&(j, w)| w * v[j as usize]).sum();
        }
        if it % 8 == 1 || it == max_iterations {
            let mut rmin = f64::INFINITY;
            let mut rmax = 0.0f64;
            for i in 0..m {
                let q = bv[i] / v[i];
                rmin = rmin.min(q);
                rmax = rmax.max(q);
            }
            // Each ratio carries at most a few roundings.
            lo = (rmin * (1.0 - 16.0 * U)).max(lo);
            hi = (rmax * (1.0 + 16.0 * U)).min(hi);
            if hi - lo < BRACKET_WIDTH {
                return Ok((lo, hi, it));
            }
        }
        let mut norm = 0.0f64;
        for i in 0..m {
            v[i] = bv[i] + sigma * v[i];
            norm = norm.max(v[i]);
        }
        for x in v.iter_mut() {
            *x /= norm;
            if *x < f64::MIN_POSITIVE {
                *x = f64::MIN_POSITIVE;
            }
        }
    }
    Err(Error::SpectralNotConverged { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tarjan_finds_cycles() {
        // 0 -> 1 -> 2 -> 0, 2 -> 3, 3 -> 3, 4 isolated.
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![3], vec![]];
        let mut comps = strongly_connected(&adj);
        comps.sort();
        assert_eq!(comps, vec![vec![0, 1, 2], vec![3], vec![4]]);
    }

    #[test]
    fn periodic_block_converges() {
        // A 2-cycle with unit weights has λ = 1 but is not primitive.
        let rows = vec![vec![(1u32, 1.0)], vec![(0u32, 1.0)]];
        let (lo, hi, _) = block_perron(&rows, 10_000).unwrap();
        assert!(lo <= 1.0 && 1.0 <= hi && hi - lo < BRACKET_WIDTH);
    }
}
