//! Brute-force references for testing: every one of the `2ⁿ` digit words is
//! enumerated and evaluated separately, with no transition graph and no
//! matrices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::Bias;
use crate::numberfield::{FieldElement, IntPolynomial};

/// Longest word length accepted by the enumerations here.
pub const MAX_WORD_LENGTH: usize = 20;

/// Words sharing one value.
#[derive(Clone, Debug, PartialEq)]
pub struct WordClass {
    /// `𝒩ₙ(a)` for every member `a`.
    pub count: u64,
    /// `ℳₙ(a)`, the total `m_p` mass of the class.
    pub mass: f64,
    /// Members in increasing lexicographic order.
    pub words: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WordTable {
    pub n: usize,
    /// Keyed by `Σ aᵢ β^{n-i}` in the power basis.
    pub entries: BTreeMap<FieldElement, WordClass>,
}

impl WordTable {
    /// `-Σ mass · ln(mass)`.
    pub fn hn(&self) -> f64 {
        self.entries.values().map(|c| -c.mass * libm::log(c.mass)).sum()
    }

    pub fn total_mass(&self) -> f64 {
        self.entries.values().map(|c| c.mass).sum()
    }

    pub fn total_count(&self) -> u64 {
        self.entries.values().map(|c| c.count).sum()
    }
}

/// Reduce an integer polynomial in `β` modulo the monic minimal polynomial.
fn reduce(mut c: Vec<BigInt>, m: &[BigInt]) -> FieldElement {
    let d = m.len() - 1;
    while c.len() > d {
        let top = c.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = c.len() - d;
        for k in 0..d {
            c[shift + k] -= &top * &m[k];
        }
    }
    c.resize(d, BigInt::zero());
    FieldElement::from_coeffs(c)
}

/// `Σ aᵢ β^{n-i}` for a word `a₁ ⋯ aₙ`.
pub fn word_value(p: &IntPolynomial, word: &[u8]) -> FieldElement {
    let c: Vec<BigInt> = word.iter().rev().map(|&a| BigInt::from(a)).collect();
    if c.is_empty() {
        return FieldElement::zero(p.degree());
    }
    reduce(c, p.coeffs())
}

fn word_mass(word: &[u8], bias: Bias) -> f64 {
    let (p, q) = (bias.value(), 1.0 - bias.value());
    word.iter().map(|&a| if a == 0 { p } else { q }).product()
}

fn word_of(bits: u32, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((bits >> (n - 1 - i)) & 1) as u8).collect()
}

/// Group all words of length `n` by value, sorting and scanning.
pub fn brute_force_table(p: &IntPolynomial, n: usize, bias: Bias) -> Result<WordTable> {
    if n > MAX_WORD_LENGTH {
        return Err(Error::TooLarge(n));
    }
    let mut all: Vec<(FieldElement, Vec<u8>)> = (0..1u32 << n)
        .map(|bits| {
            let w = word_of(bits, n);
            (word_value(p, &w), w)
        })
        .collect();
    all.sort();
    let mut entries = BTreeMap::new();
    let mut i = 0;
    while i < all.len() {
        let j = i + all[i..].iter().take_while(|e| e.0 == all[i].0).count();
        let words: Vec<Vec<u8>> = all[i..j].iter().map(|e| e.1.clone()).collect();
        let mass = words.iter().map(|w| word_mass(w, bias)).sum();
        entries.insert(all[i].0.clone(), WordClass { count: (j - i) as u64, mass, words });
        i = j;
    }
    Ok(WordTable { n, entries })
}

/// `β y + e` on small coefficient vectors: shift, then reduce the top term.
fn step(y: &[i64], m: &[i64], e: i64) -> Vec<i64> {
    let d = y.len();
    let top = y[d - 1];
    let mut out = Vec::with_capacity(d);
    out.push(e - top * m[0]);
    for k in 1..d {
        out.push(y[k - 1] - top * m[k]);
    }
    out
}

/// Row sums of `M_{a₁} ⋯ M_{aₙ}` over the given vertex set: for each row
/// `x`, the `m_p` mass of the words `b` with
/// `β^k x + Σ_{i≤k} (aᵢ - bᵢ) β^{k-i}` in the set for every `k`.
///
/// Panics if coefficients do not fit in `i64`.
pub fn brute_force_row_sums(
    p: &IntPolynomial,
    vertices: &[FieldElement],
    word: &[u8],
    bias: Bias,
) -> Vec<f64> {
    let small: Vec<Vec<i64>> = vertices.iter().map(|v| v.to_i64().expect("small vertex")).collect();
    let set: BTreeSet<&[i64]> = small.iter().map(Vec::as_slice).collect();
    let m = p.coeffs_i64().expect("small polynomial");
    let weights = [bias.value(), 1.0 - bias.value()];
    // memo[k] maps y to the mass of the completions from step k at y.
    let mut memo: Vec<BTreeMap<Vec<i64>, f64>> = vec![BTreeMap::new(); word.len() + 1];

    fn go(
        k: usize,
        y: &[i64],
        word: &[u8],
        set: &BTreeSet<&[i64]>,
        m: &[i64],
        w: &[f64; 2],
        memo: &mut Vec<BTreeMap<Vec<i64>, f64>>,
    ) -> f64 {
        if k == word.len() {
            return 1.0;
        }
        if let Some(&v) = memo[k].get(y) {
            return v;
        }
        let mut total = 0.0;
        for b in 0..2u8 {
            let next = step(y, m, word[k] as i64 - b as i64);
            if set.contains(next.as_slice()) {
                total += w[b as usize] * go(k + 1, &next, word, set, m, w, memo);
            }
        }
        memo[k].insert(y.to_vec(), total);
        total
    }

    small.iter().map(|x| go(0, x, word, &set, &m, &weights, &mut memo)).collect()
}

/// `(Lₙ, Lₙ′)` over the given vertex set, from per-class row sums.
pub fn brute_force_row_estimators(
    p: &IntPolynomial,
    vertices: &[FieldElement],
    table: &WordTable,
    bias: Bias,
) -> (f64, f64) {
    let mut sums = vec![0.0; vertices.len()];
    let mut ln_prime = 0.0;
    for class in table.entries.values() {
        let rows = brute_force_row_sums(p, vertices, &class.words[0], bias);
        let mut best = 0.0f64;
        for (s, &r) in sums.iter_mut().zip(&rows) {
            *s += class.mass * libm::log(r);
            best = best.max(r);
        }
        ln_prime -= class.mass * libm::log(best);
    }
    let ln = -sums.into_iter().fold(f64::NEG_INFINITY, f64::max);
    (ln, ln_prime)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_collisions() {
        let p = IntPolynomial::parse("x^2 - x - 1").unwrap();
        let t = brute_force_table(&p, 3, Bias::half()).unwrap();
        assert_eq!(t.entries.len(), 7);
        assert_eq!(t.total_count(), 8);
        let pair = t.entries.values().find(|c| c.count == 2).unwrap();
        assert_eq!(pair.words, [vec![0, 1, 1], vec![1, 0, 0]]);
        assert_eq!(pair.mass, 0.25);
        assert!((t.hn() - 2.75 * core::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn values_reduce_by_the_minimal_polynomial() {
        let p = IntPolynomial::parse("x^2 - x - 1").unwrap();
        // β² = β + 1.
        assert_eq!(word_value(&p, &[1, 0, 0]), FieldElement::from_i64(&[1, 1]));
        assert_eq!(word_value(&p, &[]), FieldElement::zero(2));
    }

    #[test]
    fn word_length_is_capped() {
        let p = IntPolynomial::parse("x^2 - x - 1").unwrap();
        assert_eq!(brute_force_table(&p, 21, Bias::half()), Err(Error::TooLarge(21)));
    }
}
