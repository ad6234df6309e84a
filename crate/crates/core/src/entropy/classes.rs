//! Value classes of digit words and their masses.
//!
//! Words `a_1 ⋯ a_k` are grouped by the exact value `y_k = β y_{k-1} + a_k`.
//! Masses are kept as integers scaled by `den^k` when the bias is the
//! rational `num / den` and the scale fits in `u128`; otherwise in `f64`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Bias, MatrixPair};
use crate::numberfield::FieldElement;

/// Default budget on the number of value classes at any length.
pub const DEFAULT_MAX_CLASSES: usize = 1 << 22;

/// Sparse matrix with exact entries scaled by `den^k`, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    rows: Vec<Vec<(u32, u128)>>,
}

impl Product {
    fn identity(n: usize) -> Self {
        Product { rows: (0..n).map(|i| vec![(i as u32, 1u128)]).collect() }
    }

    /// `self · M_a`.
    fn times(&self, mp: &MatrixPair<'_>, a: u8) -> Result<Self> {
        let mut rows = Vec::with_capacity(self.rows.len());
        let mut acc: BTreeMap<u32, u128> = BTreeMap::new();
        for row in &self.rows {
            for &(j, v) in row {
                for (t, w) in mp.row(a, j as usize) {
                    let add = v.checked_mul(w as u128).ok_or(Error::Overflow)?;
                    let e = acc.entry(t as u32).or_insert(0);
                    *e = e.checked_add(add).ok_or(Error::Overflow)?;
                }
            }
            rows.push(core::mem::take(&mut acc).into_iter().collect());
        }
        Ok(Product { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Entry `(i, j)` scaled by `den^k`.
    pub fn get(&self, i: usize, j: usize) -> u128 {
        self.rows[i]
            .iter()
            .find(|e| e.0 as usize == j)
            .map_or(0, |e| e.1)
    }

    /// Row sums scaled by `den^k`.
    pub fn row_sums(&self) -> Vec<u128> {
        self.rows.iter().map(|r| r.iter().map(|e| e.1).sum()).collect()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }
}

/// One class of words with a common value.
#[derive(Clone, Debug)]
pub struct ValueClass {
    /// `β^n Σ a_i β^{-i}`.
    pub value: FieldElement,
    /// Total `m_p` mass of the words in the class.
    pub mass: f64,
    /// `mass · den^n`, when exact arithmetic is in use.
    pub exact_mass: Option<u128>,
    /// Number of words in the class.
    pub count: u64,
    /// Lexicographically smallest word in the class.
    pub word: Vec<u8>,
    /// `M_{a_1} ⋯ M_{a_n}`, when requested.
    pub product: Option<Product>,
}

impl ValueClass {
    /// `ln(mass)`, computed from the exact mass where available.
    pub fn ln_mass(&self, n: usize, bias: Bias) -> f64 {
        match self.exact_mass {
            Some(m) => libm::log(m as f64 / exact_scale(bias, n).map_or(f64::INFINITY, |s| s as f64)),
            None => libm::log(self.mass),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassOptions {
    /// Carry sparse product matrices and check them on every merge.
    pub with_products: bool,
    pub max_classes: usize,
    /// Use `f64` masses even when exact integers would fit.
    pub float_only: bool,
}

impl Default for ClassOptions {
    fn default() -> Self {
        ClassOptions { with_products: false, max_classes: DEFAULT_MAX_CLASSES, float_only: false }
    }
}

/// All value classes at word length `n`, ordered by value.
#[derive(Clone, Debug)]
pub struct ClassTable {
    pub n: usize,
    pub bias: Bias,
    /// `den^n` when masses are exact.
    pub scale: Option<u128>,
    pub classes: Vec<ValueClass>,
    /// Number of times two prefixes merged into one class.
    pub merges: u64,
    /// Dimension of the graph the products were taken over.
    pub graph_dim: usize,
}

impl ClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Whether the masses add up to exactly one; `None` in float mode.
    pub fn masses_sum_to_one(&self) -> Option<bool> {
        let scale = self.scale?;
        let mut total: u128 = 0;
        for c in &self.classes {
            total = total.checked_add(c.exact_mass?)?;
        }
        Some(total == scale)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Mass {
    Exact(u128),
    Float(f64),
}

impl Mass {
    fn add(self, o: Mass) -> Result<Mass> {
        match (self, o) {
            (Mass::Exact(a), Mass::Exact(b)) => a.checked_add(b).map(Mass::Exact).ok_or(Error::Overflow),
            (Mass::Float(a), Mass::Float(b)) => Ok(Mass::Float(a + b)),
            _ => unreachable!("mixed arithmetic"),
        }
    }

    fn times_digit(self, bias: Bias, b: u8) -> Result<Mass> {
        match self {
            Mass::Exact(a) => a
                .checked_mul(bias.digit_weight(b) as u128)
                .map(Mass::Exact)
                .ok_or(Error::Overflow),
            Mass::Float(a) => {
                let w = if b == 0 { bias.value() } else { 1.0 - bias.value() };
                Ok(Mass::Float(a * w))
            }
        }
    }
}

struct Partial {
    mass: Mass,
    count: u64,
    word: Vec<u8>,
    product: Option<Product>,
}

/// `den^n` if it fits.
pub fn exact_scale(bias: Bias, n: usize) -> Option<u128> {
    let mut s: u128 = 1;
    for _ in 0..n {
        s = s.checked_mul(bias.den() as u128)?;
    }
    Some(s)
}

/// Group all `2^n` words by value with a dynamic program over prefixes.
pub fn enumerate_value_classes(mp: &MatrixPair<'_>, n: usize, opts: ClassOptions) -> Result<ClassTable> {
    let g = mp.graph();
    if !g.depth().covers(n) {
        let depth = match g.depth() {
            crate::graph::Depth::Truncated(d) => d,
            crate::graph::Depth::Complete => n,
        };
        return Err(Error::DepthInsufficient { depth, n });
    }
    let p = g.min_poly();
    let d = p.degree();
    let bias = mp.bias();
    let scale = if opts.float_only { None } else { exact_scale(bias, n) };
    if opts.with_products && scale.is_none() {
        return Err(Error::Overflow);
    }
    let one = if scale.is_some() { Mass::Exact(1) } else { Mass::Float(1.0) };

    let mut level: BTreeMap<FieldElement, Partial> = BTreeMap::new();
    level.insert(
        FieldElement::zero(d),
        Partial {
            mass: one,
            count: 1,
            word: Vec::new(),
            product: opts.with_products.then(|| Product::identity(g.len())),
        },
    );
    let mut merges = 0u64;
    for k in 1..=n {
        let mut next: BTreeMap<FieldElement, Partial> = BTreeMap::new();
        for (y, part) in &level {
            let by = y.mul_by_beta(p);
            for a in 0..2u8 {
                let value = by.add_int(a as i64);
                let mass = part.mass.times_digit(bias, a)?;
                let product = match &part.product {
                    Some(prod) => Some(prod.times(mp, a)?),
                    None => None,
                };
                let mut word = part.word.clone();
                word.push(a);
                match next.get_mut(&value) {
                    Some(existing) => {
                        merges += 1;
                        if existing.product != product {
                            return Err(Error::ProductMismatch);
                        }
                        existing.mass = existing.mass.add(mass)?;
                        existing.count += part.count;
                        if word < existing.word {
                            existing.word = word;
                        }
                    }
                    None => {
                        if next.len() >= opts.max_classes {
                            return Err(Error::ClassBudget { budget: opts.max_classes, length: k });
                        }
                        next.insert(value, Partial { mass, count: part.count, word, product });
                    }
                }
            }
        }
        level = next;
    }

    let scale_f = scale.map(|s| s as f64);
    let classes = level
        .into_iter()
        .map(|(value, part)| {
            let (mass, exact_mass) = match part.mass {
                Mass::Exact(m) => (m as f64 / scale_f.unwrap(), Some(m)),
                Mass::Float(m) => (m, None),
            };
            ValueClass { value, mass, exact_mass, count: part.count, word: part.word, product: part.product }
        })
        .collect();
    Ok(ClassTable { n, bias, scale, classes, merges, graph_dim: g.len() })
}
