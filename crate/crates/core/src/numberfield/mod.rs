//! Exact and certified arithmetic for an algebraic integer `β ∈ (1, 2)` and
//! its Galois conjugates.

pub mod element;
pub mod poly;
pub(crate) mod roots;
pub(crate) mod ties;

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::interval::{ComplexInterval, Dyadic, Interval};

pub use element::FieldElement;
pub use poly::IntPolynomial;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;
/// Default precision ceiling in bits.
pub const MAX_PRECISION: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum ModulusClass {
    GtOne,
    EqOne,
    LtOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum Classification {
    Pisot,
    Salem,
    Other,
}

/// How a value exactly on the bound `|x^{(j)}| (|β^{(j)}| - 1) = 1` is
/// treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum BoundaryRule {
    /// Boundary values are excluded. They can never reach zero, so this
    /// leaves pruned graphs unchanged.
    #[default]
    Strict,
    /// Boundary values are included.
    Inclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MembershipConfig {
    pub boundary: BoundaryRule,
    /// Decide undecidable comparisons exactly instead of failing.
    pub exact_ties: bool,
    pub max_precision: u32,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        MembershipConfig { boundary: BoundaryRule::Strict, exact_ties: true, max_precision: MAX_PRECISION }
    }
}

/// Outcome of comparing `|x^{(j)}| (|β^{(j)}| - 1)` with 1 at every
/// expanding conjugate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

#[derive(Clone, Debug)]
pub struct ConjugateEnclosure {
    /// 1-based position; `β` itself is conjugate 1.
    pub index: usize,
    pub value: ComplexInterval,
    pub modulus_class: ModulusClass,
}

impl ConjugateEnclosure {
    pub fn is_real(&self) -> bool {
        self.value.im.lo().is_zero() && self.value.im.hi().is_zero()
    }

    pub fn approx(&self) -> Complex64 {
        Complex64::new(self.value.re.mid().to_f64_approx(), self.value.im.mid().to_f64_approx())
    }
}

#[derive(Clone, Debug)]
pub struct SeparationConstants {
    pub c_beta: Interval,
    pub c0_n: Interval,
    /// Enclosure of `C(β)(n+1)^l + 1`.
    pub vertex_bound: Interval,
}

impl SeparationConstants {
    /// Largest integer not exceeding the certified upper bound.
    pub fn max_vertices(&self) -> BigInt {
        self.vertex_bound.hi().floor_int()
    }
}

/// `f64` data for a quick, rigorously padded membership test.
#[derive(Clone, Debug)]
struct FastPath {
    powers: Vec<(Complex64, f64)>,
    kappa_lo: f64,
    kappa_hi: f64,
}

#[derive(Clone, Debug)]
struct ExpandingTest {
    /// 0-based conjugate index.
    j: usize,
    real: bool,
    /// Sign of a real conjugate.
    sign: i64,
    fast: FastPath,
}

/// Immutable description of `β` and its conjugates.
#[derive(Clone, Debug)]
pub struct NumberFieldContext {
    min_poly: IntPolynomial,
    precision_bits: u32,
    config: MembershipConfig,
    conjugates: Vec<ConjugateEnclosure>,
    top: Vec<ComplexInterval>,
    top_precision: u32,
    r: usize,
    l: usize,
    c_beta: Interval,
    mahler: Interval,
    tests: Vec<ExpandingTest>,
}

impl NumberFieldContext {
    pub fn new(p: IntPolynomial, precision_bits: u32) -> Result<Self> {
        Self::with_config(p, precision_bits, MembershipConfig::default())
    }

    pub fn with_config(p: IntPolynomial, precision_bits: u32, config: MembershipConfig) -> Result<Self> {
        let precision_bits = precision_bits.max(64);
        let top_precision = config.max_precision.max(precision_bits);
        let coeffs = p.coeffs();
        let d = p.degree();
        let real_count = poly::count_real_roots(coeffs, None, None);
        let approx = roots::symmetric_approximations(coeffs, real_count)
            .ok_or(Error::PrecisionExhausted(top_precision))?;

        // Certify at the working precision first, then at the ceiling used
        // for refinement on demand.
        let mut prec = precision_bits;
        loop {
            if roots::certify(coeffs, &approx, prec).is_some() {
                break;
            }
            if prec >= top_precision {
                return Err(Error::PrecisionExhausted(top_precision));
            }
            prec = (prec * 2).min(top_precision);
        }
        let top = roots::certify(coeffs, &approx, top_precision)
            .ok_or(Error::PrecisionExhausted(top_precision))?;

        let l = p.unit_circle_root_count();
        let mut classes = Vec::with_capacity(d);
        let mut undecided = Vec::new();
        for (i, z) in top.iter().enumerate() {
            match z.norm_sqr().cmp_int(1) {
                Some(Ordering::Greater) => classes.push(ModulusClass::GtOne),
                Some(Ordering::Less) => classes.push(ModulusClass::LtOne),
                _ => {
                    undecided.push(i);
                    classes.push(ModulusClass::EqOne);
                }
            }
        }
        if undecided.len() != l {
            return Err(Error::PrecisionExhausted(top_precision));
        }

        let one = Dyadic::from_int(1);
        let two = Dyadic::from_int(2);
        let beta_idx = (0..d)
            .find(|&i| {
                let z = &top[i];
                z.im.lo().is_zero() && z.im.hi().is_zero() && z.re.lo() > &one && z.re.hi() < &two
            })
            .ok_or(Error::PrecisionExhausted(top_precision))?;

        let approx_of = |i: usize| {
            Complex64::new(top[i].re.mid().to_f64_approx(), top[i].im.mid().to_f64_approx())
        };
        let mut order: Vec<usize> = (0..d).filter(|&i| i != beta_idx).collect();
        order.sort_by(|&a, &b| {
            let (za, zb) = (approx_of(a), approx_of(b));
            zb.norm()
                .total_cmp(&za.norm())
                .then(zb.im.total_cmp(&za.im))
                .then(zb.re.total_cmp(&za.re))
        });
        order.insert(0, beta_idx);

        let top: Vec<ComplexInterval> = order.iter().map(|&i| top[i].clone()).collect();
        let classes: Vec<ModulusClass> = order.iter().map(|&i| classes[i]).collect();
        let conjugates: Vec<ConjugateEnclosure> = top
            .iter()
            .zip(&classes)
            .enumerate()
            .map(|(i, (z, &c))| ConjugateEnclosure {
                index: i + 1,
                value: complex_with_prec(z, precision_bits),
                modulus_class: c,
            })
            .collect();
        let r = classes.iter().filter(|&&c| c == ModulusClass::GtOne).count();

        // C(β) = 2^d prod_{|z| != 1} 1 / ||z| - 1| and M_β = prod_{|z| > 1} |z|.
        let cp = top_precision;
        let mut denom = Interval::from_int(1, cp);
        let mut mahler = Interval::from_int(1, cp);
        for (z, &c) in top.iter().zip(&classes) {
            let m = z.modulus();
            match c {
                ModulusClass::GtOne => {
                    denom = denom.mul(&m.add_int(-1));
                    mahler = mahler.mul(&m);
                }
                ModulusClass::LtOne => denom = denom.mul(&m.neg().add_int(1)),
                ModulusClass::EqOne => {}
            }
        }
        let c_beta = Interval::from_bigint(&(BigInt::from(1) << d), cp)
            .div(&denom)
            .ok_or(Error::PrecisionExhausted(top_precision))?
            .with_prec(precision_bits);
        let mahler = mahler.with_prec(precision_bits);

        // One test per expanding conjugate; the second member of a complex
        // pair has the same modulus for every element, so it is skipped.
        let mut tests = Vec::new();
        for j in 0..d {
            if classes[j] != ModulusClass::GtOne {
                continue;
            }
            let z = &top[j];
            let real = conjugates[j].is_real();
            if !real && z.im.is_negative() {
                continue;
            }
            let sign = if real && z.re.is_negative() { -1 } else { 1 };
            tests.push(ExpandingTest { j, real, sign, fast: fast_path(z, d) });
        }

        Ok(NumberFieldContext {
            min_poly: p,
            precision_bits,
            config,
            conjugates,
            top,
            top_precision,
            r,
            l,
            c_beta,
            mahler,
            tests,
        })
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree()
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn config(&self) -> &MembershipConfig {
        &self.config
    }

    /// Conjugates with `β` first, the rest by decreasing modulus.
    pub fn conjugates(&self) -> &[ConjugateEnclosure] {
        &self.conjugates
    }

    pub fn beta(&self) -> &ConjugateEnclosure {
        &self.conjugates[0]
    }

    /// Midpoint approximation of `β`.
    pub fn beta_f64(&self) -> f64 {
        self.top[0].re.mid().to_f64_approx()
    }

    /// Outward bounds on `ln β`.
    pub fn ln_beta_bounds(&self) -> (f64, f64) {
        let (lo, hi) = self.top[0].re.to_f64_bounds();
        (crate::bounds::ln_down(lo), crate::bounds::ln_up(hi))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn c_beta(&self) -> &Interval {
        &self.c_beta
    }

    pub fn mahler(&self) -> &Interval {
        &self.mahler
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.l == 0
    }

    pub fn classify(&self) -> Classification {
        let d = self.degree();
        if self.r == 1 && self.l == 0 {
            Classification::Pisot
        } else if self.r == 1 && self.l >= 1 && self.l == d - 2 {
            Classification::Salem
        } else {
            Classification::Other
        }
    }

    /// `C(β)`, `C₀(n)` and the cardinality bound `C(β)(n+1)^l + 1`.
    pub fn separation_constants(&self, n: usize) -> SeparationConstants {
        let prec = self.precision_bits;
        let d = self.degree();
        let np1 = Interval::from_int(n as i64 + 1, prec);
        let mut np1_l = Interval::from_int(1, prec);
        for _ in 0..self.l {
            np1_l = np1_l.mul(&np1);
        }
        let mut c0 = Interval::from_int(1, prec);
        for (i, c) in self.conjugates.iter().enumerate() {
            let m = c.value.modulus();
            match c.modulus_class {
                ModulusClass::GtOne if i > 0 => c0 = c0.mul(&m.add_int(-1)),
                ModulusClass::LtOne => c0 = c0.mul(&m.neg().add_int(1)),
                _ => {}
            }
        }
        let scale = Interval::from_bigint(&(BigInt::from(1) << (d - 1)), prec).mul(&np1_l);
        let c0_n = c0.div(&scale).expect("positive scale");
        let vertex_bound = self.c_beta.mul(&np1_l).add_int(1);
        SeparationConstants { c_beta: self.c_beta.clone(), c0_n, vertex_bound }
    }

    /// Enclosure of the `j`-th conjugate (1-based) at the given precision.
    pub fn conjugate_at(&self, j: usize, prec: u32) -> ComplexInterval {
        complex_with_prec(&self.top[j - 1], prec.min(self.top_precision))
    }

    /// Certified enclosure of `x^{(j)}` (1-based `j`) at working precision.
    pub fn eval_conjugate(&self, x: &FieldElement, j: usize) -> ComplexInterval {
        self.eval_at(x, j - 1, self.precision_bits)
    }

    fn eval_at(&self, x: &FieldElement, j0: usize, prec: u32) -> ComplexInterval {
        let z = complex_with_prec(&self.top[j0], prec);
        let mut v = ComplexInterval::from_int(0, prec);
        for c in x.coeffs().iter().rev() {
            v = v.mul(&z).add(&ComplexInterval::real(Interval::from_bigint(c, prec)));
        }
        v
    }

    /// `β x`, reduced exactly.
    pub fn mul_by_beta(&self, x: &FieldElement) -> FieldElement {
        x.mul_by_beta(&self.min_poly)
    }

    /// Whether `x` lies in `V_β` under the configured boundary rule.
    pub fn in_v_beta(&self, x: &FieldElement) -> Result<bool> {
        Ok(match self.membership(x)? {
            Membership::Inside => true,
            Membership::Outside => false,
            Membership::Boundary => self.config.boundary == BoundaryRule::Inclusive,
        })
    }

    /// Three-way membership: strictly inside the bound at every expanding
    /// conjugate, exactly on it at some conjugate, or outside.
    pub fn membership(&self, x: &FieldElement) -> Result<Membership> {
        let mut boundary = false;
        for t in &self.tests {
            match self.compare(x, t)? {
                Ordering::Greater => return Ok(Membership::Outside),
                Ordering::Equal => boundary = true,
                Ordering::Less => {}
            }
        }
        Ok(if boundary { Membership::Boundary } else { Membership::Inside })
    }

    /// Compare `|x^{(j)}| (|β^{(j)}| - 1)` with 1.
    fn compare(&self, x: &FieldElement, t: &ExpandingTest) -> Result<Ordering> {
        if let Some(o) = fast_compare(x, &t.fast) {
            return Ok(o);
        }
        let mut tie_checked = false;
        let mut prec = self.precision_bits;
        loop {
            let v = self.eval_at(x, t.j, prec);
            let kappa = complex_with_prec(&self.top[t.j], prec).modulus().add_int(-1);
            let q = v.norm_sqr().mul(&kappa.sqr());
            match q.cmp_int(1) {
                Some(o) => return Ok(o),
                None if self.config.exact_ties && t.real && !tie_checked => {
                    tie_checked = true;
                    if self.real_tie(x, t.sign) {
                        return Ok(Ordering::Equal);
                    }
                }
                None => {}
            }
            if prec >= self.top_precision {
                break;
            }
            prec = (prec * 2).min(self.top_precision);
        }
        if !self.config.exact_ties {
            return Err(Error::PrecisionExhausted(self.top_precision));
        }
        if t.real {
            // Not a tie, yet inseparable from 1 at the ceiling.
            return Err(Error::PrecisionExhausted(self.top_precision));
        }
        match ties::complex_tie(&self.min_poly, x, &self.top[t.j]) {
            Some(true) => Ok(Ordering::Equal),
            _ => Err(Error::PrecisionExhausted(self.top_precision)),
        }
    }

    /// For a real conjugate `s` with sign `σ`, `|x(s)| (|s| - 1) = 1` holds
    /// exactly when the field element `x (σβ - 1)` equals `±1`.
    fn real_tie(&self, x: &FieldElement, sign: i64) -> bool {
        let d = self.degree();
        let mut c = FieldElement::zero(d).add_int(-1);
        c = c.add(&FieldElement::beta(d).mul(&FieldElement::from_int(sign, d), &self.min_poly));
        let y = x.mul(&c, &self.min_poly);
        y == FieldElement::from_int(1, d) || y == FieldElement::from_int(-1, d)
    }
}

fn complex_with_prec(z: &ComplexInterval, prec: u32) -> ComplexInterval {
    ComplexInterval::new(z.re.with_prec(prec), z.im.with_prec(prec))
}

fn fast_path(z: &ComplexInterval, d: usize) -> FastPath {
    let prec = 192;
    let z = complex_with_prec(z, prec);
    let mut pw = ComplexInterval::from_int(1, prec);
    let mut powers = Vec::with_capacity(d);
    for _ in 0..d {
        let (re, er) = pw.re.to_f64_ball();
        let (im, ei) = pw.im.to_f64_ball();
        powers.push((Complex64::new(re, im), (er + ei).next_up()));
        pw = pw.mul(&z);
    }
    let (kappa_lo, kappa_hi) = z.modulus().add_int(-1).to_f64_bounds();
    FastPath { powers, kappa_lo, kappa_hi }
}

/// Floating-point comparison with a rigorous error allowance; `None` when
/// the margin is too thin to decide.
fn fast_compare(x: &FieldElement, f: &FastPath) -> Option<Ordering> {
    const U: f64 = f64::EPSILON / 2.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    let mut err = 0.0;
    for (c, (p, e)) in x.coeffs().iter().zip(&f.powers) {
        let c = c.to_i64().filter(|c| c.abs() < (1 << 52))? as f64;
        sum += *p * c;
        mag += c.abs() * (p.re.abs() + p.im.abs());
        err += c.abs() * e;
    }
    let n = f.powers.len() as f64;
    let err = (err + 4.0 * (n + 2.0) * U * mag) * (1.0 + 8.0 * n * U);
    let m = sum.norm();
    let lo = (m * (1.0 - 4.0 * U) - err) * f.kappa_lo * (1.0 - 4.0 * U);
    let hi = (m * (1.0 + 4.0 * U) + err) * f.kappa_hi * (1.0 + 4.0 * U);
    if hi < 1.0 {
        Some(Ordering::Less)
    } else if lo > 1.0 {
        Some(Ordering::Greater)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> NumberFieldContext {
        NumberFieldContext::new(IntPolynomial::parse(s).unwrap(), DEFAULT_PRECISION).unwrap()
    }

    fn bounds(i: &Interval) -> (f64, f64) {
        i.to_f64_bounds()
    }

    #[test]
    fn example_quartic_structure() {
        let c = ctx("x^4 - x^3 - x^2 + x - 1");
        assert_eq!(c.r(), 2);
        assert_eq!(c.l(), 0);
        assert!(c.is_hyperbolic());
        assert_eq!(c.classify(), Classification::Other);
        let b = c.beta().approx();
        assert!((b.re - 1.5129).abs() < 1e-4);
        let b2 = c.conjugates()[1].approx();
        assert!((b2.re + 1.1787).abs() < 1e-4 && b2.im == 0.0);
        assert!(c.conjugates()[2..].iter().all(|z| z.modulus_class == ModulusClass::LtOne && !z.is_real()));
    }

    #[test]
    fn golden_ratio_constants() {
        let c = ctx("x^2 - x - 1");
        assert_eq!((c.r(), c.l()), (1, 0));
        assert_eq!(c.classify(), Classification::Pisot);
        let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
        let (lo, hi) = bounds(c.c_beta());
        let expect = 4.0 * phi / (2.0 - phi);
        assert!(lo <= expect * (1.0 + 1e-15) && expect * (1.0 - 1e-15) <= hi);
        assert!((expect - 16.944).abs() < 1e-3);
        let s = c.separation_constants(7);
        assert_eq!(s.max_vertices(), BigInt::from(17));
    }

    #[test]
    fn pisot_and_salem_classification() {
        assert_eq!(ctx("x^3 - x - 1").classify(), Classification::Pisot);
        let lehmer = ctx("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1");
        assert_eq!(lehmer.classify(), Classification::Salem);
        assert_eq!((lehmer.r(), lehmer.l()), (1, 8));
        assert!(!lehmer.is_hyperbolic());
    }

    #[test]
    fn golden_ratio_membership() {
        let c = ctx("x^2 - x - 1");
        assert!(c.in_v_beta(&FieldElement::zero(2)).unwrap());
        assert!(c.in_v_beta(&FieldElement::from_int(1, 2)).unwrap());
        assert!(!c.in_v_beta(&FieldElement::from_int(2, 2)).unwrap());
        // β itself sits exactly on the bound 1/(β - 1) = β.
        let b = FieldElement::beta(2);
        assert_eq!(c.membership(&b).unwrap(), Membership::Boundary);
        assert_eq!(c.membership(&b.neg()).unwrap(), Membership::Boundary);
        assert!(!c.in_v_beta(&b).unwrap());
        let incl = MembershipConfig { boundary: BoundaryRule::Inclusive, ..Default::default() };
        let ci = NumberFieldContext::with_config(c.min_poly().clone(), 128, incl).unwrap();
        assert!(ci.in_v_beta(&b).unwrap());
    }

    #[test]
    fn ties_without_exact_mode_exhaust_precision() {
        let cfg = MembershipConfig { exact_ties: false, max_precision: 256, ..Default::default() };
        let c = NumberFieldContext::with_config(IntPolynomial::parse("x^2-x-1").unwrap(), 128, cfg).unwrap();
        assert_eq!(c.membership(&FieldElement::beta(2)), Err(Error::PrecisionExhausted(256)));
    }

    #[test]
    fn constant_evaluates_to_itself() {
        let c = ctx("x^2 - x - 1");
        let v = c.eval_conjugate(&FieldElement::from_int(1, 2), 2);
        assert_eq!(v.re.cmp_int(1), Some(Ordering::Equal));
    }

    #[test]
    fn mahler_measure_of_example() {
        let c = ctx("x^4 - x^3 - x^2 + x - 1");
        let (lo, hi) = bounds(c.mahler());
        assert!((lo - 1.5129 * 1.1787).abs() < 1e-3 && hi - lo < 1e-12);
    }
}
