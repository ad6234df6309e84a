//! Certified isolation of all complex roots of a squarefree monic integer
//! polynomial.
//!
//! Approximations come from Aberth's method in `f64`, are refined by Newton
//! steps in multiprecision, and are then certified with Smith's
//! Gerschgorin-type theorem: for a monic `p` of degree `d` and distinct
//! points `z_i`, every root lies in the union of the discs
//! `|z - z_i| <= d |W_i|`, where `W_i = p(z_i) / prod_{j != i}(z_i - z_j)`,
//! and a union of `m` discs disjoint from the rest holds exactly `m` roots.
//! Pairwise disjoint discs therefore isolate one root each.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::interval::{ComplexInterval, Dyadic, Interval, Round};

/// `f64` root approximations by simultaneous Aberth iteration.
pub(crate) fn aberth(p: &[BigInt]) -> Vec<Complex64> {
    let a: Vec<f64> = p.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    let d = a.len() - 1;
    let lead = a[d];
    let cauchy = 1.0 + a[..d].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let r0 = libm::pow((a[0] / lead).abs(), 1.0 / d as f64).clamp(0.5, cauchy);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let t = 2.0 * core::f64::consts::PI * k as f64 / d as f64 + 0.4;
            Complex64::new(r0 * libm::cos(t), r0 * libm::sin(t))
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for k in 0..d {
            let (v, dv) = horner_f64(&a, z[k]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn horner_f64(a: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &c in a.iter().rev() {
        dv = dv * z + v;
        v = v * z + c;
    }
    (v, dv)
}

/// Complex number with dyadic parts, used for uncertified refinement.
#[derive(Clone, Debug)]
pub(crate) struct DyadicComplex {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl DyadicComplex {
    fn from_f64(z: Complex64) -> Self {
        DyadicComplex { re: Dyadic::from_f64(z.re), im: Dyadic::from_f64(z.im) }
    }

    fn round(&self, prec: u32) -> Self {
        DyadicComplex { re: self.re.round(prec, Round::Down), im: self.im.round(prec, Round::Down) }
    }

    fn mul(&self, o: &Self, prec: u32) -> Self {
        DyadicComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
        .round(prec)
    }

    fn add(&self, o: &Self) -> Self {
        DyadicComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    fn div(&self, o: &Self, prec: u32) -> Option<Self> {
        let den = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        if den.is_zero() {
            return None;
        }
        let re = self.re.mul(&o.re).add(&self.im.mul(&o.im));
        let im = self.im.mul(&o.re).sub(&self.re.mul(&o.im));
        Some(DyadicComplex { re: re.div(&den, prec, Round::Down), im: im.div(&den, prec, Round::Down) })
    }

    pub fn to_interval(&self, prec: u32) -> ComplexInterval {
        ComplexInterval::new(Interval::point(self.re.clone(), prec), Interval::point(self.im.clone(), prec))
    }
}

/// Newton refinement of one approximation to roughly `prec` bits.
fn refine(p: &[BigInt], z: &DyadicComplex, prec: u32, real: bool) -> DyadicComplex {
    let work = prec + 32;
    let mut z = z.round(work);
    let mut good_bits = 40u32;
    let mut steps = 0;
    while good_bits < work && steps < 64 {
        let mut v = DyadicComplex { re: Dyadic::zero(), im: Dyadic::zero() };
        let mut dv = v.clone();
        for c in p.iter().rev() {
            dv = dv.mul(&z, work).add(&v);
            v = v.mul(&z, work).add(&DyadicComplex { re: Dyadic::from_bigint(c.clone()), im: Dyadic::zero() });
        }
        let Some(step) = v.div(&dv, work) else { break };
        z = DyadicComplex { re: z.re.sub(&step.re), im: z.im.sub(&step.im) }.round(work);
        if real {
            z.im = Dyadic::zero();
        }
        good_bits = good_bits.saturating_mul(2);
        steps += 1;
    }
    z
}

/// Approximations snapped to exact conjugate symmetry: `real_count` real
/// roots first (ascending), then complex roots in conjugate pairs with the
/// positive imaginary part first.
pub(crate) fn symmetric_approximations(p: &[BigInt], real_count: usize) -> Option<Vec<(Complex64, bool)>> {
    let mut z = aberth(p);
    let d = z.len();
    if !(d - real_count).is_multiple_of(2) {
        return None;
    }
    z.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
    let (reals, complex) = z.split_at(real_count);
    let mut out: Vec<(Complex64, bool)> = reals.iter().map(|r| (Complex64::new(r.re, 0.0), true)).collect();
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re));
    let mut upper: Vec<Complex64> = complex.iter().filter(|c| c.im > 0.0).copied().collect();
    if upper.len() * 2 != complex.len() {
        return None;
    }
    upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for u in upper {
        out.push((u, false));
        out.push((u.conj(), false));
    }
    Some(out)
}

/// Refine the given approximations to `prec` bits and certify them.
///
/// Returns one enclosure per approximation, in the same order, or `None`
/// when the discs of Smith's theorem are not yet pairwise disjoint.
pub(crate) fn certify(p: &[BigInt], approx: &[(Complex64, bool)], prec: u32) -> Option<Vec<ComplexInterval>> {
    let d = approx.len();
    let mut centers: Vec<DyadicComplex> = Vec::with_capacity(d);
    let mut i = 0;
    while i < d {
        let (z, real) = approx[i];
        let c = refine(p, &DyadicComplex::from_f64(z), prec, real);
        if real {
            centers.push(c);
            i += 1;
        } else {
            let conj = DyadicComplex { re: c.re.clone(), im: c.im.neg() };
            centers.push(c);
            centers.push(conj);
            i += 2;
        }
    }
    let cprec = prec + 16;
    let boxes: Vec<ComplexInterval> = centers.iter().map(|c| c.to_interval(cprec)).collect();
    let mut radii: Vec<Dyadic> = vec![Dyadic::zero(); d];
    for i in 0..d {
        let z = &boxes[i];
        let mut v = ComplexInterval::from_int(0, cprec);
        for c in p.iter().rev() {
            v = v.mul(z).add(&ComplexInterval::real(Interval::from_bigint(c, cprec)));
        }
        let mut prod = ComplexInterval::from_int(1, cprec);
        for (j, w) in boxes.iter().enumerate() {
            if j != i {
                prod = prod.mul(&z.sub(w));
            }
        }
        let den = prod.norm_sqr();
        if !den.is_positive() {
            return None;
        }
        let w_sq = v.norm_sqr().div(&den)?;
        let r = w_sq.sqrt().hi().mul_int(&BigInt::from(d)).round(cprec, Round::Up);
        radii[i] = r;
    }
    for i in 0..d {
        for j in i + 1..d {
            let dist_sq = boxes[i].sub(&boxes[j]).norm_sqr();
            let rr = radii[i].add(&radii[j]);
            if dist_sq.lo() <= &rr.mul(&rr) {
                return None;
            }
        }
    }
    let out = centers
        .iter()
        .zip(&radii)
        .zip(approx.iter().flat_map(|&(_, real)| if real { vec![true] } else { vec![false, false] }))
        .map(|((c, r), real)| {
            let re = Interval::new(c.re.sub(r), c.re.add(r), prec);
            let im = if real {
                // The disc is symmetric about the real axis and holds a
                // single root, so that root is real.
                Interval::from_int(0, prec)
            } else {
                Interval::new(c.im.sub(r), c.im.add(r), prec)
            };
            ComplexInterval::new(re, im)
        })
        .collect();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn golden_ratio_roots_certified() {
        let p = ints(&[-1, -1, 1]);
        let approx = symmetric_approximations(&p, 2).unwrap();
        let roots = certify(&p, &approx, 128).unwrap();
        let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
        let (lo, hi) = roots[1].re.to_f64_bounds();
        assert!(lo <= phi && phi <= hi);
        assert!(roots[1].re.width() < Dyadic::new(BigInt::from(1), -120));
        let (lo, hi) = roots[0].re.to_f64_bounds();
        assert!(lo <= 1.0 - phi && 1.0 - phi <= hi);
    }

    #[test]
    fn complex_pairs_are_conjugate() {
        // x^4 - x^3 - x^2 + x - 1 has two real and two complex roots.
        let p = ints(&[-1, 1, -1, -1, 1]);
        let approx = symmetric_approximations(&p, 2).unwrap();
        let roots = certify(&p, &approx, 256).unwrap();
        assert_eq!(roots[2].re, roots[3].re);
        assert_eq!(roots[2].im, roots[3].im.neg());
        for r in &roots[2..] {
            let m = r.norm_sqr();
            assert_eq!(m.cmp_int(1), Some(core::cmp::Ordering::Less));
        }
    }

    #[test]
    fn lehmer_roots_certified() {
        let p = ints(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let approx = symmetric_approximations(&p, 2).unwrap();
        assert!(certify(&p, &approx, 128).is_some());
    }
}
