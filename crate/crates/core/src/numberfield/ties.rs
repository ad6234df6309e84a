//! Exact decision of boundary ties `|x^{(j)}| (|β^{(j)}| - 1) = 1` at a
//! non-real conjugate `z = β^{(j)}`.
//!
//! With `A = |x(z)|^2` and `B = |z|^2`, the tie is equivalent to
//! `Q = (A(B + 1) - 1)^2 - 4A^2 B = 0` together with `A(B + 1) - 1 > 0`.
//! Both `A` and `B` are values of polynomials in `u = z`, `v = conj(z)`, so
//! `Q` is the image of an element of `R = Z[u, v] / (m(u), m(v))` under one
//! of the `d^2` homomorphisms `R -> C`. The characteristic polynomial `g` of
//! multiplication by `Q` on `R` has exactly these images as roots. Its
//! nonzero roots are bounded below in modulus by a Cauchy bound, so a
//! sufficiently tight enclosure of `Q(z, conj z)` decides whether it is zero.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::interval::{ComplexInterval, Dyadic, Interval};

use super::element::FieldElement;
use super::poly::IntPolynomial;

/// Element of `R`, stored as `coef(u^a v^b)` at index `a * d + b`.
#[derive(Clone, Debug, PartialEq)]
struct Tensor {
    d: usize,
    c: Vec<BigInt>,
}

impl Tensor {
    fn zero(d: usize) -> Self {
        Tensor { d, c: vec![BigInt::zero(); d * d] }
    }

    fn constant(d: usize, k: i64) -> Self {
        let mut t = Self::zero(d);
        t.c[0] = BigInt::from(k);
        t
    }

    fn monomial(d: usize, a: usize, b: usize) -> Self {
        let mut t = Self::zero(d);
        t.c[a * d + b] = BigInt::one();
        t
    }

    /// `x(u)` when `by_u`, else `x(v)`.
    fn embed(x: &FieldElement, by_u: bool) -> Self {
        let d = x.degree_bound();
        let mut t = Self::zero(d);
        for (k, c) in x.coeffs().iter().enumerate() {
            let idx = if by_u { k * d } else { k };
            t.c[idx] = c.clone();
        }
        t
    }

    fn add(&self, o: &Self) -> Self {
        Tensor { d: self.d, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    fn sub(&self, o: &Self) -> Self {
        Tensor { d: self.d, c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Tensor { d: self.d, c: self.c.iter().map(|a| a * &k).collect() }
    }

    fn mul(&self, o: &Self, m: &[BigInt]) -> Self {
        let d = self.d;
        let w = 2 * d - 1;
        let mut full = vec![BigInt::zero(); w * w];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (a1, b1) = (i / d, i % d);
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (a2, b2) = (j / d, j % d);
                full[(a1 + a2) * w + b1 + b2] += a * b;
            }
        }
        // Reduce the u-degree, then the v-degree, with u^d = -sum m_k u^k.
        for a in (d..w).rev() {
            for b in 0..w {
                let c = core::mem::take(&mut full[a * w + b]);
                if c.is_zero() {
                    continue;
                }
                for k in 0..d {
                    full[(a - d + k) * w + b] -= &c * &m[k];
                }
            }
        }
        for b in (d..w).rev() {
            for a in 0..d {
                let c = core::mem::take(&mut full[a * w + b]);
                if c.is_zero() {
                    continue;
                }
                for k in 0..d {
                    full[a * w + b - d + k] -= &c * &m[k];
                }
            }
        }
        let mut out = Tensor::zero(d);
        for a in 0..d {
            for b in 0..d {
                out.c[a * d + b] = core::mem::take(&mut full[a * w + b]);
            }
        }
        out
    }
}

/// Characteristic polynomial `det(xI - M)`, highest degree first, by
/// Berkowitz's division-free algorithm.
pub(crate) fn charpoly(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut v = vec![BigInt::one(), -&m[0][0]];
    for r in 1..n {
        // Toeplitz column: 1, -s, -R C, -R A C, ..., -R A^{r-1} C.
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-&m[r][r]);
        let mut col: Vec<BigInt> = (0..r).map(|i| m[i][r].clone()).collect();
        for k in 0..r {
            let rc: BigInt = (0..r).map(|j| &m[r][j] * &col[j]).sum();
            t.push(-rc);
            if k + 1 < r {
                col = (0..r).map(|i| (0..r).map(|j| &m[i][j] * &col[j]).sum()).collect();
            }
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, ti) in t.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                if i + j < r + 2 {
                    next[i + j] += ti * vj;
                }
            }
        }
        v = next;
    }
    v
}

/// Exact tie test at a non-real conjugate.
///
/// `z` must enclose the conjugate tightly. Returns `Some(true)` for an exact
/// tie, `Some(false)` when there is provably none, and `None` when the
/// enclosure is too wide to separate `Q` from zero.
pub(crate) fn complex_tie(p: &IntPolynomial, x: &FieldElement, z: &ComplexInterval) -> Option<bool> {
    let d = p.degree();
    let m = p.coeffs();
    let xu = Tensor::embed(x, true);
    let xv = Tensor::embed(x, false);
    let a = xu.mul(&xv, m);
    let b = Tensor::monomial(d, 1, 1);
    let one = Tensor::constant(d, 1);
    let s = a.mul(&b.add(&one), m).sub(&one);
    let q = s.mul(&s, m).sub(&a.mul(&a, m).mul(&b, m).scale(4));

    // Multiplication-by-Q matrix; column i is Q times the i-th monomial.
    let n = d * d;
    let mut mat = vec![vec![BigInt::zero(); n]; n];
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        let col = q.mul(&Tensor::monomial(d, i / d, i % d), m);
        for (row, c) in col.c.into_iter().enumerate() {
            mat[row][i] = c;
        }
    }
    let g = charpoly(&mat);
    // g is highest first; its constant term is the last entry.
    if !g[n].is_zero() {
        return Some(false);
    }
    let low = (0..=n).rev().find(|&i| !g[i].is_zero())?;
    let g_low = g[low].abs();
    let g_max = g[..low].iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero);
    // Every nonzero root w of g satisfies |w| >= |g_low| / (|g_low| + max |g_i|).
    let prec = z.prec();
    let delta = Interval::from_bigint(&g_low, prec)
        .div(&Interval::from_bigint(&(&g_low + &g_max), prec))?;

    let mut xz = ComplexInterval::from_int(0, prec);
    for c in x.coeffs().iter().rev() {
        xz = xz.mul(z).add(&ComplexInterval::real(Interval::from_bigint(c, prec)));
    }
    let av = xz.norm_sqr();
    let bv = z.norm_sqr();
    let sv = av.mul(&bv.add_int(1)).add_int(-1);
    let qv = sv.sqr().sub(&av.sqr().mul(&bv).mul_int(&BigInt::from(4)));
    if qv.is_positive() || qv.is_negative() {
        return Some(false);
    }
    if qv.abs().hi() < delta.lo() {
        return if sv.is_positive() {
            Some(true)
        } else if sv.hi() <= &Dyadic::zero() {
            Some(false)
        } else {
            None
        };
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&c| BigInt::from(c)).collect()).collect()
    }

    #[test]
    fn berkowitz_small_matrices() {
        let m = mat(&[&[1, 2], &[3, 4]]);
        assert_eq!(charpoly(&m), [1, -5, -2].map(BigInt::from));
        // Companion matrix of x^3 - 2x^2 + 3x - 5.
        let c = mat(&[&[0, 0, 5], &[1, 0, -3], &[0, 1, 2]]);
        assert_eq!(charpoly(&c), [1, -2, 3, -5].map(BigInt::from));
    }

    #[test]
    fn detects_exact_tie_at_complex_root() {
        // Roots 1 ± i√3 have modulus 2, so |1| (|z| - 1) = 1 exactly.
        let p = IntPolynomial::unchecked([4, -2, 1].map(BigInt::from).to_vec());
        let approx = super::super::roots::symmetric_approximations(p.coeffs(), 0).unwrap();
        let z = super::super::roots::certify(p.coeffs(), &approx, 512).unwrap();
        let one = FieldElement::from_int(1, 2);
        assert_eq!(complex_tie(&p, &one, &z[0]), Some(true));
        assert_eq!(complex_tie(&p, &one.neg(), &z[0]), Some(true));
        assert_eq!(complex_tie(&p, &FieldElement::from_int(2, 2), &z[0]), Some(false));
        // |z - 1| = √3.
        let zm1 = FieldElement::from_i64(&[-1, 1]);
        assert_eq!(complex_tie(&p, &zm1, &z[0]), Some(false));
    }

    #[test]
    fn tensor_multiplication_respects_both_relations() {
        let p = IntPolynomial::parse("x^2 - x - 1").unwrap();
        let u = Tensor::monomial(2, 1, 0);
        let v = Tensor::monomial(2, 0, 1);
        // u^2 = u + 1 and u v stays as a basis monomial.
        assert_eq!(u.mul(&u, p.coeffs()), Tensor::monomial(2, 1, 0).add(&Tensor::constant(2, 1)));
        assert_eq!(u.mul(&v, p.coeffs()), Tensor::monomial(2, 1, 1));
    }
}
