use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::poly::IntPolynomial;

/// Element `c_0 + c_1 β + ... + c_{d-1} β^{d-1}` of `Z[β]`.
///
/// Equality and ordering compare coefficient vectors exactly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    coeffs: Vec<BigInt>,
}

impl FieldElement {
    pub fn zero(d: usize) -> Self {
        FieldElement { coeffs: vec![BigInt::zero(); d] }
    }

    pub fn from_int(k: i64, d: usize) -> Self {
        let mut x = Self::zero(d);
        x.coeffs[0] = BigInt::from(k);
        x
    }

    /// The generator `β` itself.
    pub fn beta(d: usize) -> Self {
        let mut x = Self::zero(d);
        if d > 1 {
            x.coeffs[1] = BigInt::from(1);
        }
        x
    }

    /// Panics unless `coeffs.len() == d` is the degree the caller intends.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        FieldElement { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        FieldElement { coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `β · x`, reduced by the minimal polynomial.
    pub fn mul_by_beta(&self, p: &IntPolynomial) -> Self {
        let d = self.coeffs.len();
        let top = self.coeffs[d - 1].clone();
        let mut out = Vec::with_capacity(d);
        out.push(BigInt::zero());
        out.extend(self.coeffs[..d - 1].iter().cloned());
        if !top.is_zero() {
            for (o, m) in out.iter_mut().zip(p.coeffs()) {
                *o -= &top * m;
            }
        }
        FieldElement { coeffs: out }
    }

    pub fn add_int(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += k;
        out
    }

    /// `β · x + k`, the edge map of the transition graph.
    pub fn step(&self, p: &IntPolynomial, k: i64) -> Self {
        let mut y = self.mul_by_beta(p);
        y.coeffs[0] += k;
        y
    }

    pub fn add(&self, other: &Self) -> Self {
        FieldElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        FieldElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        FieldElement { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self, p: &IntPolynomial) -> Self {
        let d = self.coeffs.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        let m = p.coeffs();
        for k in (d..2 * d - 1).rev() {
            let c = core::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, mi) in m[..d].iter().enumerate() {
                prod[k - d + i] -= &c * mi;
            }
        }
        prod.truncate(d);
        FieldElement { coeffs: prod }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_squared_is_beta_plus_one() {
        let p = IntPolynomial::parse("x^2 - x - 1").unwrap();
        let b = FieldElement::beta(2);
        assert_eq!(b.mul_by_beta(&p), FieldElement::from_i64(&[1, 1]));
        assert_eq!(b.mul(&b, &p), FieldElement::from_i64(&[1, 1]));
        let z = FieldElement::zero(2);
        assert_eq!(z.mul_by_beta(&p), z);
        assert_eq!(z.add_int(-1), FieldElement::from_i64(&[-1, 0]));
    }

    #[test]
    fn multiplication_matches_repeated_shift() {
        let p = IntPolynomial::parse("x^4 - x^3 - x^2 + x - 1").unwrap();
        let x = FieldElement::from_i64(&[2, -1, 0, 3]);
        let mut y = x.clone();
        let mut b3 = FieldElement::from_int(1, 4);
        for _ in 0..3 {
            y = y.mul_by_beta(&p);
            b3 = b3.mul_by_beta(&p);
        }
        assert_eq!(x.mul(&b3, &p), y);
    }
}
