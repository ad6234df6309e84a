//! Monic integer polynomials: parsing, Sturm sequences and the
//! irreducibility test.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest degree accepted by the parser and constructor.
pub const MAX_DEGREE: usize = 24;

/// A validated minimal polynomial: monic, irreducible, degree at least two,
/// with exactly one real root in `(1, 2)`.
///
/// Coefficients are stored constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Parse either `"x^4 - x^3 - x^2 + x - 1"` or the constant-first list
    /// `"-1,1,-1,-1,1"`, then validate.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_coefficients(text)?)
    }

    /// Validate a constant-first coefficient vector.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        trim(&mut coeffs);
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::Parse(format!("degree above {MAX_DEGREE} is not supported")));
        }
        if coeffs.len() < 3 {
            return Err(Error::DegreeTooSmall);
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::NotMonic);
        }
        if let Some(f) = find_monic_factor(&coeffs) {
            return Err(Error::Reducible(Self::unchecked(f).to_string()));
        }
        let one = (BigInt::one(), BigInt::one());
        let two = (BigInt::from(2), BigInt::one());
        match count_real_roots(&coeffs, Some(&one), Some(&two)) {
            0 => Err(Error::NoRootInRange),
            1 => Ok(IntPolynomial { coeffs }),
            k => Err(Error::MultipleRootsInRange(k)),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Wrap coefficients without validation.
    pub(crate) fn unchecked(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPolynomial { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Constant-first coefficients.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficients as machine integers, when they fit.
    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        eval(&self.coeffs, x)
    }

    /// `p(x) = x^d p(1/x)`.
    pub fn is_self_reciprocal(&self) -> bool {
        let d = self.degree();
        (0..=d).all(|i| self.coeffs[i] == self.coeffs[d - i])
    }

    /// Number of roots on the unit circle, decided exactly.
    ///
    /// Only self-reciprocal polynomials of even degree can have such roots.
    /// For those, `y = x + 1/x` maps each conjugate pair on the circle to a
    /// real root of the trace polynomial in `(-2, 2)`.
    pub fn unit_circle_root_count(&self) -> usize {
        let d = self.degree();
        if d % 2 == 1 || !self.is_self_reciprocal() {
            return 0;
        }
        let t = self.trace_polynomial();
        let lo = (BigInt::from(-2), BigInt::one());
        let hi = (BigInt::from(2), BigInt::one());
        2 * count_real_roots(&t, Some(&lo), Some(&hi))
    }

    /// For self-reciprocal `p` of degree `2m`, the polynomial `T` with
    /// `x^{-m} p(x) = T(x + 1/x)`.
    pub fn trace_polynomial(&self) -> Vec<BigInt> {
        let m = self.degree() / 2;
        // v_k(y) = x^k + x^{-k}: v_0 = 2, v_1 = y, v_{k+1} = y v_k - v_{k-1}.
        let mut prev = vec![BigInt::from(2)];
        let mut cur = vec![BigInt::zero(), BigInt::one()];
        let mut t = vec![self.coeffs[m].clone()];
        for k in 1..=m {
            if k > 1 {
                let mut next = vec![BigInt::zero()];
                next.extend(cur.iter().cloned());
                for (i, c) in prev.iter().enumerate() {
                    next[i] -= c;
                }
                prev = core::mem::replace(&mut cur, next);
            }
            add_scaled(&mut t, &cur, &self.coeffs[m + k]);
        }
        trim(&mut t);
        t
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Parse a polynomial into constant-first coefficients without validating it.
pub fn parse_coefficients(text: &str) -> Result<Vec<BigInt>> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    if s.contains(&',') || !s.iter().any(|c| c.is_ascii_alphabetic()) {
        return s
            .split(|&c| c == ',')
            .map(|part| {
                let t: String = part.iter().collect();
                t.parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{t}'")))
            })
            .collect();
    }

    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut var: Option<char> = None;
    let mut pos = 0;
    while pos < s.len() {
        let sign = match s[pos] {
            '+' => {
                pos += 1;
                1
            }
            '-' => {
                pos += 1;
                -1
            }
            _ if pos == 0 => 1,
            c => return Err(Error::Parse(format!("unexpected '{c}'"))),
        };
        let coef = read_digits(&s, &mut pos);
        if pos < s.len() && s[pos] == '*' && s.get(pos + 1) != Some(&'*') {
            if coef.is_none() {
                return Err(Error::Parse("dangling '*'".into()));
            }
            pos += 1;
        }
        let exp = if pos < s.len() && s[pos].is_ascii_alphabetic() {
            let v = s[pos];
            if *var.get_or_insert(v) != v {
                return Err(Error::Parse("more than one variable".into()));
            }
            pos += 1;
            let power = if s.get(pos) == Some(&'^') {
                pos += 1;
                true
            } else if s.get(pos) == Some(&'*') && s.get(pos + 1) == Some(&'*') {
                pos += 2;
                true
            } else {
                false
            };
            if power {
                let e = read_digits(&s, &mut pos)
                    .ok_or_else(|| Error::Parse("missing exponent".into()))?;
                e.to_usize()
                    .filter(|&e| e <= MAX_DEGREE)
                    .ok_or_else(|| Error::Parse(format!("exponent {e} too large")))?
            } else {
                1
            }
        } else {
            if coef.is_none() {
                return Err(Error::Parse("empty term".into()));
            }
            0
        };
        accumulate(&mut coeffs, exp, sign, coef);
    }
    Ok(coeffs)
}

fn read_digits(s: &[char], pos: &mut usize) -> Option<BigInt> {
    let start = *pos;
    while *pos < s.len() && s[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return None;
    }
    let t: String = s[start..*pos].iter().collect();
    t.parse().ok()
}

fn accumulate(coeffs: &mut Vec<BigInt>, exp: usize, sign: i32, coef: Option<BigInt>) {
    if coeffs.len() <= exp {
        coeffs.resize(exp + 1, BigInt::zero());
    }
    let c = coef.unwrap_or_else(BigInt::one);
    if sign < 0 {
        coeffs[exp] -= c;
    } else {
        coeffs[exp] += c;
    }
}

// ---------------------------------------------------------------------------
// Dense polynomial helpers over the integers (constant term first).

pub(crate) fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn add_scaled(acc: &mut Vec<BigInt>, q: &[BigInt], k: &BigInt) {
    if acc.len() < q.len() {
        acc.resize(q.len(), BigInt::zero());
    }
    for (a, c) in acc.iter_mut().zip(q) {
        *a += c * k;
    }
}

pub(crate) fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Sign of `p(num/den)` for `den > 0`.
fn sign_at(p: &[BigInt], point: &(BigInt, BigInt)) -> i32 {
    let (num, den) = point;
    // den^deg * p(num/den) = sum p_i num^i den^(deg-i).
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * num + c * &dpow;
        dpow *= den;
    }
    sign(&acc)
}

fn sign(v: &BigInt) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

pub(crate) fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    let g = p.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in p.iter_mut() {
            *c /= &g;
        }
    }
    p
}

/// Remainder of `a` modulo `b`, scaled by a positive constant.
fn positive_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let (scale, sb) = (lb.abs(), sign(lb));
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let lr = r.last().unwrap().clone() * BigInt::from(sb);
        for c in r.iter_mut() {
            *c *= &scale;
        }
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &lr * c;
        }
        trim(&mut r);
    }
    primitive(r)
}

/// Sturm sequence of a squarefree polynomial.
pub(crate) fn sturm_sequence(p: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut seq = vec![p.to_vec(), primitive(derivative(p))];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        if seq[n - 1].len() == 1 {
            break;
        }
        let r: Vec<BigInt> = positive_prem(&seq[n - 2], &seq[n - 1])
            .into_iter()
            .map(|c| -c)
            .collect();
        seq.push(r);
    }
    seq
}

fn changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn changes_at(seq: &[Vec<BigInt>], point: Option<&(BigInt, BigInt)>, upper: bool) -> usize {
    match point {
        Some(pt) => changes(seq.iter().map(|q| sign_at(q, pt))),
        None => changes(seq.iter().map(|q| {
            let s = sign(q.last().unwrap());
            let odd = (q.len() - 1) % 2 == 1;
            if upper || !odd {
                s
            } else {
                -s
            }
        })),
    }
}

/// Number of distinct real roots of squarefree `p` in `(lo, hi]`; `None`
/// endpoints mean infinity. Points are `(num, den)` with `den > 0`.
pub(crate) fn count_real_roots(
    p: &[BigInt],
    lo: Option<&(BigInt, BigInt)>,
    hi: Option<&(BigInt, BigInt)>,
) -> usize {
    let seq = sturm_sequence(p);
    let a = changes_at(&seq, lo, false);
    let b = changes_at(&seq, hi, true);
    a.saturating_sub(b)
}

/// Exact division by a monic polynomial, or `None` if it leaves a remainder.
pub(crate) fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() <= db {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for s in (0..q.len()).rev() {
        let c = r[s + db].clone();
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[s + i] -= &c * bc;
            }
        }
        q[s] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Irreducibility by Kronecker's method.
//
// A monic factor f of degree k is determined by its values at k integer
// points, and each value must divide the corresponding value of p. The
// search interpolates f in Newton form; divided differences of an integer
// polynomial at integer nodes are integers, which prunes most branches
// early. Survivors are filtered by the Landau-Mignotte coefficient bound
// and confirmed by exact division.

fn divisors(n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut m = n;
    let mut q = 2u64;
    while q * q <= m {
        let mut e = 0;
        while m.is_multiple_of(q) {
            m /= q;
            e += 1;
        }
        if e > 0 {
            primes.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (q, e) in primes {
        let len = divs.len();
        let mut pw = 1u64;
        for _ in 0..e {
            pw *= q;
            for i in 0..len {
                divs.push(divs[i] * pw);
            }
        }
    }
    divs.sort_unstable();
    divs
}

struct Node {
    t: BigInt,
    values: Vec<BigInt>,
}

/// A nontrivial monic factor of the monic polynomial `p`, if one exists.
pub(crate) fn find_monic_factor(p: &[BigInt]) -> Option<Vec<BigInt>> {
    let d = p.len() - 1;
    if d < 2 {
        return None;
    }
    // Candidate nodes, fewest divisors first.
    let mut nodes: Vec<Node> = Vec::new();
    let span = (d as i64) + 6;
    for t in -span..=span {
        let tb = BigInt::from(t);
        let v = eval(p, &tb);
        if v.is_zero() {
            return Some(vec![-tb, BigInt::one()]);
        }
        let Some(m) = v.abs().to_u64().filter(|&m| m <= 1_000_000_000_000) else {
            continue;
        };
        let mut values = Vec::new();
        for q in divisors(m) {
            values.push(BigInt::from(q));
            values.push(-BigInt::from(q));
        }
        nodes.push(Node { t: tb, values });
    }
    nodes.sort_by_key(|n| (n.values.len(), n.t.abs()));
    let norm_sq: BigInt = p.iter().map(|c| c * c).sum();

    for k in 1..=d / 2 {
        if nodes.len() < k {
            break;
        }
        let (interp, checks) = nodes.split_at(k);
        let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(k);
        if let Some(f) = search(p, interp, checks, &norm_sq, &mut table) {
            return Some(f);
        }
    }
    None
}

fn search(
    p: &[BigInt],
    nodes: &[Node],
    checks: &[Node],
    norm_sq: &BigInt,
    table: &mut Vec<Vec<BigInt>>,
) -> Option<Vec<BigInt>> {
    let i = table.len();
    if i == nodes.len() {
        return assemble(p, nodes, checks, norm_sq, table);
    }
    for v in &nodes[i].values {
        // Row i of the divided-difference table: row[j] = f[t_{i-j}..t_i].
        let mut row = Vec::with_capacity(i + 1);
        row.push(v.clone());
        let mut ok = true;
        for j in 1..=i {
            let num = &row[j - 1] - &table[i - 1][j - 1];
            let den = &nodes[i].t - &nodes[i - j].t;
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                ok = false;
                break;
            }
            row.push(q);
        }
        if !ok {
            continue;
        }
        table.push(row);
        let found = search(p, nodes, checks, norm_sq, table);
        table.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn assemble(
    p: &[BigInt],
    nodes: &[Node],
    checks: &[Node],
    norm_sq: &BigInt,
    table: &[Vec<BigInt>],
) -> Option<Vec<BigInt>> {
    let k = nodes.len();
    // Values at the nodes belong to g = f - prod(x - t_i), which has degree
    // below k and vanishing leading part, so f = g + prod(x - t_i).
    let mut f: Vec<BigInt> = vec![BigInt::zero(); k + 1];
    let mut basis = vec![BigInt::one()];
    for (j, node) in nodes.iter().enumerate() {
        add_scaled(&mut f, &basis, &table[j][j]);
        basis = mul_linear(&basis, &node.t);
    }
    add_scaled(&mut f, &basis, &BigInt::one());

    let mut binom = BigInt::one();
    for (j, c) in f.iter().enumerate() {
        if c * c > &binom * &binom * norm_sq {
            return None;
        }
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    for node in checks.iter().take(3) {
        let fv = eval(&f, &node.t);
        if fv.is_zero() || !eval(p, &node.t).is_multiple_of(&fv) {
            return None;
        }
    }
    div_exact_monic(p, &f).map(|_| f)
}

/// `q(x) * (x - t)`.
fn mul_linear(q: &[BigInt], t: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); q.len() + 1];
    for (i, c) in q.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * t;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn parses_both_syntaxes() {
        let p = IntPolynomial::parse("x^2 - x - 1").unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.coeffs(), &ints(&[-1, -1, 1])[..]);
        let q = IntPolynomial::parse("-1,1,-1,-1,1").unwrap();
        assert_eq!(q, IntPolynomial::parse("x^4 - x^3 - x^2 + x - 1").unwrap());
        assert_eq!(q.to_string(), "x^4 - x^3 - x^2 + x - 1");
        assert_eq!(
            parse_coefficients("2*x**3 + 3x - 7").unwrap(),
            ints(&[-7, 3, 0, 2])
        );
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(matches!(IntPolynomial::parse("x^2 - 2x + 1"), Err(Error::Reducible(_))));
        assert_eq!(IntPolynomial::parse("2x^2 - x - 1"), Err(Error::NotMonic));
        assert_eq!(IntPolynomial::parse("x - 1"), Err(Error::DegreeTooSmall));
        assert_eq!(IntPolynomial::parse("x^2 - 5"), Err(Error::NoRootInRange));
        assert!(matches!(IntPolynomial::parse("x^2 + y"), Err(Error::Parse(_))));
        assert!(matches!(IntPolynomial::parse("x^^2"), Err(Error::Parse(_))));
        // (x^2 - x - 1)(x^2 + x - 1) has no linear factor.
        assert!(matches!(
            IntPolynomial::parse("x^4 - 3x^2 + 1"),
            Err(Error::Reducible(_))
        ));
        // (x^3 - x - 1)(x^3 + x + 1)
        assert!(matches!(
            IntPolynomial::new(ints(&[-1, -2, -1, 0, 0, 0, 1])),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn sturm_counts_roots() {
        // (x - 1)(x - 2)(x - 3) has roots at 1, 2, 3.
        let p = ints(&[-6, 11, -6, 1]);
        let half = (BigInt::from(3), BigInt::from(2));
        let big = (BigInt::from(10), BigInt::one());
        assert_eq!(count_real_roots(&p, None, None), 3);
        assert_eq!(count_real_roots(&p, Some(&half), Some(&big)), 2);
        assert_eq!(count_real_roots(&ints(&[1, 0, 1]), None, None), 0);
    }

    #[test]
    fn lehmer_has_eight_roots_on_the_circle() {
        let p = IntPolynomial::parse("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1").unwrap();
        assert!(p.is_self_reciprocal());
        assert_eq!(p.unit_circle_root_count(), 8);
        let g = IntPolynomial::parse("x^2 - x - 1").unwrap();
        assert_eq!(g.unit_circle_root_count(), 0);
    }

    #[test]
    fn divisor_enumeration() {
        assert_eq!(divisors(12), [1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), [1]);
        assert_eq!(divisors(97), [1, 97]);
    }
}
