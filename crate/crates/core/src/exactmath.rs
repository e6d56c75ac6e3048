//! Exact integer, rational and polynomial arithmetic.
//!
//! Everything here is backed by `num-bigint`/`num-rational`, so factorials,
//! multinomials and polynomial coefficients never overflow or round. The
//! polynomial type is dense in the monomial basis; conversions to the shifted
//! binomial bases `C(n - c, k)` and to the falling factorial basis go through
//! repeated exact synthetic division.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational to `f64`, falling back to a ratio of rounded parts when the
/// direct conversion is unavailable.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Returns the integer value of `r`, or `None` if it has a denominator.
pub fn as_integer(r: &BigRational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `2^e` for any integer exponent, as an exact rational.
pub fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// Binomial coefficient extended to every integer `n`.
///
/// Zero when `k < 0` or `0 <= n < k`; for negative `n` the polynomial
/// extension `n (n-1) ... (n-k+1) / k!` is used.
pub fn binomial(n: impl Into<BigInt>, k: i64) -> BigInt {
    let n = n.into();
    if k < 0 {
        return BigInt::zero();
    }
    if !n.is_negative() && BigInt::from(k) > n {
        return BigInt::zero();
    }
    // Exact at every step: the running product of i+1 consecutive integers
    // is divisible by (i+1)!.
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= &n - i;
        acc /= i + 1;
    }
    acc
}

/// A composition: a nonempty sequence of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("a composition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::invalid("composition parts must be positive"));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `n! / (d_1! ... d_k!)`; the parts must sum to `n`.
pub fn multinomial(n: u32, delta: &Composition) -> Result<BigInt> {
    if delta.total() != u64::from(n) {
        return Err(Error::invalid(format!(
            "composition {delta} does not sum to {n}"
        )));
    }
    let denom = delta
        .parts()
        .iter()
        .fold(BigInt::one(), |acc, &p| acc * factorial(p));
    Ok(factorial(n) / denom)
}

/// Consecutive differences of `0 = i_0 < i_1 < ... < i_k < i_{k+1} = n`.
pub fn difference_composition(set: &[u32], n: u32) -> Result<Composition> {
    let mut elems = set.to_vec();
    elems.sort_unstable();
    elems.dedup();
    if elems.first() == Some(&0) {
        return Err(Error::invalid(
            "difference composition needs positive elements",
        ));
    }
    if let Some(&max) = elems.last() {
        if n <= max {
            return Err(Error::invalid(format!("n = {n} must exceed max = {max}")));
        }
    }
    let mut parts = Vec::with_capacity(elems.len() + 1);
    let mut prev = 0;
    for e in elems.into_iter().chain(std::iter::once(n)) {
        parts.push(e - prev);
        prev = e;
    }
    Composition::new(parts)
}

/// Dense polynomial in one variable with exact rational coefficients.
///
/// `coeffs[i]` multiplies `n^i`. Trailing zeros are trimmed on construction,
/// so the zero polynomial has no coefficients and [`ExactPoly::degree`]
/// returns `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    coeffs: Vec<BigRational>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The polynomial `n - r`.
    pub fn linear_root(r: BigRational) -> Self {
        Self::new(vec![-r, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&rat(x))
    }

    /// Divides by `n - r`, returning quotient and remainder `p(r)`.
    pub fn div_linear(&self, r: &BigRational) -> (ExactPoly, BigRational) {
        if self.coeffs.is_empty() {
            return (ExactPoly::zero(), BigRational::zero());
        }
        let d = self.coeffs.len() - 1;
        let mut quot = vec![BigRational::zero(); d];
        let mut carry = BigRational::zero();
        for i in (0..=d).rev() {
            carry = &self.coeffs[i] + &carry * r;
            if i > 0 {
                quot[i - 1] = carry.clone();
            }
        }
        (ExactPoly::new(quot), carry)
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rat_to_f64).collect()
    }

    /// Integer coefficients, or an internal error naming the first fraction.
    pub fn integer_coeffs(&self) -> Result<Vec<BigInt>> {
        integral(&self.coeffs)
    }
}

/// Coerces a coefficient list to integers; a fraction is an internal error.
pub fn integral(coeffs: &[BigRational]) -> Result<Vec<BigInt>> {
    coeffs
        .iter()
        .enumerate()
        .map(|(index, c)| {
            as_integer(c).ok_or_else(|| Error::NonIntegral {
                index,
                value: c.to_string(),
            })
        })
        .collect()
}

impl Add<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&ExactPoly> for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        if self.is_zero() || rhs.is_zero() {
            return ExactPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPoly::new(out)
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExactPoly> for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: &ExactPoly) -> ExactPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 if show_mag => write!(f, "*n")?,
                1 => write!(f, "n")?,
                _ if show_mag => write!(f, "*n^{i}")?,
                _ => write!(f, "n^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for ExactPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        as_strings(&self.coeffs, s)
    }
}

/// Serializes exact numbers as decimal strings, for `serialize_with`.
pub fn as_strings<T: fmt::Display, S: Serializer>(
    v: &[T],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}

/// `C(n, m)` as a polynomial in `n`.
pub fn binom_poly(m: u32) -> ExactPoly {
    shifted_binom_poly(0, m)
}

/// `C(n - center, k)` as a polynomial in `n`.
pub fn shifted_binom_poly(center: i64, k: u32) -> ExactPoly {
    let mut p = ExactPoly::one();
    for j in 0..k {
        let factor = ExactPoly::linear_root(rat(center + i64::from(j)));
        p = (&p * &factor).scale(&ratio(1, i64::from(j) + 1));
    }
    p
}

/// `C(n, delta(J))` for a set `J` of positive integers, as a polynomial in
/// `n`: `C(n, max J) * C(max J; delta^-)`.
pub fn multinomial_poly(set: &[u32]) -> ExactPoly {
    let mut elems = set.to_vec();
    elems.sort_unstable();
    elems.dedup();
    let Some(&top) = elems.last() else {
        return ExactPoly::one();
    };
    let inner = difference_composition(&elems[..elems.len() - 1], top)
        .and_then(|d| multinomial(top, &d))
        .expect("prefix of a sorted positive set is valid");
    binom_poly(top).scale(&BigRational::from_integer(inner))
}

/// Newton coefficients of `p` at nodes `center, center+1, ...`:
/// `p(n) = sum_k b_k (n-center)(n-center-1)...(n-center-k+1)`.
fn newton_coeffs(p: &ExactPoly, center: i64) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(p.coeffs.len());
    let mut rest = p.clone();
    let mut node = center;
    while !rest.is_zero() {
        let (q, r) = rest.div_linear(&rat(node));
        out.push(r);
        rest = q;
        node += 1;
    }
    out
}

/// Coefficients of a polynomial in the basis `C(n - center, k)`, `k >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomExpansion {
    pub center: i64,
    pub coeffs: Vec<BigRational>,
}

impl BinomExpansion {
    pub fn to_poly(&self) -> ExactPoly {
        from_binom_basis(self)
    }
}

pub fn to_binom_basis(p: &ExactPoly, center: i64) -> BinomExpansion {
    let coeffs = newton_coeffs(p, center)
        .into_iter()
        .enumerate()
        .map(|(k, b)| b * BigRational::from_integer(factorial(k as u32)))
        .collect();
    BinomExpansion { center, coeffs }
}

pub fn from_binom_basis(e: &BinomExpansion) -> ExactPoly {
    e.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(ExactPoly::zero(), |acc, (k, c)| {
            &acc + &shifted_binom_poly(e.center, k as u32).scale(c)
        })
}

/// Coefficients in the falling factorial basis `n(n-1)...(n-k+1)`.
pub fn to_falling_factorial_basis(p: &ExactPoly) -> Vec<BigRational> {
    newton_coeffs(p, 0)
}

pub fn from_falling_factorial_basis(coeffs: &[BigRational]) -> ExactPoly {
    from_newton(coeffs, 0)
}

fn from_newton(coeffs: &[BigRational], center: i64) -> ExactPoly {
    let mut acc = ExactPoly::zero();
    for (k, b) in coeffs.iter().enumerate().rev() {
        // b_0 + (n-c)(b_1 + (n-c-1)(b_2 + ...))
        acc = &ExactPoly::constant(b.clone())
            + &(&acc * &ExactPoly::linear_root(rat(center + k as i64)));
    }
    acc
}

/// Finite-difference interpolation through `values[i] = f(start + i)`,
/// returned in the monomial basis.
pub fn interpolate_consecutive(start: i64, values: &[BigRational]) -> ExactPoly {
    let mut diffs = Vec::with_capacity(values.len());
    let mut row = values.to_vec();
    while !row.is_empty() {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    from_binom_basis(&BinomExpansion {
        center: start,
        coeffs: diffs,
    })
}

pub fn sign(e: i64) -> BigInt {
    if e.is_even() {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}
