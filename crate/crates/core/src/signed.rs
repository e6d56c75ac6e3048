//! Descent counting in the hyperoctahedral group `B_n` and its even-sign
//! subgroup `D_n`.
//!
//! Counts are exponential polynomials `A(n) 2^n + B(n)`, represented exactly
//! by [`BinaryExpPoly`]. The subtractive recursions give integer values; the
//! inclusion-exclusion sums give the closed forms, which also define the
//! extension to non-integral arguments.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::descent::{d_poly, parse_index_list, DescentSet};
use crate::error::{Error, Result};
use crate::exactmath::{
    as_integer, binomial, multinomial_poly, pow2, rat_to_f64, ratio, sign, ExactPoly,
};

/// `expo(n) * 2^n + plain(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct BinaryExpPoly {
    pub expo: ExactPoly,
    pub plain: ExactPoly,
}

/// Where to evaluate a closed form.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Exact(BigRational),
    Complex(Complex64),
}

/// Exact when evaluated at an integer, floating point otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Approx(Complex64),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Exact(v) => v.is_zero(),
            Value::Approx(z) => z.norm() == 0.0,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Value::Exact(v) => Complex64::new(rat_to_f64(v), 0.0),
            Value::Approx(z) => *z,
        }
    }
}

impl BinaryExpPoly {
    pub fn polynomial(plain: ExactPoly) -> Self {
        BinaryExpPoly {
            expo: ExactPoly::zero(),
            plain,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        BinaryExpPoly {
            expo: self.expo.scale(c),
            plain: self.plain.scale(c),
        }
    }

    /// Multiplies by `2^n`; only valid when there is no polynomial part.
    pub fn times_pow2(plain: &ExactPoly) -> Self {
        BinaryExpPoly {
            expo: plain.clone(),
            plain: ExactPoly::zero(),
        }
    }

    pub fn eval_int(&self, n: i64) -> BigRational {
        self.expo.eval_int(n) * pow2(n) + self.plain.eval_int(n)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let two_z = (z * std::f64::consts::LN_2).exp();
        crate::roots::eval_complex(&self.expo, z) * two_z
            + crate::roots::eval_complex(&self.plain, z)
    }

    pub fn eval(&self, x: &Point) -> Value {
        match x {
            Point::Exact(r) if r.is_integer() => {
                let n = r.to_integer();
                match i64::try_from(n) {
                    Ok(n) => Value::Exact(self.eval_int(n)),
                    Err(_) => Value::Approx(self.eval_complex(Complex64::new(rat_to_f64(r), 0.0))),
                }
            }
            Point::Exact(r) => Value::Approx(self.eval_complex(Complex64::new(rat_to_f64(r), 0.0))),
            Point::Complex(z) => Value::Approx(self.eval_complex(*z)),
        }
    }
}

impl Add<&BinaryExpPoly> for &BinaryExpPoly {
    type Output = BinaryExpPoly;
    fn add(self, rhs: &BinaryExpPoly) -> BinaryExpPoly {
        BinaryExpPoly {
            expo: &self.expo + &rhs.expo,
            plain: &self.plain + &rhs.plain,
        }
    }
}

impl Sub<&BinaryExpPoly> for &BinaryExpPoly {
    type Output = BinaryExpPoly;
    fn sub(self, rhs: &BinaryExpPoly) -> BinaryExpPoly {
        BinaryExpPoly {
            expo: &self.expo - &rhs.expo,
            plain: &self.plain - &rhs.plain,
        }
    }
}

impl fmt::Display for BinaryExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.expo.is_zero(), self.plain.is_zero()) {
            (true, _) => write!(f, "{}", self.plain),
            (false, true) => write!(f, "({})*2^n", self.expo),
            (false, false) => write!(f, "({})*2^n + ({})", self.expo, self.plain),
        }
    }
}

/// A finite set of nonnegative integers, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct SignedDescentSet(Vec<u32>);

impl SignedDescentSet {
    pub fn new(mut elems: Vec<u32>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        SignedDescentSet(elems)
    }

    pub fn empty() -> Self {
        SignedDescentSet(Vec::new())
    }

    /// Subsets of `{0} ∪ [top]`, ordered by bit mask.
    pub fn all_subsets(top: u32) -> impl Iterator<Item = SignedDescentSet> {
        (0..1u64 << (top + 1))
            .map(move |mask| SignedDescentSet((0..=top).filter(|i| mask >> i & 1 == 1).collect()))
    }

    pub fn elems(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn m(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn has_zero(&self) -> bool {
        self.0.first() == Some(&0)
    }

    /// `I⁺ = I - {0}`.
    pub fn plus(&self) -> DescentSet {
        DescentSet::new(self.0.iter().copied().filter(|&i| i != 0).collect())
            .expect("positive elements")
    }

    /// `I ∪ {0}`.
    pub fn with_zero(&self) -> Self {
        let mut v = self.0.clone();
        v.push(0);
        Self::new(v)
    }

    fn minus(&self) -> Option<SignedDescentSet> {
        self.0
            .split_last()
            .map(|(_, rest)| SignedDescentSet(rest.to_vec()))
    }
}

impl From<&DescentSet> for SignedDescentSet {
    fn from(s: &DescentSet) -> Self {
        SignedDescentSet(s.elems().to_vec())
    }
}

impl fmt::Display for SignedDescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

impl FromStr for SignedDescentSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::new(parse_index_list(s)?))
    }
}

fn require_above(set: &SignedDescentSet, n: u32) -> Result<()> {
    if !set.is_empty() && n <= set.m() {
        return Err(Error::invalid(format!(
            "n = {n} must exceed max {set} = {}",
            set.m()
        )));
    }
    Ok(())
}

fn pow2_int(e: u32) -> BigInt {
    BigInt::one() << e
}

fn db_rec(set: &SignedDescentSet, n: u32) -> BigInt {
    match set.minus() {
        None => BigInt::one(),
        Some(lower) => {
            let m = set.m();
            binomial(n, i64::from(m)) * pow2_int(n - m) * db_rec(&lower, m) - db_rec(&lower, n)
        }
    }
}

/// Number of `β ∈ B_n` with descent set `I`, via
/// `d_B(I;n) = C(n,m) 2^{n-m} d_B(I^-;m) - d_B(I^-;n)` and `d_B(∅;n) = 1`.
pub fn db_value(set: &SignedDescentSet, n: u32) -> Result<BigInt> {
    require_above(set, n)?;
    if set.is_empty() && n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    Ok(db_rec(set, n))
}

fn dd_rec(set: &SignedDescentSet, n: u32) -> BigInt {
    match set.minus() {
        None => BigInt::one(),
        Some(lower) => {
            let m = set.m();
            binomial(n, i64::from(m)) * pow2_int(n - m - 1) * db_rec(&lower, m) - dd_rec(&lower, n)
        }
    }
}

/// Number of `β ∈ D_n` with descent set `I`, via
/// `d_D(I;n) = C(n,m) 2^{n-m-1} d_B(I^-;m) - d_D(I^-;n)`.
pub fn dd_value(set: &SignedDescentSet, n: u32) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::invalid("type D needs n >= 2"));
    }
    require_above(set, n)?;
    Ok(dd_rec(set, n))
}

/// Walks `J ⊆ I⁺` yielding `(sign, C(n, δ(J)), δ_1(J))`, with `δ_1 = None`
/// standing for the empty `J` (where `δ_1(J) = n`).
fn pie_terms(set: &SignedDescentSet) -> Vec<(BigRational, ExactPoly, Option<u32>)> {
    let plus = set.plus();
    let elems = plus.elems();
    let k = elems.len();
    (0..1u64 << k)
        .map(|mask| {
            let j: Vec<u32> = (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| elems[b])
                .collect();
            let s = BigRational::from_integer(sign((k - j.len()) as i64));
            (s, multinomial_poly(&j), j.first().copied())
        })
        .collect()
}

/// Closed form of `d_B(I;n)` by inclusion-exclusion over `J ⊆ I⁺`, with
/// weight `2^{n-δ_1(J)}` if `0 ∉ I` and `2^n - 2^{n-δ_1(J)}` if `0 ∈ I`.
pub fn db_pie(set: &SignedDescentSet) -> BinaryExpPoly {
    let zero_in = set.has_zero();
    let mut out = BinaryExpPoly::default();
    for (s, poly, first) in pie_terms(set) {
        let term = match (first, zero_in) {
            (None, false) => BinaryExpPoly::polynomial(ExactPoly::constant(s)),
            (None, true) => BinaryExpPoly {
                expo: ExactPoly::constant(s.clone()),
                plain: ExactPoly::constant(-s),
            },
            (Some(d1), false) => {
                BinaryExpPoly::times_pow2(&poly.scale(&(s * pow2(-i64::from(d1)))))
            }
            (Some(d1), true) => {
                let w = BigRational::one() - pow2(-i64::from(d1));
                BinaryExpPoly::times_pow2(&poly.scale(&(s * w)))
            }
        };
        out = &out + &term;
    }
    out
}

/// Closed form of `d_D(I;n)`: like [`db_pie`] with the exponents lowered by
/// one and the empty-`J` term replaced by `(-1)^k` or `(-1)^k (2^{n-1} - 1)`.
pub fn dd_pie(set: &SignedDescentSet) -> BinaryExpPoly {
    let zero_in = set.has_zero();
    let half = ratio(1, 2);
    let mut out = BinaryExpPoly::default();
    for (s, poly, first) in pie_terms(set) {
        let term = match (first, zero_in) {
            (None, false) => BinaryExpPoly::polynomial(ExactPoly::constant(s)),
            (None, true) => BinaryExpPoly {
                expo: ExactPoly::constant(&s * &half),
                plain: ExactPoly::constant(-s),
            },
            (Some(d1), false) => {
                BinaryExpPoly::times_pow2(&poly.scale(&(s * pow2(-i64::from(d1) - 1))))
            }
            (Some(d1), true) => {
                let w = &half - pow2(-i64::from(d1) - 1);
                BinaryExpPoly::times_pow2(&poly.scale(&(s * w)))
            }
        };
        out = &out + &term;
    }
    out
}

/// `d_B(I;x)` through the closed form.
pub fn db_at(set: &SignedDescentSet, x: &Point) -> Value {
    db_pie(set).eval(x)
}

/// `d_D(I;x)` through the closed form.
pub fn dd_at(set: &SignedDescentSet, x: &Point) -> Value {
    dd_pie(set).eval(x)
}

/// Results of the type B and type D corollaries for one `(I, n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorollaryReport {
    pub set: DescentSet,
    pub n: u32,
    /// `d_B(I;n) + d_B(I_0;n) = 2^n d(I;n)`.
    pub type_b: bool,
    /// `d_D(I;n) + d_D(I_0;n) = 2^{n-1} d(I;n)`.
    pub type_d: bool,
    /// `d_D(I;i) = d_D(I_0;i) = 0` for every `i ∈ I^-`.
    pub type_d_vanishing: bool,
    /// `(i, d_D(I;i), d_D(I_0;i))` for each `i ∈ I^-`, from the closed forms.
    pub type_d_lower: Vec<(u32, String, String)>,
    /// `(d_D(I;m), d_D(I_0;m))` from the closed forms; reported only.
    pub type_d_at_max: Option<(String, String)>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.type_b && self.type_d && self.type_d_vanishing
    }
}

pub fn corollary_checks(set: &DescentSet, n: u32) -> Result<CorollaryReport> {
    if n <= set.m() {
        return Err(Error::invalid(format!("n = {n} must exceed max {set}")));
    }
    if n < 2 {
        return Err(Error::invalid("type D identities need n >= 2"));
    }
    let plain = SignedDescentSet::from(set);
    let zeroed = plain.with_zero();
    let d = as_integer(&d_poly(set).eval_int(i64::from(n))).expect("integral");

    let type_b = db_value(&plain, n)? + db_value(&zeroed, n)? == pow2_int(n) * &d;
    let type_d = dd_value(&plain, n)? + dd_value(&zeroed, n)? == pow2_int(n - 1) * &d;

    let closed_plain = dd_pie(&plain);
    let closed_zeroed = dd_pie(&zeroed);
    let lower = &set.elems()[..set.len().saturating_sub(1)];
    let lower_values: Vec<(u32, BigRational, BigRational)> = lower
        .iter()
        .map(|&i| {
            let x = i64::from(i);
            (i, closed_plain.eval_int(x), closed_zeroed.eval_int(x))
        })
        .collect();
    let type_d_vanishing = lower_values
        .iter()
        .all(|(_, a, b)| a.is_zero() && b.is_zero());
    let type_d_lower = lower_values
        .into_iter()
        .map(|(i, a, b)| (i, a.to_string(), b.to_string()))
        .collect();
    let type_d_at_max = (!set.is_empty()).then(|| {
        let m = i64::from(set.m());
        (
            closed_plain.eval_int(m).to_string(),
            closed_zeroed.eval_int(m).to_string(),
        )
    });

    Ok(CorollaryReport {
        set: set.clone(),
        n,
        type_b,
        type_d,
        type_d_vanishing,
        type_d_lower,
        type_d_at_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn ss(v: &[u32]) -> SignedDescentSet {
        SignedDescentSet::new(v.to_vec())
    }

    #[test]
    fn db_value_examples() {
        assert_eq!(db_value(&ss(&[1]), 2).unwrap(), int(3));
        assert_eq!(db_value(&ss(&[0]), 3).unwrap(), int(7));
        assert_eq!(db_value(&ss(&[0, 1]), 2).unwrap(), int(1));
        assert_eq!(db_value(&ss(&[]), 5).unwrap(), int(1));
        assert!(db_value(&ss(&[2]), 2).is_err());
    }

    #[test]
    fn db_pie_examples() {
        let b = db_pie(&ss(&[1]));
        assert_eq!(b.expo, ExactPoly::new(vec![rat(0), ratio(1, 2)]));
        assert_eq!(b.plain, ExactPoly::from_ints(&[-1]));

        let b = db_pie(&ss(&[0]));
        assert_eq!(b.expo, ExactPoly::one());
        assert_eq!(b.plain, ExactPoly::from_ints(&[-1]));

        let b = db_pie(&ss(&[]));
        assert!(b.expo.is_zero());
        assert_eq!(b.plain, ExactPoly::one());
    }

    #[test]
    fn db_at_examples() {
        let zero = |v: Value| v.is_zero();
        assert!(zero(db_at(&ss(&[0, 2]), &Point::Exact(rat(2)))));
        assert!(zero(db_at(&ss(&[0, 2]), &Point::Exact(rat(0)))));
        assert!(zero(db_at(&ss(&[1]), &Point::Exact(rat(1)))));
        // n 2^{n-1} - 1 at n = 1/2
        match db_at(&ss(&[1]), &Point::Exact(ratio(1, 2))) {
            Value::Approx(z) => {
                let expected = 0.5 * 2f64.powf(-0.5) - 1.0;
                assert!((z.re - expected).abs() < 1e-14 && z.im.abs() < 1e-14);
            }
            Value::Exact(_) => panic!("non-integer point must be approximate"),
        }
    }

    #[test]
    fn dd_value_examples() {
        assert_eq!(dd_value(&ss(&[0]), 3).unwrap(), int(3));
        for n in 2..=8 {
            assert_eq!(dd_value(&ss(&[]), n).unwrap(), int(1));
        }
        assert!(dd_value(&ss(&[]), 1).is_err());
        assert!(dd_value(&ss(&[3]), 3).is_err());
    }

    #[test]
    fn closed_forms_match_recursions() {
        for set in SignedDescentSet::all_subsets(5) {
            let b = db_pie(&set);
            let d = dd_pie(&set);
            for n in (set.m() + 1).max(2)..=9 {
                assert_eq!(
                    b.eval_int(i64::from(n)),
                    BigRational::from_integer(db_value(&set, n).unwrap()),
                    "B {set} n={n}"
                );
                assert_eq!(
                    d.eval_int(i64::from(n)),
                    BigRational::from_integer(dd_value(&set, n).unwrap()),
                    "D {set} n={n}"
                );
            }
        }
    }

    #[test]
    fn recursions_match_enumeration() {
        use crate::enumerate::{descent_histogram, Group};
        for n in 2..=6 {
            let hb = descent_histogram(n, Group::B).unwrap();
            let hd = descent_histogram(n, Group::D).unwrap();
            for set in SignedDescentSet::all_subsets(n - 1) {
                assert_eq!(
                    db_value(&set, n).unwrap(),
                    BigInt::from(hb.get(set.elems())),
                    "B {set} n={n}"
                );
                assert_eq!(
                    dd_value(&set, n).unwrap(),
                    BigInt::from(hd.get(set.elems())),
                    "D {set} n={n}"
                );
            }
        }
    }

    #[test]
    fn corollary_examples() {
        let r = corollary_checks(&DescentSet::new(vec![1]).unwrap(), 2).unwrap();
        assert!(r.passed());
        let r = corollary_checks(&DescentSet::new(vec![1, 2]).unwrap(), 4).unwrap();
        assert!(r.type_b && r.type_d);
        assert_eq!(
            db_value(&ss(&[1, 2]), 4).unwrap() + db_value(&ss(&[0, 1, 2]), 4).unwrap(),
            int(48)
        );
        // The closed forms do not vanish below the maximum; they give +-1/2.
        assert!(!r.type_d_vanishing);
        assert_eq!(
            r.type_d_lower,
            vec![(1, "1/2".to_string(), "-1/2".to_string())]
        );
        assert_eq!(dd_pie(&ss(&[1, 3])).eval_int(1), ratio(1, 2));
        assert!(corollary_checks(&DescentSet::new(vec![3]).unwrap(), 3).is_err());
    }

    #[test]
    fn complex_evaluation_agrees_at_integers() {
        let b = db_pie(&ss(&[0, 2, 3]));
        for n in 4..8 {
            let exact = rat_to_f64(&b.eval_int(n));
            let approx = b.eval_complex(Complex64::new(n as f64, 0.0));
            assert!((approx.re - exact).abs() < 1e-9 * exact.abs().max(1.0));
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(db_pie(&ss(&[0])).to_string(), "(1)*2^n + (-1)");
        assert_eq!(db_pie(&ss(&[])).to_string(), "1");
    }
}
