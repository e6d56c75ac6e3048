//! The type A descent polynomial `d(I;n)`.
//!
//! Three independent constructions are provided: the subtractive recursion
//! on `I^- = I - {max I}` (producing the polynomial itself), the
//! inclusion-exclusion sum over subsets of `I`, and the positive recursion
//! in `n` obtained by locating the largest entry.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{
    as_integer, binom_poly, difference_composition, multinomial, sign, ExactPoly,
};

/// A finite set of positive integers, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct DescentSet(Vec<u32>);

impl DescentSet {
    pub fn new(mut elems: Vec<u32>) -> Result<Self> {
        if elems.contains(&0) {
            return Err(Error::invalid("descent set elements must be positive"));
        }
        elems.sort_unstable();
        elems.dedup();
        Ok(DescentSet(elems))
    }

    pub fn empty() -> Self {
        DescentSet(Vec::new())
    }

    /// `{lo, lo+1, ..., hi}`.
    pub fn interval(lo: u32, hi: u32) -> Result<Self> {
        Self::new((lo..=hi).collect())
    }

    /// The set whose elements are the set bits of `mask` (bit `i` = `i`).
    pub fn from_mask(mask: u64) -> Self {
        DescentSet((1..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    /// All subsets of `[top]`, ordered by bit mask.
    pub fn all_subsets(top: u32) -> impl Iterator<Item = DescentSet> {
        (0..1u64 << top).map(|m| Self::from_mask(m << 1))
    }

    /// All sets with maximum exactly `m`.
    pub fn with_max(m: u32) -> Vec<DescentSet> {
        if m == 0 {
            return vec![Self::empty()];
        }
        (0..1u64 << (m - 1))
            .map(|low| Self::from_mask((low << 1) | 1 << m))
            .collect()
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

    /// `max(I ∪ {0})`.
    pub fn m(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// Parses a comma-separated list; the empty string is the empty set.
impl FromStr for DescentSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let elems = parse_index_list(s)?;
        Self::new(elems)
    }
}

pub(crate) fn parse_index_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::invalid(format!("malformed set element {t:?}")))
        })
        .collect()
}

/// `I - {max I}`.
pub fn i_minus(set: &DescentSet) -> Result<DescentSet> {
    match set.0.split_last() {
        Some((_, rest)) => Ok(DescentSet(rest.to_vec())),
        None => Err(Error::invalid("I^- is undefined for the empty set")),
    }
}

/// The sets appearing in the positive recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedSets {
    /// `I_k` for `k = 1..=len`, indexed from 0.
    pub lowered: Vec<DescentSet>,
    /// `Î_k` for `k = 1..=len`, indexed from 0.
    pub hatted: Vec<DescentSet>,
    /// `I' = {i_k : i_k - 1 ∉ I}`.
    pub prime: DescentSet,
    /// `I'' = I' - {1}`.
    pub double_prime: DescentSet,
}

pub fn derived_sets(set: &DescentSet) -> Result<DerivedSets> {
    if set.is_empty() {
        return Err(Error::invalid("derived sets need a nonempty I"));
    }
    let e = &set.0;
    let mut lowered = Vec::with_capacity(e.len());
    let mut hatted = Vec::with_capacity(e.len());
    for k in 0..e.len() {
        let low: Vec<u32> = e[..k]
            .iter()
            .copied()
            .chain(e[k..].iter().map(|&i| i - 1))
            .filter(|&i| i != 0)
            .collect();
        lowered.push(DescentSet::new(low)?);
        let hat: Vec<u32> = e[..k]
            .iter()
            .copied()
            .chain(e[k + 1..].iter().map(|&i| i - 1))
            .collect();
        hatted.push(DescentSet::new(hat)?);
    }
    let prime: Vec<u32> = e
        .iter()
        .copied()
        .filter(|&i| i == 1 || !set.contains(i - 1))
        .collect();
    let double_prime: Vec<u32> = prime.iter().copied().filter(|&i| i != 1).collect();
    Ok(DerivedSets {
        lowered,
        hatted,
        prime: DescentSet(prime),
        double_prime: DescentSet(double_prime),
    })
}

type Memo = RwLock<HashMap<Vec<u32>, Arc<ExactPoly>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `d(I;n)` as a polynomial in `n`, via `d(I;n) = C(n,m) d(I^-;m) - d(I^-;n)`.
pub fn d_poly(set: &DescentSet) -> Arc<ExactPoly> {
    if let Some(p) = memo().read().expect("memo lock").get(&set.0) {
        return Arc::clone(p);
    }
    let poly = match set.0.split_last() {
        None => ExactPoly::one(),
        Some((&m, rest)) => {
            let lower = d_poly(&DescentSet(rest.to_vec()));
            let at_m = lower.eval_int(i64::from(m));
            &binom_poly(m).scale(&at_m) - lower.as_ref()
        }
    };
    let poly = Arc::new(poly);
    memo()
        .write()
        .expect("memo lock")
        .entry(set.0.clone())
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

fn require_above(set: &DescentSet, n: u32) -> Result<()> {
    if n <= set.m() {
        return Err(Error::invalid(format!(
            "n = {n} must exceed max {set} = {}",
            set.m()
        )));
    }
    Ok(())
}

/// Inclusion-exclusion: `sum_J (-1)^{#I - #J} C(n, delta(J))` over `J ⊆ I`.
pub fn d_pie(set: &DescentSet, n: u32) -> Result<BigInt> {
    require_above(set, n)?;
    let k = set.len();
    let mut total = BigInt::zero();
    // Gray-code walk: consecutive subsets differ in one element.
    let mut chosen = vec![false; k];
    for step in 0..1u64 << k {
        if step > 0 {
            let flip = step.trailing_zeros() as usize;
            chosen[flip] = !chosen[flip];
        }
        let j: Vec<u32> = set
            .0
            .iter()
            .zip(&chosen)
            .filter(|(_, &c)| c)
            .map(|(&i, _)| i)
            .collect();
        let delta = difference_composition(&j, n)?;
        let term = multinomial(n, &delta)?;
        total += sign((k - j.len()) as i64) * term;
    }
    Ok(total)
}

fn d_value(set: &DescentSet, n: u32) -> BigInt {
    as_integer(&d_poly(set).eval_int(i64::from(n))).expect("d(I;n) is an integer at integers")
}

/// `d(I;n+1)` through the positive recursion, with right-hand values taken
/// from [`d_poly`]. At `n + 1 = m + 1` the leading term `d(I;m)` is zero and
/// every other term is evaluated above the maximum of its set.
pub fn d_positive_rec(set: &DescentSet, n_plus_1: u32) -> Result<BigInt> {
    if set.is_empty() {
        return Err(Error::invalid("positive recursion needs a nonempty I"));
    }
    if n_plus_1 <= set.m() {
        return Err(Error::invalid(format!(
            "n + 1 = {n_plus_1} must exceed m = {}",
            set.m()
        )));
    }
    let n = n_plus_1 - 1;
    let derived = derived_sets(set)?;
    let mut total = d_value(set, n);
    for (k, &i) in set.0.iter().enumerate() {
        if derived.double_prime.contains(i) {
            total += d_value(&derived.lowered[k], n);
        }
        if derived.prime.contains(i) {
            total += d_value(&derived.hatted[k], n);
        }
    }
    Ok(total)
}

/// Exact evaluation of `d(I;x)` at a rational point.
pub fn d_at(set: &DescentSet, x: &BigRational) -> BigRational {
    d_poly(set).eval(x)
}
