//! Consecutive pattern occurrences: avoidance counts, counts by occurrence
//! set, and the subtractive recursion valid for nonoverlapping pattern sets.
//! Peaks are the occurrences of `{132, 231}` shifted by one.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::descent::DescentSet;
use crate::enumerate::{fold_perms, peak_histogram, Perm, MAX_N_A};
use crate::error::{Error, Result};
use crate::exactmath::{as_strings, binomial, interpolate_consecutive, pow2, ExactPoly};

/// Same-length patterns; occurrences are consecutive windows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSet {
    patterns: Vec<Perm>,
    k: usize,
    nonoverlapping: bool,
    ranks: Vec<Vec<u8>>,
}

/// Ranks `0..len` of a word of distinct values.
fn standardize(w: &[u8]) -> Vec<u8> {
    w.iter()
        .map(|&x| w.iter().filter(|&&y| y < x).count() as u8)
        .collect()
}

impl PatternSet {
    pub fn new(mut patterns: Vec<Perm>) -> Result<Self> {
        let k = patterns.first().map_or(0, Perm::len);
        if !(2..=9).contains(&k) {
            return Err(Error::invalid("patterns must have length between 2 and 9"));
        }
        if patterns.iter().any(|p| p.len() != k) {
            return Err(Error::invalid("patterns must share one length"));
        }
        patterns.sort();
        if patterns.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("patterns must be distinct"));
        }
        let ranks: Vec<Vec<u8>> = patterns
            .iter()
            .map(|p| p.entries().iter().map(|&v| (v - 1) as u8).collect())
            .collect();
        let nonoverlapping = is_nonoverlapping(&ranks);
        Ok(PatternSet {
            patterns,
            k,
            nonoverlapping,
            ranks,
        })
    }

    pub fn patterns(&self) -> &[Perm] {
        &self.patterns
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_nonoverlapping(&self) -> bool {
        self.nonoverlapping
    }

    /// Bit `i` set iff the window starting at 1-based position `i` is an
    /// occurrence.
    pub fn occurrence_mask(&self, word: &[u8]) -> u64 {
        if word.len() < self.k {
            return 0;
        }
        let mut mask = 0;
        for (i, w) in word.windows(self.k).enumerate() {
            let r = standardize(w);
            if self.ranks.contains(&r) {
                mask |= 1 << (i + 1);
            }
        }
        mask
    }
}

/// True unless some proper prefix of one pattern is order isomorphic to the
/// suffix of the same length of another (or the same) pattern.
fn is_nonoverlapping(ranks: &[Vec<u8>]) -> bool {
    let k = ranks.first().map_or(0, Vec::len);
    (2..k).all(|l| {
        ranks.iter().all(|s| {
            let prefix = standardize(&s[..l]);
            ranks.iter().all(|t| standardize(&t[k - l..]) != prefix)
        })
    })
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.patterns.iter().map(Perm::to_string).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// Parses `"132,231"`: comma-separated words of single digits.
impl FromStr for PatternSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let patterns = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .split(',')
            .map(str::trim)
            .map(|t| {
                if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit()) {
                    return Err(Error::invalid(format!("malformed pattern {t:?}")));
                }
                t.parse::<Perm>()
            })
            .collect::<Result<Vec<_>>>()?;
        PatternSet::new(patterns)
    }
}

impl Serialize for PatternSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let words: Vec<String> = self.patterns.iter().map(Perm::to_string).collect();
        let mut st = s.serialize_struct("PatternSet", 3)?;
        st.serialize_field("patterns", &words)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("nonoverlapping", &self.nonoverlapping)?;
        st.end()
    }
}

fn check_n(n: u32) -> Result<()> {
    if n > MAX_N_A {
        return Err(Error::invalid(format!(
            "n = {n} outside enumeration range (max {MAX_N_A})"
        )));
    }
    Ok(())
}

fn mask_of(set: &DescentSet) -> u64 {
    set.elems().iter().fold(0, |acc, &i| acc | 1 << i)
}

/// Number of permutations of `[n]` with no occurrence of any pattern.
pub fn av_count(p: &PatternSet, n: u32) -> Result<BigInt> {
    pi_count(p, &DescentSet::empty(), n)
}

/// Number of permutations of `[n]` whose occurrence set is exactly `set`.
pub fn pi_count(p: &PatternSet, set: &DescentSet, n: u32) -> Result<BigInt> {
    check_n(n)?;
    let target = mask_of(set);
    let count = fold_perms(
        n,
        || 0u64,
        |c, w| *c += u64::from(p.occurrence_mask(w) == target),
        |a, b| a + b,
    );
    Ok(BigInt::from(count))
}

/// Counts of every occurrence set in `S_n`, keyed by sorted set.
pub fn occurrence_histogram(p: &PatternSet, n: u32) -> Result<BTreeMap<Vec<u32>, u64>> {
    check_n(n)?;
    let map = fold_perms(
        n,
        BTreeMap::new,
        |h: &mut BTreeMap<u64, u64>, w| *h.entry(p.occurrence_mask(w)).or_default() += 1,
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    );
    Ok(map
        .into_iter()
        .map(|(mask, c)| (DescentSet::from_mask(mask).elems().to_vec(), c))
        .collect())
}

struct Recursion<'a> {
    p: &'a PatternSet,
    av: HashMap<u32, BigInt>,
    memo: HashMap<(Vec<u32>, u32), BigInt>,
}

impl Recursion<'_> {
    fn av(&mut self, n: u32) -> Result<BigInt> {
        if let Some(v) = self.av.get(&n) {
            return Ok(v.clone());
        }
        let v = av_count(self.p, n)?;
        self.av.insert(n, v.clone());
        Ok(v)
    }

    fn count(&mut self, set: &[u32], n: u32) -> Result<BigInt> {
        let k = self.p.k as u32;
        let Some((&m, lower)) = set.split_last() else {
            return self.av(n);
        };
        // Occurrences of a nonoverlapping set start at least k-1 apart.
        if n < m + k - 1 || set.windows(2).any(|w| w[1] - w[0] < k - 1) {
            return Ok(BigInt::zero());
        }
        let key = (set.to_vec(), n);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let mut total = binomial(n, i64::from(m)) * self.av(n - m)? * self.count(lower, m)?
            - self.count(lower, n)?;
        for i in 1..=k - 2 {
            if i < m {
                let mut with = lower.to_vec();
                with.push(m - i);
                total -= self.count(&with, n)?;
            }
        }
        self.memo.insert(key, total.clone());
        Ok(total)
    }
}

/// `#Π(I;n)` from `#Π(I;n) = C(n,m) av(n-m) #Π(I⁻;m) - #Π(I⁻;n)
/// - Σ_{i=1}^{k-2} #Π(I⁻ ∪ {m-i};n)`, with brute-force `av`.
pub fn pi_count_rec(p: &PatternSet, set: &DescentSet, n: u32) -> Result<BigInt> {
    if !p.nonoverlapping {
        return Err(Error::invalid(format!("{p} is not nonoverlapping")));
    }
    let k = p.k as u32;
    if !set.is_empty() && n < set.m() + k - 1 {
        return Err(Error::invalid(format!(
            "n = {n} is below max I + k - 1 = {}",
            set.m() + k - 1
        )));
    }
    Recursion {
        p,
        av: HashMap::new(),
        memo: HashMap::new(),
    }
    .count(set.elems(), n)
}

/// Number of permutations of `[n]` with peak set exactly `set`, by dynamic
/// programming over the relative rank of the last entry.
pub fn peak_count(set: &DescentSet, n: u32) -> Result<BigInt> {
    if n > 30 {
        return Err(Error::invalid("peak counts are limited to n <= 30"));
    }
    if n == 0 {
        return Ok(BigInt::from(u8::from(set.is_empty())));
    }
    if !set.is_empty() && set.m() >= n {
        return Ok(BigInt::zero());
    }
    let n = n as usize;
    // up[j], down[j]: words of the current length whose last entry has rank j
    // (0-based) and whose last step rose or fell.
    // The first entry is treated as following a fall, so position 1 is never
    // a peak.
    let mut up = vec![0u128; n];
    let mut down = vec![0u128; n];
    down[0] = 1;
    for len in 1..n {
        let peak_here = set.contains(len as u32);
        let mut next_up = vec![0u128; n];
        let mut next_down = vec![0u128; n];
        for j in 0..len {
            let (u, d) = (up[j], down[j]);
            if u == 0 && d == 0 {
                continue;
            }
            // New entry has rank r in 0..=len; it rises iff r > j.
            for r in 0..=len {
                if r > j {
                    if !peak_here {
                        next_up[r] += u + d;
                    }
                } else if peak_here {
                    next_down[r] += u;
                } else {
                    next_down[r] += d;
                }
            }
        }
        up = next_up;
        down = next_down;
    }
    Ok(BigInt::from(up.iter().chain(&down).sum::<u128>()))
}

/// Brute-force oracle for [`peak_count`].
pub fn peak_count_brute(set: &DescentSet, n: u32) -> Result<BigInt> {
    let h = peak_histogram(n)?;
    Ok(BigInt::from(h.get(set.elems()).copied().unwrap_or(0)))
}

/// Whether some permutation has peak set exactly `set`, decided by
/// enumeration at `n = m + 1`.
pub fn is_admissible(set: &DescentSet) -> Result<bool> {
    Ok(!peak_count_brute(set, set.m() + 1)?.is_zero())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeakPolyReport {
    pub set: DescentSet,
    pub ns: Vec<u32>,
    #[serde(serialize_with = "as_strings")]
    pub counts: Vec<BigInt>,
    #[serde(serialize_with = "as_strings")]
    pub quotients: Vec<BigRational>,
    pub divisible: bool,
    pub poly: ExactPoly,
    pub degree_ok: bool,
}

impl PeakPolyReport {
    pub fn passed(&self) -> bool {
        self.divisible && self.degree_ok
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PeakOutcome {
    Inadmissible,
    Checked(PeakPolyReport),
}

/// Checks `#P(I;n) = p(I;n) 2^{n-#I-1}` with `p` integral and of degree at
/// most `max I` on the given range of `n`.
pub fn peak_poly_check(set: &DescentSet, ns: RangeInclusive<u32>) -> Result<PeakOutcome> {
    if ns.is_empty() {
        return Err(Error::invalid("empty range of n"));
    }
    if *ns.start() <= set.m() || *ns.start() < 1 {
        return Err(Error::invalid(format!(
            "range must start above max I = {}",
            set.m()
        )));
    }
    if !is_admissible(set)? {
        return Ok(PeakOutcome::Inadmissible);
    }
    let ns: Vec<u32> = ns.collect();
    let counts = ns
        .iter()
        .map(|&n| peak_count(set, n))
        .collect::<Result<Vec<_>>>()?;
    let quotients: Vec<BigRational> = ns
        .iter()
        .zip(&counts)
        .map(|(&n, c)| {
            BigRational::from_integer(c.clone()) * pow2(-(i64::from(n) - set.len() as i64 - 1))
        })
        .collect();
    let divisible = quotients.iter().all(BigRational::is_integer);
    let poly = interpolate_consecutive(i64::from(ns[0]), &quotients);
    let degree_ok = poly.degree().is_none_or(|d| d <= set.m() as usize);
    Ok(PeakOutcome::Checked(PeakPolyReport {
        set: set.clone(),
        ns,
        counts,
        quotients,
        divisible,
        poly,
        degree_ok,
    }))
}

/// The pattern set whose occurrences are peaks, shifted down by one.
pub fn peak_patterns() -> PatternSet {
    "132,231".parse().expect("valid patterns")
}

/// The pattern set whose occurrences are descents.
pub fn descent_pattern() -> PatternSet {
    "21".parse().expect("valid pattern")
}
