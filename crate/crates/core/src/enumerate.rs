//! Brute-force enumeration of permutations and signed permutations.
//!
//! These routines are the ground truth the closed forms are checked against.
//! Permutations are generated in lexicographic order by successor steps, and
//! the work is split across threads by the first entry; partial results are
//! merged in first-entry order so the output never depends on the number of
//! threads.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::patterns::PatternSet;

/// Largest `n` accepted for exhaustive enumeration of `S_n`.
pub const MAX_N_A: u32 = 11;
/// Largest `n` accepted for exhaustive enumeration of `B_n` and `D_n`.
pub const MAX_N_SIGNED: u32 = 9;
/// Default cap on materialised permutations.
pub const DEFAULT_COLLECT_CAP: usize = 1_000_000;

/// A permutation of `[n]` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &e in &entries {
            let idx = (e as usize).wrapping_sub(1);
            if idx >= n || seen[idx] {
                return Err(Error::invalid(format!(
                    "{entries:?} is not a permutation of [{n}]"
                )));
            }
            seen[idx] = true;
        }
        Ok(Perm(entries))
    }

    pub fn identity(n: u32) -> Self {
        Perm((1..=n).collect())
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn from_bytes(p: &[u8]) -> Self {
        Perm(p.iter().map(|&v| u32::from(v)).collect())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().any(|&e| e > 9) {
            " "
        } else {
            ""
        };
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(sep))
    }
}

/// Parses `3214` (one digit per entry) or `3 2 1 4` / `3,2,1,4`.
impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let entries: Option<Vec<u32>> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().ok())
                .collect()
        } else {
            s.chars().map(|c| c.to_digit(10)).collect()
        };
        let entries =
            entries.ok_or_else(|| Error::invalid(format!("cannot parse permutation {s:?}")))?;
        Perm::new(entries)
    }
}

/// A signed permutation `beta_1 ... beta_n`; `beta_0 = 0` is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPerm(Vec<i32>);

impl SignedPerm {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        let abs: Vec<u32> = entries.iter().map(|e| e.unsigned_abs()).collect();
        Perm::new(abs)
            .map_err(|_| Error::invalid(format!("{entries:?} is not a signed permutation")))?;
        Ok(SignedPerm(entries))
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    /// Number of negative entries.
    pub fn negatives(&self) -> usize {
        self.0.iter().filter(|&&e| e < 0).count()
    }
}

/// Which Coxeter group is being enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    A,
    B,
    D,
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Group::A),
            "B" => Ok(Group::B),
            "D" => Ok(Group::D),
            _ => Err(Error::invalid(format!("unknown group {s:?}"))),
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Group::A => "A",
            Group::B => "B",
            Group::D => "D",
        };
        f.write_str(s)
    }
}

fn mask_to_set(mask: u64) -> Vec<u32> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn set_to_mask(set: &[u32]) -> u64 {
    set.iter().fold(0, |m, &i| m | 1 << i)
}

/// Descent indices (1-based) of a one-line word, as a bit mask.
#[inline]
pub(crate) fn descent_mask(p: &[u8]) -> u64 {
    let mut mask = 0;
    for i in 1..p.len() {
        if p[i - 1] > p[i] {
            mask |= 1 << i;
        }
    }
    mask
}

#[inline]
fn peak_mask(p: &[u8]) -> u64 {
    let mut mask = 0;
    for i in 2..p.len() {
        if p[i - 2] < p[i - 1] && p[i - 1] > p[i] {
            mask |= 1 << i;
        }
    }
    mask
}

#[inline]
fn signed_descent_mask(p: &[u8], signs: u32) -> u64 {
    let mut mask = 0;
    let mut prev = 0i32;
    for (i, &v) in p.iter().enumerate() {
        let cur = if signs >> i & 1 == 1 {
            -i32::from(v)
        } else {
            i32::from(v)
        };
        if prev > cur {
            mask |= 1 << i;
        }
        prev = cur;
    }
    mask
}

pub fn descent_set(p: &Perm) -> Vec<u32> {
    (1..p.len())
        .filter(|&i| p.0[i - 1] > p.0[i])
        .map(|i| i as u32)
        .collect()
}

pub fn peak_set(p: &Perm) -> Vec<u32> {
    (2..p.len())
        .filter(|&i| p.0[i - 2] < p.0[i - 1] && p.0[i - 1] > p.0[i])
        .map(|i| i as u32)
        .collect()
}

/// Descent set of a signed permutation, with `beta_0 = 0` prepended.
pub fn signed_descent_set(b: &SignedPerm) -> Vec<u32> {
    let mut out = Vec::new();
    let mut prev = 0;
    for (i, &v) in b.0.iter().enumerate() {
        if prev > v {
            out.push(i as u32);
        }
        prev = v;
    }
    out
}

/// Indices `i` where `p_i ... p_{i+k-1}` is order isomorphic to some
/// pattern in `patterns`.
pub fn occurrence_set(p: &Perm, patterns: &PatternSet) -> Vec<u32> {
    let word: Vec<u8> = p.0.iter().map(|&v| v as u8).collect();
    mask_to_set(patterns.occurrence_mask(&word))
}

/// Rearranges `p` into its lexicographic successor; false at the last one.
#[inline]
pub(crate) fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Visits every permutation of `[n]` starting with `first`, in
/// lexicographic order.
fn for_each_with_first(n: u32, first: u8, mut f: impl FnMut(&[u8])) {
    let mut p: Vec<u8> = std::iter::once(first)
        .chain((1..=n as u8).filter(|&v| v != first))
        .collect();
    loop {
        f(&p);
        if !next_permutation(&mut p[1..]) {
            break;
        }
    }
}

/// Folds over all of `S_n`, split by first entry across the rayon pool.
///
/// Partial accumulators are merged in first-entry order, so any merge that is
/// associative gives identical results for every pool size.
pub fn fold_perms<T, I, F, M>(n: u32, init: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[u8]) + Sync,
    M: Fn(T, T) -> T,
{
    if n == 0 {
        let mut acc = init();
        fold(&mut acc, &[]);
        return acc;
    }
    let parts: Vec<T> = (1..=n as u8)
        .into_par_iter()
        .map(|first| {
            let mut acc = init();
            for_each_with_first(n, first, |p| fold(&mut acc, p));
            acc
        })
        .collect();
    parts.into_iter().reduce(merge).expect("n >= 1")
}

/// Like [`fold_perms`] but over signed permutations of `B_n` (or `D_n`);
/// the callback receives the absolute values and a sign mask (bit `i`
/// set means entry `i` is negative).
pub fn fold_signed_perms<T, I, F, M>(n: u32, even_only: bool, init: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[u8], u32) + Sync,
    M: Fn(T, T) -> T,
{
    let masks: Vec<u32> = (0..1u32 << n)
        .filter(|m| !even_only || m.count_ones() % 2 == 0)
        .collect();
    fold_perms(
        n,
        init,
        |acc, p| {
            for &m in &masks {
                fold(acc, p, m);
            }
        },
        merge,
    )
}

fn check_feasible(set: &[u32], n: u32, group: Group) -> Result<()> {
    let limit = match group {
        Group::A => MAX_N_A,
        Group::B | Group::D => MAX_N_SIGNED,
    };
    if n == 0 || n > limit {
        return Err(Error::invalid(format!(
            "n = {n} outside enumeration range 1..={limit} for type {group}"
        )));
    }
    if group == Group::D && n < 2 {
        return Err(Error::invalid("type D needs n >= 2"));
    }
    if group == Group::A && set.contains(&0) {
        return Err(Error::invalid("0 is not a type A descent index"));
    }
    if let Some(&m) = set.iter().max() {
        if n <= m {
            return Err(Error::invalid(format!("n = {n} must exceed max = {m}")));
        }
    }
    Ok(())
}

/// Exact number of group elements with descent set exactly `set`.
pub fn count_by_descents(set: &[u32], n: u32, group: Group) -> Result<BigInt> {
    check_feasible(set, n, group)?;
    let target = set_to_mask(set);
    let count = match group {
        Group::A => fold_perms(
            n,
            || 0u64,
            |c, p| *c += u64::from(descent_mask(p) == target),
            |a, b| a + b,
        ),
        Group::B | Group::D => fold_signed_perms(
            n,
            group == Group::D,
            || 0u64,
            |c, p, s| *c += u64::from(signed_descent_mask(p, s) == target),
            |a, b| a + b,
        ),
    };
    Ok(BigInt::from(count))
}

/// Counts of every descent set for one `n`, from a single enumeration pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentHistogram {
    pub n: u32,
    pub group: Group,
    counts: Vec<u64>,
}

impl DescentHistogram {
    pub fn get(&self, set: &[u32]) -> u64 {
        let mask = set_to_mask(set);
        self.counts.get(mask as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Nonzero entries keyed by sorted descent set.
    pub fn entries(&self) -> BTreeMap<Vec<u32>, u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(m, &c)| (mask_to_set(m as u64), c))
            .collect()
    }
}

fn add_vecs(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

pub fn descent_histogram(n: u32, group: Group) -> Result<DescentHistogram> {
    check_feasible(&[], n, group)?;
    let size = 1usize << n;
    let counts = match group {
        Group::A => fold_perms(
            n,
            || vec![0u64; size],
            |h, p| h[descent_mask(p) as usize] += 1,
            add_vecs,
        ),
        Group::B | Group::D => fold_signed_perms(
            n,
            group == Group::D,
            || vec![0u64; size],
            |h, p, s| h[signed_descent_mask(p, s) as usize] += 1,
            add_vecs,
        ),
    };
    Ok(DescentHistogram { n, group, counts })
}

/// Counts of every peak set of `S_n`, keyed by sorted peak set.
pub fn peak_histogram(n: u32) -> Result<BTreeMap<Vec<u32>, u64>> {
    check_feasible(&[], n.max(1), Group::A)?;
    let size = 1usize << n.max(1);
    let counts = fold_perms(
        n,
        || vec![0u64; size],
        |h, p| h[peak_mask(p) as usize] += 1,
        add_vecs,
    );
    Ok(counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(m, &c)| (mask_to_set(m as u64), c))
        .collect())
}

/// Permutations of `[n]` with descent set `set` that satisfy `keep`, in
/// lexicographic order, stopping after `cap` matches.
pub fn collect_with_descents(
    set: &[u32],
    n: u32,
    cap: usize,
    keep: impl Fn(&[u8]) -> bool + Sync,
) -> Result<Vec<Perm>> {
    check_feasible(set, n, Group::A)?;
    let target = set_to_mask(set);
    let mut all = fold_perms(
        n,
        Vec::new,
        |acc: &mut Vec<Perm>, p| {
            if acc.len() < cap && descent_mask(p) == target && keep(p) {
                acc.push(Perm::from_bytes(p));
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    all.truncate(cap);
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::factorial;

    fn perm(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn descent_set_examples() {
        assert_eq!(descent_set(&perm("32145")), vec![1, 2]);
        assert_eq!(descent_set(&Perm::identity(6)), Vec::<u32>::new());
        assert_eq!(descent_set(&perm("2143")), vec![1, 3]);
    }

    #[test]
    fn peak_set_examples() {
        assert_eq!(peak_set(&perm("132")), vec![2]);
        assert_eq!(peak_set(&perm("54321")), Vec::<u32>::new());
        assert_eq!(peak_set(&perm("24153")), vec![2, 4]);
    }

    #[test]
    fn signed_descent_examples() {
        let b = SignedPerm::new(vec![-3, 4, -1, -5, 6, 2]).unwrap();
        assert_eq!(signed_descent_set(&b), vec![0, 2, 3, 5]);
        let g = SignedPerm::new(vec![-3, -4, -1, -5, 6, 2]).unwrap();
        assert_eq!(signed_descent_set(&g), vec![0, 1, 3, 5]);
        assert_eq!(g.negatives() % 2, 0);
        let id = SignedPerm::new(vec![1, 2, 3, 4]).unwrap();
        assert!(signed_descent_set(&id).is_empty());
    }

    #[test]
    fn signed_mask_agrees_with_set() {
        let b = SignedPerm::new(vec![-3, 4, -1, -5, 6, 2]).unwrap();
        let abs: Vec<u8> = b.entries().iter().map(|e| e.unsigned_abs() as u8).collect();
        let signs = b
            .entries()
            .iter()
            .enumerate()
            .fold(0u32, |m, (i, &e)| if e < 0 { m | 1 << i } else { m });
        assert_eq!(
            mask_to_set(signed_descent_mask(&abs, signs)),
            vec![0, 2, 3, 5]
        );
    }

    #[test]
    fn perm_validation() {
        assert!(Perm::new(vec![1, 1]).is_err());
        assert!(Perm::new(vec![0, 1]).is_err());
        assert!(SignedPerm::new(vec![1, -1]).is_err());
        assert_eq!(perm("3 2 1 4").entries(), &[3, 2, 1, 4]);
        assert!("12a".parse::<Perm>().is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(
            count_by_descents(&[1, 2], 5, Group::A).unwrap(),
            BigInt::from(6)
        );
        assert_eq!(
            count_by_descents(&[1], 2, Group::B).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            count_by_descents(&[0], 3, Group::D).unwrap(),
            BigInt::from(3)
        );
    }

    #[test]
    fn count_rejects_infeasible() {
        assert!(count_by_descents(&[3], 3, Group::A).is_err());
        assert!(count_by_descents(&[], 0, Group::A).is_err());
        assert!(count_by_descents(&[], 1, Group::D).is_err());
        assert!(count_by_descents(&[0], 3, Group::A).is_err());
        assert!(count_by_descents(&[], MAX_N_A + 1, Group::A).is_err());
    }

    #[test]
    fn empty_set_counts_one() {
        for n in 1..=8 {
            assert_eq!(
                count_by_descents(&[], n, Group::A).unwrap(),
                BigInt::from(1)
            );
        }
    }

    #[test]
    fn histograms_partition_the_group() {
        for n in 1..=7u32 {
            let nf: u64 = factorial(n).try_into().unwrap();
            assert_eq!(descent_histogram(n, Group::A).unwrap().total(), nf);
            assert_eq!(descent_histogram(n, Group::B).unwrap().total(), nf << n);
            if n >= 2 {
                assert_eq!(
                    descent_histogram(n, Group::D).unwrap().total(),
                    nf << (n - 1)
                );
            }
        }
    }

    #[test]
    fn histogram_matches_streaming_count() {
        let h = descent_histogram(5, Group::B).unwrap();
        for set in [vec![], vec![0], vec![1, 3], vec![0, 2, 4]] {
            assert_eq!(
                BigInt::from(h.get(&set)),
                count_by_descents(&set, 5, Group::B).unwrap()
            );
        }
    }

    #[test]
    fn lexicographic_order() {
        let all = collect_with_descents(&[], 3, 10, |_| true).unwrap();
        assert_eq!(all, vec![Perm::identity(3)]);
        let mut words = Vec::new();
        for first in 1..=3u8 {
            for_each_with_first(3, first, |p| words.push(p.to_vec()));
        }
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(words, sorted);
        assert_eq!(words.len(), 6);
    }

    #[test]
    fn collector_respects_cap() {
        let got = collect_with_descents(&[1], 5, 2, |_| true).unwrap();
        assert_eq!(got.len(), 2);
        assert_eq!(got[0].to_string(), "21345");
    }

    #[test]
    fn peak_histogram_small() {
        let h = peak_histogram(4).unwrap();
        assert_eq!(h[&vec![]], 8);
        assert_eq!(h.values().sum::<u64>(), 24);
    }
}
