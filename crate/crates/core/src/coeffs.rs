//! Coefficients of `d(I;n)` in the binomial bases centered at `m` and `-1`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::descent::{d_poly, DescentSet};
use crate::enumerate::{descent_mask, fold_perms, Perm, MAX_N_A};
use crate::error::{Error, Result};
use crate::exactmath::{as_strings, binomial, integral, sign, to_binom_basis};

/// Coefficient data for one descent set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoeffReport {
    pub set: DescentSet,
    #[serde(serialize_with = "as_strings")]
    pub a: Vec<BigInt>,
    #[serde(serialize_with = "as_strings")]
    pub c: Vec<BigInt>,
    pub a_log_concave: bool,
    pub c_all_nonneg: bool,
}

fn join(v: &[BigInt]) -> String {
    v.iter()
        .map(BigInt::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

impl CoeffReport {
    pub const CSV_HEADER: &'static str = "set,m,a,c,a_log_concave,c_all_nonneg";

    pub fn m(&self) -> u32 {
        self.set.m()
    }

    /// One CSV row; list-valued fields are space separated.
    pub fn csv_row(&self) -> String {
        let elems: Vec<String> = self.set.elems().iter().map(u32::to_string).collect();
        format!(
            "{},{},{},{},{},{}",
            elems.join(" "),
            self.m(),
            join(&self.a),
            join(&self.c),
            self.a_log_concave,
            self.c_all_nonneg
        )
    }
}

fn padded(mut v: Vec<BigInt>, len: usize) -> Vec<BigInt> {
    v.resize(len, BigInt::zero());
    v
}

/// `a_k(I)` with `d(I;n) = Σ_k a_k(I) C(n-m, k)`.
pub fn a_coeffs(set: &DescentSet) -> Result<Vec<BigInt>> {
    let e = to_binom_basis(&d_poly(set), i64::from(set.m()));
    Ok(padded(integral(&e.coeffs)?, set.m() as usize + 1))
}

/// `c_k(I)` with `d(I;n) = Σ_k (-1)^{m-k} c_k(I) C(n+1, k)`.
pub fn c_coeffs(set: &DescentSet) -> Result<Vec<BigInt>> {
    let m = set.m() as usize;
    let e = to_binom_basis(&d_poly(set), -1);
    let raw = padded(integral(&e.coeffs)?, m + 1);
    Ok(raw
        .into_iter()
        .enumerate()
        .map(|(k, v)| sign((m - k) as i64) * v)
        .collect())
}

/// `seq[k-1] * seq[k+1] <= seq[k]^2` for every interior `k`.
pub fn is_log_concave(seq: &[BigInt]) -> bool {
    seq.windows(3).all(|w| &w[0] * &w[2] <= &w[1] * &w[1])
}

/// Values `[π_1..π_m] ∩ [m+1, 2m] = [m+1, m+k]`, returning `k`.
fn block_k(p: &[u8], m: usize) -> Option<usize> {
    let big = p[..m].iter().filter(|&&v| v as usize > m);
    let (count, top) = big.fold((0, 0), |(c, t), &v| (c + 1, t.max(v as usize)));
    (count == 0 || top == m + count).then_some(count)
}

fn check_small(set: &DescentSet) -> Result<u32> {
    let m = set.m();
    if set.is_empty() {
        return Err(Error::invalid(
            "the combinatorial count needs a nonempty set",
        ));
    }
    if 2 * m > MAX_N_A {
        return Err(Error::invalid(format!(
            "enumerating S_{} is out of range (max n = {MAX_N_A})",
            2 * m
        )));
    }
    Ok(m)
}

/// Number of `π ∈ D(I;2m)` whose first `m` values meet `[m+1, 2m]` in
/// exactly `[m+1, m+k]`.
pub fn a_k_combinatorial(set: &DescentSet, k: u32) -> Result<BigInt> {
    let m = check_small(set)?;
    if k < 1 || k > m {
        return Err(Error::invalid(format!("k = {k} must lie in 1..={m}")));
    }
    let target = set_mask(set);
    let count = fold_perms(
        2 * m,
        || 0u64,
        |c, p| {
            if descent_mask(p) == target && block_k(p, m as usize) == Some(k as usize) {
                *c += 1;
            }
        },
        |a, b| a + b,
    );
    Ok(BigInt::from(count))
}

/// The permutations counted by [`a_k_combinatorial`], in lexicographic order.
pub fn a_k_witnesses(set: &DescentSet, k: u32, cap: usize) -> Result<Vec<Perm>> {
    let m = check_small(set)?;
    if k < 1 || k > m {
        return Err(Error::invalid(format!("k = {k} must lie in 1..={m}")));
    }
    crate::enumerate::collect_with_descents(set.elems(), 2 * m, cap, |p| {
        block_k(p, m as usize) == Some(k as usize)
    })
}

fn set_mask(set: &DescentSet) -> u64 {
    set.elems().iter().fold(0, |acc, &i| acc | 1 << i)
}

/// The combinatorial `a_k(I)` for every `I` with maximum `m`, from a single
/// pass over `S_{2m}`. Entry `k` of each vector is `a_k`, with `a_0 = 0`.
pub fn a_combinatorial_all(m: u32) -> Result<BTreeMap<DescentSet, Vec<BigInt>>> {
    if m == 0 || 2 * m > MAX_N_A {
        return Err(Error::invalid(format!(
            "m = {m} must lie in 1..={}",
            MAX_N_A / 2
        )));
    }
    let mu = m as usize;
    let stride = mu + 1;
    // Descent masks with maximum m lie in [2^m, 2^{m+1}); index by mask - 2^m.
    let sets = 1usize << (m - 1);
    let table = fold_perms(
        2 * m,
        || vec![0u64; sets * stride],
        |t, p| {
            let mask = descent_mask(p);
            if mask >> m != 1 {
                return;
            }
            if let Some(k) = block_k(p, mu) {
                let row = ((mask >> 1) & ((1 << (m - 1)) - 1)) as usize;
                t[row * stride + k] += 1;
            }
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    Ok((0..sets)
        .map(|row| {
            let set = DescentSet::from_mask(((row as u64) << 1) | 1 << m);
            let counts = table[row * stride..(row + 1) * stride]
                .iter()
                .map(|&c| BigInt::from(c))
                .collect();
            (set, counts)
        })
        .collect())
}

/// Closed form of `a_k({ℓ, ℓ+1, ..., m})`.
pub fn a_interval_formula(ell: u32, m: u32, k: u32) -> Result<BigInt> {
    if ell < 1 || ell > m || k < 1 || k > m {
        return Err(Error::invalid(format!(
            "need 1 <= ell <= m and 1 <= k <= m, got ell = {ell}, m = {m}, k = {k}"
        )));
    }
    let (ell, m, k) = (i64::from(ell), i64::from(m), i64::from(k));
    Ok((1..=m - ell + 1)
        .map(|i| {
            binomial(k - 1, i - 1) * binomial(m, ell - k + i - 1) * binomial(m - ell + k - i, k - 1)
        })
        .sum())
}

pub fn coeff_report(set: &DescentSet) -> Result<CoeffReport> {
    let a = a_coeffs(set)?;
    let c = c_coeffs(set)?;
    let a_log_concave = is_log_concave(a.get(1..).unwrap_or(&[]));
    let c_all_nonneg = c.iter().all(|v| !v.is_negative());
    Ok(CoeffReport {
        set: set.clone(),
        a,
        c,
        a_log_concave,
        c_all_nonneg,
    })
}

/// Reports for every nonempty `I ⊆ [max_m]`, ordered by `I`.
pub fn coeff_scan(max_m: u32) -> Result<Vec<CoeffReport>> {
    let mut sets: Vec<DescentSet> = DescentSet::all_subsets(max_m)
        .filter(|s| !s.is_empty())
        .collect();
    sets.sort();
    sets.par_iter().map(coeff_report).collect()
}

/// A counterexample to one of the coefficient conjectures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub set: DescentSet,
    pub check: &'static str,
    pub k: usize,
    pub values: Vec<String>,
}

/// Log-concavity failures `a_{k-1} a_{k+1} > a_k^2`, for `2 <= k < m`.
pub fn log_concave_violations(r: &CoeffReport) -> Vec<Violation> {
    let a = &r.a;
    (2..a.len().saturating_sub(1))
        .filter(|&k| &a[k - 1] * &a[k + 1] > &a[k] * &a[k])
        .map(|k| Violation {
            set: r.set.clone(),
            check: "log-concave",
            k,
            values: vec![a[k - 1].to_string(), a[k].to_string(), a[k + 1].to_string()],
        })
        .collect()
}

pub fn c_nonneg_violations(r: &CoeffReport) -> Vec<Violation> {
    r.c.iter()
        .enumerate()
        .filter(|(_, v)| v.is_negative())
        .map(|(k, v)| Violation {
            set: r.set.clone(),
            check: "c-nonneg",
            k,
            values: vec![v.to_string()],
        })
        .collect()
}
