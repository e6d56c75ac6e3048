//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use descent_lab::coeffs::{
    a_coeffs, a_interval_formula, a_k_combinatorial, a_k_witnesses, c_nonneg_violations,
    coeff_scan, log_concave_violations,
};
use descent_lab::descent::{d_at, d_pie, d_poly, d_positive_rec, DescentSet};
use descent_lab::enumerate::{count_by_descents, descent_histogram, peak_histogram, Group};
use descent_lab::exactmath::{rat, ratio, ExactPoly};
use descent_lab::patterns::{
    av_count, descent_pattern, peak_count, peak_patterns, peak_poly_check, pi_count, pi_count_rec,
    PeakOutcome,
};
use descent_lab::roots::{disc_certificate, falling_coeffs_check, RootCertificate};
use descent_lab::signed::{db_at, db_value, dd_value, Point, SignedDescentSet, Value};

struct Outcome {
    passed: bool,
    detail: String,
    /// Every computed value, for the determinism comparison.
    digest: String,
}

/// Accumulates failures and a transcript of computed values.
#[derive(Default)]
struct Log {
    failures: Vec<String>,
    transcript: String,
    checks: usize,
}

impl Log {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn record(&mut self, item: impl std::fmt::Display) {
        self.transcript.push_str(&item.to_string());
        self.transcript.push(';');
    }

    fn finish(self, summary: String) -> Outcome {
        let passed = self.failures.is_empty();
        let detail = if passed {
            format!("{summary}, {} checks", self.checks)
        } else {
            let shown: Vec<&str> = self.failures.iter().take(3).map(String::as_str).collect();
            format!(
                "{summary}, {} of {} checks failed: {}",
                self.failures.len(),
                self.checks,
                shown.join(" | ")
            )
        };
        Outcome {
            passed,
            detail,
            digest: self.transcript,
        }
    }
}

fn subsets(top: u32) -> Vec<DescentSet> {
    DescentSet::all_subsets(top).collect()
}

fn signed_subsets(top: u32) -> Vec<SignedDescentSet> {
    SignedDescentSet::all_subsets(top).collect()
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn d_value(set: &DescentSet, n: u32) -> BigInt {
    d_poly(set).eval_int(i64::from(n)).to_integer()
}

fn criterion_1() -> Outcome {
    let mut log = Log::default();
    let sets: Vec<DescentSet> = subsets(6).into_iter().filter(|s| !s.is_empty()).collect();
    for n in 2..=9 {
        let hist = descent_histogram(n, Group::A).unwrap();
        for set in sets.iter().filter(|s| s.m() < n) {
            let poly = d_value(set, n);
            let pie = d_pie(set, n).unwrap();
            let pos = d_positive_rec(set, n).unwrap();
            let brute = big(hist.get(set.elems()));
            log.record(format_args!("{set}:{n}={poly}"));
            log.check(poly == pie && pie == pos && pos == brute, || {
                format!("{set} n={n}: poly {poly} pie {pie} positive {pos} brute {brute}")
            });
        }
    }
    log.finish(format!("{} nonempty I ⊆ [6], m < n <= 9", sets.len()))
}

fn criterion_2() -> Outcome {
    let mut log = Log::default();
    let s12 = DescentSet::new(vec![1, 2]).unwrap();
    let s13 = DescentSet::new(vec![1, 3]).unwrap();
    let expected = ExactPoly::new(vec![rat(1), ratio(-3, 2), ratio(1, 2)]);
    log.check(*d_poly(&s12) == expected, || {
        format!("d({{1,2}};n) = {}", d_poly(&s12))
    });

    let a12 = a_coeffs(&s12).unwrap();
    log.record(format_args!("{a12:?}"));
    log.check(a12 == [0, 1, 1].map(BigInt::from), || {
        format!("a({{1,2}}) = {a12:?}")
    });
    for (k, word) in [(1, "3214"), (2, "4312")] {
        let w: Vec<String> = a_k_witnesses(&s12, k, 10)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        log.record(format_args!("{w:?}"));
        log.check(w == [word], || format!("witnesses for k={k}: {w:?}"));
    }

    let a13 = a_coeffs(&s13).unwrap();
    log.record(format_args!("{a13:?}"));
    log.check(a13 == [0, 5, 6, 2].map(BigInt::from), || {
        format!("a({{1,3}}) = {a13:?}")
    });
    // Generating function sum_k a_k x^k = 2x^3 + 6x^2 + 5x.
    let f = ExactPoly::new(a13.iter().cloned().map(BigRational::from_integer).collect());
    log.check(f == ExactPoly::from_ints(&[0, 5, 6, 2]), || {
        format!("f(x) = {f}")
    });
    log.finish("d({1,2};n), a({1,2}) with witnesses, a({1,3})".into())
}

fn criterion_3() -> Outcome {
    let mut log = Log::default();
    let sets: Vec<DescentSet> = subsets(5).into_iter().filter(|s| !s.is_empty()).collect();
    for set in &sets {
        let a = a_coeffs(set).unwrap();
        for k in 1..=set.m() {
            let comb = a_k_combinatorial(set, k).unwrap();
            log.record(format_args!("{set}:{k}={comb}"));
            log.check(comb == a[k as usize], || {
                format!("{set} k={k}: combinatorial {comb}, basis {}", a[k as usize])
            });
        }
    }
    let mut intervals = 0;
    for m in 1..=8 {
        for ell in 1..=m {
            intervals += 1;
            let a = a_coeffs(&DescentSet::interval(ell, m).unwrap()).unwrap();
            for k in 1..=m {
                let f = a_interval_formula(ell, m, k).unwrap();
                log.record(format_args!("[{ell},{m}]:{k}={f}"));
                log.check(f == a[k as usize], || {
                    format!("[{ell},{m}] k={k}: formula {f}, basis {}", a[k as usize])
                });
            }
        }
    }
    log.finish(format!(
        "{} sets with m <= 5 over S_2m, {intervals} interval sets with m <= 8",
        sets.len()
    ))
}

fn certificates(top: u32) -> Vec<RootCertificate> {
    let sets: Vec<DescentSet> = subsets(top).into_iter().filter(|s| !s.is_empty()).collect();
    sets.par_iter()
        .map(|s| disc_certificate(s).unwrap())
        .collect()
}

fn root_digest(c: &RootCertificate) -> String {
    let parts: Vec<String> = c
        .roots
        .iter()
        .map(|z| format!("{:x}/{:x}", z.re.to_bits(), z.im.to_bits()))
        .collect();
    format!("{}:{}", c.set, parts.join(","))
}

fn criterion_4() -> Outcome {
    let mut log = Log::default();
    let reports = coeff_scan(8).unwrap();
    let mut lc = 0;
    let mut cn = 0;
    for r in &reports {
        log.record(r.csv_row());
        let v = log_concave_violations(r);
        lc += v.len();
        log.check(v.is_empty() && r.a_log_concave, || {
            format!("log-concavity {v:?}")
        });
        let v = c_nonneg_violations(r);
        cn += v.len();
        log.check(v.is_empty() && r.c_all_nonneg, || {
            format!("c nonnegativity {v:?}")
        });
    }
    let mut rc = 0;
    for c in certificates(8) {
        log.record(root_digest(&c));
        for name in ["modulus_conjecture", "real_part_conjecture"] {
            let ok = c.check(name).is_some_and(|r| r.passed);
            rc += usize::from(!ok);
            log.check(ok, || {
                format!(
                    "{} {name}: {}",
                    c.set,
                    c.check(name)
                        .map(|r| r.witness.to_string())
                        .unwrap_or_default()
                )
            });
        }
    }
    log.finish(format!(
        "{} sets with m <= 8; violations: log-concave {lc}, c-nonneg {cn}, root {rc}",
        reports.len()
    ))
}

fn criterion_5() -> Outcome {
    let mut log = Log::default();
    for set in subsets(8) {
        for &i in set.elems() {
            let v = d_at(&set, &rat(i64::from(i)));
            log.check(v.is_zero(), || format!("d({set};{i}) = {v}"));
        }
    }
    for set in signed_subsets(6) {
        for &i in set.elems() {
            let v = db_at(&set, &Point::Exact(rat(i64::from(i))));
            log.check(matches!(&v, Value::Exact(x) if x.is_zero()), || {
                format!("d_B({set};{i}) = {v:?}")
            });
        }
    }
    log.record(log.checks);
    log.finish("d(I;i) for I ⊆ [8], d_B(I;i) for I ⊆ {0..6}".into())
}

fn criterion_6() -> Outcome {
    let mut log = Log::default();
    let certs = certificates(8);
    for c in &certs {
        log.record(root_digest(c));
        for name in [
            "root_count",
            "residuals",
            "disc_cover",
            "region_exclusion",
            "real_root_bound",
        ] {
            let ok = c.check(name).is_some_and(|r| r.passed);
            log.check(ok, || {
                format!(
                    "{} {name}: {}",
                    c.set,
                    c.check(name)
                        .map(|r| r.witness.to_string())
                        .unwrap_or_default()
                )
            });
        }
    }
    log.finish(format!("{} certificates with m <= 8", certs.len()))
}

fn criterion_7() -> Outcome {
    let mut log = Log::default();
    for set in subsets(8) {
        let fc = falling_coeffs_check(&set);
        log.record(fc.coeffs.join(" "));
        log.check(fc.passed(), || format!("{set}: {:?}", fc.violations));
    }
    log.finish("256 sets I ⊆ [8]".into())
}

fn criterion_8() -> Outcome {
    let mut log = Log::default();
    for n in 1..=7 {
        let hb = descent_histogram(n, Group::B).unwrap();
        let hd = (n >= 2).then(|| descent_histogram(n, Group::D).unwrap());
        for set in signed_subsets(4)
            .into_iter()
            .filter(|s| s.is_empty() || s.m() < n)
        {
            let b = db_value(&set, n).unwrap();
            let brute = big(hb.get(set.elems()));
            log.record(format_args!("B{set}:{n}={b}"));
            log.check(b == brute, || {
                format!("d_B({set};{n}) = {b}, brute {brute}")
            });
            if let Some(hd) = &hd {
                let d = dd_value(&set, n).unwrap();
                let brute = big(hd.get(set.elems()));
                log.record(format_args!("D{set}:{n}={d}"));
                log.check(d == brute, || {
                    format!("d_D({set};{n}) = {d}, brute {brute}")
                });
            }
        }
        for set in subsets(4).into_iter().filter(|s| s.m() < n) {
            let plain = SignedDescentSet::from(&set);
            let zeroed = plain.with_zero();
            let d = d_value(&set, n);
            let sum_b = db_value(&plain, n).unwrap() + db_value(&zeroed, n).unwrap();
            log.check(sum_b == (BigInt::one() << n) * &d, || {
                format!("type B identity {set} n={n}")
            });
            if n >= 2 {
                let sum_d = dd_value(&plain, n).unwrap() + dd_value(&zeroed, n).unwrap();
                log.check(sum_d == (BigInt::one() << (n - 1)) * &d, || {
                    format!("type D identity {set} n={n}")
                });
            }
        }
    }
    let zero = SignedDescentSet::new(vec![0]);
    for n in 1..=8 {
        let expected = (BigInt::one() << n) - 1;
        let v = db_value(&zero, n).unwrap();
        let brute = count_by_descents(&[0], n, Group::B).unwrap();
        log.check(v == expected && brute == expected, || {
            format!("d_B({{0}};{n}) = {v}, brute {brute}")
        });
    }
    log.finish("I ⊆ {0..4}, m < n <= 7; d_B({0};n) for n <= 8".into())
}

fn criterion_9() -> Outcome {
    let mut log = Log::default();
    let descents = descent_pattern();
    let peaks = peak_patterns();
    for set in subsets(4) {
        for n in (set.m() + 1).max(1)..=7 {
            let c = pi_count(&descents, &set, n).unwrap();
            let d = d_value(&set, n);
            log.check(c == d, || {
                format!("pi_count({{21}},{set},{n}) = {c}, d = {d}")
            });
        }
        for p in [&descents, &peaks] {
            let k = p.k() as u32;
            let lo = if set.is_empty() { 1 } else { set.m() + k - 1 };
            for n in lo..=7 {
                let brute = pi_count(p, &set, n).unwrap();
                let rec = pi_count_rec(p, &set, n).unwrap();
                log.record(format_args!("{p}{set}:{n}={brute}"));
                log.check(brute == rec, || {
                    format!("{p} {set} n={n}: brute {brute}, recursion {rec}")
                });
            }
        }
    }
    for n in 1..=9 {
        let av = av_count(&peaks, n).unwrap();
        log.check(av == BigInt::one() << (n - 1), || {
            format!("av({{132,231}},{n}) = {av}")
        });
    }

    let histograms: Vec<_> = (1..=9).map(|n| peak_histogram(n).unwrap()).collect();
    let mut admissible = 0;
    let mut inadmissible = 0;
    for set in subsets(5) {
        let m = set.m();
        match peak_poly_check(&set, m + 1..=2 * m + 3).unwrap() {
            PeakOutcome::Inadmissible => {
                inadmissible += 1;
                log.check(
                    set.elems().windows(2).any(|w| w[1] == w[0] + 1) || set.contains(1),
                    || format!("{set} reported inadmissible"),
                );
            }
            PeakOutcome::Checked(r) => {
                admissible += 1;
                log.record(format_args!("{set}:{}", r.poly));
                log.check(r.passed(), || {
                    format!("{set}: quotients {:?}, poly {}", r.quotients, r.poly)
                });
                for (&n, count) in r.ns.iter().zip(&r.counts) {
                    if n <= 9 {
                        let brute = big(histograms[n as usize - 1]
                            .get(set.elems())
                            .copied()
                            .unwrap_or(0));
                        log.check(*count == brute, || {
                            format!("peak count {set} n={n}: {count} vs {brute}")
                        });
                    }
                }
                log.check(
                    !set.contains(1) && set.elems().windows(2).all(|w| w[1] > w[0] + 1),
                    || format!("{set} reported admissible"),
                );
                let dp = peak_count(&set, m + 1).unwrap();
                log.check(!dp.is_zero(), || {
                    format!("{set} admissible but no permutation at n = m + 1")
                });
            }
        }
    }
    log.finish(format!(
        "I ⊆ [4], n <= 7; av for n <= 9; peak sets with m <= 5: {admissible} admissible, {inadmissible} inadmissible"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 9] = [
    ("oracle equivalence, type A", criterion_1),
    ("worked examples", criterion_2),
    ("coefficient theorems", criterion_3),
    ("conjecture scans", criterion_4),
    ("exact root vanishing", criterion_5),
    ("root localization", criterion_6),
    ("falling factorial bounds", criterion_7),
    ("types B and D", criterion_8),
    ("pattern unification", criterion_9),
];

fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(|(_, f)| f()).collect()
}

fn fingerprint(outcomes: &[Outcome]) -> Vec<(bool, u64)> {
    outcomes
        .iter()
        .map(|o| {
            let mut h = DefaultHasher::new();
            o.digest.hash(&mut h);
            (o.passed, h.finish())
        })
        .collect()
}

fn main() -> ExitCode {
    let mut all_passed = true;
    let mut baseline = Vec::new();
    for (i, (name, run)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {} {verdict}: {name}: {} ({:.2}s)",
            i + 1,
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
        all_passed &= outcome.passed;
        baseline.push(outcome);
    }

    let start = Instant::now();
    let reference = fingerprint(&baseline);
    let mut mismatches = Vec::new();
    for threads in [1, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let fp = pool.install(|| fingerprint(&run_all()));
        for (i, (a, b)) in reference.iter().zip(&fp).enumerate() {
            if a != b {
                mismatches.push(format!("criterion {} at {threads} threads", i + 1));
            }
        }
    }
    let deterministic = mismatches.is_empty();
    println!(
        "criterion 10 {}: determinism: criteria 1-9 at 1, 2 and 8 threads {} ({:.2}s)",
        if deterministic { "PASS" } else { "FAIL" },
        if deterministic {
            "match the default pool".to_string()
        } else {
            format!("differ: {}", mismatches.join(", "))
        },
        start.elapsed().as_secs_f64()
    );
    all_passed &= deterministic;

    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
