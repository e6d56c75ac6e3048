//! `descent-lab`: compute descent polynomials, certify their roots, run
//! conjecture scans and enumerate permutation statistics.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input, 3 a check
//! failed (the report is still written).

mod svg;

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use descent_lab::coeffs::{c_nonneg_violations, coeff_scan, log_concave_violations, CoeffReport};
use descent_lab::descent::{d_poly, DescentSet};
use descent_lab::enumerate::{
    collect_with_descents, count_by_descents, descent_histogram, peak_histogram, Group,
    DEFAULT_COLLECT_CAP,
};
use descent_lab::exactmath::{integral, to_binom_basis, to_falling_factorial_basis};
use descent_lab::patterns::{
    av_count, occurrence_histogram, peak_poly_check, pi_count, pi_count_rec, PatternSet,
    PeakOutcome,
};
use descent_lab::roots::disc_certificate;
use descent_lab::signed::{corollary_checks, db_pie, db_value, dd_pie, dd_value, SignedDescentSet};

const CSV_VERSION: &str = "# descent-lab v1";
const MAX_SCAN_M: u32 = 20;

#[derive(Parser)]
#[command(
    name = "descent-lab",
    version,
    about = "Exact descent polynomials and their roots"
)]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "DESCENT_LAB_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stat {
    Descent,
    Peak,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    LogConcave,
    CNonneg,
    RootConjecture,
    Certificates,
    Corollary,
    TypeDVanishing,
    PatternRecursion,
}

#[derive(Subcommand)]
enum Command {
    /// Print d(I;n) (or its type B/D analogue) and a table of values.
    Compute {
        /// Comma-separated set; "0" only with --type B or D; "" is the empty set.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        #[arg(long = "type", default_value = "A")]
        group: Group,
        /// Binomial basis center: an integer, "m", or "falling".
        #[arg(long, allow_hyphen_values = true)]
        basis: Option<String>,
        /// A value "7" or an inclusive range "2..6".
        #[arg(long)]
        n: Option<String>,
        /// Cross-check every table entry by enumeration.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find the roots of d(I;z) and check every localisation bound.
    Certify {
        #[arg(long)]
        set: String,
        /// Also draw the roots, discs and excluded region.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write to this file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a check over every nonempty I ⊆ [max-m] and write CSV.
    Scan {
        #[arg(long, value_enum)]
        check: Check,
        /// Largest element of the sets scanned (1..=20).
        #[arg(long)]
        max_m: u32,
        /// Pattern set for --check pattern-recursion.
        #[arg(long, default_value = "132,231")]
        patterns: String,
        /// Largest n for --check pattern-recursion.
        #[arg(long, default_value_t = 7)]
        max_n: u32,
        /// Write to this file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count permutations by descent or peak set.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long = "type", default_value = "A")]
        group: Group,
        #[arg(long, value_enum, default_value = "descent")]
        stat: Stat,
        /// Restrict to one set instead of printing the histogram.
        #[arg(long, allow_hyphen_values = true)]
        set: Option<String>,
        /// List the matching permutations (type A descents only).
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Consecutive pattern counts, the pattern recursion and peak polynomials.
    Patterns {
        #[arg(long, default_value = "132,231")]
        patterns: String,
        /// A value "7", or a range "3..9" with --peak-poly.
        #[arg(long)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        set: Option<String>,
        /// Treat --set as a peak set and check its peak polynomial over --n.
        #[arg(long)]
        peak_poly: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(String),
    Internal(String),
}

impl From<descent_lab::Error> for Failure {
    fn from(e: descent_lab::Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Invalid(msg.into()))
}

/// Whether all checks held; `false` maps to exit code 3.
type Run = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Run {
    match command {
        Command::Compute {
            set,
            group,
            basis,
            n,
            verify,
            format,
            output,
        } => compute(
            &set,
            group,
            basis.as_deref(),
            n.as_deref(),
            verify,
            format,
            output,
        ),
        Command::Certify { set, svg, output } => certify(&set, svg, output),
        Command::Scan {
            check,
            max_m,
            patterns,
            max_n,
            output,
        } => scan(check, max_m, &patterns, max_n, output),
        Command::Enumerate {
            n,
            group,
            stat,
            set,
            list,
            limit,
            format,
            output,
        } => enumerate(n, group, stat, set.as_deref(), list, limit, format, output),
        Command::Patterns {
            patterns,
            n,
            set,
            peak_poly,
            format,
            output,
        } => pattern_cmd(&patterns, &n, set.as_deref(), peak_poly, format, output),
    }
}

fn emit(text: &str, output: Option<PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<RangeInclusive<u32>, Failure> {
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| Failure::Invalid(format!("malformed n {s:?}")))
    };
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if range.is_empty() {
        return invalid(format!("empty range {s:?}"));
    }
    Ok(range)
}

fn type_a_set(s: &str) -> Result<DescentSet, Failure> {
    s.parse::<DescentSet>().map_err(|_| {
        Failure::Invalid(format!(
            "malformed set {s:?} (positive integers; 0 needs --type B or D)"
        ))
    })
}

#[allow(clippy::too_many_arguments)]
fn compute(
    set: &str,
    group: Group,
    basis: Option<&str>,
    n: Option<&str>,
    verify: bool,
    format: Format,
    output: Option<PathBuf>,
) -> Run {
    let signed: SignedDescentSet = set.parse()?;
    let m = signed.m();
    let min_n = if group == Group::D { 2 } else { 1 };
    // Below `domain_lo` no element has a descent at m, so the count is 0
    // even where the polynomial is not.
    let domain_lo = if signed.is_empty() { 1 } else { m + 1 }.max(min_n);
    let ns = match n {
        Some(s) => parse_range(s)?,
        None => domain_lo..=domain_lo + 4,
    };
    if *ns.start() < min_n {
        return invalid(format!("n must be at least {min_n} in type {group}"));
    }
    if *ns.end() < domain_lo {
        return invalid(format!("n must exceed m = {m} for {signed}"));
    }

    let mut doc = json!({ "set": signed.to_string(), "type": group.to_string() });
    let mut text = String::new();
    let values: Vec<(u32, BigInt)> = match group {
        Group::A => {
            let set = type_a_set(set)?;
            let poly = d_poly(&set);
            let _ = writeln!(text, "d({set};n) = {poly}");
            doc["poly"] = serde_json::to_value(poly.as_ref()).expect("serialises");
            if let Some(b) = basis {
                let (label, coeffs) = if b == "falling" {
                    (
                        "n(n-1)...(n-k+1)".to_string(),
                        to_falling_factorial_basis(&poly),
                    )
                } else {
                    let center = if b == "m" {
                        i64::from(m)
                    } else {
                        b.parse::<i64>().map_err(|_| {
                            Failure::Invalid(format!(
                                "basis must be an integer, \"m\" or \"falling\", got {b:?}"
                            ))
                        })?
                    };
                    (
                        format!("C(n-({center}),k)"),
                        to_binom_basis(&poly, center).coeffs,
                    )
                };
                let shown: Vec<String> = match integral(&coeffs) {
                    Ok(ints) => ints.iter().map(BigInt::to_string).collect(),
                    Err(_) => coeffs.iter().map(ToString::to_string).collect(),
                };
                let _ = writeln!(text, "basis {label}: [{}]", shown.join(", "));
                doc["basis"] = json!({ "label": label, "coeffs": shown });
            }
            ns.clone()
                .map(|n| {
                    let v = if n < domain_lo {
                        BigInt::ZERO
                    } else {
                        poly.eval_int(i64::from(n)).to_integer()
                    };
                    (n, v)
                })
                .collect()
        }
        Group::B | Group::D => {
            if basis.is_some() {
                return invalid("--basis applies to type A only");
            }
            let (closed, value): (_, fn(&SignedDescentSet, u32) -> descent_lab::Result<BigInt>) =
                if group == Group::B {
                    (db_pie(&signed), db_value)
                } else {
                    (dd_pie(&signed), dd_value)
                };
            let _ = writeln!(text, "d_{group}({signed};n) = {closed}");
            doc["closed_form"] = serde_json::to_value(&closed).expect("serialises");
            ns.clone()
                .map(|n| {
                    if n < domain_lo {
                        Ok((n, BigInt::ZERO))
                    } else {
                        value(&signed, n).map(|v| (n, v))
                    }
                })
                .collect::<descent_lab::Result<_>>()?
        }
    };

    let mut all_ok = true;
    let mut rows = Vec::new();
    for (n, v) in &values {
        let brute = if verify {
            let elems = signed.elems();
            if *n < domain_lo {
                Some(BigInt::from(descent_histogram(*n, group)?.get(elems)))
            } else {
                Some(count_by_descents(elems, *n, group)?)
            }
        } else {
            None
        };
        if let Some(b) = &brute {
            all_ok &= b == v;
        }
        rows.push((*n, v.clone(), brute));
    }

    let body = match format {
        Format::Text => {
            for (n, v, b) in &rows {
                let _ = match b {
                    Some(b) => writeln!(text, "n = {n}: {v} (enumeration {b})"),
                    None => writeln!(text, "n = {n}: {v}"),
                };
            }
            text
        }
        Format::Json => {
            doc["table"] = rows
                .iter()
                .map(|(n, v, b)| json!({ "n": n, "value": v.to_string(), "enumeration": b.as_ref().map(ToString::to_string) }))
                .collect();
            if verify {
                doc["verified"] = json!(all_ok);
            }
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("serialises")
            )
        }
        Format::Csv => {
            let mut out = format!("{CSV_VERSION}\n");
            out.push_str(if verify {
                "n,value,enumeration\n"
            } else {
                "n,value\n"
            });
            for (n, v, b) in &rows {
                match b {
                    Some(b) => out.push_str(&format!("{n},{v},{b}\n")),
                    None => out.push_str(&format!("{n},{v}\n")),
                }
            }
            out
        }
    };
    emit(&body, output)?;
    Ok(all_ok)
}

fn certify(set: &str, svg_path: Option<PathBuf>, output: Option<PathBuf>) -> Run {
    let set = type_a_set(set)?;
    if set.is_empty() {
        return invalid("d(∅;n) = 1 has no roots");
    }
    let cert = disc_certificate(&set)?;
    let body = format!(
        "{}\n",
        serde_json::to_string_pretty(&cert.to_json()).expect("serialises")
    );
    emit(&body, output)?;
    if let Some(path) = svg_path {
        fs::write(path, svg::render(&cert))?;
    }
    if !cert.passed() {
        eprintln!("failed checks: {}", cert.failures().join(", "));
    }
    Ok(cert.passed())
}

fn scan_sets(max_m: u32) -> Vec<DescentSet> {
    let mut sets: Vec<DescentSet> = DescentSet::all_subsets(max_m)
        .filter(|s| !s.is_empty())
        .collect();
    sets.sort();
    sets
}

fn csv_set(set: &DescentSet) -> String {
    set.elems()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn scan(check: Check, max_m: u32, patterns: &str, max_n: u32, output: Option<PathBuf>) -> Run {
    if max_m == 0 {
        return invalid("--max-m must be positive");
    }
    if max_m > MAX_SCAN_M {
        return invalid(format!(
            "--max-m {max_m} exceeds {MAX_SCAN_M}; factorial disc radii overflow f64"
        ));
    }
    let mut out = format!("{CSV_VERSION}\n");
    let mut notes = Vec::new();
    let violations = match check {
        Check::LogConcave | Check::CNonneg => {
            let reports = coeff_scan(max_m)?;
            out.push_str(CoeffReport::CSV_HEADER);
            out.push('\n');
            let mut count = 0;
            for r in &reports {
                out.push_str(&r.csv_row());
                out.push('\n');
                let v = if check == Check::LogConcave {
                    log_concave_violations(r)
                } else {
                    c_nonneg_violations(r)
                };
                for x in v {
                    count += 1;
                    notes.push(format!(
                        "# violation: {} {} k={} values={}",
                        x.check,
                        x.set,
                        x.k,
                        x.values.join(" ")
                    ));
                }
            }
            count
        }
        Check::RootConjecture | Check::Certificates => {
            let certs = scan_sets(max_m)
                .par_iter()
                .map(disc_certificate)
                .collect::<descent_lab::Result<Vec<_>>>()?;
            out.push_str("set,m,max_modulus,min_real_part,passed\n");
            let mut count = 0;
            for c in &certs {
                let max_mod = c.roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
                let min_re = c.roots.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
                let failed: Vec<&str> = if check == Check::RootConjecture {
                    ["modulus_conjecture", "real_part_conjecture"]
                        .into_iter()
                        .filter(|name| !c.check(name).is_some_and(|r| r.passed))
                        .collect()
                } else {
                    c.failures()
                };
                out.push_str(&format!(
                    "{},{},{max_mod:.12},{min_re:.12},{}\n",
                    csv_set(&c.set),
                    c.m,
                    failed.is_empty()
                ));
                if !failed.is_empty() {
                    count += 1;
                    notes.push(format!("# violation: {} {}", c.set, failed.join(" ")));
                }
            }
            count
        }
        Check::Corollary | Check::TypeDVanishing => {
            let rows = scan_sets(max_m)
                .par_iter()
                .map(|s| {
                    let lo = (s.m() + 1).max(2);
                    (lo..=lo + 2)
                        .map(|n| corollary_checks(s, n))
                        .collect::<descent_lab::Result<Vec<_>>>()
                })
                .collect::<descent_lab::Result<Vec<_>>>()?;
            out.push_str("set,n,type_b,type_d,type_d_vanishing\n");
            let mut count = 0;
            for r in rows.iter().flatten() {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    csv_set(&r.set),
                    r.n,
                    r.type_b,
                    r.type_d,
                    r.type_d_vanishing
                ));
                let bad = if check == Check::Corollary {
                    !(r.type_b && r.type_d)
                } else {
                    !r.type_d_vanishing
                };
                if bad {
                    count += 1;
                    let lower: Vec<String> = r
                        .type_d_lower
                        .iter()
                        .map(|(i, a, b)| format!("i={i}: {a} {b}"))
                        .collect();
                    notes.push(format!(
                        "# violation: {} n={} {}",
                        r.set,
                        r.n,
                        lower.join(" ")
                    ));
                }
            }
            count
        }
        Check::PatternRecursion => {
            let p: PatternSet = patterns.parse()?;
            if !p.is_nonoverlapping() {
                return invalid(format!("{p} is not nonoverlapping"));
            }
            let k = p.k() as u32;
            out.push_str("set,n,count,recursion\n");
            let mut count = 0;
            for s in scan_sets(max_m) {
                for n in s.m() + k - 1..=max_n {
                    let brute = pi_count(&p, &s, n)?;
                    let rec = pi_count_rec(&p, &s, n)?;
                    out.push_str(&format!("{},{n},{brute},{rec}\n", csv_set(&s)));
                    if brute != rec {
                        count += 1;
                        notes.push(format!("# violation: {s} n={n}"));
                    }
                }
            }
            count
        }
    };
    for note in notes {
        out.push_str(&note);
        out.push('\n');
    }
    out.push_str(&format!("# violations: {violations}\n"));
    emit(&out, output)?;
    Ok(violations == 0)
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    n: u32,
    group: Group,
    stat: Stat,
    set: Option<&str>,
    list: bool,
    limit: usize,
    format: Format,
    output: Option<PathBuf>,
) -> Run {
    if stat == Stat::Peak && group != Group::A {
        return invalid("peak sets are only enumerated in type A");
    }
    if list && (stat != Stat::Descent || group != Group::A || set.is_none()) {
        return invalid("--list needs --set with type A descent sets");
    }
    let histogram = match stat {
        Stat::Descent => descent_histogram(n, group)?.entries(),
        Stat::Peak => peak_histogram(n)?,
    };
    let label = match stat {
        Stat::Descent => "descent set",
        Stat::Peak => "peak set",
    };
    let rows: Vec<(Vec<u32>, u64)> = match set {
        Some(s) => {
            let elems = if group == Group::A {
                type_a_set(s)?.elems().to_vec()
            } else {
                s.parse::<SignedDescentSet>()?.elems().to_vec()
            };
            let count = histogram.get(&elems).copied().unwrap_or(0);
            vec![(elems, count)]
        }
        None => histogram.into_iter().collect(),
    };
    let perms = if list {
        let s = rows[0].0.clone();
        collect_with_descents(&s, n, limit.min(DEFAULT_COLLECT_CAP), |_| true)?
    } else {
        Vec::new()
    };
    let fmt_set = |s: &[u32]| {
        format!(
            "{{{}}}",
            s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        )
    };

    let body = match format {
        Format::Text => {
            let mut t = String::new();
            for (s, c) in &rows {
                let _ = writeln!(t, "{label} {}: {c}", fmt_set(s));
            }
            for p in &perms {
                let _ = writeln!(t, "{p}");
            }
            t
        }
        Format::Csv => {
            let mut t = format!("{CSV_VERSION}\nset,count\n");
            for (s, c) in &rows {
                let _ = writeln!(
                    t,
                    "{},{c}",
                    s.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
                );
            }
            t
        }
        Format::Json => {
            let doc = json!({
                "n": n,
                "type": group.to_string(),
                "stat": label,
                "counts": rows.iter().map(|(s, c)| json!({ "set": s, "count": c })).collect::<Vec<Value>>(),
                "permutations": perms.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("serialises")
            )
        }
    };
    emit(&body, output)?;
    Ok(true)
}

fn pattern_cmd(
    patterns: &str,
    n: &str,
    set: Option<&str>,
    peak_poly: bool,
    format: Format,
    output: Option<PathBuf>,
) -> Run {
    if peak_poly {
        let set = type_a_set(set.unwrap_or(""))?;
        let outcome = peak_poly_check(&set, parse_range(n)?)?;
        let (ok, body) = match (&outcome, format) {
            (_, Format::Json) => {
                let ok = !matches!(&outcome, PeakOutcome::Checked(r) if !r.passed());
                (
                    ok,
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&outcome).expect("serialises")
                    ),
                )
            }
            (PeakOutcome::Inadmissible, _) => (true, format!("peak set {set} is not admissible\n")),
            (PeakOutcome::Checked(r), Format::Csv) => {
                let mut t = format!("{CSV_VERSION}\nn,count,quotient\n");
                for ((n, c), q) in r.ns.iter().zip(&r.counts).zip(&r.quotients) {
                    let _ = writeln!(t, "{n},{c},{q}");
                }
                (r.passed(), t)
            }
            (PeakOutcome::Checked(r), Format::Text) => {
                let mut t = format!("peak set {set}\n");
                for ((n, c), q) in r.ns.iter().zip(&r.counts).zip(&r.quotients) {
                    let _ = writeln!(
                        t,
                        "n = {n}: {c} = {q} * 2^{}",
                        i64::from(*n) - set.len() as i64 - 1
                    );
                }
                let _ = writeln!(t, "p({set};n) = {}", r.poly);
                let _ = writeln!(
                    t,
                    "divisible: {}, degree <= {}: {}",
                    r.divisible,
                    set.m(),
                    r.degree_ok
                );
                (r.passed(), t)
            }
        };
        emit(&body, output)?;
        return Ok(ok);
    }

    let p: PatternSet = patterns.parse()?;
    let n = *parse_range(n)?.start();
    let av = av_count(&p, n)?;
    let mut doc = json!({ "patterns": p, "n": n, "av": av.to_string() });
    let mut text = format!(
        "patterns {p} (k = {}, {})\nav({n}) = {av}\n",
        p.k(),
        if p.is_nonoverlapping() {
            "nonoverlapping"
        } else {
            "overlapping"
        }
    );
    let mut ok = true;
    let mut csv = format!("{CSV_VERSION}\n");
    match set {
        Some(s) => {
            let set = type_a_set(s)?;
            let brute = pi_count(&p, &set, n)?;
            let rec =
                if p.is_nonoverlapping() && (set.is_empty() || n >= set.m() + p.k() as u32 - 1) {
                    Some(pi_count_rec(&p, &set, n)?)
                } else {
                    None
                };
            if let Some(r) = &rec {
                ok = *r == brute;
            }
            let rec_text = rec.as_ref().map_or("n/a".to_string(), ToString::to_string);
            let _ = writeln!(text, "#Π({set};{n}) = {brute}, recursion {rec_text}");
            doc["set"] = json!(set);
            doc["count"] = json!(brute.to_string());
            doc["recursion"] = json!(rec.map(|r| r.to_string()));
            let _ = writeln!(
                csv,
                "set,n,count,recursion\n{},{n},{brute},{rec_text}",
                csv_set(&set)
            );
        }
        None => {
            let hist = occurrence_histogram(&p, n)?;
            let _ = writeln!(csv, "set,count");
            for (s, c) in &hist {
                let shown = s.iter().map(u32::to_string).collect::<Vec<_>>();
                let _ = writeln!(text, "occurrences {{{}}}: {c}", shown.join(","));
                let _ = writeln!(csv, "{},{c}", shown.join(" "));
            }
            doc["histogram"] = hist
                .iter()
                .map(|(s, c)| json!({ "set": s, "count": c }))
                .collect();
        }
    }
    let body = match format {
        Format::Text => text,
        Format::Csv => csv,
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&doc).expect("serialises")
        ),
    };
    emit(&body, output)?;
    Ok(ok)
}
