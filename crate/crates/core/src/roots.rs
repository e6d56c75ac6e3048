//! Complex roots of `d(I;z)` and the bounds that localise them.
//!
//! Roots are computed numerically by simultaneous (Aberth-Ehrlich)
//! iteration. Everything that can be decided exactly, such as vanishing at
//! the elements of `I` or the falling factorial coefficient bounds, is
//! decided in rational arithmetic; the floating point checks carry an
//! additive slack of [`SLACK`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;
use serde_json::json;

use crate::descent::{d_at, d_poly, i_minus, DescentSet};
use crate::error::{Error, Result};
use crate::exactmath::{factorial, rat, rat_to_f64, to_falling_factorial_basis, ExactPoly};

pub type ComplexPoint = Complex64;

/// Additive slack for every floating point certificate comparison.
pub const SLACK: f64 = 1e-8;
/// Relative residual tolerance: `|p(z)| <= RESIDUAL_TOL * (1 + max|c_i|)`.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Distance within which an element of `I` must be matched by a computed root.
pub const ROOT_MATCH_TOL: f64 = 1e-6;
pub const MAX_ITERATIONS: usize = 500;
pub const CONVERGENCE_TOL: f64 = 1e-12;

fn serialize_point<S: Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

fn serialize_points<S: Serializer>(zs: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(zs.len()))?;
    for z in zs {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

/// A closed disc in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Disc {
    #[serde(serialize_with = "serialize_point")]
    pub center: Complex64,
    pub radius: f64,
}

impl Disc {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid(format!(
                "disc radius must be positive, got {radius}"
            )));
        }
        Ok(Disc { center, radius })
    }

    /// `radius - |z - center|`; nonnegative inside the disc.
    pub fn margin(&self, z: Complex64) -> f64 {
        self.radius - (z - self.center).norm()
    }
}

/// Horner evaluation with coefficients rounded to `f64`.
pub fn eval_complex(p: &ExactPoly, z: Complex64) -> Complex64 {
    horner(&p.to_f64_coeffs(), z)
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::zero(), |acc, &c| acc * z + c)
}

/// Value and derivative by a single Horner pass.
fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Rounding-error scale of Horner's rule at `z`: `sum |c_i| |z|^i`.
fn horner_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// All complex roots of `p`, with multiplicity, sorted by real then
/// imaginary part. Nonreal roots are returned in exact conjugate pairs.
pub fn find_roots(p: &ExactPoly) -> Result<Vec<ComplexPoint>> {
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::invalid("root finding needs degree >= 1")),
    };
    let lead = rat_to_f64(p.leading().expect("nonzero"));
    let coeffs: Vec<Complex64> = p
        .to_f64_coeffs()
        .into_iter()
        .map(|c| Complex64::new(c / lead, 0.0))
        .collect();
    let radius = cauchy_bound(p.coeffs())?.max(f64::MIN_POSITIVE.sqrt());

    // Equally spaced on the Cauchy circle, rotated off the real axis so no
    // starting point is real.
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / degree as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let eps = f64::EPSILON;
    let mut iterations = 0;
    loop {
        if iterations == MAX_ITERATIONS {
            return Err(Error::NonConvergence {
                iterations,
                partial: z,
            });
        }
        iterations += 1;
        let mut done = true;
        for i in 0..degree {
            let (val, der) = horner_with_derivative(&coeffs, z[i]);
            let noise = 8.0 * degree as f64 * eps * horner_scale(&coeffs, z[i]);
            if val.norm() <= noise {
                continue;
            }
            let newton = val / der;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = newton / (Complex64::one() - newton * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() > CONVERGENCE_TOL * (1.0 + z[i].norm()) {
                done = false;
            }
        }
        if done {
            break;
        }
    }

    polish(&coeffs, &mut z);
    let mut roots = pair_conjugates(z);
    roots.sort_by(cmp_point);
    Ok(roots)
}

/// A few Newton steps per root, each kept only if the residual drops.
fn polish(coeffs: &[Complex64], z: &mut [Complex64]) {
    for root in z.iter_mut() {
        for _ in 0..3 {
            let (val, der) = horner_with_derivative(coeffs, *root);
            if der.norm() == 0.0 {
                break;
            }
            let candidate = *root - val / der;
            let (new_val, _) = horner_with_derivative(coeffs, candidate);
            if candidate.is_finite() && new_val.norm() < val.norm() {
                *root = candidate;
            } else {
                break;
            }
        }
    }
}

fn cmp_point(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

/// Snaps near-real roots onto the axis and averages conjugate partners so
/// the output is exactly closed under conjugation.
fn pair_conjugates(z: Vec<Complex64>) -> Vec<Complex64> {
    let real_tol = |w: &Complex64| 1e-9 * (1.0 + w.norm());
    let mut out = Vec::with_capacity(z.len());
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for w in z {
        if w.im.abs() <= real_tol(&w) {
            out.push(Complex64::new(w.re, 0.0));
        } else if w.im > 0.0 {
            upper.push(w);
        } else {
            lower.push(w);
        }
    }
    upper.sort_by(cmp_point);
    for u in upper {
        let best = lower
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (**a - u.conj()).norm().total_cmp(&(**b - u.conj()).norm()))
            .map(|(i, _)| i);
        match best {
            Some(i) if (lower[i] - u.conj()).norm() <= 1e-6 * (1.0 + u.norm()) => {
                let l = lower.swap_remove(i);
                let avg = (u + l.conj()) / 2.0;
                out.push(avg);
                out.push(avg.conj());
            }
            _ => out.push(u),
        }
    }
    out.extend(lower);
    out
}

/// Unique positive solution of `|c_d| z^d = sum_{i<d} |c_i| z^i`.
pub fn cauchy_bound(coeffs: &[BigRational]) -> Result<f64> {
    let p = ExactPoly::new(coeffs.to_vec());
    let d = match p.degree() {
        None => return Err(Error::invalid("Cauchy bound of the zero polynomial")),
        Some(0) => return Err(Error::invalid("Cauchy bound needs degree >= 1")),
        Some(d) => d,
    };
    let lead = rat_to_f64(&p.coeffs()[d].abs());
    let lower: Vec<f64> = p.coeffs()[..d]
        .iter()
        .map(|c| rat_to_f64(&c.abs()) / lead)
        .collect();
    if lower.iter().all(|&a| a == 0.0) {
        return Ok(0.0);
    }
    let f = |z: f64| {
        let tail = lower.iter().rev().fold(0.0, |acc, &a| acc * z + a);
        z.powi(d as i32) - tail
    };
    let mut lo = 0.0;
    let mut hi = 1.0 + lower.iter().cloned().fold(0.0, f64::max);
    while hi - lo > 1e-14 * hi {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Falling factorial coefficients of `d(I;z)` and whether they obey the
/// support and magnitude constraints.
#[derive(Debug, Clone, Serialize)]
pub struct FallingCheck {
    pub coeffs: Vec<String>,
    pub support_ok: bool,
    pub bounds_ok: bool,
    pub violations: Vec<String>,
}

impl FallingCheck {
    pub fn passed(&self) -> bool {
        self.support_ok && self.bounds_ok
    }
}

/// Expands `d(I;z)` in the falling factorial basis and checks that only
/// `k ∈ I ∪ {0}` occur, each with `1/k! <= |c_k| <= 1`.
pub fn falling_coeffs_check(set: &DescentSet) -> FallingCheck {
    let coeffs = to_falling_factorial_basis(&d_poly(set));
    let mut violations = Vec::new();
    let mut support_ok = true;
    let mut bounds_ok = true;
    for (k, c) in coeffs.iter().enumerate() {
        let allowed = k == 0 || set.contains(k as u32);
        if !allowed {
            if !c.is_zero() {
                support_ok = false;
                violations.push(format!("c_{k} = {c} outside support"));
            }
            continue;
        }
        let lower = BigRational::new(One::one(), factorial(k as u32));
        let mag = c.abs();
        if mag < lower || mag > BigRational::one() {
            bounds_ok = false;
            violations.push(format!("|c_{k}| = {mag} outside [1/{k}!, 1]"));
        }
    }
    FallingCheck {
        coeffs: coeffs.iter().map(|c| c.to_string()).collect(),
        support_ok,
        bounds_ok,
        violations,
    }
}

/// `(m/e) (m e)^{1/m}`, the disc radius for `I = {m}`.
pub fn bound_rho_m(m: u32) -> Result<f64> {
    if m == 0 {
        return Err(Error::invalid("rho_m needs m >= 1"));
    }
    let m = f64::from(m);
    let ln_m = m.ln();
    // exp(ln m - 1 + (ln m + 1)/m), arranged so m = 1 gives exp(0) exactly.
    let rho = (ln_m * (1.0 + 1.0 / m) + (1.0 / m - 1.0)).exp();
    debug_assert!(rho > m / std::f64::consts::E && rho <= m * (1.0 + 1e-15));
    Ok(rho)
}

fn ln_factorial(m: u32) -> f64 {
    (2..=m).map(|k| f64::from(k).ln()).sum()
}

/// `min(m! + 1, (m! #I)^{1/(m - m^-)})` for `#I >= 2`.
pub fn bound_general_rho(set: &DescentSet) -> Result<f64> {
    if set.len() < 2 {
        return Err(Error::invalid("general disc radius needs #I >= 2"));
    }
    let m = set.m();
    let m_minus = i_minus(set)?.m();
    let first = rat_to_f64(&(BigRational::from_integer(factorial(m)) + rat(1)));
    let second = ((ln_factorial(m) + (set.len() as f64).ln()) / f64::from(m - m_minus)).exp();
    Ok(first.min(second))
}

/// Which bound supplies the disc radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusCase {
    Singleton,
    Pair,
    General,
}

pub fn disc_radius(set: &DescentSet) -> Result<(f64, RadiusCase)> {
    match set.len() {
        0 => Err(Error::invalid("disc radius needs a nonempty I")),
        1 => Ok((bound_rho_m(set.m())?, RadiusCase::Singleton)),
        2 => Ok((f64::from(set.m()), RadiusCase::Pair)),
        _ => Ok((bound_general_rho(set)?, RadiusCase::General)),
    }
}

/// Principal argument in `(-pi, pi]`; `None` at the origin.
fn principal_arg(w: Complex64) -> Option<f64> {
    if w.re == 0.0 && w.im == 0.0 {
        return None;
    }
    // atan2(+0, negative) is pi; normalise -0 so the negative axis maps to pi.
    let im = if w.im == 0.0 { 0.0 } else { w.im };
    Some(im.atan2(w.re))
}

/// Partial sums `s_k = sum_{i<=k} Arg(w - i + 1)` for `k = 1..=m`, with `w`
/// reflected into the closed upper half-plane. `None` if some term hits the
/// origin.
pub fn region_partial_sums(w: Complex64, m: u32) -> Option<Vec<f64>> {
    let w = if w.im < 0.0 { w.conj() } else { w };
    let mut sums = Vec::with_capacity(m as usize);
    let mut acc = 0.0;
    for i in 1..=m {
        acc += principal_arg(w - f64::from(i - 1))?;
        sums.push(acc);
    }
    Some(sums)
}

/// Whether `z - m` lies in `R = S ∪ conj(S)`, where `S` is the set of `w`
/// with `Arg w >= 0` and `sum_{i=1}^m Arg(w - i + 1) < pi`. No polynomial
/// with nonnegative falling factorial coefficients vanishes on `R`.
pub fn region_membership(z: Complex64, m: u32) -> bool {
    if m == 0 {
        return false;
    }
    match region_partial_sums(z - f64::from(m), m) {
        Some(sums) => sums.last().is_some_and(|&s| s < PI),
        None => false,
    }
}

/// Outcome of one certificate check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub passed: bool,
    /// Informational checks never fail a certificate.
    pub asserted: bool,
    pub witness: serde_json::Value,
}

impl CheckResult {
    fn asserted(passed: bool, witness: serde_json::Value) -> Self {
        CheckResult {
            passed,
            asserted: true,
            witness,
        }
    }

    fn informational(passed: bool, witness: serde_json::Value) -> Self {
        CheckResult {
            passed,
            asserted: false,
            witness,
        }
    }
}

/// Computed roots of `d(I;z)` together with every localisation check.
#[derive(Debug, Clone, Serialize)]
pub struct RootCertificate {
    pub set: DescentSet,
    pub m: u32,
    #[serde(serialize_with = "serialize_points")]
    pub roots: Vec<ComplexPoint>,
    pub residuals: Vec<f64>,
    pub radius: f64,
    pub radius_case: RadiusCase,
    pub discs: Vec<Disc>,
    pub checks: BTreeMap<String, CheckResult>,
}

impl RootCertificate {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|c| c.passed || !c.asserted)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, c)| c.asserted && !c.passed)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.get(name)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("certificate serialises");
        v["passed"] = json!(self.passed());
        v
    }
}

/// Finds the roots of `d(I;z)` and checks them against the disc bounds, the
/// root theorem, the modulus and real-part conjectures, the real-root bound
/// and the excluded region `R + m`.
pub fn disc_certificate(set: &DescentSet) -> Result<RootCertificate> {
    let (radius, radius_case) = disc_radius(set)?;
    let m = set.m();
    let poly = d_poly(set);
    let roots = find_roots(&poly)?;
    let coeffs_f64 = poly.to_f64_coeffs();
    let max_coeff = coeffs_f64.iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let residuals: Vec<f64> = roots
        .iter()
        .map(|&z| horner(&coeffs_f64, z).norm())
        .collect();
    let discs: Vec<Disc> = (0..m)
        .map(|k| Disc::new(Complex64::new(f64::from(k), 0.0), radius))
        .collect::<Result<_>>()?;

    let mut checks = BTreeMap::new();

    checks.insert(
        "root_count".into(),
        CheckResult::asserted(
            roots.len() == m as usize,
            json!({ "found": roots.len(), "expected": m }),
        ),
    );

    let worst_residual = residuals.iter().cloned().fold(0.0, f64::max);
    let residual_limit = RESIDUAL_TOL * (1.0 + max_coeff);
    checks.insert(
        "residuals".into(),
        CheckResult::asserted(
            worst_residual <= residual_limit,
            json!({ "max": worst_residual, "limit": residual_limit }),
        ),
    );

    let closed = roots.iter().all(|z| {
        z.im == 0.0
            || roots.iter().filter(|w| **w == z.conj()).count()
                == roots.iter().filter(|w| *w == z).count()
    });
    checks.insert(
        "conjugate_closure".into(),
        CheckResult::asserted(closed, json!(null)),
    );

    let mut theorem_ok = true;
    let mut theorem_witness = Vec::new();
    for &i in set.elems() {
        let exact_zero = d_at(set, &rat(i64::from(i))).is_zero();
        let nearest = roots
            .iter()
            .map(|z| (z - f64::from(i)).norm())
            .fold(f64::INFINITY, f64::min);
        let ok = exact_zero && nearest <= ROOT_MATCH_TOL;
        theorem_ok &= ok;
        theorem_witness
            .push(json!({ "i": i, "exact_zero": exact_zero, "nearest_root_distance": nearest }));
    }
    checks.insert(
        "root_theorem".into(),
        CheckResult::asserted(theorem_ok, json!(theorem_witness)),
    );

    let margins: Vec<f64> = roots
        .iter()
        .map(|&z| {
            discs
                .iter()
                .map(|d| d.margin(z))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let worst_margin = margins.iter().cloned().fold(f64::INFINITY, f64::min);
    checks.insert(
        "disc_cover".into(),
        CheckResult::asserted(
            margins.iter().all(|&g| g >= -SLACK),
            json!({ "radius": radius, "worst_margin": worst_margin }),
        ),
    );

    // The disc radius dominates the Cauchy bound of the falling factorial
    // coefficients, except for two-element sets with m <= 4 where the disc
    // statement rests on direct computation.
    let falling = to_falling_factorial_basis(&poly);
    let cauchy = cauchy_bound(&falling)?;
    let cauchy_ok = cauchy <= radius + SLACK;
    let witness = json!({ "cauchy": cauchy, "radius": radius });
    let cauchy_check = if radius_case == RadiusCase::Pair && m <= 4 {
        CheckResult::informational(cauchy_ok, witness)
    } else {
        CheckResult::asserted(cauchy_ok, witness)
    };
    checks.insert("cauchy_within_radius".into(), cauchy_check);

    let max_modulus = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    checks.insert(
        "modulus_conjecture".into(),
        CheckResult::asserted(
            max_modulus <= f64::from(m) + SLACK,
            json!({ "max_modulus": max_modulus, "m": m }),
        ),
    );

    let min_re = roots.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    checks.insert(
        "real_part_conjecture".into(),
        CheckResult::asserted(min_re >= -1.0 - SLACK, json!({ "min_real_part": min_re })),
    );

    let max_real_root = roots
        .iter()
        .filter(|z| z.im == 0.0)
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let real_bound = f64::from(2 * m) - 1.0;
    checks.insert(
        "real_root_bound".into(),
        CheckResult::asserted(
            max_real_root <= real_bound + SLACK,
            json!({ "max_real_root": max_real_root, "bound": real_bound }),
        ),
    );

    let inside: Vec<[f64; 2]> = roots
        .iter()
        .filter(|&&z| region_membership(z, m))
        .map(|z| [z.re, z.im])
        .collect();
    checks.insert(
        "region_exclusion".into(),
        CheckResult::asserted(inside.is_empty(), json!({ "roots_in_region": inside })),
    );

    let fc = falling_coeffs_check(set);
    checks.insert(
        "falling_coefficients".into(),
        CheckResult::asserted(fc.passed(), serde_json::to_value(&fc).expect("serialises")),
    );

    Ok(RootCertificate {
        set: set.clone(),
        m,
        roots,
        residuals,
        radius,
        radius_case,
        discs,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> DescentSet {
        DescentSet::new(v.to_vec()).unwrap()
    }

    fn assert_roots(set: &[u32], expected: &[f64]) {
        let roots = find_roots(&d_poly(&s(set))).unwrap();
        assert_eq!(roots.len(), expected.len());
        for (z, &e) in roots.iter().zip(expected) {
            assert!((z - e).norm() < 1e-10, "{set:?}: {z} vs {e}");
            assert_eq!(z.im, 0.0);
        }
    }

    #[test]
    fn eval_examples() {
        let z = eval_complex(&d_poly(&s(&[1, 2])), Complex64::new(2.0, 0.0));
        assert!(z.norm() < 1e-15);
        let z = eval_complex(&d_poly(&s(&[1])), Complex64::new(1.0, 1.0));
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        let z = eval_complex(&d_poly(&s(&[1, 3])), Complex64::new(-1.0, 0.0));
        assert!(z.norm() < 1e-14);
    }

    #[test]
    fn root_examples() {
        assert_roots(&[1, 2], &[1.0, 2.0]);
        assert_roots(&[1, 3], &[-1.0, 1.0, 3.0]);
        assert_roots(&[2], &[-1.0, 2.0]);
    }

    #[test]
    fn find_roots_rejects_constants() {
        assert!(find_roots(&ExactPoly::one()).is_err());
        assert!(find_roots(&ExactPoly::zero()).is_err());
    }

    #[test]
    fn roots_are_conjugate_closed() {
        let roots = find_roots(&d_poly(&s(&[2, 5, 7]))).unwrap();
        for z in &roots {
            assert!(roots.contains(&z.conj()));
        }
    }

    #[test]
    fn cauchy_examples() {
        // z^2 - 2
        let c = cauchy_bound(&[rat(-2), rat(0), rat(1)]).unwrap();
        assert!((c - 2f64.sqrt()).abs() < 1e-10);
        let c = cauchy_bound(&[rat(-5), rat(1)]).unwrap();
        assert!((c - 5.0).abs() < 1e-10);
        let c = cauchy_bound(&[rat(0), rat(5), rat(6), rat(2)]).unwrap();
        assert!(c < 4.0);
        assert_eq!(cauchy_bound(&[rat(0), rat(0), rat(3)]).unwrap(), 0.0);
        assert!(cauchy_bound(&[]).is_err());
        assert!(cauchy_bound(&[rat(0)]).is_err());
    }

    #[test]
    fn cauchy_of_factorial_monomial() {
        for m in 1..=10u32 {
            let mut coeffs = vec![rat(0); m as usize + 1];
            coeffs[0] = -BigRational::from_integer(factorial(m));
            coeffs[m as usize] = rat(1);
            let c = cauchy_bound(&coeffs).unwrap();
            let expected =
                rat_to_f64(&BigRational::from_integer(factorial(m))).powf(1.0 / f64::from(m));
            assert!((c - expected).abs() < 1e-9 * expected, "m = {m}");
        }
    }

    #[test]
    fn rho_m_values() {
        assert_eq!(bound_rho_m(1).unwrap(), 1.0);
        let two = bound_rho_m(2).unwrap();
        assert!((two - 2.0 * (2.0 / std::f64::consts::E).sqrt()).abs() < 1e-12);
        assert!((two - 1.7155).abs() < 1e-4);
        for m in 1..=20 {
            let r = bound_rho_m(m).unwrap();
            assert!(r <= f64::from(m) && r > f64::from(m) / std::f64::consts::E);
        }
        assert!(bound_rho_m(0).is_err());
    }

    #[test]
    fn general_rho_cases() {
        let r = bound_general_rho(&s(&[1, 3])).unwrap();
        assert!((r - 12f64.sqrt()).abs() < 1e-12);
        // m - m^- = 1: factorial branch
        let r = bound_general_rho(&s(&[1, 3, 4])).unwrap();
        assert_eq!(r, 25.0);
        // m - m^- >= 2: root branch
        let r = bound_general_rho(&s(&[1, 2, 4])).unwrap();
        assert!((r - 72f64.sqrt()).abs() < 1e-12);
        assert!(bound_general_rho(&s(&[4])).is_err());
    }

    #[test]
    fn region_examples() {
        assert!(region_membership(Complex64::new(2.0, 1.0), 1));
        assert!(!region_membership(Complex64::new(-1.0, 0.0), 1));
        // the origin of the shifted plane is excluded
        assert!(!region_membership(Complex64::new(3.0, 0.0), 3));
        // real points: inside iff z > 2m - 1
        assert!(region_membership(Complex64::new(7.5, 0.0), 4));
        assert!(!region_membership(Complex64::new(7.0, 0.0), 4));
        assert!(!region_membership(Complex64::new(6.5, 0.0), 4));
        // conjugate symmetry
        let z = Complex64::new(9.0, 2.5);
        assert_eq!(region_membership(z, 4), region_membership(z.conj(), 4));
    }

    #[test]
    fn falling_examples() {
        let fc = falling_coeffs_check(&s(&[4]));
        assert!(fc.passed());
        assert_eq!(fc.coeffs, vec!["-1", "0", "0", "0", "1/24"]);
        let fc = falling_coeffs_check(&s(&[1, 3]));
        assert!(fc.passed());
        assert_eq!(fc.coeffs[2], "0");
        let fc = falling_coeffs_check(&DescentSet::empty());
        assert!(fc.passed());
        assert_eq!(fc.coeffs, vec!["1"]);
    }

    #[test]
    fn certificate_for_singleton() {
        let cert = disc_certificate(&s(&[2])).unwrap();
        assert!(cert.passed(), "{:?}", cert.failures());
        assert_eq!(cert.radius_case, RadiusCase::Singleton);
        assert_eq!(cert.discs.len(), 2);
        assert!((cert.roots[0].re + 1.0).abs() < 1e-12);
        assert!((cert.roots[1].re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn certificate_for_one_three() {
        let cert = disc_certificate(&s(&[1, 3])).unwrap();
        assert!(cert.passed(), "{:?}", cert.failures());
        assert_eq!(cert.radius_case, RadiusCase::Pair);
        let min_re = cert.check("real_part_conjecture").unwrap().witness["min_real_part"]
            .as_f64()
            .unwrap();
        assert!((min_re + 1.0).abs() < 1e-10);
    }

    #[test]
    fn certificate_for_pair_small_m() {
        let cert = disc_certificate(&s(&[1, 2])).unwrap();
        assert!(cert.passed());
        // the Cauchy route alone would need 1 + sqrt(3) > m
        let c = cert.check("cauchy_within_radius").unwrap();
        assert!(!c.asserted && !c.passed);
    }

    #[test]
    fn certificate_json_shape() {
        let cert = disc_certificate(&s(&[1, 2, 4])).unwrap();
        let v = cert.to_json();
        assert_eq!(v["roots"].as_array().unwrap().len(), 4);
        assert_eq!(v["roots"][0].as_array().unwrap().len(), 2);
        assert_eq!(v["passed"], json!(true));
        assert_eq!(v["radius_case"], json!("general"));
        assert!(disc_certificate(&DescentSet::empty()).is_err());
    }

    #[test]
    fn disc_rejects_nonpositive_radius() {
        assert!(Disc::new(Complex64::zero(), 0.0).is_err());
        assert!(Disc::new(Complex64::zero(), f64::NAN).is_err());
    }
}
