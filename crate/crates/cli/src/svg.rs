//! Static SVG figure of a root certificate: shaded discs, the excluded
//! region `R + m`, the roots and the coordinate axes.

use std::f64::consts::PI;
use std::fmt::Write;

use descent_lab::roots::region_partial_sums;
use descent_lab::RootCertificate;
use num_complex::Complex64;

const SIZE: f64 = 800.0;
const RAY_SAMPLES: usize = 360;

/// Boundary of `S`, traced along rays from `m - 1`. On the ray at angle
/// `theta` the argument sum rises monotonically from 0 to `m * theta`, so
/// it crosses `pi` at most once.
fn region_boundary(m: u32, reach: f64) -> Vec<Complex64> {
    let apex = Complex64::new(f64::from(m) - 1.0, 0.0);
    let sum_at = |w: Complex64| {
        region_partial_sums(w, m)
            .and_then(|s| s.last().copied())
            .unwrap_or(PI)
    };
    (0..=RAY_SAMPLES)
        .map(|j| {
            let theta = PI * j as f64 / RAY_SAMPLES as f64;
            let dir = Complex64::from_polar(1.0, theta);
            let r = if sum_at(apex + dir * reach) < PI {
                reach
            } else {
                let (mut lo, mut hi) = (0.0, reach);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    if sum_at(apex + dir * mid) < PI {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            };
            apex + dir * r
        })
        .collect()
}

pub fn render(cert: &RootCertificate) -> String {
    let m = f64::from(cert.m);
    let max_root = cert.roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let extent = (cert.radius + m).max(max_root) + 1.0;
    let scale = SIZE / (2.0 * extent);
    let px = |z: Complex64| ((z.re + extent) * scale, (extent - z.im) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, "  <title>roots of d({};z)</title>", cert.set);
    let _ = writeln!(
        out,
        r#"  <rect width="{SIZE}" height="{SIZE}" fill="white"/>"#
    );

    let _ = writeln!(
        out,
        r##"  <g fill="#808080" fill-opacity="0.25" stroke="#606060" stroke-width="0.5">"##
    );
    for d in &cert.discs {
        let (cx, cy) = px(d.center);
        let _ = writeln!(
            out,
            r#"    <circle cx="{cx:.3}" cy="{cy:.3}" r="{:.3}"/>"#,
            d.radius * scale
        );
    }
    let _ = writeln!(out, "  </g>");

    // R + m is the region S shifted right by m, together with its mirror.
    let upper: Vec<Complex64> = region_boundary(cert.m, 2.0 * extent)
        .into_iter()
        .map(|w| w + m)
        .collect();
    let mut path = String::new();
    for (k, z) in upper
        .iter()
        .chain(
            upper
                .iter()
                .rev()
                .map(|z| z.conj())
                .collect::<Vec<_>>()
                .iter(),
        )
        .enumerate()
    {
        let (x, y) = px(*z);
        let _ = write!(path, "{}{x:.3},{y:.3} ", if k == 0 { "M" } else { "L" });
    }
    let _ = writeln!(
        out,
        r##"  <path d="{}Z" fill="#4060c0" fill-opacity="0.12" stroke="#2040a0" stroke-width="1.2"/>"##,
        path
    );

    let (x0, y0) = px(Complex64::new(0.0, 0.0));
    let _ = writeln!(
        out,
        r#"  <g stroke="black" stroke-width="0.8"><line x1="0" y1="{y0:.3}" x2="{SIZE}" y2="{y0:.3}"/><line x1="{x0:.3}" y1="0" x2="{x0:.3}" y2="{SIZE}"/></g>"#
    );

    let _ = writeln!(out, r##"  <g fill="#c00000">"##);
    for z in &cert.roots {
        let (x, y) = px(*z);
        let _ = writeln!(out, r#"    <circle cx="{x:.3}" cy="{y:.3}" r="3.5"/>"#);
    }
    let _ = writeln!(out, "  </g>");
    out.push_str("</svg>\n");
    out
}
