use std::fmt::Write;

use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::mmp::{run_mmp_scaling_with, MmpOptions};
use crate::polytope::{adjoint_of_presentation, thresholds, vertices, FacetPresentation};
use crate::ratlin::{int, Rational};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const GRID: i64 = 6;

/// Draws `P` and its adjoint polytopes `P^(s)`: a sampled grid in grey, critical values in red.
///
/// Critical values are the MMP critical values (taken with the tie-break on non-general input)
/// and the effective threshold; a polytope whose thresholds are undefined is drawn alone.
pub fn emit_svg(p: &FacetPresentation) -> Result<String> {
    if p.dim() != 2 {
        return Err(Error::Dimension { expected: 2, found: p.dim() });
    }
    if !p.is_nonempty()? {
        return Err(Error::Degenerate("nothing to draw: the polytope is empty".into()));
    }
    let mut critical: Vec<Rational> = Vec::new();
    let mut grid: Vec<Rational> = vec![int(0)];
    if let Ok(t) = thresholds(p) {
        if let Ok(trace) = run_mmp_scaling_with(p, MmpOptions { force: true }) {
            critical.extend(trace.lambdas());
        }
        critical.push(t.effective.clone());
        grid.extend((1..GRID).map(|k| &t.effective * Rational::new(k.into(), GRID.into())));
    }
    critical.sort();
    critical.dedup();
    grid.retain(|s| !critical.contains(s));

    let outer = points(p, &int(0))?;
    let (lo, hi) = bounds(&outer);
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let map = |(x, y): (f64, f64)| (MARGIN + (x - lo.0) * scale, SIZE - MARGIN - (y - lo.1) * scale);

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (s, colour) in grid.iter().map(|s| (s, "#999999")).chain(critical.iter().map(|s| (s, "#cc2222"))) {
        let q = adjoint_of_presentation(p, s)?;
        if !q.is_nonempty()? {
            continue;
        }
        let pts: Vec<(f64, f64)> = points(&q, &int(0))?.into_iter().map(map).collect();
        let _ = writeln!(out, "{}", shape(&pts, colour, s));
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Vertices of `P^(s)` as floating-point pairs in counterclockwise order.
fn points(p: &FacetPresentation, s: &Rational) -> Result<Vec<(f64, f64)>> {
    let q = adjoint_of_presentation(p, s)?;
    let vs = vertices(&q)?;
    let mut pts: Vec<(f64, f64)> = vs
        .vertices
        .iter()
        .map(|v| (v[0].to_f64().unwrap_or(0.0), v[1].to_f64().unwrap_or(0.0)))
        .collect();
    let n = pts.len() as f64;
    let c = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    pts.sort_by(|a, b| (a.1 - c.1).atan2(a.0 - c.0).total_cmp(&(b.1 - c.1).atan2(b.0 - c.0)));
    Ok(pts)
}

fn bounds(pts: &[(f64, f64)]) -> ((f64, f64), (f64, f64)) {
    let fold = |f: fn(f64, f64) -> f64, init: f64| {
        (pts.iter().map(|p| p.0).fold(init, f), pts.iter().map(|p| p.1).fold(init, f))
    };
    (fold(f64::min, f64::INFINITY), fold(f64::max, f64::NEG_INFINITY))
}

fn shape(pts: &[(f64, f64)], colour: &str, s: &Rational) -> String {
    let label = format!(r#"data-s="{s}""#);
    match pts {
        [(x, y)] => format!(r#"<circle {label} cx="{x:.3}" cy="{y:.3}" r="4" fill="{colour}"/>"#),
        [(x1, y1), (x2, y2)] => format!(
            r#"<line {label} x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{colour}" stroke-width="2"/>"#
        ),
        _ => {
            let coords: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
            format!(r#"<polygon {label} points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#, coords.join(" "))
        }
    }
}
