//! Text formats: JSON fans and polytopes, dataset and report CSV, MMP traces, SVG drawings.

mod dataset;
mod svg;
mod trace;

use serde::Deserialize;

pub use dataset::{emit_dataset, emit_report_csv, emit_report_text, emit_surfaces_csv, parse_dataset};
pub use svg::emit_svg;
pub use trace::emit_trace;

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::polytope::FacetPresentation;
use crate::ratlin::{parse_rational, primitive_part, LatticeVector, Rational};

/// How non-primitive vectors in input files are treated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParseMode {
    /// Reject them.
    #[default]
    Strict,
    /// Divide out the content and record a warning.
    Lenient,
}

/// On-disk fan layout.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// On-disk polytope layout: `{x : <normals[i], x> >= -constants[i]}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub dim: usize,
    pub normals: Vec<Vec<i64>>,
    pub constants: Vec<RationalField>,
}

/// A rational given as `"p/q"`, or as a bare JSON integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RationalField {
    Text(String),
    Integer(i64),
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse { location: location.into(), message: message.into() }
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| parse_error(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
}

fn lattice_field(v: &[i64], dim: usize, location: String, mode: ParseMode, warnings: &mut Vec<String>) -> Result<(LatticeVector, i64)> {
    if v.len() != dim {
        return Err(parse_error(location, format!("expected {dim} entries, found {}", v.len())));
    }
    let u = LatticeVector::new(v.to_vec());
    if u.is_zero() {
        return Err(parse_error(location, "zero vector"));
    }
    let g = u.gcd();
    if g == 1 {
        return Ok((u, 1));
    }
    match mode {
        ParseMode::Strict => Err(parse_error(location, format!("non-primitive ray {u}"))),
        ParseMode::Lenient => {
            let p = primitive_part(v)?;
            warnings.push(format!("{location}: {u} replaced by {p}"));
            Ok((p, g))
        }
    }
}

pub fn parse_fan(text: &str) -> Result<Fan> {
    parse_fan_with(text, ParseMode::Strict).map(|(f, _)| f)
}

/// Parses a fan file, returning the fan and any warnings raised in lenient mode.
pub fn parse_fan_with(text: &str, mode: ParseMode) -> Result<(Fan, Vec<String>)> {
    let file: FanFile = from_json(text)?;
    let mut warnings = Vec::new();
    let rays = file
        .rays
        .iter()
        .enumerate()
        .map(|(i, v)| lattice_field(v, file.rank, format!("rays[{i}]"), mode, &mut warnings).map(|(u, _)| u))
        .collect::<Result<Vec<_>>>()?;
    for (k, c) in file.max_cones.iter().enumerate() {
        if let Some(&bad) = c.iter().find(|&&i| i >= rays.len()) {
            return Err(parse_error(format!("max_cones[{k}]"), format!("ray index {bad} out of range")));
        }
    }
    Ok((Fan::new(file.rank, rays, file.max_cones)?, warnings))
}

/// Rays sorted lexicographically, each cone sorted, cones sorted.
pub fn canonical_fan(fan: &Fan) -> Result<Fan> {
    let mut order: Vec<usize> = (0..fan.num_rays()).collect();
    order.sort_by(|&a, &b| fan.ray(a).cmp(fan.ray(b)));
    let mut position = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let rays = order.iter().map(|&i| fan.ray(i).clone()).collect();
    let mut cones: Vec<Vec<usize>> = fan
        .max_cones()
        .iter()
        .map(|c| {
            let mut c: Vec<usize> = c.iter().map(|&i| position[i]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    cones.sort();
    Fan::new(fan.rank(), rays, cones)
}

fn int_rows<'a>(rows: impl Iterator<Item = &'a [i64]>) -> String {
    let items: Vec<String> = rows
        .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", items.join(", "))
}

/// Emits the canonical form of `fan`.
pub fn emit_fan(fan: &Fan) -> Result<String> {
    let c = canonical_fan(fan)?;
    let cones: Vec<Vec<i64>> = c.max_cones().iter().map(|k| k.iter().map(|&i| i as i64).collect()).collect();
    Ok(format!(
        "{{\n  \"rank\": {},\n  \"rays\": {},\n  \"max_cones\": {}\n}}\n",
        c.rank(),
        int_rows(c.rays().iter().map(LatticeVector::as_slice)),
        int_rows(cones.iter().map(Vec::as_slice)),
    ))
}

pub fn parse_polytope(text: &str) -> Result<FacetPresentation> {
    parse_polytope_with(text, ParseMode::Strict).map(|(p, _)| p)
}

/// Parses a polytope file; in lenient mode a normal `g v` becomes `v` with its constant divided by `g`.
pub fn parse_polytope_with(text: &str, mode: ParseMode) -> Result<(FacetPresentation, Vec<String>)> {
    let file: PolytopeFile = from_json(text)?;
    if file.normals.len() != file.constants.len() {
        return Err(parse_error(
            "constants",
            format!("{} normals but {} constants", file.normals.len(), file.constants.len()),
        ));
    }
    let mut warnings = Vec::new();
    let mut normals = Vec::new();
    let mut constants = Vec::new();
    for (i, (v, a)) in file.normals.iter().zip(&file.constants).enumerate() {
        let (u, g) = lattice_field(v, file.dim, format!("normals[{i}]"), mode, &mut warnings)?;
        let a = match a {
            RationalField::Integer(k) => Rational::from_integer((*k).into()),
            RationalField::Text(s) => parse_rational(s)
                .map_err(|_| parse_error(format!("constants[{i}]"), format!("`{s}` is not a rational p/q")))?,
        };
        normals.push(u);
        constants.push(a / Rational::from_integer(g.into()));
    }
    Ok((FacetPresentation::new(file.dim, normals, constants)?, warnings))
}

/// Emits a polytope in its given facet order, constants as lowest-terms `"p/q"` strings.
pub fn emit_polytope(p: &FacetPresentation) -> String {
    let constants: Vec<String> = p.constants().iter().map(|a| format!("\"{a}\"")).collect();
    format!(
        "{{\n  \"dim\": {},\n  \"normals\": {},\n  \"constants\": [{}]\n}}\n",
        p.dim(),
        int_rows(p.normals().iter().map(LatticeVector::as_slice)),
        constants.join(", "),
    )
}
