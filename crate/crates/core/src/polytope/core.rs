use num::{One, Signed};

use super::{adjoint_of_presentation, convex_hull, vertices, FacetPresentation};
use crate::error::{Error, Result};
use crate::ratlin::{
    lattice_quotient, primitive_from_rationals, solve_linear, LatticeQuotient, LatticeVector, Rational, RationalMatrix,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thresholds {
    pub nef: Rational,
    pub effective: Rational,
}

/// Nef and effective thresholds of a simple full-dimensional polytope.
///
/// The nef threshold follows each vertex along its path under `s -> P^(s)`
/// until it meets an inequality that was slack.
pub fn thresholds(p: &FacetPresentation) -> Result<Thresholds> {
    if !p.is_irredundant() {
        return Err(Error::Precondition("thresholds need an irredundant presentation".into()));
    }
    let (effective, _) = p.effective_threshold()?;
    if !effective.is_positive() {
        return Err(Error::Degenerate("thresholds need a full-dimensional polytope".into()));
    }
    let vs = vertices(p)?;
    if vs.incidence.iter().any(|t| t.len() != p.dim()) {
        return Err(Error::Unsupported("nef threshold of a non-simple polytope".into()));
    }
    let mut nef: Option<Rational> = None;
    for (x, tight) in vs.vertices.iter().zip(&vs.incidence) {
        let velocity = vertex_velocity(p, tight)?;
        for j in (0..p.len()).filter(|j| !tight.contains(j)) {
            let rate = Rational::one() - p.normals()[j].pair(&velocity);
            if rate.is_positive() {
                let slack = p.normals()[j].pair(x) + &p.constants()[j];
                let hit = slack / rate;
                if nef.as_ref().is_none_or(|m| hit < *m) {
                    nef = Some(hit);
                }
            }
        }
    }
    let nef = nef.unwrap_or_else(|| effective.clone());
    Ok(Thresholds { nef, effective })
}

/// `w` with `<v_i, w> = 1` on the tight set: the direction a vertex moves per unit of `s`.
fn vertex_velocity(p: &FacetPresentation, tight: &[usize]) -> Result<Vec<Rational>> {
    let rows: Vec<LatticeVector> = tight.iter().map(|&i| p.normals()[i].clone()).collect();
    let m = RationalMatrix::from_lattice_rows(&rows, p.dim());
    solve_linear(&m, &vec![Rational::one(); tight.len()])?
        .ok_or_else(|| Error::Degenerate("vertex normals are dependent".into()))
}

/// The core `P^(sigma)` and the image `Q` of `P` in `R^n / K(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreProjection {
    pub sigma: Rational,
    pub core: FacetPresentation,
    pub core_vertices: Vec<Vec<Rational>>,
    /// Saturated lattice basis of the linear space parallel to the core.
    pub direction: Vec<LatticeVector>,
    pub projection: LatticeQuotient,
    pub q: FacetPresentation,
}

impl CoreProjection {
    pub fn core_dim(&self) -> usize {
        self.direction.len()
    }

    pub fn project(&self, x: &[Rational]) -> Vec<Rational> {
        self.projection.projection.iter().map(|row| row.pair(x)).collect()
    }
}

pub fn core_and_projection(p: &FacetPresentation) -> Result<CoreProjection> {
    if !p.is_irredundant() {
        return Err(Error::Precondition("the core needs an irredundant presentation".into()));
    }
    let n = p.dim();
    let (sigma, _) = p.effective_threshold()?;
    let core = adjoint_of_presentation(p, &sigma)?;
    let core_vertices = vertices(&core)?.vertices;
    let diffs: Vec<LatticeVector> = core_vertices[1..]
        .iter()
        .map(|x| {
            let d: Vec<Rational> = x.iter().zip(&core_vertices[0]).map(|(a, b)| a - b).collect();
            primitive_from_rationals(&d)
        })
        .collect::<Result<_>>()?;
    let projection = lattice_quotient(&diffs, n)?;
    let direction = projection.sublattice_basis.clone();
    let image: Vec<Vec<Rational>> = vertices(p)?
        .vertices
        .iter()
        .map(|x| projection.projection.iter().map(|row| row.pair(x)).collect())
        .collect();
    let q = convex_hull(&image, projection.quotient_rank())?;
    Ok(CoreProjection { sigma, core, core_vertices, direction, projection, q })
}
