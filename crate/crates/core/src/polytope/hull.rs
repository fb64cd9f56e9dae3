use itertools::Itertools;
use num::{Signed, Zero};

use super::FacetPresentation;
use crate::error::{Error, Result};
use crate::ratlin::{dot, primitive_from_rationals, Rational, RationalMatrix};

/// Facet presentation of the convex hull of points spanning `R^d` affinely.
///
/// Facets are found by brute force over `d`-subsets, which is plenty for the
/// small polytopes met here.
pub fn convex_hull(points: &[Vec<Rational>], d: usize) -> Result<FacetPresentation> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::Argument("point dimension differs from the ambient dimension".into()));
    }
    if d == 0 {
        return FacetPresentation::new(0, vec![], vec![]);
    }
    let diffs: Vec<Vec<Rational>> =
        points.iter().map(|p| p.iter().zip(&points[0]).map(|(x, y)| x - y).collect()).collect();
    if RationalMatrix::from_rows(diffs)?.rank() < d {
        return Err(Error::Degenerate("points do not span the ambient space".into()));
    }
    let mut normals = Vec::new();
    let mut constants = Vec::new();
    for s in (0..points.len()).combinations(d) {
        // (u, c) with <u, p> = c on the subset
        let rows: Vec<Vec<Rational>> = s
            .iter()
            .map(|&i| points[i].iter().cloned().chain(std::iter::once(-Rational::from_integer(1.into()))).collect())
            .collect();
        let k = RationalMatrix::from_rows(rows)?.kernel();
        if k.len() != 1 {
            continue;
        }
        let uc = &k[0];
        let (u, c) = (&uc[..d], uc[d].clone());
        if u.iter().all(Zero::is_zero) {
            continue;
        }
        let side: Vec<Rational> = points.iter().map(|p| dot(u, p) - &c).collect();
        let flip = if side.iter().all(|x| !x.is_negative()) {
            false
        } else if side.iter().all(|x| !x.is_positive()) {
            true
        } else {
            continue;
        };
        let oriented: Vec<Rational> = u.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        let v = primitive_from_rationals(&oriented)?;
        // the factor taking the oriented normal to its primitive form
        let idx = oriented.iter().position(|x| !x.is_zero()).unwrap();
        let scale = Rational::from_integer(v[idx].into()) / &oriented[idx];
        let c = if flip { -c } else { c };
        let a = -(c * scale);
        if !normals.contains(&v) {
            normals.push(v);
            constants.push(a);
        }
    }
    FacetPresentation::new(d, normals, constants)
}
