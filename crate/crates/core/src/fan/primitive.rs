use std::collections::HashSet;

use itertools::Itertools;
use num::{Signed, Zero};

use super::Fan;
use crate::error::{Error, Result};
use crate::ratlin::{int, lattice_rank, solve_linear, LatticeVector, Rational, RationalMatrix};

/// A minimal non-face `P` with its primitive relation
/// `sum_{p in P} v_p = sum_{s in sigma} c_s v_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveCollection {
    pub members: Vec<usize>,
    /// Rays of the smallest cone containing the sum, sorted.
    pub sigma: Vec<usize>,
    /// Positive coefficients aligned with `sigma`.
    pub coefficients: Vec<Rational>,
    /// `|P| - sum c_s`.
    pub degree: Rational,
}

/// Every primitive collection of a complete simplicial fan, sorted by members.
pub fn primitive_collections(fan: &Fan) -> Result<Vec<PrimitiveCollection>> {
    if !fan.is_simplicial() || !fan.is_complete() {
        return Err(Error::Precondition("primitive collections need a complete simplicial fan".into()));
    }
    let faces: HashSet<Vec<usize>> =
        fan.max_cones().iter().flat_map(|c| c.iter().copied().powerset()).collect();
    let mut found = Vec::new();
    let mut layer: Vec<Vec<usize>> = (0..fan.num_rays()).map(|i| vec![i]).collect();
    for _ in 2..=fan.rank() + 1 {
        let mut next = Vec::new();
        for f in &layer {
            for r in f.last().unwrap() + 1..fan.num_rays() {
                let mut s = f.clone();
                s.push(r);
                let minimal_nonface = !faces.contains(&s)
                    && (0..s.len()).all(|k| {
                        let sub: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect();
                        faces.contains(&sub)
                    });
                if minimal_nonface {
                    found.push(s);
                } else if faces.contains(&s) {
                    next.push(s);
                }
            }
        }
        layer = next;
    }
    found.sort();
    found.into_iter().map(|members| describe(fan, members)).collect()
}

fn describe(fan: &Fan, members: Vec<usize>) -> Result<PrimitiveCollection> {
    let n = fan.rank();
    let sum: Vec<Rational> = (0..n).map(|k| members.iter().map(|&i| int(fan.ray(i)[k])).sum()).collect();
    let size = int(members.len() as i64);
    if sum.iter().all(Zero::is_zero) {
        return Ok(PrimitiveCollection { members, sigma: vec![], coefficients: vec![], degree: size });
    }
    let (ci, coef) = fan
        .locate(&sum)?
        .ok_or_else(|| Error::Degenerate(format!("sum of {members:?} lies outside the fan")))?;
    let cone = &fan.max_cones()[ci];
    let mut sigma = Vec::new();
    let mut coefficients = Vec::new();
    for (&r, c) in cone.iter().zip(coef) {
        if c.is_positive() {
            sigma.push(r);
            coefficients.push(c);
        }
    }
    let total: Rational = coefficients.iter().sum();
    Ok(PrimitiveCollection { members, sigma, coefficients, degree: size - total })
}

/// Rebuilds a complete simplicial fan from its rays and primitive collections.
///
/// The maximal cones are the `n`-subsets of independent rays containing no
/// collection. With no collections given, the face fan of the convex hull of
/// the rays is returned instead.
pub fn fan_from_primitive_data(rays: Vec<LatticeVector>, collections: &[Vec<usize>]) -> Result<Fan> {
    let n = rays.first().map(LatticeVector::dim).ok_or_else(|| Error::Reconstruction("no rays".into()))?;
    if let Some(bad) = collections.iter().flatten().find(|&&i| i >= rays.len()) {
        return Err(Error::Reconstruction(format!("collection refers to ray {bad}")));
    }
    if collections.is_empty() {
        return face_fan(rays);
    }
    let cones: Vec<Vec<usize>> = (0..rays.len())
        .combinations(n)
        .filter(|s| !collections.iter().any(|p| p.iter().all(|i| s.contains(i))))
        .filter(|s| lattice_rank(&s.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>(), n) == n)
        .collect();
    if cones.is_empty() {
        return Err(Error::Reconstruction("every n-subset contains a primitive collection".into()));
    }
    let fan = Fan::new(n, rays, cones).map_err(|e| Error::Reconstruction(e.to_string()))?;
    if !fan.is_complete() || !fan.is_simplicial() {
        return Err(Error::Reconstruction("the resulting fan is not complete and simplicial".into()));
    }
    Ok(fan)
}

/// Fan over the facets of `conv(rays)`, for rays in convex position around the origin.
fn face_fan(rays: Vec<LatticeVector>) -> Result<Fan> {
    let n = rays[0].dim();
    let mut cones: Vec<Vec<usize>> = Vec::new();
    for s in (0..rays.len()).combinations(n) {
        let m = RationalMatrix::from_lattice_rows(&s.iter().map(|&i| rays[i].clone()).collect::<Vec<_>>(), n);
        let Some(u) = solve_linear(&m, &vec![int(1); n])? else { continue };
        if m.rank() < n {
            continue;
        }
        let values: Vec<Rational> = rays.iter().map(|r| r.pair(&u)).collect();
        if values.iter().any(|v| *v > int(1)) {
            continue;
        }
        let facet: Vec<usize> = (0..rays.len()).filter(|&i| values[i] == int(1)).collect();
        if !cones.contains(&facet) {
            cones.push(facet);
        }
    }
    let fan = Fan::new(n, rays, cones).map_err(|e| Error::Reconstruction(e.to_string()))?;
    if !fan.is_complete() || !fan.is_simplicial() {
        return Err(Error::Reconstruction("face fan of the rays is not complete and simplicial".into()));
    }
    Ok(fan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_plane_has_one_collection() {
        let pcs = primitive_collections(&Fan::projective_space(2)).unwrap();
        assert_eq!(pcs.len(), 1);
        assert_eq!(pcs[0].members, vec![0, 1, 2]);
        assert!(pcs[0].sigma.is_empty());
        assert_eq!(pcs[0].degree, int(3));
    }

    #[test]
    fn product_of_lines_has_two() {
        let p1 = Fan::projective_space(1);
        let pcs = primitive_collections(&Fan::product(&p1, &p1)).unwrap();
        let members: Vec<_> = pcs.iter().map(|p| p.members.clone()).collect();
        assert_eq!(members, vec![vec![0, 1], vec![2, 3]]);
        assert!(pcs.iter().all(|p| p.degree == int(2)));
    }

    #[test]
    fn hirzebruch_relation_has_a_cone() {
        let rays = vec![
            LatticeVector::from([1, 0]),
            LatticeVector::from([0, 1]),
            LatticeVector::from([-1, 1]),
            LatticeVector::from([0, -1]),
        ];
        let f = Fan::new(2, rays, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        let pcs = primitive_collections(&f).unwrap();
        let p = pcs.iter().find(|p| p.members == vec![0, 2]).unwrap();
        assert_eq!(p.sigma, vec![1]);
        assert_eq!(p.degree, int(1));
    }

    #[test]
    fn reconstruction_round_trip() {
        let p1 = Fan::projective_space(1);
        let f = Fan::product(&Fan::projective_space(2), &p1);
        let pcs: Vec<Vec<usize>> = primitive_collections(&f).unwrap().into_iter().map(|p| p.members).collect();
        let g = fan_from_primitive_data(f.rays().to_vec(), &pcs).unwrap();
        assert_eq!(f, g);
        let h = fan_from_primitive_data(f.rays().to_vec(), &[]).unwrap();
        assert_eq!(f, h);
    }

    #[test]
    fn bad_collections_fail() {
        let rays = Fan::projective_space(2).rays().to_vec();
        assert!(matches!(fan_from_primitive_data(rays, &[vec![0, 1]]), Err(Error::Reconstruction(_))));
    }
}
