use num::Signed;

use super::Fan;
use crate::error::{arg, Error, Result};
use crate::ratlin::{lattice_quotient, primitive_part, LatticeVector};

/// Star subdivision of a simplicial fan at a primitive vector in its support.
///
/// The new ray is appended after the existing ones. Subdividing at an
/// existing ray returns the fan unchanged.
pub fn star_subdivision(fan: &Fan, v: &LatticeVector) -> Result<Fan> {
    if v.dim() != fan.rank() {
        return Err(Error::Dimension { expected: fan.rank(), found: v.dim() });
    }
    if v.is_zero() || !v.is_primitive() {
        return arg(format!("{v} is not a primitive nonzero vector"));
    }
    if !fan.is_simplicial() {
        return Err(Error::Unsupported("star subdivision of a non-simplicial fan".into()));
    }
    if fan.rays().contains(v) {
        return Ok(fan.clone());
    }
    let x = v.to_rationals();
    let new = fan.num_rays();
    let mut cones = Vec::new();
    let mut hit = false;
    for c in fan.max_cones() {
        match fan.cone_coefficients(c, &x)? {
            None => cones.push(c.clone()),
            Some(coef) => {
                hit = true;
                for (k, lam) in coef.iter().enumerate() {
                    if lam.is_positive() {
                        let mut d: Vec<usize> = c.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &r)| r).collect();
                        d.push(new);
                        cones.push(d);
                    }
                }
            }
        }
    }
    if !hit {
        return arg(format!("{v} is outside the support of the fan"));
    }
    let mut rays = fan.rays().to_vec();
    rays.push(v.clone());
    Fan::new(fan.rank(), rays, cones)
}

/// Star fan of a cone `sigma` in `N / span(sigma)`.
///
/// Returns the quotient fan and, for each of its rays, the original ray index it came from
/// (the first one, when several rays map to the same primitive image).
pub fn star_quotient(fan: &Fan, sigma: &[usize]) -> Result<(Fan, Vec<usize>)> {
    let mut sigma = sigma.to_vec();
    sigma.sort_unstable();
    sigma.dedup();
    if !fan.is_cone(&sigma) {
        return arg(format!("{sigma:?} is not a cone of the fan"));
    }
    let q = lattice_quotient(&fan.cone_rays(&sigma), fan.rank())?;
    let mut rays: Vec<LatticeVector> = Vec::new();
    let mut origin = Vec::new();
    let mut cones = Vec::new();
    for ci in fan.max_cones_containing(&sigma) {
        let mut cone = Vec::new();
        for &r in fan.max_cones()[ci].iter().filter(|r| !sigma.contains(r)) {
            let image = primitive_part(&q.apply(fan.ray(r)).0)?;
            let idx = match rays.iter().position(|x| *x == image) {
                Some(i) => i,
                None => {
                    rays.push(image);
                    origin.push(r);
                    rays.len() - 1
                }
            };
            cone.push(idx);
        }
        cones.push(cone);
    }
    Ok((Fan::new(q.quotient_rank(), rays, cones)?, origin))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blow_up_of_the_plane() {
        let f = Fan::projective_space(2);
        let g = star_subdivision(&f, &LatticeVector::from([1, 1])).unwrap();
        assert_eq!(g.num_rays(), 4);
        assert_eq!(g.max_cones().len(), 4);
        assert!(g.is_smooth() && g.is_complete());
    }

    #[test]
    fn existing_ray_is_a_no_op() {
        let f = Fan::projective_space(2);
        assert_eq!(star_subdivision(&f, &LatticeVector::from([1, 0])).unwrap(), f);
    }

    #[test]
    fn interior_point_of_a_three_cone() {
        let f = Fan::projective_space(3);
        let g = star_subdivision(&f, &LatticeVector::from([1, 1, 1])).unwrap();
        assert_eq!(g.max_cones().len(), 6);
        assert!(g.is_smooth() && g.is_complete());
    }

    #[test]
    fn point_on_a_two_face_splits_two_cones() {
        let f = Fan::projective_space(3);
        let g = star_subdivision(&f, &LatticeVector::from([1, 1, 0])).unwrap();
        assert_eq!(g.max_cones().len(), 6);
        assert!(g.is_complete());
    }

    #[test]
    fn quotient_of_the_plane_by_a_ray_is_a_line() {
        let f = Fan::projective_space(2);
        let (q, origin) = star_quotient(&f, &[0]).unwrap();
        assert_eq!(q.rank(), 1);
        assert_eq!(q.num_rays(), 2);
        assert!(q.is_complete());
        assert_eq!(origin.len(), 2);
    }

    #[test]
    fn quotient_by_a_maximal_cone_is_a_point() {
        let f = Fan::projective_space(3);
        let (q, origin) = star_quotient(&f, &[0, 1, 2]).unwrap();
        assert_eq!(q.rank(), 0);
        assert!(origin.is_empty());
        assert!(q.is_complete());
    }

    #[test]
    fn quotient_rejects_non_cones() {
        let f = Fan::projective_space(2);
        assert!(star_quotient(&f, &[0, 1, 2]).is_err());
    }
}
