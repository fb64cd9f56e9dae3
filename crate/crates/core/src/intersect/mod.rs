//! Intersection numbers on complete simplicial toric varieties.
//!
//! Products `D . V(sigma)` are computed by first moving `D` off `V(sigma)`
//! with a rational character, then reading off the coefficients `a_i / s_i`
//! on the cones one dimension up.

mod positivity;

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{arg, Error, Result};
use crate::fan::Fan;
use crate::ratlin::{int, lattice_quotient, solve_linear, LatticeVector, Rational, RationalMatrix};

pub use positivity::{
    ch2_dot_surface, is_2fano, is_fano, nef_threshold_intersection, FanoVerdict, FanoWitness, SurfaceValue,
    TwoFanoVerdict,
};

/// `sum a_i D_i`, one coefficient per ray.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusDivisor(pub Vec<Rational>);

impl TorusDivisor {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        TorusDivisor(coefficients)
    }

    pub fn from_integers(c: &[i64]) -> Self {
        TorusDivisor(c.iter().map(|&x| int(x)).collect())
    }

    pub fn prime(num_rays: usize, i: usize) -> Self {
        let mut c = vec![Rational::zero(); num_rays];
        c[i] = Rational::one();
        TorusDivisor(c)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        TorusDivisor(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        TorusDivisor(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        TorusDivisor(self.0.iter().map(|a| a * s).collect())
    }

    fn check(&self, fan: &Fan) -> Result<()> {
        if self.0.len() != fan.num_rays() {
            return Err(Error::Dimension { expected: fan.num_rays(), found: self.0.len() });
        }
        Ok(())
    }
}

/// A cycle `sum b_gamma V(gamma)` over cones with the same number of rays.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cycle {
    /// Number of rays of each cone in the support.
    pub codim: usize,
    pub terms: BTreeMap<Vec<usize>, Rational>,
}

impl Cycle {
    pub fn of_cone(cone: &[usize]) -> Self {
        let mut c = cone.to_vec();
        c.sort_unstable();
        Cycle { codim: c.len(), terms: BTreeMap::from([(c, Rational::one())]) }
    }

    /// Sum of coefficients; the degree when the cycle is a sum of points.
    pub fn degree(&self) -> Rational {
        self.terms.values().sum()
    }

    fn add_term(&mut self, cone: Vec<usize>, b: Rational) {
        let e = self.terms.entry(cone.clone()).or_insert_with(Rational::zero);
        *e += b;
        if e.is_zero() {
            self.terms.remove(&cone);
        }
    }
}

/// `div(chi^m)`: coefficient `<m, v_i>` at ray `i`.
pub fn div_char(fan: &Fan, m: &LatticeVector) -> Result<TorusDivisor> {
    div_char_rational(fan, &m.to_rationals())
}

pub fn div_char_rational(fan: &Fan, m: &[Rational]) -> Result<TorusDivisor> {
    if m.len() != fan.rank() {
        return Err(Error::Dimension { expected: fan.rank(), found: m.len() });
    }
    Ok(TorusDivisor(fan.rays().iter().map(|v| v.pair(m)).collect()))
}

/// All-ones divisor `-K`.
pub fn anticanonical(fan: &Fan) -> TorusDivisor {
    TorusDivisor(vec![Rational::one(); fan.num_rays()])
}

/// `u` with `<u, v_j> = a_j` on the rays of `sigma`.
fn local_character(fan: &Fan, d: &TorusDivisor, sigma: &[usize]) -> Result<Vec<Rational>> {
    let m = RationalMatrix::from_lattice_rows(&fan.cone_rays(sigma), fan.rank());
    let rhs: Vec<Rational> = sigma.iter().map(|&j| d.0[j].clone()).collect();
    solve_linear(&m, &rhs)?.ok_or_else(|| Error::Degenerate(format!("rays of {sigma:?} are dependent")))
}

/// A divisor linearly equivalent to `d` with zero coefficients on `sigma`.
pub fn move_off(fan: &Fan, d: &TorusDivisor, sigma: &[usize]) -> Result<TorusDivisor> {
    d.check(fan)?;
    if !fan.is_simplicial() {
        return Err(Error::Unsupported("moving divisors needs a simplicial fan".into()));
    }
    let u = local_character(fan, d, sigma)?;
    Ok(d.sub(&div_char_rational(fan, &u)?))
}

/// `D_i - div(chi^u)` with `<u, v_i> = 1` and `<u, v_j> = 0` on the other rays of `sigma`.
pub fn move_divisor(fan: &Fan, i: usize, sigma: &[usize]) -> Result<(TorusDivisor, Vec<Rational>)> {
    if !sigma.contains(&i) {
        return arg(format!("ray {i} is not in {sigma:?}; no move is needed"));
    }
    if !fan.is_simplicial() {
        return Err(Error::Unsupported("moving divisors needs a simplicial fan".into()));
    }
    let d = TorusDivisor::prime(fan.num_rays(), i);
    let u = local_character(fan, &d, sigma)?;
    Ok((d.sub(&div_char_rational(fan, &u)?), u))
}

/// `D . V(sigma)` as a cycle on the cones containing `sigma` with one more ray.
pub fn intersect_once(fan: &Fan, d: &TorusDivisor, sigma: &[usize]) -> Result<Cycle> {
    d.check(fan)?;
    let mut sigma = sigma.to_vec();
    sigma.sort_unstable();
    if !fan.is_cone(&sigma) {
        return arg(format!("{sigma:?} is not a cone of the fan"));
    }
    let moved = move_off(fan, d, &sigma)?;
    let mut out = Cycle { codim: sigma.len() + 1, terms: BTreeMap::new() };
    let candidates: Vec<usize> = (0..fan.num_rays()).filter(|i| !sigma.contains(i) && !moved.0[*i].is_zero()).collect();
    if candidates.is_empty() {
        return Ok(out);
    }
    let q = lattice_quotient(&fan.cone_rays(&sigma), fan.rank())?;
    for i in candidates {
        let mut gamma = sigma.clone();
        gamma.push(i);
        gamma.sort_unstable();
        if !fan.is_cone(&gamma) {
            continue;
        }
        let s = q.apply(fan.ray(i)).gcd();
        out.add_term(gamma, &moved.0[i] / int(s));
    }
    Ok(out)
}

/// `D . Z` for a cycle `Z`, term by term.
pub fn intersect_cycle(fan: &Fan, d: &TorusDivisor, z: &Cycle) -> Result<Cycle> {
    let mut out = Cycle { codim: z.codim + 1, terms: BTreeMap::new() };
    for (cone, b) in &z.terms {
        for (gamma, c) in intersect_once(fan, d, cone)?.terms {
            out.add_term(gamma, b * c);
        }
    }
    Ok(out)
}

/// `D . V(tau)` for a wall `tau`.
pub fn curve_number(fan: &Fan, d: &TorusDivisor, tau: &[usize]) -> Result<Rational> {
    let n = fan.rank();
    if tau.len() + 1 != n || fan.max_cones_containing(tau).len() != 2 || !fan.max_cones().iter().all(|c| c.len() == n) {
        return arg(format!("{tau:?} is not a wall of the fan"));
    }
    Ok(intersect_once(fan, d, tau)?.degree())
}

/// Whether `d` is Q-Cartier, i.e. linear on every maximal cone.
pub fn is_q_cartier(fan: &Fan, d: &TorusDivisor) -> Result<bool> {
    d.check(fan)?;
    for c in fan.max_cones() {
        let m = RationalMatrix::from_lattice_rows(&fan.cone_rays(c), fan.rank());
        let rhs: Vec<Rational> = c.iter().map(|&j| d.0[j].clone()).collect();
        if solve_linear(&m, &rhs)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ratlin::frac;

    pub(crate) fn fan_of(rays: &[&[i64]], cones: &[&[usize]]) -> Fan {
        let n = rays[0].len();
        Fan::new(n, rays.iter().map(|r| LatticeVector(r.to_vec())).collect(), cones.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    pub(crate) fn p1xp1() -> Fan {
        fan_of(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
    }

    pub(crate) fn hirzebruch(a: i64) -> Fan {
        fan_of(&[&[1, 0], &[0, 1], &[-1, a], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]])
    }

    /// The singular threefold whose rays are u0, u1, u2 over a line.
    pub(crate) fn singular_example() -> Fan {
        let rays: &[&[i64]] = &[&[0, 0, -1], &[0, 1, 2], &[0, -1, 0], &[1, 0, 0], &[-1, 0, 1]];
        let mut cones: Vec<Vec<usize>> = Vec::new();
        for pair in [[0, 1], [0, 2], [1, 2]] {
            for base in [3, 4] {
                cones.push(vec![pair[0], pair[1], base]);
            }
        }
        Fan::new(3, rays.iter().map(|r| LatticeVector(r.to_vec())).collect(), cones).unwrap()
    }

    #[test]
    fn characters() {
        let p2 = Fan::projective_space(2);
        assert_eq!(div_char(&p2, &LatticeVector::from([1, 0])).unwrap(), TorusDivisor::from_integers(&[1, 0, -1]));
        assert_eq!(div_char(&p2, &LatticeVector::zero(2)).unwrap(), TorusDivisor::from_integers(&[0, 0, 0]));
        assert_eq!(
            div_char(&p1xp1(), &LatticeVector::from([2, 3])).unwrap(),
            TorusDivisor::from_integers(&[2, 3, -2, -3])
        );
    }

    #[test]
    fn moves() {
        let (d, u) = move_divisor(&p1xp1(), 0, &[0, 1]).unwrap();
        assert_eq!(u, vec![int(1), int(0)]);
        assert_eq!(d, TorusDivisor::from_integers(&[0, 0, 1, 0]));
        let (d, _) = move_divisor(&Fan::projective_space(2), 0, &[0, 1]).unwrap();
        assert_eq!(d, TorusDivisor::from_integers(&[0, 0, 1]));
        assert!(move_divisor(&p1xp1(), 2, &[0, 1]).is_err());
    }

    #[test]
    fn singular_move_is_consistent_with_the_relation() {
        // D_{u1} + div(chi^{-e2}) = D_{u2} in the class group
        let f = singular_example();
        let (d, u) = move_divisor(&f, 1, &[1, 2]).unwrap();
        assert_eq!(d.0[1], int(0));
        assert_eq!(d.0[2], int(0));
        let diff = d.sub(&TorusDivisor::prime(5, 1));
        assert_eq!(diff, div_char_rational(&f, &u.iter().map(|x| -x).collect::<Vec<_>>()).unwrap());
        let shifted = TorusDivisor::prime(5, 1).add(&div_char(&f, &LatticeVector::from([0, -1, 0])).unwrap());
        assert_eq!(shifted.0[1], int(0));
        assert_eq!(shifted.0[2], int(1));
        assert_eq!(d.0[0], frac(1, 2));
    }

    #[test]
    fn smooth_coefficients_are_one() {
        let p2 = Fan::projective_space(2);
        let c = intersect_once(&p2, &TorusDivisor::prime(3, 0), &[1]).unwrap();
        assert_eq!(c.terms, BTreeMap::from([(vec![0, 1], int(1))]));
    }

    #[test]
    fn quotient_multiplicity() {
        let f = fan_of(&[&[1, 2], &[1, 0], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]);
        let c = intersect_once(&f, &TorusDivisor::prime(3, 1), &[0]).unwrap();
        assert_eq!(c.terms, BTreeMap::from([(vec![0, 1], frac(1, 2))]));
    }

    #[test]
    fn curve_numbers() {
        let p2 = Fan::projective_space(2);
        for w in [[0], [1], [2]] {
            assert_eq!(curve_number(&p2, &anticanonical(&p2), &w).unwrap(), int(3));
        }
        assert_eq!(curve_number(&p1xp1(), &TorusDivisor::prime(4, 0), &[0]).unwrap(), int(0));
        let f1 = hirzebruch(1);
        assert_eq!(curve_number(&f1, &anticanonical(&f1), &[1]).unwrap(), int(1));
        assert!(curve_number(&p2, &anticanonical(&p2), &[0, 1]).is_err());
    }

    #[test]
    fn singular_anticanonical_degree() {
        let f = singular_example();
        assert_eq!(curve_number(&f, &anticanonical(&f), &[1, 2]).unwrap(), int(1));
    }

    #[test]
    fn principal_divisors_are_trivial() {
        for f in [hirzebruch(3), singular_example(), Fan::projective_space(3)] {
            for k in 0..f.rank() {
                let d = div_char(&f, &LatticeVector::unit(f.rank(), k)).unwrap();
                for w in crate::fan::walls(&f).unwrap() {
                    assert!(curve_number(&f, &d, &w.rays).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn q_cartier() {
        let f = singular_example();
        assert!(is_q_cartier(&f, &anticanonical(&f)).unwrap());
    }
}
