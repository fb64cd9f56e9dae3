use std::collections::BTreeMap;

use num::{Signed, Zero};

use super::Fan;
use crate::error::{Error, Result};
use crate::ratlin::{Rational, RationalMatrix};

/// An interior codimension-one cone of a simplicial fan and its wall relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    /// The `n - 1` rays spanning the wall, sorted.
    pub rays: Vec<usize>,
    /// Indices of the two maximal cones meeting along the wall.
    pub cones: (usize, usize),
    /// The ray of each adjacent cone that is not on the wall.
    pub opposite: (usize, usize),
    /// Coefficients `r_i` of the relation `sum r_i v_i = 0`, indexed by ray.
    /// Both opposite rays carry coefficient 1 after normalisation.
    pub relation: Vec<Rational>,
}

impl Wall {
    /// Rays carrying a negative relation coefficient.
    pub fn negative_rays(&self) -> Vec<usize> {
        self.rays.iter().copied().filter(|&i| self.relation[i].is_negative()).collect()
    }

    /// Rays carrying a positive relation coefficient, opposite rays included.
    pub fn positive_rays(&self) -> Vec<usize> {
        (0..self.relation.len()).filter(|&i| self.relation[i].is_positive()).collect()
    }
}

/// Interior walls of a simplicial fan, sorted by their ray sets.
pub fn walls(fan: &Fan) -> Result<Vec<Wall>> {
    if !fan.is_simplicial() {
        return Err(Error::Unsupported("walls require a simplicial fan".into()));
    }
    let n = fan.rank();
    let mut shared: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, c) in fan.max_cones().iter().enumerate() {
        if c.len() != n {
            continue;
        }
        for skip in 0..n {
            let face: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &r)| r).collect();
            shared.entry(face).or_default().push((ci, c[skip]));
        }
    }
    let mut out = Vec::new();
    for (face, sides) in shared {
        if sides.len() != 2 {
            continue;
        }
        let (a, b) = (sides[0], sides[1]);
        let mut members = face.clone();
        members.push(a.1);
        members.push(b.1);
        // columns are the n + 1 rays; the kernel is one-dimensional
        let m = RationalMatrix::from_lattice_columns(&fan.cone_rays(&members), n);
        let k = m.kernel();
        if k.len() != 1 {
            return Err(Error::Degenerate(format!("wall {face:?} has no unique relation")));
        }
        let mut rel = k.into_iter().next().unwrap();
        let scale = rel[n].clone();
        if scale.is_zero() {
            return Err(Error::Degenerate(format!("wall {face:?} has collinear opposite rays")));
        }
        for x in &mut rel {
            *x /= scale.clone();
        }
        let mut relation = vec![Rational::zero(); fan.num_rays()];
        for (idx, coef) in members.iter().zip(rel) {
            relation[*idx] = coef;
        }
        out.push(Wall { rays: face, cones: (a.0, b.0), opposite: (a.1, b.1), relation });
    }
    Ok(out)
}

/// `(alpha, beta)`: the numbers of wall rays with negative and with nonpositive coefficient.
pub fn wall_classification(wall: &Wall) -> (usize, usize) {
    let alpha = wall.rays.iter().filter(|&&i| wall.relation[i].is_negative()).count();
    let beta = wall.rays.iter().filter(|&&i| !wall.relation[i].is_positive()).count();
    (alpha, beta)
}
