//! Rational polytopes `P = {x : <v_i, x> >= -a_i}` given by facet presentations.

mod cayley;
mod core;
mod hull;

use itertools::Itertools;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::intersect::TorusDivisor;
use crate::ratlin::{solve_linear, LatticeVector, LinearProgram, LpOutcome, Rational, RationalMatrix, Relation};

pub use self::cayley::{cayley_mori_build, cayley_mori_detect, is_cayley_s, CayleyMoriDecomposition};
pub use self::core::{core_and_projection, thresholds, CoreProjection, Thresholds};
pub use self::hull::convex_hull;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetPresentation {
    dim: usize,
    normals: Vec<LatticeVector>,
    constants: Vec<Rational>,
    irredundant: bool,
}

/// Vertices with the indices of the inequalities tight at each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    pub vertices: Vec<Vec<Rational>>,
    pub incidence: Vec<Vec<usize>>,
}

impl FacetPresentation {
    /// Checks normals and records whether the presentation is irredundant.
    pub fn new(dim: usize, normals: Vec<LatticeVector>, constants: Vec<Rational>) -> Result<Self> {
        if normals.len() != constants.len() {
            return Err(Error::Argument(format!("{} normals but {} constants", normals.len(), constants.len())));
        }
        for (i, v) in normals.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::Dimension { expected: dim, found: v.dim() });
            }
            if !v.is_primitive() {
                return Err(Error::Argument(format!("normal {i} = {v} is not primitive")));
            }
        }
        if let Some((i, j)) = (0..normals.len()).tuple_combinations().find(|&(i, j)| normals[i] == normals[j]) {
            return Err(Error::Argument(format!("normals {i} and {j} coincide")));
        }
        let mut p = FacetPresentation { dim, normals, constants, irredundant: false };
        p.irredundant = p.is_nonempty()? && (0..p.normals.len()).map(|i| p.needed(i, None)).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b);
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[LatticeVector] {
        &self.normals
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    /// True when there are no facet inequalities, not when the polytope is empty.
    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn is_irredundant(&self) -> bool {
        self.irredundant
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.normals.iter().zip(&self.constants).all(|(v, a)| v.pair(x) >= -a.clone())
    }

    /// `P + m`.
    pub fn translate(&self, m: &[Rational]) -> Result<Self> {
        let constants = self.normals.iter().zip(&self.constants).map(|(v, a)| a - v.pair(m)).collect();
        FacetPresentation::new(self.dim, self.normals.clone(), constants)
    }

    /// LP with variables `x` and the constraints of `P^(shift)`, optionally skipping one inequality.
    fn program(&self, shift: &Rational, skip: Option<usize>) -> Result<LinearProgram> {
        let mut lp = LinearProgram::new(self.dim);
        for (i, (v, a)) in self.normals.iter().zip(&self.constants).enumerate() {
            if Some(i) != skip {
                lp.constrain(v.to_rationals(), Relation::Ge, shift - a)?;
            }
        }
        Ok(lp)
    }

    pub fn is_nonempty(&self) -> Result<bool> {
        Ok(self.program(&Rational::zero(), None)?.feasible_point()?.is_some())
    }

    /// Whether dropping inequality `i` (from the subset `among`, all by default) enlarges the set.
    fn needed(&self, i: usize, among: Option<&[bool]>) -> Result<bool> {
        let mut lp = LinearProgram::new(self.dim);
        for (j, (v, a)) in self.normals.iter().zip(&self.constants).enumerate() {
            if j != i && among.is_none_or(|m| m[j]) {
                lp.constrain(v.to_rationals(), Relation::Ge, -a.clone())?;
            }
        }
        let neg: Vec<Rational> = self.normals[i].to_rationals().into_iter().map(|x| -x).collect();
        Ok(match lp.maximize(&neg)? {
            LpOutcome::Unbounded => true,
            LpOutcome::Infeasible => false,
            LpOutcome::Optimal { value, .. } => -value < -self.constants[i].clone(),
        })
    }

    fn bounded(&self) -> Result<bool> {
        let lp = self.program(&Rational::zero(), None)?;
        for k in 0..self.dim {
            for s in [1, -1] {
                let mut c = vec![Rational::zero(); self.dim];
                c[k] = Rational::from_integer(s.into());
                if matches!(lp.maximize(&c)?, LpOutcome::Unbounded) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Largest `s` with `P^(s)` nonempty, with an optimal point.
    pub fn effective_threshold(&self) -> Result<(Rational, Vec<Rational>)> {
        let mut lp = LinearProgram::new(self.dim + 1);
        for (v, a) in self.normals.iter().zip(&self.constants) {
            let mut row = v.to_rationals();
            row.push(-Rational::one());
            lp.constrain(row, Relation::Ge, -a.clone())?;
        }
        let mut obj = vec![Rational::zero(); self.dim + 1];
        obj[self.dim] = Rational::one();
        match lp.maximize(&obj)? {
            LpOutcome::Optimal { mut x, value } => {
                x.pop();
                Ok((value, x))
            }
            LpOutcome::Unbounded => Err(Error::Unbounded),
            LpOutcome::Infeasible => Err(Error::Empty),
        }
    }

    pub fn is_full_dimensional(&self) -> Result<bool> {
        if self.normals.is_empty() {
            return Ok(true);
        }
        Ok(self.effective_threshold()?.0.is_positive())
    }

    /// Whether every vertex lies on exactly `dim` facets.
    pub fn is_simple(&self) -> Result<bool> {
        Ok(vertices(self)?.incidence.iter().all(|t| t.len() == self.dim))
    }

    /// Equality as point sets, decided on vertices.
    pub fn same_polytope(&self, other: &Self) -> Result<bool> {
        Ok(self.dim == other.dim && vertices(self)?.vertices == vertices(other)?.vertices)
    }
}

/// All vertices, sorted lexicographically.
pub fn vertices(p: &FacetPresentation) -> Result<VertexSet> {
    if !p.is_nonempty()? {
        return Err(Error::Empty);
    }
    if !p.bounded()? {
        return Err(Error::Unbounded);
    }
    let n = p.dim;
    if n == 0 {
        return Ok(VertexSet { vertices: vec![vec![]], incidence: vec![(0..p.len()).collect()] });
    }
    let mut found: Vec<Vec<Rational>> = Vec::new();
    for s in (0..p.len()).combinations(n) {
        let m = RationalMatrix::from_lattice_rows(&s.iter().map(|&i| p.normals[i].clone()).collect::<Vec<_>>(), n);
        if m.rank() < n {
            continue;
        }
        let rhs: Vec<Rational> = s.iter().map(|&i| -p.constants[i].clone()).collect();
        let Some(x) = solve_linear(&m, &rhs)? else { continue };
        if p.contains(&x) && !found.contains(&x) {
            found.push(x);
        }
    }
    found.sort();
    let incidence = found
        .iter()
        .map(|x| (0..p.len()).filter(|&i| p.normals[i].pair(x) == -p.constants[i].clone()).collect())
        .collect();
    Ok(VertexSet { vertices: found, incidence })
}

/// Normal fan of a full-dimensional irredundant polytope; rays are the facet normals in order.
pub fn normal_fan(p: &FacetPresentation) -> Result<Fan> {
    if !p.is_full_dimensional()? {
        return Err(Error::Degenerate("normal fan of a lower-dimensional polytope".into()));
    }
    if !p.irredundant {
        return Err(Error::Precondition("normal fan needs an irredundant presentation".into()));
    }
    let vs = vertices(p)?;
    Fan::new(p.dim, p.normals.clone(), vs.incidence)
}

/// `P_D = {m : <m, v_i> >= -a_i}` with the rays of the fan as normals.
pub fn polytope_of_divisor(fan: &Fan, d: &TorusDivisor) -> Result<FacetPresentation> {
    if d.coefficients().len() != fan.num_rays() {
        return Err(Error::Dimension { expected: fan.num_rays(), found: d.coefficients().len() });
    }
    FacetPresentation::new(fan.rank(), fan.rays().to_vec(), d.coefficients().to_vec())
}

/// Adjoint polytope `P^(s)`; the presentation must be irredundant.
pub fn adjoint(p: &FacetPresentation, s: &Rational) -> Result<FacetPresentation> {
    if !p.irredundant {
        return Err(Error::Precondition("adjoint polytopes need an irredundant presentation".into()));
    }
    adjoint_of_presentation(p, s)
}

/// Adjoint of the inequality system as given, redundant inequalities included.
pub fn adjoint_of_presentation(p: &FacetPresentation, s: &Rational) -> Result<FacetPresentation> {
    if s.is_negative() {
        return Err(Error::Argument(format!("adjoint parameter {s} is negative")));
    }
    FacetPresentation::new(p.dim, p.normals.clone(), p.constants.iter().map(|a| a - s).collect())
}

/// Drops inequalities one at a time until the presentation is irredundant.
pub fn remove_redundant(p: &FacetPresentation) -> Result<(FacetPresentation, Vec<usize>)> {
    if !p.is_nonempty()? {
        return Err(Error::Empty);
    }
    if !p.is_full_dimensional()? {
        return Err(Error::Degenerate("redundancy removal needs a full-dimensional polytope".into()));
    }
    let mut keep = vec![true; p.len()];
    let mut removed = Vec::new();
    for i in 0..p.len() {
        keep[i] = false;
        if p.needed(i, Some(&keep))? {
            keep[i] = true;
        } else {
            removed.push(i);
        }
    }
    let normals = (0..p.len()).filter(|&i| keep[i]).map(|i| p.normals[i].clone()).collect();
    let constants = (0..p.len()).filter(|&i| keep[i]).map(|i| p.constants[i].clone()).collect();
    Ok((FacetPresentation::new(p.dim, normals, constants)?, removed))
}
