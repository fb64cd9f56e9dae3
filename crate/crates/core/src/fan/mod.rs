//! Fans in `N_R = R^n` and their combinatorics.
//!
//! A [`Fan`] stores primitive rays and maximal cones as sorted ray-index
//! sets. Construction validates the fan and records its [`FanReport`].

mod ops;
mod primitive;
mod walls;

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num::{BigInt, One, Signed, Zero};

use crate::error::{arg, Error, Result};
use crate::ratlin::{
    coordinates, int, lattice_rank, nonneg_solve, sign, smith_normal_form, LatticeVector, LinearProgram, Rational,
    RationalMatrix, Relation,
};

pub use ops::{star_quotient, star_subdivision};
pub use primitive::{fan_from_primitive_data, primitive_collections, PrimitiveCollection};
pub use walls::{wall_classification, walls, Wall};

/// Validation flags of a fan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanReport {
    pub simplicial: bool,
    pub smooth: bool,
    pub complete: bool,
    pub well_formed: bool,
}

#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
    report: FanReport,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// Builds and validates a fan. Non-maximal cones in the input are dropped.
    pub fn new(rank: usize, rays: Vec<LatticeVector>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != rank {
                return Err(Error::Dimension { expected: rank, found: r.dim() });
            }
            if !r.is_primitive() {
                return arg(format!("ray {i} = {r} is not primitive"));
            }
        }
        if let Some((i, j)) = (0..rays.len()).tuple_combinations().find(|&(i, j)| rays[i] == rays[j]) {
            return arg(format!("rays {i} and {j} coincide"));
        }
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for c in cones {
            let set: BTreeSet<usize> = c.into_iter().collect();
            if let Some(&bad) = set.iter().find(|&&i| i >= rays.len()) {
                return arg(format!("cone refers to ray {bad} but only {} rays exist", rays.len()));
            }
            sets.push(set.into_iter().collect());
        }
        sets.sort();
        sets.dedup();
        let maximal: Vec<Vec<usize>> = sets
            .iter()
            .filter(|c| !sets.iter().any(|d| d.len() > c.len() && is_subset(c, d)))
            .cloned()
            .collect();
        if maximal.is_empty() {
            return arg("a fan needs at least one cone");
        }
        let mut fan = Fan {
            rank,
            rays,
            max_cones: maximal,
            report: FanReport { simplicial: false, smooth: false, complete: false, well_formed: false },
        };
        fan.report = fan.compute_report(false)?;
        Ok(fan)
    }

    /// The standard fan of projective space `P^n`.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        rays.push(LatticeVector(vec![-1; n]));
        let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
        Fan::new(n, rays, cones).expect("projective space fan is valid")
    }

    /// The fan of a point: rank zero, a single zero cone.
    pub fn point() -> Fan {
        Fan::new(0, vec![], vec![vec![]]).expect("the zero fan is valid")
    }

    /// Product of two fans.
    pub fn product(a: &Fan, b: &Fan) -> Fan {
        let n = a.rank + b.rank;
        let mut rays = Vec::new();
        for r in &a.rays {
            let mut v = r.0.clone();
            v.resize(n, 0);
            rays.push(LatticeVector(v));
        }
        for r in &b.rays {
            let mut v = vec![0; a.rank];
            v.extend_from_slice(&r.0);
            rays.push(LatticeVector(v));
        }
        let off = a.rays.len();
        let cones = a
            .max_cones
            .iter()
            .cartesian_product(&b.max_cones)
            .map(|(x, y)| x.iter().copied().chain(y.iter().map(|j| j + off)).collect())
            .collect();
        Fan::new(n, rays, cones).expect("product of fans is a fan")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn report(&self) -> FanReport {
        self.report
    }

    pub fn is_simplicial(&self) -> bool {
        self.report.simplicial
    }

    pub fn is_smooth(&self) -> bool {
        self.report.smooth
    }

    pub fn is_complete(&self) -> bool {
        self.report.complete
    }

    /// `#rays - rank`, the Picard number of a complete simplicial fan.
    pub fn picard_number(&self) -> usize {
        self.rays.len().saturating_sub(self.rank)
    }

    pub fn cone_rays(&self, cone: &[usize]) -> Vec<LatticeVector> {
        cone.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Whether the ray set spans a cone of this (simplicial) fan.
    pub fn is_cone(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.max_cones.iter().any(|c| is_subset(&s, c))
    }

    pub fn max_cones_containing(&self, set: &[usize]) -> Vec<usize> {
        let mut s = set.to_vec();
        s.sort_unstable();
        (0..self.max_cones.len()).filter(|&i| is_subset(&s, &self.max_cones[i])).collect()
    }

    /// All cones with exactly `k` rays, sorted.
    pub fn cones_of_dim(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in &self.max_cones {
            for sub in c.iter().copied().combinations(k) {
                out.insert(sub);
            }
        }
        out.into_iter().collect()
    }

    /// A maximal cone containing `x` together with nonnegative coefficients on its rays.
    pub fn locate(&self, x: &[Rational]) -> Result<Option<(usize, Vec<Rational>)>> {
        for (ci, c) in self.max_cones.iter().enumerate() {
            if let Some(coef) = self.cone_coefficients(c, x)? {
                return Ok(Some((ci, coef)));
            }
        }
        Ok(None)
    }

    /// Nonnegative coefficients expressing `x` in the rays of `cone`, if it lies in the cone.
    pub fn cone_coefficients(&self, cone: &[usize], x: &[Rational]) -> Result<Option<Vec<Rational>>> {
        let rays = self.cone_rays(cone);
        if self.report.simplicial {
            let Some(c) = coordinates(&rays, x, self.rank)? else { return Ok(None) };
            Ok(c.iter().all(|v| !v.is_negative()).then_some(c))
        } else {
            nonneg_solve(&rays.iter().map(LatticeVector::to_rationals).collect::<Vec<_>>(), x)
        }
    }

    pub fn contains_point(&self, x: &[Rational]) -> Result<bool> {
        Ok(self.locate(x)?.is_some())
    }

    /// Full validation with pairwise face checks, never using the completeness shortcut.
    pub fn validate_exhaustive(&self) -> Result<FanReport> {
        self.compute_report(true)
    }

    fn compute_report(&self, exhaustive: bool) -> Result<FanReport> {
        let n = self.rank;
        let simplicial = self.max_cones.iter().all(|c| lattice_rank(&self.cone_rays(c), n) == c.len());
        let smooth = simplicial && self.max_cones.iter().all(|c| self.cone_is_unimodular(c));
        if !simplicial {
            for (i, c) in self.max_cones.iter().enumerate() {
                if !self.strongly_convex(c)? {
                    return arg(format!("cone {i} is not strongly convex"));
                }
            }
        }
        let full = self.max_cones.iter().all(|c| lattice_rank(&self.cone_rays(c), n) == n);
        if n == 0 {
            return Ok(FanReport { simplicial: true, smooth: true, complete: true, well_formed: true });
        }
        if simplicial && full && !exhaustive && self.simplicial_certificate()? {
            return Ok(FanReport { simplicial, smooth, complete: true, well_formed: true });
        }
        self.pairwise_check()?;
        let complete = full && self.facets_matched()? && self.signed_units_covered()?;
        Ok(FanReport { simplicial, smooth, complete, well_formed: true })
    }

    fn cone_is_unimodular(&self, cone: &[usize]) -> bool {
        if cone.is_empty() {
            return true;
        }
        let m: Vec<Vec<BigInt>> = cone.iter().map(|&i| self.rays[i].0.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let snf = smith_normal_form(&m).expect("nonempty matrix");
        snf.rank == cone.len() && snf.diagonal().iter().all(One::is_one)
    }

    fn strongly_convex(&self, cone: &[usize]) -> Result<bool> {
        let mut lp = LinearProgram::new(self.rank);
        for &i in cone {
            lp.constrain(self.rays[i].to_rationals(), Relation::Ge, Rational::one())?;
        }
        Ok(lp.feasible_point()?.is_some())
    }

    /// Certificate for complete simplicial fans: every facet is shared by exactly
    /// two cones lying on opposite sides, and a generic point is covered once.
    fn simplicial_certificate(&self) -> Result<bool> {
        let n = self.rank;
        let mut facets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for c in &self.max_cones {
            for skip in 0..c.len() {
                let f: Vec<usize> = c.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &r)| r).collect();
                facets.entry(f).or_default().push(c[skip]);
            }
        }
        let mut normals = Vec::with_capacity(facets.len());
        for (f, opposite) in &facets {
            if opposite.len() != 2 {
                return Ok(false);
            }
            let u = self.hyperplane_normal(f)?;
            let a = self.rays[opposite[0]].pair(&u);
            let b = self.rays[opposite[1]].pair(&u);
            if sign(&a) * sign(&b) >= 0 {
                return Ok(false);
            }
            normals.push(u);
        }
        let p = generic_point(n, &normals);
        let mut hits = 0;
        for c in &self.max_cones {
            let coef = coordinates(&self.cone_rays(c), &p, n)?.expect("full-rank cone");
            if coef.iter().all(Signed::is_positive) {
                hits += 1;
            }
        }
        Ok(hits == 1 && self.signed_units_covered()?)
    }

    fn signed_units_covered(&self) -> Result<bool> {
        for i in 0..self.rank {
            for s in [1, -1] {
                let mut e = vec![Rational::zero(); self.rank];
                e[i] = int(s);
                if self.locate(&e)?.is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// A normal vector to the hyperplane spanned by `n - 1` independent rays.
    fn hyperplane_normal(&self, face: &[usize]) -> Result<Vec<Rational>> {
        let m = RationalMatrix::from_lattice_rows(&self.cone_rays(face), self.rank);
        let k = m.kernel();
        if k.len() != 1 {
            return Err(Error::Degenerate(format!("rays {face:?} do not span a hyperplane")));
        }
        Ok(k.into_iter().next().unwrap())
    }

    /// Every pair of maximal cones is separated by a hyperplane meeting both in their common rays.
    fn pairwise_check(&self) -> Result<()> {
        for (i, j) in (0..self.max_cones.len()).tuple_combinations() {
            let a = &self.max_cones[i];
            let b = &self.max_cones[j];
            let mut lp = LinearProgram::new(self.rank);
            for &r in a {
                let rel = if b.contains(&r) { Relation::Eq } else { Relation::Ge };
                let rhs = if b.contains(&r) { Rational::zero() } else { Rational::one() };
                lp.constrain(self.rays[r].to_rationals(), rel, rhs)?;
            }
            for &r in b.iter().filter(|r| !a.contains(r)) {
                lp.constrain(self.rays[r].to_rationals(), Relation::Le, -Rational::one())?;
            }
            if lp.feasible_point()?.is_none() {
                return Err(Error::MalformedFan { first: i, second: j });
            }
        }
        Ok(())
    }

    /// Facets of a full-dimensional cone, as (ray set, inward normal).
    fn cone_facets(&self, cone: &[usize]) -> Result<Vec<(Vec<usize>, Vec<Rational>)>> {
        let mut out: Vec<(Vec<usize>, Vec<Rational>)> = Vec::new();
        for sub in cone.iter().copied().combinations(self.rank - 1) {
            if lattice_rank(&self.cone_rays(&sub), self.rank) != self.rank - 1 {
                continue;
            }
            let mut u = self.hyperplane_normal(&sub)?;
            let signs: Vec<i32> = cone.iter().map(|&r| sign(&self.rays[r].pair(&u))).collect();
            if signs.iter().any(|&s| s > 0) && signs.iter().any(|&s| s < 0) {
                continue;
            }
            if signs.iter().any(|&s| s < 0) {
                u = u.into_iter().map(|x| -x).collect();
            }
            let rays: Vec<usize> = cone.iter().zip(&signs).filter(|(_, &s)| s == 0).map(|(&r, _)| r).collect();
            if !out.iter().any(|(f, _)| *f == rays) {
                out.push((rays, u));
            }
        }
        Ok(out)
    }

    /// Each facet of each maximal cone continues into another maximal cone on its far side.
    fn facets_matched(&self) -> Result<bool> {
        for (ci, c) in self.max_cones.iter().enumerate() {
            for (f, u) in self.cone_facets(c)? {
                let continued = self.max_cones.iter().enumerate().any(|(di, d)| {
                    di != ci && is_subset(&f, d) && d.iter().any(|&r| self.rays[r].pair(&u).is_negative())
                });
                if !continued {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A point off every hyperplane with the given normals, taken on the moment curve.
pub(crate) fn generic_point(n: usize, normals: &[Vec<Rational>]) -> Vec<Rational> {
    let mut t: i64 = 2;
    loop {
        let p: Vec<Rational> = (0..n).map(|i| int(t.pow(i as u32))).collect();
        if normals.iter().all(|u| !crate::ratlin::dot(u, &p).is_zero()) {
            return p;
        }
        t += 1;
    }
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}
