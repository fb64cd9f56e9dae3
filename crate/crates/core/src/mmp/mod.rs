//! Extremal contractions, flips and the minimal model program with scaling.

mod runner;

use std::collections::BTreeSet;

use num::{Signed, Zero};

use crate::error::{arg, Error, Result};
use crate::fan::{wall_classification, walls, Fan, Wall};
use crate::ratlin::{
    coordinates, lattice_quotient, lattice_rank, primitive_from_rationals, primitive_part, LatticeQuotient, LatticeVector,
    Rational,
};

pub use runner::{run_mmp_scaling, run_mmp_scaling_with, MmpOptions, MmpStep, MmpTrace, StepKind, TraceCheck};

/// Walls whose curves are numerically proportional, with the shared relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallClass {
    /// Primitive integer form of the relation, indexed by ray.
    pub key: LatticeVector,
    pub walls: Vec<Wall>,
    /// Number of rays with negative coefficient.
    pub alpha: usize,
}

impl WallClass {
    pub fn negative_rays(&self) -> Vec<usize> {
        (0..self.key.dim()).filter(|&i| self.key[i] < 0).collect()
    }

    /// The lexicographically smallest wall of the class.
    pub fn first_wall(&self) -> &Wall {
        self.walls.iter().min_by(|a, b| a.rays.cmp(&b.rays)).expect("classes are nonempty")
    }
}

pub(crate) fn relation_key(w: &Wall) -> Result<LatticeVector> {
    primitive_from_rationals(&w.relation)
}

/// Interior walls grouped by curve class, in order of first appearance.
pub fn wall_classes(fan: &Fan) -> Result<Vec<WallClass>> {
    let mut out: Vec<WallClass> = Vec::new();
    for w in walls(fan)? {
        let key = relation_key(&w)?;
        match out.iter_mut().find(|c| c.key == key) {
            Some(c) => c.walls.push(w),
            None => {
                let alpha = wall_classification(&w).0;
                out.push(WallClass { key, walls: vec![w], alpha });
            }
        }
    }
    Ok(out)
}

fn class_of(fan: &Fan, wall: &Wall) -> Result<WallClass> {
    let mut rays = wall.rays.clone();
    rays.sort_unstable();
    let classes = wall_classes(fan)?;
    classes
        .into_iter()
        .find(|c| c.walls.iter().any(|w| w.rays == rays))
        .ok_or_else(|| Error::Argument(format!("{rays:?} is not a wall of the fan")))
}

/// Replaces the cones of every circuit in the class: cones missing a positive
/// ray go out, cones missing a negative ray come in.
fn exchange(fan: &Fan, class: &WallClass) -> Vec<Vec<usize>> {
    let mut remove = BTreeSet::new();
    let mut add = BTreeSet::new();
    for w in &class.walls {
        let mut circuit = w.rays.clone();
        circuit.push(w.opposite.0);
        circuit.push(w.opposite.1);
        circuit.sort_unstable();
        for &j in &circuit {
            let cone: Vec<usize> = circuit.iter().copied().filter(|&x| x != j).collect();
            if w.relation[j].is_positive() {
                remove.insert(cone);
            } else if w.relation[j].is_negative() {
                add.insert(cone);
            }
        }
    }
    fan.max_cones().iter().filter(|c| !remove.contains(*c)).cloned().chain(add).collect()
}

/// Outcome of contracting the extremal ray of a wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contraction {
    Fibering(Box<MoriFiberData>),
    /// The exceptional ray is dropped; `kept[i]` is the old index of new ray `i`.
    Divisorial { fan: Fan, exceptional: usize, kept: Vec<usize> },
    /// A small contraction; the target is not simplicial, use [`flip`].
    Small { alpha: usize },
}

pub fn contract(fan: &Fan, wall: &Wall) -> Result<Contraction> {
    let class = class_of(fan, wall)?;
    match class.alpha {
        0 => Ok(Contraction::Fibering(Box::new(mori_fiber_data(fan, wall)?))),
        1 => {
            let exceptional = class.negative_rays()[0];
            let cones = exchange(fan, &class);
            if cones.iter().any(|c| c.contains(&exceptional)) {
                return Err(Error::Degenerate("a cone still contains the exceptional ray".into()));
            }
            let kept: Vec<usize> = (0..fan.num_rays()).filter(|&i| i != exceptional).collect();
            let renumber = |i: usize| if i > exceptional { i - 1 } else { i };
            let cones = cones.into_iter().map(|c| c.into_iter().map(renumber).collect()).collect();
            let rays = kept.iter().map(|&i| fan.ray(i).clone()).collect();
            let out = Fan::new(fan.rank(), rays, cones)?;
            if fan.is_complete() && !out.is_complete() {
                return Err(Error::Degenerate("contracted fan is not complete".into()));
            }
            Ok(Contraction::Divisorial { fan: out, exceptional, kept })
        }
        alpha => Ok(Contraction::Small { alpha }),
    }
}

/// The flip of a small extremal contraction; the rays are unchanged.
pub fn flip(fan: &Fan, wall: &Wall) -> Result<Fan> {
    let class = class_of(fan, wall)?;
    if class.alpha < 2 {
        return arg(format!("wall {:?} has alpha = {} and does not flip", wall.rays, class.alpha));
    }
    let out = Fan::new(fan.rank(), fan.rays().to_vec(), exchange(fan, &class))?;
    if fan.is_complete() && !out.is_complete() {
        return Err(Error::Degenerate("flipped fan is not complete".into()));
    }
    Ok(out)
}

/// Base fan of a weakly split fan under a lattice projection, with the fan ray behind each base ray.
fn split_base(fan: &Fan, rows: &[LatticeVector]) -> Result<Option<(Fan, Vec<usize>)>> {
    let n = fan.rank();
    if let Some(r) = rows.iter().find(|r| r.dim() != n) {
        return Err(Error::Dimension { expected: n, found: r.dim() });
    }
    if lattice_rank(rows, n) != rows.len() {
        return arg("projection rows are dependent");
    }
    let image = |v: &LatticeVector| LatticeVector(rows.iter().map(|r| r.dot(v)).collect());
    let mut base_rays: Vec<LatticeVector> = Vec::new();
    let mut origin = Vec::new();
    let mut to_base = vec![None; fan.num_rays()];
    for (i, v) in fan.rays().iter().enumerate() {
        let w = image(v);
        if w.is_zero() {
            continue;
        }
        let w = primitive_part(&w.0)?;
        if base_rays.contains(&w) {
            return Ok(None);
        }
        to_base[i] = Some(base_rays.len());
        base_rays.push(w);
        origin.push(i);
    }
    let mut cones = Vec::new();
    for c in fan.max_cones() {
        let hat: Vec<usize> = c.iter().filter_map(|&i| to_base[i]).collect();
        let imgs: Vec<LatticeVector> = hat.iter().map(|&j| base_rays[j].clone()).collect();
        if lattice_rank(&imgs, rows.len()) != hat.len() {
            return Ok(None);
        }
        cones.push(hat);
    }
    match Fan::new(rows.len(), base_rays, cones) {
        Ok(base) => Ok(Some((base, origin))),
        Err(_) => Ok(None),
    }
}

/// Whether the fan is weakly split by the cones in the kernel of `projection`
/// and their images: every maximal cone is a fiber cone plus a lift that maps
/// injectively onto a cone of the image fan, with lifts in bijection with images.
pub fn weakly_split(fan: &Fan, projection: &[LatticeVector]) -> Result<bool> {
    Ok(split_base(fan, projection)?.is_some())
}

/// The fibration induced by a fibering wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoriFiberData {
    /// Rays lying in the fiber space `U`.
    pub fiber_rays: Vec<usize>,
    /// Lattice basis of `U ∩ N`; fiber fan coordinates are taken in it.
    pub fiber_basis: Vec<LatticeVector>,
    pub fiber: Fan,
    /// The projection `N -> N / U`.
    pub projection: LatticeQuotient,
    /// Base fan when the fan is weakly split over it.
    pub base: Option<Fan>,
    /// Fan ray mapping onto each base ray.
    pub base_origin: Vec<usize>,
}

impl MoriFiberData {
    pub fn weakly_split(&self) -> bool {
        self.base.is_some()
    }

    /// Whether the fiber has Picard number one.
    pub fn fiber_is_simplex_type(&self) -> bool {
        self.fiber.num_rays() == self.fiber.rank() + 1
    }
}

pub fn mori_fiber_data(fan: &Fan, wall: &Wall) -> Result<MoriFiberData> {
    let class = class_of(fan, wall)?;
    if class.alpha != 0 {
        return arg(format!("wall {:?} has alpha = {}, not of fibering type", wall.rays, class.alpha));
    }
    let n = fan.rank();
    let positive: BTreeSet<usize> = class.walls.iter().flat_map(|w| w.positive_rays()).collect();
    let span: Vec<LatticeVector> = positive.iter().map(|&i| fan.ray(i).clone()).collect();
    let projection = lattice_quotient(&span, n)?;
    let basis = projection.sublattice_basis.clone();
    let fiber_rays: Vec<usize> = (0..fan.num_rays()).filter(|&i| projection.apply(fan.ray(i)).is_zero()).collect();
    let mut local = Vec::new();
    for &i in &fiber_rays {
        let c = coordinates(&basis, &fan.ray(i).to_rationals(), n)?
            .ok_or_else(|| Error::Degenerate("fiber ray outside the fiber space".into()))?;
        local.push(primitive_from_rationals(&c)?);
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::Degenerate("fiber ray is not integral in the fiber lattice".into()));
        }
    }
    let d = basis.len();
    let mut cones = Vec::new();
    for c in fan.max_cones() {
        let inside: Vec<usize> =
            c.iter().filter_map(|i| fiber_rays.iter().position(|f| f == i)).collect();
        if inside.len() == d {
            cones.push(inside);
        }
    }
    let fiber = Fan::new(d, local, cones)?;
    let (base, base_origin) = match split_base(fan, &projection.projection)? {
        Some((b, o)) => (Some(b), o),
        None => (None, Vec::new()),
    };
    Ok(MoriFiberData { fiber_rays, fiber_basis: basis, fiber, projection, base, base_origin })
}

pub(crate) fn sum_of(relation: &[Rational], weights: &[Rational]) -> Rational {
    relation.iter().zip(weights).map(|(r, a)| r * a).fold(Rational::zero(), |s, x| s + x)
}
