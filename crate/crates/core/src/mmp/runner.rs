use itertools::Itertools;
use num::{Signed, Zero};

use super::{contract, flip, sum_of, wall_classes, Contraction, MoriFiberData, WallClass};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::polytope::{
    adjoint_of_presentation, cayley_mori_detect, core_and_projection, normal_fan, remove_redundant, thresholds, vertices,
    CoreProjection, FacetPresentation,
};
use crate::ratlin::{frac, int, lattice_rank, primitive_from_rationals, LatticeVector, Rational, RationalMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    DivisorialContraction,
    Flip,
    MoriFiberSpace,
}

impl std::fmt::Display for StepKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StepKind::DivisorialContraction => "divisorial",
            StepKind::Flip => "flip",
            StepKind::MoriFiberSpace => "mori-fiber-space",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmpStep {
    pub lambda: Rational,
    pub kind: StepKind,
    /// The selected wall, in ray indices of `fan_before`.
    pub wall: Vec<usize>,
    /// The same wall in facet indices of the initial polytope.
    pub wall_origin: Vec<usize>,
    pub alpha: usize,
    pub facet_count_before: usize,
    pub facet_count_after: usize,
    /// Dimension of the face of `P^(lambda)` where the inequalities of the negative rays are tight.
    pub lost_face_dim: Option<usize>,
    pub fan_before: Fan,
    /// The next model, or the base of the fibration at the last step.
    pub fan_after: Fan,
    /// Facet index of the initial polytope behind each ray of `fan_before`.
    pub origin_before: Vec<usize>,
    pub generality_flag: bool,
    /// Every wall attaining the critical value when the flag is set.
    pub tied_walls: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCheck {
    pub step: Option<usize>,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmpTrace {
    pub initial: FacetPresentation,
    pub steps: Vec<MmpStep>,
    pub sigma: Rational,
    pub core: CoreProjection,
    pub fiber: MoriFiberData,
    /// Adjoint-polytope cross-checks; empty for non-general input.
    pub checks: Vec<TraceCheck>,
    pub general: bool,
}

impl MmpTrace {
    pub fn lambdas(&self) -> Vec<Rational> {
        self.steps.iter().map(|s| s.lambda.clone()).collect()
    }

    pub fn kinds(&self) -> Vec<StepKind> {
        self.steps.iter().map(|s| s.kind).collect()
    }

    pub fn checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MmpOptions {
    /// Continue past ties by taking the lexicographically smallest wall.
    pub force: bool,
}

pub fn run_mmp_scaling(p: &FacetPresentation) -> Result<MmpTrace> {
    run_mmp_scaling_with(p, MmpOptions::default())
}

/// Runs the MMP with scaling of the polarization given by `p`.
///
/// Divisor coefficients are those of `p` pushed forward through each step;
/// the critical value is the smallest `(L.C)/(-K.C)` over wall classes with
/// `-K.C > 0`, computed from wall relations.
pub fn run_mmp_scaling_with(p: &FacetPresentation, options: MmpOptions) -> Result<MmpTrace> {
    if !p.is_irredundant() {
        return Err(Error::Precondition("the MMP needs an irredundant presentation".into()));
    }
    if !p.is_full_dimensional()? {
        return Err(Error::Degenerate("the MMP needs a full-dimensional polytope".into()));
    }
    if !p.is_simple()? {
        return Err(Error::Precondition("the MMP needs a simple polytope".into()));
    }
    let mut fan = normal_fan(p)?;
    let mut coeffs: Vec<Rational> = p.constants().to_vec();
    let mut origin: Vec<usize> = (0..p.len()).collect();
    let mut previous = Rational::zero();
    let mut steps = Vec::new();
    let budget = 10 * p.len();
    let fiber = loop {
        if steps.len() >= budget {
            return Err(Error::StepBudget(budget));
        }
        let classes = wall_classes(&fan)?;
        let ones = vec![int(1); fan.num_rays()];
        let rel = |c: &WallClass| -> (Rational, Rational) {
            let r: Vec<Rational> = c.key.to_rationals();
            (sum_of(&r, &coeffs), sum_of(&r, &ones))
        };
        for c in &classes {
            let (lc, kc) = rel(c);
            if (lc - &previous * kc).is_negative() {
                return Err(Error::Degenerate(format!("L + {previous} K is not nef on the current model")));
            }
        }
        let mut lambda: Option<Rational> = None;
        let mut tied: Vec<&WallClass> = Vec::new();
        for c in &classes {
            let (lc, kc) = rel(c);
            if !kc.is_positive() {
                continue;
            }
            let t = lc / kc;
            match &lambda {
                Some(l) if t > *l => {}
                Some(l) if t == *l => tied.push(c),
                _ => {
                    lambda = Some(t);
                    tied = vec![c];
                }
            }
        }
        let lambda = lambda.ok_or_else(|| Error::Degenerate("no wall class has positive anticanonical degree".into()))?;
        let chosen = tied.iter().min_by(|a, b| a.first_wall().rays.cmp(&b.first_wall().rays)).unwrap();
        let flagged = tied.len() > 1 || (!steps.is_empty() && lambda <= previous);
        let tied_walls: Vec<Vec<usize>> = tied.iter().flat_map(|c| c.walls.iter().map(|w| w.rays.clone())).collect();
        if flagged && !options.force {
            let walls = tied_walls.iter().map(|w| w.iter().map(|&i| origin[i]).collect()).collect();
            return Err(Error::Generality { lambda: lambda.to_string(), walls });
        }
        let wall = chosen.first_wall().clone();
        let negatives: Vec<usize> = chosen.negative_rays().iter().map(|&i| origin[i]).collect();
        let lost_face_dim = lost_face_dimension(p, &lambda, &negatives)?;
        let before = fan.clone();
        let origin_before = origin.clone();
        let mut step = MmpStep {
            lambda: lambda.clone(),
            kind: StepKind::MoriFiberSpace,
            wall: wall.rays.clone(),
            wall_origin: wall.rays.iter().map(|&i| origin[i]).collect(),
            alpha: chosen.alpha,
            facet_count_before: fan.num_rays(),
            facet_count_after: 0,
            lost_face_dim,
            fan_before: before,
            fan_after: fan.clone(),
            origin_before,
            generality_flag: flagged,
            tied_walls: if flagged { tied_walls } else { Vec::new() },
        };
        match contract(&fan, &wall)? {
            Contraction::Fibering(data) => {
                let base = data.base.clone().unwrap_or_else(Fan::point);
                step.facet_count_after = base.num_rays();
                step.fan_after = base;
                steps.push(step);
                break *data;
            }
            Contraction::Divisorial { fan: next, exceptional, kept } => {
                step.kind = StepKind::DivisorialContraction;
                coeffs.remove(exceptional);
                origin = kept.iter().map(|&i| origin[i]).collect();
                fan = next;
            }
            Contraction::Small { .. } => {
                step.kind = StepKind::Flip;
                fan = flip(&fan, &wall)?;
            }
        }
        step.facet_count_after = fan.num_rays();
        step.fan_after = fan.clone();
        steps.push(step);
        previous = lambda;
    };
    let core = core_and_projection(p)?;
    let sigma = core.sigma.clone();
    let general = steps.iter().all(|s| !s.generality_flag);
    let mut trace = MmpTrace { initial: p.clone(), steps, sigma, core, fiber, checks: Vec::new(), general };
    if general {
        trace.checks = cross_validate(&trace)?;
    }
    Ok(trace)
}

/// Dimension of the face of `P^(lambda)` cut out by the given facet indices.
fn lost_face_dimension(p: &FacetPresentation, lambda: &Rational, tight: &[usize]) -> Result<Option<usize>> {
    let q = adjoint_of_presentation(p, lambda)?;
    let vs = match vertices(&q) {
        Ok(v) => v,
        Err(Error::Empty) => return Ok(None),
        Err(e) => return Err(e),
    };
    let pts: Vec<&Vec<Rational>> =
        vs.vertices.iter().zip(&vs.incidence).filter(|(_, t)| tight.iter().all(|i| t.contains(i))).map(|(x, _)| x).collect();
    if pts.is_empty() {
        return Ok(None);
    }
    let diffs: Vec<Vec<Rational>> = pts.iter().map(|x| x.iter().zip(pts[0]).map(|(a, b)| a - b).collect()).collect();
    Ok(Some(RationalMatrix::from_rows(diffs)?.rank()))
}

struct Checks(Vec<TraceCheck>);

impl Checks {
    fn push(&mut self, step: Option<usize>, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(TraceCheck { step, name: name.into(), passed, detail: detail.into() });
    }
}

/// Compares the steps against the adjoint polytopes `P^(s)` of the initial polytope.
fn cross_validate(t: &MmpTrace) -> Result<Vec<TraceCheck>> {
    let p = &t.initial;
    let mut out = Checks(Vec::new());
    let nef = thresholds(p)?.nef;
    out.push(None, "first critical value is the nef threshold", nef == t.steps[0].lambda, format!("nef threshold {nef}"));
    let mut previous = Rational::zero();
    let last = t.steps.len() - 1;
    for (i, step) in t.steps.iter().enumerate() {
        let mid = (&previous + &step.lambda) * frac(1, 2);
        let (between, removed) = remove_redundant(&adjoint_of_presentation(p, &mid)?)?;
        let facets: Vec<usize> = (0..p.len()).filter(|j| !removed.contains(j)).collect();
        out.push(
            Some(i),
            "facets between critical values match the model",
            facets == step.origin_before,
            format!("P^({mid}) keeps facets {facets:?}, model rays {:?}", step.origin_before),
        );
        let simple = between.is_simple()?;
        out.push(Some(i), "adjoint polytope between critical values is simple", simple, format!("s = {mid}"));
        let same_fan = facets == step.origin_before && normal_fan(&between)? == step.fan_before;
        out.push(Some(i), "normal fan between critical values is the model fan", same_fan, format!("s = {mid}"));
        let at = adjoint_of_presentation(p, &step.lambda)?;
        match step.kind {
            StepKind::DivisorialContraction | StepKind::Flip => {
                let (q, _) = remove_redundant(&at)?;
                let expected = if step.kind == StepKind::Flip { step.facet_count_before } else { step.facet_count_before - 1 };
                out.push(
                    Some(i),
                    "facet count at the critical value",
                    q.len() == expected,
                    format!("{} facets at lambda = {}, expected {expected}", q.len(), step.lambda),
                );
                let simple = q.is_simple()?;
                let want_simple = step.kind == StepKind::DivisorialContraction;
                out.push(
                    Some(i),
                    "simplicity at the critical value",
                    simple == want_simple,
                    format!("simple = {simple} for a {} step", step.kind),
                );
            }
            StepKind::MoriFiberSpace => {
                out.push(
                    Some(i),
                    "last critical value is the effective threshold",
                    step.lambda == t.sigma,
                    format!("lambda = {}, sigma = {}", step.lambda, t.sigma),
                );
                out.push(Some(i), "last adjoint polytope is lower-dimensional", !at.is_full_dimensional()?, "");
                let cayley = cayley_mori_detect(&between)?.is_some();
                out.push(Some(i), "adjoint polytope before the last step is Cayley-Mori", cayley, format!("s = {mid}"));
            }
        }
        if i < last && step.lambda <= previous {
            out.push(Some(i), "critical values increase", false, format!("{} after {previous}", step.lambda));
        }
        previous = step.lambda.clone();
    }
    let (ok, detail) = fiber_matches_core(t)?;
    out.push(Some(last), "fiber fan is the normal fan of the projected polytope", ok, detail);
    out.push(Some(last), "fibration is weakly split", t.fiber.weakly_split(), "");
    Ok(out.0)
}

/// The fiber space is the annihilator of the core's direction, and the normal
/// fan of `Q`, pulled back to `N`, is the initial fan cut down to the fiber space.
fn fiber_matches_core(t: &MmpTrace) -> Result<(bool, String)> {
    let initial = &t.steps[0].fan_before;
    let n = initial.rank();
    let core = &t.core;
    let fiber_dim = t.fiber.fiber_basis.len();
    if fiber_dim + core.core_dim() != n {
        return Ok((false, format!("fiber dimension {fiber_dim} and core dimension {} do not add up", core.core_dim())));
    }
    let orthogonal = t.fiber.fiber_basis.iter().all(|u| core.direction.iter().all(|k| u.dot(k) == 0));
    if !orthogonal {
        return Ok((false, "fiber space is not orthogonal to the core".into()));
    }
    let rows = &core.projection.projection;
    let q_fan = normal_fan(&core.q)?;
    let lift = |nu: &LatticeVector| -> Result<LatticeVector> {
        let v: Vec<Rational> = (0..n).map(|k| rows.iter().zip(&nu.0).map(|(r, &c)| int(r[k] * c)).sum()).collect();
        primitive_from_rationals(&v)
    };
    let lifted: Vec<LatticeVector> = q_fan.rays().iter().map(lift).collect::<Result<_>>()?;
    let mut q_cones: Vec<Vec<LatticeVector>> = q_fan
        .max_cones()
        .iter()
        .map(|c| {
            let mut m: Vec<LatticeVector> = c.iter().map(|&j| lifted[j].clone()).collect();
            m.sort();
            m
        })
        .collect();
    q_cones.sort();
    let restricted = restrict(initial, &t.fiber.projection.projection, fiber_dim)?;
    let ok = q_cones == restricted;
    Ok((ok, format!("{} cones in the projected normal fan, {} in the restricted fan", q_cones.len(), restricted.len())))
}

/// Maximal cones of `{sigma ∩ U}` for a simplicial fan, where `U` is the kernel of `g`,
/// each as a sorted list of primitive rays.
fn restrict(fan: &Fan, g: &[LatticeVector], dim: usize) -> Result<Vec<Vec<LatticeVector>>> {
    let n = fan.rank();
    let mut out: Vec<Vec<LatticeVector>> = Vec::new();
    for cone in fan.max_cones() {
        let mut rays: Vec<LatticeVector> = Vec::new();
        for support in cone.iter().copied().powerset().skip(1) {
            let images: Vec<LatticeVector> =
                support.iter().map(|&i| LatticeVector(g.iter().map(|r| r.dot(fan.ray(i))).collect())).collect();
            let kernel = RationalMatrix::from_lattice_columns(&images, g.len()).kernel();
            if kernel.len() != 1 {
                continue;
            }
            let lam = &kernel[0];
            let sign = if lam.iter().all(Signed::is_positive) {
                1
            } else if lam.iter().all(Signed::is_negative) {
                -1
            } else {
                continue;
            };
            let v: Vec<Rational> =
                (0..n).map(|k| support.iter().zip(lam).map(|(&i, l)| l * int(sign * fan.ray(i)[k])).sum()).collect();
            let r = primitive_from_rationals(&v)?;
            if !rays.contains(&r) {
                rays.push(r);
            }
        }
        if lattice_rank(&rays, n) == dim {
            rays.sort();
            if !out.contains(&rays) {
                out.push(rays);
            }
        }
    }
    out.sort();
    Ok(out)
}
