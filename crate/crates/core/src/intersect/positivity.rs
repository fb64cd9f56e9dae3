use num::{Signed, Zero};
use rayon::prelude::*;

use super::{anticanonical, curve_number, intersect_cycle, intersect_once, is_q_cartier, TorusDivisor};
use crate::error::{Error, Result};
use crate::fan::{primitive_collections, walls, Fan};
use crate::ratlin::{frac, solve_linear, Rational, RationalMatrix};

fn require_complete_simplicial(fan: &Fan) -> Result<()> {
    if !fan.is_complete() || !fan.is_simplicial() {
        return Err(Error::Precondition("a complete simplicial fan is required".into()));
    }
    Ok(())
}

/// `ch_2(T_X) . V(sigma) = 1/2 sum_i D_i . D_i . V(sigma)` for an `(n-2)`-cone `sigma`.
///
/// On singular fans the same formula is evaluated formally.
pub fn ch2_dot_surface(fan: &Fan, sigma: &[usize]) -> Result<Rational> {
    require_complete_simplicial(fan)?;
    let n = fan.rank();
    if n < 2 || sigma.len() + 2 != n || !fan.is_cone(sigma) {
        return Err(Error::Argument(format!("{sigma:?} is not a cone of codimension 2")));
    }
    let mut total = Rational::zero();
    for i in 0..fan.num_rays() {
        if !sigma.contains(&i) {
            let mut g = sigma.to_vec();
            g.push(i);
            if !fan.is_cone(&g) {
                continue;
            }
        }
        let d = TorusDivisor::prime(fan.num_rays(), i);
        let curve = intersect_once(fan, &d, sigma)?;
        total += intersect_cycle(fan, &d, &curve)?.degree();
    }
    Ok(total * frac(1, 2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanoWitness {
    /// A primitive collection of nonpositive degree.
    Collection { members: Vec<usize>, degree: Rational },
    /// A wall whose curve has nonpositive anticanonical degree.
    Wall { rays: Vec<usize>, value: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoVerdict {
    pub fano: bool,
    pub witness: Option<FanoWitness>,
}

/// Fano test: primitive relation degrees on smooth fans, anticanonical wall degrees otherwise.
pub fn is_fano(fan: &Fan) -> Result<FanoVerdict> {
    if !fan.is_complete() {
        return Err(Error::Precondition("the Fano test needs a complete fan".into()));
    }
    let k = anticanonical(fan);
    if !is_q_cartier(fan, &k)? {
        let bad = fan
            .max_cones()
            .iter()
            .find(|c| !is_q_cartier_on(fan, &k, c))
            .cloned()
            .unwrap_or_default();
        return Err(Error::NotQGorenstein(bad));
    }
    if !fan.is_simplicial() {
        return Err(Error::Unsupported("Fano test on a non-simplicial fan".into()));
    }
    if fan.is_smooth() {
        let worst = primitive_collections(fan)?.into_iter().min_by(|a, b| a.degree.cmp(&b.degree));
        return Ok(match worst {
            Some(p) if !p.degree.is_positive() => FanoVerdict {
                fano: false,
                witness: Some(FanoWitness::Collection { members: p.members, degree: p.degree }),
            },
            _ => FanoVerdict { fano: true, witness: None },
        });
    }
    let mut worst: Option<(Vec<usize>, Rational)> = None;
    for w in walls(fan)? {
        let value = curve_number(fan, &k, &w.rays)?;
        if worst.as_ref().is_none_or(|(_, v)| value < *v) {
            worst = Some((w.rays, value));
        }
    }
    Ok(match worst {
        Some((rays, value)) if !value.is_positive() => {
            FanoVerdict { fano: false, witness: Some(FanoWitness::Wall { rays, value }) }
        }
        _ => FanoVerdict { fano: true, witness: None },
    })
}

fn is_q_cartier_on(fan: &Fan, d: &TorusDivisor, cone: &[usize]) -> bool {
    let rays = fan.cone_rays(cone);
    let m = RationalMatrix::from_lattice_rows(&rays, fan.rank());
    let rhs: Vec<Rational> = cone.iter().map(|&j| d.0[j].clone()).collect();
    matches!(solve_linear(&m, &rhs), Ok(Some(_)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceValue {
    pub surface: Vec<usize>,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFanoVerdict {
    /// Every invariant surface has positive `ch_2`.
    pub two_fano: bool,
    /// Every invariant surface has nonnegative `ch_2`.
    pub nef: bool,
    /// A surface attaining the minimum (the first in cone order on ties).
    pub minimum: SurfaceValue,
    pub values: Vec<SurfaceValue>,
}

/// Evaluates `ch_2` on every invariant surface. In dimension 2 the only surface is `X` itself.
pub fn is_2fano(fan: &Fan) -> Result<TwoFanoVerdict> {
    require_complete_simplicial(fan)?;
    let n = fan.rank();
    if n < 2 {
        return Err(Error::Dimension { expected: 3, found: n });
    }
    let values: Vec<SurfaceValue> = fan
        .cones_of_dim(n - 2)
        .into_par_iter()
        .map(|s| ch2_dot_surface(fan, &s).map(|value| SurfaceValue { surface: s, value }))
        .collect::<Result<_>>()?;
    let minimum = values
        .iter()
        .min_by(|a, b| a.value.cmp(&b.value).then_with(|| a.surface.cmp(&b.surface)))
        .cloned()
        .expect("a complete fan has surfaces");
    Ok(TwoFanoVerdict {
        two_fano: minimum.value.is_positive(),
        nef: !minimum.value.is_negative(),
        minimum,
        values,
    })
}

/// `min (L . C) / (-K . C)` over walls with `-K . C > 0`, for ample `L`.
pub fn nef_threshold_intersection(fan: &Fan, l: &TorusDivisor) -> Result<Rational> {
    require_complete_simplicial(fan)?;
    let k = anticanonical(fan);
    let mut best: Option<Rational> = None;
    for w in walls(fan)? {
        let lc = curve_number(fan, l, &w.rays)?;
        if !lc.is_positive() {
            return Err(Error::Precondition(format!("divisor is not ample: degree {lc} on wall {:?}", w.rays)));
        }
        let kc = curve_number(fan, &k, &w.rays)?;
        if kc.is_positive() {
            let t = lc / kc;
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
    }
    best.ok_or_else(|| Error::Degenerate("no wall has positive anticanonical degree".into()))
}
