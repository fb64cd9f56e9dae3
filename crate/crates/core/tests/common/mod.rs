//! Generators and checks shared by the property tests and the acceptance run.
#![allow(dead_code)]

use num::{Signed, Zero};
use proptest::prelude::*;

use toric_mmp::fan::{walls, Fan};
use toric_mmp::fano_data::load_builtin_table;
use toric_mmp::intersect::{ch2_dot_surface, curve_number, div_char, nef_threshold_intersection, TorusDivisor};
use toric_mmp::mmp::{flip, weakly_split};
use toric_mmp::polytope::{
    adjoint, adjoint_of_presentation, cayley_mori_build, cayley_mori_detect, normal_fan, remove_redundant, thresholds,
    FacetPresentation,
};
use toric_mmp::ratlin::{frac, int, lattice_quotient, LatticeVector, Rational};

pub type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// A box `|x_i| <= c_i` cut by a few extra half-spaces, made irredundant.
fn presentation(dim: usize, sides: Vec<(i64, i64)>, extra: Vec<(Vec<i64>, i64)>) -> Option<FacetPresentation> {
    let mut normals: Vec<LatticeVector> = Vec::new();
    let mut constants: Vec<Rational> = Vec::new();
    for (i, (lo, hi)) in sides.into_iter().enumerate() {
        normals.push(LatticeVector::unit(dim, i));
        constants.push(int(lo));
        normals.push(LatticeVector::unit(dim, i).scaled(-1));
        constants.push(int(hi));
    }
    for (v, c) in extra {
        let v = LatticeVector::new(v);
        if v.is_zero() {
            continue;
        }
        let g = v.gcd();
        let v = LatticeVector::new(v.0.iter().map(|x| x / g).collect());
        if normals.contains(&v) {
            continue;
        }
        normals.push(v);
        constants.push(frac(c, 2));
    }
    let p = FacetPresentation::new(dim, normals, constants).ok()?;
    let (q, _) = remove_redundant(&p).ok()?;
    q.is_simple().ok()?.then_some(q)
}

/// Simple full-dimensional polytopes with the origin in the interior, in dimension 2 or 3.
pub fn simple_polytope() -> impl Strategy<Value = FacetPresentation> {
    (2usize..=3)
        .prop_flat_map(|dim| {
            (
                Just(dim),
                prop::collection::vec((1i64..=4, 1i64..=4), dim),
                prop::collection::vec((prop::collection::vec(-2i64..=2, dim), 1i64..=12), 1..=4),
            )
        })
        .prop_filter_map("not simple", |(dim, sides, extra)| presentation(dim, sides, extra))
}

/// `(P^(s))^(t) = P^(s+t)`, with `s` below the nef threshold so that `P^(s)` keeps every facet.
pub fn check_adjoint_composition(p: &FacetPresentation, s_frac: (i64, i64), t_frac: (i64, i64)) -> Check {
    let t = thresholds(p).map_err(fail)?;
    let s = &t.nef * frac(s_frac.0, s_frac.1);
    let rest = &t.effective - &s;
    let u = rest * frac(t_frac.0, t_frac.1);
    let ps = adjoint(p, &s).map_err(fail)?;
    let composed = adjoint(&ps, &u).map_err(fail)?;
    let direct = adjoint_of_presentation(p, &(&s + &u)).map_err(fail)?;
    ensure(composed.same_polytope(&direct).map_err(fail)?, || format!("(P^({s}))^({u}) differs from P^({})", &s + &u))
}

/// `nef_threshold_intersection` on the normal fan agrees with the polyhedral nef threshold.
pub fn check_nef_threshold(p: &FacetPresentation) -> Check {
    let fan = normal_fan(p).map_err(fail)?;
    let lhs = nef_threshold_intersection(&fan, &TorusDivisor::new(p.constants().to_vec())).map_err(fail)?;
    let rhs = thresholds(p).map_err(fail)?.nef;
    ensure(lhs == rhs, || format!("intersection {lhs} vs polyhedral {rhs}"))
}

/// Principal divisors have degree zero on every wall curve.
pub fn check_principal_divisors(fan: &Fan) -> Check {
    for w in walls(fan).map_err(fail)? {
        for k in 0..fan.rank() {
            let d = div_char(fan, &LatticeVector::unit(fan.rank(), k)).map_err(fail)?;
            let value = curve_number(fan, &d, &w.rays).map_err(fail)?;
            ensure(value.is_zero(), || format!("div(chi^e_{k}) . C_{:?} = {value}", w.rays))?;
        }
    }
    Ok(())
}

/// Fans used for the corpus-wide properties: the 4-fold table, projective spaces and a few singular fans.
pub fn corpus_fans() -> Vec<Fan> {
    let mut fans: Vec<Fan> = load_builtin_table().iter().map(|r| r.fan().expect("table fans reconstruct")).collect();
    fans.extend((1..=4).map(Fan::projective_space));
    fans.push(singular_fan());
    fans.push(Fan::new(2, vec![[1, 0].into(), [1, 2].into(), [-1, 0].into(), [0, -1].into()], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap());
    fans
}

/// Rays `u_0 = (0,0,-1)`, `u_1 = (0,1,2)`, `u_2 = (0,-1,0)`, `v_0 = (1,0,0)`, `v_1 = (-1,0,1)`.
pub fn singular_fan() -> Fan {
    let rays: Vec<LatticeVector> =
        [[0, 0, -1], [0, 1, 2], [0, -1, 0], [1, 0, 0], [-1, 0, 1]].into_iter().map(LatticeVector::from).collect();
    let cones = [[0, 1], [0, 2], [1, 2]]
        .iter()
        .flat_map(|f| [3, 4].map(|v| vec![f[0], f[1], v]))
        .collect();
    Fan::new(3, rays, cones).unwrap()
}

fn segment(lo: i64, len: i64) -> FacetPresentation {
    FacetPresentation::new(1, vec![[1].into(), [-1].into()], vec![int(-lo), int(lo + len)]).unwrap()
}

fn rectangle(lo: (i64, i64), len: (i64, i64)) -> FacetPresentation {
    FacetPresentation::new(
        2,
        vec![[1, 0].into(), [-1, 0].into(), [0, 1].into(), [0, -1].into()],
        vec![int(-lo.0), int(lo.0 + len.0), int(-lo.1), int(lo.1 + len.1)],
    )
    .unwrap()
}

/// Bases over a common normal fan (segments or rectangles) and an invertible integer matrix of heights.
pub fn cayley_instance() -> impl Strategy<Value = (Vec<FacetPresentation>, Vec<LatticeVector>)> {
    (1usize..=2, 1usize..=2)
        .prop_flat_map(|(k, m)| {
            (
                prop::collection::vec((-2i64..=2, 1i64..=3, -2i64..=2, 1i64..=3), k + 1),
                prop::collection::vec(prop::collection::vec(-2i64..=2, k), k),
                Just(m),
            )
        })
        .prop_filter_map("singular heights", |(sides, w, m)| {
            let w: Vec<LatticeVector> = w.into_iter().map(LatticeVector::new).collect();
            if toric_mmp::ratlin::lattice_rank(&w, w.len()) < w.len() {
                return None;
            }
            let bases = sides
                .into_iter()
                .map(|(a, la, b, lb)| if m == 1 { segment(a, la) } else { rectangle((a, b), (la, lb)) })
                .collect();
            Some((bases, w))
        })
}

/// Build, detect, and check that the normal fan splits weakly over the detected fiber.
pub fn check_cayley_round_trip(bases: &[FacetPresentation], w: &[LatticeVector]) -> Check {
    let p = cayley_mori_build(bases, w).map_err(fail)?;
    let d = cayley_mori_detect(&p).map_err(fail)?.ok_or("no decomposition detected")?;
    ensure(d.bases.len() == d.k() + 1, || format!("{} bases over a {}-simplex", d.bases.len(), d.k()))?;
    ensure(d.bases.iter().all(|b| b.dim() + d.k() == p.dim()), || "base dimension".into())?;
    let fan = normal_fan(&p).map_err(fail)?;
    let q = lattice_quotient(&d.fiber_basis, p.dim()).map_err(fail)?;
    ensure(weakly_split(&fan, &q.projection).map_err(fail)?, || "normal fan is not weakly split".into())
}

/// The small flip in three-space: `e1 + e2 = e3 + (e1 + e2 - e3)`.
pub fn flip_example() -> Fan {
    Fan::new(3, vec![[1, 0, 0].into(), [0, 1, 0].into(), [0, 0, 1].into(), [1, 1, -1].into()], vec![vec![0, 1, 2], vec![0, 1, 3]])
        .unwrap()
}

/// Flipping keeps the rays and the support, and flipping back restores the cones.
pub fn check_flip(points: &[Vec<i64>]) -> Check {
    let f = flip_example();
    let wall = walls(&f).map_err(fail)?.into_iter().find(|w| w.rays == [0, 1]).ok_or("wall {0,1} missing")?;
    let g = flip(&f, &wall).map_err(fail)?;
    ensure(g.rays() == f.rays(), || "ray set changed".into())?;
    let mut cones = g.max_cones().to_vec();
    cones.sort();
    ensure(cones == [vec![0, 2, 3], vec![1, 2, 3]], || format!("flipped cones {cones:?}"))?;
    for x in points {
        let x: Vec<Rational> = x.iter().map(|&c| int(c)).collect();
        let before = f.contains_point(&x).map_err(fail)?;
        let after = g.contains_point(&x).map_err(fail)?;
        ensure(before == after, || format!("support differs at {x:?}"))?;
    }
    let back_wall = walls(&g).map_err(fail)?.into_iter().find(|w| w.rays == [2, 3]).ok_or("wall {2,3} missing")?;
    let back = flip(&g, &back_wall).map_err(fail)?;
    let mut cones = back.max_cones().to_vec();
    cones.sort();
    ensure(cones == f.max_cones(), || format!("double flip gives {cones:?}"))
}

/// Parameters of a Cayley-Mori fan over `P^1` with simplex fibres: `s` and intervals `[-b_iu, b_iv]`.
pub fn lemma_instance() -> impl Strategy<Value = (i64, Vec<(i64, i64)>)> {
    (1usize..=3, 1i64..=3).prop_flat_map(|(k, s)| {
        (Just(s), prop::collection::vec((-3i64..=3, -3i64..=3), k + 1)).prop_filter_map("empty interval", |(s, mut b)| {
            if b.iter().any(|(u, v)| u + v <= 0) {
                return None;
            }
            b.sort_by_key(|(u, v)| u + v);
            Some((s, b))
        })
    })
}

/// Rays `u, v, e_0, ..., e_k` and cones `u` or `v` plus all but one `e_i`.
pub fn lemma_fan(s: i64, b: &[(i64, i64)]) -> Fan {
    let k = b.len() - 1;
    let lift = |sign: i64, d: Vec<i64>| {
        let mut v = vec![sign * s];
        v.extend(d);
        let g = v.iter().fold(0i64, |g, &x| num::integer::gcd(g, x));
        LatticeVector::new(v.into_iter().map(|x| x / g).collect())
    };
    let u = lift(1, (1..=k).map(|i| b[i].0 - b[0].0).collect());
    let v = lift(-1, (1..=k).map(|i| b[i].1 - b[0].1).collect());
    let mut e0 = vec![0];
    e0.extend(std::iter::repeat_n(-1, k));
    let mut rays = vec![u, v, LatticeVector::new(e0)];
    rays.extend((1..=k).map(|i| LatticeVector::unit(k + 1, i)));
    let mut cones = Vec::new();
    for apex in [0, 1] {
        for skip in 0..=k {
            let mut c = vec![apex];
            c.extend((0..=k).filter(|&j| j != skip).map(|j| j + 2));
            cones.push(c);
        }
    }
    Fan::new(k + 1, rays, cones).unwrap()
}

/// `2 ch_2 . V(e_2, ..., e_k) = sum_{i>=2} [(b_1 - b_0) - 2 (b_i - b_0)] / s`.
pub fn lemma_closed_form(s: i64, b: &[(i64, i64)]) -> Rational {
    let size = |i: usize| b[i].0 + b[i].1;
    (2..b.len()).map(|i| frac((size(1) - size(0)) - 2 * (size(i) - size(0)), s)).sum::<Rational>() * frac(1, 2)
}

pub fn check_lemma(s: i64, b: &[(i64, i64)]) -> Check {
    let fan = lemma_fan(s, b);
    let surface: Vec<usize> = (2..b.len()).map(|i| i + 2).collect();
    let value = ch2_dot_surface(&fan, &surface).map_err(fail)?;
    let expected = lemma_closed_form(s, b);
    ensure(value == expected, || format!("ch2 = {value}, closed form {expected}"))?;
    ensure(!value.is_positive(), || format!("ch2 = {value} is positive"))
}
