use num::{BigInt, One, Zero};

use super::{normal_fan, vertices, FacetPresentation};
use crate::error::{arg, Error, Result};
use crate::fan::Fan;
use crate::mmp::{mori_fiber_data, wall_classes, MoriFiberData};
use crate::ratlin::{
    lattice_quotient, primitive_from_rationals, smith_normal_form, solve_linear, LatticeVector, Rational, RationalMatrix,
};

/// `P = conv(P_0 x {w_0}, ..., P_k x {w_k})` with `w_0 = 0`, in coordinates read off from `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyMoriDecomposition {
    /// `P_0, ..., P_k` in `R^m`, all with the normals of the base rays in order.
    pub bases: Vec<FacetPresentation>,
    /// `w_1, ..., w_k`; rational when the faces sit at non-lattice heights.
    pub w: Vec<Vec<Rational>>,
    /// Images of the faces `R_i` in `R^k`, the vertices of the simplex `Q`.
    pub simplex: Vec<Vec<Rational>>,
    /// Facets of `P` giving the fiber rays `u_0, ..., u_k`.
    pub fiber_facets: Vec<usize>,
    /// Facets of `P` giving the base normals.
    pub base_facets: Vec<usize>,
    /// Basis of the fiber sublattice `U` of `N`; `pi(x) = (<b, x>)_b`.
    pub fiber_basis: Vec<LatticeVector>,
    /// Basis of `U^perp` in `M` and the rows reading coordinates in it.
    pub plane_basis: Vec<LatticeVector>,
    pub plane_section: Vec<LatticeVector>,
}

impl CayleyMoriDecomposition {
    pub fn k(&self) -> usize {
        self.fiber_basis.len()
    }
}

fn scale_to_primitive(v: &[Rational], constant: &Rational) -> Result<(LatticeVector, Rational)> {
    let p = primitive_from_rationals(v)?;
    let idx = v.iter().position(|x| !x.is_zero()).ok_or_else(|| Error::Degenerate("zero normal".into()))?;
    let factor = Rational::from_integer(p[idx].into()) / &v[idx];
    Ok((p, constant * factor))
}

/// Facet presentation of the Cayley-Mori polytope of `bases` over `w_1, ..., w_k`.
///
/// The `w_i` must be linearly independent; the bases must share a normal fan.
pub fn cayley_mori_build(bases: &[FacetPresentation], w: &[LatticeVector]) -> Result<FacetPresentation> {
    let k = bases.len().checked_sub(1).ok_or_else(|| Error::Argument("no base polytopes".into()))?;
    if w.len() != k || w.iter().any(|x| x.dim() != k) {
        return arg(format!("expected {k} vectors of length {k}"));
    }
    let m = bases[0].dim();
    let normals = bases[0].normals().to_vec();
    let fan0 = normal_fan(&bases[0])?;
    let mut constants: Vec<Vec<Rational>> = Vec::new();
    for b in bases {
        if b.dim() != m || b.len() != normals.len() {
            return arg("base polytopes have different normals");
        }
        let mut c = Vec::new();
        for v in &normals {
            let j = b.normals().iter().position(|x| x == v).ok_or_else(|| Error::Argument("base polytopes have different normals".into()))?;
            c.push(b.constants()[j].clone());
        }
        let reordered = FacetPresentation::new(m, normals.clone(), c.clone())?;
        if normal_fan(&reordered)? != fan0 {
            return arg("base polytopes are not strictly combinatorially equivalent");
        }
        constants.push(c);
    }
    let wt = RationalMatrix::from_lattice_rows(w, k);
    if k > 0 && wt.determinant()?.is_zero() {
        return arg("the vectors w_i are linearly dependent");
    }
    let mut out_normals = Vec::new();
    let mut out_constants = Vec::new();
    for (j, v) in normals.iter().enumerate() {
        let d: Vec<Rational> = (1..=k).map(|i| &constants[i][j] - &constants[0][j]).collect();
        let y = solve_linear(&wt, &d)?.expect("invertible");
        let full: Vec<Rational> = v.to_rationals().into_iter().chain(y).collect();
        let (n, a) = scale_to_primitive(&full, &constants[0][j])?;
        out_normals.push(n);
        out_constants.push(a);
    }
    // the simplex conv(0, w_1, ..., w_k): dual basis vectors and minus their sum
    let duals: Vec<Vec<Rational>> = (0..k)
        .map(|i| {
            let mut e = vec![Rational::zero(); k];
            e[i] = Rational::one();
            solve_linear(&wt, &e).map(|x| x.expect("invertible"))
        })
        .collect::<Result<_>>()?;
    let mut simplex = vec![(duals.iter().fold(vec![Rational::zero(); k], |s, d| s.iter().zip(d).map(|(a, b)| a - b).collect()), Rational::one())];
    simplex.extend(duals.into_iter().map(|d| (d, Rational::zero())));
    for (z, c) in simplex {
        let full: Vec<Rational> = std::iter::repeat_n(Rational::zero(), m).chain(z).collect();
        let (n, a) = scale_to_primitive(&full, &c)?;
        out_normals.push(n);
        out_constants.push(a);
    }
    FacetPresentation::new(m + k, out_normals, out_constants)
}

/// Searches the normal fan for a fibering extremal contraction and reads off a
/// Cayley-Mori structure from it; `None` when no such contraction exists.
pub fn cayley_mori_detect(p: &FacetPresentation) -> Result<Option<CayleyMoriDecomposition>> {
    if !p.is_irredundant() {
        return Err(Error::Precondition("detection needs an irredundant presentation".into()));
    }
    let fan = normal_fan(p)?;
    if !fan.is_simplicial() {
        return Err(Error::Precondition("detection needs a simple polytope".into()));
    }
    for class in wall_classes(&fan)? {
        if class.alpha != 0 {
            continue;
        }
        let data = mori_fiber_data(&fan, class.first_wall())?;
        if data.weakly_split() && data.fiber_is_simplex_type() {
            return decompose(p, &fan, &data).map(Some);
        }
    }
    Ok(None)
}

fn decompose(p: &FacetPresentation, fan: &Fan, data: &MoriFiberData) -> Result<CayleyMoriDecomposition> {
    let n = p.dim();
    let b = &data.fiber_basis;
    let k = b.len();
    let m = n - k;
    let fiber = &data.fiber_rays;
    let base_facets: Vec<usize> = (0..fan.num_rays()).filter(|i| !fiber.contains(i)).collect();
    let vs = vertices(p)?;
    let pi = |x: &[Rational]| -> Vec<Rational> { b.iter().map(|r| r.pair(x)).collect() };
    let mut simplex = Vec::new();
    for &ui in fiber {
        let others: Vec<usize> = fiber.iter().copied().filter(|&u| u != ui).collect();
        let x = vs
            .vertices
            .iter()
            .zip(&vs.incidence)
            .find(|(_, t)| others.iter().all(|u| t.contains(u)))
            .map(|(x, _)| x)
            .ok_or_else(|| Error::Degenerate("a fiber face of the polytope is empty".into()))?;
        simplex.push(pi(x));
    }
    let w: Vec<Vec<Rational>> =
        simplex[1..].iter().map(|s| s.iter().zip(&simplex[0]).map(|(a, c)| a - c).collect()).collect();
    let bt = RationalMatrix::from_lattice_rows(b, n);
    let plane: Vec<LatticeVector> = bt.kernel().iter().map(|v| primitive_from_rationals(v)).collect::<Result<_>>()?;
    let q = lattice_quotient(&plane, n)?;
    let (c, a) = (q.sublattice_basis, q.section);
    let stacked = RationalMatrix::from_lattice_rows(&b.iter().chain(&a).cloned().collect::<Vec<_>>(), n);
    let mut bases = Vec::new();
    for s in &simplex {
        let rhs: Vec<Rational> = s.iter().cloned().chain(std::iter::repeat_n(Rational::zero(), m)).collect();
        let origin = solve_linear(&stacked, &rhs)?.ok_or_else(|| Error::Degenerate("fiber plane has no origin".into()))?;
        let mut normals = Vec::new();
        let mut constants = Vec::new();
        for &j in &base_facets {
            let v = &p.normals()[j];
            let image: Vec<Rational> = c.iter().map(|col| Rational::from_integer(col.dot(v).into())).collect();
            let shifted = &p.constants()[j] + v.pair(&origin);
            let (nv, na) = scale_to_primitive(&image, &shifted)?;
            normals.push(nv);
            constants.push(na);
        }
        bases.push(FacetPresentation::new(m, normals, constants)?);
    }
    Ok(CayleyMoriDecomposition {
        bases,
        w,
        simplex,
        fiber_facets: fiber.clone(),
        base_facets,
        fiber_basis: b.clone(),
        plane_basis: c,
        plane_section: a,
    })
}

/// `s` when the simplex `conv(0, w_1, ..., w_k)` is a lattice copy of `s` times the standard simplex.
pub fn is_cayley_s(d: &CayleyMoriDecomposition) -> Option<i64> {
    let k = d.w.len();
    if k == 0 || d.w.iter().flatten().any(|x| !x.is_integer()) {
        return None;
    }
    let rows: Vec<Vec<BigInt>> = d.w.iter().map(|r| r.iter().map(|x| x.to_integer()).collect()).collect();
    let snf = smith_normal_form(&rows).ok()?;
    let diag = snf.diagonal();
    if snf.rank != k || diag.iter().any(|x| *x != diag[0]) {
        return None;
    }
    let s: i64 = diag[0].clone().try_into().ok()?;
    (s > 0).then_some(s)
}
