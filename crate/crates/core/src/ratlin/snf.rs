use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{arg, Error, Result};
use crate::ratlin::LatticeVector;

/// Smith normal form `U * M * V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: Vec<Vec<BigInt>>,
    pub d: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    /// Inverse of `u`, kept so that sublattice bases come out for free.
    pub u_inv: Vec<Vec<BigInt>>,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len))).map(|i| self.d[i][i].clone()).collect()
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

struct Work {
    d: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Work {
    fn rows(&self) -> usize {
        self.d.len()
    }

    fn cols(&self) -> usize {
        self.d[0].len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.d.swap(a, b);
        self.u.swap(a, b);
        for row in &mut self.u_inv {
            row.swap(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in &mut self.d {
            row.swap(a, b);
        }
        for row in &mut self.v {
            row.swap(a, b);
        }
    }

    /// row[i] += q * row[t]
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        for j in 0..self.cols() {
            let x = &self.d[t][j] * q;
            self.d[i][j] += x;
        }
        for j in 0..self.u.len() {
            let x = &self.u[t][j] * q;
            self.u[i][j] += x;
        }
        for row in &mut self.u_inv {
            let x = &row[i] * q;
            row[t] -= x;
        }
    }

    /// col[j] += q * col[t]
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in &mut self.d {
            let x = &row[t] * q;
            row[j] += x;
        }
        for row in &mut self.v {
            let x = &row[t] * q;
            row[j] += x;
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in &mut self.d[t] {
            *x = -x.clone();
        }
        for x in &mut self.u[t] {
            *x = -x.clone();
        }
        for row in &mut self.u_inv {
            row[t] = -row[t].clone();
        }
    }

    fn smallest_in(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        cells.filter(|&(i, j)| !self.d[i][j].is_zero()).min_by_key(|&(i, j)| self.d[i][j].abs())
    }
}

/// Smith normal form of an integer matrix given by rows.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> Result<Snf> {
    let rows = m.len();
    if rows == 0 || m[0].is_empty() {
        return arg("smith normal form of an empty matrix");
    }
    let cols = m[0].len();
    if m.iter().any(|r| r.len() != cols) {
        return arg("ragged matrix rows");
    }
    let mut w = Work { d: m.to_vec(), u: identity(rows), u_inv: identity(rows), v: identity(cols) };
    let mut t = 0;
    while t < rows.min(cols) {
        let all = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
        let Some((pi, pj)) = w.smallest_in(all) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            for i in t + 1..w.rows() {
                if !w.d[i][t].is_zero() {
                    let q = w.d[i][t].div_floor(&w.d[t][t]);
                    w.add_row(i, t, &-q);
                }
            }
            for j in t + 1..w.cols() {
                if !w.d[t][j].is_zero() {
                    let q = w.d[t][j].div_floor(&w.d[t][t]);
                    w.add_col(j, t, &-q);
                }
            }
            let line = (t + 1..w.rows()).map(|i| (i, t)).chain((t + 1..w.cols()).map(|j| (t, j)));
            if let Some((i, j)) = w.smallest_in(line) {
                if j == t {
                    w.swap_rows(t, i);
                } else {
                    w.swap_cols(t, j);
                }
                continue;
            }
            let pivot = w.d[t][t].clone();
            let bad = (t + 1..w.rows()).find(|&i| (t + 1..w.cols()).any(|j| !(&w.d[i][j] % &pivot).is_zero()));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    Ok(Snf { u: w.u, d: w.d, v: w.v, u_inv: w.u_inv, rank: t })
}

/// Saturation data for the sublattice spanned by some integer vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeQuotient {
    /// Rows of a surjection `Z^n -> Z^(n-r)` whose kernel is the saturated sublattice.
    pub projection: Vec<LatticeVector>,
    /// A basis of the saturated sublattice `span ∩ Z^n`.
    pub sublattice_basis: Vec<LatticeVector>,
    /// Rows reading off coordinates in `sublattice_basis`: `section * basis = I`.
    pub section: Vec<LatticeVector>,
}

impl LatticeQuotient {
    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        LatticeVector(self.projection.iter().map(|row| row.dot(v)).collect())
    }

    pub fn quotient_rank(&self) -> usize {
        self.projection.len()
    }
}

fn small(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Argument("lattice entry overflows i64".into()))
}

/// Quotient of `Z^n` by the saturation of the span of `generators`.
pub fn lattice_quotient(generators: &[LatticeVector], n: usize) -> Result<LatticeQuotient> {
    if generators.iter().any(|g| g.dim() != n) {
        return arg("generator dimension differs from lattice rank");
    }
    if generators.is_empty() || generators.iter().all(LatticeVector::is_zero) {
        return Ok(LatticeQuotient {
            projection: (0..n).map(|i| LatticeVector::unit(n, i)).collect(),
            sublattice_basis: Vec::new(),
            section: Vec::new(),
        });
    }
    let cols: Vec<Vec<BigInt>> =
        (0..n).map(|i| generators.iter().map(|g| BigInt::from(g[i])).collect()).collect();
    let snf = smith_normal_form(&cols)?;
    let r = snf.rank;
    let projection = (r..n)
        .map(|i| snf.u[i].iter().map(small).collect::<Result<Vec<_>>>().map(LatticeVector))
        .collect::<Result<Vec<_>>>()?;
    let section = (0..r)
        .map(|i| snf.u[i].iter().map(small).collect::<Result<Vec<_>>>().map(LatticeVector))
        .collect::<Result<Vec<_>>>()?;
    let sublattice_basis = (0..r)
        .map(|j| (0..n).map(|i| small(&snf.u_inv[i][j])).collect::<Result<Vec<_>>>().map(LatticeVector))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeQuotient { projection, sublattice_basis, section })
}

/// Basis of `span(generators) ∩ Z^n`.
pub fn saturated_basis(generators: &[LatticeVector], n: usize) -> Result<Vec<LatticeVector>> {
    Ok(lattice_quotient(generators, n)?.sublattice_basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        (0..a.len())
            .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
            .collect()
    }

    fn check(m: &[&[i64]], diag: &[i64]) {
        let m = big(m);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(mul(&mul(&s.u, &m), &s.v), s.d);
        assert_eq!(mul(&s.u, &s.u_inv), identity(m.len()));
        let want: Vec<BigInt> = diag.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.diagonal(), want);
    }

    #[test]
    fn identity_is_its_own_normal_form() {
        check(&[&[1, 0], &[0, 1]], &[1, 1]);
    }

    #[test]
    fn two_by_two_example() {
        check(&[&[2, 4], &[6, 8]], &[2, 4]);
    }

    #[test]
    fn single_row() {
        check(&[&[1, 2]], &[1]);
    }

    #[test]
    fn divisibility_needs_the_fixup_step() {
        check(&[&[2, 0], &[0, 3]], &[1, 6]);
    }

    #[test]
    fn quotient_by_a_line() {
        let q = lattice_quotient(&[LatticeVector::from([1, 2])], 2).unwrap();
        assert_eq!(q.quotient_rank(), 1);
        assert_eq!(q.apply(&LatticeVector::from([1, 2])), LatticeVector::from([0]));
        assert_eq!(q.apply(&LatticeVector::from([1, 0])).0[0].abs(), 2);
        assert_eq!(q.sublattice_basis.len(), 1);
        assert_eq!(q.section[0].dot(&q.sublattice_basis[0]), 1);
    }

    #[test]
    fn saturation_of_a_non_saturated_span() {
        let b = saturated_basis(&[LatticeVector::from([2, 0, 0]), LatticeVector::from([0, 2, 0])], 3).unwrap();
        let q = lattice_quotient(&b, 3).unwrap();
        assert_eq!(q.quotient_rank(), 1);
        assert_eq!(q.apply(&LatticeVector::from([1, 0, 0])), LatticeVector::from([0]));
        assert_eq!(q.apply(&LatticeVector::from([0, 0, 1])).0[0].abs(), 1);
    }
}
