use num::{Signed, Zero};

use crate::error::{arg, Result};
use crate::ratlin::{dot, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// Linear program over free or nonnegative rational variables.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    nonneg: Vec<bool>,
    rows: Vec<(Vec<Rational>, Relation, Rational)>,
}

impl LinearProgram {
    /// A program in `n` free variables with no constraints.
    pub fn new(n: usize) -> Self {
        LinearProgram { nonneg: vec![false; n], rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.nonneg.len()
    }

    pub fn set_nonneg(&mut self, var: usize) -> &mut Self {
        self.nonneg[var] = true;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> Result<&mut Self> {
        if coeffs.len() != self.num_vars() {
            return arg(format!("constraint has {} coefficients, program has {} variables", coeffs.len(), self.num_vars()));
        }
        self.rows.push((coeffs, rel, rhs));
        Ok(self)
    }

    /// Maximizes `objective · x`.
    pub fn maximize(&self, objective: &[Rational]) -> Result<LpOutcome> {
        if objective.len() != self.num_vars() {
            return arg("objective length differs from variable count");
        }
        // column layout: one column per nonnegative variable, two per free one, then slacks
        let mut col_of = Vec::with_capacity(self.num_vars());
        let mut ncols = 0;
        for &nn in &self.nonneg {
            col_of.push(ncols);
            ncols += if nn { 1 } else { 2 };
        }
        let structural = ncols;
        let slacks = self.rows.iter().filter(|r| r.1 != Relation::Eq).count();
        ncols += slacks;

        let mut a = Vec::with_capacity(self.rows.len());
        let mut b = Vec::with_capacity(self.rows.len());
        let mut next_slack = structural;
        for (coeffs, rel, rhs) in &self.rows {
            let mut row = vec![Rational::zero(); ncols];
            for (v, c) in coeffs.iter().enumerate() {
                row[col_of[v]] = c.clone();
                if !self.nonneg[v] {
                    row[col_of[v] + 1] = -c.clone();
                }
            }
            match rel {
                Relation::Le => {
                    row[next_slack] = Rational::from_integer(1.into());
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = Rational::from_integer((-1).into());
                    next_slack += 1;
                }
                Relation::Eq => {}
            }
            a.push(row);
            b.push(rhs.clone());
        }
        let mut c = vec![Rational::zero(); ncols];
        for (v, o) in objective.iter().enumerate() {
            c[col_of[v]] = -o.clone();
            if !self.nonneg[v] {
                c[col_of[v] + 1] = o.clone();
            }
        }
        Ok(match minimize_standard(a, b, &c) {
            Standard::Infeasible => LpOutcome::Infeasible,
            Standard::Unbounded => LpOutcome::Unbounded,
            Standard::Optimal(y) => {
                let x: Vec<Rational> = (0..self.num_vars())
                    .map(|v| {
                        let p = y[col_of[v]].clone();
                        if self.nonneg[v] {
                            p
                        } else {
                            p - &y[col_of[v] + 1]
                        }
                    })
                    .collect();
                let value = dot(objective, &x);
                LpOutcome::Optimal { x, value }
            }
        })
    }

    /// Some point satisfying all constraints, if one exists.
    pub fn feasible_point(&self) -> Result<Option<Vec<Rational>>> {
        let zero = vec![Rational::zero(); self.num_vars()];
        Ok(match self.maximize(&zero)? {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        })
    }
}

enum Standard {
    Optimal(Vec<Rational>),
    Infeasible,
    Unbounded,
}

struct Tableau {
    t: Vec<Vec<Rational>>,
    obj: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for x in self.t[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, y) in self.obj.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule iterations over columns `0..allowed`; `false` when unbounded.
    fn run(&mut self, allowed: usize) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..allowed).find(|&j| self.obj[j].is_negative()) else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                if self.t[i][c].is_positive() {
                    let ratio = &self.t[i][rhs] / &self.t[i][c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }
}

/// Minimizes `c · x` subject to `A x = b`, `x >= 0`.
fn minimize_standard(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>, c: &[Rational]) -> Standard {
    let n = c.len();
    let m = a.len();
    for i in 0..m {
        if b[i].is_negative() {
            for x in a[i].iter_mut() {
                *x = -x.clone();
            }
            b[i] = -b[i].clone();
        }
    }
    let width = n + m + 1;
    let mut t = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = a[i].clone();
        row.resize(width, Rational::zero());
        row[n + i] = Rational::from_integer(1.into());
        row[width - 1] = b[i].clone();
        t.push(row);
    }
    let mut obj = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut tab = Tableau { t, obj, basis: (n..n + m).collect() };
    tab.run(n + m);
    if !tab.obj[width - 1].is_zero() {
        return Standard::Infeasible;
    }

    // drive remaining artificial variables out of the basis
    let mut i = 0;
    while i < tab.t.len() {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, j);
            } else {
                tab.t.remove(i);
                tab.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    let mut obj = vec![Rational::zero(); width];
    obj[..n].clone_from_slice(c);
    for (row, &bv) in tab.t.iter().zip(&tab.basis) {
        if !c[bv].is_zero() {
            for j in 0..width {
                obj[j] -= &c[bv] * &row[j];
            }
        }
    }
    for x in obj[n..n + m].iter_mut() {
        *x = Rational::zero();
    }
    tab.obj = obj;
    if !tab.run(n) {
        return Standard::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in tab.t.iter().zip(&tab.basis) {
        x[bv] = row[width - 1].clone();
    }
    Standard::Optimal(x)
}

/// Finds `c >= 0` with `sum c_i g_i = x`.
pub fn nonneg_solve(generators: &[Vec<Rational>], x: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if generators.iter().any(|g| g.len() != x.len()) {
        return arg("generators and target have different lengths");
    }
    let a: Vec<Vec<Rational>> = (0..x.len()).map(|i| generators.iter().map(|g| g[i].clone()).collect()).collect();
    let c = vec![Rational::zero(); generators.len()];
    Ok(match minimize_standard(a, x.to_vec(), &c) {
        Standard::Optimal(y) => Some(y),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{frac, int, to_rationals};

    fn gens(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter().map(|g| to_rationals(g)).collect()
    }

    #[test]
    fn coordinate_cone_membership() {
        let g = gens(&[&[1, 0], &[0, 1]]);
        assert_eq!(nonneg_solve(&g, &to_rationals(&[2, 3])).unwrap(), Some(to_rationals(&[2, 3])));
        assert_eq!(nonneg_solve(&g, &to_rationals(&[-1, 0])).unwrap(), None);
    }

    #[test]
    fn rotated_cone_membership() {
        let g = gens(&[&[1, 1], &[1, -1]]);
        assert_eq!(nonneg_solve(&g, &to_rationals(&[2, 0])).unwrap(), Some(to_rationals(&[1, 1])));
    }

    #[test]
    fn small_maximization() {
        // max x + y, x + 2y <= 4, 3x + y <= 6, x, y >= 0 -> (8/5, 6/5)
        let mut lp = LinearProgram::new(2);
        lp.set_nonneg(0).set_nonneg(1);
        lp.constrain(to_rationals(&[1, 2]), Relation::Le, int(4)).unwrap();
        lp.constrain(to_rationals(&[3, 1]), Relation::Le, int(6)).unwrap();
        match lp.maximize(&to_rationals(&[1, 1])).unwrap() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![frac(8, 5), frac(6, 5)]);
                assert_eq!(value, frac(14, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_variables_and_unboundedness() {
        let mut lp = LinearProgram::new(1);
        lp.constrain(to_rationals(&[1]), Relation::Ge, int(-3)).unwrap();
        assert_eq!(lp.maximize(&to_rationals(&[1])).unwrap(), LpOutcome::Unbounded);
        match lp.maximize(&to_rationals(&[-1])).unwrap() {
            LpOutcome::Optimal { x, .. } => assert_eq!(x, vec![int(-3)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_program() {
        let mut lp = LinearProgram::new(1);
        lp.constrain(to_rationals(&[1]), Relation::Ge, int(2)).unwrap();
        lp.constrain(to_rationals(&[1]), Relation::Le, int(1)).unwrap();
        assert_eq!(lp.maximize(&to_rationals(&[1])).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn degenerate_program_terminates() {
        // a classic cycling example for the largest-coefficient rule
        let mut lp = LinearProgram::new(4);
        for i in 0..4 {
            lp.set_nonneg(i);
        }
        lp.constrain(vec![frac(1, 4), int(-8), int(-1), int(9)], Relation::Le, int(0)).unwrap();
        lp.constrain(vec![frac(1, 2), int(-12), frac(-1, 2), int(3)], Relation::Le, int(0)).unwrap();
        lp.constrain(to_rationals(&[0, 0, 1, 0]), Relation::Le, int(1)).unwrap();
        let out = lp.maximize(&[frac(3, 4), int(-20), frac(1, 2), int(-6)]).unwrap();
        assert_eq!(out.value(), Some(&frac(5, 4)));
    }
}
