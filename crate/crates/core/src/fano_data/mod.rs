//! The smooth toric Fano 4-fold table and its batch verification.

use num::Signed;
use rayon::prelude::*;

use crate::error::Result;
use crate::fan::{fan_from_primitive_data, Fan};
use crate::intersect::{ch2_dot_surface, is_2fano, is_fano, SurfaceValue};
use crate::io::parse_dataset;
use crate::ratlin::{frac, LatticeVector, Rational};

const BUILTIN_TABLE: &str = include_str!("../../data/fano4folds.csv");

/// One explicit row: primitive vectors, a witness surface `V(v_i, v_j)` and its `ch_2` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub name: String,
    pub rays: Vec<LatticeVector>,
    /// Primitive collections, when the family is listed with them.
    pub collections: Option<Vec<Vec<usize>>>,
    /// Zero-based ray indices of the surface's 2-cone.
    pub surface: [usize; 2],
    pub expected: Rational,
}

impl TableRow {
    /// Reconstructs the fan, from the primitive collections when known and from the face fan otherwise.
    pub fn fan(&self) -> Result<Fan> {
        fan_from_primitive_data(self.rays.clone(), self.collections.as_deref().unwrap_or(&[]))
    }
}

/// A family settled without computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoryRow {
    pub family: &'static str,
    pub reason: &'static str,
}

const PRODUCT: &str = "product of positive-dimensional Fano manifolds: ch2 vanishes on a product of curves";
const BUNDLE: &str = "projective bundle over a positive-dimensional Fano manifold: ch2 is not positive";

/// Families whose primitive vectors are not printed, with the structural argument covering them.
pub fn covered_by_theory() -> Vec<TheoryRow> {
    let mut out = Vec::new();
    let mut push = |names: &[&'static str], reason| out.extend(names.iter().map(|&family| TheoryRow { family, reason }));
    push(&["B_1", "B_2", "B_3", "B_4", "B_5"], BUNDLE);
    push(&["C_1", "C_2", "C_3", "C_4"], BUNDLE);
    push(
        &[
            "D_1", "D_2", "D_3", "D_4", "D_5", "D_6", "D_7", "D_8", "D_9", "D_10", "D_11", "D_12", "D_13", "D_14",
            "D_15", "D_16", "D_17", "D_18", "D_19",
        ],
        PRODUCT,
    );
    push(
        &["L_1", "L_2", "L_3", "L_4", "L_5", "L_6", "L_7", "L_8", "L_9", "L_10", "L_11", "L_12", "L_13"],
        PRODUCT,
    );
    push(&["H_8", "I_7", "I_11", "I_13", "Q_6", "Q_8", "Q_10", "Q_11", "Q_15", "K_4", "U_4", "U_5", "U_6"], BUNDLE);
    push(&["119", "120", "121"], PRODUCT);
    out
}

/// Members of the nef-`ch_2` list, with the vectors when they are available.
#[derive(Clone, Debug)]
pub struct NefEntry {
    pub name: &'static str,
    pub fan: Option<Fan>,
    pub skip_reason: Option<&'static str>,
}

pub fn nef_list() -> Vec<NefEntry> {
    const NAMES: [&str; 25] = [
        "P^4", "B_1", "B_2", "B_3", "B_4", "C_4", "D_1", "D_2", "D_3", "D_5", "D_6", "D_8", "D_9", "D_12", "D_13",
        "D_15", "L_1", "L_2", "L_3", "L_4", "L_5", "L_6", "L_7", "L_8", "L_9",
    ];
    NAMES
        .iter()
        .map(|&name| {
            if name == "P^4" {
                NefEntry { name, fan: Some(Fan::projective_space(4)), skip_reason: None }
            } else {
                NefEntry { name, fan: None, skip_reason: Some("primitive vectors not available for this family") }
            }
        })
        .collect()
}

/// The explicit rows shipped with the crate.
pub fn load_builtin_table() -> Vec<TableRow> {
    parse_dataset(BUILTIN_TABLE).expect("the embedded table is well formed")
}

/// `P^n` as a table row: every surface has `ch_2 = (n+1)/2`.
pub fn projective_control(n: usize) -> TableRow {
    let fan = Fan::projective_space(n);
    TableRow {
        name: format!("P^{n}"),
        rays: fan.rays().to_vec(),
        collections: Some(vec![(0..=n).collect()]),
        surface: [0, 1],
        expected: frac(n as i64 + 1, 2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Verified,
    Mismatch,
    Failed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReport {
    pub name: String,
    pub status: RowStatus,
    /// Smooth, complete and simplicial.
    pub fan_valid: bool,
    pub fano: bool,
    pub computed: Option<Rational>,
    pub expected: Rational,
    pub matched: bool,
    pub two_fano: Option<bool>,
    pub global_minimum: Option<SurfaceValue>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub rows: Vec<RowReport>,
    pub matches: usize,
    pub mismatches: usize,
    pub errors: usize,
}

impl VerificationReport {
    pub fn all_match(&self) -> bool {
        self.mismatches == 0 && self.errors == 0
    }
}

/// Verifies every row independently; the report keeps input order.
pub fn verify_table(rows: &[TableRow]) -> VerificationReport {
    let rows: Vec<RowReport> = rows.par_iter().map(verify_row).collect();
    let count = |f: fn(&RowStatus) -> bool| rows.iter().filter(|r| f(&r.status)).count();
    VerificationReport {
        matches: count(|s| *s == RowStatus::Verified),
        mismatches: count(|s| *s == RowStatus::Mismatch),
        errors: count(|s| matches!(s, RowStatus::Failed(_))),
        rows,
    }
}

pub fn verify_row(row: &TableRow) -> RowReport {
    let mut report = RowReport {
        name: row.name.clone(),
        status: RowStatus::Failed(String::new()),
        fan_valid: false,
        fano: false,
        computed: None,
        expected: row.expected.clone(),
        matched: false,
        two_fano: None,
        global_minimum: None,
    };
    if let Err(e) = fill(row, &mut report) {
        report.status = RowStatus::Failed(e.to_string());
    }
    report
}

fn fill(row: &TableRow, report: &mut RowReport) -> Result<()> {
    let fan = row.fan()?;
    report.fan_valid = fan.is_smooth() && fan.is_complete() && fan.is_simplicial();
    if !report.fan_valid {
        report.status = RowStatus::Failed("reconstructed fan is not smooth and complete".into());
        return Ok(());
    }
    report.fano = is_fano(&fan)?.fano;
    if !report.fano {
        report.status = RowStatus::Failed("reconstructed fan is not Fano".into());
        return Ok(());
    }
    let mut sigma = row.surface.to_vec();
    sigma.sort_unstable();
    let value = ch2_dot_surface(&fan, &sigma)?;
    report.matched = value == row.expected;
    report.computed = Some(value);
    let verdict = is_2fano(&fan)?;
    report.two_fano = Some(verdict.two_fano);
    report.global_minimum = Some(verdict.minimum);
    report.status = if report.matched { RowStatus::Verified } else { RowStatus::Mismatch };
    Ok(())
}

/// Whether the full scan found a surface with `ch_2 <= 0`.
pub fn has_nonpositive_surface(report: &RowReport) -> bool {
    report.global_minimum.as_ref().is_some_and(|m| !m.value.is_positive())
}

/// Minimum `ch_2` over the surfaces of a nef-list fan: zero means nef but not positive.
pub fn nef_minimum(fan: &Fan) -> Result<Rational> {
    Ok(is_2fano(fan)?.minimum.value)
}
