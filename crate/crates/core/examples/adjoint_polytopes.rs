//! Adjoint polytopes, nef and effective thresholds, and the core with its projection.

use toric_mmp::polytope::{adjoint, core_and_projection, thresholds, vertices, FacetPresentation};
use toric_mmp::ratlin::{frac, int, LatticeVector, Rational};

fn show(p: &FacetPresentation) -> String {
    let vs = vertices(p).map(|v| v.vertices).unwrap_or_default();
    vs.iter().map(|v| format!("({})", v.iter().map(Rational::to_string).collect::<Vec<_>>().join(", "))).collect::<Vec<_>>().join(" ")
}

fn main() -> toric_mmp::Result<()> {
    let hexagon = FacetPresentation::new(
        2,
        vec![[1, 0].into(), [1, 1].into(), [0, 1].into(), [-1, 0].into(), [-1, -1].into(), [0, -1].into()],
        vec![int(1); 6],
    )?;
    let t = thresholds(&hexagon)?;
    println!("hexagon: nef {}, effective {}", t.nef, t.effective);
    for s in [int(0), frac(1, 2), int(1)] {
        println!("  P^({s}): {}", show(&adjoint(&hexagon, &s)?));
    }

    // a trapezoid collapses to a segment, which projects to a point
    let normals: Vec<LatticeVector> = vec![[0, 1].into(), [0, -1].into(), [1, 0].into(), [-1, -1].into()];
    let trapezoid = FacetPresentation::new(2, normals, vec![int(0), int(1), int(0), int(3)])?;
    let t = thresholds(&trapezoid)?;
    println!("trapezoid: nef {}, effective {}", t.nef, t.effective);
    let c = core_and_projection(&trapezoid)?;
    println!("  core {} of dimension {}, projected polytope has {} facets", show(&c.core), c.core_dim(), c.q.len());
    Ok(())
}
