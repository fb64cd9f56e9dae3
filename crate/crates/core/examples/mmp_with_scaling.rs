//! The MMP with scaling on polarized toric surfaces, cross-checked against adjoint polytopes.

use toric_mmp::fan::Fan;
use toric_mmp::intersect::TorusDivisor;
use toric_mmp::io::emit_trace;
use toric_mmp::mmp::{run_mmp_scaling, run_mmp_scaling_with, MmpOptions};
use toric_mmp::polytope::{polytope_of_divisor, FacetPresentation};
use toric_mmp::ratlin::{frac, int, Rational};

fn main() -> toric_mmp::Result<()> {
    // Bl_p(P^1 x P^1); rays D_1, D_2, D_3, E, D_4
    let fan = Fan::new(
        2,
        vec![[1, 0].into(), [0, 1].into(), [-1, 0].into(), [-1, -1].into(), [0, -1].into()],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]],
    )?;
    let polarizations: [[Rational; 5]; 2] =
        [[int(2), int(1), int(2), frac(5, 2), int(1)], [int(6), int(5), int(6), int(2), int(5)]];
    for l in polarizations {
        let p = polytope_of_divisor(&fan, &TorusDivisor::new(l.to_vec()))?;
        println!("{}", emit_trace(&run_mmp_scaling(&p)?));
    }

    let hexagon = FacetPresentation::new(
        2,
        vec![[1, 0].into(), [1, 1].into(), [0, 1].into(), [-1, 0].into(), [-1, -1].into(), [0, -1].into()],
        vec![int(1); 6],
    )?;
    println!("hexagon: {}", run_mmp_scaling(&hexagon).unwrap_err());
    let forced = run_mmp_scaling_with(&hexagon, MmpOptions { force: true })?;
    print!("{}", emit_trace(&forced));
    Ok(())
}
