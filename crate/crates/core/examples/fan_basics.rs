//! Fans: validation, walls, primitive collections, star subdivision.

use toric_mmp::fan::{primitive_collections, star_subdivision, wall_classification, walls, Fan};
use toric_mmp::ratlin::LatticeVector;

fn main() -> toric_mmp::Result<()> {
    let plane = Fan::projective_space(2);
    println!("P^2: {:?}", plane.report());

    // blow up the torus-fixed point of cone(e1, e2)
    let blown_up = star_subdivision(&plane, &LatticeVector::from([1, 1]))?;
    println!("blow-up: {} rays, picard number {}", blown_up.num_rays(), blown_up.picard_number());
    for w in walls(&blown_up)? {
        let (alpha, beta) = wall_classification(&w);
        println!("  wall {:?}: relation {:?}, alpha {alpha}, beta {beta}", w.rays, w.relation.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    for p in primitive_collections(&blown_up)? {
        println!("  primitive collection {:?} -> cone {:?}, degree {}", p.members, p.sigma, p.degree);
    }

    // two cones overlapping in their interiors
    let bad = Fan::new(2, vec![[1, 0].into(), [0, 1].into(), [1, 1].into()], vec![vec![0, 1], vec![0, 2]]);
    println!("overlapping cones: {}", bad.unwrap_err());
    Ok(())
}
