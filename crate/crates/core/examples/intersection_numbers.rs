//! Intersection numbers on a simplicial fan: moving divisors, curve degrees, `ch_2` on a surface.

use toric_mmp::fan::Fan;
use toric_mmp::intersect::{anticanonical, ch2_dot_surface, curve_number, is_fano, move_divisor};
use toric_mmp::ratlin::LatticeVector;

fn main() -> toric_mmp::Result<()> {
    // fiber rays u0, u1, u2 and base lifts v0, v1
    let rays: Vec<LatticeVector> =
        [[0, 0, -1], [0, 1, 2], [0, -1, 0], [1, 0, 0], [-1, 0, 1]].into_iter().map(LatticeVector::from).collect();
    let cones = [[0, 1], [0, 2], [1, 2]].iter().flat_map(|f| [3, 4].map(|v| vec![f[0], f[1], v])).collect();
    let fan = Fan::new(3, rays, cones)?;
    println!("simplicial {}, smooth {}", fan.is_simplicial(), fan.is_smooth());

    let k = anticanonical(&fan);
    println!("-K . V(u1,u2) = {}", curve_number(&fan, &k, &[1, 2])?);
    println!("ch2 . V(u2) = {}", ch2_dot_surface(&fan, &[2])?);

    let (moved, u) = move_divisor(&fan, 2, &[2])?;
    let show = |v: &[toric_mmp::ratlin::Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    println!("D_u2 ~ ({}) via u = ({})", show(moved.coefficients()), show(&u));
    println!("fano: {}", is_fano(&fan)?.fano);
    Ok(())
}
