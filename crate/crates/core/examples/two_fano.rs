//! Positivity of the second Chern character on invariant surfaces.

use toric_mmp::fan::{star_subdivision, Fan};
use toric_mmp::intersect::is_2fano;
use toric_mmp::ratlin::LatticeVector;

fn main() -> toric_mmp::Result<()> {
    for n in 2..=5 {
        let v = is_2fano(&Fan::projective_space(n))?;
        println!("P^{n}: 2-Fano {}, {} surfaces, minimum {}", v.two_fano, v.values.len(), v.minimum.value);
    }
    // blowing up P^3 along a coordinate line
    let f = star_subdivision(&Fan::projective_space(3), &LatticeVector::from([1, 1, 0]))?;
    let v = is_2fano(&f)?;
    println!("Bl_line P^3: 2-Fano {}, nef {}, minimum {} on V{:?}", v.two_fano, v.nef, v.minimum.value, v.minimum.surface);
    // a product has ch2 = 0 on a product of curves
    let p = Fan::product(&Fan::projective_space(2), &Fan::projective_space(2));
    let v = is_2fano(&p)?;
    println!("P^2 x P^2: 2-Fano {}, nef {}, minimum {}", v.two_fano, v.nef, v.minimum.value);
    Ok(())
}
