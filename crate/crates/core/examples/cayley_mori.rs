//! Cayley-Mori polytopes: building from fibers, detecting, and the split normal fan.

use toric_mmp::mmp::weakly_split;
use toric_mmp::polytope::{cayley_mori_build, cayley_mori_detect, is_cayley_s, normal_fan, FacetPresentation};
use toric_mmp::ratlin::{int, lattice_quotient, LatticeVector};

fn segment(len: i64) -> FacetPresentation {
    FacetPresentation::new(1, vec![[1].into(), [-1].into()], vec![int(0), int(len)]).unwrap()
}

fn main() -> toric_mmp::Result<()> {
    // three segments over the points 0, (0,1), (-2,1) of the plane
    let w = [LatticeVector::from([0, 1]), LatticeVector::from([-2, 1])];
    let p = cayley_mori_build(&[segment(1), segment(2), segment(2)], &w)?;
    let fan = normal_fan(&p)?;
    println!("normal fan: {} rays, smooth {}", fan.num_rays(), fan.is_smooth());
    for r in fan.rays() {
        println!("  {r}");
    }
    let d = cayley_mori_detect(&p)?.expect("built polytopes decompose");
    println!("detected over a {}-simplex; order {:?}", d.k(), is_cayley_s(&d));
    let q = lattice_quotient(&d.fiber_basis, p.dim())?;
    println!("weakly split: {}", weakly_split(&fan, &q.projection)?);

    let dilated = cayley_mori_build(&[segment(1), segment(3)], &[LatticeVector::from([2])])?;
    println!("dilated fiber: order {:?}", cayley_mori_detect(&dilated)?.and_then(|d| is_cayley_s(&d)));
    Ok(())
}
