//! Comparing the homology of full simplices with intersection homology.
//!
//! On the cone over the torus with the zero perversity the straight model
//! sees the torus's second homology while intersection homology does not.
//! On the pinched torus the straight model already fails in degree 1, but
//! adding fan cells at the pinch point repairs degrees 0 and 1.

use perverse::allowability::gajer_subcomplex;
use perverse::chain::{homology, IntegerChainComplex};
use perverse::intersection::{comparison_map, Model};
use perverse::{construct, fixtures, Perversity};

fn main() -> perverse::Result<()> {
    let zero = Perversity::zero();
    let cone = construct::cone(&fixtures::torus7());
    let g = gajer_subcomplex(&cone, &zero)?;
    println!("H_2 of full simplices of c(T): {}", homology(&IntegerChainComplex::from_simplices(g.simplices()), 2));
    let j2 = comparison_map(&cone, &zero, 2, Model::Straight)?;
    println!("J_2: {} -> {}, injective {}", j2.map.source, j2.map.target, j2.map.injective);

    let k = construct::barycentric_subdivide(&fixtures::pinched_torus());
    for model in [Model::Straight, Model::Augmented] {
        for j in 0..2 {
            let r = comparison_map(&k, &zero, j, model)?;
            println!("{model:?} J_{j}: {} -> {}, isomorphism {}", r.map.source, r.map.target, r.map.isomorphism);
        }
    }
    Ok(())
}
