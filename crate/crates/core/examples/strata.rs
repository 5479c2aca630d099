//! Filtrations, depths and strata of the pinched torus.

use perverse::fixtures;

fn main() {
    let k = fixtures::pinched_torus();
    println!("f-vector {:?}, euler {}", k.f_vector(), k.euler_characteristic());
    for s in k.strata() {
        println!("stratum {}: dim {}, codim {}, {} simplices", s.id, s.dim, s.codim, s.simplices.len());
    }
    let r = k.validate();
    println!("valid {}, warnings {:?}", r.valid, r.warnings);

    // contact of an edge through the pinch point with the singular stratum
    let edge = perverse::Simplex::new(vec![0, 1]).unwrap();
    let singular = k.singular_strata().next().unwrap().id;
    println!("contact dim of {edge} with stratum {singular}: {}", k.contact_dim(&edge, singular).unwrap());
}
