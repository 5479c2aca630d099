//! Rebuilds `data/poincare_sphere.json` from the 600-cell and prints what
//! the verifier finds.
//!
//!     cargo run --release --example poincare_data [output-path]

use perverse::{io, poincare};

fn main() -> perverse::Result<()> {
    let k = poincare::quotient_triangulation();
    let check = poincare::verify_homology_sphere(&k)?;
    println!("f-vector {:?}", check.f_vector);
    println!("pi1 simplified to {} generators, {} relators", check.pi1_generators, check.pi1_relators);
    println!("surjection onto A5: {:?}", check.a5_surjection);
    if let Some(path) = std::env::args().nth(1) {
        io::write_complex(&path, &k)?;
        println!("wrote {path}");
    }
    Ok(())
}
