//! Augmented-model invariants of the pinched torus after zero, one and two
//! barycentric subdivisions.

use perverse::pi::{subdivision_stability, Pi1Options};
use perverse::{fixtures, Perversity};

fn main() -> perverse::Result<()> {
    let k = fixtures::pinched_torus();
    for p in [Perversity::zero(), Perversity::gm(vec![-1])] {
        let r = subdivision_stability(&k, &p, 2, Pi1Options::default(), 1_000_000)?;
        println!("{}", serde_json::to_string(&p).unwrap());
        for l in &r.levels {
            println!("  sd^{}: H_0 = {}, H_1 = {}, pi_1 = {}", l.times, l.h0, l.h1, l.pi1);
        }
        println!("  stable: {}", r.stable);
    }
    Ok(())
}
