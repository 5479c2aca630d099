//! Perverse fundamental groups of the pinched torus and of the suspended
//! Poincaré sphere.

use perverse::group::FiniteGroupTarget;
use perverse::pi::{perverse_pi1_subdivided, pi0_perverse, quotient_counts, Pi1Options};
use perverse::{fixtures, Perversity};

fn main() -> perverse::Result<()> {
    let k = fixtures::pinched_torus();
    println!("pi0 classes (zero): {:?}", pi0_perverse(&k, &Perversity::zero())?.classes.len());
    for (name, p) in [("zero", Perversity::zero()), ("p(2) = -1", Perversity::gm(vec![-1]))] {
        let r = perverse_pi1_subdivided(&k, &p, None, 1, Pi1Options::default())?;
        println!("pinched torus, {name}: {} (abelianization {})", r.simplified, r.abelianization);
    }

    let sp = fixtures::suspension_poincare()?;
    let r = perverse_pi1_subdivided(&sp, &Perversity::gm(vec![0, 0, 1]), None, 1, Pi1Options::default())?;
    println!(
        "suspended Poincare sphere, p(4) = 1: {} raw generators, simplified {}",
        r.raw.generators, r.simplified
    );
    for q in quotient_counts(&r.simplified, &[FiniteGroupTarget::alternating5(), FiniteGroupTarget::symmetric3()], 10_000_000) {
        println!("  into {}: {} homomorphisms, {} surjections ({:?})", q.target, q.homomorphisms, q.surjections, q.status);
    }
    Ok(())
}
