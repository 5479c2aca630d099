//! The perverse fundamental group depends on the filtration: the double
//! suspension of the Poincaré sphere with its conical filtration versus the
//! same complex unfiltered (it is a topological 5-sphere).

use perverse::pi::{compare_coarsening_pi1, Pi1Options};
use perverse::{fixtures, Perversity};

fn main() -> perverse::Result<()> {
    let fine = fixtures::double_suspension_poincare()?;
    let coarse = fixtures::unfiltered(&fine);
    let p = Perversity::gm(vec![0, 1, 1, 1]);
    let r = compare_coarsening_pi1(&fine, &coarse, &p, 0, Pi1Options::default(), 10_000_000)?;
    println!("exceptional strata: {:?}", r.exceptional_strata);
    for (name, side) in [("fine", &r.fine), ("coarse", &r.coarse)] {
        println!("{name}: {}", side.pi1.simplified);
        for q in &side.quotients {
            println!("  {}: {} surjections", q.target, q.surjections);
        }
    }
    Ok(())
}
