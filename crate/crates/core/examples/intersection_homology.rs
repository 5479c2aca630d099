//! Intersection homology of a cone: it agrees with the base below the
//! cut-off degree `Dp(apex)` and vanishes above it.

use perverse::intersection::intersection_homology_all;
use perverse::{construct, fixtures, Perversity};

fn main() -> perverse::Result<()> {
    let base = fixtures::torus7();
    let cone = construct::cone(&base);
    for (name, p) in [("zero", Perversity::zero()), ("top", Perversity::top()), ("lower middle", Perversity::lower_middle(3))] {
        let below = intersection_homology_all(&base, &p)?;
        let above = intersection_homology_all(&cone, &p)?;
        let show = |h: &[perverse::chain::HomologyGroup]| h.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
        println!("{name:>12}: IH(T) = [{}]   IH(cT) = [{}]", show(&below), show(&above));
    }
    Ok(())
}
