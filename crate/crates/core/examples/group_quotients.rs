//! Tietze simplification and homomorphisms into finite groups.

use perverse::group::{find_homomorphisms, FiniteGroupTarget, GroupPresentation};

fn main() -> perverse::Result<()> {
    // binary icosahedral group: (st)^2 = s^3 = t^5
    let g = GroupPresentation::new(2, vec![vec![1, 2, 1, 2, -1, -1, -1], vec![1, 1, 1, -2, -2, -2, -2, -2]])?;
    println!("{g}");
    println!("abelianization {}", g.abelianization());
    let a5 = FiniteGroupTarget::alternating5();
    let r = find_homomorphisms(&g, &a5, true, 10_000_000);
    println!("{} surjections onto A5 ({:?}), e.g. {:?}", r.count, r.status, r.homomorphisms.first());

    let messy = GroupPresentation::new(3, vec![vec![1, 2], vec![2, -3], vec![1, 3, 1, 3, 1, 3]])?;
    println!("{messy}  simplifies to  {}", messy.simplify(1000));
    Ok(())
}
