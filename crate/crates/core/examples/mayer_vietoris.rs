//! Exactness of the Mayer–Vietoris sequence in intersection homology for a
//! star cover of the subdivided pinched torus.

use perverse::intersection::{mayer_vietoris_check, star_cover};
use perverse::pi::subdivision_vertex;
use perverse::{construct, fixtures, Perversity};

fn main() -> perverse::Result<()> {
    let k0 = fixtures::pinched_torus();
    let k = construct::barycentric_subdivide(&k0);
    let v = subdivision_vertex(&k0, fixtures::PINCH_POINT)?;
    let (a, b) = star_cover(&k, v)?;
    for p in [Perversity::zero(), Perversity::gm(vec![-1])] {
        let r = mayer_vietoris_check(&k, &p, &a, &b)?;
        println!("{}: exact {}", serde_json::to_string(&p).unwrap(), r.exact);
        for d in &r.degrees {
            println!("  j = {}: {} -> {} + {} -> {}", d.degree, d.intersection, d.first, d.second, d.total);
        }
    }
    Ok(())
}
