//! Cones, suspensions, joins, products and subdivisions carry filtrations.

use perverse::{construct, fixtures};

fn summary(name: &str, k: &perverse::FilteredComplex) {
    let codims: Vec<usize> = k.strata().iter().map(|s| s.codim).collect();
    println!("{name:<28} formal dim {}, f-vector {:?}, strata codims {codims:?}", k.formal_dim(), k.f_vector());
}

fn main() -> perverse::Result<()> {
    summary("cone(torus7)", &construct::cone(&fixtures::torus7()));
    summary("suspension(rp2_6)", &construct::suspension(&fixtures::rp2_6()));
    summary("join(S0, S0)", &construct::join(&construct::s0(), &construct::s0().shifted(2))?);
    summary("circle(6) x pinched_torus", &construct::product(&fixtures::circle(6), &fixtures::pinched_torus())?);
    summary("sd(pinched_torus)", &construct::barycentric_subdivide(&fixtures::pinched_torus()));

    // the same thing through fixture expressions
    summary("parsed", &fixtures::parse("suspension(cone(sphere(1)))")?);
    Ok(())
}
