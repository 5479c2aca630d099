//! Small named complexes used throughout the examples and tests.
//!
//! All fixtures have dense vertex ids. Except where noted they carry the
//! trivial filtration (no singular strata).

use std::collections::HashMap;

use serde::Serialize;

use crate::chain::{homology_all, HomologyGroup, IntegerChainComplex};
use crate::complex::FilteredComplex;
use crate::construct::{self, identify_vertices};
use crate::error::{Error, Result};
use crate::poincare;
use crate::simplex::Simplex;

fn s(v: &[usize]) -> Simplex {
    Simplex::new(v.to_vec()).expect("fixture simplex")
}

fn trivial(facets: Vec<Simplex>) -> FilteredComplex {
    FilteredComplex::trivial(facets).expect("fixture complex")
}

/// Boundary of the `(d+1)`-simplex on vertices `0..=d+1`.
pub fn sphere(d: usize) -> FilteredComplex {
    let full = Simplex::new((0..=d + 1).collect()).unwrap();
    trivial(full.boundary_faces())
}

/// The `n`-gon, `n ≥ 3`.
pub fn circle(n: usize) -> FilteredComplex {
    assert!(n >= 3, "a simplicial circle needs three vertices");
    trivial((0..n).map(|i| Simplex::from_unsorted(vec![i, (i + 1) % n])).collect())
}

/// Möbius's 7-vertex torus.
pub fn torus7() -> FilteredComplex {
    let mut facets = Vec::new();
    for i in 0..7 {
        facets.push(Simplex::from_unsorted(vec![i, (i + 1) % 7, (i + 3) % 7]));
        facets.push(Simplex::from_unsorted(vec![i, (i + 2) % 7, (i + 3) % 7]));
    }
    trivial(facets)
}

/// The 6-vertex real projective plane (half an icosahedron).
pub fn rp2_6() -> FilteredComplex {
    let facets = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [2, 4, 5],
        [1, 3, 5],
    ];
    trivial(facets.iter().map(|f| s(f)).collect())
}

/// Icosahedron: north pole 0, upper ring 1..=5, lower ring 6..=10, south pole 11.
pub fn icosahedron() -> Vec<Simplex> {
    let up = |i: usize| 1 + i % 5;
    let lo = |i: usize| 6 + i % 5;
    let mut facets = Vec::new();
    for i in 0..5 {
        facets.push(Simplex::from_unsorted(vec![0, up(i), up(i + 1)]));
        facets.push(Simplex::from_unsorted(vec![up(i), up(i + 1), lo(i)]));
        facets.push(Simplex::from_unsorted(vec![up(i + 1), lo(i), lo(i + 1)]));
        facets.push(Simplex::from_unsorted(vec![11, lo(i), lo(i + 1)]));
    }
    facets.sort();
    facets
}

/// The icosahedron with its two poles identified to the vertex `0`, filtered
/// with `X_0 = {0}`: 11 vertices, 30 edges, 20 triangles.
pub fn pinched_torus() -> FilteredComplex {
    let map = HashMap::from([(11, 0)]);
    let facets = identify_vertices(&icosahedron(), &map).expect("poles are not adjacent");
    FilteredComplex::new(2, facets, vec![vec![Simplex::vertex(0)]]).expect("pinched torus")
}

/// Pinch point of [`pinched_torus`].
pub const PINCH_POINT: usize = 0;

/// The pinched torus with `X_0 = X_1 = {0}` spelled out explicitly.
///
/// It has the same strata as [`pinched_torus`]; used to test coarsening
/// comparisons between filtrations that differ only in presentation.
pub fn pinched_torus_restated() -> FilteredComplex {
    let k = pinched_torus();
    let w = vec![Simplex::vertex(PINCH_POINT)];
    FilteredComplex::new(2, k.facets().to_vec(), vec![w.clone(), w]).unwrap()
}

/// Two tetrahedron boundaries glued at the vertex `0`, which forms `X_0`.
pub fn wedge_s2_s2() -> FilteredComplex {
    let a = sphere(2);
    let mut facets: Vec<Simplex> = a.facets().to_vec();
    facets.extend(a.facets().iter().map(|f| f.map(|v| if v == 0 { 0 } else { v + 3 })));
    FilteredComplex::new(2, facets, vec![vec![Simplex::vertex(0)]]).unwrap()
}

/// Staircase product `∂Δ³ × ∂Δ⁴`, a 5-manifold.
pub fn s2xs3() -> FilteredComplex {
    construct::product(&sphere(2), &sphere(3)).expect("product of trivially filtered spheres")
}

/// Two disjoint pinched tori.
pub fn two_pinched_tori() -> FilteredComplex {
    let a = pinched_torus();
    let b = a.shifted(a.vertices().len());
    construct::disjoint_union(&a, &b).unwrap()
}

/// Suspension of the Poincaré sphere, with the two apexes as `X_0`.
pub fn suspension_poincare() -> Result<FilteredComplex> {
    Ok(construct::suspension(&poincare::poincare_sphere()?))
}

/// Double suspension of the Poincaré sphere with the iterated conical
/// filtration: `X_0` is the second pair of apexes and `X_1 = … = X_4` is the
/// suspension circle through all four apexes.
pub fn double_suspension_poincare() -> Result<FilteredComplex> {
    Ok(construct::suspension(&suspension_poincare()?))
}

/// The same complex as `k` with the trivial filtration.
pub fn unfiltered(k: &FilteredComplex) -> FilteredComplex {
    FilteredComplex::new(k.formal_dim(), k.facets().to_vec(), Vec::new()).expect("same complex")
}

/// Builds a fixture from an expression such as `cone(torus7)`,
/// `sd(pinched_torus)`, `suspension(suspension(poincare))`,
/// `product(circle(6), pinched_torus)` or `trivial(suspension(poincare))`.
///
/// Atoms: `torus7`, `rp2_6`, `pinched_torus`, `pinched_torus_restated`,
/// `wedge_s2_s2`, `s2xs3`, `two_pinched_tori`, `poincare`, `point`,
/// `sphere(d)`, `circle(n)`. Operators: `cone`, `suspension`, `sd`,
/// `trivial`, `product`, `join` (the second factor is shifted to fresh ids).
pub fn parse(expr: &str) -> Result<FilteredComplex> {
    let mut p = Parser { s: expr.as_bytes(), at: 0 };
    let k = p.expr()?;
    p.ws();
    if p.at != p.s.len() {
        return Err(Error::malformed(format!("trailing input in fixture expression {expr:?}")));
    }
    Ok(k)
}

enum Arg {
    Num(usize),
    Complex(FilteredComplex),
}

struct Parser<'a> {
    s: &'a [u8],
    at: usize,
}

impl Parser<'_> {
    fn ws(&mut self) {
        while self.at < self.s.len() && self.s[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.s.get(self.at) == Some(&c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> String {
        self.ws();
        let start = self.at;
        while self.at < self.s.len() && (self.s[self.at].is_ascii_alphanumeric() || self.s[self.at] == b'_') {
            self.at += 1;
        }
        String::from_utf8_lossy(&self.s[start..self.at]).into_owned()
    }

    fn arg(&mut self) -> Result<Arg> {
        self.ws();
        if self.s.get(self.at).map_or(false, u8::is_ascii_digit) {
            let w = self.word();
            return w.parse().map(Arg::Num).map_err(|_| Error::malformed(format!("bad number {w:?}")));
        }
        self.expr().map(Arg::Complex)
    }

    fn expr(&mut self) -> Result<FilteredComplex> {
        let name = self.word();
        if name.is_empty() {
            return Err(Error::malformed("expected a fixture name"));
        }
        let mut args = Vec::new();
        if self.eat(b'(') {
            loop {
                args.push(self.arg()?);
                if self.eat(b')') {
                    break;
                }
                if !self.eat(b',') {
                    return Err(Error::malformed(format!("expected ',' or ')' in arguments of {name}")));
                }
            }
        }
        build(&name, args)
    }
}

fn build(name: &str, args: Vec<Arg>) -> Result<FilteredComplex> {
    let arity = |n: usize| -> Result<()> {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::malformed(format!("{name} takes {n} argument(s)")))
        }
    };
    let num = |a: &Arg| match a {
        Arg::Num(n) => Ok(*n),
        Arg::Complex(_) => Err(Error::malformed(format!("{name} expects a number"))),
    };
    let cx = |a: &Arg| match a {
        Arg::Complex(k) => Ok(k.clone()),
        Arg::Num(_) => Err(Error::malformed(format!("{name} expects a complex"))),
    };
    match name {
        "torus7" | "rp2_6" | "pinched_torus" | "pinched_torus_restated" | "wedge_s2_s2" | "s2xs3"
        | "two_pinched_tori" | "poincare" | "point" => {
            arity(0)?;
            Ok(match name {
                "torus7" => torus7(),
                "rp2_6" => rp2_6(),
                "pinched_torus" => pinched_torus(),
                "pinched_torus_restated" => pinched_torus_restated(),
                "wedge_s2_s2" => wedge_s2_s2(),
                "s2xs3" => s2xs3(),
                "two_pinched_tori" => two_pinched_tori(),
                "point" => construct::point(),
                _ => poincare::poincare_sphere()?,
            })
        }
        "sphere" => {
            arity(1)?;
            Ok(sphere(num(&args[0])?))
        }
        "circle" => {
            arity(1)?;
            let n = num(&args[0])?;
            if n < 3 {
                return Err(Error::malformed("circle needs at least 3 vertices"));
            }
            Ok(circle(n))
        }
        "cone" | "suspension" | "sd" | "trivial" => {
            arity(1)?;
            let k = cx(&args[0])?;
            Ok(match name {
                "cone" => construct::cone(&k),
                "suspension" => construct::suspension(&k),
                "sd" => construct::barycentric_subdivide(&k),
                _ => unfiltered(&k),
            })
        }
        "product" | "join" => {
            arity(2)?;
            let (a, b) = (cx(&args[0])?, cx(&args[1])?);
            if name == "product" {
                construct::product(&a, &b)
            } else {
                let shift = a.vertices().last().map_or(0, |v| v + 1);
                construct::join(&a, &b.shifted(shift))
            }
        }
        _ => Err(Error::malformed(format!("unknown fixture {name:?}"))),
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Stated in the literature for this space.
    Cited,
    /// Worked out by hand from the construction.
    Derived,
    /// Immediate from the definitions.
    Immediate,
    /// Established by the library's own verification pipeline.
    Verified,
}

/// An expected property of a named fixture.
#[derive(Clone, Debug, Serialize)]
pub struct Expectation {
    pub property: &'static str,
    pub expected: String,
    pub provenance: Provenance,
}

fn expect(property: &'static str, expected: &str, provenance: Provenance) -> Expectation {
    Expectation { property, expected: expected.to_string(), provenance }
}

/// The expected-invariants table of a fixture expression (after removing
/// whitespace). Expressions without a table get the structural checks only.
pub fn expectations(expr: &str) -> Vec<Expectation> {
    use Provenance::*;
    let key: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    match key.as_str() {
        "sphere(2)" => vec![
            expect("f_vector", "[4, 6, 4]", Immediate),
            expect("homology", "[Z, 0, Z]", Immediate),
        ],
        "torus7" => vec![
            expect("f_vector", "[7, 21, 14]", Derived),
            expect("homology", "[Z, Z^2, Z]", Derived),
            expect("strata_codims", "[0]", Immediate),
        ],
        "rp2_6" => vec![
            expect("f_vector", "[6, 15, 10]", Derived),
            expect("homology", "[Z, Z/2, 0]", Derived),
        ],
        "pinched_torus" | "pinched_torus_restated" => vec![
            expect("f_vector", "[11, 30, 20]", Derived),
            expect("euler", "1", Derived),
            expect("strata_codims", "[0, 2]", Derived),
            expect("homology", "[Z, Z, Z]", Derived),
        ],
        "wedge_s2_s2" => vec![
            expect("homology", "[Z, 0, Z^2]", Immediate),
            expect("strata_codims", "[0, 0, 2]", Immediate),
        ],
        "two_pinched_tori" => vec![expect("strata_codims", "[0, 0, 2, 2]", Immediate)],
        "s2xs3" => vec![
            expect("euler", "0", Immediate),
            expect("homology", "[Z, 0, Z, Z, 0, Z]", Derived),
        ],
        "cone(torus7)" => vec![
            expect("f_vector", "[8, 28, 35, 14]", Derived),
            expect("facets", "14", Derived),
            expect("strata_codims", "[0, 3]", Immediate),
        ],
        "poincare" => vec![
            expect("homology", "[Z, 0, 0, Z]", Verified),
            expect("closed_3_manifold", "true", Verified),
            expect("a5_surjection", "true", Verified),
        ],
        "suspension(poincare)" => vec![
            expect("vertices", "20", Derived),
            expect("facets", "220", Derived),
            expect("strata_codims", "[0, 4, 4]", Immediate),
            expect("homology", "[Z, 0, 0, 0, Z]", Derived),
        ],
        "suspension(suspension(poincare))" => vec![
            expect("vertices", "22", Derived),
            expect("strata_codims", "[0, 4, 4, 5, 5]", Derived),
        ],
        _ => Vec::new(),
    }
}

fn show_list<T: std::fmt::Display>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(T::to_string).collect::<Vec<_>>().join(", "))
}

fn actual(k: &FilteredComplex, property: &str) -> Result<String> {
    Ok(match property {
        "f_vector" => show_list(&k.f_vector()),
        "euler" => k.euler_characteristic().to_string(),
        "vertices" => k.vertices().len().to_string(),
        "facets" => k.facets().len().to_string(),
        "strata_codims" => {
            let mut c: Vec<usize> = k.strata().iter().map(|s| s.codim).collect();
            c.sort_unstable();
            show_list(&c)
        }
        "homology" => {
            let h: Vec<HomologyGroup> = homology_all(&IntegerChainComplex::from_simplices(k.simplices()));
            show_list(&h)
        }
        "closed_3_manifold" | "a5_surjection" => poincare::verify_homology_sphere(k).is_ok().to_string(),
        _ => return Err(Error::malformed(format!("unknown fixture property {property}"))),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureCheck {
    pub property: String,
    pub expected: String,
    pub actual: String,
    pub provenance: Provenance,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub fixture: String,
    pub checks: Vec<FixtureCheck>,
    pub pass: bool,
}

/// Builds a fixture and runs its expected-invariants table, plus the
/// structural checks every fixture must pass (validity and `∂² = 0`).
pub fn verify(expr: &str) -> Result<(FilteredComplex, FixtureReport)> {
    let k = parse(expr)?;
    let mut checks = vec![
        FixtureCheck {
            property: "valid".into(),
            expected: "true".into(),
            actual: k.validate().valid.to_string(),
            provenance: Provenance::Immediate,
            pass: k.validate().valid,
        },
        {
            let ok = IntegerChainComplex::from_simplices(k.simplices()).check_boundary_squared();
            FixtureCheck {
                property: "boundary_squared_zero".into(),
                expected: "true".into(),
                actual: ok.to_string(),
                provenance: Provenance::Immediate,
                pass: ok,
            }
        },
    ];
    for e in expectations(expr) {
        let a = actual(&k, e.property)?;
        checks.push(FixtureCheck {
            property: e.property.to_string(),
            pass: a == e.expected,
            expected: e.expected,
            actual: a,
            provenance: e.provenance,
        });
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok((k, FixtureReport { fixture: expr.to_string(), checks, pass }))
}

/// Every expression with an expectations table.
pub const CORPUS: &[&str] = &[
    "sphere(2)",
    "torus7",
    "rp2_6",
    "pinched_torus",
    "pinched_torus_restated",
    "wedge_s2_s2",
    "two_pinched_tori",
    "s2xs3",
    "cone(torus7)",
    "poincare",
    "suspension(poincare)",
    "suspension(suspension(poincare))",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(sphere(2).f_vector(), vec![4, 6, 4]);
        assert_eq!(torus7().f_vector(), vec![7, 21, 14]);
        assert_eq!(rp2_6().f_vector(), vec![6, 15, 10]);
        assert_eq!(pinched_torus().f_vector(), vec![11, 30, 20]);
        assert_eq!(pinched_torus().euler_characteristic(), 1);
        assert_eq!(wedge_s2_s2().euler_characteristic(), 3);
        assert_eq!(s2xs3().euler_characteristic(), 0);
    }

    #[test]
    fn pinched_torus_strata() {
        let k = pinched_torus();
        let codims: Vec<usize> = k.strata().iter().map(|s| s.codim).collect();
        assert_eq!(codims.len(), 2);
        assert!(codims.contains(&0) && codims.contains(&2));
        assert_eq!(two_pinched_tori().strata().len(), 4);
    }

    #[test]
    fn parser() {
        assert_eq!(parse("cone( torus7 )").unwrap(), construct::cone(&torus7()));
        assert_eq!(parse("sphere(3)").unwrap(), sphere(3));
        assert!(parse("cone(torus7").is_err());
        assert!(parse("klein").is_err());
        assert!(parse("circle(torus7)").is_err());
        assert_eq!(parse("join(point, point)").unwrap().f_vector(), vec![2, 1]);
    }

    #[test]
    fn small_corpus_verifies() {
        for e in CORPUS.iter().filter(|e| !e.contains("poincare")) {
            let (_, r) = verify(e).unwrap();
            assert!(r.pass, "{e}: {:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        }
    }

    #[test]
    fn rp2_is_a_closed_surface() {
        let k = rp2_6();
        for (_, e) in k.simplices_of_dim(1) {
            let n = k.simplices_of_dim(2).filter(|(_, t)| e.is_face_of(t)).count();
            assert_eq!(n, 2);
        }
    }
}
