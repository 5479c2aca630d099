//! The Poincaré homology sphere.
//!
//! [`quotient_triangulation`] builds a triangulation from scratch: the
//! 600-cell has the binary icosahedral group `2I ⊂ S³` as its vertex set, and
//! `2I` acts freely on it by left multiplication. The quotient of the second
//! barycentric subdivision is a simplicial complex homeomorphic to `S³/2I`;
//! greedy edge contractions under the link condition then shrink it. The
//! result ships as `data/poincare_sphere.json` and is checked by
//! [`verify_homology_sphere`] before use.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;
use std::sync::OnceLock;

use serde::Serialize;

use crate::chain::{homology_all, HomologyGroup, IntegerChainComplex};
use crate::complex::FilteredComplex;
use crate::error::{Error, Result};
use crate::group::{find_homomorphisms, FiniteGroupTarget, SearchStatus};
use crate::io;
use crate::perversity::Perversity;
use crate::pi::{default_basepoint, perverse_pi1, Pi1Options};
use crate::simplex::Simplex;

const DATA: &str = include_str!("../data/poincare_sphere.json");

type Quat = [f64; 4];

fn qmul(a: Quat, b: Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn key(q: Quat) -> [i64; 4] {
    q.map(|x| (x * 1e6).round() as i64)
}

/// The 120 unit quaternions of `2I`, sorted.
fn binary_icosahedral() -> Vec<Quat> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out: Vec<Quat> = Vec::new();
    for i in 0..4 {
        for s in [1.0, -1.0] {
            let mut q = [0.0; 4];
            q[i] = s;
            out.push(q);
        }
    }
    for m in 0..16 {
        out.push(std::array::from_fn(|i| if m >> i & 1 == 1 { -0.5 } else { 0.5 }));
    }
    let even: [[usize; 4]; 12] = [
        [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2], [1, 0, 3, 2], [1, 2, 0, 3], [1, 3, 2, 0],
        [2, 0, 1, 3], [2, 1, 3, 0], [2, 3, 0, 1], [3, 0, 2, 1], [3, 1, 0, 2], [3, 2, 1, 0],
    ];
    let base = [0.0, 0.5, 0.5 / phi, 0.5 * phi];
    for perm in even {
        for m in 0..8 {
            let signs = [1.0, if m & 1 == 1 { -1.0 } else { 1.0 }, if m & 2 == 2 { -1.0 } else { 1.0 }, if m & 4 == 4 { -1.0 } else { 1.0 }];
            let mut q = [0.0; 4];
            for i in 0..4 {
                q[perm[i]] = base[i] * signs[i];
            }
            out.push(q);
        }
    }
    out.sort_by_key(|q| key(*q));
    out
}

/// Faces of the 600-cell by dimension, as sorted vertex lists.
fn six_hundred_cell(v: &[Quat]) -> Vec<Vec<Vec<usize>>> {
    let n = v.len();
    let adj = |a: usize, b: usize| (0..4).map(|i| v[a][i] * v[b][i]).sum::<f64>() > 0.75;
    let mut faces: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|i| vec![i]).collect()];
    for d in 1..4 {
        let mut next = Vec::new();
        for f in &faces[d - 1] {
            for c in f[d - 1] + 1..n {
                if f.iter().all(|&x| adj(x, c)) {
                    let mut g = f.clone();
                    g.push(c);
                    next.push(g);
                }
            }
        }
        faces.push(next);
    }
    faces
}

/// `S³/2I` triangulated, before any contraction: the quotient of the second
/// barycentric subdivision of the 600-cell.
pub fn quotient_of_subdivision() -> Vec<[usize; 4]> {
    let q = binary_icosahedral();
    let index: HashMap<[i64; 4], usize> = q.iter().enumerate().map(|(i, x)| (key(*x), i)).collect();
    // left[g][x] = index of g·x
    let left: Vec<Vec<usize>> = q
        .iter()
        .map(|g| q.iter().map(|x| index[&key(qmul(*g, *x))]).collect())
        .collect();
    let inv: Vec<usize> = q.iter().map(|x| index[&key([x[0], -x[1], -x[2], -x[3]])]).collect();
    let faces = six_hundred_cell(&q);
    assert_eq!(faces.iter().map(Vec::len).collect::<Vec<_>>(), [120, 720, 1200, 600]);

    // a simplex of sd(600-cell) is a chain of faces; its orbit is named by
    // the least translate moving a vertex of its top face to the identity
    let orbit_key = |chain: &[&Vec<usize>]| -> Vec<Vec<usize>> {
        let top = chain.last().unwrap();
        top.iter()
            .map(|&v| {
                let g = &left[inv[v]];
                chain
                    .iter()
                    .map(|f| {
                        let mut t: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                        t.sort_unstable();
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap()
    };
    let mut ids: HashMap<Vec<Vec<usize>>, usize> = HashMap::new();
    let mut facets: BTreeSet<[usize; 4]> = BTreeSet::new();
    let perms = permutations4();
    for tet in &faces[3] {
        for p in &perms {
            // a tetrahedron of sd(600-cell): a full flag of faces of `tet`
            let flag: Vec<Vec<usize>> = (1..=4)
                .map(|r| {
                    let mut f: Vec<usize> = p[..r].iter().map(|&i| tet[i]).collect();
                    f.sort_unstable();
                    f
                })
                .collect();
            for p2 in &perms {
                // a tetrahedron of sd² : a full flag of faces of `flag`
                let mut out = [0usize; 4];
                for r in 1..=4 {
                    let mut sub: Vec<usize> = p2[..r].to_vec();
                    sub.sort_unstable();
                    let chain: Vec<&Vec<usize>> = sub.iter().map(|&i| &flag[i]).collect();
                    let k = orbit_key(&chain);
                    let next = ids.len();
                    out[r - 1] = *ids.entry(k).or_insert(next);
                }
                out.sort_unstable();
                facets.insert(out);
            }
        }
    }
    facets.into_iter().collect()
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

fn link_of(star: &[[usize; 4]], sigma: &[usize]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for t in star {
        if sigma.iter().all(|v| t.contains(v)) {
            let rest: Vec<usize> = t.iter().copied().filter(|v| !sigma.contains(v)).collect();
            for m in 1u32..(1 << rest.len()) {
                out.insert((0..rest.len()).filter(|i| m >> i & 1 == 1).map(|i| rest[i]).collect());
            }
        }
    }
    out
}

/// Contracts edges `ab` with `lk a ∩ lk b = lk ab` until none is left,
/// sweeping vertices in increasing order. The result is PL homeomorphic to
/// the input.
pub fn contract_edges(tets: Vec<[usize; 4]>) -> Vec<[usize; 4]> {
    let mut live: Vec<Option<[usize; 4]>> = tets.into_iter().map(Some).collect();
    let mut star: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, t) in live.iter().enumerate() {
        for &v in t.as_ref().unwrap() {
            star.entry(v).or_default().insert(i);
        }
    }
    let tets_of = |live: &[Option<[usize; 4]>], ids: &BTreeSet<usize>| -> Vec<[usize; 4]> {
        ids.iter().map(|&i| live[i].unwrap()).collect()
    };
    loop {
        let mut changed = false;
        let vertices: Vec<usize> = star.keys().copied().collect();
        for a in vertices {
            let Some(sa) = star.get(&a) else { continue };
            let mut ta = tets_of(&live, sa);
            let mut la = link_of(&ta, &[a]);
            let nbrs: BTreeSet<usize> = ta.iter().flatten().copied().filter(|&v| v > a).collect();
            for b in nbrs {
                let Some(sb) = star.get(&b) else { continue };
                if !ta.iter().any(|t| t.contains(&b)) {
                    continue;
                }
                let lb = link_of(&tets_of(&live, sb), &[b]);
                let lab = link_of(&ta, &[a, b]);
                if la.intersection(&lb).count() != lab.len() || !lab.iter().all(|s| la.contains(s) && lb.contains(s)) {
                    continue;
                }
                for i in star.remove(&b).unwrap() {
                    let t = live[i].unwrap();
                    if t.contains(&a) {
                        for v in t {
                            if let Some(s) = star.get_mut(&v) {
                                s.remove(&i);
                            }
                        }
                        live[i] = None;
                    } else {
                        let mut s = t.map(|v| if v == b { a } else { v });
                        s.sort_unstable();
                        live[i] = Some(s);
                        star.get_mut(&a).unwrap().insert(i);
                    }
                }
                changed = true;
                ta = tets_of(&live, &star[&a]);
                la = link_of(&ta, &[a]);
            }
        }
        if !changed {
            return live.into_iter().flatten().collect();
        }
    }
}

/// Builds the shipped triangulation from scratch.
pub fn quotient_triangulation() -> FilteredComplex {
    let tets = contract_edges(quotient_of_subdivision());
    let verts: BTreeMap<usize, usize> = tets
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let facets = tets
        .iter()
        .map(|t| Simplex::from_unsorted(t.iter().map(|v| verts[v]).collect()))
        .collect();
    FilteredComplex::trivial(facets).expect("a 3-complex")
}

/// What [`verify_homology_sphere`] established.
#[derive(Clone, Debug, Serialize)]
pub struct SphereCheck {
    pub f_vector: Vec<usize>,
    pub homology: Vec<HomologyGroup>,
    pub pi1_generators: usize,
    pub pi1_relators: usize,
    /// Permutation images of a surjection `π₁ → A₅`.
    pub a5_surjection: Vec<Vec<usize>>,
}

/// Checks that `k` is a closed 3-manifold (every triangle in two
/// tetrahedra, every vertex link a 2-sphere) with the integral homology of
/// `S³` and a fundamental group surjecting onto `A₅`.
pub fn verify_homology_sphere(k: &FilteredComplex) -> Result<SphereCheck> {
    let bad = |m: String| Err(Error::precondition(m));
    if k.facets().iter().any(|f| f.dim() != 3) {
        return bad("not a pure 3-dimensional complex".into());
    }
    let mut cofaces: HashMap<Simplex, usize> = HashMap::new();
    for f in k.facets() {
        for t in f.boundary_faces() {
            *cofaces.entry(t).or_default() += 1;
        }
    }
    if let Some((t, c)) = cofaces.iter().find(|(_, &c)| c != 2) {
        return bad(format!("triangle {t} lies in {c} tetrahedra"));
    }
    for v in k.vertices() {
        let link = k.link(v)?;
        let chi = link.euler_characteristic();
        if chi != 2 || link.components().len() != 1 {
            return bad(format!("link of vertex {v} is not a 2-sphere"));
        }
    }
    let homology = homology_all(&IntegerChainComplex::from_simplices(k.simplices()));
    let expected = [HomologyGroup::free(1), HomologyGroup::zero(), HomologyGroup::zero(), HomologyGroup::free(1)];
    if homology.len() != 4 || homology.iter().zip(&expected).any(|(a, b)| a != b) {
        return bad(format!("homology is not that of S³: {homology:?}"));
    }
    let pi1 = perverse_pi1(k, &Perversity::zero(), default_basepoint(k)?, Pi1Options::default())?;
    let search = find_homomorphisms(&pi1.simplified, &FiniteGroupTarget::alternating5(), true, 50_000_000);
    let Some(h) = search.homomorphisms.first() else {
        return bad(match search.status {
            SearchStatus::Complete => "no surjection of π₁ onto A₅".into(),
            SearchStatus::Inconclusive => "A₅ search exhausted its budget".into(),
        });
    };
    Ok(SphereCheck {
        f_vector: k.f_vector(),
        homology,
        pi1_generators: pi1.simplified.generators,
        pi1_relators: pi1.simplified.relators.len(),
        a5_surjection: h.clone(),
    })
}

/// The shipped triangulation of the Poincaré sphere, verified on first use.
pub fn poincare_sphere() -> Result<FilteredComplex> {
    static CHECKED: OnceLock<std::result::Result<(), Error>> = OnceLock::new();
    let k = io::complex_from_json(DATA)?;
    CHECKED.get_or_init(|| verify_homology_sphere(&k).map(|_| ())).clone()?;
    Ok(k)
}

/// Loads a user-supplied triangulation and verifies it.
pub fn load_verified(path: impl AsRef<Path>) -> Result<(FilteredComplex, SphereCheck)> {
    let k = io::read_complex(path)?;
    let check = verify_homology_sphere(&k)?;
    Ok((k, check))
}
