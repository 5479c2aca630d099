//! Filtration-aware constructors.
//!
//! All constructors return complexes with dense vertex ids. Cones and
//! suspensions use the open-cone filtration `(cX)_i = c(X_{i-1})`: the apex
//! sits in `X_0`, and every other simplex moves up one level, so old strata
//! keep their codimension.

use std::collections::{BTreeSet, HashMap};

use crate::complex::{closure, FilteredComplex};
use crate::error::{Error, Result};
use crate::simplex::Simplex;

fn depth_pairs(k: &FilteredComplex) -> impl Iterator<Item = (&Simplex, usize)> {
    k.simplices().iter().enumerate().map(move |(i, s)| (s, k.depth_at(i)))
}

fn dense(k: &FilteredComplex) -> FilteredComplex {
    let verts = k.vertices();
    if verts.iter().enumerate().all(|(i, &v)| i == v) {
        k.clone()
    } else {
        k.relabeled_dense().0
    }
}

/// Cone with a fresh apex (the largest vertex id) and the open-cone
/// filtration. Formal dimension goes up by one.
pub fn cone(k: &FilteredComplex) -> FilteredComplex {
    let k = dense(k);
    let apex = k.vertices().len();
    let mut pairs = vec![(Simplex::vertex(apex), 0)];
    for (s, d) in depth_pairs(&k) {
        pairs.push((s.clone(), d + 1));
        pairs.push((s.join(&Simplex::vertex(apex)), d + 1));
    }
    FilteredComplex::from_depths(k.formal_dim() + 1, pairs)
}

/// Two cones glued along the base; the apexes are the two largest ids.
pub fn suspension(k: &FilteredComplex) -> FilteredComplex {
    let k = dense(k);
    let n = k.vertices().len();
    let mut pairs = vec![(Simplex::vertex(n), 0), (Simplex::vertex(n + 1), 0)];
    for (s, d) in depth_pairs(&k) {
        pairs.push((s.clone(), d + 1));
        for apex in [n, n + 1] {
            pairs.push((s.join(&Simplex::vertex(apex)), d + 1));
        }
    }
    FilteredComplex::from_depths(k.formal_dim() + 1, pairs)
}

/// Simplicial join of complexes on disjoint vertex sets.
///
/// Simplices of either factor keep their depth; `σ ∗ τ` gets
/// `depth(σ) + depth(τ) + 1`, and the formal dimension is `n_a + n_b + 1`.
pub fn join(a: &FilteredComplex, b: &FilteredComplex) -> Result<FilteredComplex> {
    let va: BTreeSet<usize> = a.vertices().into_iter().collect();
    let shared: Vec<usize> = b.vertices().into_iter().filter(|v| va.contains(v)).collect();
    if !shared.is_empty() {
        return Err(Error::SharedVertices(shared));
    }
    let mut pairs: Vec<(Simplex, usize)> = Vec::new();
    pairs.extend(depth_pairs(a).map(|(s, d)| (s.clone(), d)));
    pairs.extend(depth_pairs(b).map(|(s, d)| (s.clone(), d)));
    for (sa, da) in depth_pairs(a) {
        for (sb, db) in depth_pairs(b) {
            pairs.push((sa.join(sb), da + db + 1));
        }
    }
    let joined = FilteredComplex::from_depths(a.formal_dim() + b.formal_dim() + 1, pairs);
    Ok(dense(&joined))
}

/// Staircase triangulation of `Y × X` for a trivially filtered `Y`.
///
/// Vertex `(y, x)` gets id `y · |V_X| + x`. The filtration is
/// `(Y × X)_{i + dim Y} = Y × X_i`, which keeps codimensions unchanged.
pub fn product(y: &FilteredComplex, x: &FilteredComplex) -> Result<FilteredComplex> {
    let ny = y.formal_dim();
    if (0..y.simplices().len()).any(|i| y.depth_at(i) != ny) {
        return Err(Error::precondition(
            "first factor of a product must be trivially filtered",
        ));
    }
    let y = dense(y);
    let x = dense(x);
    let nvx = x.vertices().len();
    let mut gens: BTreeSet<Simplex> = BTreeSet::new();
    for fy in y.facets() {
        for fx in x.facets() {
            let (p, q) = (fy.dim(), fx.dim());
            // lattice paths from (0,0) to (p,q): choose which steps move in y
            for ysteps in combinations(p + q, p) {
                let (mut i, mut j) = (0usize, 0usize);
                let mut verts = vec![fy.vertices()[0] * nvx + fx.vertices()[0]];
                for step in 0..p + q {
                    if ysteps.contains(&step) {
                        i += 1;
                    } else {
                        j += 1;
                    }
                    verts.push(fy.vertices()[i] * nvx + fx.vertices()[j]);
                }
                gens.insert(Simplex::from_unsorted(verts));
            }
        }
    }
    let all = closure(&gens);
    let mut pairs = Vec::with_capacity(all.len());
    for s in all {
        let proj = Simplex::from_unsorted(s.vertices().iter().map(|v| v % nvx).collect());
        let d = x.depth(&proj)?;
        pairs.push((s, d + ny));
    }
    Ok(dense(&FilteredComplex::from_depths(ny + x.formal_dim(), pairs)))
}

fn combinations(n: usize, k: usize) -> Vec<BTreeSet<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<BTreeSet<usize>>) {
        if cur.len() == k {
            out.push(cur.iter().copied().collect());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Barycentric subdivision: the vertices are the simplices of `K` (vertex id
/// = position in [`FilteredComplex::simplices`]), the simplices are chains in
/// the face poset, and `X_i' = sd(X_i)`.
pub fn barycentric_subdivide(k: &FilteredComplex) -> FilteredComplex {
    let mut flags: BTreeSet<Simplex> = BTreeSet::new();
    for f in k.facets() {
        for perm in permutations(f.vertices()) {
            let mut verts = Vec::with_capacity(perm.len());
            for r in 1..=perm.len() {
                let face = Simplex::from_unsorted(perm[..r].to_vec());
                verts.push(k.index_of(&face).expect("face of a facet"));
            }
            flags.insert(Simplex::from_unsorted(verts));
        }
    }
    let all = closure(&flags);
    let pairs = all
        .into_iter()
        .map(|chain| {
            // depth of a chain is the depth of its largest element
            let top = chain
                .vertices()
                .iter()
                .map(|&i| k.depth_at(i))
                .max()
                .unwrap();
            (chain, top)
        })
        .collect();
    FilteredComplex::from_depths(k.formal_dim(), pairs)
}

/// Repeated barycentric subdivision.
pub fn subdivide_times(k: &FilteredComplex, times: usize) -> FilteredComplex {
    let mut out = k.clone();
    for _ in 0..times {
        out = barycentric_subdivide(&out);
    }
    out
}

fn permutations(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// `K ∖ X_j` modelled by the full subcomplex on the vertices of depth `> j`,
/// with the induced filtration.
#[derive(Clone, Debug)]
pub struct OpenComplement {
    pub complex: FilteredComplex,
    /// Vertex id in the input complex (after subdivision, if any) of each
    /// vertex of `complex`.
    pub vertex_map: Vec<usize>,
    /// Whether a barycentric subdivision was applied first.
    pub subdivided: bool,
}

/// Removes the skeleton `X_j`; `j < 0` removes nothing.
///
/// `X_j` must be a full subcomplex. When it is not and `auto_subdivide` is
/// set, the complex is subdivided once (after which every skeleton is full);
/// otherwise an error is returned.
pub fn open_complement(k: &FilteredComplex, j: i64, auto_subdivide: bool) -> Result<OpenComplement> {
    if j < 0 {
        let (c, map) = k.relabeled_dense();
        return Ok(OpenComplement { complex: c, vertex_map: map, subdivided: false });
    }
    let j = j as usize;
    let (base, subdivided) = if k.is_skeleton_full(j) {
        (k.clone(), false)
    } else if auto_subdivide {
        (barycentric_subdivide(k), true)
    } else {
        return Err(Error::precondition(format!("skeleton X_{j} is not full")));
    };
    let keep: BTreeSet<usize> = base
        .vertices()
        .into_iter()
        .filter(|&v| base.vertex_depth(v).unwrap() > j)
        .collect();
    let sub = base.full_subcomplex(&keep);
    let (complex, vertex_map) = sub.relabeled_dense();
    Ok(OpenComplement { complex, vertex_map, subdivided })
}

/// Disjoint union of two complexes of the same formal dimension; the second
/// complex's vertices are shifted past the first's.
pub fn disjoint_union(a: &FilteredComplex, b: &FilteredComplex) -> Result<FilteredComplex> {
    if a.formal_dim() != b.formal_dim() {
        return Err(Error::precondition("disjoint union needs equal formal dimensions"));
    }
    let a = dense(a);
    let b = dense(b).shifted(a.vertices().len());
    let pairs = depth_pairs(&a)
        .chain(depth_pairs(&b))
        .map(|(s, d)| (s.clone(), d))
        .collect();
    Ok(FilteredComplex::from_depths(a.formal_dim(), pairs))
}

/// Identifies vertices according to `map` (old id → new id), keeping the
/// trivial filtration. Fails if two vertices of one simplex are identified.
pub fn identify_vertices(facets: &[Simplex], map: &HashMap<usize, usize>) -> Result<Vec<Simplex>> {
    facets
        .iter()
        .map(|f| {
            let verts: Vec<usize> = f.vertices().iter().map(|v| *map.get(v).unwrap_or(v)).collect();
            let s = Simplex::from_unsorted(verts.clone());
            if s.vertices().len() != verts.len() {
                return Err(Error::precondition(format!("identification collapses {f}")));
            }
            Ok(s)
        })
        .collect()
}

/// A single vertex, formal dimension 0.
pub fn point() -> FilteredComplex {
    FilteredComplex::from_depths(0, vec![(Simplex::vertex(0), 0)])
}

/// Two points, formal dimension 0.
pub fn s0() -> FilteredComplex {
    FilteredComplex::from_depths(0, vec![(Simplex::vertex(0), 0), (Simplex::vertex(1), 0)])
}
