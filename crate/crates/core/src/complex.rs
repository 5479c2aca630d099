//! Finite filtered simplicial complexes.
//!
//! A [`FilteredComplex`] is an abstract simplicial complex `K` together with a
//! nested chain of subcomplexes `X_0 ⊆ X_1 ⊆ … ⊆ X_n = K`. The *depth* of a
//! simplex is the least `i` with `σ ∈ X_i`; strata are the face-connected
//! classes of simplices of equal depth. Everything downstream (allowability,
//! perversities, fundamental groups) reads the filtration through depths and
//! strata only.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ext::{ExtendedInt, Finite, NegInf};
use crate::simplex::Simplex;

/// A connected component of `X_i ∖ X_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub id: usize,
    /// Formal dimension `i` (the depth shared by all its simplices).
    pub dim: usize,
    pub codim: usize,
    /// Indices into [`FilteredComplex::simplices`].
    pub simplices: Vec<usize>,
}

impl Stratum {
    pub fn is_regular(&self) -> bool {
        self.codim == 0
    }
}

#[derive(Clone, Debug)]
pub struct FilteredComplex {
    formal_dim: usize,
    facets: Vec<Simplex>,
    skeleta: Vec<Vec<Simplex>>,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    depth: Vec<usize>,
    strata: Vec<Stratum>,
    stratum_of: Vec<usize>,
}

impl PartialEq for FilteredComplex {
    fn eq(&self, other: &Self) -> bool {
        self.formal_dim == other.formal_dim
            && self.facets == other.facets
            && self.skeleta == other.skeleta
    }
}

impl Eq for FilteredComplex {}

/// All faces of the given simplices, sorted by dimension then lexicographically.
pub fn closure<'a>(generators: impl IntoIterator<Item = &'a Simplex>) -> Vec<Simplex> {
    let mut set = BTreeSet::new();
    for g in generators {
        if set.contains(g) {
            continue;
        }
        for f in g.faces() {
            set.insert(f);
        }
    }
    let mut out: Vec<Simplex> = set.into_iter().collect();
    out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    out
}

/// Maximal elements of a face-closed set.
pub fn maximal(simplices: &[Simplex]) -> Vec<Simplex> {
    let set: BTreeSet<&Simplex> = simplices.iter().collect();
    let mut covered: BTreeSet<Simplex> = BTreeSet::new();
    for s in simplices {
        for f in s.boundary_faces() {
            covered.insert(f);
        }
    }
    let mut out: Vec<Simplex> = set
        .into_iter()
        .filter(|s| !covered.contains(*s))
        .cloned()
        .collect();
    out.sort();
    out
}

impl FilteredComplex {
    /// Builds a filtered complex from generating facets.
    ///
    /// `skeleta[i]` generates `X_i`. An empty (or missing) entry means
    /// `X_i = X_{i-1}`, with `X_{-1} = ∅`; `X_n` is always `K`. Non-nested skeleta, skeleta that are not
    /// subcomplexes of `K`, simplices of `X_i` of dimension above `i`, and a
    /// complex of dimension above `formal_dim` are rejected.
    pub fn new(formal_dim: usize, facets: Vec<Simplex>, skeleta: Vec<Vec<Simplex>>) -> Result<Self> {
        if skeleta.len() > formal_dim + 1 {
            return Err(Error::malformed(format!(
                "{} skeleta given for formal dimension {formal_dim}",
                skeleta.len()
            )));
        }
        let all = closure(&facets);
        if let Some(s) = all.iter().find(|s| s.dim() > formal_dim) {
            return Err(Error::malformed(format!(
                "simplex {s} exceeds formal dimension {formal_dim}"
            )));
        }
        let index: HashMap<Simplex, usize> =
            all.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut depth = vec![formal_dim; all.len()];
        let mut closures: Vec<Vec<Simplex>> = Vec::with_capacity(formal_dim + 1);
        for i in 0..formal_dim {
            let gens = skeleta.get(i).map(|v| v.as_slice()).unwrap_or(&[]);
            if gens.is_empty() && i > 0 {
                let below = closures[i - 1].clone();
                closures.push(below);
            } else {
                closures.push(closure(gens));
            }
        }
        if let Some(top) = skeleta.get(formal_dim) {
            let top_closure = closure(top);
            if top_closure != all {
                return Err(Error::malformed(format!(
                    "skeleton X_{formal_dim} must equal the complex"
                )));
            }
        }
        for (i, cl) in closures.iter().enumerate() {
            for s in cl {
                if s.dim() > i {
                    return Err(Error::malformed(format!(
                        "skeleton X_{i} contains {s} of dimension {}",
                        s.dim()
                    )));
                }
                if !index.contains_key(s) {
                    return Err(Error::malformed(format!(
                        "skeleton X_{i} contains {s}, which is not in the complex"
                    )));
                }
            }
        }
        for i in 0..formal_dim.saturating_sub(1) {
            let next: BTreeSet<&Simplex> = closures[i + 1].iter().collect();
            if let Some(s) = closures[i].iter().find(|s| !next.contains(s)) {
                return Err(Error::malformed(format!(
                    "skeleta not nested: {s} lies in X_{i} but not in X_{}",
                    i + 1
                )));
            }
        }
        for i in (0..formal_dim).rev() {
            for s in &closures[i] {
                depth[index[s]] = i;
            }
        }
        Ok(Self::assemble(formal_dim, all, index, depth))
    }

    /// The trivial filtration: `X_i = ∅` for `i < dim K`.
    pub fn trivial(facets: Vec<Simplex>) -> Result<Self> {
        let n = facets.iter().map(|s| s.dim()).max().unwrap_or(0);
        Self::new(n, facets, Vec::new())
    }

    /// Builds from a face-closed simplex set with a depth for each simplex.
    /// Depth must be monotone along faces and bounded by `formal_dim`.
    pub(crate) fn from_depths(formal_dim: usize, simplices: Vec<(Simplex, usize)>) -> Self {
        let mut pairs = simplices;
        pairs.sort_by(|a, b| a.0.dim().cmp(&b.0.dim()).then_with(|| a.0.cmp(&b.0)));
        pairs.dedup_by(|a, b| a.0 == b.0);
        let all: Vec<Simplex> = pairs.iter().map(|p| p.0.clone()).collect();
        let depth: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        let index: HashMap<Simplex, usize> =
            all.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        debug_assert!(all.iter().enumerate().all(|(i, s)| {
            s.boundary_faces()
                .iter()
                .all(|f| index.get(f).map_or(false, |&j| depth[j] <= depth[i]))
        }));
        debug_assert!(depth.iter().all(|&d| d <= formal_dim));
        Self::assemble(formal_dim, all, index, depth)
    }

    /// An empty complex of the given formal dimension.
    pub fn empty(formal_dim: usize) -> Self {
        Self::from_depths(formal_dim, Vec::new())
    }

    fn assemble(
        formal_dim: usize,
        simplices: Vec<Simplex>,
        index: HashMap<Simplex, usize>,
        depth: Vec<usize>,
    ) -> Self {
        let facets = maximal(&simplices);
        let mut skeleta = Vec::with_capacity(formal_dim + 1);
        for i in 0..=formal_dim {
            let members: Vec<Simplex> = simplices
                .iter()
                .zip(&depth)
                .filter(|(_, &d)| d <= i)
                .map(|(s, _)| s.clone())
                .collect();
            skeleta.push(maximal(&members));
        }
        let (strata, stratum_of) = compute_strata(formal_dim, &simplices, &index, &depth);
        FilteredComplex {
            formal_dim,
            facets,
            skeleta,
            simplices,
            index,
            depth,
            strata,
            stratum_of,
        }
    }

    pub fn formal_dim(&self) -> usize {
        self.formal_dim
    }

    /// Maximal simplices of `K`, sorted.
    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    /// Generating facets of `X_i`, for `i = 0..=n`.
    pub fn skeleta(&self) -> &[Vec<Simplex>] {
        &self.skeleta
    }

    /// Every simplex, sorted by dimension and then lexicographically.
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.dim())
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = (usize, &Simplex)> {
        self.simplices
            .iter()
            .enumerate()
            .filter(move |(_, s)| s.dim() == d)
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.simplices_of_dim(d).count()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dim().map_or(0, |d| d + 1);
        (0..top).map(|d| self.count_of_dim(d)).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices_of_dim(0).map(|(_, s)| s.vertices()[0]).collect()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    fn require(&self, s: &Simplex) -> Result<usize> {
        self.index_of(s).ok_or_else(|| Error::UnknownSimplex(s.to_string()))
    }

    pub fn depth_at(&self, idx: usize) -> usize {
        self.depth[idx]
    }

    /// `min { j : σ ∈ X_j }`.
    pub fn depth(&self, s: &Simplex) -> Result<usize> {
        Ok(self.depth[self.require(s)?])
    }

    pub fn vertex_depth(&self, v: usize) -> Result<usize> {
        self.depth(&Simplex::vertex(v))
    }

    pub fn is_regular_vertex(&self, v: usize) -> bool {
        self.vertex_depth(v).map_or(false, |d| d == self.formal_dim)
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, id: usize) -> Result<&Stratum> {
        self.strata.get(id).ok_or(Error::UnknownStratum(id))
    }

    pub fn stratum_at(&self, idx: usize) -> &Stratum {
        &self.strata[self.stratum_of[idx]]
    }

    pub fn stratum_of(&self, s: &Simplex) -> Result<&Stratum> {
        Ok(self.stratum_at(self.require(s)?))
    }

    pub fn singular_strata(&self) -> impl Iterator<Item = &Stratum> {
        self.strata.iter().filter(|s| !s.is_regular())
    }

    /// Polyhedral dimension of `σ⁻¹S`: the largest dimension of a face of `σ`
    /// whose open simplex lies in `S`, or `-∞` if there is none.
    pub fn contact_dim(&self, sigma: &Simplex, stratum: usize) -> Result<ExtendedInt> {
        self.require(sigma)?;
        self.stratum(stratum)?;
        Ok(self.contact_dims(sigma).get(&stratum).copied().unwrap_or(NegInf))
    }

    /// Contact dimension of `σ` with every stratum it meets.
    pub fn contact_dims(&self, sigma: &Simplex) -> HashMap<usize, ExtendedInt> {
        let mut out: HashMap<usize, ExtendedInt> = HashMap::new();
        for f in sigma.faces() {
            let idx = self.index[&f];
            let sid = self.stratum_of[idx];
            let d = Finite(f.dim() as i64);
            let e = out.entry(sid).or_insert(NegInf);
            if d > *e {
                *e = d;
            }
        }
        out
    }

    /// Simplices of the skeleton `X_j` (as indices).
    pub fn skeleton_members(&self, j: usize) -> Vec<usize> {
        (0..self.simplices.len()).filter(|&i| self.depth[i] <= j).collect()
    }

    /// Whether `X_j` contains every simplex of `K` whose vertices all lie in it.
    pub fn is_skeleton_full(&self, j: usize) -> bool {
        self.simplices.iter().enumerate().all(|(i, s)| {
            self.depth[i] <= j
                || s.vertices().iter().any(|&v| self.vertex_depth(v).unwrap() > j)
        })
    }

    /// Same complex with every vertex id shifted by `by`.
    pub fn shifted(&self, by: usize) -> FilteredComplex {
        let pairs = self
            .simplices
            .iter()
            .zip(&self.depth)
            .map(|(s, &d)| (s.map(|v| v + by), d))
            .collect();
        FilteredComplex::from_depths(self.formal_dim, pairs)
    }

    /// Re-indexes vertices to `0..k` in increasing order of their old ids.
    /// Returns the complex and the old id of each new vertex.
    pub fn relabeled_dense(&self) -> (FilteredComplex, Vec<usize>) {
        let old = self.vertices();
        let new_of: HashMap<usize, usize> = old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let pairs = self
            .simplices
            .iter()
            .zip(&self.depth)
            .map(|(s, &d)| (s.map(|v| new_of[&v]), d))
            .collect();
        (FilteredComplex::from_depths(self.formal_dim, pairs), old)
    }

    /// Subcomplex on a face-closed index set, keeping depths and vertex ids.
    pub(crate) fn induced(&self, members: impl IntoIterator<Item = usize>) -> FilteredComplex {
        let pairs = members
            .into_iter()
            .map(|i| (self.simplices[i].clone(), self.depth[i]))
            .collect();
        FilteredComplex::from_depths(self.formal_dim, pairs)
    }

    /// Full subcomplex on the given vertices with the induced filtration,
    /// keeping vertex ids.
    pub fn full_subcomplex(&self, vertices: &BTreeSet<usize>) -> FilteredComplex {
        self.induced(
            (0..self.simplices.len())
                .filter(|&i| self.simplices[i].vertices().iter().all(|v| vertices.contains(v))),
        )
    }

    pub fn is_full_subcomplex(&self, sub: &[Simplex]) -> bool {
        let members: BTreeSet<&Simplex> = sub.iter().collect();
        let verts: BTreeSet<usize> = sub.iter().flat_map(|s| s.vertices().to_vec()).collect();
        self.simplices.iter().all(|s| {
            !s.vertices().iter().all(|v| verts.contains(v)) || members.contains(s)
        })
    }

    /// Closed star of a vertex with the induced filtration (vertex ids kept).
    pub fn star(&self, v: usize) -> Result<FilteredComplex> {
        self.require(&Simplex::vertex(v))?;
        let gens: Vec<Simplex> = self.simplices.iter().filter(|s| s.contains(v)).cloned().collect();
        let cl = closure(&gens);
        Ok(self.induced(cl.iter().map(|s| self.index[s])))
    }

    /// Link of a vertex, filtered by `τ ∈ L_i ⇔ τ ∗ v ∈ X_{i+1}`, formal
    /// dimension `n - 1`. Vertex ids are kept.
    pub fn link(&self, v: usize) -> Result<FilteredComplex> {
        self.require(&Simplex::vertex(v))?;
        if self.formal_dim == 0 {
            return Err(Error::precondition("link in a 0-dimensional complex"));
        }
        let pairs = self
            .simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| s.dim() > 0 && s.contains(v))
            .map(|(i, s)| (s.without(v).unwrap(), self.depth[i] - 1))
            .collect();
        Ok(FilteredComplex::from_depths(self.formal_dim - 1, pairs))
    }

    /// Full subcomplex on the regular vertices (depth `n`).
    pub fn regular_subcomplex(&self) -> FilteredComplex {
        let verts: BTreeSet<usize> = self
            .vertices()
            .into_iter()
            .filter(|&v| self.is_regular_vertex(v))
            .collect();
        self.full_subcomplex(&verts)
    }

    /// Connected components of the 1-skeleton, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let verts = self.vertices();
        let pos: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(verts.len());
        for (_, e) in self.simplices_of_dim(1) {
            uf.union(pos[&e.vertices()[0]], pos[&e.vertices()[1]]);
        }
        uf.groups()
            .into_iter()
            .map(|g| g.into_iter().map(|i| verts[i]).collect())
            .collect()
    }

    /// Structural and mathematical checks; see [`ValidationReport`].
    pub fn validate(&self) -> ValidationReport {
        let n = self.formal_dim;
        let codim_one_strata: Vec<usize> =
            self.strata.iter().filter(|s| s.codim == 1).map(|s| s.id).collect();
        let full_skeleta: Vec<bool> = (0..=n).map(|j| self.is_skeleton_full(j)).collect();
        let mut non_closed = Vec::new();
        for st in &self.strata {
            let gens: Vec<&Simplex> = st.simplices.iter().map(|&i| &self.simplices[i]).collect();
            let cl: BTreeSet<usize> = closure(gens).iter().map(|s| self.index[s]).collect();
            let touched: BTreeSet<usize> = cl.iter().map(|&i| self.stratum_of[i]).collect();
            let ok = touched
                .iter()
                .all(|&t| self.strata[t].simplices.iter().all(|i| cl.contains(i)));
            if !ok {
                non_closed.push(st.id);
            }
        }
        let regular_nonempty = self.strata.iter().any(|s| s.is_regular());
        let mut warnings = Vec::new();
        if !codim_one_strata.is_empty() {
            warnings.push(format!(
                "codimension-one strata {codim_one_strata:?}; GM perversities do not apply"
            ));
        }
        if !regular_nonempty {
            warnings.push("regular part is empty".to_string());
        }
        if let Some(d) = self.dim() {
            if d < n {
                warnings.push(format!("complex dimension {d} is below formal dimension {n}"));
            }
        }
        if !non_closed.is_empty() {
            warnings.push(format!(
                "closures of strata {non_closed:?} are not unions of strata"
            ));
        }
        for (j, full) in full_skeleta.iter().enumerate().take(n) {
            if !full {
                warnings.push(format!("skeleton X_{j} is not a full subcomplex"));
            }
        }
        ValidationReport {
            valid: regular_nonempty,
            formal_dim: n,
            simplex_count: self.simplices.len(),
            strata_count: self.strata.len(),
            strata_codims: self.strata.iter().map(|s| s.codim).collect(),
            codim_one_strata,
            full_skeleta,
            strata_closures_are_unions: non_closed.is_empty(),
            warnings,
        }
    }
}

/// Result of [`FilteredComplex::validate`]. Hard structural errors are
/// rejected at construction; everything here is advisory except `valid`,
/// which requires a non-empty regular part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub formal_dim: usize,
    pub simplex_count: usize,
    pub strata_count: usize,
    pub strata_codims: Vec<usize>,
    pub codim_one_strata: Vec<usize>,
    pub full_skeleta: Vec<bool>,
    pub strata_closures_are_unions: bool,
    pub warnings: Vec<String>,
}

fn compute_strata(
    formal_dim: usize,
    simplices: &[Simplex],
    index: &HashMap<Simplex, usize>,
    depth: &[usize],
) -> (Vec<Stratum>, Vec<usize>) {
    let mut uf = UnionFind::new(simplices.len());
    for (i, s) in simplices.iter().enumerate() {
        for f in s.boundary_faces() {
            let j = index[&f];
            if depth[j] == depth[i] {
                uf.union(i, j);
            }
        }
    }
    let mut groups = uf.groups();
    // ids follow the lexicographically least simplex of each stratum
    groups.sort_by(|a, b| {
        let ma = a.iter().map(|&i| &simplices[i]).min().unwrap();
        let mb = b.iter().map(|&i| &simplices[i]).min().unwrap();
        ma.cmp(mb)
    });
    let mut stratum_of = vec![0; simplices.len()];
    let strata = groups
        .into_iter()
        .enumerate()
        .map(|(id, members)| {
            for &m in &members {
                stratum_of[m] = id;
            }
            let dim = depth[members[0]];
            Stratum {
                id,
                dim,
                codim: formal_dim - dim,
                simplices: members,
            }
        })
        .collect();
    (strata, stratum_of)
}

/// Disjoint-set forest with path halving; `groups` is deterministic.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Classes as sorted member lists, ordered by least member.
    pub fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            let r = self.find(i);
            by_root.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }
}
