//! Allowable and full simplices, the Gajer subcomplex, and its augmented
//! 2-dimensional model.
//!
//! A simplex `σ` is `p̄`-allowable when, for every singular stratum `S`,
//!
//! ```text
//! contact(σ, S) ≤ dim σ − codim S + p̄(S)
//! ```
//!
//! with `contact = -∞` if no face of `σ` lies in `S`. It is full when it and
//! all of its faces are allowable.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::complex::FilteredComplex;
use crate::construct::{barycentric_subdivide, open_complement};
use crate::error::{Error, Result};
use crate::ext::{ExtendedInt, Finite, NegInf, PosInf};
use crate::chain::IntegerChainComplex;
use crate::linalg::{kernel_basis, DenseMatrix, Int, SparseMatrix};
use crate::perversity::Perversity;
use crate::simplex::Simplex;

/// Allowability and fullness of every simplex of a complex under one
/// perversity, computed once.
#[derive(Clone, Debug)]
pub struct Fullness {
    values: Vec<ExtendedInt>,
    allowable: Vec<bool>,
    full: Vec<bool>,
}

impl Fullness {
    pub fn new(k: &FilteredComplex, p: &Perversity) -> Result<Self> {
        let values = p.values_on(k)?;
        let allowable: Vec<bool> = k
            .simplices()
            .iter()
            .map(|s| allowable_with(k, &values, s))
            .collect();
        // simplices are sorted by dimension, so faces are decided first
        let mut full = vec![false; allowable.len()];
        for (i, s) in k.simplices().iter().enumerate() {
            full[i] = allowable[i]
                && (s.dim() == 0
                    || s.boundary_faces().iter().all(|f| full[k.index_of(f).expect("face")]));
        }
        Ok(Fullness { values, allowable, full })
    }

    pub fn is_allowable_at(&self, idx: usize) -> bool {
        self.allowable[idx]
    }

    pub fn is_full_at(&self, idx: usize) -> bool {
        self.full[idx]
    }

    /// `p̄` on each stratum, by stratum id.
    pub fn perversity_values(&self) -> &[ExtendedInt] {
        &self.values
    }

    /// Indices of the full simplices.
    pub fn full_indices(&self) -> Vec<usize> {
        (0..self.full.len()).filter(|&i| self.full[i]).collect()
    }
}

fn allowable_with(k: &FilteredComplex, values: &[ExtendedInt], sigma: &Simplex) -> bool {
    let dim = sigma.dim() as i64;
    k.contact_dims(sigma).into_iter().all(|(sid, contact)| {
        let s = &k.strata()[sid];
        if s.is_regular() {
            return true;
        }
        contact <= values[sid].offset(dim - s.codim as i64)
    })
}

/// Whether `σ` satisfies the allowability inequality for every singular stratum.
pub fn is_allowable(k: &FilteredComplex, p: &Perversity, sigma: &Simplex) -> Result<bool> {
    k.index_of(sigma).ok_or_else(|| Error::UnknownSimplex(sigma.to_string()))?;
    Ok(allowable_with(k, &p.values_on(k)?, sigma))
}

/// Whether `σ` and all of its faces are allowable.
pub fn is_full(k: &FilteredComplex, p: &Perversity, sigma: &Simplex) -> Result<bool> {
    k.index_of(sigma).ok_or_else(|| Error::UnknownSimplex(sigma.to_string()))?;
    let values = p.values_on(k)?;
    let mut memo: HashMap<Simplex, bool> = HashMap::new();
    Ok(full_rec(k, &values, sigma, &mut memo))
}

fn full_rec(k: &FilteredComplex, values: &[ExtendedInt], s: &Simplex, memo: &mut HashMap<Simplex, bool>) -> bool {
    if let Some(&b) = memo.get(s) {
        return b;
    }
    let b = allowable_with(k, values, s)
        && (s.dim() == 0 || s.boundary_faces().iter().all(|f| full_rec(k, values, f, memo)));
    memo.insert(s.clone(), b);
    b
}

/// The subcomplex of full simplices, with the induced filtration.
/// Empty when no simplex is full.
pub fn gajer_subcomplex(k: &FilteredComplex, p: &Perversity) -> Result<FilteredComplex> {
    let f = Fullness::new(k, p)?;
    let g = k.induced(f.full_indices());
    debug_assert!(g.simplices().iter().all(|s| s.faces().iter().all(|t| g.contains(t))));
    Ok(g)
}

/// Checks `Dp̄ ≥ 0` on every singular stratum, the standing assumption of the
/// augmented model and of the fundamental group computation.
pub(crate) fn require_below_top(k: &FilteredComplex, p: &Perversity) -> Result<()> {
    if !p.below_top_on(k)? {
        return Err(Error::precondition(
            "the perversity must satisfy p ≤ t on every singular stratum",
        ));
    }
    Ok(())
}

/// Integer 2-chains on the triangles `{w, a, b}` around a singular vertex `w`
/// (with `a`, `b` and `{a, b}` regular) whose boundary vanishes on every edge
/// through `w`.
#[derive(Clone, Debug, Serialize)]
pub struct FanCellBasis {
    pub center: usize,
    pub triangles: Vec<Simplex>,
    /// Basis chains, one coefficient per entry of `triangles`.
    #[serde(serialize_with = "serialize_lattice")]
    pub lattice: Vec<Vec<Int>>,
}

fn serialize_lattice<S: serde::Serializer>(m: &[Vec<Int>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<serde_json::Value>> =
        m.iter().map(|r| r.iter().map(crate::chain::int_list::to_value).collect()).collect();
    v.serialize(s)
}

impl FanCellBasis {
    fn build(k: &FilteredComplex, w: usize) -> FanCellBasis {
        let n = k.formal_dim();
        let regular = |s: &Simplex| k.depth(s).map_or(false, |d| d == n);
        let triangles: Vec<Simplex> = k
            .simplices_of_dim(2)
            .map(|(_, t)| t)
            .filter(|t| t.contains(w) && regular(&t.without(w).unwrap()))
            .filter(|t| t.vertices().iter().all(|&v| v == w || k.is_regular_vertex(v)))
            .cloned()
            .collect();
        let mut spokes: BTreeMap<Simplex, usize> = BTreeMap::new();
        for t in &triangles {
            for f in t.boundary_faces() {
                if f.contains(w) {
                    let len = spokes.len();
                    spokes.entry(f).or_insert(len);
                }
            }
        }
        let mut m = DenseMatrix::zeros(spokes.len(), triangles.len());
        for (j, t) in triangles.iter().enumerate() {
            for (i, f) in t.boundary_faces().into_iter().enumerate() {
                if let Some(&r) = spokes.get(&f) {
                    m.set(r, j, if i % 2 == 0 { Int::from(1) } else { Int::from(-1) });
                }
            }
        }
        let lattice = kernel_basis(&m);
        FanCellBasis { center: w, triangles, lattice }
    }

    /// Boundary of a lattice element as a map from regular link edges to
    /// coefficients.
    pub fn boundary_of(&self, chain: &[Int]) -> BTreeMap<Simplex, Int> {
        let mut out: BTreeMap<Simplex, Int> = BTreeMap::new();
        for (t, c) in self.triangles.iter().zip(chain) {
            for (i, f) in t.boundary_faces().into_iter().enumerate() {
                let e = out.entry(f).or_default();
                if i % 2 == 0 {
                    *e += c;
                } else {
                    *e -= c;
                }
            }
        }
        out.retain(|_, v| *v != Int::from(0));
        out
    }
}

/// The Gajer subcomplex in degrees `≤ 1`, its full triangles, and fan cells
/// at every singular vertex whose stratum has `Dp̄ = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct AugmentedTwoComplex {
    pub vertices: Vec<Simplex>,
    pub edges: Vec<Simplex>,
    pub triangles: Vec<Simplex>,
    pub fans: Vec<FanCellBasis>,
}

impl AugmentedTwoComplex {
    pub fn fan_centers(&self) -> Vec<usize> {
        self.fans.iter().map(|f| f.center).collect()
    }

    /// Cellular chains: full vertices and edges, then full triangles followed
    /// by one cell per fan lattice element.
    pub fn chain_complex(&self) -> Result<IntegerChainComplex> {
        let index = |list: &[Simplex]| -> HashMap<Simplex, usize> {
            list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
        };
        let (vi, ei) = (index(&self.vertices), index(&self.edges));
        let sign = |i: usize| if i % 2 == 0 { Int::from(1) } else { Int::from(-1) };
        let face_column = |s: &Simplex, faces: &HashMap<Simplex, usize>| -> Result<Vec<(usize, Int)>> {
            s.boundary_faces()
                .into_iter()
                .enumerate()
                .map(|(i, f)| {
                    faces.get(&f).map(|&r| (r, sign(i))).ok_or_else(|| Error::UnknownSimplex(f.to_string()))
                })
                .collect()
        };
        let mut d1 = SparseMatrix::zeros(self.vertices.len(), 0);
        for e in &self.edges {
            d1.push_column(face_column(e, &vi)?);
        }
        let mut d2 = SparseMatrix::zeros(self.edges.len(), 0);
        let mut labels2: Vec<String> = Vec::new();
        for t in &self.triangles {
            d2.push_column(face_column(t, &ei)?);
            labels2.push(t.to_string());
        }
        for fan in &self.fans {
            for (n, v) in fan.lattice.iter().enumerate() {
                let mut col: Vec<(usize, Int)> = Vec::new();
                for (f, c) in fan.boundary_of(v) {
                    let r = *ei.get(&f).ok_or_else(|| Error::UnknownSimplex(f.to_string()))?;
                    col.push((r, c));
                }
                col.sort_by_key(|e| e.0);
                d2.push_column(col);
                labels2.push(format!("fan({})#{n}", fan.center));
            }
        }
        let labels = vec![
            self.vertices.iter().map(ToString::to_string).collect(),
            self.edges.iter().map(ToString::to_string).collect(),
            labels2,
        ];
        IntegerChainComplex::new(labels, vec![SparseMatrix::zeros(0, self.vertices.len()), d1, d2])
    }
}

/// Singular vertices whose stratum has `Dp̄ = 0`.
pub fn fan_centers(k: &FilteredComplex, p: &Perversity) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for v in k.vertices() {
        if k.is_regular_vertex(v) {
            continue;
        }
        let s = k.stratum_of(&Simplex::vertex(v))?;
        if p.complement_at(s)? == Finite(0) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Builds the augmented model. Requires `p̄ ≤ t̄` on every singular stratum
/// (true for GM perversities), so that full vertices and edges are regular.
pub fn augmented_two_complex(k: &FilteredComplex, p: &Perversity) -> Result<AugmentedTwoComplex> {
    require_below_top(k, p)?;
    let f = Fullness::new(k, p)?;
    let mut by_dim: [Vec<Simplex>; 3] = Default::default();
    for i in f.full_indices() {
        let s = &k.simplices()[i];
        if s.dim() <= 2 {
            by_dim[s.dim()].push(s.clone());
        }
    }
    let fans = fan_centers(k, p)?.into_iter().map(|w| FanCellBasis::build(k, w)).collect();
    let [vertices, edges, triangles] = by_dim;
    Ok(AugmentedTwoComplex { vertices, edges, triangles, fans })
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolatedSkeletonReport {
    pub vertex: usize,
    /// `Dp̄({x})` at the vertex.
    pub complement_value: ExtendedInt,
    /// Simplices of dimension `≤ max_dim` were checked; `None` when the range is empty.
    pub max_dim: Option<usize>,
    /// Full simplices in range that contain the vertex.
    pub violations: Vec<Simplex>,
    pub holds: bool,
}

/// No full simplex of dimension `≤ Dp̄({x}) + 1` contains the isolated
/// singular point `x`.
pub fn check_isolated_skeleton_identity(
    k: &FilteredComplex,
    p: &Perversity,
    vertex: usize,
) -> Result<IsolatedSkeletonReport> {
    let v = Simplex::vertex(vertex);
    let s = k.stratum_of(&v)?;
    if s.is_regular() || s.simplices.len() != 1 {
        return Err(Error::precondition(format!("vertex {vertex} is not an isolated singular point")));
    }
    let d = p.complement_at(s)?;
    let max_dim = match d {
        NegInf => None,
        PosInf => k.dim(),
        Finite(x) if x + 1 < 0 => None,
        Finite(x) => Some((x + 1) as usize),
    };
    let f = Fullness::new(k, p)?;
    let violations: Vec<Simplex> = match max_dim {
        None => Vec::new(),
        Some(m) => k
            .simplices()
            .iter()
            .enumerate()
            .filter(|(i, t)| t.dim() <= m && t.contains(vertex) && f.is_full_at(*i))
            .map(|(_, t)| t.clone())
            .collect(),
    };
    Ok(IsolatedSkeletonReport {
        vertex,
        complement_value: d,
        max_dim,
        holds: violations.is_empty(),
        violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CleavingReport {
    pub cleaving_point: ExtendedInt,
    /// `n − ℓ − 1`; negative means nothing is removed.
    pub removed_skeleton: i64,
    pub subdivided: bool,
    pub full_simplices_match: bool,
    pub fan_centers_match: bool,
    pub fan_triangles_match: bool,
    pub holds: bool,
}

/// Compares the full simplices of dimension `≤ 2` (and the fan cells) of
/// `(K, p̄)` with those of `(K ∖ X_{n−ℓ−1}, t̄)`.
///
/// If `X_{n−ℓ−1}` is not a full subcomplex, both sides are computed on the
/// barycentric subdivision.
pub fn check_cleaving_identity(k: &FilteredComplex, p: &Perversity) -> Result<CleavingReport> {
    let ell = p.cleaving_point()?;
    let n = k.formal_dim() as i64;
    let j = match ell {
        Finite(l) => n - l - 1,
        _ => -1,
    };
    let (base, subdivided) = if j >= 0 && !k.is_skeleton_full(j as usize) {
        (barycentric_subdivide(k), true)
    } else {
        (k.clone(), false)
    };
    let oc = open_complement(&base, j, false)?;
    let top = Perversity::top();
    let map = |s: &Simplex| s.map(|v| oc.vertex_map[v]);

    let lhs = Fullness::new(&base, p)?;
    let rhs = Fullness::new(&oc.complex, &top)?;
    let low = |c: &FilteredComplex, f: &Fullness, back: bool| -> BTreeSet<Simplex> {
        f.full_indices()
            .into_iter()
            .map(|i| &c.simplices()[i])
            .filter(|s| s.dim() <= 2)
            .map(|s| if back { map(s) } else { s.clone() })
            .collect()
    };
    let full_simplices_match = low(&base, &lhs, false) == low(&oc.complex, &rhs, true);

    let fans_l: Vec<FanCellBasis> =
        fan_centers(&base, p)?.into_iter().map(|w| FanCellBasis::build(&base, w)).collect();
    let fans_r: Vec<FanCellBasis> = fan_centers(&oc.complex, &top)?
        .into_iter()
        .map(|w| FanCellBasis::build(&oc.complex, w))
        .collect();
    let centers_l: BTreeSet<usize> = fans_l.iter().map(|f| f.center).collect();
    let centers_r: BTreeSet<usize> = fans_r.iter().map(|f| oc.vertex_map[f.center]).collect();
    let tris_l: BTreeSet<Simplex> = fans_l.iter().flat_map(|f| f.triangles.clone()).collect();
    let tris_r: BTreeSet<Simplex> = fans_r.iter().flat_map(|f| f.triangles.iter().map(map)).collect();
    let fan_centers_match = centers_l == centers_r;
    let fan_triangles_match = tris_l == tris_r;
    Ok(CleavingReport {
        cleaving_point: ell,
        removed_skeleton: j,
        subdivided,
        full_simplices_match,
        fan_centers_match,
        fan_triangles_match,
        holds: full_simplices_match && fan_centers_match && fan_triangles_match,
    })
}
