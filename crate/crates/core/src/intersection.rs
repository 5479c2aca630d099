//! Intersection chains, intersection homology and the comparison maps
//! `H_j(Gajer) → IH_j`.
//!
//! In degree `j` the intersection chains are the integer chains on allowable
//! `j`-simplices whose boundary is supported on allowable simplices. A simplex
//! whose codimension-one faces are all allowable contributes itself; the
//! others ("dirty" simplices) are grouped by shared non-allowable faces, and
//! each group contributes a saturated kernel basis of the boundary projected
//! onto those faces.

use std::collections::{BTreeSet, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::allowability::{augmented_two_complex, Fullness};
use crate::chain::{homology, is_chain_map, HomologyBasis, HomologyClassMap, HomologyGroup, IntegerChainComplex};
use crate::complex::{closure, FilteredComplex, UnionFind};
use crate::error::{Error, Result};
use crate::linalg::kernel::kernel_basis;
use crate::linalg::{left_inverse, solve_integer, DenseMatrix, Int, SparseMatrix};
use crate::perversity::Perversity;
use crate::simplex::Simplex;

/// A chain on the `j`-simplices of the ambient complex, as
/// `(position among j-simplices, coefficient)` pairs.
pub type Chain = Vec<(usize, Int)>;

/// Position of simplices within their dimension.
#[derive(Clone, Debug)]
struct Layout {
    offsets: Vec<usize>,
}

impl Layout {
    fn new(k: &FilteredComplex) -> Self {
        let top = k.dim().unwrap_or(0);
        let mut offsets = vec![0; top + 2];
        for s in k.simplices() {
            offsets[s.dim() + 1] += 1;
        }
        for j in 1..offsets.len() {
            offsets[j] += offsets[j - 1];
        }
        Layout { offsets }
    }

    fn count(&self, j: usize) -> usize {
        if j + 1 < self.offsets.len() {
            self.offsets[j + 1] - self.offsets[j]
        } else {
            0
        }
    }

    fn index(&self, j: usize, pos: usize) -> usize {
        self.offsets[j] + pos
    }

    fn pos(&self, k: &FilteredComplex, s: &Simplex) -> usize {
        k.index_of(s).expect("simplex of the complex") - self.offsets[s.dim()]
    }
}

fn boundary_chain(k: &FilteredComplex, layout: &Layout, j: usize, chain: &[(usize, Int)]) -> Chain {
    let mut acc: HashMap<usize, Int> = HashMap::new();
    for (pos, c) in chain {
        let s = &k.simplices()[layout.index(j, *pos)];
        for (i, f) in s.boundary_faces().iter().enumerate() {
            let e = acc.entry(layout.pos(k, f)).or_insert_with(Int::zero);
            if i % 2 == 0 {
                *e += c;
            } else {
                *e -= c;
            }
        }
    }
    let mut out: Chain = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by_key(|e| e.0);
    out
}

fn chain_label(k: &FilteredComplex, layout: &Layout, j: usize, chain: &[(usize, Int)]) -> String {
    if let [(pos, c)] = chain {
        if *c == Int::from(1) {
            return k.simplices()[layout.index(j, *pos)].to_string();
        }
    }
    let mut out = String::new();
    for (n, (pos, c)) in chain.iter().enumerate() {
        let s = &k.simplices()[layout.index(j, *pos)];
        let neg = c < &Int::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if n > 0 || neg {
            out.push_str(if neg { "-" } else { "+" });
        }
        if mag != Int::from(1) {
            out.push_str(&format!("{mag}*"));
        }
        out.push_str(&s.to_string());
    }
    out
}

/// A group of dirty simplices sharing non-allowable faces.
#[derive(Clone, Debug)]
struct Block {
    simplices: Vec<usize>,
    basis: DenseMatrix,
    left: DenseMatrix,
    offset: usize,
}

#[derive(Clone, Debug, Default)]
struct DegreeBasis {
    vectors: Vec<Chain>,
    clean: HashMap<usize, usize>,
    block_of: HashMap<usize, (usize, usize)>,
    blocks: Vec<Block>,
}

impl DegreeBasis {
    fn coordinates(&self, chain: &[(usize, Int)]) -> Option<Vec<Int>> {
        let mut out = vec![Int::zero(); self.vectors.len()];
        let mut gathered: Vec<Option<Vec<Int>>> = vec![None; self.blocks.len()];
        for (pos, c) in chain {
            if c.is_zero() {
                continue;
            }
            if let Some(&i) = self.clean.get(pos) {
                out[i] += c;
            } else if let Some(&(b, local)) = self.block_of.get(pos) {
                let v = gathered[b].get_or_insert_with(|| vec![Int::zero(); self.blocks[b].simplices.len()]);
                v[local] += c;
            } else {
                return None;
            }
        }
        for (b, x) in gathered.into_iter().enumerate() {
            let Some(x) = x else { continue };
            let block = &self.blocks[b];
            let y = block.left.apply(&x);
            if block.basis.apply(&y) != x {
                return None;
            }
            for (i, v) in y.into_iter().enumerate() {
                out[block.offset + i] = v;
            }
        }
        Some(out)
    }
}

/// Chains of an ambient complex forming a chain complex, with each basis
/// element recorded as a chain on the ambient simplices.
#[derive(Clone, Debug)]
pub struct EmbeddedChains {
    pub complex: IntegerChainComplex,
    /// `basis[j][b]` is basis element `b` of degree `j`.
    pub basis: Vec<Vec<Chain>>,
}

/// The intersection chain complex of `(K, p̄)`, possibly restricted to a
/// subcomplex of `K` and truncated above some degree.
#[derive(Clone, Debug)]
pub struct IntersectionChains {
    pub chains: EmbeddedChains,
    degrees: Vec<DegreeBasis>,
}

impl IntersectionChains {
    /// Builds degrees `0..=max_degree`. `members` restricts to a subcomplex
    /// (given by simplex indices of `k`); allowability is always read from `k`.
    pub fn build(
        k: &FilteredComplex,
        fullness: &Fullness,
        members: Option<&BTreeSet<usize>>,
        max_degree: usize,
    ) -> IntersectionChains {
        let layout = Layout::new(k);
        let top = k.dim().map_or(0, |d| d.min(max_degree));
        let allowed = |idx: usize| fullness.is_allowable_at(idx) && members.map_or(true, |m| m.contains(&idx));
        let mut degrees: Vec<DegreeBasis> = Vec::new();
        for j in 0..=top {
            if k.is_empty() {
                break;
            }
            let mut basis = DegreeBasis::default();
            let mut dirty = Vec::new();
            for pos in 0..layout.count(j) {
                let idx = layout.index(j, pos);
                if !allowed(idx) {
                    continue;
                }
                let s = &k.simplices()[idx];
                let clean = j == 0
                    || s.boundary_faces().iter().all(|f| fullness.is_allowable_at(k.index_of(f).unwrap()));
                if clean {
                    basis.clean.insert(pos, basis.vectors.len());
                    basis.vectors.push(vec![(pos, Int::from(1))]);
                } else {
                    dirty.push(pos);
                }
            }
            // group dirty simplices through their non-allowable faces
            let mut uf = UnionFind::new(dirty.len());
            let mut owner: HashMap<usize, usize> = HashMap::new();
            for (d, &pos) in dirty.iter().enumerate() {
                let s = &k.simplices()[layout.index(j, pos)];
                for f in s.boundary_faces() {
                    let fi = k.index_of(&f).unwrap();
                    if !fullness.is_allowable_at(fi) {
                        if let Some(&o) = owner.get(&fi) {
                            uf.union(o, d);
                        } else {
                            owner.insert(fi, d);
                        }
                    }
                }
            }
            for group in uf.groups() {
                let simplices: Vec<usize> = group.iter().map(|&d| dirty[d]).collect();
                let mut rows: Vec<usize> = Vec::new();
                let mut entries = Vec::new();
                for (c, &pos) in simplices.iter().enumerate() {
                    let s = &k.simplices()[layout.index(j, pos)];
                    for (i, f) in s.boundary_faces().iter().enumerate() {
                        let fi = k.index_of(f).unwrap();
                        if !fullness.is_allowable_at(fi) {
                            rows.push(fi);
                            entries.push((fi, c, if i % 2 == 0 { 1 } else { -1 }));
                        }
                    }
                }
                rows.sort_unstable();
                rows.dedup();
                let mut m = DenseMatrix::zeros(rows.len(), simplices.len());
                for (fi, c, v) in entries {
                    let r = rows.binary_search(&fi).unwrap();
                    *m.get_mut(r, c) += v;
                }
                let ker = kernel_basis(&m);
                if ker.is_empty() {
                    continue;
                }
                let b = DenseMatrix::from_columns(simplices.len(), &ker);
                let left = left_inverse(&b).expect("saturated kernel");
                let offset = basis.vectors.len();
                for v in &ker {
                    basis.vectors.push(
                        simplices
                            .iter()
                            .zip(v)
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(&p, c)| (p, c.clone()))
                            .collect(),
                    );
                }
                let bid = basis.blocks.len();
                for (local, &pos) in simplices.iter().enumerate() {
                    basis.block_of.insert(pos, (bid, local));
                }
                basis.blocks.push(Block { simplices, basis: b, left, offset });
            }
            degrees.push(basis);
        }
        let mut labels = Vec::new();
        let mut boundaries = Vec::new();
        for (j, d) in degrees.iter().enumerate() {
            labels.push(d.vectors.iter().map(|v| chain_label(k, &layout, j, v)).collect());
            if j == 0 {
                boundaries.push(SparseMatrix::zeros(0, d.vectors.len()));
                continue;
            }
            let mut m = SparseMatrix::zeros(degrees[j - 1].vectors.len(), 0);
            for v in &d.vectors {
                let b = boundary_chain(k, &layout, j, v);
                let coords = degrees[j - 1]
                    .coordinates(&b)
                    .expect("boundary of an intersection chain is an intersection chain");
                m.push_column(coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()));
            }
            boundaries.push(m);
        }
        let complex = IntegerChainComplex::new(labels, boundaries).expect("boundary squared vanishes");
        let basis = degrees.iter().map(|d| d.vectors.clone()).collect();
        IntersectionChains { chains: EmbeddedChains { complex, basis }, degrees }
    }

    pub fn complex(&self) -> &IntegerChainComplex {
        &self.chains.complex
    }

    /// Coordinates of an ambient `j`-chain, or `None` if it is not an
    /// intersection chain of this complex.
    pub fn coordinates(&self, j: usize, chain: &[(usize, Int)]) -> Option<Vec<Int>> {
        match self.degrees.get(j) {
            Some(d) => d.coordinates(chain),
            None => chain.iter().all(|(_, c)| c.is_zero()).then(Vec::new),
        }
    }

    /// Whether an ambient chain lies in the intersection chain group.
    pub fn contains(&self, j: usize, chain: &[(usize, Int)]) -> bool {
        self.coordinates(j, chain).is_some()
    }
}

/// `I^p̄C_*(K)` in all degrees.
pub fn intersection_chain_complex(k: &FilteredComplex, p: &Perversity) -> Result<IntersectionChains> {
    let f = Fullness::new(k, p)?;
    Ok(IntersectionChains::build(k, &f, None, usize::MAX))
}

/// `IH_j^p̄(K; Z)`.
pub fn intersection_homology(k: &FilteredComplex, p: &Perversity, j: usize) -> Result<HomologyGroup> {
    let f = Fullness::new(k, p)?;
    let ic = IntersectionChains::build(k, &f, None, j + 1);
    Ok(homology(ic.complex(), j))
}

/// `IH_j^p̄(K; Z)` for `j = 0..=dim K`.
pub fn intersection_homology_all(k: &FilteredComplex, p: &Perversity) -> Result<Vec<HomologyGroup>> {
    let ic = intersection_chain_complex(k, p)?;
    Ok((0..=k.dim().unwrap_or(0)).map(|j| homology(ic.complex(), j)).collect())
}

/// Chain complex whose lower degrees are unit chains on simplices and whose
/// top degree may hold arbitrary chains (such as fan cells).
fn embedded_from_cells(k: &FilteredComplex, layout: &Layout, cells: Vec<Vec<Chain>>) -> EmbeddedChains {
    let mut labels = Vec::new();
    let mut boundaries = Vec::new();
    for (j, basis) in cells.iter().enumerate() {
        labels.push(basis.iter().map(|c| chain_label(k, layout, j, c)).collect());
        if j == 0 {
            boundaries.push(SparseMatrix::zeros(0, basis.len()));
            continue;
        }
        let below: HashMap<usize, usize> = cells[j - 1]
            .iter()
            .enumerate()
            .map(|(i, c)| {
                assert!(c.len() == 1 && c[0].1 == Int::from(1), "unit chains below the top degree");
                (c[0].0, i)
            })
            .collect();
        let mut m = SparseMatrix::zeros(cells[j - 1].len(), 0);
        for c in basis {
            let b = boundary_chain(k, layout, j, c);
            m.push_column(b.into_iter().map(|(pos, v)| (below[&pos], v)));
        }
        boundaries.push(m);
    }
    let complex = IntegerChainComplex::new(labels, boundaries).expect("boundary squared vanishes");
    EmbeddedChains { complex, basis: cells }
}

/// Which model of the Gajer space the comparison map starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Simplicial chains on the full simplices.
    Straight,
    /// Full simplices of dimension `≤ 1` plus full triangles and fan cells.
    Augmented,
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "straight" => Ok(Model::Straight),
            "augmented" => Ok(Model::Augmented),
            other => Err(Error::malformed(format!("unknown model {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub degree: usize,
    pub model: Model,
    /// The inclusion of chain complexes was checked to commute with boundaries.
    pub chain_map_verified: bool,
    #[serde(flatten)]
    pub map: HomologyClassMap,
}

/// The map `J_j : H_j(Gajer) → IH_j^p̄` induced by inclusion of chains.
///
/// The augmented model needs `p̄ ≤ t̄` and `j ≤ 1`.
pub fn comparison_map(k: &FilteredComplex, p: &Perversity, j: usize, model: Model) -> Result<ComparisonReport> {
    if model == Model::Augmented && j >= 2 {
        return Err(Error::precondition("the augmented model is only available in degrees 0 and 1"));
    }
    let f = Fullness::new(k, p)?;
    let layout = Layout::new(k);
    let target = IntersectionChains::build(k, &f, None, j + 1);
    let unit = |i: usize| -> Chain { vec![(i - layout.offsets[k.simplices()[i].dim()], Int::from(1))] };
    let mut cells: Vec<Vec<Chain>> = vec![Vec::new(); j + 2];
    match model {
        Model::Straight => {
            for i in f.full_indices() {
                let d = k.simplices()[i].dim();
                if d <= j + 1 {
                    cells[d].push(unit(i));
                }
            }
        }
        Model::Augmented => {
            let a = augmented_two_complex(k, p)?;
            cells = vec![Vec::new(); 3];
            for s in a.vertices.iter().chain(&a.edges).chain(&a.triangles) {
                cells[s.dim()].push(unit(k.index_of(s).unwrap()));
            }
            for fan in &a.fans {
                for v in &fan.lattice {
                    let mut c: Chain = fan
                        .triangles
                        .iter()
                        .zip(v)
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(t, x)| (layout.pos(k, t), x.clone()))
                        .collect();
                    c.sort_by_key(|e| e.0);
                    cells[2].push(c);
                }
            }
        }
    }
    cells.truncate(j + 2);
    let source = embedded_from_cells(k, &layout, cells);
    let mut maps = Vec::new();
    for d in 0..source.basis.len() {
        let mut m = SparseMatrix::zeros(target.complex().rank(d), 0);
        for c in &source.basis[d] {
            let coords = target
                .coordinates(d, c)
                .ok_or_else(|| Error::precondition("a Gajer chain is not an intersection chain"))?;
            m.push_column(coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()));
        }
        maps.push(m);
    }
    let chain_map_verified = is_chain_map(&source.complex, target.complex(), &maps);
    if !chain_map_verified {
        return Err(Error::precondition("inclusion of chains does not commute with boundaries"));
    }
    let src_basis = HomologyBasis::new(&source.complex, j);
    let tgt_basis = HomologyBasis::new(target.complex(), j);
    let map = HomologyClassMap::induced(&src_basis, &tgt_basis, &maps[j]);
    Ok(ComparisonReport { degree: j, model, chain_map_verified, map })
}

/// Exactness of the Mayer–Vietoris sequence at one degree.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeExactness {
    pub degree: usize,
    pub intersection: HomologyGroup,
    pub first: HomologyGroup,
    pub second: HomologyGroup,
    pub total: HomologyGroup,
    /// Exact at `IH_j(A ∩ B)`, `IH_j(A) ⊕ IH_j(B)` and `IH_j(K)`.
    pub exact_at_intersection: bool,
    pub exact_at_sum: bool,
    pub exact_at_total: bool,
    /// Some cycle of `K` could not be split into intersection chains of `A` and `B`.
    pub splitting_failed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub degrees: Vec<DegreeExactness>,
    pub exact: bool,
}

/// Computes the Mayer–Vietoris sequence of intersection homology for a cover
/// `K = A ∪ B` by subcomplexes (given by generating simplices) and reports
/// exactness degree by degree. Allowability is taken from the strata of `K`.
pub fn mayer_vietoris_check(
    k: &FilteredComplex,
    p: &Perversity,
    cover_a: &[Simplex],
    cover_b: &[Simplex],
) -> Result<ExactnessReport> {
    let members = |gens: &[Simplex]| -> Result<BTreeSet<usize>> {
        closure(gens)
            .iter()
            .map(|s| k.index_of(s).ok_or_else(|| Error::UnknownSimplex(s.to_string())))
            .collect()
    };
    let ma = members(cover_a)?;
    let mb = members(cover_b)?;
    if ma.len() + mb.len() - ma.intersection(&mb).count() != k.simplices().len() {
        return Err(Error::precondition("the two subcomplexes do not cover the complex"));
    }
    let mab: BTreeSet<usize> = ma.intersection(&mb).copied().collect();
    let f = Fullness::new(k, p)?;
    let layout = Layout::new(k);
    let top = k.dim().unwrap_or(0);
    let ic_ab = IntersectionChains::build(k, &f, Some(&mab), top);
    let ic_a = IntersectionChains::build(k, &f, Some(&ma), top);
    let ic_b = IntersectionChains::build(k, &f, Some(&mb), top);
    let ic_k = IntersectionChains::build(k, &f, None, top);

    let hb = |ic: &IntersectionChains| -> Vec<HomologyBasis> {
        (0..=top).map(|j| HomologyBasis::new(ic.complex(), j)).collect()
    };
    let (h_ab, h_a, h_b, h_k) = (hb(&ic_ab), hb(&ic_a), hb(&ic_b), hb(&ic_k));

    // class coordinates of an ambient cycle in one of the pieces
    let class = |ic: &IntersectionChains, h: &HomologyBasis, j: usize, c: &[(usize, Int)]| -> Vec<Int> {
        h.coordinates(&ic.coordinates(j, c).expect("chain of the subcomplex"))
    };
    let ambient = |ic: &IntersectionChains, j: usize, coords: &[Int]| -> Chain {
        let mut acc: HashMap<usize, Int> = HashMap::new();
        for (b, x) in coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (pos, c) in &ic.chains.basis[j][b] {
                *acc.entry(*pos).or_insert_with(Int::zero) += x * c;
            }
        }
        let mut out: Chain = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|e| e.0);
        out
    };

    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut delta: Vec<Option<Vec<Vec<Int>>>> = Vec::new();
    for j in 0..=top {
        // α(x) = (x, -x)
        let mut a_cols = Vec::new();
        for g in h_ab[j].generators() {
            let c = ambient(&ic_ab, j, g);
            let mut col = class(&ic_a, &h_a[j], j, &c);
            let neg: Chain = c.iter().map(|(p, x)| (*p, -x.clone())).collect();
            col.extend(class(&ic_b, &h_b[j], j, &neg));
            a_cols.push(col);
        }
        alpha.push(a_cols);
        // β(a, b) = a + b
        let mut b_cols = Vec::new();
        for g in h_a[j].generators() {
            b_cols.push(class(&ic_k, &h_k[j], j, &ambient(&ic_a, j, g)));
        }
        for g in h_b[j].generators() {
            b_cols.push(class(&ic_k, &h_k[j], j, &ambient(&ic_b, j, g)));
        }
        beta.push(b_cols);
        // δ[z] = [∂a] where z = a + b
        if j == 0 {
            delta.push(Some(vec![Vec::new(); h_k[0].generators().len()]));
            continue;
        }
        let ea = embedding_matrix(&ic_a, j, layout.count(j));
        let eb = embedding_matrix(&ic_b, j, layout.count(j));
        let e = ea.hstack(&eb);
        let mut d_cols = Some(Vec::new());
        for g in h_k[j].generators() {
            let z = ambient(&ic_k, j, g);
            let mut dense = vec![Int::zero(); layout.count(j)];
            for (pos, c) in &z {
                dense[*pos] = c.clone();
            }
            let Some(x) = solve_integer(&e, &dense) else {
                d_cols = None;
                break;
            };
            let a_coords = &x[..ea.cols()];
            let a_chain = ambient(&ic_a, j, a_coords);
            let da = boundary_chain(k, &layout, j, &a_chain);
            match ic_ab.coordinates(j - 1, &da) {
                Some(c) => d_cols.as_mut().unwrap().push(h_ab[j - 1].coordinates(&c)),
                None => {
                    d_cols = None;
                    break;
                }
            }
        }
        delta.push(d_cols);
    }

    let mut degrees = Vec::new();
    for j in 0..=top {
        let ord_ab = h_ab[j].orders();
        let mut ord_sum = h_a[j].orders();
        ord_sum.extend(h_b[j].orders());
        let ord_k = h_k[j].orders();
        let empty = Vec::new();
        // incoming to A∩B_j is δ_{j+1}
        let exact_at_intersection = match delta.get(j + 1) {
            Some(Some(d)) => exact_at(d, &h_k[j + 1].orders(), &alpha[j], &ord_ab, &ord_sum),
            Some(None) => false,
            None => exact_at(&empty, &[], &alpha[j], &ord_ab, &ord_sum),
        };
        let exact_at_sum = exact_at(&alpha[j], &ord_ab, &beta[j], &ord_sum, &ord_k);
        let exact_at_total = match &delta[j] {
            Some(d) => {
                let ord_next = if j == 0 { Vec::new() } else { h_ab[j - 1].orders() };
                exact_at(&beta[j], &ord_sum, d, &ord_k, &ord_next)
            }
            None => false,
        };
        degrees.push(DegreeExactness {
            degree: j,
            intersection: h_ab[j].group.clone(),
            first: h_a[j].group.clone(),
            second: h_b[j].group.clone(),
            total: h_k[j].group.clone(),
            exact_at_intersection,
            exact_at_sum,
            exact_at_total,
            splitting_failed: delta[j].is_none(),
        });
    }
    let exact = degrees
        .iter()
        .all(|d| d.exact_at_intersection && d.exact_at_sum && d.exact_at_total);
    Ok(ExactnessReport { degrees, exact })
}

fn embedding_matrix(ic: &IntersectionChains, j: usize, rows: usize) -> DenseMatrix {
    let basis = ic.chains.basis.get(j).map_or(&[][..], Vec::as_slice);
    let mut m = DenseMatrix::zeros(rows, basis.len());
    for (b, c) in basis.iter().enumerate() {
        for (pos, x) in c {
            m.set(*pos, b, x.clone());
        }
    }
    m
}

/// Exactness of `F --α--> G --β--> H` at `G`, for groups given by generator
/// orders (0 = free) and maps by their columns of target coordinates.
fn exact_at(alpha: &[Vec<Int>], _f_orders: &[Int], beta: &[Vec<Int>], g_orders: &[Int], h_orders: &[Int]) -> bool {
    let (ng, nh) = (g_orders.len(), h_orders.len());
    let reduce = |v: &[Int], orders: &[Int]| -> bool {
        v.iter().zip(orders).all(|(x, o)| if o.is_zero() { x.is_zero() } else { (x % o).is_zero() })
    };
    let apply_beta = |x: &[Int]| -> Vec<Int> {
        let mut out = vec![Int::zero(); nh];
        for (k, xk) in x.iter().enumerate() {
            for i in 0..nh {
                out[i] += &beta[k][i] * xk;
            }
        }
        out
    };
    // β ∘ α = 0
    if !alpha.iter().all(|a| reduce(&apply_beta(a), h_orders)) {
        return false;
    }
    if ng == 0 {
        return true;
    }
    // ker β ⊆ im α + relations of G
    let mut cols: Vec<Vec<Int>> = (0..ng)
        .map(|k| if nh == 0 { Vec::new() } else { beta[k].clone() })
        .collect();
    for (i, o) in h_orders.iter().enumerate() {
        if !o.is_zero() {
            let mut c = vec![Int::zero(); nh];
            c[i] = o.clone();
            cols.push(c);
        }
    }
    let kernel: Vec<Vec<Int>> = if nh == 0 {
        (0..ng)
            .map(|i| (0..ng).map(|k| Int::from((i == k) as i64)).collect())
            .collect()
    } else {
        kernel_basis(&DenseMatrix::from_columns(nh, &cols))
            .into_iter()
            .map(|v| v[..ng].to_vec())
            .collect()
    };
    let mut span: Vec<Vec<Int>> = alpha.to_vec();
    for (i, o) in g_orders.iter().enumerate() {
        if !o.is_zero() {
            let mut c = vec![Int::zero(); ng];
            c[i] = o.clone();
            span.push(c);
        }
    }
    let m = DenseMatrix::from_columns(ng, &span);
    kernel.iter().all(|v| solve_integer(&m, v).is_some())
}

/// The cover of `K` by the closed star of `v` and the full subcomplex on the
/// other vertices, as generating simplices.
pub fn star_cover(k: &FilteredComplex, v: usize) -> Result<(Vec<Simplex>, Vec<Simplex>)> {
    let star = k.star(v)?;
    let others: BTreeSet<usize> = k.vertices().into_iter().filter(|&u| u != v).collect();
    let rest = k.full_subcomplex(&others);
    Ok((star.facets().to_vec(), rest.facets().to_vec()))
}
