//! Integer chain complexes, homology with torsion, and maps on homology.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::kernel::kernel_basis;
use crate::linalg::smith::{invariant_factors, smith_diagonal};
use crate::linalg::{left_inverse, smith_normal_form, DenseMatrix, Int, SparseMatrix};
use crate::simplex::Simplex;

/// Graded free modules `C_0, C_1, …` with boundaries `∂_j : C_j → C_{j-1}`.
#[derive(Clone, Debug)]
pub struct IntegerChainComplex {
    labels: Vec<Vec<String>>,
    boundaries: Vec<SparseMatrix>,
}

impl IntegerChainComplex {
    /// `boundaries[j]` is `∂_j`, with `dims[j-1]` rows (`∂_0` has none).
    /// Fails if shapes disagree or `∂_{j-1} ∂_j ≠ 0`.
    pub fn new(labels: Vec<Vec<String>>, boundaries: Vec<SparseMatrix>) -> Result<Self> {
        if labels.len() != boundaries.len() {
            return Err(Error::malformed("one boundary matrix per degree"));
        }
        for (j, d) in boundaries.iter().enumerate() {
            let rows = if j == 0 { 0 } else { labels[j - 1].len() };
            if d.ncols() != labels[j].len() || d.nrows() != rows {
                return Err(Error::malformed(format!(
                    "boundary {j} is {}x{}, expected {rows}x{}",
                    d.nrows(),
                    d.ncols(),
                    labels[j].len()
                )));
            }
            if j >= 1 && !boundaries[j - 1].mul(d).is_zero() {
                return Err(Error::malformed(format!("boundary squared is not zero in degree {j}")));
            }
        }
        Ok(IntegerChainComplex { labels, boundaries })
    }

    /// Simplicial chains on a face-closed list of simplices.
    pub fn from_simplices(simplices: &[Simplex]) -> Self {
        let top = simplices.iter().map(Simplex::dim).max();
        let Some(top) = top else {
            return IntegerChainComplex { labels: Vec::new(), boundaries: Vec::new() };
        };
        let mut by_dim: Vec<Vec<&Simplex>> = vec![Vec::new(); top + 1];
        for s in simplices {
            by_dim[s.dim()].push(s);
        }
        for v in by_dim.iter_mut() {
            v.sort();
        }
        let index: Vec<HashMap<&Simplex, usize>> = by_dim
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, s)| (*s, i)).collect())
            .collect();
        let mut boundaries = Vec::with_capacity(top + 1);
        boundaries.push(SparseMatrix::zeros(0, by_dim[0].len()));
        for j in 1..=top {
            let mut d = SparseMatrix::zeros(by_dim[j - 1].len(), 0);
            for s in &by_dim[j] {
                d.push_column(s.boundary_faces().iter().enumerate().map(|(i, f)| {
                    let row = *index[j - 1].get(f).expect("face-closed input");
                    (row, sign(i))
                }));
            }
            boundaries.push(d);
        }
        let labels = by_dim
            .iter()
            .map(|v| v.iter().map(|s| s.to_string()).collect())
            .collect();
        let c = IntegerChainComplex { labels, boundaries };
        debug_assert!(c.check_boundary_squared());
        c
    }

    /// Highest degree with a (possibly empty) module, or `None` when empty.
    pub fn top_degree(&self) -> Option<usize> {
        self.labels.len().checked_sub(1)
    }

    pub fn rank(&self, j: usize) -> usize {
        self.labels.get(j).map_or(0, Vec::len)
    }

    pub fn labels(&self, j: usize) -> &[String] {
        self.labels.get(j).map_or(&[], Vec::as_slice)
    }

    /// `∂_j`; degrees outside the complex give the appropriately sized zero map.
    pub fn boundary(&self, j: usize) -> SparseMatrix {
        match self.boundaries.get(j) {
            Some(d) => d.clone(),
            None => SparseMatrix::zeros(if j == 0 { 0 } else { self.rank(j - 1) }, self.rank(j)),
        }
    }

    pub fn check_boundary_squared(&self) -> bool {
        (1..self.boundaries.len()).all(|j| self.boundaries[j - 1].mul(&self.boundaries[j]).is_zero())
    }

    /// Alternating sum of the module ranks.
    pub fn euler_characteristic(&self) -> i64 {
        (0..self.labels.len()).map(|j| sign_i64(j) * self.rank(j) as i64).sum()
    }
}

fn sign(i: usize) -> Int {
    if i % 2 == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

fn sign_i64(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    Integers,
    /// `Z/m` with `m ≥ 2`.
    Modulo(u64),
}

/// `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | … | d_k`, all `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(with = "int_list")]
    pub torsion: Vec<Int>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub representatives: Option<Vec<Vec<(usize, String)>>>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new(), representatives: None }
    }

    pub fn new(rank: usize, torsion: Vec<Int>) -> Self {
        HomologyGroup { rank, torsion, representatives: None }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Same rank and torsion, ignoring representatives.
    pub fn isomorphic(&self, other: &HomologyGroup) -> bool {
        self.rank == other.rank && self.torsion == other.torsion
    }

    /// Direct sum, with torsion renormalised to a divisibility chain.
    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        let mut orders = self.torsion.clone();
        orders.extend(other.torsion.iter().cloned());
        HomologyGroup::new(self.rank + other.rank, normalize_torsion(&orders))
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Invariant factors (> 1) of `⊕ Z/o_i`.
pub fn normalize_torsion(orders: &[Int]) -> Vec<Int> {
    let n = orders.len();
    let mut d = DenseMatrix::zeros(n, n);
    for (i, o) in orders.iter().enumerate() {
        d.set(i, i, o.clone());
    }
    smith_diagonal(&d).into_iter().filter(|x| !x.is_one()).collect()
}

/// Serialises integer lists as JSON numbers when they fit in `i64`.
pub(crate) mod int_list {
    use num_traits::ToPrimitive;
    use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Value;

    use crate::linalg::Int;

    pub fn to_value(x: &Int) -> Value {
        match x.to_i64() {
            Some(v) => Value::from(v),
            None => Value::String(x.to_string()),
        }
    }

    pub fn from_value<E: de::Error>(v: &Value) -> Result<Int, E> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(Int::from)
                .ok_or_else(|| E::custom(format!("integer expected, got {n}"))),
            Value::String(s) => s.parse().map_err(|_| E::custom(format!("integer expected, got {s:?}"))),
            other => Err(E::custom(format!("integer expected, got {other}"))),
        }
    }

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_value).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let raw = Vec::<Value>::deserialize(d)?;
        raw.iter().map(from_value).collect()
    }
}

/// `H_j(C)` with integer coefficients. Degrees outside the complex give 0.
pub fn homology(c: &IntegerChainComplex, j: usize) -> HomologyGroup {
    let n = c.rank(j);
    if n == 0 {
        return HomologyGroup::zero();
    }
    let out = if j == 0 { 0 } else { invariant_factors(&c.boundary(j)).rank };
    let inc = invariant_factors(&c.boundary(j + 1));
    HomologyGroup::new(n - out - inc.rank, inc.torsion)
}

/// All homology groups `H_0 … H_top`.
pub fn homology_all(c: &IntegerChainComplex) -> Vec<HomologyGroup> {
    (0..c.labels.len()).map(|j| homology(c, j)).collect()
}

/// `H_j(C; R)`. With `Z/m` coefficients the group is finite and is reported
/// through its invariant factors only (`rank` is 0).
pub fn homology_with(c: &IntegerChainComplex, j: usize, coeffs: Coefficients) -> Result<HomologyGroup> {
    match coeffs {
        Coefficients::Integers => Ok(homology(c, j)),
        Coefficients::Modulo(m) if m < 2 => Err(Error::malformed("coefficient modulus must be at least 2")),
        Coefficients::Modulo(m) => {
            // universal coefficients: H_j ⊗ Z/m ⊕ Tor(H_{j-1}, Z/m)
            let m = Int::from(m);
            let hj = homology(c, j);
            let mut orders: Vec<Int> = vec![m.clone(); hj.rank];
            orders.extend(hj.torsion.iter().map(|d| d.gcd(&m)));
            if j > 0 {
                orders.extend(homology(c, j - 1).torsion.iter().map(|d| d.gcd(&m)));
            }
            Ok(HomologyGroup::new(0, normalize_torsion(&orders)))
        }
    }
}

/// Homology in degree `j` together with explicit coordinates.
///
/// Cycles `Z = ker ∂_j` get a saturated basis (columns of `cycles`) with left
/// inverse `L`. The boundaries `L ∂_{j+1}` are brought to Smith form
/// `U (L ∂_{j+1}) V = D`; the class of a cycle `z` then has coordinates
/// `U L z`, reduced modulo the diagonal.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub degree: usize,
    pub group: HomologyGroup,
    chain_rank: usize,
    cycles: DenseMatrix,
    left: DenseMatrix,
    u: DenseMatrix,
    /// Diagonal of `D`, padded with zeros to the cycle rank.
    diagonal: Vec<Int>,
    /// Positions of `U L z` that survive: torsion first, then free.
    kept: Vec<usize>,
    /// Cycle representatives of the generators, in the order of `kept`.
    generators: Vec<Vec<Int>>,
}

impl HomologyBasis {
    pub fn new(c: &IntegerChainComplex, j: usize) -> Self {
        let n = c.rank(j);
        let dj = if j == 0 { DenseMatrix::zeros(0, n) } else { c.boundary(j).to_dense() };
        let z: Vec<Vec<Int>> = kernel_basis(&dj);
        let cycles = DenseMatrix::from_columns(n, &z);
        let left = left_inverse(&cycles).expect("kernel bases are saturated");
        let x = left.mul(&c.boundary(j + 1).to_dense());
        let s = smith_normal_form(&x);
        let zr = z.len();
        let mut diagonal = s.diagonal.clone();
        diagonal.resize(zr, Int::zero());
        let mut kept: Vec<usize> = (0..s.rank()).filter(|&i| !diagonal[i].is_one()).collect();
        kept.extend(s.rank()..zr);
        let u_inv = left_inverse(&s.u).expect("unimodular");
        let generators = kept
            .iter()
            .map(|&i| cycles.apply(&u_inv.column(i)))
            .collect::<Vec<_>>();
        let torsion: Vec<Int> = kept.iter().filter(|&&i| i < s.rank()).map(|&i| diagonal[i].clone()).collect();
        let group = HomologyGroup::new(zr - s.rank(), torsion);
        HomologyBasis { degree: j, group, chain_rank: n, cycles, left, u: s.u, diagonal, kept, generators }
    }

    /// Orders of the generators: `d > 1` for torsion, `0` for free.
    pub fn orders(&self) -> Vec<Int> {
        self.kept.iter().map(|&i| self.diagonal[i].clone()).collect()
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn cycle_basis(&self) -> &DenseMatrix {
        &self.cycles
    }

    pub fn is_cycle(&self, c: &IntegerChainComplex, chain: &[Int]) -> bool {
        self.degree == 0 || c.boundary(self.degree).apply(chain).iter().all(Zero::is_zero)
    }

    /// Coordinates of the class of a cycle. The caller guarantees `z` is a cycle.
    pub fn coordinates(&self, z: &[Int]) -> Vec<Int> {
        assert_eq!(z.len(), self.chain_rank);
        let y = self.u.apply(&self.left.apply(z));
        self.kept
            .iter()
            .map(|&i| {
                let d = &self.diagonal[i];
                if d.is_zero() {
                    y[i].clone()
                } else {
                    y[i].mod_floor(d)
                }
            })
            .collect()
    }

    /// Attaches sparse representatives, labelled by the chain complex's basis.
    pub fn group_with_representatives(&self, c: &IntegerChainComplex) -> HomologyGroup {
        let labels = c.labels(self.degree);
        let reps = self
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (i, format!("{x}*{}", labels[i])))
                    .collect()
            })
            .collect();
        HomologyGroup { representatives: Some(reps), ..self.group.clone() }
    }
}

/// A homomorphism between finitely generated abelian groups given in the
/// generator coordinates of two [`HomologyBasis`] values.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyClassMap {
    pub source: HomologyGroup,
    pub target: HomologyGroup,
    /// `matrix[i][k]`: coordinate `i` of the image of source generator `k`.
    #[serde(serialize_with = "serialize_matrix")]
    pub matrix: Vec<Vec<Int>>,
    pub injective: bool,
    pub surjective: bool,
    pub isomorphism: bool,
}

fn serialize_matrix<S: serde::Serializer>(m: &[Vec<Int>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<serde_json::Value>> =
        m.iter().map(|r| r.iter().map(int_list::to_value).collect()).collect();
    v.serialize(s)
}

impl HomologyClassMap {
    /// Map induced by a chain map `f : C_j → C'_j` (a matrix from source
    /// chains to target chains) on the given homology bases.
    pub fn induced(src: &HomologyBasis, tgt: &HomologyBasis, f: &SparseMatrix) -> Self {
        let cols: Vec<Vec<Int>> = src.generators.iter().map(|g| tgt.coordinates(&f.apply(g))).collect();
        let nt = tgt.kept.len();
        let matrix: Vec<Vec<Int>> = (0..nt).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        Self::from_matrix(src.group.clone(), src.orders(), tgt.group.clone(), tgt.orders(), matrix)
    }

    /// `orders` give each generator's order (0 for free generators).
    pub fn from_matrix(
        source: HomologyGroup,
        src_orders: Vec<Int>,
        target: HomologyGroup,
        tgt_orders: Vec<Int>,
        matrix: Vec<Vec<Int>>,
    ) -> Self {
        let (ns, nt) = (src_orders.len(), tgt_orders.len());
        // [M | R_target], where R_target holds the target relations
        let mut cols: Vec<Vec<Int>> = (0..ns).map(|k| (0..nt).map(|i| matrix[i][k].clone()).collect()).collect();
        for (i, o) in tgt_orders.iter().enumerate() {
            if !o.is_zero() {
                let mut c = vec![Int::zero(); nt];
                c[i] = o.clone();
                cols.push(c);
            }
        }
        let aug = DenseMatrix::from_columns(nt, &cols);
        let surjective = nt == 0 || {
            let d = smith_diagonal(&aug);
            d.len() == nt && d.iter().all(One::is_one)
        };
        // x maps to zero iff (x, y) lies in the kernel of [M | R_target] for some y
        let injective = ns == 0
            || kernel_basis(&aug).iter().all(|v| {
                (0..ns).all(|k| {
                    let o = &src_orders[k];
                    if o.is_zero() {
                        v[k].is_zero()
                    } else {
                        v[k].is_multiple_of(o)
                    }
                })
            });
        HomologyClassMap { source, target, matrix, injective, surjective, isomorphism: injective && surjective }
    }
}

/// `true` iff `f_{j-1} ∂_j = ∂'_j f_j` for every `j` where both maps are given.
pub fn is_chain_map(src: &IntegerChainComplex, tgt: &IntegerChainComplex, maps: &[SparseMatrix]) -> bool {
    for j in 1..maps.len() {
        let lhs = maps[j - 1].mul(&src.boundary(j));
        let rhs = tgt.boundary(j).mul(&maps[j]);
        if lhs.to_dense() != rhs.to_dense() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::int;

    fn h(k: &crate::FilteredComplex) -> Vec<HomologyGroup> {
        homology_all(&IntegerChainComplex::from_simplices(k.simplices()))
    }

    #[test]
    fn spheres_tori_projective_plane() {
        let s2 = h(&fixtures::sphere(2));
        assert_eq!(s2, vec![HomologyGroup::free(1), HomologyGroup::zero(), HomologyGroup::free(1)]);
        let t = h(&fixtures::torus7());
        assert_eq!(t, vec![HomologyGroup::free(1), HomologyGroup::free(2), HomologyGroup::free(1)]);
        let p = h(&fixtures::rp2_6());
        assert_eq!(p[1], HomologyGroup::new(0, vec![int(2)]));
        assert!(p[2].is_zero());
    }

    #[test]
    fn mod_two_coefficients_on_rp2() {
        let c = IntegerChainComplex::from_simplices(fixtures::rp2_6().simplices());
        for j in 0..3 {
            let g = homology_with(&c, j, Coefficients::Modulo(2)).unwrap();
            assert_eq!(g.torsion, vec![int(2)]);
        }
    }

    #[test]
    fn basis_coordinates_detect_generators() {
        let c = IntegerChainComplex::from_simplices(fixtures::rp2_6().simplices());
        let b = HomologyBasis::new(&c, 1);
        assert_eq!(b.group, HomologyGroup::new(0, vec![int(2)]));
        let g = &b.generators()[0];
        assert!(b.is_cycle(&c, g));
        assert_eq!(b.coordinates(g), vec![int(1)]);
        let twice: Vec<Int> = g.iter().map(|x| x * 2).collect();
        assert_eq!(b.coordinates(&twice), vec![int(0)]);
    }

    #[test]
    fn identity_map_is_an_isomorphism() {
        let c = IntegerChainComplex::from_simplices(fixtures::torus7().simplices());
        let b = HomologyBasis::new(&c, 1);
        let id = SparseMatrix::identity(c.rank(1));
        let m = HomologyClassMap::induced(&b, &b, &id);
        assert!(m.isomorphism);
    }

    #[test]
    fn multiplication_by_two_on_z() {
        let m = HomologyClassMap::from_matrix(
            HomologyGroup::free(1),
            vec![int(0)],
            HomologyGroup::free(1),
            vec![int(0)],
            vec![vec![int(2)]],
        );
        assert!(m.injective && !m.surjective);
        let m = HomologyClassMap::from_matrix(
            HomologyGroup::free(1),
            vec![int(0)],
            HomologyGroup::new(0, vec![int(2)]),
            vec![int(2)],
            vec![vec![int(1)]],
        );
        assert!(!m.injective && m.surjective);
    }

    #[test]
    fn malformed_complexes_are_rejected() {
        let d1 = SparseMatrix::from_columns(1, vec![vec![(0, int(1))]]);
        let d2 = SparseMatrix::from_columns(1, vec![vec![(0, int(1))]]);
        let labels = vec![vec!["a".into()], vec!["e".into()], vec!["t".into()]];
        let d0 = SparseMatrix::zeros(0, 1);
        assert!(IntegerChainComplex::new(labels, vec![d0, d1, d2]).is_err());
    }
}
