use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{DenseMatrix, Int, SparseMatrix};

/// `U · A · V = D` with `D` diagonal, `d_1 | d_2 | … | d_r`, all positive.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: DenseMatrix,
    pub v: DenseMatrix,
    pub d: DenseMatrix,
    /// The non-zero diagonal entries, in order.
    pub diagonal: Vec<Int>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// The pivot at each stage is the entry of least absolute value in the
/// remaining block, ties broken by column and then row, so results are
/// deterministic.
pub fn smith_normal_form(a: &DenseMatrix) -> Smith {
    let (d, u, v, diagonal) = reduce(a.clone(), true);
    Smith { u: u.unwrap(), v: v.unwrap(), d, diagonal }
}

/// Diagonal of the Smith normal form, without transforms.
pub fn smith_diagonal(a: &DenseMatrix) -> Vec<Int> {
    reduce(a.clone(), false).3
}

#[allow(clippy::type_complexity)]
fn reduce(mut a: DenseMatrix, track: bool) -> (DenseMatrix, Option<DenseMatrix>, Option<DenseMatrix>, Vec<Int>) {
    let (m, n) = (a.rows(), a.cols());
    let mut u = track.then(|| DenseMatrix::identity(m));
    let mut v = track.then(|| DenseMatrix::identity(n));
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_entry(&a, t) else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..m {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                let neg = -q;
                a.add_row_multiple(i, t, &neg);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(i, t, &neg);
                }
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..n {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                let neg = -q;
                a.add_col_multiple(j, t, &neg);
                if let Some(v) = v.as_mut() {
                    v.add_col_multiple(j, t, &neg);
                }
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a smaller remainder exists in row or column t: move it to the pivot
                let (pi, pj) = min_in_cross(&a, t);
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                if let Some(u) = u.as_mut() {
                    u.swap_rows(t, pi);
                }
                if let Some(v) = v.as_mut() {
                    v.swap_cols(t, pj);
                }
                continue;
            }
            // divisibility: fold a row with a non-multiple into row t
            let p = a.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = Int::one();
                    a.add_row_multiple(t, i, &one);
                    if let Some(u) = u.as_mut() {
                        u.add_row_multiple(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        diagonal.push(a.get(t, t).clone());
        t += 1;
    }
    (a, u, v, diagonal)
}

fn min_entry(a: &DenseMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(Int, usize, usize)> = None;
    for j in t..a.cols() {
        for i in t..a.rows() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ab = x.abs();
            if best.as_ref().map_or(true, |b| ab < b.0) {
                let unit = ab.is_one();
                best = Some((ab, i, j));
                if unit {
                    return best.map(|b| (b.1, b.2));
                }
            }
        }
    }
    best.map(|b| (b.1, b.2))
}

fn min_in_cross(a: &DenseMatrix, t: usize) -> (usize, usize) {
    let mut best = (a.get(t, t).abs(), t, t);
    for i in t + 1..a.rows() {
        let x = a.get(i, t);
        if !x.is_zero() && x.abs() < best.0 {
            best = (x.abs(), i, t);
        }
    }
    for j in t + 1..a.cols() {
        let x = a.get(t, j);
        if !x.is_zero() && x.abs() < best.0 {
            best = (x.abs(), t, j);
        }
    }
    (best.1, best.2)
}

/// Rank and non-unit invariant factors of a sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<Int>,
}

/// Below this many rows and columns the dense routine is used directly.
const DENSE_CUTOFF: usize = 64;

/// Invariant factors by sparse elimination of unit pivots followed by a dense
/// Smith normal form of what is left.
///
/// Unit pivots are chosen by least Markowitz cost `(r-1)(c-1)`, ties broken
/// by column then row index.
pub fn invariant_factors(m: &SparseMatrix) -> InvariantFactors {
    if m.nrows() <= DENSE_CUTOFF && m.ncols() <= DENSE_CUTOFF {
        return from_diagonal(0, smith_diagonal(&m.to_dense()));
    }
    let mut cols: Vec<BTreeMap<usize, Int>> = m
        .columns()
        .iter()
        .map(|c| c.iter().cloned().collect())
        .collect();
    let mut rows: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); m.nrows()];
    for (j, c) in cols.iter().enumerate() {
        for &i in c.keys() {
            rows[i].insert(j);
        }
    }
    let mut units = 0;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (j, c) in cols.iter().enumerate() {
            if c.is_empty() {
                continue;
            }
            let cc = c.len() - 1;
            if let Some(b) = best {
                if b.0 == 0 {
                    break;
                }
                // a column this full cannot beat the current best
                if cc > 0 && cc > b.0 {
                    continue;
                }
            }
            for (&i, x) in c {
                if x.abs().is_one() {
                    let cost = (rows[i].len() - 1) * cc;
                    if best.map_or(true, |b| cost < b.0) {
                        best = Some((cost, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let pivot_col = std::mem::take(&mut cols[pj]);
        let u = pivot_col[&pi].clone();
        for &r in pivot_col.keys() {
            rows[r].remove(&pj);
        }
        let others: Vec<usize> = rows[pi].iter().copied().collect();
        for k in others {
            let factor = &cols[k][&pi] * &u;
            for (r, x) in &pivot_col {
                let e = cols[k].entry(*r).or_insert_with(Int::zero);
                *e -= &factor * x;
                if e.is_zero() {
                    cols[k].remove(r);
                    rows[*r].remove(&k);
                } else {
                    rows[*r].insert(k);
                }
            }
            debug_assert!(!cols[k].contains_key(&pi));
        }
        debug_assert!(rows[pi].is_empty());
        units += 1;
    }
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    if live_cols.is_empty() {
        return from_diagonal(units, Vec::new());
    }
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let row_pos: BTreeMap<usize, usize> = live_rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut d = DenseMatrix::zeros(live_rows.len(), live_cols.len());
    for (k, &j) in live_cols.iter().enumerate() {
        for (i, x) in &cols[j] {
            d.set(row_pos[i], k, x.clone());
        }
    }
    from_diagonal(units, smith_diagonal(&d))
}

fn from_diagonal(units: usize, diagonal: Vec<Int>) -> InvariantFactors {
    let rank = units + diagonal.len();
    let torsion = diagonal.into_iter().filter(|d| !d.is_one()).collect();
    InvariantFactors { rank, torsion }
}
