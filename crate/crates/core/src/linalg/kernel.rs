use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::smith::smith_normal_form;
use super::{DenseMatrix, Int};

/// A saturated basis of the integer kernel `{x : A x = 0}`, one vector per
/// entry, in row Hermite normal form.
///
/// Saturated means the basis spans every integer vector of the rational
/// kernel, so the kernel is a direct summand of `Z^n`.
pub fn kernel_basis(a: &DenseMatrix) -> Vec<Vec<Int>> {
    let n = a.cols();
    if n == 0 {
        return Vec::new();
    }
    if a.rows() == 0 || a.is_zero() {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { Int::from(1) } else { Int::zero() }).collect())
            .collect();
    }
    let s = smith_normal_form(a);
    let basis: Vec<Vec<Int>> = (s.rank()..n).map(|j| s.v.column(j)).collect();
    hermite_rows(basis)
}

/// Row Hermite normal form of the lattice spanned by `rows`, zero rows dropped.
///
/// Pivots are positive, entries above a pivot are reduced into `[0, pivot)`.
pub fn hermite_rows(mut rows: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    let Some(n) = rows.first().map(Vec::len) else { return rows };
    let mut r = 0;
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        loop {
            // smallest non-zero entry in column c at or below row r
            let piv = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&x, &y| rows[x][c].abs().cmp(&rows[y][c].abs()).then(x.cmp(&y)));
            let Some(p) = piv else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                axpy(&mut tail[0], &head[r], &q);
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                if rows[r][c].is_negative() {
                    for x in rows[r].iter_mut() {
                        *x = -x.clone();
                    }
                }
                for i in 0..r {
                    let q = rows[i][c].div_floor(&rows[r][c]);
                    let (head, tail) = rows.split_at_mut(r);
                    axpy(&mut head[i], &tail[0], &q);
                }
                r += 1;
                break;
            }
        }
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

/// `target -= q · source`.
fn axpy(target: &mut [Int], source: &[Int], q: &Int) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// A left inverse `L` (`k × n`) of a matrix `B` (`n × k`) whose columns form
/// a saturated basis, so that `L · B = I_k`.
///
/// Returns `None` when the columns are dependent or do not span a direct
/// summand.
pub fn left_inverse(b: &DenseMatrix) -> Option<DenseMatrix> {
    let (n, k) = (b.rows(), b.cols());
    if k == 0 {
        return Some(DenseMatrix::zeros(0, n));
    }
    let s = smith_normal_form(b);
    if s.rank() != k || s.diagonal.iter().any(|d| d != &Int::from(1)) {
        return None;
    }
    // B = U⁻¹ [I; 0] V⁻¹, so V [I 0] U is a left inverse.
    let top = s.u.select_rows(&(0..k).collect::<Vec<_>>());
    Some(s.v.mul(&top))
}

/// Some integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &DenseMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), b.len());
    if a.cols() == 0 {
        return b.iter().all(Zero::is_zero).then(Vec::new);
    }
    let s = smith_normal_form(a);
    let ub = s.u.apply(b);
    let mut y = vec![Int::zero(); a.cols()];
    for (i, x) in ub.iter().enumerate() {
        if i < s.rank() {
            let (q, r) = x.div_rem(&s.diagonal[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !x.is_zero() {
            return None;
        }
    }
    Some(s.v.apply(&y))
}
