//! Exact integer linear algebra.
//!
//! Entries are arbitrary precision ([`Int`]). Homology ranks and torsion come
//! from [`invariant_factors`], which eliminates unit pivots sparsely and hands
//! the (usually tiny) residual to a dense Smith normal form. Kernels, left
//! inverses and integer solves go through the dense routines in [`smith`] and
//! [`kernel`].

pub mod dense;
pub mod kernel;
pub mod smith;
pub mod sparse;

pub use dense::DenseMatrix;
pub use kernel::{kernel_basis, left_inverse, solve_integer};
pub use smith::{invariant_factors, smith_normal_form, Smith};
pub use sparse::SparseMatrix;

pub type Int = num_bigint::BigInt;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Rank over `Z/p` for a prime `p < 2^31`, by dense Gaussian elimination.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    use num_traits::ToPrimitive;
    let (r, c) = (m.nrows(), m.ncols());
    let mut a = vec![vec![0u64; c]; r];
    for (j, col) in m.columns().iter().enumerate() {
        for (i, v) in col {
            let pm = Int::from(p);
            let mut x = v % &pm;
            if x < Int::from(0) {
                x += &pm;
            }
            a[*i][j] = x.to_u64().unwrap();
        }
    }
    let mut rank = 0;
    for col in 0..c {
        let Some(piv) = (rank..r).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][col], p - 2, p);
        for i in 0..r {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col] * inv % p;
                for k in col..c {
                    a[i][k] = (a[i][k] + p * p - f * a[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}
