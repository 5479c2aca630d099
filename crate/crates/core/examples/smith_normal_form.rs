//! Exact integer linear algebra: Smith form, saturated kernels and integer
//! solving.

use perverse::linalg::{kernel_basis, left_inverse, smith_normal_form, solve_integer, DenseMatrix, Int};

fn main() {
    let a = DenseMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith_normal_form(&a);
    println!("diagonal {:?}, rank {}", s.diagonal, s.rank());
    println!("U A V == D: {}", s.u.mul(&a).mul(&s.v) == s.d);

    let b = DenseMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
    let k = kernel_basis(&b);
    println!("kernel basis {k:?}");
    let z = DenseMatrix::from_columns(3, &k);
    println!("kernel is saturated: {}", left_inverse(&z).is_some());
    let x = solve_integer(&b, &[Int::from(6), Int::from(12)]);
    println!("integer solution of b x = (6, 12): {x:?}");
}
