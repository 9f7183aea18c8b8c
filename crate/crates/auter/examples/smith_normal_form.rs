//! Exact integer linear algebra: Smith normal form with transforms.
//!
//! ```bash
//! cargo run --example smith_normal_form
//! ```

use auter::complex::build_quotient_complex;
use auter::enumerate::Pointing;
use auter::snf::{smith_normal_form, IntMat};

fn main() {
    let m = IntMat::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, 4, 16]);
    let snf = smith_normal_form(&m, true);
    println!("diagonal: {:?}", snf.diagonal);

    // The second boundary matrix of the sphere-carrying complex.
    let cx = build_quotient_complex(2, Pointing::Double, Some(2));
    let d2 = cx.boundary_matrix(2).unwrap();
    let snf = smith_normal_form(&d2, false);
    println!(
        "boundary ∂_2 is {}x{} with rank {} and invariant factors {:?}",
        d2.rows,
        d2.cols,
        snf.rank(),
        snf.diagonal
    );
}
