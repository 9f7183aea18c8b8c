//! Build quotient cell complexes from flags of forest collapses.
//!
//! ```bash
//! cargo run --example build_complexes
//! ```

use auter::complex::build_quotient_complex;
use auter::enumerate::Pointing;

fn main() {
    for (rank, pointing, deg_max) in [
        (2, Pointing::Single, None),
        (2, Pointing::Double, Some(2)),
        (2, Pointing::Double, Some(3)),
        (2, Pointing::Double, None),
    ] {
        let cx = build_quotient_complex(rank, pointing, deg_max);
        let cells: Vec<usize> = (0..cx.cells.len()).map(|d| cx.n_cells(d)).collect();
        println!(
            "{}: dimension {}, cells {:?}, Euler characteristic {}",
            cx.meta.label,
            cx.dimension(),
            cells,
            cx.euler_characteristic()
        );
    }
}
