//! Quotient complexes of fixed-point subcomplexes: the three-vertex
//! complex of the diagonal rotation and the essential swap-rose complex.
//!
//! ```bash
//! cargo run --example fixed_point_complexes
//! ```

use auter::fixed::build_fixed_quotient_complex;
use auter::homology::cohomology_dims_mod_p;
use auter::symmetry::{psi_diagonal, swap_rose, GroupKind};

fn main() {
    let c = build_fixed_quotient_complex(4, GroupKind::Cyclic { p: 3 }, &psi_diagonal(3), true)
        .unwrap();
    println!(
        "diagonal rotation component: {} vertices, {} edges",
        c.n_cells(0),
        c.n_cells(1)
    );

    let omega =
        build_fixed_quotient_complex(3, GroupKind::Cyclic { p: 2 }, &swap_rose(3), true).unwrap();
    println!(
        "essential swap-rose complex: dimension {}, {} vertex classes",
        omega.dimension(),
        omega.n_cells(0)
    );
    println!(
        "mod-3 cohomology dims: {:?}",
        cohomology_dims_mod_p(&omega, 3).unwrap()
    );
}
