//! Exact homology of the built complexes: the degree-2 truncation of the
//! double-pointed rank-2 complex is a sphere, the full complex is
//! mod-3 acyclic.
//!
//! ```bash
//! cargo run --example homology_tables
//! ```

use auter::complex::build_quotient_complex;
use auter::enumerate::Pointing;
use auter::homology::{homology, Coefficients};

fn main() {
    let sphere = build_quotient_complex(2, Pointing::Double, Some(2));
    let h = homology(&sphere, Coefficients::ModP(3)).unwrap();
    println!("degree-capped double-pointed rank 2:");
    println!("  Betti over Q:  {:?}", h.betti_q());
    println!("  Betti over F3: {:?}", h.betti_fp());

    let full = build_quotient_complex(2, Pointing::Double, None);
    let h = homology(&full, Coefficients::ModP(3)).unwrap();
    println!("full double-pointed rank 2:");
    println!("  Betti over F3: {:?}", h.betti_fp());

    let q2 = build_quotient_complex(2, Pointing::Single, None);
    let h = homology(&q2, Coefficients::Integral).unwrap();
    println!("single-pointed rank 2:");
    println!("  Betti over Q:  {:?}", h.betti_q());
    println!(
        "  torsion:       {:?}",
        h.degrees
            .iter()
            .map(|d| d.torsion.clone())
            .collect::<Vec<_>>()
    );
}
