//! Serialization formats: graph JSON, DOT, complex JSON, CSV tables and
//! sparse triplet matrices.
//!
//! ```bash
//! cargo run --example export_formats
//! ```

use auter::complex::build_quotient_complex;
use auter::enumerate::Pointing;
use auter::io;
use auter::zoo;

fn main() {
    let theta = zoo::theta_subdivided_aux(3);
    println!("--- graph JSON ---");
    println!("{}", serde_json::to_string_pretty(&theta).unwrap());
    println!("--- graph DOT ---");
    print!("{}", io::dot_graph("theta", &theta));

    let cx = build_quotient_complex(1, Pointing::Double, None);
    println!("--- complex JSON ---");
    println!("{}", serde_json::to_string(&cx.to_json()).unwrap());
    println!("--- cell counts CSV ---");
    print!("{}", io::csv_cell_counts(&cx));
    println!("--- boundary matrix triplets ---");
    print!("{}", io::sparse_triplets(&cx.boundary_matrix(1).unwrap()));
}
