//! Nielsen transformations: a single move turning the wedge of two
//! thetas into the chain, and the closure computation.
//!
//! ```bash
//! cargo run --example nielsen_moves
//! ```

use auter::nielsen::{admissible_moves, nielsen_closure, nielsen_transform};
use auter::symmetry::{equivariant_code, omega_diagonal, psi_diagonal};

fn main() {
    let psi = psi_diagonal(3);
    println!(
        "admissible moves on the theta wedge: {}",
        admissible_moves(&psi).len()
    );
    let moved = nielsen_transform(&psi, 1, 7).unwrap();
    println!(
        "one move turns it into the theta chain: {}",
        equivariant_code(&moved, None) == equivariant_code(&omega_diagonal(3), None)
    );
    let closure = nielsen_closure(&psi).unwrap();
    println!("closure size: {}", closure.len());
}
