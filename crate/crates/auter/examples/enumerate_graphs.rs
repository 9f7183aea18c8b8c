//! Enumerate isomorphism classes of admissible pointed graphs.
//!
//! ```bash
//! cargo run --example enumerate_graphs
//! ```

use auter::enumerate::{enumerate_graphs, Pointing};

fn main() {
    for pointing in [Pointing::Single, Pointing::Double] {
        for rank in 1..=2 {
            let classes = enumerate_graphs(rank, pointing, None);
            println!("rank {rank}, {pointing}: {} classes", classes.len());
            for class in &classes {
                println!(
                    "  {} vertices, {} edges, degree {}, |Aut| = {}",
                    class.graph.n_vertices,
                    class.graph.n_edges(),
                    class.degree,
                    class.aut_order
                );
            }
        }
    }
    // Restricting rank 4 to classes with 3-fold symmetry picks out the
    // rotation families among others.
    let classes = enumerate_graphs(4, Pointing::Single, None);
    let symmetric = classes.iter().filter(|c| c.aut_order % 3 == 0).count();
    println!(
        "rank 4: {} classes, {symmetric} with 3 | |Aut|",
        classes.len()
    );
}
