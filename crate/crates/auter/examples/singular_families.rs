//! Tag the symmetric vertex classes of the rank-9 singular locus into
//! the six symmetry families (the long-running classification).
//!
//! ```bash
//! cargo run --release --example singular_families
//! ```

use auter::singular::classify_singular_vertices;
use std::collections::BTreeMap;

fn main() {
    let classes = classify_singular_vertices(5);
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for class in &classes {
        *counts.entry(class.family.to_string()).or_insert(0) += 1;
    }
    println!("{} singular vertex classes at rank 9:", classes.len());
    for (family, count) in counts {
        println!("  {family}: {count}");
    }
    // The unique class with the full symmetric group on 2p edges.
    for class in &classes {
        if class.aut_order == 3628800 {
            println!(
                "largest stabilizer: {} vertices, {} edges, |Aut| = {}",
                class.graph.n_vertices,
                class.graph.n_edges(),
                class.aut_order
            );
        }
    }
}
