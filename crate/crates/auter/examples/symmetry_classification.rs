//! Reduced group-graph classes and the subgroup-family classification.
//!
//! ```bash
//! cargo run --example symmetry_classification
//! ```

use auter::nielsen::classify_subgroup_classes;
use auter::symmetry::{enumerate_group_graphs, GroupKind};

fn main() {
    let cyclic = enumerate_group_graphs(4, GroupKind::Cyclic { p: 3 }, true);
    println!(
        "reduced rank-4 classes with a 3-fold rotation: {}",
        cyclic.len()
    );
    for class in &cyclic {
        println!(
            "  {} vertices, {} edges",
            class.gg.graph.n_vertices,
            class.gg.graph.n_edges()
        );
    }
    let bicyclic = enumerate_group_graphs(4, GroupKind::Bicyclic { p: 3 }, true);
    println!("reduced bicyclic classes: {}", bicyclic.len());

    let classification = classify_subgroup_classes(4, 3).unwrap();
    for family in &classification.families {
        println!(
            "family {} ({}): {} reduced class(es)",
            family.name,
            family.kind.json_tag(),
            family.members.len()
        );
    }
    for (sub, sup) in &classification.containments {
        println!("containment: {sub} < {sup}");
    }
}
