//! Marked graphs, norms, and the Whitehead-move norm identity.
//!
//! ```bash
//! cargo run --example whitehead_norms
//! ```

use auter::symmetry::{GroupGraph, GroupKind};
use auter::whitehead::{
    abs_aut, aut_norm, ideal_edges, orbit_index, whitehead_move, MarkedGroupGraph, NormContext,
};
use auter::zoo;
use std::collections::BTreeSet;

fn main() {
    let gg = GroupGraph::new(zoo::rose(2), GroupKind::Trivial, vec![]).unwrap();
    let mgg = MarkedGroupGraph::standard(gg).unwrap();
    let ctx = NormContext::new(2, 16);
    println!("first context words: {:?}", &ctx.words[..6]);
    let before = aut_norm(&mgg, &ctx).unwrap();
    println!("aut norm before: {:?}", &before.0[..6]);

    // Blow both petal heads off the basepoint and collapse the first.
    let alpha = ideal_edges(&mgg.gg)
        .into_iter()
        .find(|a| a.members == [1u32, 3].into_iter().collect::<BTreeSet<u32>>())
        .unwrap();
    let a = 1u32;
    let moved = whitehead_move(&mgg, &alpha, a).unwrap();
    let after = aut_norm(&moved, &ctx).unwrap();
    println!("aut norm after:  {:?}", &after.0[..6]);

    let index = orbit_index(&mgg.gg, &alpha) as i64;
    let abs_alpha = abs_aut(&mgg, &ctx, &alpha.members).unwrap();
    let abs_a = abs_aut(&mgg, &ctx, &[a].into_iter().collect()).unwrap();
    let holds = (0..ctx.words.len()).all(|i| {
        after.0[i] as i64
            == before.0[i] as i64 + index * (abs_alpha.0[i] as i64 - abs_a.0[i] as i64)
    });
    println!("norm identity holds entry-wise: {holds}");
}
