//! Marked group graphs, the aut/out/tot norms, ideal edges and Whitehead
//! moves.
//!
//! A marking sends free-group generators to reduced edge loops at the
//! basepoint.  Norms are truncated length vectors: the entry of a word is
//! the total length, summed over the group, of the (cyclically) reduced
//! image paths of its translates.  A Whitehead move blows up an ideal
//! edge orbit and collapses an edge orbit of the result; it changes every
//! norm by `[G : stab(α)] · (|α| - |a|)` computed through the
//! inclusion-exclusion absolute values.

use crate::graph::{Forest, PointedGraph};
use crate::symmetry::GroupGraph;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

// ---------------------------------------------------------------------
// Edge paths.
// ---------------------------------------------------------------------
//
// A step is a half-edge: the traversal arrives at `endpoint(h)` coming
// from `endpoint(pair(h))`.

pub fn path_start(g: &PointedGraph, path: &[u32]) -> Option<u32> {
    path.first()
        .map(|&h| g.endpoint[g.pairing[h as usize] as usize])
}

pub fn path_end(g: &PointedGraph, path: &[u32]) -> Option<u32> {
    path.last().map(|&h| g.endpoint[h as usize])
}

pub fn path_is_valid(g: &PointedGraph, path: &[u32]) -> bool {
    path.windows(2)
        .all(|w| g.endpoint[w[0] as usize] == g.endpoint[g.pairing[w[1] as usize] as usize])
}

/// Free reduction: cancels adjacent `h, pair(h)` traversals.
pub fn path_reduce(g: &PointedGraph, path: &[u32]) -> Vec<u32> {
    let mut stack: Vec<u32> = Vec::with_capacity(path.len());
    for &h in path {
        if stack.last() == Some(&g.pairing[h as usize]) {
            stack.pop();
        } else {
            stack.push(h);
        }
    }
    stack
}

pub fn path_is_reduced(g: &PointedGraph, path: &[u32]) -> bool {
    path.windows(2).all(|w| w[1] != g.pairing[w[0] as usize])
}

/// Cyclic reduction of a reduced loop.
pub fn cyclic_reduce(g: &PointedGraph, path: &[u32]) -> Vec<u32> {
    let mut p = path_reduce(g, path);
    while p.len() >= 2 && p[0] == g.pairing[*p.last().unwrap() as usize] {
        p.pop();
        p.remove(0);
    }
    p
}

pub fn path_reverse(g: &PointedGraph, path: &[u32]) -> Vec<u32> {
    path.iter().rev().map(|&h| g.pairing[h as usize]).collect()
}

pub fn apply_perm_to_path(perm: &[u32], path: &[u32]) -> Vec<u32> {
    path.iter().map(|&h| perm[h as usize]).collect()
}

// ---------------------------------------------------------------------
// Marked group graphs.
// ---------------------------------------------------------------------

/// A group graph with a marking: one reduced edge loop at the basepoint
/// per free-group generator.
#[derive(Debug, Clone)]
pub struct MarkedGroupGraph {
    pub gg: GroupGraph,
    pub marking: Vec<Vec<u32>>,
}

impl MarkedGroupGraph {
    pub fn new(gg: GroupGraph, marking: Vec<Vec<u32>>) -> Result<Self> {
        let mgg = MarkedGroupGraph { gg, marking };
        mgg.validate()?;
        Ok(mgg)
    }

    /// The marking of the spanning-tree basis: one loop per non-tree
    /// edge, routed through the tree.
    pub fn standard(gg: GroupGraph) -> Result<Self> {
        let graph = &gg.graph;
        let tree = graph.spanning_tree();
        // Path from the basepoint to each vertex through the tree.
        let mut to: Vec<Option<Vec<u32>>> = vec![None; graph.n_vertices as usize];
        to[graph.basepoint as usize] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::from([graph.basepoint]);
        while let Some(v) = queue.pop_front() {
            for h in 0..graph.n_half_edges() as u32 {
                if graph.endpoint[graph.pairing[h as usize] as usize] == v
                    && tree.contains(&graph.edge_of(h))
                {
                    let w = graph.endpoint[h as usize];
                    if to[w as usize].is_none() {
                        let mut path = to[v as usize].clone().unwrap();
                        path.push(h);
                        to[w as usize] = Some(path);
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut marking = Vec::new();
        for e in 0..graph.n_edges() as u32 {
            if tree.contains(&e) {
                continue;
            }
            let (u, v) = graph.edge_ends(e);
            let mut path = to[u as usize].clone().unwrap();
            path.push(2 * e + 1);
            path.extend(path_reverse(graph, to[v as usize].as_ref().unwrap()));
            marking.push(path_reduce(graph, &path));
        }
        MarkedGroupGraph::new(gg, marking)
    }

    /// Checks: loops are reduced nonempty edge paths at the basepoint,
    /// and together with a spanning tree they generate the fundamental
    /// group (the induced endomorphism of a free group of equal rank is
    /// surjective, hence an isomorphism).
    pub fn validate(&self) -> Result<()> {
        self.gg.validate()?;
        let graph = &self.gg.graph;
        if self.marking.len() as i64 != graph.rank() {
            return Err(Error::Marking(format!(
                "{} loops for rank {}",
                self.marking.len(),
                graph.rank()
            )));
        }
        for (i, path) in self.marking.iter().enumerate() {
            if path.is_empty() {
                return Err(Error::Marking(format!("generator {i} maps to a point")));
            }
            if !path_is_valid(graph, path) {
                return Err(Error::Marking(format!("loop {i} is not an edge path")));
            }
            if path_start(graph, path) != Some(graph.basepoint)
                || path_end(graph, path) != Some(graph.basepoint)
            {
                return Err(Error::Marking(format!("loop {i} is not based")));
            }
            if !path_is_reduced(graph, path) {
                return Err(Error::Marking(format!("loop {i} is not reduced")));
            }
        }
        let words = self.words_after_tree_collapse();
        if !generates_free_group(graph.rank() as usize, words) {
            return Err(Error::Marking(
                "loops do not generate the fundamental group".into(),
            ));
        }
        Ok(())
    }

    /// Rewrites each marking loop as a word in the petals obtained by
    /// collapsing a spanning tree.
    fn words_after_tree_collapse(&self) -> Vec<Vec<i32>> {
        let graph = &self.gg.graph;
        let tree = graph.spanning_tree();
        let mut petal: BTreeMap<u32, i32> = BTreeMap::new();
        let mut next = 1i32;
        for e in 0..graph.n_edges() as u32 {
            if !tree.contains(&e) {
                petal.insert(e, next);
                next += 1;
            }
        }
        self.marking
            .iter()
            .map(|path| {
                let mut word = Vec::new();
                for &h in path {
                    let e = graph.edge_of(h);
                    if let Some(&g) = petal.get(&e) {
                        // Odd half-edge = forward traversal.
                        word.push(if h % 2 == 1 { g } else { -g });
                    }
                }
                free_reduce_word(&word)
            })
            .collect()
    }

    /// Image loop of a reduced word in the marking generators.
    pub fn word_path(&self, word: &[i32]) -> Vec<u32> {
        let graph = &self.gg.graph;
        let mut path = Vec::new();
        for &letter in word {
            let idx = (letter.unsigned_abs() - 1) as usize;
            if letter > 0 {
                path.extend_from_slice(&self.marking[idx]);
            } else {
                path.extend(path_reverse(graph, &self.marking[idx]));
            }
        }
        path_reduce(graph, &path)
    }
}

fn free_reduce_word(word: &[i32]) -> Vec<i32> {
    let mut stack: Vec<i32> = Vec::new();
    for &l in word {
        if stack.last() == Some(&-l) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

/// Whether `n` words generate the free group of rank `n`: Nielsen
/// reduction must end in single distinct letters.
fn generates_free_group(rank: usize, mut words: Vec<Vec<i32>>) -> bool {
    if words.len() != rank {
        return false;
    }
    loop {
        if words.iter().any(|w| w.is_empty()) {
            return false;
        }
        let mut improved = false;
        'search: for i in 0..words.len() {
            for j in 0..words.len() {
                if i == j {
                    continue;
                }
                for (inv_i, inv_j) in [(false, false), (false, true), (true, false), (true, true)] {
                    let a = orient(&words[i], inv_i);
                    let b = orient(&words[j], inv_j);
                    let product =
                        free_reduce_word(&a.iter().chain(b.iter()).copied().collect::<Vec<i32>>());
                    if product.len() < words[i].len() {
                        words[i] = if inv_i {
                            orient(&product, true)
                        } else {
                            product
                        };
                        improved = true;
                        break 'search;
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    let mut letters: BTreeSet<i32> = BTreeSet::new();
    for w in &words {
        if w.len() != 1 {
            return false;
        }
        letters.insert(w[0].abs());
    }
    letters.len() == rank
}

fn orient(word: &[i32], invert: bool) -> Vec<i32> {
    if invert {
        word.iter().rev().map(|&l| -l).collect()
    } else {
        word.to_vec()
    }
}

// ---------------------------------------------------------------------
// Norm contexts and norms.
// ---------------------------------------------------------------------

/// Deterministic word enumeration: the first `n` reduced words of the
/// free group in shortlex order (letter order `a < ā < b < b̄ < …`), and
/// the first `n` cyclic words (cyclically reduced shortlex-minimal
/// rotation representatives).
#[derive(Debug, Clone)]
pub struct NormContext {
    pub n_generators: usize,
    pub words: Vec<Vec<i32>>,
    pub cyclic_words: Vec<Vec<i32>>,
}

fn letter_rank(l: i32) -> u32 {
    2 * (l.unsigned_abs() - 1) + u32::from(l < 0)
}

fn shortlex_key(w: &[i32]) -> Vec<u32> {
    w.iter().map(|&l| letter_rank(l)).collect()
}

impl NormContext {
    pub fn new(n_generators: usize, n: usize) -> Self {
        assert!(n_generators >= 1 && n >= 1);
        let letters: Vec<i32> = (1..=n_generators as i32).flat_map(|g| [g, -g]).collect();
        let mut words: Vec<Vec<i32>> = Vec::with_capacity(n);
        let mut cyclic_words: Vec<Vec<i32>> = Vec::with_capacity(n);
        let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
        while words.len() < n || cyclic_words.len() < n {
            let mut next_layer = Vec::new();
            for w in &layer {
                for &l in &letters {
                    if w.last() == Some(&-l) {
                        continue;
                    }
                    let mut candidate = w.clone();
                    candidate.push(l);
                    next_layer.push(candidate);
                }
            }
            next_layer.sort_by_key(|w| shortlex_key(w));
            for w in &next_layer {
                if words.len() < n {
                    words.push(w.clone());
                }
                if cyclic_words.len() < n && is_minimal_cyclic(w) {
                    cyclic_words.push(w.clone());
                }
            }
            layer = next_layer;
        }
        NormContext {
            n_generators,
            words,
            cyclic_words,
        }
    }
}

fn is_minimal_cyclic(w: &[i32]) -> bool {
    // Cyclically reduced and minimal among its rotations.
    if w.is_empty() || w[0] == -*w.last().unwrap() && w.len() > 1 {
        return false;
    }
    let key = shortlex_key(w);
    for r in 1..w.len() {
        let rotated: Vec<i32> = w[r..].iter().chain(w[..r].iter()).copied().collect();
        if shortlex_key(&rotated) < key {
            return false;
        }
    }
    true
}

/// Length vector over a norm context, compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NormVector(pub Vec<u64>);

impl NormVector {
    pub fn add_signed(&self, other: &[i64]) -> NormVector {
        NormVector(
            self.0
                .iter()
                .zip(other.iter())
                .map(|(&a, &d)| (a as i64 + d) as u64)
                .collect(),
        )
    }
}

/// The product norm: out before aut, compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TotNorm {
    pub out: NormVector,
    pub aut: NormVector,
}

fn check_context(mgg: &MarkedGroupGraph, ctx: &NormContext) -> Result<()> {
    if ctx.n_generators != mgg.marking.len() {
        return Err(Error::Marking(format!(
            "context over {} generators but the marking has {}",
            ctx.n_generators,
            mgg.marking.len()
        )));
    }
    for (i, path) in mgg.marking.iter().enumerate() {
        if !path_is_reduced(&mgg.gg.graph, path) {
            return Err(Error::Marking(format!("loop {i} is not reduced")));
        }
    }
    Ok(())
}

/// Aut norm: entry `i` is the sum over the group of the lengths of the
/// reduced (not cyclically reduced) paths of the translates of word `i`.
pub fn aut_norm(mgg: &MarkedGroupGraph, ctx: &NormContext) -> Result<NormVector> {
    check_context(mgg, ctx)?;
    let elements = mgg.gg.elements();
    let mut out = Vec::with_capacity(ctx.words.len());
    for w in &ctx.words {
        let path = mgg.word_path(w);
        let mut total = 0u64;
        for el in &elements {
            total += path_reduce(&mgg.gg.graph, &apply_perm_to_path(el, &path)).len() as u64;
        }
        out.push(total);
    }
    Ok(NormVector(out))
}

/// Out norm: cyclically reduced loops over the cyclic-word list.
pub fn out_norm(mgg: &MarkedGroupGraph, ctx: &NormContext) -> Result<NormVector> {
    check_context(mgg, ctx)?;
    let elements = mgg.gg.elements();
    let mut out = Vec::with_capacity(ctx.cyclic_words.len());
    for w in &ctx.cyclic_words {
        let path = cyclic_reduce(&mgg.gg.graph, &mgg.word_path(w));
        let mut total = 0u64;
        for el in &elements {
            total += cyclic_reduce(&mgg.gg.graph, &apply_perm_to_path(el, &path)).len() as u64;
        }
        out.push(total);
    }
    Ok(NormVector(out))
}

pub fn tot_norm(mgg: &MarkedGroupGraph, ctx: &NormContext) -> Result<TotNorm> {
    Ok(TotNorm {
        out: out_norm(mgg, ctx)?,
        aut: aut_norm(mgg, ctx)?,
    })
}

// ---------------------------------------------------------------------
// Absolute values of oriented-edge sets.
// ---------------------------------------------------------------------

/// Crossing count of a set of oriented edges in one path: occurrences of
/// members (in either orientation, counted per member) minus twice the
/// adjacencies that stay inside the set.
fn crossings(g: &PointedGraph, path: &[u32], set: &BTreeSet<u32>, cyclic: bool) -> u64 {
    let mut count = 0u64;
    for &h in path {
        count += u64::from(set.contains(&h));
        count += u64::from(set.contains(&g.pairing[h as usize]));
    }
    let mut adj = 0u64;
    let pairs = if cyclic && !path.is_empty() {
        path.len()
    } else {
        path.len().saturating_sub(1)
    };
    for j in 0..pairs {
        let h = path[j];
        let h2 = path[(j + 1) % path.len()];
        if set.contains(&h) && set.contains(&g.pairing[h2 as usize]) {
            adj += 1;
        }
    }
    count - 2 * adj
}

/// `|A|_aut` over the context words.
pub fn abs_aut(
    mgg: &MarkedGroupGraph,
    ctx: &NormContext,
    set: &BTreeSet<u32>,
) -> Result<NormVector> {
    check_context(mgg, ctx)?;
    let elements = mgg.gg.elements();
    let graph = &mgg.gg.graph;
    let mut out = Vec::with_capacity(ctx.words.len());
    for w in &ctx.words {
        let path = mgg.word_path(w);
        let mut total = 0u64;
        for el in &elements {
            total += crossings(graph, &apply_perm_to_path(el, &path), set, false);
        }
        out.push(total);
    }
    Ok(NormVector(out))
}

/// `|A|_out` over the cyclic words.
pub fn abs_out(
    mgg: &MarkedGroupGraph,
    ctx: &NormContext,
    set: &BTreeSet<u32>,
) -> Result<NormVector> {
    check_context(mgg, ctx)?;
    let elements = mgg.gg.elements();
    let graph = &mgg.gg.graph;
    let mut out = Vec::with_capacity(ctx.cyclic_words.len());
    for w in &ctx.cyclic_words {
        let path = cyclic_reduce(graph, &mgg.word_path(w));
        let mut total = 0u64;
        for el in &elements {
            total += crossings(graph, &apply_perm_to_path(el, &path), set, true);
        }
        out.push(total);
    }
    Ok(NormVector(out))
}

// ---------------------------------------------------------------------
// Ideal edges, blowups, Whitehead moves.
// ---------------------------------------------------------------------

/// A subset of the oriented edges terminating at one vertex, eligible
/// for blowing up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealEdge {
    pub vertex: u32,
    pub members: BTreeSet<u32>,
}

impl IdealEdge {
    pub fn new(gg: &GroupGraph, vertex: u32, members: BTreeSet<u32>) -> Result<Self> {
        let graph = &gg.graph;
        if members.len() < 2 {
            return Err(Error::IdealEdge("needs at least two members".into()));
        }
        for &h in &members {
            if h as usize >= graph.n_half_edges() || graph.endpoint[h as usize] != vertex {
                return Err(Error::IdealEdge(format!(
                    "half-edge {h} does not terminate at vertex {vertex}"
                )));
            }
        }
        let at_vertex = graph.half_edges_at(vertex).len();
        let complement = at_vertex - members.len();
        let needed = if vertex == graph.basepoint { 1 } else { 2 };
        if complement < needed {
            return Err(Error::IdealEdge(format!(
                "complement must keep {needed} half-edges at the vertex"
            )));
        }
        // Group translates must be equal or disjoint.
        for el in gg.elements() {
            let image: BTreeSet<u32> = members.iter().map(|&h| el[h as usize]).collect();
            if image != members && image.intersection(&members).next().is_some() {
                return Err(Error::IdealEdge(
                    "group translates neither equal nor disjoint".into(),
                ));
            }
        }
        Ok(IdealEdge { vertex, members })
    }

    /// Stabilizer of the ideal edge: element indices with `g(α) = α`.
    pub fn stabilizer(&self, gg: &GroupGraph) -> BTreeSet<usize> {
        gg.elements()
            .iter()
            .enumerate()
            .filter(|(_, el)| {
                let image: BTreeSet<u32> = self.members.iter().map(|&h| el[h as usize]).collect();
                image == self.members
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Distinct group translates, starting with the ideal edge itself.
    pub fn translates(&self, gg: &GroupGraph) -> Vec<(BTreeSet<u32>, u32)> {
        let graph = &gg.graph;
        let mut out: Vec<(BTreeSet<u32>, u32)> = Vec::new();
        for el in gg.elements() {
            let image: BTreeSet<u32> = self.members.iter().map(|&h| el[h as usize]).collect();
            if !out.iter().any(|(s, _)| *s == image) {
                let v = graph.endpoint[*image.iter().next().unwrap() as usize];
                out.push((image, v));
            }
        }
        out
    }

    /// `D(α)`: members with `stab(a) = stab(α)` whose reverse misses
    /// every translate.
    pub fn d_set(&self, gg: &GroupGraph) -> Vec<u32> {
        let stab_alpha = self.stabilizer(gg);
        let union: BTreeSet<u32> = self
            .translates(gg)
            .into_iter()
            .flat_map(|(s, _)| s)
            .collect();
        self.members
            .iter()
            .copied()
            .filter(|&a| {
                let stab_a: BTreeSet<usize> = gg
                    .elements()
                    .iter()
                    .enumerate()
                    .filter(|(_, el)| el[a as usize] == a)
                    .map(|(i, _)| i)
                    .collect();
                stab_a == stab_alpha && !union.contains(&gg.graph.pairing[a as usize])
            })
            .collect()
    }
}

/// All ideal edges of a group graph (per vertex, every valid subset).
pub fn ideal_edges(gg: &GroupGraph) -> Vec<IdealEdge> {
    let graph = &gg.graph;
    let mut out = Vec::new();
    for v in 0..graph.n_vertices {
        let at: Vec<u32> = graph.half_edges_at(v);
        if at.len() < 3 {
            continue;
        }
        let n = at.len();
        for mask in 1u64..(1 << n) {
            if (mask.count_ones() as usize) < 2 {
                continue;
            }
            let members: BTreeSet<u32> = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| at[i])
                .collect();
            if let Ok(alpha) = IdealEdge::new(gg, v, members) {
                out.push(alpha);
            }
        }
    }
    out
}

/// Blows up the orbit of an ideal edge: each translate is pulled off its
/// vertex along a new edge.  Returns the new group graph and the ids of
/// the new edges, one per translate (the first belongs to `α` itself).
pub fn blowup_graph(gg: &GroupGraph, alpha: &IdealEdge) -> Result<(GroupGraph, Vec<u32>)> {
    let graph = &gg.graph;
    let translates = alpha.translates(gg);
    let old_edges = graph.n_edges() as u32;
    let old_vertices = graph.n_vertices;
    // Reassign the endpoints of translate members to the new vertices.
    let mut endpoint = graph.endpoint.clone();
    for (k, (members, _)) in translates.iter().enumerate() {
        for &h in members {
            endpoint[h as usize] = old_vertices + k as u32;
        }
    }
    let mut edges: Vec<(u32, u32)> = (0..old_edges)
        .map(|e| (endpoint[2 * e as usize], endpoint[2 * e as usize + 1]))
        .collect();
    for (k, (_, v)) in translates.iter().enumerate() {
        edges.push((*v, old_vertices + k as u32));
    }
    let new_graph = PointedGraph::from_edges(
        old_vertices + translates.len() as u32,
        graph.basepoint,
        graph.aux_point,
        &edges,
    );
    let mut generators = Vec::new();
    for gen in &gg.generators {
        let mut new_gen: Vec<u32> = (0..new_graph.n_half_edges() as u32).collect();
        new_gen[..gen.len()].copy_from_slice(gen);
        for (k, (members, _)) in translates.iter().enumerate() {
            let image: BTreeSet<u32> = members.iter().map(|&h| gen[h as usize]).collect();
            let target = translates
                .iter()
                .position(|(s, _)| *s == image)
                .expect("generator permutes translates");
            let e = old_edges as usize + k;
            let f = old_edges as usize + target;
            new_gen[2 * e] = 2 * f as u32;
            new_gen[2 * e + 1] = 2 * f as u32 + 1;
        }
        generators.push(new_gen);
    }
    let new_gg = GroupGraph::new(new_graph, gg.kind, generators)?;
    let new_edges: Vec<u32> = (0..translates.len() as u32)
        .map(|k| old_edges + k)
        .collect();
    Ok((new_gg, new_edges))
}

/// Blowup with marking transport.
pub fn blowup(mgg: &MarkedGroupGraph, alpha: &IdealEdge) -> Result<(MarkedGroupGraph, Vec<u32>)> {
    let (new_gg, new_edges) = blowup_graph(&mgg.gg, alpha)?;
    let old = &mgg.gg.graph;
    let new = &new_gg.graph;
    let base = new.basepoint;
    // Map a new vertex back to the connector steps it requires.
    let old_vertices = old.n_vertices;
    let connector_out = |x: u32, out: &mut Vec<u32>| {
        // Leave a new vertex toward its old vertex.
        if x >= old_vertices {
            let k = (x - old_vertices) as usize;
            out.push(2 * new_edges[k]);
        }
    };
    let connector_in = |y: u32, out: &mut Vec<u32>| {
        if y >= old_vertices {
            let k = (y - old_vertices) as usize;
            out.push(2 * new_edges[k] + 1);
        }
    };
    let mut marking = Vec::new();
    for path in &mgg.marking {
        let mut rerouted: Vec<u32> = Vec::with_capacity(path.len() + 4);
        let mut position = base;
        for &h in path {
            let from = new.endpoint[new.pairing[h as usize] as usize];
            if from != position {
                connector_out(position, &mut rerouted);
                connector_in(from, &mut rerouted);
            }
            rerouted.push(h);
            position = new.endpoint[h as usize];
        }
        if position != base {
            connector_out(position, &mut rerouted);
            connector_in(base, &mut rerouted);
        }
        marking.push(path_reduce(new, &rerouted));
    }
    Ok((
        MarkedGroupGraph {
            gg: new_gg,
            marking,
        },
        new_edges,
    ))
}

/// Collapses an invariant forest, transporting the marking.
pub fn collapse_marked(mgg: &MarkedGroupGraph, forest: &Forest) -> Result<MarkedGroupGraph> {
    let collapsed = mgg.gg.collapse_invariant(forest)?;
    let maps = mgg.gg.graph.collapse(forest)?;
    let marking = mgg
        .marking
        .iter()
        .map(|path| {
            let transported: Vec<u32> = path
                .iter()
                .filter_map(|&h| maps.half_edge_map[h as usize])
                .collect();
            path_reduce(&collapsed.graph, &transported)
        })
        .collect();
    Ok(MarkedGroupGraph {
        gg: collapsed,
        marking,
    })
}

/// The Whitehead move `(Gα, Ga)`: blow up the orbit of `α`, then collapse
/// the orbit of `a`.
pub fn whitehead_move(
    mgg: &MarkedGroupGraph,
    alpha: &IdealEdge,
    a: u32,
) -> Result<MarkedGroupGraph> {
    if !alpha.members.contains(&a) {
        return Err(Error::WhiteheadPrecondition(
            "a is not a member of the ideal edge",
        ));
    }
    if !alpha.d_set(&mgg.gg).contains(&a) {
        return Err(Error::WhiteheadPrecondition("a is not in D(α)"));
    }
    let (blown, _) = blowup(mgg, alpha)?;
    // Collapse the edge orbit of a (ids are preserved by the blowup).
    let e = mgg.gg.graph.edge_of(a);
    let orbit: BTreeSet<u32> = blown
        .gg
        .elements()
        .iter()
        .map(|el| blown.gg.graph.edge_of(el[2 * e as usize]))
        .collect();
    let forest = Forest::new(&blown.gg.graph, orbit).map_err(|_| {
        Error::WhiteheadPrecondition("collapsing orbit of a is not a forest collapse")
    })?;
    collapse_marked(&blown, &forest)
}

/// `[G : stab(α)]`, the number of translates.
pub fn orbit_index(gg: &GroupGraph, alpha: &IdealEdge) -> u64 {
    alpha.translates(gg).len() as u64
}
