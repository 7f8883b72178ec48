//! Deterministic random instance generators. Every function consumes a
//! RandomSource only, so a fixed seed reproduces the exact instance stream.

use crate::algebra::RandomSource;
use crate::characterisation::{one_extension, zero_extension, CharacterisationError};
use crate::graph::{ElementId, LoopedGraph, VertexSubset};

/// Random graph on 1..=max_vertices vertices. Edge density is itself drawn
/// per instance so sparse and dense graphs both appear; every vertex gets
/// between 0 and max_loops loops.
pub fn random_looped_graph(
    rs: &mut RandomSource,
    max_vertices: usize,
    max_loops: usize,
) -> LoopedGraph {
    assert!(max_vertices >= 1);
    let n = 1 + rs.uniform_below(max_vertices as u64) as usize;
    let density = rs.uniform_below(101);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rs.uniform_below(100) < density {
                edges.push((u, v));
            }
        }
    }
    let mut loops = Vec::new();
    for v in 0..n {
        let count = rs.uniform_below(max_loops as u64 + 1) as usize;
        loops.extend(std::iter::repeat_n(v, count));
    }
    LoopedGraph::new(n, edges, loops).expect("generated elements are valid")
}

/// Random graph guaranteed to carry at least floor(d/2) loops on every
/// vertex, plus up to `extra_loops` more.
pub fn random_min_loop_graph(
    rs: &mut RandomSource,
    max_vertices: usize,
    d: usize,
    extra_loops: usize,
) -> LoopedGraph {
    let g = random_looped_graph(rs, max_vertices, extra_loops);
    let base = d / 2;
    let mut loops = Vec::new();
    for v in 0..g.vertex_count() {
        loops.extend(std::iter::repeat_n(v, base));
    }
    loops.extend_from_slice(g.loops());
    LoopedGraph::new(g.vertex_count(), g.edges().to_vec(), loops).expect("valid by construction")
}

/// Random loopless graph on 1..=max_vertices vertices.
pub fn random_simple_graph(rs: &mut RandomSource, max_vertices: usize) -> LoopedGraph {
    let g = random_looped_graph(rs, max_vertices, 0);
    debug_assert_eq!(g.loop_count(), 0);
    g
}

/// Random subset of the graph's vertices, each kept with probability 1/2.
pub fn random_vertex_subset(rs: &mut RandomSource, g: &LoopedGraph) -> VertexSubset {
    VertexSubset::new((0..g.vertex_count()).filter(|_| rs.uniform_below(2) == 0))
}

fn random_distinct_vertices(rs: &mut RandomSource, n: usize, count: usize) -> Vec<usize> {
    assert!(count <= n);
    let mut pool: Vec<usize> = (0..n).collect();
    let mut picked = Vec::with_capacity(count);
    for _ in 0..count {
        let i = rs.uniform_below(pool.len() as u64) as usize;
        picked.push(pool.swap_remove(i));
    }
    picked
}

/// Applies one random zero-extension: a fresh vertex joined to d random
/// distinct vertices. Requires at least d vertices.
pub fn random_zero_extension(
    rs: &mut RandomSource,
    g: &LoopedGraph,
    d: usize,
) -> Result<LoopedGraph, CharacterisationError> {
    let attach = VertexSubset::new(random_distinct_vertices(rs, g.vertex_count(), d));
    zero_extension(g, &attach, d)
}

/// Applies one random one-extension: a random edge is split at a fresh
/// vertex which also joins d - 1 random further vertices. Requires an edge
/// and at least d + 1 vertices.
pub fn random_one_extension(
    rs: &mut RandomSource,
    g: &LoopedGraph,
    d: usize,
) -> Result<LoopedGraph, CharacterisationError> {
    let (u, v) = g.edges()[rs.uniform_below(g.edge_count() as u64) as usize];
    let others: Vec<usize> = (0..g.vertex_count()).filter(|&w| w != u && w != v).collect();
    let mut pool = others;
    let mut extra = Vec::with_capacity(d - 1);
    for _ in 0..d - 1 {
        let i = rs.uniform_below(pool.len() as u64) as usize;
        extra.push(pool.swap_remove(i));
    }
    one_extension(g, ElementId::edge(u, v), &VertexSubset::new(extra), d)
}

/// Chain of zero-extensions up to `vertices` total. The seed graph has d
/// vertices with d loops each, so every step has enough attach points and
/// the seed framework is rigid. Fresh vertices receive `new_vertex_loops`
/// loops appended after each step.
pub fn zero_extension_chain(
    rs: &mut RandomSource,
    d: usize,
    vertices: usize,
    new_vertex_loops: usize,
) -> Result<LoopedGraph, CharacterisationError> {
    assert!(d >= 1);
    assert!(vertices >= d, "need at least d vertices to start the chain");
    let mut g = LoopedGraph::empty(d).add_uniform_loops(d);
    while g.vertex_count() < vertices {
        g = random_zero_extension(rs, &g, d)?;
        let mut loops = g.loops().to_vec();
        loops.extend(std::iter::repeat_n(g.vertex_count() - 1, new_vertex_loops));
        g = LoopedGraph::new(g.vertex_count(), g.edges().to_vec(), loops)
            .expect("valid by construction");
    }
    Ok(g)
}

/// Chain of one-extensions up to `vertices` total, seeded with a complete
/// graph on d + 1 vertices carrying d loops each so that edges and enough
/// side vertices always exist.
pub fn one_extension_chain(
    rs: &mut RandomSource,
    d: usize,
    vertices: usize,
    new_vertex_loops: usize,
) -> Result<LoopedGraph, CharacterisationError> {
    assert!(d >= 1);
    assert!(vertices > d, "need at least d + 1 vertices to start the chain");
    let mut edges = Vec::new();
    for u in 0..=d {
        for v in u + 1..=d {
            edges.push((u, v));
        }
    }
    let mut g = LoopedGraph::new(d + 1, edges, vec![])
        .expect("complete graph is valid")
        .add_uniform_loops(d);
    while g.vertex_count() < vertices {
        g = random_one_extension(rs, &g, d)?;
        let mut loops = g.loops().to_vec();
        loops.extend(std::iter::repeat_n(g.vertex_count() - 1, new_vertex_loops));
        g = LoopedGraph::new(g.vertex_count(), g.edges().to_vec(), loops)
            .expect("valid by construction");
    }
    Ok(g)
}
