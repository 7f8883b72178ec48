//! Combinatorial characterisations of generic independence and rigidity.
//!
//! When every vertex carries at least floor(d/2) loops, independence of the
//! framework's rows is equivalent to d-sparsity together with the absence of
//! a clique on d+2 vertices, and rigidity is equivalent to the existence of
//! a spanning d-tight clique-free subgraph meeting the same loop condition.
//! Outside that hypothesis the routines report "inapplicable" rather than
//! guessing.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::RandomSource;
use crate::graph::{clique_of_size, ElementId, GraphError, LoopedGraph, VertexSubset};
use crate::rigidity::{is_rigid_with, RankOptions};
use crate::sparsity::{has_tight_spanning_subgraph, pebble_game, Insertion, PebbleGame, SparsityParams};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharacterisationError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("loop budget t must be at least 1")]
    ZeroT,
    #[error("the equivalence is established only for d >= 2t - 1, got t = {t}, d = {d}")]
    OutsideProvedRange { t: usize, d: usize },
    #[error("expected a loopless graph")]
    LoopsInInput,
    #[error("attach set has {got} vertices, expected {want}")]
    WrongAttachSize { got: usize, want: usize },
    #[error("element {0} is not an edge of the graph")]
    NotAnEdge(ElementId),
    #[error("extra vertices must avoid the split edge's endpoints")]
    ExtraMeetsEdge,
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
}

/// Certificate attached to a combinatorial verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Vertex set inducing more than d times its size in elements.
    SparsityViolation(VertexSubset),
    /// A clique on d+2 vertices.
    CliqueFound(VertexSubset),
    /// A spanning d-tight clique-free subgraph with the required loops.
    TightSubgraph(LoopedGraph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterisationVerdict {
    /// Whether every vertex carries at least floor(d/2) loops. When false
    /// the characterisation does not apply and `verdict` is None.
    pub hypothesis_ok: bool,
    pub verdict: Option<bool>,
    pub witness: Option<Witness>,
}

impl CharacterisationVerdict {
    fn inapplicable() -> Self {
        CharacterisationVerdict { hypothesis_ok: false, verdict: None, witness: None }
    }
}

fn require_dimension(d: usize) -> Result<usize, CharacterisationError> {
    if d < 2 {
        return Err(CharacterisationError::DimensionTooSmall(d));
    }
    Ok(d / 2)
}

/// Purely combinatorial independence test: d-sparse and no clique on d+2
/// vertices. Valid whenever the minimum loop degree is at least floor(d/2).
pub fn combinatorial_independent(
    g: &LoopedGraph,
    d: usize,
) -> Result<CharacterisationVerdict, CharacterisationError> {
    let need = require_dimension(d)?;
    if g.vertex_count() == 0 {
        return Ok(CharacterisationVerdict {
            hypothesis_ok: true,
            verdict: Some(true),
            witness: None,
        });
    }
    if g.min_loop_degree().expect("graph is nonempty") < need {
        return Ok(CharacterisationVerdict::inapplicable());
    }
    if let Some(clique) = g.contains_clique(d + 2) {
        return Ok(CharacterisationVerdict {
            hypothesis_ok: true,
            verdict: Some(false),
            witness: Some(Witness::CliqueFound(clique)),
        });
    }
    let params = SparsityParams::new(d).expect("d >= 2");
    if let Some(region) = pebble_game(g, &params).violation {
        return Ok(CharacterisationVerdict {
            hypothesis_ok: true,
            verdict: Some(false),
            witness: Some(Witness::SparsityViolation(region)),
        });
    }
    Ok(CharacterisationVerdict { hypothesis_ok: true, verdict: Some(true), witness: None })
}

/// Greedily builds a maximum independent element set, seeding floor(d/2)
/// loops per vertex so every intermediate subgraph stays inside the regime
/// where sparsity plus clique-freeness is exact. Returns the kept loop ids,
/// edge ids and the accepted count.
fn greedy_basis(g: &LoopedGraph, d: usize) -> (Vec<usize>, Vec<usize>, usize) {
    let n = g.vertex_count();
    let need = d / 2;
    let mut game = PebbleGame::new(n, d);
    let mut loops_kept = Vec::new();
    let mut edges_kept = Vec::new();
    let mut seeded = vec![false; g.loop_count()];
    let mut per_vertex = vec![0usize; n];
    for (id, &v) in g.loops().iter().enumerate() {
        if per_vertex[v] < need {
            let got = game.try_insert_loop(v);
            debug_assert_eq!(got, Insertion::Accepted);
            per_vertex[v] += 1;
            seeded[id] = true;
            loops_kept.push(id);
        }
    }
    for (id, &v) in g.loops().iter().enumerate() {
        if !seeded[id] {
            if let Insertion::Accepted = game.try_insert_loop(v) {
                loops_kept.push(id);
            }
        }
    }
    loops_kept.sort_unstable();
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        // The edge completes a clique on d+2 vertices exactly when a d-clique
        // sits in the common neighbourhood of its endpoints.
        let common: Vec<usize> = adj[u].intersection(&adj[v]).copied().collect();
        if clique_of_size(&adj, &common, d).is_some() {
            continue;
        }
        if let Insertion::Accepted = game.try_insert_edge(u, v) {
            edges_kept.push(id);
            adj[u].insert(v);
            adj[v].insert(u);
        }
    }
    let total = loops_kept.len() + edges_kept.len();
    (loops_kept, edges_kept, total)
}

/// Purely combinatorial rigidity test: searches for a spanning d-tight
/// clique-free subgraph by greedy matroid extension, loops first. On success
/// the witness is such a subgraph; loop ids in it are renumbered by
/// position.
pub fn combinatorial_rigid(
    g: &LoopedGraph,
    d: usize,
) -> Result<CharacterisationVerdict, CharacterisationError> {
    let need = require_dimension(d)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(CharacterisationVerdict {
            hypothesis_ok: true,
            verdict: Some(true),
            witness: Some(Witness::TightSubgraph(LoopedGraph::empty(0))),
        });
    }
    if g.min_loop_degree().expect("graph is nonempty") < need {
        return Ok(CharacterisationVerdict::inapplicable());
    }
    let (loops_kept, edges_kept, total) = greedy_basis(g, d);
    if total != d * n {
        return Ok(CharacterisationVerdict {
            hypothesis_ok: true,
            verdict: Some(false),
            witness: None,
        });
    }
    let mut elements: Vec<ElementId> = loops_kept.into_iter().map(ElementId::Loop).collect();
    elements.extend(edges_kept.into_iter().map(|id| {
        let (u, v) = g.edges()[id];
        ElementId::edge(u, v)
    }));
    let subgraph = g.element_subgraph(&elements).expect("accepted elements exist");
    Ok(CharacterisationVerdict {
        hypothesis_ok: true,
        verdict: Some(true),
        witness: Some(Witness::TightSubgraph(subgraph)),
    })
}

/// Sufficient condition for pinned independence of a loopless graph: after
/// granting d loops to every pinned vertex and floor(d/2) to the rest, the
/// result must be d-sparse; for odd d the graph must also avoid cliques on
/// d+2 vertices. One-sided: false does not refute independence.
pub fn pinned_sufficiency(
    g: &LoopedGraph,
    pinned: &VertexSubset,
    d: usize,
) -> Result<bool, CharacterisationError> {
    require_dimension(d)?;
    if g.loop_count() > 0 {
        return Err(CharacterisationError::LoopsInInput);
    }
    pinned.validate(g)?;
    let mut loops = Vec::new();
    for v in 0..g.vertex_count() {
        let budget = if pinned.contains(v) { d } else { d / 2 };
        loops.extend(std::iter::repeat_n(v, budget));
    }
    let augmented = LoopedGraph::new(g.vertex_count(), g.edges().to_vec(), loops)
        .expect("augmenting loops preserves validity");
    let params = SparsityParams::new(d).expect("d >= 2");
    if !pebble_game(&augmented, &params).is_sparse {
        return Ok(false);
    }
    if d % 2 == 1 && g.contains_clique(d + 2).is_some() {
        return Ok(false);
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjectureCheck {
    /// Randomized verdict: is the graph with d - t uniform loops added rigid
    /// in dimension d?
    pub algebraic: bool,
    /// Combinatorial verdict: does a spanning t-tight subgraph exist? For
    /// d = 2t - 1 the subgraph must additionally avoid cliques on d+2
    /// vertices, which is automatic for d >= 2t.
    pub combinatorial: bool,
    pub agree: bool,
}

pub fn conjecture_instance_check_with(
    g: &LoopedGraph,
    t: usize,
    d: usize,
    rs: &mut RandomSource,
    opts: &RankOptions,
) -> Result<ConjectureCheck, CharacterisationError> {
    require_dimension(d)?;
    if t == 0 {
        return Err(CharacterisationError::ZeroT);
    }
    if d + 1 < 2 * t {
        return Err(CharacterisationError::OutsideProvedRange { t, d });
    }
    let augmented = g.add_uniform_loops(d - t);
    let algebraic = is_rigid_with(&augmented, d, rs, opts);
    let combinatorial = if d >= 2 * t {
        let params = SparsityParams::new(t).expect("t >= 1");
        has_tight_spanning_subgraph(g, &params).is_some()
    } else {
        // d = 2t - 1: a clique on d+2 vertices is itself t-tight, so plain
        // tightness is not enough; the clique-aware search is.
        combinatorial_rigid(&augmented, d)?
            .verdict
            .expect("d - t >= floor(d/2) loops everywhere")
    };
    Ok(ConjectureCheck { algebraic, combinatorial, agree: algebraic == combinatorial })
}

/// Compares the randomized rigidity of the graph with d - t added uniform
/// loops against the combinatorial criterion phrased on the bare graph.
/// Requires d >= 2t - 1; smaller d is refused as unproved.
pub fn conjecture_instance_check(
    g: &LoopedGraph,
    t: usize,
    d: usize,
    rs: &mut RandomSource,
) -> Result<ConjectureCheck, CharacterisationError> {
    conjecture_instance_check_with(g, t, d, rs, &RankOptions::default())
}

/// Adds a new vertex joined to d distinct existing vertices.
pub fn zero_extension(
    g: &LoopedGraph,
    attach: &VertexSubset,
    d: usize,
) -> Result<LoopedGraph, CharacterisationError> {
    if attach.len() != d {
        return Err(CharacterisationError::WrongAttachSize { got: attach.len(), want: d });
    }
    attach.validate(g)?;
    let new = g.vertex_count();
    let mut edges = g.edges().to_vec();
    edges.extend(attach.members().iter().map(|&v| (v, new)));
    Ok(LoopedGraph::new(new + 1, edges, g.loops().to_vec())?)
}

/// Splits the given edge at a new vertex joined to both endpoints and to
/// d - 1 further vertices distinct from them.
pub fn one_extension(
    g: &LoopedGraph,
    edge: ElementId,
    extra: &VertexSubset,
    d: usize,
) -> Result<LoopedGraph, CharacterisationError> {
    let ElementId::Edge(u, v) = edge else {
        return Err(CharacterisationError::NotAnEdge(edge));
    };
    if !g.has_edge(u, v) {
        return Err(CharacterisationError::Graph(GraphError::UnknownEdge(u, v)));
    }
    if extra.len() != d - 1 {
        return Err(CharacterisationError::WrongAttachSize { got: extra.len(), want: d - 1 });
    }
    if extra.contains(u) || extra.contains(v) {
        return Err(CharacterisationError::ExtraMeetsEdge);
    }
    extra.validate(g)?;
    let new = g.vertex_count();
    let key = (u.min(v), u.max(v));
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(a, b)| (a.min(b), a.max(b)) != key)
        .copied()
        .collect();
    edges.push((u, new));
    edges.push((v, new));
    edges.extend(extra.members().iter().map(|&w| (w, new)));
    Ok(LoopedGraph::new(new + 1, edges, g.loops().to_vec())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigidity::{is_independent, is_rigid};
    use crate::sparsity::is_tight;

    fn complete(n: usize) -> LoopedGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        LoopedGraph::new(n, edges, vec![]).unwrap()
    }

    #[test]
    fn rejects_dimension_below_two() {
        let g = LoopedGraph::empty(1);
        assert_eq!(
            combinatorial_independent(&g, 1),
            Err(CharacterisationError::DimensionTooSmall(1))
        );
        assert_eq!(
            combinatorial_rigid(&g, 0),
            Err(CharacterisationError::DimensionTooSmall(0))
        );
    }

    #[test]
    fn looped_triangle_is_combinatorially_independent_and_rigid() {
        let g = complete(3).add_uniform_loops(1);
        let vi = combinatorial_independent(&g, 2).unwrap();
        assert!(vi.hypothesis_ok);
        assert_eq!(vi.verdict, Some(true));
        assert_eq!(vi.witness, None);
        let vr = combinatorial_rigid(&g, 2).unwrap();
        assert_eq!(vr.verdict, Some(true));
        let Some(Witness::TightSubgraph(h)) = vr.witness else { panic!() };
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.element_count(), 6);
        assert!(is_tight(&h, &SparsityParams::new(2).unwrap()));
        assert!(h.contains_clique(4).is_none());
        assert!(h.min_loop_degree().unwrap() >= 1);
    }

    #[test]
    fn sparsity_violation_is_reported() {
        // Two vertices, an edge, three loops each: the pair is overloaded.
        let g = LoopedGraph::new(2, vec![(0, 1)], vec![0, 0, 0, 1, 1, 1]).unwrap();
        let v = combinatorial_independent(&g, 2).unwrap();
        assert_eq!(v.verdict, Some(false));
        let Some(Witness::SparsityViolation(x)) = v.witness else { panic!() };
        assert!(g.induced_count(&x).unwrap() > 2 * x.len());
    }

    #[test]
    fn clique_on_d_plus_two_is_reported() {
        // K_4 with one loop per vertex, d = 2: the clique is the preferred
        // witness even though the count is also violated.
        let g = complete(4).add_uniform_loops(1);
        let v = combinatorial_independent(&g, 2).unwrap();
        assert!(v.hypothesis_ok);
        assert_eq!(v.verdict, Some(false));
        let Some(Witness::CliqueFound(c)) = v.witness else { panic!() };
        assert_eq!(c.len(), 4);
        assert_eq!(c, VertexSubset::new([0, 1, 2, 3]));
    }

    #[test]
    fn missing_loops_make_it_inapplicable() {
        let g = complete(3);
        let v = combinatorial_independent(&g, 2).unwrap();
        assert!(!v.hypothesis_ok);
        assert_eq!(v.verdict, None);
        assert_eq!(v.witness, None);
        let r = combinatorial_rigid(&g, 2).unwrap();
        assert!(!r.hypothesis_ok);
    }

    #[test]
    fn empty_graph_is_trivially_rigid() {
        let g = LoopedGraph::empty(0);
        let v = combinatorial_rigid(&g, 3).unwrap();
        assert_eq!(v.verdict, Some(true));
        assert!(combinatorial_independent(&g, 3).unwrap().verdict.unwrap());
    }

    #[test]
    fn rigid_verdict_matches_randomized_rank_on_k4_with_loops() {
        // K_4 with one loop per vertex is 2-rigid but not independent: the
        // greedy search must route around the clique.
        let g = complete(4).add_uniform_loops(1);
        let v = combinatorial_rigid(&g, 2).unwrap();
        assert_eq!(v.verdict, Some(true));
        let Some(Witness::TightSubgraph(h)) = v.witness else { panic!() };
        assert_eq!(h.element_count(), 8);
        assert!(h.contains_clique(4).is_none());
        assert!(is_tight(&h, &SparsityParams::new(2).unwrap()));
        assert!(h.min_loop_degree().unwrap() >= 1);
        let mut rs = RandomSource::from_seed(3);
        assert!(is_rigid(&h, 2, &mut rs));
        assert!(is_independent(&h, 2, &mut rs));
    }

    #[test]
    fn single_vertex_with_d_loops_is_rigid() {
        let g = LoopedGraph::new(1, vec![], vec![0, 0, 0]).unwrap();
        let v = combinatorial_rigid(&g, 3).unwrap();
        assert_eq!(v.verdict, Some(true));
        let Some(Witness::TightSubgraph(h)) = v.witness else { panic!() };
        assert_eq!(h.loop_count(), 3);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn disconnected_loop_minimum_is_not_rigid() {
        // Two isolated vertices with one loop each, d = 2: rank stops at 2.
        let g = LoopedGraph::new(2, vec![], vec![0, 1]).unwrap();
        let v = combinatorial_rigid(&g, 2).unwrap();
        assert!(v.hypothesis_ok);
        assert_eq!(v.verdict, Some(false));
        assert_eq!(v.witness, None);
    }

    #[test]
    fn conjecture_trivial_instances() {
        // t loops on one vertex at d = 2t agree in the positive.
        for t in [1usize, 2] {
            let g = LoopedGraph::new(1, vec![], vec![0; t]).unwrap();
            let mut rs = RandomSource::from_seed(20 + t as u64);
            let c = conjecture_instance_check(&g, t, 2 * t, &mut rs).unwrap();
            assert!(c.algebraic && c.combinatorial && c.agree);
        }
        // Two bare vertices at t = 1, d = 2 agree in the negative.
        let g = LoopedGraph::empty(2);
        let mut rs = RandomSource::from_seed(22);
        let c = conjecture_instance_check(&g, 1, 2, &mut rs).unwrap();
        assert!(!c.algebraic && !c.combinatorial && c.agree);
    }

    #[test]
    fn flexible_graph_gets_a_false_verdict() {
        // A looped path is too sparse to be rigid for d = 2.
        let g = LoopedGraph::new(3, vec![(0, 1), (1, 2)], vec![0, 1, 2]).unwrap();
        let v = combinatorial_rigid(&g, 2).unwrap();
        assert_eq!(v.verdict, Some(false));
        assert_eq!(v.witness, None);
        let mut rs = RandomSource::from_seed(4);
        assert!(!is_rigid(&g, 2, &mut rs));
    }

    #[test]
    fn pinned_sufficiency_examples() {
        // Single pinned vertex: two loops, comfortably sparse.
        let dot = LoopedGraph::empty(1);
        assert_eq!(pinned_sufficiency(&dot, &VertexSubset::new([0]), 2), Ok(true));
        // One edge with both ends pinned: 1 + 4 = 5 elements over capacity 4.
        let edge = LoopedGraph::new(2, vec![(0, 1)], vec![]).unwrap();
        assert_eq!(pinned_sufficiency(&edge, &VertexSubset::new([0, 1]), 2), Ok(false));
        // K_5 with two pins fails for d = 3: the count overflows and the
        // graph is a clique on d+2 vertices.
        let k5 = complete(5);
        assert_eq!(pinned_sufficiency(&k5, &VertexSubset::new([0, 1]), 3), Ok(false));
        // Loops are rejected outright.
        let looped = LoopedGraph::new(1, vec![], vec![0]).unwrap();
        assert_eq!(
            pinned_sufficiency(&looped, &VertexSubset::empty(), 2),
            Err(CharacterisationError::LoopsInInput)
        );
    }

    #[test]
    fn pinned_sufficiency_is_one_sided() {
        // A path pinned at both endpoints: the loop count overflows (2+1+2
        // loops plus 2 edges on 3 vertices), yet the pinned matrix has full
        // row rank. False certifies nothing.
        let g = LoopedGraph::new(3, vec![(0, 1), (1, 2)], vec![]).unwrap();
        let p = VertexSubset::new([0, 2]);
        assert_eq!(pinned_sufficiency(&g, &p, 2), Ok(false));
        let mut rs = RandomSource::from_seed(5);
        assert!(crate::rigidity::pinned_independent(&g, &p, 2, &mut rs).unwrap());
    }

    #[test]
    fn conjecture_check_on_triangle() {
        let g = complete(3);
        let mut rs = RandomSource::from_seed(6);
        let c = conjecture_instance_check(&g, 1, 2, &mut rs).unwrap();
        assert!(c.algebraic && c.combinatorial && c.agree);
    }

    #[test]
    fn conjecture_check_on_sparse_graph() {
        // A single edge on three vertices has no spanning 1-tight subgraph
        // and the looped version is flexible.
        let g = LoopedGraph::new(3, vec![(0, 1)], vec![]).unwrap();
        let mut rs = RandomSource::from_seed(7);
        let c = conjecture_instance_check(&g, 1, 2, &mut rs).unwrap();
        assert!(!c.algebraic && !c.combinatorial && c.agree);
    }

    #[test]
    fn conjecture_check_clique_edge_case() {
        // K_5 is 2-tight yet its singly looped version is flexible in R^3;
        // the d = 2t - 1 route must still agree.
        let g = complete(5);
        assert!(has_tight_spanning_subgraph(&g, &SparsityParams::new(2).unwrap()).is_some());
        let mut rs = RandomSource::from_seed(8);
        assert!(!is_rigid(&g.add_uniform_loops(1), 3, &mut rs));
        let c = conjecture_instance_check(&g, 2, 3, &mut rs).unwrap();
        assert!(!c.algebraic);
        assert!(!c.combinatorial);
        assert!(c.agree);
    }

    #[test]
    fn conjecture_check_refuses_unproved_range() {
        let g = complete(3);
        let mut rs = RandomSource::from_seed(9);
        assert_eq!(
            conjecture_instance_check(&g, 2, 2, &mut rs),
            Err(CharacterisationError::OutsideProvedRange { t: 2, d: 2 })
        );
        assert_eq!(
            conjecture_instance_check(&g, 0, 2, &mut rs),
            Err(CharacterisationError::ZeroT)
        );
    }

    #[test]
    fn zero_extension_attaches_new_vertex() {
        let g = complete(3).add_uniform_loops(1);
        let h = zero_extension(&g, &VertexSubset::new([0, 2]), 2).unwrap();
        assert_eq!(h.vertex_count(), 4);
        assert!(h.has_edge(0, 3) && h.has_edge(2, 3));
        assert_eq!(h.loop_count(), g.loop_count());
        assert_eq!(
            zero_extension(&g, &VertexSubset::new([0]), 2),
            Err(CharacterisationError::WrongAttachSize { got: 1, want: 2 })
        );
    }

    #[test]
    fn one_extension_splits_an_edge() {
        let g = complete(4);
        let h = one_extension(&g, ElementId::edge(0, 1), &VertexSubset::new([2]), 2).unwrap();
        assert_eq!(h.vertex_count(), 5);
        assert!(!h.has_edge(0, 1));
        assert!(h.has_edge(0, 4) && h.has_edge(1, 4) && h.has_edge(2, 4));
        assert_eq!(h.edge_count(), g.edge_count() + 2);
        assert_eq!(
            one_extension(&g, ElementId::edge(0, 1), &VertexSubset::new([0]), 2),
            Err(CharacterisationError::ExtraMeetsEdge)
        );
        assert_eq!(
            one_extension(&g, ElementId::Loop(0), &VertexSubset::new([2]), 2),
            Err(CharacterisationError::NotAnEdge(ElementId::Loop(0)))
        );
        let sparse = LoopedGraph::new(3, vec![(0, 1)], vec![]).unwrap();
        assert_eq!(
            one_extension(&sparse, ElementId::edge(1, 2), &VertexSubset::new([0]), 2),
            Err(CharacterisationError::Graph(GraphError::UnknownEdge(1, 2)))
        );
    }

    #[test]
    fn characterisation_agrees_with_randomized_rank_on_small_samples() {
        let mut rs = RandomSource::from_seed(10);
        for d in [2usize, 3] {
            for _ in 0..40 {
                let n = 1 + rs.uniform_below(6) as usize;
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rs.uniform_below(100) < 55 {
                            edges.push((u, v));
                        }
                    }
                }
                let mut loops = Vec::new();
                for v in 0..n {
                    let extra = rs.uniform_below(3) as usize;
                    loops.extend(std::iter::repeat_n(v, d / 2 + extra));
                }
                let g = LoopedGraph::new(n, edges, loops).unwrap();
                let ci = combinatorial_independent(&g, d).unwrap().verdict.unwrap();
                assert_eq!(ci, is_independent(&g, d, &mut rs), "{}", g.to_json_string());
                let cr = combinatorial_rigid(&g, d).unwrap().verdict.unwrap();
                assert_eq!(cr, is_rigid(&g, d, &mut rs), "{}", g.to_json_string());
            }
        }
    }
}
