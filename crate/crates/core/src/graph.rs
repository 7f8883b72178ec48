//! Looped simple graphs: simple graphs whose vertices may carry any number
//! of loops. Loops are first-class elements with their own dense ids.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({0}, {0}) connects a vertex to itself; use a loop instead")]
    SelfEdge(usize),
    #[error("parallel edge ({0}, {1})")]
    ParallelEdge(usize, usize),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    UnknownVertex(usize, usize),
    #[error("loop id {0} out of range for a graph with {1} loops")]
    UnknownLoop(usize, usize),
    #[error("edge ({0}, {1}) is not in the graph")]
    UnknownEdge(usize, usize),
    #[error("operation requires at least one vertex")]
    EmptyGraph,
    #[error("invalid graph JSON: {0}")]
    Json(String),
}

/// Identifies a single row-generating element: an edge by its (unordered)
/// endpoint pair or a loop by its id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementId {
    Loop(usize),
    Edge(usize, usize),
}

impl ElementId {
    /// Edge element with endpoints stored in sorted order.
    pub fn edge(u: usize, v: usize) -> Self {
        ElementId::Edge(u.min(v), u.max(v))
    }

    pub fn loop_id(id: usize) -> Self {
        ElementId::Loop(id)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementId::Loop(id) => write!(f, "loop {id}"),
            ElementId::Edge(u, v) => write!(f, "edge ({u}, {v})"),
        }
    }
}

/// A set of vertices, kept sorted and without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexSubset {
    members: Vec<usize>,
}

impl VertexSubset {
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSubset { members }
    }

    pub fn empty() -> Self {
        VertexSubset { members: Vec::new() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn validate(&self, g: &LoopedGraph) -> Result<(), GraphError> {
        match self.members.last() {
            Some(&v) if v >= g.vertex_count() => Err(GraphError::UnknownVertex(v, g.vertex_count())),
            _ => Ok(()),
        }
    }
}

/// A looped simple graph on vertices `0..n`. Edges join distinct vertices and
/// are unique up to orientation; loops are listed per occurrence, so a vertex
/// may carry several. Loop `i` is the `i`-th entry of the loop list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopedGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    loops: Vec<usize>,
}

impl LoopedGraph {
    pub fn new(
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
        loops: Vec<usize>,
    ) -> Result<Self, GraphError> {
        let mut seen = BTreeSet::new();
        for &(u, v) in &edges {
            if u >= vertex_count {
                return Err(GraphError::UnknownVertex(u, vertex_count));
            }
            if v >= vertex_count {
                return Err(GraphError::UnknownVertex(v, vertex_count));
            }
            if u == v {
                return Err(GraphError::SelfEdge(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::ParallelEdge(u, v));
            }
        }
        for &v in &loops {
            if v >= vertex_count {
                return Err(GraphError::UnknownVertex(v, vertex_count));
            }
        }
        Ok(LoopedGraph { vertex_count, edges, loops })
    }

    pub fn empty(vertex_count: usize) -> Self {
        LoopedGraph { vertex_count, edges: Vec::new(), loops: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn element_count(&self) -> usize {
        self.edges.len() + self.loops.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == key)
    }

    /// Number of loops attached to `v`.
    pub fn loops_at(&self, v: usize) -> usize {
        self.loops.iter().filter(|&&w| w == v).count()
    }

    /// Elements in canonical scan order: loops by id, then edges by id.
    pub fn elements(&self) -> Vec<ElementId> {
        let mut out = Vec::with_capacity(self.element_count());
        out.extend((0..self.loops.len()).map(ElementId::Loop));
        out.extend(self.edges.iter().map(|&(u, v)| ElementId::edge(u, v)));
        out
    }

    /// Edge adjacency (loops excluded), as one sorted neighbour set per vertex.
    pub fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    /// Number of elements induced by `x`: edges with both ends in `x` plus
    /// loops at members of `x`.
    pub fn induced_count(&self, x: &VertexSubset) -> Result<usize, GraphError> {
        x.validate(self)?;
        let mut inside = vec![false; self.vertex_count];
        for &v in x.members() {
            inside[v] = true;
        }
        let edges = self.edges.iter().filter(|&&(u, v)| inside[u] && inside[v]).count();
        let loops = self.loops.iter().filter(|&&v| inside[v]).count();
        Ok(edges + loops)
    }

    /// The graph with `k` extra loops at every vertex. Existing loops keep
    /// their ids; the fresh loops follow, grouped by vertex in ascending order.
    pub fn add_uniform_loops(&self, k: usize) -> LoopedGraph {
        let mut loops = self.loops.clone();
        for v in 0..self.vertex_count {
            loops.extend(std::iter::repeat_n(v, k));
        }
        LoopedGraph { vertex_count: self.vertex_count, edges: self.edges.clone(), loops }
    }

    pub fn min_loop_degree(&self) -> Result<usize, GraphError> {
        if self.vertex_count == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut count = vec![0usize; self.vertex_count];
        for &v in &self.loops {
            count[v] += 1;
        }
        Ok(count.into_iter().min().unwrap())
    }

    /// Searches for a clique on `k` vertices among the edges; loops are
    /// ignored. Returns the first clique found in lexicographic order.
    pub fn contains_clique(&self, k: usize) -> Option<VertexSubset> {
        let adj = self.adjacency();
        let candidates: Vec<usize> = (0..self.vertex_count).collect();
        clique_of_size(&adj, &candidates, k).map(VertexSubset::new)
    }

    /// Connected components of the edge structure, smallest original vertex
    /// first. Vertices are relabelled densely within each component; loops
    /// travel with their vertex.
    pub fn connected_components(&self) -> Vec<LoopedGraph> {
        let adj = self.adjacency();
        let mut component = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for start in 0..self.vertex_count {
            if component[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            component[start] = count;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if component[w] == usize::MAX {
                        component[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        let mut relabel = vec![0usize; self.vertex_count];
        let mut sizes = vec![0usize; count];
        for v in 0..self.vertex_count {
            relabel[v] = sizes[component[v]];
            sizes[component[v]] += 1;
        }
        let mut parts: Vec<LoopedGraph> = sizes.into_iter().map(LoopedGraph::empty).collect();
        for &(u, v) in &self.edges {
            parts[component[u]].edges.push((relabel[u], relabel[v]));
        }
        for &v in &self.loops {
            parts[component[v]].loops.push(relabel[v]);
        }
        parts
    }

    /// Subgraph on the same vertex set keeping exactly the listed elements,
    /// in the original scan order. Loop ids are renumbered by position.
    pub fn element_subgraph(&self, elements: &[ElementId]) -> Result<LoopedGraph, GraphError> {
        let mut keep: BTreeSet<ElementId> = BTreeSet::new();
        for &el in elements {
            match el {
                ElementId::Loop(id) if id >= self.loops.len() => {
                    return Err(GraphError::UnknownLoop(id, self.loops.len()));
                }
                ElementId::Edge(u, v) if !self.has_edge(u, v) => {
                    return Err(GraphError::UnknownEdge(u, v));
                }
                _ => {}
            }
            keep.insert(el);
        }
        let loops = self
            .loops
            .iter()
            .enumerate()
            .filter(|(id, _)| keep.contains(&ElementId::Loop(*id)))
            .map(|(_, &v)| v)
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep.contains(&ElementId::edge(u, v)))
            .copied()
            .collect();
        Ok(LoopedGraph { vertex_count: self.vertex_count, edges, loops })
    }

    /// The graph with one loop removed; later loop ids shift down by one.
    pub fn without_loop(&self, loop_id: usize) -> Result<LoopedGraph, GraphError> {
        if loop_id >= self.loops.len() {
            return Err(GraphError::UnknownLoop(loop_id, self.loops.len()));
        }
        let mut loops = self.loops.clone();
        loops.remove(loop_id);
        Ok(LoopedGraph { vertex_count: self.vertex_count, edges: self.edges.clone(), loops })
    }

    pub fn from_json_str(s: &str) -> Result<Self, GraphError> {
        serde_json::from_str(s).map_err(|e| GraphError::Json(e.to_string()))
    }

    /// Canonical single-line encoding; parsing it back is exact.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }
}

impl Serialize for LoopedGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("LoopedGraph", 3)?;
        st.serialize_field("vertices", &self.vertex_count)?;
        st.serialize_field("edges", &self.edges)?;
        st.serialize_field("loops", &self.loops)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct GraphJson {
    vertices: usize,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    loops: Vec<usize>,
}

impl<'de> Deserialize<'de> for LoopedGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(deserializer)?;
        LoopedGraph::new(raw.vertices, raw.edges, raw.loops).map_err(D::Error::custom)
    }
}

/// Finds a `k`-clique within `candidates` under the given adjacency, if one
/// exists. Candidates must be sorted; the result is the lexicographically
/// first clique the backtracking search reaches.
pub fn clique_of_size(
    adj: &[BTreeSet<usize>],
    candidates: &[usize],
    k: usize,
) -> Option<Vec<usize>> {
    fn extend(
        adj: &[BTreeSet<usize>],
        current: &mut Vec<usize>,
        candidates: &[usize],
        k: usize,
    ) -> bool {
        if current.len() == k {
            return true;
        }
        for (i, &v) in candidates.iter().enumerate() {
            if current.len() + candidates.len() - i < k {
                break;
            }
            let rest: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|w| adj[v].contains(w))
                .collect();
            current.push(v);
            if extend(adj, current, &rest, k) {
                return true;
            }
            current.pop();
        }
        false
    }

    let viable: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&v| adj[v].len() + 1 >= k)
        .collect();
    let mut current = Vec::with_capacity(k);
    if extend(adj, &mut current, &viable, k) {
        Some(current)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> LoopedGraph {
        LoopedGraph::new(3, vec![(0, 1), (1, 2), (0, 2)], vec![]).unwrap()
    }

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
    fn rejects_self_edges() {
        assert_eq!(
            LoopedGraph::new(2, vec![(1, 1)], vec![]),
            Err(GraphError::SelfEdge(1))
        );
    }

    #[test]
    fn rejects_parallel_edges() {
        assert_eq!(
            LoopedGraph::new(3, vec![(0, 1), (1, 0)], vec![]),
            Err(GraphError::ParallelEdge(1, 0))
        );
    }

    #[test]
    fn rejects_out_of_range_ids() {
        assert_eq!(
            LoopedGraph::new(2, vec![(0, 2)], vec![]),
            Err(GraphError::UnknownVertex(2, 2))
        );
        assert_eq!(
            LoopedGraph::new(2, vec![], vec![5]),
            Err(GraphError::UnknownVertex(5, 2))
        );
    }

    #[test]
    fn induced_count_mixes_edges_and_loops() {
        // Triangle with loops at 0 and 1 and a second loop at 0.
        let g = LoopedGraph::new(3, vec![(0, 1), (1, 2), (0, 2)], vec![0, 1, 0]).unwrap();
        assert_eq!(g.induced_count(&VertexSubset::new([0, 1])).unwrap(), 4);
        assert_eq!(g.induced_count(&VertexSubset::new([2])).unwrap(), 0);
        assert_eq!(g.induced_count(&VertexSubset::new([0, 1, 2])).unwrap(), 6);
        assert_eq!(g.induced_count(&VertexSubset::empty()).unwrap(), 0);
    }

    #[test]
    fn induced_count_validates_subset() {
        let g = triangle();
        assert_eq!(
            g.induced_count(&VertexSubset::new([3])),
            Err(GraphError::UnknownVertex(3, 3))
        );
    }

    #[test]
    fn add_uniform_loops_appends_after_existing() {
        let g = LoopedGraph::new(2, vec![(0, 1)], vec![1]).unwrap();
        let h = g.add_uniform_loops(2);
        assert_eq!(h.loops(), &[1, 0, 0, 1, 1]);
        assert_eq!(h.edges(), g.edges());
        assert_eq!(h.loops_at(0), 2);
        assert_eq!(h.loops_at(1), 3);
    }

    #[test]
    fn min_loop_degree_examples() {
        let g = LoopedGraph::new(3, vec![], vec![0, 0, 1, 2]).unwrap();
        assert_eq!(g.min_loop_degree().unwrap(), 1);
        let h = LoopedGraph::new(2, vec![], vec![0]).unwrap();
        assert_eq!(h.min_loop_degree().unwrap(), 0);
        assert_eq!(LoopedGraph::empty(0).min_loop_degree(), Err(GraphError::EmptyGraph));
    }

    #[test]
    fn clique_detection_on_k5_minus_edge() {
        let mut g = complete(5);
        g.edges.retain(|&(u, v)| (u, v) != (0, 1));
        assert!(g.contains_clique(5).is_none());
        let c = g.contains_clique(4).expect("a 4-clique survives");
        assert_eq!(c.len(), 4);
        assert!(!(c.contains(0) && c.contains(1)));
        for (i, &u) in c.members().iter().enumerate() {
            for &v in &c.members()[i + 1..] {
                assert!(g.has_edge(u, v));
            }
        }
    }

    #[test]
    fn clique_size_one_is_any_vertex() {
        assert_eq!(triangle().contains_clique(1), Some(VertexSubset::new([0])));
        assert!(LoopedGraph::empty(0).contains_clique(1).is_none());
    }

    #[test]
    fn clique_search_matches_exhaustive_enumeration() {
        // All graphs on 4 vertices, every clique size.
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for mask in 0u32..64 {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = LoopedGraph::new(4, edges, vec![]).unwrap();
            for k in 1..=5 {
                let found = g.contains_clique(k);
                let exists = (0u32..16).any(|vs| {
                    let mem: Vec<usize> = (0..4).filter(|i| vs >> i & 1 == 1).collect();
                    mem.len() == k
                        && mem.iter().enumerate().all(|(i, &u)| {
                            mem[i + 1..].iter().all(|&v| g.has_edge(u, v))
                        })
                });
                assert_eq!(found.is_some(), exists, "mask {mask} k {k}");
                if let Some(c) = found {
                    assert_eq!(c.len(), k);
                    for (i, &u) in c.members().iter().enumerate() {
                        for &v in &c.members()[i + 1..] {
                            assert!(g.has_edge(u, v));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn components_split_and_relabel() {
        // Path 0-1, isolated looped vertex 2, edge 3-4 with loop at 4.
        let g = LoopedGraph::new(5, vec![(0, 1), (3, 4)], vec![2, 4, 4]).unwrap();
        let parts = g.connected_components();
        assert_eq!(parts.len(), 3);
        assert_eq!(parts[0], LoopedGraph::new(2, vec![(0, 1)], vec![]).unwrap());
        assert_eq!(parts[1], LoopedGraph::new(1, vec![], vec![0]).unwrap());
        assert_eq!(parts[2], LoopedGraph::new(2, vec![(0, 1)], vec![1, 1]).unwrap());
    }

    #[test]
    fn single_component_round_trip() {
        let g = LoopedGraph::new(3, vec![(0, 1), (1, 2)], vec![0, 2]).unwrap();
        assert_eq!(g.connected_components(), vec![g]);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let g = LoopedGraph::new(3, vec![(0, 1), (2, 1)], vec![2, 0, 2]).unwrap();
        let s = g.to_json_string();
        assert_eq!(s, r#"{"vertices":3,"edges":[[0,1],[2,1]],"loops":[2,0,2]}"#);
        assert_eq!(LoopedGraph::from_json_str(&s).unwrap(), g);
        assert_eq!(LoopedGraph::from_json_str(&s).unwrap().to_json_string(), s);
    }

    #[test]
    fn json_missing_lists_default_to_empty() {
        let g = LoopedGraph::from_json_str(r#"{"vertices":2}"#).unwrap();
        assert_eq!(g, LoopedGraph::empty(2));
    }

    #[test]
    fn json_rejects_invalid_graphs() {
        assert!(LoopedGraph::from_json_str(r#"{"vertices":2,"edges":[[0,0]]}"#).is_err());
        assert!(LoopedGraph::from_json_str(r#"{"vertices":1,"edges":[[0,1]]}"#).is_err());
        assert!(LoopedGraph::from_json_str("not json").is_err());
    }

    #[test]
    fn element_subgraph_keeps_order() {
        let g = LoopedGraph::new(3, vec![(0, 1), (1, 2), (0, 2)], vec![0, 1]).unwrap();
        let h = g
            .element_subgraph(&[ElementId::edge(2, 0), ElementId::Loop(1), ElementId::edge(0, 1)])
            .unwrap();
        assert_eq!(h.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(h.loops(), &[1]);
        assert!(g.element_subgraph(&[ElementId::Loop(7)]).is_err());
        assert!(g.element_subgraph(&[ElementId::edge(1, 7)]).is_err());
    }

    fn arbitrary_graph() -> impl Strategy<Value = LoopedGraph> {
        (1usize..8).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let edge_mask = proptest::collection::vec(any::<bool>(), pairs.len());
            let loops = proptest::collection::vec(0..n, 0..6);
            (Just(pairs), edge_mask, loops).prop_map(move |(pairs, mask, loops)| {
                let edges = pairs
                    .into_iter()
                    .zip(mask)
                    .filter(|(_, keep)| *keep)
                    .map(|(e, _)| e)
                    .collect();
                LoopedGraph::new(n, edges, loops).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn induced_count_monotone(g in arbitrary_graph(), sub in proptest::collection::vec(any::<bool>(), 8)) {
            let x = VertexSubset::new((0..g.vertex_count()).filter(|&v| sub[v]));
            let whole = VertexSubset::new(0..g.vertex_count());
            let cx = g.induced_count(&x).unwrap();
            let cv = g.induced_count(&whole).unwrap();
            prop_assert!(cx <= cv);
            prop_assert_eq!(cv, g.element_count());
        }

        #[test]
        fn uniform_loops_shift_counts(g in arbitrary_graph(), k in 0usize..4, sub in proptest::collection::vec(any::<bool>(), 8)) {
            let x = VertexSubset::new((0..g.vertex_count()).filter(|&v| sub[v]));
            let before = g.induced_count(&x).unwrap();
            let after = g.add_uniform_loops(k).induced_count(&x).unwrap();
            prop_assert_eq!(after, before + k * x.len());
        }

        #[test]
        fn json_round_trip(g in arbitrary_graph()) {
            let s = g.to_json_string();
            prop_assert_eq!(LoopedGraph::from_json_str(&s).unwrap(), g);
        }
    }
}
