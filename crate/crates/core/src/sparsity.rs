//! (k,0)-sparsity: a looped graph is k-sparse when every nonempty vertex set
//! X induces at most k|X| elements, counting loops. Sparse element sets are
//! the independent sets of a matroid; the pebble game computes its rank.

use thiserror::Error;

use crate::graph::{ElementId, LoopedGraph, VertexSubset};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SparsityError {
    #[error("sparsity parameter k must be at least 1")]
    ZeroK,
    #[error("brute-force enumeration is limited to 20 vertices, got {0}")]
    TooManyVertices(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SparsityParams {
    k: usize,
}

impl SparsityParams {
    pub fn new(k: usize) -> Result<Self, SparsityError> {
        if k == 0 {
            return Err(SparsityError::ZeroK);
        }
        Ok(SparsityParams { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsityVerdict {
    pub is_sparse: bool,
    /// Size of a maximum sparse subset of the elements.
    pub matroid_rank: usize,
    /// For a non-sparse graph, a vertex set X with more than k|X| induced
    /// elements: the region explored by the first failed insertion.
    pub violation: Option<VertexSubset>,
}

/// Outcome of offering one element to the game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    Accepted,
    /// The element would break sparsity; the carried set certifies it.
    Rejected(VertexSubset),
}

/// Incremental (k,0) pebble game. Every vertex starts with k pebbles; an
/// element is accepted if a free pebble can be brought to one of its
/// endpoints, and the pebble then pays for the element. Accepted elements
/// are oriented away from the paying endpoint. A rejected insertion leaves
/// the state untouched.
#[derive(Clone, Debug)]
pub struct PebbleGame {
    pebbles: Vec<usize>,
    out: Vec<Vec<usize>>,
    accepted: usize,
}

impl PebbleGame {
    pub fn new(vertex_count: usize, k: usize) -> Self {
        PebbleGame {
            pebbles: vec![k; vertex_count],
            out: vec![Vec::new(); vertex_count],
            accepted: 0,
        }
    }

    pub fn accepted_count(&self) -> usize {
        self.accepted
    }

    pub fn try_insert_edge(&mut self, u: usize, v: usize) -> Insertion {
        debug_assert!(u != v);
        match self.collect_pebble(&[u, v]) {
            Ok(s) => {
                self.pebbles[s] -= 1;
                let other = if s == u { v } else { u };
                self.out[s].push(other);
                self.accepted += 1;
                Insertion::Accepted
            }
            Err(region) => Insertion::Rejected(region),
        }
    }

    pub fn try_insert_loop(&mut self, v: usize) -> Insertion {
        match self.collect_pebble(&[v]) {
            Ok(s) => {
                self.pebbles[s] -= 1;
                self.out[s].push(s);
                self.accepted += 1;
                Insertion::Accepted
            }
            Err(region) => Insertion::Rejected(region),
        }
    }

    /// Brings a free pebble to one of `starts` if possible, returning the
    /// endpoint now holding it. Failure returns the set of vertices reachable
    /// along orientations; that set X is closed under out-arcs and pebble-free,
    /// so it already pays for k|X| accepted elements.
    fn collect_pebble(&mut self, starts: &[usize]) -> Result<usize, VertexSubset> {
        if let Some(&s) = starts.iter().find(|&&s| self.pebbles[s] > 0) {
            return Ok(s);
        }
        let n = self.pebbles.len();
        let mut parent: Vec<usize> = vec![usize::MAX; n];
        let mut visited = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        for &s in starts {
            if !visited[s] {
                visited[s] = true;
                stack.push(s);
            }
        }
        while let Some(v) = stack.pop() {
            for i in 0..self.out[v].len() {
                let w = self.out[v][i];
                if visited[w] {
                    continue;
                }
                visited[w] = true;
                parent[w] = v;
                if self.pebbles[w] > 0 {
                    // Reverse the path: the pebble walks back to the start.
                    self.pebbles[w] -= 1;
                    let mut cur = w;
                    while parent[cur] != usize::MAX {
                        let p = parent[cur];
                        let slot = self.out[p].iter().position(|&t| t == cur).expect("arc exists");
                        self.out[p].swap_remove(slot);
                        self.out[cur].push(p);
                        cur = p;
                    }
                    self.pebbles[cur] += 1;
                    return Ok(cur);
                }
                stack.push(w);
            }
        }
        let region = (0..n).filter(|&v| visited[v]);
        Err(VertexSubset::new(region))
    }
}

fn play(g: &LoopedGraph, params: &SparsityParams) -> (SparsityVerdict, Vec<usize>, Vec<usize>) {
    let mut game = PebbleGame::new(g.vertex_count(), params.k());
    let mut violation = None;
    let mut loops_kept = Vec::new();
    let mut edges_kept = Vec::new();
    for (id, &v) in g.loops().iter().enumerate() {
        match game.try_insert_loop(v) {
            Insertion::Accepted => loops_kept.push(id),
            Insertion::Rejected(region) => {
                violation.get_or_insert(region);
            }
        }
    }
    for (id, &(u, v)) in g.edges().iter().enumerate() {
        match game.try_insert_edge(u, v) {
            Insertion::Accepted => edges_kept.push(id),
            Insertion::Rejected(region) => {
                violation.get_or_insert(region);
            }
        }
    }
    let verdict = SparsityVerdict {
        is_sparse: violation.is_none(),
        matroid_rank: game.accepted_count(),
        violation,
    };
    (verdict, loops_kept, edges_kept)
}

/// Runs the pebble game over all elements, loops first then edges, each in
/// id order. The rank and the sparsity verdict do not depend on that order;
/// the violation certificate does.
pub fn pebble_game(g: &LoopedGraph, params: &SparsityParams) -> SparsityVerdict {
    play(g, params).0
}

/// k-tight: k-sparse with exactly k|V| elements.
pub fn is_tight(g: &LoopedGraph, params: &SparsityParams) -> bool {
    g.element_count() == params.k() * g.vertex_count() && pebble_game(g, params).is_sparse
}

/// Extracts a spanning k-tight subgraph if one exists, i.e. if the matroid
/// rank reaches k|V|. The subgraph consists of the accepted elements.
pub fn has_tight_spanning_subgraph(
    g: &LoopedGraph,
    params: &SparsityParams,
) -> Option<LoopedGraph> {
    let (verdict, loops_kept, edges_kept) = play(g, params);
    if verdict.matroid_rank != params.k() * g.vertex_count() {
        return None;
    }
    let mut elements: Vec<ElementId> = loops_kept.into_iter().map(ElementId::Loop).collect();
    elements.extend(edges_kept.into_iter().map(|id| {
        let (u, v) = g.edges()[id];
        ElementId::edge(u, v)
    }));
    Some(g.element_subgraph(&elements).expect("accepted elements exist"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceVerdict {
    pub is_sparse: bool,
    /// Omitted when the graph has more than 22 elements.
    pub matroid_rank: Option<usize>,
    pub violation: Option<VertexSubset>,
}

/// Independent verification by exhaustive enumeration: sparsity by checking
/// every nonempty vertex set, rank by searching element subsets in
/// decreasing size. Only for graphs with at most 20 vertices.
pub fn brute_force_sparse(
    g: &LoopedGraph,
    params: &SparsityParams,
) -> Result<BruteForceVerdict, SparsityError> {
    let n = g.vertex_count();
    if n > 20 {
        return Err(SparsityError::TooManyVertices(n));
    }
    let k = params.k();
    let m = g.element_count();
    let vertex_masks: Vec<u32> = g
        .loops()
        .iter()
        .map(|&v| 1u32 << v)
        .chain(g.edges().iter().map(|&(u, v)| 1u32 << u | 1u32 << v))
        .collect();

    let mut violation = None;
    for x in 1u32..1u32 << n {
        let inside = vertex_masks.iter().filter(|&&em| em & !x == 0).count();
        if inside > k * x.count_ones() as usize {
            violation = Some(VertexSubset::new((0..n).filter(|&v| x >> v & 1 == 1)));
            break;
        }
    }

    let matroid_rank = if m <= 22 {
        // Element bitmask e is sparse iff no vertex set exceeds its budget;
        // elements_within[x] collects the elements fully inside x.
        let elements_within: Vec<u32> = (0..1u32 << n)
            .map(|x| {
                let mut em = 0u32;
                for (i, &vm) in vertex_masks.iter().enumerate() {
                    if vm & !x == 0 {
                        em |= 1 << i;
                    }
                }
                em
            })
            .collect();
        let sparse = |subset: u32| {
            (1u32..1u32 << n).all(|x| {
                (subset & elements_within[x as usize]).count_ones() <= (k as u32) * x.count_ones()
            })
        };
        let mut rank = 0;
        'sizes: for size in (0..=m).rev() {
            // Gosper's hack walks all masks of the given popcount.
            let mut s: u32 = if size == 0 { 0 } else { (1u32 << size) - 1 };
            loop {
                if sparse(s) {
                    rank = size;
                    break 'sizes;
                }
                if size == 0 {
                    break;
                }
                let c = s & s.wrapping_neg();
                let r = s + c;
                let next = (((r ^ s) >> 2) / c) | r;
                if next >= 1u32 << m {
                    break;
                }
                s = next;
            }
        }
        Some(rank)
    } else {
        None
    };

    Ok(BruteForceVerdict { is_sparse: violation.is_none(), matroid_rank, violation })
}
