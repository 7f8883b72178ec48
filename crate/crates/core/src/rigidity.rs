//! Rigidity matrices of linearly constrained frameworks. A framework places
//! each vertex at a point of R^d and attaches a normal vector to each loop;
//! an edge row constrains the two endpoint velocities along the bar, a loop
//! row constrains its vertex's velocity against the normal. The framework is
//! independent when the rows are independent and infinitesimally rigid when
//! the rank reaches d|V|.
//!
//! Generic values are computed by random evaluation over a prime field,
//! taking the best of several trials. The estimate never exceeds the true
//! generic value; each trial falls short with probability at most
//! min(rows, cols)/p.

use thiserror::Error;

use crate::algebra::{Field, Matrix, PrimeField, RandomSource, Rationals};
use crate::graph::{ElementId, GraphError, LoopedGraph, VertexSubset};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RigidityError {
    #[error("realisation does not cover the graph: {0}")]
    MissingAssignment(String),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("pinned matrices are defined for loopless graphs")]
    LoopsPresent,
    #[error("removing loop {0} drops the generic rank")]
    RankDrops(usize),
    #[error("no rank-generic rational point found after {0} attempts")]
    NoGenericPoint(usize),
}

/// Geometric data for a framework: a point per vertex, a normal per loop,
/// all with `dim` coordinates.
#[derive(Clone, Debug)]
pub struct Realisation<F: Field> {
    field: F,
    dim: usize,
    points: Vec<Vec<F::Elem>>,
    normals: Vec<Vec<F::Elem>>,
}

impl<F: Field> Realisation<F> {
    pub fn new(
        field: F,
        dim: usize,
        points: Vec<Vec<F::Elem>>,
        normals: Vec<Vec<F::Elem>>,
    ) -> Result<Self, RigidityError> {
        if dim == 0 {
            return Err(RigidityError::ZeroDimension);
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(RigidityError::MissingAssignment(format!(
                    "point {i} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
        }
        for (i, q) in normals.iter().enumerate() {
            if q.len() != dim {
                return Err(RigidityError::MissingAssignment(format!(
                    "normal {i} has {} coordinates, expected {dim}",
                    q.len()
                )));
            }
        }
        Ok(Realisation { field, dim, points, normals })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, v: usize) -> &[F::Elem] {
        &self.points[v]
    }

    pub fn normal(&self, l: usize) -> &[F::Elem] {
        &self.normals[l]
    }

    fn check_covers(&self, g: &LoopedGraph) -> Result<(), RigidityError> {
        if self.points.len() != g.vertex_count() {
            return Err(RigidityError::MissingAssignment(format!(
                "{} points for {} vertices",
                self.points.len(),
                g.vertex_count()
            )));
        }
        if self.normals.len() != g.loop_count() {
            return Err(RigidityError::MissingAssignment(format!(
                "{} normals for {} loops",
                self.normals.len(),
                g.loop_count()
            )));
        }
        Ok(())
    }
}

/// Uniformly random realisation over a prime field.
pub fn random_prime_realisation(
    g: &LoopedGraph,
    dim: usize,
    field: &PrimeField,
    rs: &mut RandomSource,
) -> Realisation<PrimeField> {
    let points = (0..g.vertex_count())
        .map(|_| rs.random_assignment(field, dim))
        .collect();
    let normals = (0..g.loop_count())
        .map(|_| rs.random_assignment(field, dim))
        .collect();
    Realisation::new(*field, dim, points, normals).expect("dimensions match by construction")
}

/// Random realisation with integer coordinates drawn from `[-bound, bound]`,
/// kept as exact rationals.
pub fn random_rational_realisation(
    g: &LoopedGraph,
    dim: usize,
    bound: i64,
    rs: &mut RandomSource,
) -> Realisation<Rationals> {
    let points = (0..g.vertex_count())
        .map(|_| (0..dim).map(|_| rs.rational_integer(-bound, bound)).collect())
        .collect();
    let normals = (0..g.loop_count())
        .map(|_| (0..dim).map(|_| rs.rational_integer(-bound, bound)).collect())
        .collect();
    Realisation::new(Rationals, dim, points, normals).expect("dimensions match by construction")
}

/// The rigidity matrix together with its row and column labelling. Row i
/// belongs to `row_elements[i]`; column d*v + c is coordinate c of vertex v.
#[derive(Clone, Debug)]
pub struct RigidityMatrix<F: Field> {
    pub matrix: Matrix<F>,
    pub row_elements: Vec<ElementId>,
    dim: usize,
}

impl<F: Field> RigidityMatrix<F> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column_of(&self, vertex: usize, coord: usize) -> usize {
        vertex * self.dim + coord
    }

    pub fn column_label(&self, col: usize) -> (usize, usize) {
        (col / self.dim, col % self.dim)
    }

    pub fn row_of(&self, element: ElementId) -> Option<usize> {
        self.row_elements.iter().position(|&e| e == element)
    }
}

/// Builds the rigidity matrix: one row per edge (graph order), then one per
/// loop (id order). The edge row for uv carries p_u - p_v in u's columns and
/// p_v - p_u in v's; the loop row carries its normal in the columns of its
/// vertex.
pub fn build_matrix<F: Field>(
    g: &LoopedGraph,
    r: &Realisation<F>,
) -> Result<RigidityMatrix<F>, RigidityError> {
    r.check_covers(g)?;
    let d = r.dim();
    let f = r.field().clone();
    let rows = g.element_count();
    let cols = d * g.vertex_count();
    let mut matrix = Matrix::zero(f.clone(), rows, cols);
    let mut row_elements = Vec::with_capacity(rows);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        for c in 0..d {
            let diff = f.sub(&r.point(u)[c], &r.point(v)[c]);
            matrix.set(i, u * d + c, diff.clone());
            matrix.set(i, v * d + c, f.neg(&diff));
        }
        row_elements.push(ElementId::edge(u, v));
    }
    let base = g.edge_count();
    for (l, &v) in g.loops().iter().enumerate() {
        for c in 0..d {
            matrix.set(base + l, v * d + c, r.normal(l)[c].clone());
        }
        row_elements.push(ElementId::Loop(l));
    }
    Ok(RigidityMatrix { matrix, row_elements, dim: d })
}

/// Rigidity matrix of a loopless framework with the pinned vertices' columns
/// deleted. Surviving columns follow unpinned vertices in ascending order.
pub fn build_pinned_matrix<F: Field>(
    g: &LoopedGraph,
    pinned: &VertexSubset,
    r: &Realisation<F>,
) -> Result<Matrix<F>, RigidityError> {
    if g.loop_count() > 0 {
        return Err(RigidityError::LoopsPresent);
    }
    pinned.validate(g)?;
    r.check_covers(g)?;
    let d = r.dim();
    let f = r.field().clone();
    let mut block = vec![None; g.vertex_count()];
    let mut next = 0;
    for (v, slot) in block.iter_mut().enumerate() {
        if !pinned.contains(v) {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut matrix = Matrix::zero(f.clone(), g.edge_count(), d * next);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        for c in 0..d {
            let diff = f.sub(&r.point(u)[c], &r.point(v)[c]);
            if let Some(b) = block[u] {
                matrix.set(i, b * d + c, diff.clone());
            }
            if let Some(b) = block[v] {
                matrix.set(i, b * d + c, f.neg(&diff));
            }
        }
    }
    Ok(matrix)
}

/// Trial count and evaluation field for randomized rank computations.
#[derive(Clone, Copy, Debug)]
pub struct RankOptions {
    pub trials: u32,
    pub field: PrimeField,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions { trials: 3, field: PrimeField::mersenne61() }
    }
}

/// A rank estimate with its one-sided failure bound: the probability that
/// the true generic rank is larger. The estimate itself never overshoots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RankEstimate {
    pub rank: usize,
    pub trials: u32,
    pub failure_bound: f64,
}

pub fn generic_rank_estimate(
    g: &LoopedGraph,
    d: usize,
    rs: &mut RandomSource,
    opts: &RankOptions,
) -> RankEstimate {
    assert!(d >= 1, "dimension must be at least 1");
    let cap = g.element_count().min(d * g.vertex_count());
    let mut best = 0;
    let mut used = 0;
    for _ in 0..opts.trials.max(1) {
        used += 1;
        let r = random_prime_realisation(g, d, &opts.field, rs);
        let m = build_matrix(g, &r).expect("random realisation covers the graph");
        best = best.max(m.matrix.rank());
        if best == cap {
            break;
        }
    }
    let failure_bound = if best == cap {
        0.0
    } else {
        let per_trial = (cap as f64 / opts.field.modulus() as f64).min(1.0);
        per_trial.powi(used)
    };
    RankEstimate { rank: best, trials: used as u32, failure_bound }
}

pub fn generic_rank(g: &LoopedGraph, d: usize, rs: &mut RandomSource) -> usize {
    generic_rank_estimate(g, d, rs, &RankOptions::default()).rank
}

pub fn is_independent_with(
    g: &LoopedGraph,
    d: usize,
    rs: &mut RandomSource,
    opts: &RankOptions,
) -> bool {
    generic_rank_estimate(g, d, rs, opts).rank == g.element_count()
}

/// All rows of the rigidity matrix generically independent.
pub fn is_independent(g: &LoopedGraph, d: usize, rs: &mut RandomSource) -> bool {
    is_independent_with(g, d, rs, &RankOptions::default())
}

pub fn is_rigid_with(
    g: &LoopedGraph,
    d: usize,
    rs: &mut RandomSource,
    opts: &RankOptions,
) -> bool {
    generic_rank_estimate(g, d, rs, opts).rank == d * g.vertex_count()
}

/// Generic rank reaches d|V|: only the zero velocity satisfies every
/// constraint.
pub fn is_rigid(g: &LoopedGraph, d: usize, rs: &mut RandomSource) -> bool {
    is_rigid_with(g, d, rs, &RankOptions::default())
}

pub fn pinned_independent_with(
    g: &LoopedGraph,
    pinned: &VertexSubset,
    d: usize,
    rs: &mut RandomSource,
    opts: &RankOptions,
) -> Result<bool, RigidityError> {
    if d == 0 {
        return Err(RigidityError::ZeroDimension);
    }
    if g.loop_count() > 0 {
        return Err(RigidityError::LoopsPresent);
    }
    pinned.validate(g)?;
    let target = g.edge_count();
    for _ in 0..opts.trials.max(1) {
        let r = random_prime_realisation(g, d, &opts.field, rs);
        let m = build_pinned_matrix(g, pinned, &r)?;
        if m.rank() == target {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Rows of the pinned matrix generically independent. An empty pin set makes
/// this plain independence of the loopless framework.
pub fn pinned_independent(
    g: &LoopedGraph,
    pinned: &VertexSubset,
    d: usize,
    rs: &mut RandomSource,
) -> Result<bool, RigidityError> {
    pinned_independent_with(g, pinned, d, rs, &RankOptions::default())
}

/// An infinitesimal motion: one velocity vector per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Motion<F: Field> {
    velocities: Vec<Vec<F::Elem>>,
}

impl<F: Field> Motion<F> {
    pub fn velocities(&self) -> &[Vec<F::Elem>] {
        &self.velocities
    }

    pub fn velocity(&self, v: usize) -> &[F::Elem] {
        &self.velocities[v]
    }

    /// Checks the defining equations directly: each edge preserves its
    /// length to first order, each loop velocity is orthogonal to its normal.
    pub fn satisfies(&self, g: &LoopedGraph, r: &Realisation<F>) -> bool {
        let f = r.field();
        let d = r.dim();
        for &(u, v) in g.edges() {
            let mut acc = f.zero();
            for c in 0..d {
                let dp = f.sub(&r.point(u)[c], &r.point(v)[c]);
                let dv = f.sub(&self.velocities[u][c], &self.velocities[v][c]);
                acc = f.add(&acc, &f.mul(&dp, &dv));
            }
            if !f.is_zero(&acc) {
                return false;
            }
        }
        for (l, &v) in g.loops().iter().enumerate() {
            let mut acc = f.zero();
            for c in 0..d {
                acc = f.add(&acc, &f.mul(&r.normal(l)[c], &self.velocities[v][c]));
            }
            if !f.is_zero(&acc) {
                return false;
            }
        }
        true
    }
}

/// Basis of the motion space at the given realisation. Empty exactly when
/// the framework is infinitesimally rigid there.
pub fn motion_space<F: Field>(
    g: &LoopedGraph,
    r: &Realisation<F>,
) -> Result<Vec<Motion<F>>, RigidityError> {
    let rm = build_matrix(g, r)?;
    let d = r.dim();
    Ok(rm
        .matrix
        .nullspace_basis()
        .into_iter()
        .map(|x| Motion {
            velocities: (0..g.vertex_count())
                .map(|v| x[v * d..(v + 1) * d].to_vec())
                .collect(),
        })
        .collect())
}

/// A minimal dependent element set. Removing any element leaves an
/// independent set; `pivot` is the set's first element in scan order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitWitness {
    pub elements: Vec<ElementId>,
    pub pivot: ElementId,
}

pub fn find_circuit_with(
    g: &LoopedGraph,
    d: usize,
    rs: &mut RandomSource,
    opts: &RankOptions,
) -> Option<CircuitWitness> {
    let rank_of = |els: &[ElementId], rs: &mut RandomSource| {
        let sub = g.element_subgraph(els).expect("elements come from g");
        generic_rank_estimate(&sub, d, rs, opts).rank
    };
    let all = g.elements();
    if rank_of(&all, rs) == all.len() {
        return None;
    }
    for _ in 0..3 {
        // One pass in scan order: drop an element whenever the rest stays
        // dependent. What survives is dependent with every proper subset
        // independent.
        let mut current = all.clone();
        let mut idx = 0;
        while idx < current.len() {
            let mut smaller = current.clone();
            smaller.remove(idx);
            if rank_of(&smaller, rs) < smaller.len() {
                current = smaller;
            } else {
                idx += 1;
            }
        }
        let minimal = rank_of(&current, rs) == current.len() - 1
            && (0..current.len()).all(|i| {
                let mut smaller = current.clone();
                smaller.remove(i);
                rank_of(&smaller, rs) == smaller.len()
            });
        if minimal {
            return Some(CircuitWitness { elements: current.clone(), pivot: current[0] });
        }
    }
    panic!("circuit extraction failed verification repeatedly; the evaluation field is too small");
}

/// Extracts a circuit of the framework's row matroid if the elements are
/// dependent. Candidates for removal are scanned loops first, then edges,
/// each in id order.
pub fn find_circuit(g: &LoopedGraph, d: usize, rs: &mut RandomSource) -> Option<CircuitWitness> {
    find_circuit_with(g, d, rs, &RankOptions::default())
}

const RATIONAL_COORD_BOUND: i64 = 1_000_000;
const GENERIC_POINT_ATTEMPTS: usize = 16;

pub fn fixed_vertex_check_with(
    g: &LoopedGraph,
    loop_id: usize,
    d: usize,
    rs: &mut RandomSource,
    opts: &RankOptions,
) -> Result<bool, RigidityError> {
    if d == 0 {
        return Err(RigidityError::ZeroDimension);
    }
    if loop_id >= g.loop_count() {
        return Err(RigidityError::Graph(GraphError::UnknownLoop(loop_id, g.loop_count())));
    }
    let vertex = g.loops()[loop_id];
    let full = generic_rank_estimate(g, d, rs, opts).rank;
    let without = generic_rank_estimate(&g.without_loop(loop_id)?, d, rs, opts).rank;
    if without < full {
        return Err(RigidityError::RankDrops(loop_id));
    }
    // At a rational point of full generic rank the nullspace is a faithful
    // model of the generic motion space.
    for _ in 0..GENERIC_POINT_ATTEMPTS {
        let r = random_rational_realisation(g, d, RATIONAL_COORD_BOUND, rs);
        let rm = build_matrix(g, &r)?;
        if rm.matrix.rank() != full {
            continue;
        }
        let pinned_down = rm.matrix.nullspace_basis().iter().all(|x| {
            (0..d).all(|c| Rationals.is_zero(&x[vertex * d + c]))
        });
        return Ok(pinned_down);
    }
    Err(RigidityError::NoGenericPoint(GENERIC_POINT_ATTEMPTS))
}

/// Tests whether every motion leaves the loop's vertex at rest, given that
/// deleting the loop keeps the generic rank. A rank drop is an error: the
/// premise fails. Uses an exact rational nullspace at a random integer
/// point.
pub fn fixed_vertex_check(
    g: &LoopedGraph,
    loop_id: usize,
    d: usize,
    rs: &mut RandomSource,
) -> Result<bool, RigidityError> {
    fixed_vertex_check_with(g, loop_id, d, rs, &RankOptions::default())
}
