//! Bipartite instances, processing orders and matchings.
//!
//! Indices are 0-based everywhere in code. `Display` impls and the instance
//! file format use 1-based labels (`p1`, `c1`, ...).

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::REL_TOL;

/// Position of an edge in [`BipartiteInstance::edges`].
pub type EdgeId = usize;

/// A producer/consumer pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub p: usize,
    pub c: usize,
}

impl Edge {
    pub const fn new(p: usize, c: usize) -> Self {
        Edge { p, c }
    }

    pub fn is_adjacent(&self, other: &Edge) -> bool {
        self != other && (self.p == other.p || self.c == other.c)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p{},c{})", self.p + 1, self.c + 1)
    }
}

/// Heuristic processing orders. Each vector lists indices in processing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orders {
    pub sigma_p: Vec<usize>,
    pub sigma_c: Vec<usize>,
    pub sigma_e: Option<Vec<EdgeId>>,
}

impl Orders {
    pub fn identity(producers: usize, consumers: usize) -> Self {
        Orders {
            sigma_p: (0..producers).collect(),
            sigma_c: (0..consumers).collect(),
            sigma_e: None,
        }
    }
}

/// The weighted graph G = (P ∪ C, E) together with its orders.
///
/// The struct is plain data so that invalid instances can be represented and
/// diagnosed with [`BipartiteInstance::validate`]. Algorithms never receive it
/// directly: they get a weight-free [`Topology`] and a
/// [`WeightOracle`](crate::oracle::WeightOracle).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BipartiteInstance {
    pub producers: usize,
    pub consumers: usize,
    pub edges: Vec<Edge>,
    pub weights: Vec<f64>,
    pub sigma_p: Vec<usize>,
    pub sigma_c: Vec<usize>,
    pub sigma_e: Option<Vec<EdgeId>>,
}

/// A single invariant violation found by [`BipartiteInstance::validate`].
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    EmptySide { side: &'static str },
    WeightCountMismatch { edges: usize, weights: usize },
    EdgeOutOfRange { id: EdgeId, edge: Edge },
    DuplicateEdge { first: EdgeId, second: EdgeId, edge: Edge },
    NonPositiveWeight { id: EdgeId, weight: f64 },
    NotAPermutation { order: &'static str, len: usize, expected: usize },
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::EmptySide { .. } => "empty side",
            Violation::WeightCountMismatch { .. } => "weight count mismatch",
            Violation::EdgeOutOfRange { .. } => "edge out of range",
            Violation::DuplicateEdge { .. } => "duplicate edge",
            Violation::NonPositiveWeight { .. } => "non-positive weight",
            Violation::NotAPermutation { .. } => "not a permutation",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptySide { side } => write!(f, "{}: no {side}", self.kind()),
            Violation::WeightCountMismatch { edges, weights } => {
                write!(f, "{}: {edges} edges but {weights} weights", self.kind())
            }
            Violation::EdgeOutOfRange { id, edge } => {
                write!(f, "{}: edge #{} {edge}", self.kind(), id + 1)
            }
            Violation::DuplicateEdge { first, second, edge } => {
                write!(f, "{}: {edge} listed as #{} and #{}", self.kind(), first + 1, second + 1)
            }
            Violation::NonPositiveWeight { id, weight } => {
                write!(f, "{}: edge #{} has weight {weight}", self.kind(), id + 1)
            }
            Violation::NotAPermutation { order, len, expected } => write!(
                f,
                "{}: {order} has {len} entries, expected a permutation of 0..{expected}",
                self.kind()
            ),
        }
    }
}

fn is_permutation(order: &[usize], len: usize) -> bool {
    if order.len() != len {
        return false;
    }
    let mut seen = vec![false; len];
    for &i in order {
        if i >= len || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    true
}

impl BipartiteInstance {
    /// Builds an instance with identity node orders and no edge order.
    pub fn new(producers: usize, consumers: usize, weighted_edges: &[(usize, usize, f64)]) -> Self {
        BipartiteInstance {
            producers,
            consumers,
            edges: weighted_edges.iter().map(|&(p, c, _)| Edge::new(p, c)).collect(),
            weights: weighted_edges.iter().map(|&(_, _, w)| w).collect(),
            sigma_p: (0..producers).collect(),
            sigma_c: (0..consumers).collect(),
            sigma_e: None,
        }
    }

    pub fn with_orders(mut self, orders: Orders) -> Self {
        self.set_orders(orders);
        self
    }

    pub fn set_orders(&mut self, orders: Orders) {
        self.sigma_p = orders.sigma_p;
        self.sigma_c = orders.sigma_c;
        self.sigma_e = orders.sigma_e;
    }

    pub fn orders(&self) -> Orders {
        Orders {
            sigma_p: self.sigma_p.clone(),
            sigma_c: self.sigma_c.clone(),
            sigma_e: self.sigma_e.clone(),
        }
    }

    /// Maximum matching cardinality bound n = min(s, q).
    pub fn n(&self) -> usize {
        self.producers.min(self.consumers)
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Returns every invariant violation; an empty list means the instance is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.producers == 0 {
            out.push(Violation::EmptySide { side: "producers" });
        }
        if self.consumers == 0 {
            out.push(Violation::EmptySide { side: "consumers" });
        }
        if self.weights.len() != self.edges.len() {
            out.push(Violation::WeightCountMismatch {
                edges: self.edges.len(),
                weights: self.weights.len(),
            });
        }
        let mut first_seen: HashMap<Edge, EdgeId> = HashMap::new();
        for (id, &edge) in self.edges.iter().enumerate() {
            if edge.p >= self.producers || edge.c >= self.consumers {
                out.push(Violation::EdgeOutOfRange { id, edge });
            }
            if let Some(&first) = first_seen.get(&edge) {
                out.push(Violation::DuplicateEdge { first, second: id, edge });
            } else {
                first_seen.insert(edge, id);
            }
        }
        for (id, &weight) in self.weights.iter().enumerate() {
            // NaN fails this test as well.
            if !(weight > 0.0 && weight.is_finite()) {
                out.push(Violation::NonPositiveWeight { id, weight });
            }
        }
        if !is_permutation(&self.sigma_p, self.producers) {
            out.push(Violation::NotAPermutation {
                order: "sigma_p",
                len: self.sigma_p.len(),
                expected: self.producers,
            });
        }
        if !is_permutation(&self.sigma_c, self.consumers) {
            out.push(Violation::NotAPermutation {
                order: "sigma_c",
                len: self.sigma_c.len(),
                expected: self.consumers,
            });
        }
        if let Some(sigma_e) = &self.sigma_e {
            if !is_permutation(sigma_e, self.edges.len()) {
                out.push(Violation::NotAPermutation {
                    order: "sigma_e",
                    len: sigma_e.len(),
                    expected: self.edges.len(),
                });
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let violations = self.validate();
        if violations.is_empty() {
            Ok(())
        } else {
            let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
            Err(Error::InvalidInstance(text.join("; ")))
        }
    }

    /// Builds the weight-free view handed to discovery algorithms.
    pub fn topology(&self) -> Result<Topology> {
        self.ensure_valid()?;
        Ok(Topology::build(self))
    }

    pub fn find_edge(&self, edge: Edge) -> Option<EdgeId> {
        self.edges.iter().position(|&e| e == edge)
    }

    /// Reference weight lookup; bypasses the query oracle.
    pub fn weight_of(&self, edge: Edge) -> Result<f64> {
        self.find_edge(edge)
            .map(|id| self.weights[id])
            .ok_or(Error::UnknownEdge(edge))
    }
}

/// Edges and orders of an instance without any access to weights.
///
/// Neighbourhoods are pre-sorted: a producer's edges follow σ_C and a
/// consumer's edges follow σ_P.
#[derive(Clone, Debug)]
pub struct Topology {
    producers: usize,
    consumers: usize,
    edges: Vec<Edge>,
    sigma_p: Vec<usize>,
    sigma_c: Vec<usize>,
    sigma_e: Option<Vec<EdgeId>>,
    p_rank: Vec<usize>,
    c_rank: Vec<usize>,
    producer_adj: Vec<Vec<EdgeId>>,
    consumer_adj: Vec<Vec<EdgeId>>,
    lookup: HashMap<Edge, EdgeId>,
}

fn ranks(order: &[usize]) -> Vec<usize> {
    let mut rank = vec![0; order.len()];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos;
    }
    rank
}

impl Topology {
    fn build(inst: &BipartiteInstance) -> Self {
        let p_rank = ranks(&inst.sigma_p);
        let c_rank = ranks(&inst.sigma_c);
        let mut producer_adj = vec![Vec::new(); inst.producers];
        let mut consumer_adj = vec![Vec::new(); inst.consumers];
        for (id, e) in inst.edges.iter().enumerate() {
            producer_adj[e.p].push(id);
            consumer_adj[e.c].push(id);
        }
        for adj in &mut producer_adj {
            adj.sort_by_key(|&id| c_rank[inst.edges[id].c]);
        }
        for adj in &mut consumer_adj {
            adj.sort_by_key(|&id| p_rank[inst.edges[id].p]);
        }
        let lookup = inst.edges.iter().enumerate().map(|(id, &e)| (e, id)).collect();
        Topology {
            producers: inst.producers,
            consumers: inst.consumers,
            edges: inst.edges.clone(),
            sigma_p: inst.sigma_p.clone(),
            sigma_c: inst.sigma_c.clone(),
            sigma_e: inst.sigma_e.clone(),
            p_rank,
            c_rank,
            producer_adj,
            consumer_adj,
            lookup,
        }
    }

    pub fn producers(&self) -> usize {
        self.producers
    }

    pub fn consumers(&self) -> usize {
        self.consumers
    }

    pub fn n(&self) -> usize {
        self.producers.min(self.consumers)
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Edge {
        self.edges[id]
    }

    pub fn edge_id(&self, edge: Edge) -> Option<EdgeId> {
        self.lookup.get(&edge).copied()
    }

    pub fn sigma_p(&self) -> &[usize] {
        &self.sigma_p
    }

    pub fn sigma_c(&self) -> &[usize] {
        &self.sigma_c
    }

    pub fn sigma_e(&self) -> Result<&[EdgeId]> {
        self.sigma_e.as_deref().ok_or(Error::MissingEdgeOrder)
    }

    pub fn producer_rank(&self, p: usize) -> usize {
        self.p_rank[p]
    }

    pub fn consumer_rank(&self, c: usize) -> usize {
        self.c_rank[c]
    }

    /// Edges at producer `p`, in σ_C order.
    pub fn producer_edges(&self, p: usize) -> &[EdgeId] {
        &self.producer_adj[p]
    }

    /// Edges at consumer `c`, in σ_P order.
    pub fn consumer_edges(&self, c: usize) -> &[EdgeId] {
        &self.consumer_adj[c]
    }

    pub fn producer_degree(&self, p: usize) -> usize {
        self.producer_adj[p].len()
    }

    pub fn consumer_degree(&self, c: usize) -> usize {
        self.consumer_adj[c].len()
    }

    /// True if the edge has no adjacent edge at all.
    pub fn is_isolated(&self, id: EdgeId) -> bool {
        let e = self.edges[id];
        self.producer_adj[e.p].len() == 1 && self.consumer_adj[e.c].len() == 1
    }
}

/// A set of pairwise node-disjoint edges and its total weight.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<Edge>,
    pub total_weight: f64,
}

impl Matching {
    pub fn empty() -> Self {
        Matching::default()
    }

    /// Builds a matching from edge ids, reading weights directly from the
    /// instance. Edges are stored sorted.
    pub fn from_ids(inst: &BipartiteInstance, ids: &[EdgeId]) -> Self {
        let mut edges: Vec<Edge> = ids.iter().map(|&id| inst.edges[id]).collect();
        edges.sort();
        let total_weight = ids.iter().map(|&id| inst.weights[id]).sum();
        Matching { edges, total_weight }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: Edge) -> bool {
        self.edges.contains(&edge)
    }

    /// No two edges share a producer or a consumer.
    pub fn is_disjoint(&self) -> bool {
        let mut ps = HashSet::new();
        let mut cs = HashSet::new();
        self.edges.iter().all(|e| ps.insert(e.p) && cs.insert(e.c))
    }

    /// Checks disjointness, membership, size and the stored weight against `inst`.
    pub fn check(&self, inst: &BipartiteInstance) -> Result<()> {
        if !self.is_disjoint() {
            return Err(Error::InvalidParameter("matching edges share an endpoint".into()));
        }
        if self.edges.len() > inst.n() {
            return Err(Error::InvalidParameter(format!(
                "matching has {} edges but n = {}",
                self.edges.len(),
                inst.n()
            )));
        }
        let recomputed = matching_weight(inst, self)?;
        if !approx_eq(recomputed, self.total_weight) {
            return Err(Error::InvalidParameter(format!(
                "stored weight {} differs from recomputed {}",
                self.total_weight, recomputed
            )));
        }
        Ok(())
    }
}

/// Σ w(e) over the matching, read directly from the instance (not query-counted).
pub fn matching_weight(inst: &BipartiteInstance, m: &Matching) -> Result<f64> {
    m.edges.iter().map(|&e| inst.weight_of(e)).sum()
}

/// Relative comparison at [`REL_TOL`](crate::REL_TOL).
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * a.abs().max(b.abs()).max(1.0)
}
