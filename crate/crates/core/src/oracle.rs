//! The counting weight oracle.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{BipartiteInstance, Edge, EdgeId, Topology};

/// Anything that can reveal the true weight of an edge id.
pub trait WeightSource: Sync {
    fn weight(&self, id: EdgeId) -> f64;
}

impl WeightSource for BipartiteInstance {
    fn weight(&self, id: EdgeId) -> f64 {
        self.weights[id]
    }
}

impl WeightSource for [f64] {
    fn weight(&self, id: EdgeId) -> f64 {
        self[id]
    }
}

impl WeightSource for Vec<f64> {
    fn weight(&self, id: EdgeId) -> f64 {
        self[id]
    }
}

/// First-inspection record of a single run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct QueryLedger {
    queried: HashSet<EdgeId>,
    trace: Vec<(EdgeId, Edge, f64)>,
}

impl QueryLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn query_count(&self) -> usize {
        self.queried.len()
    }

    pub fn was_queried(&self, id: EdgeId) -> bool {
        self.queried.contains(&id)
    }

    pub fn queried(&self) -> &HashSet<EdgeId> {
        &self.queried
    }

    /// Revealed edges in query order.
    pub fn trace(&self) -> &[(EdgeId, Edge, f64)] {
        &self.trace
    }

    fn record(&mut self, id: EdgeId, edge: Edge, w: f64) -> bool {
        if self.queried.insert(id) {
            self.trace.push((id, edge, w));
            true
        } else {
            false
        }
    }

    pub fn report(&self) -> LedgerReport {
        LedgerReport {
            query_count: self.query_count(),
            trace: self.trace.iter().map(|&(_, e, w)| (e, w)).collect(),
        }
    }
}

/// Immutable snapshot of a ledger.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LedgerReport {
    pub query_count: usize,
    pub trace: Vec<(Edge, f64)>,
}

/// Per-run gateway to edge weights. Only the first inspection of an edge is
/// charged to the ledger.
pub struct WeightOracle<'a> {
    topology: &'a Topology,
    source: &'a dyn WeightSource,
    cache: HashMap<EdgeId, f64>,
    ledger: QueryLedger,
}

impl<'a> WeightOracle<'a> {
    pub fn new(topology: &'a Topology, source: &'a dyn WeightSource) -> Self {
        WeightOracle { topology, source, cache: HashMap::new(), ledger: QueryLedger::new() }
    }

    pub fn topology(&self) -> &'a Topology {
        self.topology
    }

    pub fn query(&mut self, id: EdgeId) -> Result<f64> {
        if id >= self.topology.m() {
            return Err(Error::UnknownEdgeId(id));
        }
        if let Some(&w) = self.cache.get(&id) {
            return Ok(w);
        }
        let w = self.source.weight(id);
        self.cache.insert(id, w);
        self.ledger.record(id, self.topology.edge(id), w);
        Ok(w)
    }

    pub fn query_edge(&mut self, edge: Edge) -> Result<f64> {
        let id = self.topology.edge_id(edge).ok_or(Error::UnknownEdge(edge))?;
        self.query(id)
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    pub fn into_ledger(self) -> QueryLedger {
        self.ledger
    }
}

/// Queries every id in `ids` and returns the one with the largest weight.
/// Ties go to the earliest id in the slice.
pub(crate) fn argmax_queried(oracle: &mut WeightOracle<'_>, ids: &[EdgeId]) -> Result<EdgeId> {
    let mut best = ids[0];
    let mut best_w = oracle.query(best)?;
    for &id in &ids[1..] {
        let w = oracle.query(id)?;
        if w > best_w {
            best = id;
            best_w = w;
        }
    }
    Ok(best)
}
