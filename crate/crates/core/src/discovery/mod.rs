//! Discovery algorithms. Each one sees only a [`Topology`] and a
//! [`WeightOracle`]; the final matching is priced afterwards, outside the run.

mod double_greedy;
mod edge;
mod node;
mod path4;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{BipartiteInstance, Edge, EdgeId, Matching, Topology};
use crate::oracle::{QueryLedger, WeightOracle, WeightSource};
use crate::reference;

pub use double_greedy::{greedy_path, l_double_greedy_ids, Availability, PathRecord};
pub use edge::{local_edge_ids, naive_edge_ids};
pub use node::{greedy_local_ids, l_greedy_local_ids, naive_local_ids};
pub use path4::{path4_saver, path4_saver_ids};

/// Every algorithm the harness can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    GreedyLocal,
    NaiveLocal,
    LGreedyLocal,
    LDoubleGreedy,
    NaiveEdge,
    LocalEdge,
    Exact,
    ClassicGreedy,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::GreedyLocal,
        Algorithm::NaiveLocal,
        Algorithm::LGreedyLocal,
        Algorithm::LDoubleGreedy,
        Algorithm::NaiveEdge,
        Algorithm::LocalEdge,
        Algorithm::Exact,
        Algorithm::ClassicGreedy,
    ];

    pub const DISCOVERY: [Algorithm; 6] = [
        Algorithm::GreedyLocal,
        Algorithm::NaiveLocal,
        Algorithm::LGreedyLocal,
        Algorithm::LDoubleGreedy,
        Algorithm::NaiveEdge,
        Algorithm::LocalEdge,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::GreedyLocal => "greedy-local",
            Algorithm::NaiveLocal => "naive-local",
            Algorithm::LGreedyLocal => "l-greedy-local",
            Algorithm::LDoubleGreedy => "l-double-greedy",
            Algorithm::NaiveEdge => "naive-edge",
            Algorithm::LocalEdge => "local-edge",
            Algorithm::Exact => "exact",
            Algorithm::ClassicGreedy => "classic-greedy",
        }
    }

    pub fn uses_ell(self) -> bool {
        matches!(self, Algorithm::LGreedyLocal | Algorithm::LDoubleGreedy | Algorithm::LocalEdge)
    }

    pub fn needs_edge_order(self) -> bool {
        matches!(self, Algorithm::NaiveEdge | Algorithm::LocalEdge)
    }

    /// Reference solvers read every weight and are charged `m` queries.
    pub fn is_reference(self) -> bool {
        matches!(self, Algorithm::Exact | Algorithm::ClassicGreedy)
    }

    /// Node-order algorithms (the ones covered by the blind-spot check).
    pub fn is_node_based(self) -> bool {
        matches!(
            self,
            Algorithm::GreedyLocal
                | Algorithm::NaiveLocal
                | Algorithm::LGreedyLocal
                | Algorithm::LDoubleGreedy
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id() == norm)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown algorithm '{s}'")))
    }
}

/// Outcome of one run.
#[derive(Clone, Debug)]
pub struct DiscoveryResult {
    pub algorithm: Algorithm,
    pub ell: usize,
    pub matching: Matching,
    pub ledger: QueryLedger,
    pub path_log: Option<Vec<PathRecord>>,
}

impl DiscoveryResult {
    /// Distinct weights inspected; reference solvers count as `m`.
    pub fn query_count(&self, m: usize) -> usize {
        if self.algorithm.is_reference() {
            m
        } else {
            self.ledger.query_count()
        }
    }
}

/// Raw output of an algorithm before pricing.
pub struct Discovery {
    pub selected: Vec<EdgeId>,
    pub ledger: QueryLedger,
    pub path_log: Option<Vec<PathRecord>>,
}

/// Runs a discovery algorithm against an arbitrary weight source.
pub fn discover(
    topo: &Topology,
    source: &dyn WeightSource,
    algo: Algorithm,
    ell: usize,
) -> Result<Discovery> {
    let mut oracle = WeightOracle::new(topo, source);
    let mut path_log = None;
    let selected = match algo {
        Algorithm::GreedyLocal => greedy_local_ids(&mut oracle)?,
        Algorithm::NaiveLocal => naive_local_ids(&mut oracle)?,
        Algorithm::LGreedyLocal => l_greedy_local_ids(&mut oracle, ell)?,
        Algorithm::LDoubleGreedy => {
            let (ids, log) = l_double_greedy_ids(&mut oracle, ell)?;
            path_log = Some(log);
            ids
        }
        Algorithm::NaiveEdge => naive_edge_ids(&mut oracle)?,
        Algorithm::LocalEdge => local_edge_ids(&mut oracle, ell)?,
        Algorithm::Exact | Algorithm::ClassicGreedy => {
            return Err(Error::InvalidParameter(format!(
                "{algo} is a reference solver, not a discovery algorithm"
            )))
        }
    };
    Ok(Discovery { selected, ledger: oracle.into_ledger(), path_log })
}

/// Validates `inst`, runs `algo` and prices the resulting matching.
pub fn run(inst: &BipartiteInstance, algo: Algorithm, ell: usize) -> Result<DiscoveryResult> {
    let topo = inst.topology()?;
    let (matching, ledger, path_log) = match algo {
        Algorithm::Exact => (reference::exact_matching(inst), QueryLedger::new(), None),
        Algorithm::ClassicGreedy => (reference::classic_greedy(inst), QueryLedger::new(), None),
        _ => {
            let d = discover(&topo, inst, algo, ell)?;
            (Matching::from_ids(inst, &d.selected), d.ledger, d.path_log)
        }
    };
    Ok(DiscoveryResult { algorithm: algo, ell, matching, ledger, path_log })
}

pub fn greedy_local(inst: &BipartiteInstance) -> Result<DiscoveryResult> {
    run(inst, Algorithm::GreedyLocal, 0)
}

pub fn naive_local(inst: &BipartiteInstance) -> Result<DiscoveryResult> {
    run(inst, Algorithm::NaiveLocal, 0)
}

pub fn l_greedy_local(inst: &BipartiteInstance, ell: usize) -> Result<DiscoveryResult> {
    run(inst, Algorithm::LGreedyLocal, ell)
}

pub fn l_double_greedy(inst: &BipartiteInstance, ell: usize) -> Result<DiscoveryResult> {
    run(inst, Algorithm::LDoubleGreedy, ell)
}

pub fn naive_edge(inst: &BipartiteInstance) -> Result<DiscoveryResult> {
    run(inst, Algorithm::NaiveEdge, 0)
}

pub fn local_edge(inst: &BipartiteInstance, ell: usize) -> Result<DiscoveryResult> {
    run(inst, Algorithm::LocalEdge, ell)
}

/// Edges that were neither queried nor selected and touch no selected edge.
/// A bounded-ratio algorithm must leave this empty.
pub fn blind_spots(topo: &Topology, ledger: &QueryLedger, matching: &[Edge]) -> Vec<Edge> {
    let mut used_p = vec![false; topo.producers()];
    let mut used_c = vec![false; topo.consumers()];
    for e in matching {
        used_p[e.p] = true;
        used_c[e.c] = true;
    }
    topo.edges()
        .iter()
        .enumerate()
        .filter(|&(id, e)| !ledger.was_queried(id) && !used_p[e.p] && !used_c[e.c])
        .map(|(_, &e)| e)
        .collect()
}
