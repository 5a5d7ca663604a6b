//! Weight discovery for the maximum-weight bipartite assignment problem.
//!
//! Edge weights sit behind a counting query oracle ([`oracle::WeightOracle`]).
//! The discovery algorithms in [`discovery`] only see the graph topology and
//! the processing orders (σ_P, σ_C, σ_E); every weight they use is paid for
//! through the oracle, which records the first inspection of each edge.
//!
//! Around the algorithms sit exact and greedy reference solvers
//! ([`reference`]), order-parameter extraction and interval-based order
//! construction ([`order`]), the one-to-many and bipartite hypergraph
//! extensions ([`extensions`]) and the experiment harness ([`harness`]).

pub mod bounds;
pub mod discovery;
pub mod error;
pub mod extensions;
pub mod harness;
pub mod instance;
pub mod oracle;
pub mod order;
pub mod parallel;
pub mod reference;

pub use discovery::{Algorithm, DiscoveryResult};
pub use error::{Error, Result};
pub use instance::{BipartiteInstance, Edge, EdgeId, Matching, Orders, Topology, Violation};
pub use oracle::{QueryLedger, WeightOracle, WeightSource};
pub use order::{IntervalPolicy, IntervalWeights, OrderParams};
pub use parallel::Execution;

/// Relative tolerance used when comparing matching weights and ratios.
pub const REL_TOL: f64 = 1e-9;
