//! Generators, file I/O, reports and the experiment runner.

pub mod experiment;
pub mod generators;
pub mod io;
pub mod report;

use crate::error::Result;
use crate::instance::{BipartiteInstance, Edge, EdgeId};

/// Removes edges without any adjacent edge. Returns the remaining instance
/// (same nodes and node orders, σ_E restricted) and the removed edges.
pub fn strip_isolated(inst: &BipartiteInstance) -> Result<(BipartiteInstance, Vec<Edge>)> {
    let topo = inst.topology()?;
    let mut keep: Vec<Option<EdgeId>> = vec![None; inst.m()];
    let mut core = BipartiteInstance {
        edges: Vec::new(),
        weights: Vec::new(),
        sigma_e: None,
        ..inst.clone()
    };
    let mut isolated = Vec::new();
    for id in 0..inst.m() {
        if topo.is_isolated(id) {
            isolated.push(inst.edges[id]);
        } else {
            keep[id] = Some(core.edges.len());
            core.edges.push(inst.edges[id]);
            core.weights.push(inst.weights[id]);
        }
    }
    core.sigma_e = inst
        .sigma_e
        .as_ref()
        .map(|order| order.iter().filter_map(|&id| keep[id]).collect());
    Ok((core, isolated))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discovery::{run, Algorithm};
    use crate::harness::generators::fig2_with_edge_order;
    use crate::instance::Matching;

    #[test]
    fn figure_one_has_no_isolated_edges() {
        let inst = fig2_with_edge_order();
        let (core, iso) = strip_isolated(&inst).unwrap();
        assert!(iso.is_empty());
        assert_eq!(core, inst);
    }

    #[test]
    fn single_edge_is_isolated() {
        let inst = BipartiteInstance::new(1, 1, &[(0, 0, 2.0)]);
        let (core, iso) = strip_isolated(&inst).unwrap();
        assert_eq!(core.m(), 0);
        assert_eq!(iso, vec![Edge::new(0, 0)]);
    }

    #[test]
    fn disjoint_edges_are_added_back_for_free() {
        let mut inst = BipartiteInstance::new(2, 2, &[(0, 0, 2.0), (1, 1, 5.0)]);
        inst.sigma_e = Some(vec![1, 0]);
        let (core, iso) = strip_isolated(&inst).unwrap();
        assert_eq!((core.m(), iso.len()), (0, 2));
        assert_eq!(core.sigma_e, Some(vec![]));
        for algo in Algorithm::DISCOVERY {
            let r = run(&core, algo, 1).unwrap();
            assert_eq!(r.ledger.query_count(), 0);
            let mut edges = r.matching.edges.clone();
            edges.extend(&iso);
            let full = Matching { total_weight: inst.weights.iter().sum(), edges };
            full.check(&inst).unwrap();
            assert_eq!(full.total_weight, 7.0);
        }
    }
}
