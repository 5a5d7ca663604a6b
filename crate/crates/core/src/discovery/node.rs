use crate::error::Result;
use crate::instance::EdgeId;
use crate::oracle::{argmax_queried, WeightOracle};

/// Producers in σ_P order each take one available consumer. The candidate
/// list is the available neighbourhood in σ_C order, cut to `cap` entries;
/// weights are queried only when at least two candidates remain.
fn local_rule(oracle: &mut WeightOracle<'_>, cap: Option<usize>) -> Result<Vec<EdgeId>> {
    let topo = oracle.topology();
    let mut available_c = vec![true; topo.consumers()];
    let mut selected = Vec::new();
    let mut candidates = Vec::new();
    for &p in topo.sigma_p() {
        candidates.clear();
        candidates.extend(
            topo.producer_edges(p).iter().copied().filter(|&id| available_c[topo.edge(id).c]),
        );
        if let Some(cap) = cap {
            candidates.truncate(cap);
        }
        let pick = match candidates.len() {
            0 => continue,
            1 => candidates[0],
            _ => argmax_queried(oracle, &candidates)?,
        };
        available_c[topo.edge(pick).c] = false;
        selected.push(pick);
    }
    Ok(selected)
}

/// Full available neighbourhood, queried whenever it has two or more edges.
pub fn greedy_local_ids(oracle: &mut WeightOracle<'_>) -> Result<Vec<EdgeId>> {
    local_rule(oracle, None)
}

/// First available neighbour in σ_C order; never queries.
pub fn naive_local_ids(oracle: &mut WeightOracle<'_>) -> Result<Vec<EdgeId>> {
    local_rule(oracle, Some(1))
}

/// First `ell + 1` available neighbours.
pub fn l_greedy_local_ids(oracle: &mut WeightOracle<'_>, ell: usize) -> Result<Vec<EdgeId>> {
    local_rule(oracle, Some(ell.saturating_add(1)))
}
