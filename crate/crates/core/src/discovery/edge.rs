use crate::error::Result;
use crate::instance::EdgeId;
use crate::oracle::{argmax_queried, WeightOracle};

/// Scans σ_E and keeps every edge whose endpoints are both free.
pub fn naive_edge_ids(oracle: &mut WeightOracle<'_>) -> Result<Vec<EdgeId>> {
    let topo = oracle.topology();
    let sigma_e = topo.sigma_e()?;
    let mut used_p = vec![false; topo.producers()];
    let mut used_c = vec![false; topo.consumers()];
    let mut selected = Vec::new();
    for &id in sigma_e {
        let e = topo.edge(id);
        if !used_p[e.p] && !used_c[e.c] {
            used_p[e.p] = true;
            used_c[e.c] = true;
            selected.push(id);
        }
    }
    Ok(selected)
}

/// At each free anchor position `i`, the available edges among positions
/// `i..=i+ell+1` are cut to the first `ell + 1`; the heaviest is committed.
/// The anchor advances only once it is no longer free.
pub fn local_edge_ids(oracle: &mut WeightOracle<'_>, ell: usize) -> Result<Vec<EdgeId>> {
    let topo = oracle.topology();
    let sigma_e = topo.sigma_e()?;
    let m = sigma_e.len();
    let cap = ell.saturating_add(1);
    let mut used_p = vec![false; topo.producers()];
    let mut used_c = vec![false; topo.consumers()];
    let free = |id: EdgeId, used_p: &[bool], used_c: &[bool]| {
        let e = topo.edge(id);
        !used_p[e.p] && !used_c[e.c]
    };
    let mut selected = Vec::new();
    let mut candidates = Vec::new();
    let mut i = 0;
    while i < m {
        if !free(sigma_e[i], &used_p, &used_c) {
            i += 1;
            continue;
        }
        let end = i.saturating_add(ell).saturating_add(1).min(m - 1);
        candidates.clear();
        candidates.extend(
            sigma_e[i..=end].iter().copied().filter(|&id| free(id, &used_p, &used_c)),
        );
        candidates.truncate(cap);
        let pick = if candidates.len() > 1 {
            argmax_queried(oracle, &candidates)?
        } else {
            candidates[0]
        };
        let e = topo.edge(pick);
        used_p[e.p] = true;
        used_c[e.c] = true;
        selected.push(pick);
    }
    Ok(selected)
}
