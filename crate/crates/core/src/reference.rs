//! Reference solvers with direct weight access.

use crate::error::{Error, Result};
use crate::instance::{BipartiteInstance, Edge, EdgeId, Matching};

/// Enumeration guard for [`brute_force_matching`].
pub const BRUTE_FORCE_MAX_EDGES: usize = 24;

/// Maximum-weight matching via the Hungarian method on a zero-padded square
/// matrix. Missing pairs get weight 0 and are dropped from the result.
pub fn exact_matching(inst: &BipartiteInstance) -> Matching {
    let size = inst.producers.max(inst.consumers);
    if size == 0 || inst.edges.is_empty() {
        return Matching::empty();
    }
    let mut id_at = vec![None; size * size];
    let mut max_w: f64 = 0.0;
    for (id, e) in inst.edges.iter().enumerate() {
        id_at[e.p * size + e.c] = Some(id);
        max_w = max_w.max(inst.weights[id]);
    }
    // Minimise cost = max_w - w, absent pairs cost max_w.
    let cost = |i: usize, j: usize| match id_at[i * size + j] {
        Some(id) => max_w - inst.weights[id],
        None => max_w,
    };
    let assignment = hungarian_min(size, cost);
    let ids: Vec<EdgeId> =
        (0..size).filter_map(|i| id_at[i * size + assignment[i]]).collect();
    Matching::from_ids(inst, &ids)
}

/// Classic O(n³) potentials-based assignment; returns `row -> column`.
fn hungarian_min(n: usize, cost: impl Fn(usize, usize) -> f64) -> Vec<usize> {
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![0; n];
    for j in 1..=n {
        if p[j] != 0 {
            row_to_col[p[j] - 1] = j - 1;
        }
    }
    row_to_col
}

/// Exhaustive search over all matchings. Limited to `m ≤ 24`.
pub fn brute_force_matching(inst: &BipartiteInstance) -> Result<Matching> {
    let m = inst.edges.len();
    if m > BRUTE_FORCE_MAX_EDGES {
        return Err(Error::SizeLimit { what: "m", actual: m, limit: BRUTE_FORCE_MAX_EDGES });
    }
    let mut by_producer: Vec<Vec<EdgeId>> = vec![Vec::new(); inst.producers];
    for (id, e) in inst.edges.iter().enumerate() {
        by_producer[e.p].push(id);
    }
    let mut best = (0.0, Vec::new());
    let mut used_c = vec![false; inst.consumers];
    let mut chosen = Vec::new();
    search(inst, &by_producer, 0, 0.0, &mut used_c, &mut chosen, &mut best);
    Ok(Matching::from_ids(inst, &best.1))
}

fn search(
    inst: &BipartiteInstance,
    by_producer: &[Vec<EdgeId>],
    p: usize,
    acc: f64,
    used_c: &mut [bool],
    chosen: &mut Vec<EdgeId>,
    best: &mut (f64, Vec<EdgeId>),
) {
    if p == by_producer.len() {
        if acc > best.0 {
            *best = (acc, chosen.clone());
        }
        return;
    }
    search(inst, by_producer, p + 1, acc, used_c, chosen, best);
    for &id in &by_producer[p] {
        let c = inst.edges[id].c;
        if !used_c[c] {
            used_c[c] = true;
            chosen.push(id);
            search(inst, by_producer, p + 1, acc + inst.weights[id], used_c, chosen, best);
            chosen.pop();
            used_c[c] = false;
        }
    }
}

/// Edges by decreasing weight, ties by `(p, c)`, each added when both ends are free.
pub fn classic_greedy(inst: &BipartiteInstance) -> Matching {
    let mut ids: Vec<EdgeId> = (0..inst.edges.len()).collect();
    ids.sort_by(|&a, &b| {
        inst.weights[b]
            .total_cmp(&inst.weights[a])
            .then(inst.edges[a].cmp(&inst.edges[b]))
    });
    let mut used_p = vec![false; inst.producers];
    let mut used_c = vec![false; inst.consumers];
    let mut picked = Vec::new();
    for id in ids {
        let e = inst.edges[id];
        if !used_p[e.p] && !used_c[e.c] {
            used_p[e.p] = true;
            used_c[e.c] = true;
            picked.push(id);
        }
    }
    Matching::from_ids(inst, &picked)
}

/// Maximum-weight set of pairwise non-consecutive positions on a path.
///
/// Ties prefer taking the earlier edge, so `[1, 1, 1]` gives `{0, 2}` and a
/// path `[a, a]` gives `{0}`.
pub fn optimal_path_selection(weights: &[f64]) -> Vec<usize> {
    let k = weights.len();
    // best[i] = optimum over the suffix starting at i.
    let mut best = vec![0.0f64; k + 2];
    for i in (0..k).rev() {
        best[i] = best[i + 1].max(weights[i] + best[i + 2]);
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < k {
        if weights[i] + best[i + 2] >= best[i + 1] {
            out.push(i);
            i += 2;
        } else {
            i += 1;
        }
    }
    out
}

/// Checks that consecutive edges share exactly one endpoint and that no node
/// repeats (a simple path).
pub fn validate_path(path: &[Edge]) -> Result<()> {
    use std::collections::HashSet;
    let mut ps = HashSet::new();
    let mut cs = HashSet::new();
    let mut seen = HashSet::new();
    for (i, e) in path.iter().enumerate() {
        if !seen.insert(*e) {
            return Err(Error::MalformedPath(format!("edge {e} repeats")));
        }
        ps.insert(e.p);
        cs.insert(e.c);
        if i > 0 {
            let prev = path[i - 1];
            let shared = (prev.p == e.p) as u8 + (prev.c == e.c) as u8;
            if shared != 1 {
                return Err(Error::MalformedPath(format!(
                    "{prev} and {e} are not consecutive path edges"
                )));
            }
        }
    }
    // A simple path with k edges visits exactly k + 1 nodes.
    if !path.is_empty() && ps.len() + cs.len() != path.len() + 1 {
        return Err(Error::MalformedPath("a node is visited twice".into()));
    }
    Ok(())
}

/// [`optimal_path_selection`] on a validated weighted path.
pub fn optimal_path(path: &[(Edge, f64)]) -> Result<Vec<usize>> {
    let edges: Vec<Edge> = path.iter().map(|&(e, _)| e).collect();
    validate_path(&edges)?;
    let weights: Vec<f64> = path.iter().map(|&(_, w)| w).collect();
    Ok(optimal_path_selection(&weights))
}
