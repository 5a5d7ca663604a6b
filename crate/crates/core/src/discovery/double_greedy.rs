use serde::Serialize;

use crate::error::Result;
use crate::instance::{Edge, EdgeId};
use crate::oracle::{argmax_queried, WeightOracle};
use crate::reference::optimal_path_selection;

/// Node availability during a run.
#[derive(Clone, Debug)]
pub struct Availability {
    pub producer: Vec<bool>,
    pub consumer: Vec<bool>,
}

impl Availability {
    pub fn all(producers: usize, consumers: usize) -> Self {
        Availability { producer: vec![true; producers], consumer: vec![true; consumers] }
    }

    fn take(&mut self, e: Edge) {
        self.producer[e.p] = false;
        self.consumer[e.c] = false;
    }
}

/// One greedy path built by the double-greedy loop.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathRecord {
    /// Producer the path started from.
    pub start: usize,
    pub edges: Vec<Edge>,
    /// Positions in `edges` committed to the matching.
    pub selected: Vec<usize>,
}

#[derive(Clone, Copy)]
enum Node {
    P(usize),
    C(usize),
}

/// Builds the oriented greedy path from `start`.
///
/// At each endpoint the forward candidates are the available edges whose far
/// node is not yet on the path, listed in σ_C (at a producer) or σ_P (at a
/// consumer) order and cut to `ell + 1`. Two or more candidates are queried
/// and the heaviest one taken.
pub fn greedy_path(
    oracle: &mut WeightOracle<'_>,
    start: usize,
    avail: &Availability,
    ell: usize,
) -> Result<Vec<EdgeId>> {
    let topo = oracle.topology();
    let cap = ell.saturating_add(1);
    let mut on_path_p = vec![false; topo.producers()];
    let mut on_path_c = vec![false; topo.consumers()];
    on_path_p[start] = true;
    let mut path = Vec::new();
    let mut candidates = Vec::new();
    let mut u = Node::P(start);
    loop {
        candidates.clear();
        match u {
            Node::P(p) => candidates.extend(topo.producer_edges(p).iter().copied().filter(|&id| {
                let c = topo.edge(id).c;
                avail.consumer[c] && !on_path_c[c]
            })),
            Node::C(c) => candidates.extend(topo.consumer_edges(c).iter().copied().filter(|&id| {
                let p = topo.edge(id).p;
                avail.producer[p] && !on_path_p[p]
            })),
        }
        candidates.truncate(cap);
        let next = match candidates.len() {
            0 => break,
            1 => candidates[0],
            _ => argmax_queried(oracle, &candidates)?,
        };
        let e = topo.edge(next);
        path.push(next);
        u = match u {
            Node::P(_) => {
                on_path_c[e.c] = true;
                Node::C(e.c)
            }
            Node::C(_) => {
                on_path_p[e.p] = true;
                Node::P(e.p)
            }
        };
    }
    Ok(path)
}

/// Producers in σ_P order grow greedy paths; the best matching on each path
/// is committed and the producer is revisited until its path comes back empty.
///
/// Paths of two or more edges have their weights read through the oracle
/// before selection, so single-candidate steps are charged at that point.
pub fn l_double_greedy_ids(
    oracle: &mut WeightOracle<'_>,
    ell: usize,
) -> Result<(Vec<EdgeId>, Vec<PathRecord>)> {
    let topo = oracle.topology();
    let mut avail = Availability::all(topo.producers(), topo.consumers());
    let mut selected = Vec::new();
    let mut log = Vec::new();
    let sigma_p = topo.sigma_p();
    let mut i = 0;
    while i < sigma_p.len() {
        let p = sigma_p[i];
        if !avail.producer[p] {
            i += 1;
            continue;
        }
        let path = greedy_path(oracle, p, &avail, ell)?;
        if path.is_empty() {
            i += 1;
            continue;
        }
        let picks = if path.len() == 1 {
            vec![0]
        } else {
            let weights =
                path.iter().map(|&id| oracle.query(id)).collect::<Result<Vec<f64>>>()?;
            optimal_path_selection(&weights)
        };
        for &k in &picks {
            avail.take(topo.edge(path[k]));
            selected.push(path[k]);
        }
        log.push(PathRecord {
            start: p,
            edges: path.iter().map(|&id| topo.edge(id)).collect(),
            selected: picks,
        });
    }
    Ok((selected, log))
}
