//! Order parameters (β, γ, ζ and their ℓ-weak variants), interval weights,
//! interval-induced orders and overlap counts.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{BipartiteInstance, EdgeId, Orders, Topology};

/// Extracted or certified order parameters.
///
/// Profiles are indexed by ℓ; entry 0 is the strong parameter and every
/// index past the end is 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderParams {
    pub beta: f64,
    pub gamma: f64,
    pub beta_l: Vec<f64>,
    pub gamma_l: Vec<f64>,
    pub zeta: Option<f64>,
    pub zeta_l: Option<Vec<f64>>,
}

fn at(profile: &[f64], ell: usize) -> f64 {
    profile.get(ell).copied().unwrap_or(0.0)
}

impl OrderParams {
    pub fn beta_at(&self, ell: usize) -> f64 {
        at(&self.beta_l, ell)
    }

    pub fn gamma_at(&self, ell: usize) -> f64 {
        at(&self.gamma_l, ell)
    }

    pub fn zeta(&self) -> Result<f64> {
        self.zeta.ok_or(Error::MissingEdgeOrder)
    }

    pub fn zeta_at(&self, ell: usize) -> Result<f64> {
        self.zeta_l.as_deref().map(|p| at(p, ell)).ok_or(Error::MissingEdgeOrder)
    }
}

/// Per-edge weight intervals `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalWeights {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl IntervalWeights {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::InvalidParameter(format!(
                "{} lower bounds but {} upper bounds",
                lo.len(),
                hi.len()
            )));
        }
        for (i, (&a, &b)) in lo.iter().zip(&hi).enumerate() {
            if !(a > 0.0 && a <= b && b.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "interval #{} = [{a}, {b}] is not a positive interval",
                    i + 1
                )));
            }
        }
        Ok(IntervalWeights { lo, hi })
    }

    /// `[w(1 - frac), w(1 + frac)]` for every weight.
    pub fn around(weights: &[f64], frac: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&frac) {
            return Err(Error::InvalidParameter(format!("spread {frac} must lie in [0, 1)")));
        }
        Self::new(
            weights.iter().map(|w| w * (1.0 - frac)).collect(),
            weights.iter().map(|w| w * (1.0 + frac)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.lo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lo.is_empty()
    }

    pub fn contains(&self, id: EdgeId, w: f64) -> bool {
        self.lo[id] <= w && w <= self.hi[id]
    }

    /// Strict overlap: touching intervals do not overlap.
    pub fn overlaps(&self, a: EdgeId, b: EdgeId) -> bool {
        self.lo[b] < self.hi[a] && self.hi[b] > self.lo[a]
    }

    fn check_cover(&self, m: usize) -> Result<()> {
        if self.len() == m {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("{} intervals for {m} edges", self.len())))
        }
    }
}

/// Which end of the interval ranks an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalPolicy {
    /// Decreasing upper bound.
    Optimistic,
    /// Decreasing midpoint.
    Centered,
    /// Decreasing lower bound.
    Pessimistic,
}

impl IntervalPolicy {
    fn key(self, iv: &IntervalWeights, id: EdgeId) -> f64 {
        match self {
            IntervalPolicy::Optimistic => iv.hi[id],
            IntervalPolicy::Centered => 0.5 * (iv.lo[id] + iv.hi[id]),
            IntervalPolicy::Pessimistic => iv.lo[id],
        }
    }
}

impl std::str::FromStr for IntervalPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "optimistic" => Ok(IntervalPolicy::Optimistic),
            "centered" | "centred" => Ok(IntervalPolicy::Centered),
            "pessimistic" => Ok(IntervalPolicy::Pessimistic),
            other => Err(Error::InvalidParameter(format!("unknown interval policy '{other}'"))),
        }
    }
}

/// Max of `ratio(earlier, later)` per gap (number of items strictly between),
/// merged into `acc`.
fn gap_profile(seq: &[EdgeId], ratio: &impl Fn(EdgeId, EdgeId) -> f64, acc: &mut Vec<f64>) {
    if seq.len() < 2 {
        return;
    }
    if acc.len() < seq.len() - 1 {
        acc.resize(seq.len() - 1, 0.0);
    }
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            let r = ratio(seq[i], seq[j]);
            let slot = &mut acc[j - i - 1];
            if r > *slot {
                *slot = r;
            }
        }
    }
}

/// Turns a per-gap profile into "gap ≥ ℓ" values and drops trailing zeros.
fn suffix_max(mut p: Vec<f64>) -> Vec<f64> {
    for k in (0..p.len().saturating_sub(1)).rev() {
        p[k] = p[k].max(p[k + 1]);
    }
    while p.last() == Some(&0.0) {
        p.pop();
    }
    p
}

fn params_with(topo: &Topology, ratio: impl Fn(EdgeId, EdgeId) -> f64) -> OrderParams {
    let mut beta = Vec::new();
    for c in 0..topo.consumers() {
        gap_profile(topo.consumer_edges(c), &ratio, &mut beta);
    }
    let mut gamma = Vec::new();
    for p in 0..topo.producers() {
        gap_profile(topo.producer_edges(p), &ratio, &mut gamma);
    }
    let beta_l = suffix_max(beta);
    let gamma_l = suffix_max(gamma);
    let zeta_l = topo.sigma_e().ok().map(|order| {
        let mut z = Vec::new();
        gap_profile(order, &ratio, &mut z);
        suffix_max(z)
    });
    OrderParams {
        beta: at(&beta_l, 0),
        gamma: at(&gamma_l, 0),
        beta_l,
        gamma_l,
        zeta: zeta_l.as_deref().map(|z| at(z, 0)),
        zeta_l,
    }
}

/// Smallest parameters for which the ordering assumptions hold on the true
/// weights. `zeta` is `None` without an edge order.
pub fn extract_params(inst: &BipartiteInstance) -> Result<OrderParams> {
    let topo = inst.topology()?;
    let w = &inst.weights;
    Ok(params_with(&topo, |a, b| w[b] / w[a]))
}

/// Upper bounds on the parameters valid for every weight realisation inside
/// `intervals`, using `hi(later) / lo(earlier)` over the same pairs as
/// [`extract_params`].
pub fn certified_params(
    inst: &BipartiteInstance,
    intervals: &IntervalWeights,
    orders: &Orders,
) -> Result<OrderParams> {
    intervals.check_cover(inst.m())?;
    let mut shaped = inst.clone();
    shaped.set_orders(orders.clone());
    let topo = shaped.topology()?;
    Ok(params_with(&topo, |a, b| intervals.hi[b] / intervals.lo[a]))
}

/// Orders nodes by first appearance in `sigma_e`; nodes without edges follow
/// in index order.
fn first_appearance(inst: &BipartiteInstance, sigma_e: &[EdgeId]) -> (Vec<usize>, Vec<usize>) {
    let mut seen_p = vec![false; inst.producers];
    let mut seen_c = vec![false; inst.consumers];
    let mut sigma_p = Vec::with_capacity(inst.producers);
    let mut sigma_c = Vec::with_capacity(inst.consumers);
    for &id in sigma_e {
        let e = inst.edges[id];
        if !std::mem::replace(&mut seen_p[e.p], true) {
            sigma_p.push(e.p);
        }
        if !std::mem::replace(&mut seen_c[e.c], true) {
            sigma_c.push(e.c);
        }
    }
    sigma_p.extend((0..inst.producers).filter(|&p| !seen_p[p]));
    sigma_c.extend((0..inst.consumers).filter(|&c| !seen_c[c]));
    (sigma_p, sigma_c)
}

/// Edge order by the chosen interval end (ties by edge index) with node
/// orders by first appearance.
pub fn build_interval_order(
    inst: &BipartiteInstance,
    intervals: &IntervalWeights,
    policy: IntervalPolicy,
) -> Result<Orders> {
    intervals.check_cover(inst.m())?;
    let mut sigma_e: Vec<EdgeId> = (0..inst.m()).collect();
    sigma_e.sort_by(|&a, &b| policy.key(intervals, b).total_cmp(&policy.key(intervals, a)));
    let (sigma_p, sigma_c) = first_appearance(inst, &sigma_e);
    Ok(Orders { sigma_p, sigma_c, sigma_e: Some(sigma_e) })
}

/// Node orders under which every neighbourhood lists its edges in `sigma_e`
/// order, preferring first appearance. `None` if no such orders exist.
pub fn consistent_node_orders(
    inst: &BipartiteInstance,
    sigma_e: &[EdgeId],
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut pos = vec![0; inst.m()];
    for (k, &id) in sigma_e.iter().enumerate() {
        pos[id] = k;
    }
    let mut by_p: Vec<Vec<EdgeId>> = vec![Vec::new(); inst.producers];
    let mut by_c: Vec<Vec<EdgeId>> = vec![Vec::new(); inst.consumers];
    for &id in sigma_e {
        by_p[inst.edges[id].p].push(id);
        by_c[inst.edges[id].c].push(id);
    }
    // Constraints on consumers come from producer neighbourhoods and vice versa.
    let c_order = topo_sort(
        inst.consumers,
        by_p.iter().flat_map(|n| n.windows(2).map(|w| (inst.edges[w[0]].c, inst.edges[w[1]].c))),
        |c| by_c[c].first().map_or(usize::MAX, |&id| pos[id]),
    )?;
    let p_order = topo_sort(
        inst.producers,
        by_c.iter().flat_map(|n| n.windows(2).map(|w| (inst.edges[w[0]].p, inst.edges[w[1]].p))),
        |p| by_p[p].first().map_or(usize::MAX, |&id| pos[id]),
    )?;
    Some((p_order, c_order))
}

fn topo_sort(
    n: usize,
    arcs: impl Iterator<Item = (usize, usize)>,
    priority: impl Fn(usize) -> usize,
) -> Option<Vec<usize>> {
    let mut out_arcs = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for (a, b) in arcs {
        out_arcs[a].push(b);
        indeg[b] += 1;
    }
    let mut ready: BinaryHeap<Reverse<(usize, usize)>> =
        (0..n).filter(|&v| indeg[v] == 0).map(|v| Reverse((priority(v), v))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((_, v))) = ready.pop() {
        order.push(v);
        for &w in &out_arcs[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(Reverse((priority(w), w)));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Overlap counts `(oc, oc_p, oc_c)`: the most strictly-overlapping other
/// intervals any edge has globally, within its producer's neighbourhood and
/// within its consumer's neighbourhood.
pub fn overlap_counts(
    inst: &BipartiteInstance,
    intervals: &IntervalWeights,
) -> Result<(usize, usize, usize)> {
    intervals.check_cover(inst.m())?;
    let m = inst.m();
    let mut oc = 0;
    let mut oc_p = 0;
    let mut oc_c = 0;
    for a in 0..m {
        let (mut all, mut same_p, mut same_c) = (0, 0, 0);
        for b in 0..m {
            if a == b || !intervals.overlaps(a, b) {
                continue;
            }
            all += 1;
            same_p += (inst.edges[a].p == inst.edges[b].p) as usize;
            same_c += (inst.edges[a].c == inst.edges[b].c) as usize;
        }
        oc = oc.max(all);
        oc_p = oc_p.max(same_p);
        oc_c = oc_c.max(same_c);
    }
    Ok((oc, oc_p, oc_c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generators::{fig1, fig2_with_edge_order, fig6_intervals};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn figure_one_parameters() {
        let p = extract_params(&fig1()).unwrap();
        assert!(close(p.beta, 7.0 / 3.0, 1e-12));
        assert_eq!(p.gamma, 8.0);
        assert_eq!(p.beta_at(1), 0.0);
        assert_eq!(p.gamma_at(1), 3.0);
        assert_eq!(p.gamma_at(2), 0.0);
        assert!(p.zeta().is_err());
    }

    #[test]
    fn lonely_consumers_give_zero_beta() {
        let inst = BipartiteInstance::new(2, 2, &[(0, 0, 1.0), (1, 1, 5.0)]);
        let p = extract_params(&inst).unwrap();
        assert_eq!((p.beta, p.gamma), (0.0, 0.0));
        assert!(p.beta_l.is_empty());
    }

    #[test]
    fn profiles_are_monotone() {
        let p = extract_params(&fig2_with_edge_order()).unwrap();
        for w in p.gamma_l.windows(2) {
            assert!(w[0] >= w[1]);
        }
        let z = p.zeta_l.unwrap();
        for w in z.windows(2) {
            assert!(w[0] >= w[1]);
        }
        assert_eq!(z[0], p.zeta.unwrap());
    }

    #[test]
    fn figure_six_centered_order() {
        let inst = fig1();
        let iv = fig6_intervals();
        let o = build_interval_order(&inst, &iv, IntervalPolicy::Centered).unwrap();
        let drawn = fig2_with_edge_order().sigma_e.unwrap();
        assert_eq!(o.sigma_e.as_ref().unwrap(), &drawn);
        assert_eq!(o.sigma_p, vec![0, 1, 2]);
        assert_eq!(o.sigma_c, vec![2, 1, 0, 3]);
    }

    #[test]
    fn degenerate_intervals_sort_by_weight() {
        let inst = fig1();
        let iv = IntervalWeights::around(&inst.weights, 0.0).unwrap();
        for policy in [IntervalPolicy::Optimistic, IntervalPolicy::Centered, IntervalPolicy::Pessimistic] {
            let o = build_interval_order(&inst, &iv, policy).unwrap();
            let ws: Vec<f64> = o.sigma_e.unwrap().iter().map(|&id| inst.weights[id]).collect();
            assert!(ws.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn two_interval_policies() {
        let inst = BipartiteInstance::new(1, 2, &[(0, 0, 1.5), (0, 1, 2.0)]);
        let iv = IntervalWeights::new(vec![1.0, 1.5], vec![2.0, 3.0]).unwrap();
        for policy in [IntervalPolicy::Optimistic, IntervalPolicy::Centered, IntervalPolicy::Pessimistic] {
            let o = build_interval_order(&inst, &iv, policy).unwrap();
            assert_eq!(o.sigma_e.unwrap(), vec![1, 0]);
        }
    }

    #[test]
    fn figure_six_certified_values() {
        let inst = fig1();
        let iv = fig6_intervals();
        let sigma_e = fig2_with_edge_order().sigma_e.unwrap();
        let (sigma_p, sigma_c) = consistent_node_orders(&inst, &sigma_e).unwrap();
        assert_eq!(sigma_p, vec![0, 2, 1]);
        assert_eq!(sigma_c, vec![2, 3, 1, 0]);
        let orders = Orders { sigma_p, sigma_c, sigma_e: Some(sigma_e) };
        let p = certified_params(&inst, &iv, &orders).unwrap();
        assert!(close(p.zeta.unwrap(), 9.1 / 4.9, 1e-9));
        assert!(close(p.beta, 10.4 / 6.3, 1e-9));
        assert!(close(p.gamma, 10.4 / 6.3, 1e-9));
        let z: Vec<f64> = (1..=4).map(|l| p.zeta_at(l).unwrap()).collect();
        for (got, want) in z.iter().zip([1.65, 1.62, 1.44, 0.82]) {
            assert!(close(*got, want, 0.01), "{got} vs {want}");
        }
        assert!(close(p.gamma_at(1), 1.44, 0.01));
        assert_eq!(p.gamma_at(2), 0.0);
        assert_eq!(p.beta_at(1), 0.0);
    }

    #[test]
    fn cyclic_neighbourhoods_have_no_consistent_orders() {
        // p1 sees c1 before c2, p2 sees c2 before c1.
        let inst = BipartiteInstance::new(2, 2, &[(0, 0, 1.0), (0, 1, 1.0), (1, 1, 1.0), (1, 0, 1.0)]);
        assert!(consistent_node_orders(&inst, &[0, 1, 2, 3]).is_none());
    }

    #[test]
    fn overlap_examples() {
        let inst = fig1();
        assert_eq!(overlap_counts(&inst, &fig6_intervals()).unwrap(), (5, 2, 1));
        let disjoint = IntervalWeights::new(
            (0..8).map(|i| 1.0 + 2.0 * i as f64).collect(),
            (0..8).map(|i| 2.0 + 2.0 * i as f64).collect(),
        )
        .unwrap();
        assert_eq!(overlap_counts(&inst, &disjoint).unwrap(), (0, 0, 0));
        let same = IntervalWeights::new(vec![1.0; 8], vec![2.0; 8]).unwrap();
        assert_eq!(overlap_counts(&inst, &same).unwrap().0, 7);
    }

    #[test]
    fn bad_intervals() {
        assert!(IntervalWeights::new(vec![2.0], vec![1.0]).is_err());
        assert!(IntervalWeights::new(vec![0.0], vec![1.0]).is_err());
        assert!(IntervalWeights::around(&[1.0], 1.5).is_err());
    }
}
