//! One-to-many expansion, producer-order extension and the bipartite
//! hypergraph matching wrapper.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::ratio_bound;
use crate::discovery::{run, Algorithm, DiscoveryResult};
use crate::error::{Error, Result};
use crate::instance::{BipartiteInstance, Edge, EdgeId, Matching};
use crate::order::extract_params;

/// How the copies of each producer are laid out in the expanded instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtensionStrategy {
    /// All copies of σ_P's first producer, then all copies of the second, ...
    SinglePass,
    /// One copy of every producer in σ_P order, repeated k times.
    RoundRobin,
    /// Single-pass σ_P plus a σ_E sorting expanded edges by decreasing weight.
    ClassicGreedy,
}

impl std::str::FromStr for ExtensionStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "single-pass" => Ok(ExtensionStrategy::SinglePass),
            "round-robin" => Ok(ExtensionStrategy::RoundRobin),
            "classic-greedy" => Ok(ExtensionStrategy::ClassicGreedy),
            other => Err(Error::InvalidParameter(format!("unknown strategy '{other}'"))),
        }
    }
}

/// Copy `j` (0-based) of producer `p` is producer `p * k + j` after expansion.
pub fn copy_index(p: usize, j: usize, k: usize) -> usize {
    p * k + j
}

/// Expanded order over `k * s` producer copies.
pub fn extend_p_order(sigma_p: &[usize], k: usize, strategy: ExtensionStrategy) -> Vec<usize> {
    match strategy {
        ExtensionStrategy::SinglePass | ExtensionStrategy::ClassicGreedy => sigma_p
            .iter()
            .flat_map(|&p| (0..k).map(move |j| copy_index(p, j, k)))
            .collect(),
        ExtensionStrategy::RoundRobin => (0..k)
            .flat_map(|j| sigma_p.iter().map(move |&p| copy_index(p, j, k)))
            .collect(),
    }
}

/// Gives every producer `k` copies, each inheriting all edges and weights.
/// Edge `i` of the original becomes edges `i*k .. i*k + k`. σ_P is extended
/// single-pass; σ_E, if present, lists the copies of each edge consecutively.
pub fn expand_one_to_many(inst: &BipartiteInstance, k: usize) -> Result<BipartiteInstance> {
    if k == 0 {
        return Err(Error::InvalidParameter("copy count k must be at least 1".into()));
    }
    inst.ensure_valid()?;
    let mut edges = Vec::with_capacity(inst.m() * k);
    let mut weights = Vec::with_capacity(inst.m() * k);
    for (e, &w) in inst.edges.iter().zip(&inst.weights) {
        for j in 0..k {
            edges.push(Edge::new(copy_index(e.p, j, k), e.c));
            weights.push(w);
        }
    }
    let sigma_e = inst
        .sigma_e
        .as_ref()
        .map(|order| order.iter().flat_map(|&id| (0..k).map(move |j| id * k + j)).collect());
    Ok(BipartiteInstance {
        producers: inst.producers * k,
        consumers: inst.consumers,
        edges,
        weights,
        sigma_p: extend_p_order(&inst.sigma_p, k, ExtensionStrategy::SinglePass),
        sigma_c: inst.sigma_c.clone(),
        sigma_e,
    })
}

/// Expansion with the orders prescribed by `strategy`.
pub fn expand_with_strategy(
    inst: &BipartiteInstance,
    k: usize,
    strategy: ExtensionStrategy,
) -> Result<BipartiteInstance> {
    let mut out = expand_one_to_many(inst, k)?;
    out.sigma_p = extend_p_order(&inst.sigma_p, k, strategy);
    if strategy == ExtensionStrategy::ClassicGreedy {
        let mut ids: Vec<EdgeId> = (0..out.m()).collect();
        ids.sort_by(|&a, &b| out.weights[b].total_cmp(&out.weights[a]));
        out.sigma_e = Some(ids);
    }
    Ok(out)
}

/// Groups matched consumers by original producer.
pub fn contract_matching(m: &Matching, k: usize) -> BTreeMap<usize, Vec<usize>> {
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in &m.edges {
        groups.entry(e.p / k.max(1)).or_default().push(e.c);
    }
    for g in groups.values_mut() {
        g.sort_unstable();
    }
    groups
}

/// True weight of a producer with a set of consumers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HyperWeight {
    /// Largest member pair weight.
    MaxOfPairs,
    /// Explicit table keyed by producer and sorted consumer list.
    Table(Vec<HyperEntry>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperEntry {
    pub p: usize,
    pub consumers: Vec<usize>,
    pub w: f64,
}

/// Bipartite hypergraph instance: hyperedges hold one producer and up to
/// `k - 1` of its neighbouring consumers.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergraphInstance {
    pub base: BipartiteInstance,
    pub k: usize,
    pub hyper_weight: HyperWeight,
    pub alpha1: f64,
    pub alpha2: f64,
}

pub type Groups = BTreeMap<usize, Vec<usize>>;

impl HypergraphInstance {
    /// Max-of-pairs weights with the band `[1/(k-1), 1]`.
    pub fn max_of_pairs(base: BipartiteInstance, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter("hyperedge size k must be at least 2".into()));
        }
        let h = HypergraphInstance {
            base,
            k,
            hyper_weight: HyperWeight::MaxOfPairs,
            alpha1: 1.0 / (k - 1) as f64,
            alpha2: 1.0,
        };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.ensure_valid()?;
        if self.k < 2 {
            return Err(Error::InvalidParameter("hyperedge size k must be at least 2".into()));
        }
        if !(self.alpha1 > 0.0 && self.alpha1 <= self.alpha2) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < alpha1 <= alpha2, got {} and {}",
                self.alpha1, self.alpha2
            )));
        }
        match &self.hyper_weight {
            HyperWeight::MaxOfPairs => {
                // max/sum ranges over [1/(k-1), 1] for groups of at most k-1 consumers.
                let lo = 1.0 / (self.k - 1) as f64;
                if self.alpha1 > lo * (1.0 + 1e-12) || self.alpha2 < 1.0 - 1e-12 {
                    return Err(Error::AlphaBand {
                        group: "max-of-pairs".into(),
                        ratio: lo,
                        alpha1: self.alpha1,
                        alpha2: self.alpha2,
                    });
                }
            }
            HyperWeight::Table(entries) => {
                for entry in entries {
                    let ratio = entry.w / self.pair_sum(entry.p, &entry.consumers)?;
                    if !(entry.w > 0.0) || !self.in_band(ratio) {
                        return Err(Error::AlphaBand {
                            group: format_group(entry.p, &entry.consumers),
                            ratio,
                            alpha1: self.alpha1,
                            alpha2: self.alpha2,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn in_band(&self, ratio: f64) -> bool {
        ratio >= self.alpha1 * (1.0 - 1e-12) && ratio <= self.alpha2 * (1.0 + 1e-12)
    }

    /// Σ w(p, c) over the group; errors if a pair is not an edge.
    pub fn pair_sum(&self, p: usize, consumers: &[usize]) -> Result<f64> {
        consumers.iter().map(|&c| self.base.weight_of(Edge::new(p, c))).sum()
    }

    pub fn group_weight(&self, p: usize, consumers: &[usize]) -> Result<f64> {
        if consumers.is_empty() || consumers.len() > self.k - 1 {
            return Err(Error::InvalidParameter(format!(
                "group {} must hold between 1 and {} consumers",
                format_group(p, consumers),
                self.k - 1
            )));
        }
        match &self.hyper_weight {
            HyperWeight::MaxOfPairs => {
                let mut best: f64 = 0.0;
                for &c in consumers {
                    best = best.max(self.base.weight_of(Edge::new(p, c))?);
                }
                Ok(best)
            }
            HyperWeight::Table(entries) => {
                let mut key = consumers.to_vec();
                key.sort_unstable();
                entries
                    .iter()
                    .find(|e| e.p == p && e.consumers == key)
                    .map(|e| e.w)
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "no hyper weight for group {}",
                            format_group(p, consumers)
                        ))
                    })
            }
        }
    }

    /// Ratio between the true and the pairwise-sum weight of a group.
    pub fn band_ratio(&self, p: usize, consumers: &[usize]) -> Result<f64> {
        Ok(self.group_weight(p, consumers)? / self.pair_sum(p, consumers)?)
    }

    pub fn family_weight(&self, groups: &Groups) -> Result<f64> {
        groups.iter().map(|(&p, cs)| self.group_weight(p, cs)).sum()
    }
}

fn format_group(p: usize, consumers: &[usize]) -> String {
    let cs: Vec<String> = consumers.iter().map(|c| format!("c{}", c + 1)).collect();
    format!("{{p{}; {}}}", p + 1, cs.join(","))
}

/// Outcome of [`solve_bhm`].
#[derive(Clone, Debug)]
pub struct BhmResult {
    pub groups: Groups,
    pub total_weight: f64,
    /// `r * alpha2 / alpha1` with `r` the inner algorithm's guarantee on the
    /// expanded instance.
    pub certified_ratio: f64,
    pub inner: DiscoveryResult,
}

/// Runs `algo` on the `(k-1)`-copy expansion and merges copies into groups.
pub fn solve_bhm(h: &HypergraphInstance, algo: Algorithm, ell: usize) -> Result<BhmResult> {
    h.validate()?;
    let copies = h.k - 1;
    let expanded = expand_one_to_many(&h.base, copies)?;
    let inner = run(&expanded, algo, ell)?;
    let groups = contract_matching(&inner.matching, copies);
    let total_weight = h.family_weight(&groups)?;
    let r = ratio_bound(algo, ell, &extract_params(&expanded)?)?;
    Ok(BhmResult { groups, total_weight, certified_ratio: r * h.alpha2 / h.alpha1, inner })
}

pub const BHM_MAX_PRODUCERS: usize = 4;
pub const BHM_MAX_CONSUMERS: usize = 6;
pub const BHM_MAX_K: usize = 3;

/// Exhaustive optimum over all disjoint hyperedge families.
pub fn brute_force_bhm(h: &HypergraphInstance) -> Result<(Groups, f64)> {
    h.validate()?;
    for (what, actual, limit) in [
        ("s", h.base.producers, BHM_MAX_PRODUCERS),
        ("q", h.base.consumers, BHM_MAX_CONSUMERS),
        ("k", h.k, BHM_MAX_K),
    ] {
        if actual > limit {
            return Err(Error::SizeLimit { what, actual, limit });
        }
    }
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); h.base.consumers];
    for e in &h.base.edges {
        owners[e.c].push(e.p);
    }
    let mut assign = vec![None; h.base.consumers];
    let mut load = vec![0; h.base.producers];
    let mut best = (Groups::new(), 0.0);
    enumerate_families(h, &owners, 0, &mut assign, &mut load, &mut best)?;
    Ok(best)
}

fn enumerate_families(
    h: &HypergraphInstance,
    owners: &[Vec<usize>],
    c: usize,
    assign: &mut Vec<Option<usize>>,
    load: &mut Vec<usize>,
    best: &mut (Groups, f64),
) -> Result<()> {
    if c == owners.len() {
        let mut groups = Groups::new();
        for (c, a) in assign.iter().enumerate() {
            if let Some(p) = a {
                groups.entry(*p).or_default().push(c);
            }
        }
        let w = h.family_weight(&groups)?;
        if w > best.1 {
            *best = (groups, w);
        }
        return Ok(());
    }
    assign[c] = None;
    enumerate_families(h, owners, c + 1, assign, load, best)?;
    for &p in &owners[c] {
        if load[p] < h.k - 1 {
            load[p] += 1;
            assign[c] = Some(p);
            enumerate_families(h, owners, c + 1, assign, load, best)?;
            assign[c] = None;
            load[p] -= 1;
        }
    }
    Ok(())
}
