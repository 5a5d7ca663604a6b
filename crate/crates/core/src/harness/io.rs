//! JSON instance files. Node indices in files are 1-based.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extensions::{HyperEntry, HyperWeight, HypergraphInstance};
use crate::instance::{BipartiteInstance, Edge, EdgeId};
use crate::order::IntervalWeights;

pub const FORMAT_TAG: &str = "mwmd-instance";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format: String,
    pub version: u32,
    pub producers: usize,
    pub consumers: usize,
    pub edges: Vec<EdgeRecord>,
    /// Empty or absent means index order.
    #[serde(default)]
    pub sigma_p: Vec<usize>,
    #[serde(default)]
    pub sigma_c: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_e: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intervals: Option<Vec<IntervalRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypergraph: Option<HypergraphRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub p: usize,
    pub c: usize,
    pub w: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalRecord {
    pub p: usize,
    pub c: usize,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphRecord {
    pub k: usize,
    pub alpha1: f64,
    pub alpha2: f64,
    /// Absent means max-of-pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyper_weight_table: Option<Vec<HyperRecord>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperRecord {
    pub p: usize,
    pub consumers: Vec<usize>,
    pub w: f64,
}

/// Hypergraph parameters attached to an instance file.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergraphSpec {
    pub k: usize,
    pub alpha1: f64,
    pub alpha2: f64,
    pub hyper_weight: HyperWeight,
}

/// In-memory form of an instance file (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub instance: BipartiteInstance,
    pub intervals: Option<IntervalWeights>,
    pub hypergraph: Option<HypergraphSpec>,
}

impl Document {
    pub fn plain(instance: BipartiteInstance) -> Self {
        Document { instance, intervals: None, hypergraph: None }
    }

    pub fn hypergraph_instance(&self) -> Result<HypergraphInstance> {
        let spec = self
            .hypergraph
            .as_ref()
            .ok_or_else(|| Error::Format("no hypergraph block in the instance file".into()))?;
        let h = HypergraphInstance {
            base: self.instance.clone(),
            k: spec.k,
            hyper_weight: spec.hyper_weight.clone(),
            alpha1: spec.alpha1,
            alpha2: spec.alpha2,
        };
        h.validate()?;
        Ok(h)
    }
}

fn one_based(i: usize, what: &str, limit: usize) -> Result<usize> {
    if i == 0 || i > limit {
        Err(Error::Format(format!("{what} index {i} outside 1..={limit}")))
    } else {
        Ok(i - 1)
    }
}

impl InstanceFile {
    pub fn from_document(doc: &Document) -> Self {
        let inst = &doc.instance;
        let pair = |id: EdgeId| {
            let e = inst.edges[id];
            [e.p + 1, e.c + 1]
        };
        InstanceFile {
            format: FORMAT_TAG.into(),
            version: FORMAT_VERSION,
            producers: inst.producers,
            consumers: inst.consumers,
            edges: inst
                .edges
                .iter()
                .zip(&inst.weights)
                .map(|(e, &w)| EdgeRecord { p: e.p + 1, c: e.c + 1, w })
                .collect(),
            sigma_p: inst.sigma_p.iter().map(|p| p + 1).collect(),
            sigma_c: inst.sigma_c.iter().map(|c| c + 1).collect(),
            sigma_e: inst.sigma_e.as_ref().map(|o| o.iter().map(|&id| pair(id)).collect()),
            intervals: doc.intervals.as_ref().map(|iv| {
                inst.edges
                    .iter()
                    .enumerate()
                    .map(|(id, e)| IntervalRecord { p: e.p + 1, c: e.c + 1, lo: iv.lo[id], hi: iv.hi[id] })
                    .collect()
            }),
            hypergraph: doc.hypergraph.as_ref().map(|h| HypergraphRecord {
                k: h.k,
                alpha1: h.alpha1,
                alpha2: h.alpha2,
                hyper_weight_table: match &h.hyper_weight {
                    HyperWeight::MaxOfPairs => None,
                    HyperWeight::Table(entries) => Some(
                        entries
                            .iter()
                            .map(|e| HyperRecord {
                                p: e.p + 1,
                                consumers: e.consumers.iter().map(|c| c + 1).collect(),
                                w: e.w,
                            })
                            .collect(),
                    ),
                },
            }),
        }
    }

    pub fn into_document(self) -> Result<Document> {
        if self.format != FORMAT_TAG {
            return Err(Error::Format(format!("format tag '{}' is not '{FORMAT_TAG}'", self.format)));
        }
        if self.version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {}", self.version)));
        }
        let (s, q) = (self.producers, self.consumers);
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut weights = Vec::with_capacity(self.edges.len());
        for r in &self.edges {
            edges.push(Edge::new(one_based(r.p, "producer", s)?, one_based(r.c, "consumer", q)?));
            weights.push(r.w);
        }
        let lookup: HashMap<Edge, EdgeId> = edges.iter().enumerate().map(|(id, &e)| (e, id)).collect();
        let find = |p: usize, c: usize| -> Result<EdgeId> {
            let e = Edge::new(one_based(p, "producer", s)?, one_based(c, "consumer", q)?);
            lookup.get(&e).copied().ok_or(Error::UnknownEdge(e))
        };
        let sigma_p = match self.sigma_p.is_empty() {
            true => (0..s).collect(),
            false => self.sigma_p.iter().map(|&p| one_based(p, "producer", s)).collect::<Result<_>>()?,
        };
        let sigma_c = match self.sigma_c.is_empty() {
            true => (0..q).collect(),
            false => self.sigma_c.iter().map(|&c| one_based(c, "consumer", q)).collect::<Result<_>>()?,
        };
        let sigma_e = match &self.sigma_e {
            Some(order) => Some(order.iter().map(|&[p, c]| find(p, c)).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        let instance = BipartiteInstance { producers: s, consumers: q, edges, weights, sigma_p, sigma_c, sigma_e };
        instance.ensure_valid()?;

        let intervals = match &self.intervals {
            Some(records) => {
                let mut lo = vec![f64::NAN; instance.m()];
                let mut hi = vec![f64::NAN; instance.m()];
                for r in records {
                    let id = find(r.p, r.c)?;
                    lo[id] = r.lo;
                    hi[id] = r.hi;
                }
                if records.len() != instance.m() || lo.iter().any(|x| x.is_nan()) {
                    return Err(Error::Format("intervals must cover every edge exactly once".into()));
                }
                Some(IntervalWeights::new(lo, hi)?)
            }
            None => None,
        };

        let hypergraph = match self.hypergraph {
            Some(h) => {
                let hyper_weight = match h.hyper_weight_table {
                    None => HyperWeight::MaxOfPairs,
                    Some(rows) => HyperWeight::Table(
                        rows.into_iter()
                            .map(|r| {
                                let mut consumers = r
                                    .consumers
                                    .iter()
                                    .map(|&c| one_based(c, "consumer", q))
                                    .collect::<Result<Vec<_>>>()?;
                                consumers.sort_unstable();
                                Ok(HyperEntry { p: one_based(r.p, "producer", s)?, consumers, w: r.w })
                            })
                            .collect::<Result<Vec<_>>>()?,
                    ),
                };
                Some(HypergraphSpec { k: h.k, alpha1: h.alpha1, alpha2: h.alpha2, hyper_weight })
            }
            None => None,
        };
        Ok(Document { instance, intervals, hypergraph })
    }
}

pub fn emit_document(doc: &Document) -> Result<String> {
    Ok(serde_json::to_string_pretty(&InstanceFile::from_document(doc))?)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let file: InstanceFile = serde_json::from_str(text)?;
    file.into_document()
}

pub fn read_document(path: impl AsRef<Path>) -> Result<Document> {
    parse_document(&std::fs::read_to_string(path)?)
}

pub fn write_document(path: impl AsRef<Path>, doc: &Document) -> Result<()> {
    let mut text = emit_document(doc)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
