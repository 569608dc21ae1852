//! Polynomial-time D-set/H-set classification.
//!
//! An edge belongs to the D-set exactly when some maximum flow uses it, which
//! a single flow computation decides for the whole network: an edge outside
//! the computed flow lies in another maximum flow iff its head can reach its
//! tail in the residual graph (rerouting around it costs nothing). On acyclic
//! networks this partition coincides with the capacity-factor one — the D-set
//! is the union of all 1-CFs — while on cyclic networks it may differ; see
//! [`crate::cfcore::brute_force_classification`] for the factor-faithful
//! route.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::index::Indexed;
use crate::maxflow::Flow;
use crate::netmodel::{EdgeId, EdgeSet, Network};
use crate::{Error, Result};

/// Why an edge landed on its side of the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    /// The edge carries a unit of the computed maximum flow.
    #[serde(rename = "in-flow")]
    InFlow,
    /// The edge is unused but sits on a residual cycle, so swapping it into
    /// the flow keeps the value unchanged.
    #[serde(rename = "residual-cycle")]
    ResidualCycle,
    /// No maximum flow uses the edge: it is in the H-set.
    #[serde(rename = "none")]
    None,
}

/// The full partition of the edge set, with a witness per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    d_set: EdgeSet,
    h_set: EdgeSet,
    witness: BTreeMap<EdgeId, WitnessKind>,
}

impl ClassificationReport {
    pub fn d_set(&self) -> &EdgeSet {
        &self.d_set
    }

    pub fn h_set(&self) -> &EdgeSet {
        &self.h_set
    }

    pub fn witness(&self) -> &BTreeMap<EdgeId, WitnessKind> {
        &self.witness
    }

    /// JSON form `{"D":[...],"H":[...],"witness":{...}}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            #[serde(rename = "D")]
            d: &'a [EdgeId],
            #[serde(rename = "H")]
            h: &'a [EdgeId],
            witness: BTreeMap<String, WitnessKind>,
        }
        let doc = Doc {
            d: self.d_set.ids(),
            h: self.h_set.ids(),
            witness: self
                .witness
                .iter()
                .map(|(id, w)| (id.to_string(), *w))
                .collect(),
        };
        serde_json::to_string(&doc).expect("report serialization cannot fail")
    }
}

/// Partitions every edge by whether some maximum flow uses it. Requires a
/// positive maximum flow; the input need not be normalized — edges that lie
/// on no source-sink path simply land in the H-set.
pub fn classify_edges(n: &Network) -> Result<ClassificationReport> {
    let idx = Indexed::new(n);
    let (value, used) = idx.flow_used(idx.source, idx.sink, &idx.no_mask());
    if value == 0 {
        return Err(Error::ZeroFlow);
    }
    // Residual adjacency once; one BFS per unused edge.
    let mut d = Vec::new();
    let mut h = Vec::new();
    let mut witness = BTreeMap::new();
    let mask = idx.no_mask();
    for pos in 0..idx.edge_count() {
        let id = idx.ids[pos];
        let kind = if used[pos] {
            WitnessKind::InFlow
        } else if idx.residual_reach(idx.head[pos], &used, &mask)[idx.tail[pos]] {
            WitnessKind::ResidualCycle
        } else {
            WitnessKind::None
        };
        witness.insert(id, kind);
        match kind {
            WitnessKind::None => h.push(id),
            _ => d.push(id),
        }
    }
    Ok(ClassificationReport {
        d_set: EdgeSet::from_ids(d),
        h_set: EdgeSet::from_ids(h),
        witness,
    })
}

/// Whether edge `e` lies in some maximum flow, decided against the supplied
/// flow in a single residual search. The answer does not depend on which
/// maximum flow was supplied.
pub fn edge_in_some_max_flow(n: &Network, f: &Flow, e: EdgeId) -> Result<bool> {
    let idx = Indexed::new(n);
    let pos = idx.position_of(e).ok_or(Error::UnknownEdge(e))?;
    let mut used = vec![false; idx.edge_count()];
    for id in f.used_edges().iter() {
        let p = idx.position_of(id).ok_or(Error::UnknownEdge(id))?;
        used[p] = true;
    }
    if used[pos] {
        return Ok(true);
    }
    Ok(idx.residual_reach(idx.head[pos], &used, &idx.no_mask())[idx.tail[pos]])
}
