//! Unit-capacity maximum flow with integral witnesses.
//!
//! Flows are reported as a value plus a decomposition into edge-disjoint
//! source-sink paths; the residual graph and the canonical (source-side)
//! minimum cut derive from the same flow, so all witnesses are mutually
//! consistent and deterministic.

use crate::index::Indexed;
use crate::netmodel::{EdgeId, EdgeSet, Network, VertexId};
use crate::{Error, Result};

/// A maximum flow: its value, a decomposition into `value` edge-disjoint
/// paths (each a sequence of edge ids from source to sink), and the exact set
/// of edges the paths cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    value: usize,
    paths: Vec<Vec<EdgeId>>,
    used_edges: EdgeSet,
}

impl Flow {
    pub fn value(&self) -> usize {
        self.value
    }

    pub fn paths(&self) -> &[Vec<EdgeId>] {
        &self.paths
    }

    pub fn used_edges(&self) -> &EdgeSet {
        &self.used_edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.used_edges.contains(e)
    }
}

/// Residual orientation of every edge under a flow: unsaturated edges keep
/// their direction (`forward`), saturated ones flip (`reverse`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualGraph {
    forward: EdgeSet,
    reverse: EdgeSet,
}

impl ResidualGraph {
    pub fn forward(&self) -> &EdgeSet {
        &self.forward
    }

    pub fn reverse(&self) -> &EdgeSet {
        &self.reverse
    }
}

/// Computes a maximum flow by shortest augmenting paths, breaking ties toward
/// lower edge ids. The result is deterministic for a given network.
pub fn max_flow(n: &Network) -> Flow {
    let idx = Indexed::new(n);
    let (value, mut used) = idx.flow_used(idx.source, idx.sink, &idx.no_mask());
    let paths = decompose(&idx, &mut used, value);
    Flow {
        value,
        paths: paths
            .into_iter()
            .map(|p| p.into_iter().map(|pos| idx.ids[pos]).collect())
            .collect(),
        used_edges: EdgeSet::from_ids(
            used.iter()
                .enumerate()
                .filter(|&(_, &u)| u)
                .map(|(pos, _)| idx.ids[pos]),
        ),
    }
}

/// Splits a saturated-edge set into `value` paths by walking from the source
/// and always taking the lowest-id unconsumed saturated edge. Any flow cycle
/// encountered is cancelled on the spot (dropped from the flow), so the
/// returned paths cover the final `used` set exactly.
fn decompose(idx: &Indexed, used: &mut [bool], value: usize) -> Vec<Vec<usize>> {
    let mut candidates: Vec<Vec<usize>> = vec![Vec::new(); idx.vertex_count];
    for v in 0..idx.vertex_count {
        candidates[v] = idx.out[v].iter().copied().filter(|&e| used[e]).collect();
    }
    let mut cursor = vec![0usize; idx.vertex_count];
    let mut consumed = vec![false; idx.edge_count()];
    // visited_at[v] = length of the walk when v was last current (this walk).
    let mut visited_at: Vec<Option<usize>> = vec![None; idx.vertex_count];
    let mut paths = Vec::with_capacity(value);
    for _ in 0..value {
        let mut touched = vec![idx.source];
        visited_at[idx.source] = Some(0);
        let mut walk: Vec<usize> = Vec::new();
        let mut cur = idx.source;
        while cur != idx.sink {
            let e = loop {
                let c = cursor[cur];
                let e = candidates[cur][c];
                if consumed[e] {
                    cursor[cur] += 1;
                } else {
                    break e;
                }
            };
            consumed[e] = true;
            walk.push(e);
            let next = idx.head[e];
            if let Some(at) = visited_at[next] {
                // Flow conservation allows cycles; they carry no value, so
                // excise the loop and keep walking from its entry point.
                for &ce in &walk[at..] {
                    used[ce] = false;
                    visited_at[idx.head[ce]] = None;
                }
                walk.truncate(at);
                visited_at[next] = Some(at);
            } else {
                visited_at[next] = Some(walk.len());
                touched.push(next);
            }
            cur = next;
        }
        for v in touched {
            visited_at[v] = None;
        }
        paths.push(walk);
    }
    paths
}

/// The residual graph of `n` under `f`.
pub fn residual(n: &Network, f: &Flow) -> Result<ResidualGraph> {
    let all = n.edge_set();
    for id in f.used_edges().iter() {
        if !all.contains(id) {
            return Err(Error::UnknownEdge(id));
        }
    }
    Ok(ResidualGraph {
        forward: all.difference(f.used_edges()),
        reverse: f.used_edges().clone(),
    })
}

/// The canonical minimum cut: edges leaving the set of vertices that remain
/// residual-reachable from the source under the deterministic maximum flow.
/// Its size equals the maximum flow value.
pub fn min_cut(n: &Network) -> EdgeSet {
    let idx = Indexed::new(n);
    let (_, used) = idx.flow_used(idx.source, idx.sink, &idx.no_mask());
    let side = idx.residual_reach(idx.source, &used, &idx.no_mask());
    EdgeSet::from_ids(
        (0..idx.edge_count())
            .filter(|&e| side[idx.tail[e]] && !side[idx.head[e]])
            .map(|e| idx.ids[e]),
    )
}

/// Plain directed reachability in the network.
pub fn reachable(n: &Network, from: &VertexId, to: &VertexId) -> Result<bool> {
    let idx = Indexed::new(n);
    let from = idx
        .vertex_index(from)
        .ok_or_else(|| Error::UnknownVertex(from.clone()))?;
    let to = idx
        .vertex_index(to)
        .ok_or_else(|| Error::UnknownVertex(to.clone()))?;
    Ok(idx.forward_reach(from, &idx.no_mask())[to])
}

/// Reachability in the residual graph `r` of network `n`.
pub fn residual_reachable(
    n: &Network,
    r: &ResidualGraph,
    from: &VertexId,
    to: &VertexId,
) -> Result<bool> {
    let idx = Indexed::new(n);
    let from = idx
        .vertex_index(from)
        .ok_or_else(|| Error::UnknownVertex(from.clone()))?;
    let to = idx
        .vertex_index(to)
        .ok_or_else(|| Error::UnknownVertex(to.clone()))?;
    let mut used = vec![false; idx.edge_count()];
    for id in r.reverse().iter() {
        let pos = idx.position_of(id).ok_or(Error::UnknownEdge(id))?;
        used[pos] = true;
    }
    for id in r.forward().iter() {
        if idx.position_of(id).is_none() {
            return Err(Error::UnknownEdge(id));
        }
    }
    Ok(idx.residual_reach(from, &used, &idx.no_mask())[to])
}
