//! Shared helpers for the integration suites: seeded random-network
//! generators and brute-force oracles kept independent of the code paths
//! they are used to check.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use capfac::maxflow;
use capfac::netmodel::{Edge, Network, VertexId};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

/// Builds a network on vertices `v1..vN` (source `v1`, sink `vN`) from
/// `(tail, head)` index pairs, numbering edges in order of appearance.
pub fn net_from_pairs(v: usize, pairs: &[(usize, usize)]) -> Network {
    let vertices: Vec<String> = (1..=v).map(|i| format!("v{i}")).collect();
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| Edge::new(i as u32 + 1, format!("v{a}"), format!("v{b}")));
    Network::new(vertices, edges, "v1", format!("v{v}")).expect("generated network is well formed")
}

/// A random acyclic network with `3..=max_v` vertices and at most `max_e`
/// edges (parallel edges allowed), always containing a source-to-sink path.
/// Every edge points from a lower-numbered vertex to a higher-numbered one.
pub fn random_dag(rng: &mut impl Rng, max_v: usize, max_e: usize) -> Network {
    let v = rng.gen_range(3..=max_v);
    let mut chain = vec![1];
    chain.extend((2..v).filter(|_| rng.gen_bool(0.4)));
    chain.push(v);
    let mut pairs: Vec<(usize, usize)> = chain.windows(2).map(|w| (w[0], w[1])).collect();
    let target = rng.gen_range(pairs.len()..=max_e.max(pairs.len()));
    while pairs.len() < target {
        let a = rng.gen_range(1..v);
        let b = rng.gen_range(a + 1..=v);
        pairs.push((a, b));
    }
    net_from_pairs(v, &pairs)
}

/// A random directed network (cycles allowed, self-loops excluded) with
/// `3..=max_v` vertices, at most `max_e` edges, and a guaranteed
/// source-to-sink path.
pub fn random_digraph(rng: &mut impl Rng, max_v: usize, max_e: usize) -> Network {
    let v = rng.gen_range(3..=max_v);
    let mut mids: Vec<usize> = (2..v).filter(|_| rng.gen_bool(0.4)).collect();
    mids.shuffle(rng);
    let mut chain = vec![1];
    chain.extend(mids);
    chain.push(v);
    let mut pairs: Vec<(usize, usize)> = chain.windows(2).map(|w| (w[0], w[1])).collect();
    let target = rng.gen_range(pairs.len()..=max_e.max(pairs.len()));
    while pairs.len() < target {
        let a = rng.gen_range(1..=v);
        let b = rng.gen_range(1..=v);
        if a != b {
            pairs.push((a, b));
        }
    }
    net_from_pairs(v, &pairs)
}

/// Minimum crossing-edge count over every vertex bipartition with the source
/// on one side and the sink on the other — equal to the maximum flow by
/// duality, computed here without any flow machinery.
pub fn min_bipartition_cut(n: &Network) -> usize {
    let vs = n.vertices();
    let index: HashMap<&VertexId, usize> = vs.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let free: Vec<usize> = (0..vs.len())
        .filter(|&i| vs[i] != *n.source() && vs[i] != *n.sink())
        .collect();
    assert!(free.len() < 25, "bipartition oracle wants a small network");
    let mut best = usize::MAX;
    let mut side = vec![false; vs.len()];
    for mask in 0u32..1 << free.len() {
        side.iter_mut().for_each(|b| *b = false);
        side[index[n.source()]] = true;
        for (bit, &i) in free.iter().enumerate() {
            side[i] = mask >> bit & 1 == 1;
        }
        let crossing = n
            .edges()
            .iter()
            .filter(|e| side[index[&e.tail]] && !side[index[&e.head]])
            .count();
        best = best.min(crossing);
    }
    best
}

/// The network after deleting a vertex set together with all incident edges.
pub fn delete_vertices(n: &Network, vs: &BTreeSet<VertexId>) -> Network {
    let vertices = n.vertices().iter().filter(|v| !vs.contains(v)).cloned();
    let edges = n
        .edges()
        .iter()
        .filter(|e| !vs.contains(&e.tail) && !vs.contains(&e.head))
        .cloned();
    Network::new(vertices, edges, n.source().clone(), n.sink().clone())
        .expect("the terminals survive vertex deletion")
}

/// Exhaustively lists the minimal vertex sets (terminals excluded, at most
/// `max_size` vertices) whose deletion lowers the maximum flow. Deletion is
/// monotone, so the size-ascending search with superset pruning yields
/// exactly the minimal sets.
pub fn enumerate_vertex_cfs(n: &Network, max_size: usize) -> Vec<BTreeSet<VertexId>> {
    let base = maxflow::max_flow(n).value();
    let internal: Vec<VertexId> = n
        .vertices()
        .iter()
        .filter(|v| *v != n.source() && *v != n.sink())
        .cloned()
        .collect();
    let mut found: Vec<BTreeSet<VertexId>> = Vec::new();
    for size in 1..=max_size.min(internal.len()) {
        for combo in internal.iter().cloned().combinations(size) {
            let set: BTreeSet<VertexId> = combo.into_iter().collect();
            if found.iter().any(|f| f.is_subset(&set)) {
                continue;
            }
            if maxflow::max_flow(&delete_vertices(n, &set)).value() < base {
                found.push(set);
            }
        }
    }
    found
}

/// Runs a closure and reports how long it took.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}
