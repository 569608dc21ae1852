//! Capacity factors: verification, enumeration, membership, ranks, and
//! factor surgery.
//!
//! A set `F` of edges is a `k`-CF when deleting it costs at least `k` units
//! of maximum flow while deleting any proper subset costs strictly less than
//! `k`. Verification needs `|F| + 1` flow computations (monotonicity reduces
//! subset checks to single-edge removals); enumeration, membership and rank
//! queries are exhaustive searches with pruning — the underlying decision
//! problem is NP-hard (see [`crate::reductions`]), so they are meant for
//! desk-scale networks.

use itertools::Itertools;
use serde::Serialize;

use crate::classify::classify_edges;
use crate::index::Indexed;
use crate::netmodel::{EdgeId, EdgeSet, MulticastNetwork, Network};
use crate::{maxflow, Error, Result};

/// Outcome of a successful factor verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapacityFactorReport {
    pub factor: EdgeSet,
    pub order: usize,
    pub flow_before: usize,
    pub flow_after: usize,
}

/// Result of a capacity-rank query: the smallest size of a 1-CF containing
/// the edge, or `None` when no 1-CF contains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub edge: EdgeId,
    pub rank: Option<usize>,
    pub witness: Option<EdgeSet>,
}

impl RankResult {
    /// JSON form `{"edge":4,"rank":"inf"}` or
    /// `{"edge":3,"rank":2,"witness":[3,5]}`.
    pub fn to_json(&self) -> String {
        let mut doc = serde_json::Map::new();
        doc.insert("edge".into(), serde_json::json!(self.edge));
        match self.rank {
            Some(r) => doc.insert("rank".into(), serde_json::json!(r)),
            None => doc.insert("rank".into(), serde_json::json!("inf")),
        };
        if let Some(w) = &self.witness {
            doc.insert("witness".into(), serde_json::json!(w.ids()));
        }
        serde_json::to_string(&doc).expect("rank serialization cannot fail")
    }
}

/// Per-sink drop requirements for multicast factors. Components are
/// non-negative and not all zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KVector(Vec<usize>);

impl KVector {
    pub fn new(components: impl Into<Vec<usize>>) -> Result<Self> {
        let components = components.into();
        if components.iter().all(|&k| k == 0) {
            return Err(Error::KVectorZero);
        }
        Ok(KVector(components))
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Answer to "does some `k`-CF contain this edge?", with a path certificate
/// when it does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathMembership {
    pub member: bool,
    pub witness: Option<Vec<EdgeId>>,
}

fn positions_for(idx: &Indexed, f: &EdgeSet) -> Result<Vec<usize>> {
    f.iter()
        .map(|id| idx.position_of(id).ok_or(Error::UnknownEdge(id)))
        .collect()
}

fn is_subset(sub: &[usize], sup: &[usize]) -> bool {
    let mut it = sup.iter();
    'outer: for x in sub {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// Shared verification core: returns (is factor, flow before, flow after).
fn check_kcf(idx: &Indexed, positions: &[usize], k: usize) -> Result<(bool, usize, usize)> {
    let mut mask = idx.no_mask();
    let before = idx.flow_value(idx.source, idx.sink, &mask);
    if k < 1 || k > before {
        return Err(Error::OrderOutOfRange { k, max: before });
    }
    for &p in positions {
        mask[p] = true;
    }
    let after = idx.flow_value(idx.source, idx.sink, &mask);
    if after + k > before {
        return Ok((false, before, after));
    }
    // Flow is monotone under deletion, so minimality over all proper subsets
    // reduces to the maximal ones.
    for &p in positions {
        mask[p] = false;
        let v = idx.flow_value(idx.source, idx.sink, &mask);
        mask[p] = true;
        if v + k <= before {
            return Ok((false, before, after));
        }
    }
    Ok((true, before, after))
}

/// Whether `f` is a `k`-CF of `n`.
pub fn verify_kcf(n: &Network, f: &EdgeSet, k: usize) -> Result<bool> {
    if f.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let idx = Indexed::new(n);
    let positions = positions_for(&idx, f)?;
    Ok(check_kcf(&idx, &positions, k)?.0)
}

/// Like [`verify_kcf`], but returns the flow bookkeeping on success and
/// `Error::NotACapacityFactor` on failure.
pub fn certify_kcf(n: &Network, f: &EdgeSet, k: usize) -> Result<CapacityFactorReport> {
    if f.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let idx = Indexed::new(n);
    let positions = positions_for(&idx, f)?;
    let (ok, flow_before, flow_after) = check_kcf(&idx, &positions, k)?;
    if !ok {
        return Err(Error::NotACapacityFactor { k });
    }
    Ok(CapacityFactorReport {
        factor: f.clone(),
        order: k,
        flow_before,
        flow_after,
    })
}

/// Enumerates every `k`-CF (of size at most `max_size`, when given), in
/// canonical order: by size, then lexicographically on ids.
///
/// Exhaustive over edge subsets, with two prunes: supersets of found factors
/// are skipped (factors are minimal by definition), and for `k = 1` on
/// acyclic networks only D-set edges are candidates.
pub fn enumerate_kcfs(n: &Network, k: usize, max_size: Option<usize>) -> Result<Vec<EdgeSet>> {
    let idx = Indexed::new(n);
    let mut mask = idx.no_mask();
    let before = idx.flow_value(idx.source, idx.sink, &mask);
    if k < 1 || k > before {
        return Err(Error::OrderOutOfRange { k, max: before });
    }
    let candidates: Vec<usize> = if k == 1 && n.is_acyclic() {
        let report = classify_edges(n)?;
        report
            .d_set()
            .iter()
            .map(|id| idx.position_of(id).expect("classified edge exists"))
            .collect()
    } else {
        (0..idx.edge_count()).collect()
    };
    let cap = max_size.unwrap_or(candidates.len()).min(candidates.len());
    let mut found: Vec<Vec<usize>> = Vec::new();
    for size in 1..=cap {
        for combo in candidates.iter().copied().combinations(size) {
            if found.iter().any(|f| is_subset(f, &combo)) {
                continue;
            }
            for &p in &combo {
                mask[p] = true;
            }
            let v = idx.flow_value(idx.source, idx.sink, &mask);
            for &p in &combo {
                mask[p] = false;
            }
            // Any achieving set free of smaller factors is itself minimal.
            if v + k <= before {
                found.push(combo);
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|combo| EdgeSet::from_ids(combo.into_iter().map(|p| idx.ids[p])))
        .collect())
}

/// The capacity rank of an edge: the minimum size of a 1-CF containing it
/// (`rank: None` encodes infinity — the edge is in no 1-CF). The witness is
/// the first minimum factor in canonical order.
///
/// On acyclic networks H-set edges short-circuit to infinity; otherwise the
/// search grows subset size until `|E|` is exhausted.
pub fn capacity_rank(n: &Network, e: EdgeId) -> Result<RankResult> {
    let idx = Indexed::new(n);
    let pos_e = idx.position_of(e).ok_or(Error::UnknownEdge(e))?;
    let mut mask = idx.no_mask();
    let before = idx.flow_value(idx.source, idx.sink, &mask);
    if before == 0 {
        return Err(Error::ZeroFlow);
    }
    let mut candidates: Vec<usize> = (0..idx.edge_count()).collect();
    if n.is_acyclic() {
        let report = classify_edges(n)?;
        if report.h_set().contains(e) {
            return Ok(RankResult {
                edge: e,
                rank: None,
                witness: None,
            });
        }
        // Every 1-CF lives inside the D-set, so nothing else can help.
        candidates = report
            .d_set()
            .iter()
            .map(|id| idx.position_of(id).expect("classified edge exists"))
            .collect();
    }
    let others: Vec<usize> = candidates.iter().copied().filter(|&p| p != pos_e).collect();
    for size in 1..=others.len() + 1 {
        for rest in others.iter().copied().combinations(size - 1) {
            let mut combo = rest;
            combo.push(pos_e);
            combo.sort_unstable();
            for &p in &combo {
                mask[p] = true;
            }
            let after = idx.flow_value(idx.source, idx.sink, &mask);
            let mut ok = after < before;
            if ok {
                for &p in &combo {
                    mask[p] = false;
                    let v = idx.flow_value(idx.source, idx.sink, &mask);
                    mask[p] = true;
                    if v < before {
                        ok = false;
                        break;
                    }
                }
            }
            for &p in &combo {
                mask[p] = false;
            }
            if ok {
                return Ok(RankResult {
                    edge: e,
                    rank: Some(size),
                    witness: Some(EdgeSet::from_ids(combo.into_iter().map(|p| idx.ids[p]))),
                });
            }
        }
    }
    Ok(RankResult {
        edge: e,
        rank: None,
        witness: None,
    })
}

/// Whether some `k`-CF contains edge `e`, decided through the path criterion
/// valid on acyclic networks: `e` belongs to a `k`-CF iff some source-sink
/// path through `e` can be deleted at a total cost of at most `k`. Returns
/// the first such path (lowest edge ids first) as a certificate.
///
/// Cyclic input is refused — the criterion does not transfer.
pub fn kcf_membership(n: &Network, e: EdgeId, k: usize) -> Result<PathMembership> {
    if !n.is_acyclic() {
        return Err(Error::Cyclic);
    }
    let idx = Indexed::new(n);
    let pos_e = idx.position_of(e).ok_or(Error::UnknownEdge(e))?;
    let mut mask = idx.no_mask();
    let before = idx.flow_value(idx.source, idx.sink, &mask);
    if k < 1 || k > before {
        return Err(Error::OrderOutOfRange { k, max: before });
    }
    let prefixes = all_paths(&idx, idx.source, idx.tail[pos_e]);
    if prefixes.is_empty() {
        return Ok(PathMembership {
            member: false,
            witness: None,
        });
    }
    let suffixes = all_paths(&idx, idx.head[pos_e], idx.sink);
    for prefix in &prefixes {
        for suffix in &suffixes {
            let path: Vec<usize> = prefix
                .iter()
                .chain([&pos_e])
                .chain(suffix.iter())
                .copied()
                .collect();
            for &p in &path {
                mask[p] = true;
            }
            let v = idx.flow_value(idx.source, idx.sink, &mask);
            for &p in &path {
                mask[p] = false;
            }
            if v + k >= before {
                return Ok(PathMembership {
                    member: true,
                    witness: Some(path.into_iter().map(|p| idx.ids[p]).collect()),
                });
            }
        }
    }
    Ok(PathMembership {
        member: false,
        witness: None,
    })
}

/// All simple paths `from -> to` in an acyclic graph, as edge-position
/// sequences in lexicographic order. Only productive branches are explored.
fn all_paths(idx: &Indexed, from: usize, to: usize) -> Vec<Vec<usize>> {
    let reaches_to = idx.backward_reach(to, &idx.no_mask());
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn go(
        idx: &Indexed,
        at: usize,
        to: usize,
        reaches_to: &[bool],
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if at == to {
            out.push(prefix.clone());
            return;
        }
        for &e in &idx.out[at] {
            if !reaches_to[idx.head[e]] {
                continue;
            }
            prefix.push(e);
            go(idx, idx.head[e], to, reaches_to, prefix, out);
            prefix.pop();
        }
    }
    if reaches_to[from] {
        go(idx, from, to, &reaches_to, &mut prefix, &mut out);
    }
    out
}

/// Grows a `k`-CF into a `(k+1)`-CF by adding one edge from the canonical
/// minimum cut of the network without the factor.
pub fn extend_kcf(n: &Network, f: &EdgeSet, k: usize) -> Result<EdgeSet> {
    if !n.is_acyclic() {
        return Err(Error::Cyclic);
    }
    let idx = Indexed::new(n);
    let positions = positions_for(&idx, f)?;
    if f.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let (ok, before, _) = check_kcf(&idx, &positions, k)?;
    if !ok {
        return Err(Error::NotACapacityFactor { k });
    }
    if k + 1 > before {
        return Err(Error::OrderOutOfRange {
            k: k + 1,
            max: before,
        });
    }
    let rest = n.remove_edges(f)?;
    let cut = maxflow::min_cut(&rest);
    let chosen = cut.ids()[0];
    Ok(f.union(&EdgeSet::from_ids([chosen])))
}

/// Splits a `k`-CF into an `m`-CF plus a `(k-m)`-CF of the network without
/// the first part: the minimum-cardinality subset of `f` whose deletion costs
/// exactly `m` units is an `m`-CF, and the rest is a `(k-m)`-CF of the
/// remainder. Ties break lexicographically.
pub fn split_kcf(n: &Network, f: &EdgeSet, k: usize, m: usize) -> Result<(EdgeSet, EdgeSet)> {
    if f.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let idx = Indexed::new(n);
    let positions = positions_for(&idx, f)?;
    let (ok, before, _) = check_kcf(&idx, &positions, k)?;
    if !ok {
        return Err(Error::NotACapacityFactor { k });
    }
    if m < 1 || m >= k {
        return Err(Error::SplitOutOfRange { m, max: k - 1 });
    }
    let mut mask = idx.no_mask();
    for size in 1..positions.len() {
        for combo in positions.iter().copied().combinations(size) {
            for &p in &combo {
                mask[p] = true;
            }
            let v = idx.flow_value(idx.source, idx.sink, &mask);
            for &p in &combo {
                mask[p] = false;
            }
            if v + m == before {
                let part = EdgeSet::from_ids(combo.into_iter().map(|p| idx.ids[p]));
                let rest = f.difference(&part);
                return Ok((part, rest));
            }
        }
    }
    // Deleting f's edges one at a time steps the flow down from `before` to
    // `before - k` in unit decrements, so some prefix stops at exactly
    // `before - m`; the search above cannot come up empty.
    unreachable!("a verified k-CF contains a subset of every intermediate exact cost")
}

/// Whether `f` equals the edge set `[V1, V̄1]` of some vertex bipartition
/// with the source in `V1` and the sink in `V̄1`, such that every cut edge's
/// tail is fed from the source inside `N(V1)` and every cut edge's head
/// drains to the sink inside `N(V̄1)`.
///
/// The candidate bipartition is forced: `V1` must be what the source reaches
/// without `f`. An empty `f` is accepted exactly when source and sink are
/// already disconnected.
pub fn is_partially_connected_cut(n: &Network, f: &EdgeSet) -> Result<bool> {
    let idx = Indexed::new(n);
    let positions = positions_for(&idx, f)?;
    let mut mask = idx.no_mask();
    for &p in &positions {
        mask[p] = true;
    }
    let side = idx.forward_reach(idx.source, &mask);
    if side[idx.sink] {
        return Ok(false);
    }
    // f must be exactly the crossing edge set of [side, complement]: every
    // member crosses, and no non-member can cross (its head would have been
    // reached). Tails in `side` are automatically fed inside N(V1) because
    // their witness paths avoid f and stay on the source side.
    if positions
        .iter()
        .any(|&p| !side[idx.tail[p]] || side[idx.head[p]])
    {
        return Ok(false);
    }
    let complement: Vec<bool> = side.iter().map(|&s| !s).collect();
    let drains = idx.reach_within(idx.sink, &complement, true);
    Ok(positions.iter().all(|&p| drains[idx.head[p]]))
}

/// Every nonempty partially connected cut, by exhaustive bipartition search,
/// deduplicated and sorted by size then ids. Exponential in the vertex count.
pub fn enumerate_partially_connected_cuts(n: &Network) -> Vec<EdgeSet> {
    let mut cuts: Vec<EdgeSet> = partially_connected_cuts(n).into_iter().collect();
    cuts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cuts
}

/// A maximum-size partially connected cut, if any nonempty one exists. Ties
/// break toward the lexicographically smallest edge set.
pub fn max_partially_connected_cut(n: &Network) -> Option<EdgeSet> {
    partially_connected_cuts(n)
        .into_iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
}

fn partially_connected_cuts(n: &Network) -> std::collections::BTreeSet<EdgeSet> {
    let idx = Indexed::new(n);
    let free: Vec<usize> = (0..idx.vertex_count)
        .filter(|&v| v != idx.source && v != idx.sink)
        .collect();
    assert!(
        free.len() < usize::BITS as usize,
        "bipartition search needs a small network"
    );
    let mut cuts = std::collections::BTreeSet::new();
    let mut side = vec![false; idx.vertex_count];
    for assignment in 0..(1usize << free.len()) {
        side.iter_mut().for_each(|s| *s = false);
        side[idx.source] = true;
        for (bit, &v) in free.iter().enumerate() {
            side[v] = assignment >> bit & 1 == 1;
        }
        let crossing: Vec<usize> = (0..idx.edge_count())
            .filter(|&e| side[idx.tail[e]] && !side[idx.head[e]])
            .collect();
        if crossing.is_empty() {
            continue;
        }
        // partial connectivity, straight from the definition
        let fed = idx.reach_within(idx.source, &side, false);
        if crossing.iter().any(|&e| !fed[idx.tail[e]]) {
            continue;
        }
        let complement: Vec<bool> = side.iter().map(|&s| !s).collect();
        let drains = idx.reach_within(idx.sink, &complement, true);
        if crossing.iter().any(|&e| !drains[idx.head[e]]) {
            continue;
        }
        cuts.insert(EdgeSet::from_ids(crossing.into_iter().map(|e| idx.ids[e])));
    }
    cuts
}

/// The factor-defined partition: D = union of all 1-CFs, H = the rest.
/// Exhaustive, but faithful on cyclic networks where [`classify_edges`]'s
/// max-flow partition can disagree.
pub fn brute_force_classification(n: &Network) -> Result<(EdgeSet, EdgeSet)> {
    if maxflow::max_flow(n).value() == 0 {
        return Err(Error::ZeroFlow);
    }
    let factors = enumerate_kcfs(n, 1, None)?;
    let mut d = EdgeSet::new();
    for f in &factors {
        d = d.union(f);
    }
    Ok((d.clone(), n.edge_set().difference(&d)))
}

fn multicast_flows(
    mn: &MulticastNetwork,
    f: &EdgeSet,
) -> Result<(Indexed, Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>)> {
    let point = mn.point(0);
    let idx = Indexed::new(&point);
    let sinks: Vec<usize> = mn
        .sinks()
        .iter()
        .map(|t| idx.vertex_index(t).expect("sink validated at construction"))
        .collect();
    let positions = positions_for(&idx, f)?;
    let mut mask = idx.no_mask();
    let before: Vec<usize> = sinks
        .iter()
        .map(|&t| idx.flow_value(idx.source, t, &mask))
        .collect();
    for &p in &positions {
        mask[p] = true;
    }
    let after: Vec<usize> = sinks
        .iter()
        .map(|&t| idx.flow_value(idx.source, t, &mask))
        .collect();
    Ok((idx, sinks, positions, before, after))
}

/// Whether `f` is a multicast capacity factor for the per-sink requirement
/// vector `kv`: deleting `f` costs at least `kv[i]` units toward every sink
/// `i`, and every proper subset misses at least one requirement. Monotonicity
/// again reduces minimality to single-edge removals.
pub fn verify_multicast_cf(mn: &MulticastNetwork, f: &EdgeSet, kv: &KVector) -> Result<bool> {
    if kv.len() != mn.sinks().len() {
        return Err(Error::KVectorLength {
            got: kv.len(),
            want: mn.sinks().len(),
        });
    }
    if kv.components().iter().all(|&k| k == 0) {
        return Err(Error::KVectorZero);
    }
    if f.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let (idx, sinks, positions, before, after) = multicast_flows(mn, f)?;
    let k = kv.components();
    if (0..sinks.len()).any(|i| after[i] + k[i] > before[i]) {
        return Ok(false);
    }
    let mut mask = idx.no_mask();
    for &p in &positions {
        mask[p] = true;
    }
    for &p in &positions {
        mask[p] = false;
        let misses_some = (0..sinks.len())
            .any(|i| idx.flow_value(idx.source, sinks[i], &mask) + k[i] > before[i]);
        mask[p] = true;
        if !misses_some {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sufficient condition for a multicast factor: `f` is a `kv[i]`-CF of the
/// point-to-point network toward some sink `i`, and deleting `f` costs
/// exactly `kv[j]` units toward every sink `j`. Implies
/// [`verify_multicast_cf`].
pub fn multicast_sufficient(mn: &MulticastNetwork, f: &EdgeSet, kv: &KVector) -> Result<bool> {
    if kv.len() != mn.sinks().len() {
        return Err(Error::KVectorLength {
            got: kv.len(),
            want: mn.sinks().len(),
        });
    }
    if kv.components().iter().all(|&k| k == 0) {
        return Err(Error::KVectorZero);
    }
    if f.is_empty() {
        return Err(Error::EmptyEdgeSet);
    }
    let (_, sinks, _, before, after) = multicast_flows(mn, f)?;
    let k = kv.components();
    if (0..sinks.len()).any(|i| after[i] + k[i] != before[i]) {
        return Ok(false);
    }
    for i in 0..sinks.len() {
        if k[i] >= 1 && k[i] <= before[i] && verify_kcf(&mn.point(i), f, k[i])? {
            return Ok(true);
        }
    }
    Ok(false)
}
