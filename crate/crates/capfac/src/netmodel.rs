//! Network data model: directed multigraphs with unit edge capacities,
//! stable edge ids, a designated source and sink (or sink list), plus the
//! document formats the tools exchange.
//!
//! Networks are stored in canonical form — vertices sorted by name, edges
//! sorted by id — so structural equality coincides with semantic equality and
//! serialization is byte-stable.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Stable identifier of an edge. Ids survive every transformation; a derived
/// network never renumbers the edges it keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u32> for EdgeId {
    fn from(id: u32) -> Self {
        EdgeId(id)
    }
}

/// Name of a vertex. Any non-empty string token works; tools never invent
/// meaning from the name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(name: impl Into<String>) -> Self {
        VertexId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

/// A directed edge `tail -> head` with capacity 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn new(
        id: impl Into<EdgeId>,
        tail: impl Into<VertexId>,
        head: impl Into<VertexId>,
    ) -> Self {
        Edge {
            id: id.into(),
            tail: tail.into(),
            head: head.into(),
        }
    }
}

/// A set of edge ids, stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet {
    ids: Vec<EdgeId>,
}

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet::default()
    }

    pub fn from_ids(ids: impl IntoIterator<Item = impl Into<EdgeId>>) -> Self {
        let mut ids: Vec<EdgeId> = ids.into_iter().map(Into::into).collect();
        ids.sort_unstable();
        ids.dedup();
        EdgeSet { ids }
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.ids.binary_search(&id).is_ok()
    }

    pub fn insert(&mut self, id: EdgeId) {
        if let Err(at) = self.ids.binary_search(&id) {
            self.ids.insert(at, id);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ids.iter().copied()
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet::from_ids(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            ids: self
                .ids
                .iter()
                .copied()
                .filter(|id| !other.contains(*id))
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &EdgeSet) -> bool {
        self.iter().all(|id| other.contains(id))
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        EdgeSet::from_ids(iter)
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, id) in self.ids.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

/// A point-to-point network: a directed multigraph with unit capacities, one
/// source, and one sink. Self-loops are rejected; parallel edges are fine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    source: VertexId,
    sink: VertexId,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct NetworkDoc {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    source: VertexId,
    sink: VertexId,
}

impl Network {
    pub fn new(
        vertices: impl IntoIterator<Item = impl Into<VertexId>>,
        edges: impl IntoIterator<Item = Edge>,
        source: impl Into<VertexId>,
        sink: impl Into<VertexId>,
    ) -> Result<Self> {
        let source = source.into();
        let sink = sink.into();
        if source == sink {
            return Err(Error::SourceIsSink);
        }
        let mut vertices: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        vertices.sort();
        vertices.dedup();
        let known: HashSet<&VertexId> = vertices.iter().collect();
        for v in [&source, &sink] {
            if !known.contains(v) {
                return Err(Error::UnknownVertex(v.clone()));
            }
        }
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_by_key(|e| e.id);
        let mut seen = HashSet::new();
        for e in &edges {
            if !seen.insert(e.id) {
                return Err(Error::DuplicateEdgeId(e.id));
            }
            if e.tail == e.head {
                return Err(Error::SelfLoop(e.id));
            }
            for v in [&e.tail, &e.head] {
                if !known.contains(v) {
                    return Err(Error::UnknownVertex(v.clone()));
                }
            }
        }
        Ok(Network {
            vertices,
            edges,
            source,
            sink,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self) -> &VertexId {
        &self.source
    }

    pub fn sink(&self) -> &VertexId {
        &self.sink
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .ok()
            .map(|at| &self.edges[at])
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    /// All edge ids as a set.
    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet {
            ids: self.edges.iter().map(|e| e.id).collect(),
        }
    }

    pub fn max_edge_id(&self) -> Option<EdgeId> {
        self.edges.last().map(|e| e.id)
    }

    /// Parses the JSON document format:
    /// `{"vertices": [...], "edges": [{"id":1,"tail":"s","head":"v1"},...],
    ///   "source": "s", "sink": "t"}`.
    pub fn from_json(doc: &str) -> Result<Self> {
        let doc: NetworkDoc =
            serde_json::from_str(doc).map_err(|e| Error::Malformed(e.to_string()))?;
        Network::new(doc.vertices, doc.edges, doc.source, doc.sink)
    }

    /// Canonical JSON serialization: field order fixed, vertices sorted by
    /// name, edges sorted by id. Round-trips through [`Network::from_json`].
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.doc()).expect("network serialization cannot fail")
    }

    /// The serializable document view, for embedding in larger JSON outputs.
    pub(crate) fn doc(&self) -> NetworkDoc {
        NetworkDoc {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            source: self.source.clone(),
            sink: self.sink.clone(),
        }
    }

    /// Parses the whitespace edge-list format: a `source sink` header line
    /// followed by one `id tail head` line per edge. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Malformed("empty edge list".into()))?;
        let mut it = header.split_whitespace();
        let (source, sink) = match (it.next(), it.next(), it.next()) {
            (Some(s), Some(t), None) => (s.to_owned(), t.to_owned()),
            _ => {
                return Err(Error::Malformed(format!(
                    "bad header `{header}`: want `source sink`"
                )))
            }
        };
        let mut vertices: BTreeSet<String> = BTreeSet::new();
        vertices.insert(source.clone());
        vertices.insert(sink.clone());
        let mut edges = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [id, tail, head] = fields.as_slice() else {
                return Err(Error::Malformed(format!(
                    "bad edge line `{line}`: want `id tail head`"
                )));
            };
            let id: u32 = id
                .parse()
                .map_err(|_| Error::Malformed(format!("bad edge id `{id}`")))?;
            vertices.insert((*tail).to_owned());
            vertices.insert((*head).to_owned());
            edges.push(Edge::new(id, *tail, *head));
        }
        Network::new(vertices, edges, source, sink)
    }

    /// DOT rendering with edge ids as labels, for quick visualization.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                e.tail, e.head, e.id
            ));
        }
        out.push_str("}\n");
        out
    }

    /// Removes the given edges, keeping every vertex. Ids of the remaining
    /// edges are untouched.
    pub fn remove_edges(&self, f: &EdgeSet) -> Result<Network> {
        for id in f.iter() {
            if self.edge(id).is_none() {
                return Err(Error::UnknownEdge(id));
            }
        }
        Ok(Network {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .filter(|e| !f.contains(e.id))
                .cloned()
                .collect(),
            source: self.source.clone(),
            sink: self.sink.clone(),
        })
    }

    /// Keeps exactly the edges that can carry source-to-sink traffic — those
    /// whose tail is reachable from the source and whose head reaches the
    /// sink — plus the vertices incident to them (and the source and sink,
    /// always). Returns the pruned network and the set of removed edge ids.
    /// The maximum flow value is unchanged, and the operation is idempotent.
    pub fn normalize(&self) -> (Network, EdgeSet) {
        let from_source = self.reach(&self.source, false);
        let to_sink = self.reach(&self.sink, true);
        let keep = |e: &Edge| from_source.contains(&e.tail) && to_sink.contains(&e.head);
        let kept: Vec<Edge> = self.edges.iter().filter(|e| keep(e)).cloned().collect();
        let removed = EdgeSet::from_ids(self.edges.iter().filter(|e| !keep(e)).map(|e| e.id));
        let mut vertices: BTreeSet<VertexId> = kept
            .iter()
            .flat_map(|e| [e.tail.clone(), e.head.clone()])
            .collect();
        vertices.insert(self.source.clone());
        vertices.insert(self.sink.clone());
        let n = Network {
            vertices: vertices.into_iter().collect(),
            edges: kept,
            source: self.source.clone(),
            sink: self.sink.clone(),
        };
        (n, removed)
    }

    fn reach(&self, start: &VertexId, backward: bool) -> HashSet<VertexId> {
        let mut adj: HashMap<&VertexId, Vec<&VertexId>> = HashMap::new();
        for e in &self.edges {
            let (from, to) = if backward {
                (&e.head, &e.tail)
            } else {
                (&e.tail, &e.head)
            };
            adj.entry(from).or_default().push(to);
        }
        let mut seen: HashSet<VertexId> = HashSet::new();
        seen.insert(start.clone());
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &next in adj.get(v).into_iter().flatten() {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// True when the edge relation has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        self.kahn_order().is_some()
    }

    /// Assigns every vertex an integer label such that each edge goes from a
    /// smaller label to a larger one. Errors with [`Error::Cyclic`] when no
    /// such labeling exists.
    pub fn topological_labels(&self) -> Result<BTreeMap<VertexId, usize>> {
        let order = self.kahn_order().ok_or(Error::Cyclic)?;
        Ok(order.into_iter().enumerate().map(|(i, v)| (v, i)).collect())
    }

    fn kahn_order(&self) -> Option<Vec<VertexId>> {
        let index: HashMap<&VertexId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut indegree = vec![0usize; self.vertices.len()];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            let (t, h) = (index[&e.tail], index[&e.head]);
            indegree[h] += 1;
            out[t].push(h);
        }
        // Vertices are sorted by name, so draining a BTreeSet of indices
        // yields a deterministic, name-ordered labeling.
        let mut ready: BTreeSet<usize> = indegree
            .iter()
            .enumerate()
            .filter(|(_, &d)| d == 0)
            .map(|(i, _)| i)
            .collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(self.vertices[v].clone());
            for &h in &out[v] {
                indegree[h] -= 1;
                if indegree[h] == 0 {
                    ready.insert(h);
                }
            }
        }
        (order.len() == self.vertices.len()).then_some(order)
    }
}

/// A network with one source and an ordered list of sinks (repeats allowed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticastNetwork {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    source: VertexId,
    sinks: Vec<VertexId>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MulticastDoc {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
    source: VertexId,
    sinks: Vec<VertexId>,
}

impl MulticastNetwork {
    pub fn new(
        vertices: impl IntoIterator<Item = impl Into<VertexId>>,
        edges: impl IntoIterator<Item = Edge>,
        source: impl Into<VertexId>,
        sinks: impl IntoIterator<Item = impl Into<VertexId>>,
    ) -> Result<Self> {
        let sinks: Vec<VertexId> = sinks.into_iter().map(Into::into).collect();
        let (first, rest) = match sinks.split_first() {
            Some((first, rest)) => (first.clone(), rest.to_vec()),
            None => return Err(Error::NoSinks),
        };
        // Validate through the point-to-point constructor, then re-check the
        // remaining sinks against it.
        let n = Network::new(vertices, edges, source, first)?;
        for t in &rest {
            if !n.has_vertex(t) {
                return Err(Error::UnknownVertex(t.clone()));
            }
            if t == n.source() {
                return Err(Error::SourceIsSink);
            }
        }
        Ok(MulticastNetwork {
            vertices: n.vertices.clone(),
            edges: n.edges.clone(),
            source: n.source.clone(),
            sinks,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self) -> &VertexId {
        &self.source
    }

    pub fn sinks(&self) -> &[VertexId] {
        &self.sinks
    }

    /// The point-to-point network obtained by keeping only sink `i`.
    pub fn point(&self, i: usize) -> Network {
        Network {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            source: self.source.clone(),
            sink: self.sinks[i].clone(),
        }
    }

    pub fn from_json(doc: &str) -> Result<Self> {
        let doc: MulticastDoc =
            serde_json::from_str(doc).map_err(|e| Error::Malformed(e.to_string()))?;
        MulticastNetwork::new(doc.vertices, doc.edges, doc.source, doc.sinks)
    }

    pub fn to_json(&self) -> String {
        let doc = MulticastDoc {
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            source: self.source.clone(),
            sinks: self.sinks.clone(),
        };
        serde_json::to_string(&doc).expect("network serialization cannot fail")
    }
}
