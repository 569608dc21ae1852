//! Crate-internal compact graph view. Maps vertex names to dense indices and
//! edges to positions in id order, and hosts the unit-capacity max-flow and
//! reachability primitives everything else builds on. Edge subsets are passed
//! around as `disabled` masks indexed by position, which lets enumeration
//! loops evaluate thousands of deletions without rebuilding anything.

use std::collections::{HashMap, VecDeque};

use crate::netmodel::{EdgeId, Network, VertexId};

pub(crate) struct Indexed {
    pub vertex_count: usize,
    pub source: usize,
    pub sink: usize,
    /// Tail vertex index per edge position (positions follow id order).
    pub tail: Vec<usize>,
    pub head: Vec<usize>,
    /// Outgoing edge positions per vertex, ascending — so every traversal
    /// breaks ties toward the lowest edge id.
    pub out: Vec<Vec<usize>>,
    pub inc: Vec<Vec<usize>>,
    pub ids: Vec<EdgeId>,
    vmap: HashMap<String, usize>,
}

impl Indexed {
    pub fn new(n: &Network) -> Self {
        let vmap: HashMap<String, usize> = n
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str().to_owned(), i))
            .collect();
        let m = n.edges().len();
        let mut tail = Vec::with_capacity(m);
        let mut head = Vec::with_capacity(m);
        let mut ids = Vec::with_capacity(m);
        let mut out = vec![Vec::new(); n.vertices().len()];
        let mut inc = vec![Vec::new(); n.vertices().len()];
        for (pos, e) in n.edges().iter().enumerate() {
            let t = vmap[e.tail.as_str()];
            let h = vmap[e.head.as_str()];
            tail.push(t);
            head.push(h);
            ids.push(e.id);
            out[t].push(pos);
            inc[h].push(pos);
        }
        Indexed {
            vertex_count: n.vertices().len(),
            source: vmap[n.source().as_str()],
            sink: vmap[n.sink().as_str()],
            tail,
            head,
            out,
            inc,
            ids,
            vmap,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.ids.len()
    }

    pub fn vertex_index(&self, v: &VertexId) -> Option<usize> {
        self.vmap.get(v.as_str()).copied()
    }

    pub fn position_of(&self, id: EdgeId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn no_mask(&self) -> Vec<bool> {
        vec![false; self.edge_count()]
    }

    /// Maximum flow between `s` and `t` over the edges not masked out,
    /// returning the value and the set of saturated edges. Augments along
    /// shortest residual paths (BFS), deterministically preferring lower edge
    /// ids, so repeated runs yield the same flow.
    pub fn flow_used(&self, s: usize, t: usize, disabled: &[bool]) -> (usize, Vec<bool>) {
        let mut used = vec![false; self.edge_count()];
        let mut value = 0;
        // parent[v] = (edge position, traversed forward?)
        let mut parent: Vec<Option<(usize, bool)>> = vec![None; self.vertex_count];
        let mut queue = VecDeque::new();
        loop {
            parent.iter_mut().for_each(|p| *p = None);
            parent[s] = Some((usize::MAX, true));
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for &e in &self.out[u] {
                    if disabled[e] || used[e] {
                        continue;
                    }
                    let v = self.head[e];
                    if parent[v].is_none() {
                        parent[v] = Some((e, true));
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
                for &e in &self.inc[u] {
                    if disabled[e] || !used[e] {
                        continue;
                    }
                    let v = self.tail[e];
                    if parent[v].is_none() {
                        parent[v] = Some((e, false));
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if parent[t].is_none() {
                return (value, used);
            }
            let mut v = t;
            while v != s {
                let (e, forward) = parent[v].expect("path traced from reached vertex");
                used[e] = forward;
                v = if forward { self.tail[e] } else { self.head[e] };
            }
            value += 1;
        }
    }

    pub fn flow_value(&self, s: usize, t: usize, disabled: &[bool]) -> usize {
        self.flow_used(s, t, disabled).0
    }

    /// Vertices reachable from `from` over enabled edges.
    pub fn forward_reach(&self, from: usize, disabled: &[bool]) -> Vec<bool> {
        self.reach(from, disabled, false)
    }

    /// Vertices that can reach `to` over enabled edges.
    pub fn backward_reach(&self, to: usize, disabled: &[bool]) -> Vec<bool> {
        self.reach(to, disabled, true)
    }

    fn reach(&self, start: usize, disabled: &[bool], backward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let adj = if backward { &self.inc[u] } else { &self.out[u] };
            for &e in adj {
                if disabled[e] {
                    continue;
                }
                let v = if backward { self.tail[e] } else { self.head[e] };
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Reachability restricted to a vertex subset: only edges with both
    /// endpoints allowed are traversed.
    pub fn reach_within(&self, start: usize, allowed: &[bool], backward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        if !allowed[start] {
            return seen;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let adj = if backward { &self.inc[u] } else { &self.out[u] };
            for &e in adj {
                let v = if backward { self.tail[e] } else { self.head[e] };
                if allowed[v] && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Vertices reachable from `from` in the residual graph of a flow given
    /// by its saturated-edge set: unsaturated edges are traversed forward,
    /// saturated ones backward.
    pub fn residual_reach(&self, from: usize, used: &[bool], disabled: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.out[u] {
                if disabled[e] || used[e] {
                    continue;
                }
                let v = self.head[e];
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
            for &e in &self.inc[u] {
                if disabled[e] || !used[e] {
                    continue;
                }
                let v = self.tail[e];
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}
