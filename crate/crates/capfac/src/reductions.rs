//! Constructions connecting capacity factors to other problems: the
//! NAESAT-to-maximum-capacity-factor gadget behind the hardness result, a
//! rank-query lower-bound network, and the line-network correspondence
//! between edge and vertex capacity factors.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cfcore::verify_kcf;
use crate::netmodel::{Edge, EdgeId, EdgeSet, Network, VertexId};
use crate::{maxflow, Error, Result};

/// A literal over variable `x{var}` (1-based), possibly negated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn new(var: usize, negated: bool) -> Self {
        Literal { var, negated }
    }

    /// The vertex name this literal gets in the gadget: `x3` or `-x3`.
    pub fn vertex_name(&self) -> String {
        if self.negated {
            format!("-x{}", self.var)
        } else {
            format!("x{}", self.var)
        }
    }
}

/// A not-all-equal satisfiability instance: 3-literal clauses over variables
/// `x1..xn`. A clause is satisfied when it contains both a true and a false
/// literal. Clauses repeating a single literal three times are rejected —
/// they can never be satisfied and the gadget construction assumes them away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaesatInstance {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
}

impl NaesatInstance {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::Malformed("instance has no clauses".into()));
        }
        for (i, clause) in clauses.iter().enumerate() {
            for lit in clause {
                if lit.var < 1 || lit.var > num_vars {
                    return Err(Error::Malformed(format!(
                        "clause {} references x{} but only x1..x{} exist",
                        i + 1,
                        lit.var,
                        num_vars
                    )));
                }
            }
            if clause[0] == clause[1] && clause[1] == clause[2] {
                return Err(Error::DegenerateClause(i + 1));
            }
        }
        Ok(NaesatInstance { num_vars, clauses })
    }

    /// Parses the DIMACS-like format: a `p naesat <n> <m>` header followed by
    /// `m` lines of three signed integers (sign = polarity, magnitude =
    /// variable index). Lines starting with `c` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('c'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Malformed("missing header".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (num_vars, num_clauses) = match fields.as_slice() {
            ["p", "naesat", n, m] => (
                n.parse::<usize>()
                    .map_err(|_| Error::Malformed(format!("bad variable count {n:?}")))?,
                m.parse::<usize>()
                    .map_err(|_| Error::Malformed(format!("bad clause count {m:?}")))?,
            ),
            _ => {
                return Err(Error::Malformed(format!(
                    "expected header `p naesat <n> <m>`, got {header:?}"
                )))
            }
        };
        let mut clauses = Vec::with_capacity(num_clauses);
        for line in lines {
            let mut clause = [Literal::new(1, false); 3];
            let raw: Vec<&str> = line.split_whitespace().collect();
            if raw.len() != 3 {
                return Err(Error::Malformed(format!(
                    "clause line needs exactly three literals, got {line:?}"
                )));
            }
            for (slot, tok) in clause.iter_mut().zip(raw) {
                let value = tok
                    .parse::<i64>()
                    .map_err(|_| Error::Malformed(format!("bad literal {tok:?}")))?;
                if value == 0 {
                    return Err(Error::Malformed("literal 0 is not allowed".into()));
                }
                *slot = Literal::new(value.unsigned_abs() as usize, value < 0);
            }
            clauses.push(clause);
        }
        if clauses.len() != num_clauses {
            return Err(Error::Malformed(format!(
                "header promises {num_clauses} clauses, found {}",
                clauses.len()
            )));
        }
        NaesatInstance::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Whether `assignment` (index 0 = x1) gives every clause both a true
    /// and a false literal.
    pub fn is_nae_satisfied_by(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.num_vars, "assignment length");
        self.clauses.iter().all(|clause| {
            let values = clause.map(|l| assignment[l.var - 1] != l.negated);
            values.contains(&true) && values.contains(&false)
        })
    }
}

/// What an edge of the gadget is for. Crossing edges encode clauses, forcing
/// edges pin the bulk structure of every maximum cut, connecting edges tie
/// the terminals to the literal vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeRole {
    Crossing,
    Forcing,
    Connecting,
}

/// The gadget produced by [`reduce_naesat`]: the instance is NAE-satisfiable
/// exactly when the network has a capacity factor of size at least `k`.
#[derive(Debug, Clone)]
pub struct ReductionOutput {
    pub network: Network,
    pub k: usize,
    pub vertex_map: BTreeMap<String, VertexId>,
    pub edge_roles: BTreeMap<EdgeId, EdgeRole>,
}

/// Builds the hardness gadget for an instance with `n` variables and `m`
/// clauses. Vertices are `s, s', t', t` plus one vertex per literal. Each
/// "bidirectional" link is two antiparallel unit edges:
///
/// * connecting — `s→s'`, `t'→t`, and `s'→x, x→t'` for every literal vertex;
/// * forcing — 4m bidirectional links between each `x_i` and `-x_i`, plus
///   6mn parallel edges `s'→t'`;
/// * crossing — per clause, bidirectional links between its three literal
///   pairs, skipping pairs of identical literals.
///
/// The threshold is `k = 10mn + 2m + 2n`. The single `s→s'` edge caps the
/// max flow at 1, so capacity factors coincide with partially connected cuts.
pub fn reduce_naesat(t: &NaesatInstance) -> ReductionOutput {
    let n = t.num_vars();
    let m = t.clauses().len();
    let mut vertices = vec![
        "s".to_string(),
        "s'".to_string(),
        "t'".to_string(),
        "t".to_string(),
    ];
    for i in 1..=n {
        vertices.push(format!("x{i}"));
        vertices.push(format!("-x{i}"));
    }
    let mut edges = Vec::new();
    let mut edge_roles = BTreeMap::new();
    let mut add = |edges: &mut Vec<Edge>, tail: &str, head: &str, role: EdgeRole| {
        let id = EdgeId(edges.len() as u32 + 1);
        edges.push(Edge::new(id, tail, head));
        edge_roles.insert(id, role);
    };
    add(&mut edges, "s", "s'", EdgeRole::Connecting);
    add(&mut edges, "t'", "t", EdgeRole::Connecting);
    for i in 1..=n {
        let pos = format!("x{i}");
        let neg = format!("-x{i}");
        add(&mut edges, "s'", &pos, EdgeRole::Connecting);
        add(&mut edges, "s'", &neg, EdgeRole::Connecting);
        add(&mut edges, &pos, "t'", EdgeRole::Connecting);
        add(&mut edges, &neg, "t'", EdgeRole::Connecting);
    }
    for i in 1..=n {
        let pos = format!("x{i}");
        let neg = format!("-x{i}");
        for _ in 0..4 * m {
            add(&mut edges, &pos, &neg, EdgeRole::Forcing);
            add(&mut edges, &neg, &pos, EdgeRole::Forcing);
        }
    }
    for _ in 0..6 * m * n {
        add(&mut edges, "s'", "t'", EdgeRole::Forcing);
    }
    for clause in t.clauses() {
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            if clause[a] == clause[b] {
                continue;
            }
            let u = clause[a].vertex_name();
            let v = clause[b].vertex_name();
            add(&mut edges, &u, &v, EdgeRole::Crossing);
            add(&mut edges, &v, &u, EdgeRole::Crossing);
        }
    }
    let vertex_map: BTreeMap<String, VertexId> = vertices
        .iter()
        .map(|name| (name.clone(), VertexId::new(name.clone())))
        .collect();
    let network = Network::new(vertices, edges, "s", "t").expect("gadget is well formed");
    ReductionOutput {
        network,
        k: 10 * m * n + 2 * m + 2 * n,
        vertex_map,
        edge_roles,
    }
}

/// Exhaustive NAE-satisfiability check, ascending through assignments
/// (bit `i` of the counter is `x_{i+1}`). Intended as an oracle for small
/// instances.
pub fn naesat_brute_force(t: &NaesatInstance) -> Option<Vec<bool>> {
    let n = t.num_vars();
    assert!(n <= 20, "brute force is for small instances");
    (0u32..1 << n)
        .map(|bits| (0..n).map(|i| bits >> i & 1 == 1).collect::<Vec<bool>>())
        .find(|a| t.is_nae_satisfied_by(a))
}

/// Converts an NAE-satisfying assignment into a capacity factor of the
/// gadget: the crossing edge set of the bipartition that puts `s`, `s'` and
/// the true literal vertices on the source side. The result always has size
/// exactly `k` for NAE assignments; anything else is rejected.
pub fn assignment_to_factor(r: &ReductionOutput, assignment: &[bool]) -> Result<EdgeSet> {
    let n: usize = r
        .vertex_map
        .keys()
        .filter(|name| name.starts_with('x'))
        .count();
    if assignment.len() != n {
        return Err(Error::Malformed(format!(
            "assignment has {} values but the instance has {n} variables",
            assignment.len()
        )));
    }
    let mut side: BTreeSet<&str> = BTreeSet::from(["s", "s'"]);
    let mut names = Vec::new();
    for (i, &value) in assignment.iter().enumerate() {
        names.push(if value {
            format!("x{}", i + 1)
        } else {
            format!("-x{}", i + 1)
        });
    }
    side.extend(names.iter().map(String::as_str));
    let cut: EdgeSet = r
        .network
        .edges()
        .iter()
        .filter(|e| side.contains(e.tail.as_str()) && !side.contains(e.head.as_str()))
        .map(|e| e.id)
        .collect();
    if cut.len() != r.k {
        return Err(Error::NotNaeAssignment);
    }
    Ok(cut)
}

/// Wraps a network so that the rank of one probe edge reveals the original
/// max-flow value: `N'` adds a fresh source `s'` and sink `t'`, a probe edge
/// `s'→t`, the lone sink edge `t→t'`, and `|E|` parallel edges `s'→s`.
/// `C_{N'}(s',t')` is 1, and the cheapest 1-CF through the probe must also
/// sever every original source-sink path.
pub fn cr_bound_network(n: &Network) -> (Network, EdgeId) {
    let fresh = |base: &str| {
        let mut name = base.to_string();
        while n.has_vertex(&VertexId::new(name.clone())) {
            name.push('\'');
        }
        name
    };
    let s_new = fresh("s'");
    let t_new = fresh("t'");
    let mut vertices: Vec<String> = n
        .vertices()
        .iter()
        .map(|v| v.as_str().to_string())
        .collect();
    vertices.push(s_new.clone());
    vertices.push(t_new.clone());
    let mut edges = n.edges().to_vec();
    let mut next = n.max_edge_id().map_or(1, |EdgeId(max)| max + 1);
    let probe = EdgeId(next);
    edges.push(Edge::new(probe, s_new.as_str(), n.sink().as_str()));
    next += 1;
    edges.push(Edge::new(next, n.sink().as_str(), t_new.as_str()));
    for _ in 0..n.edges().len() {
        next += 1;
        edges.push(Edge::new(next, s_new.as_str(), n.source().as_str()));
    }
    let wrapped = Network::new(vertices, edges, s_new, t_new).expect("wrapper is well formed");
    (wrapped, probe)
}

/// A network together with its line network and the translation tables
/// between them.
#[derive(Debug, Clone)]
pub struct LineNetworkMap {
    pub network: Network,
    pub base: Network,
    /// base edge → its two stand-in vertices (entry side, exit side)
    pub fwd: BTreeMap<EdgeId, (VertexId, VertexId)>,
    /// base edge → the line-network edge joining its two stand-ins
    pub internal_edge: BTreeMap<EdgeId, EdgeId>,
}

/// Splits every edge `e` of `n` into vertices `e{id}_in → e{id}_out` and
/// wires them by adjacency: an edge `e{a}_out → e{b}_in` whenever `a`'s head
/// is `b`'s tail, plus `s' → e_in` for edges leaving the source and
/// `e_out → t'` for edges entering the sink. Unit capacities make the
/// construction flow-preserving, and edge capacity factors of `n` correspond
/// to vertex capacity factors of the result.
pub fn line_network(n: &Network) -> LineNetworkMap {
    let mut vertices = vec!["s'".to_string(), "t'".to_string()];
    let mut fwd = BTreeMap::new();
    for e in n.edges() {
        let v_in = format!("e{}_in", e.id);
        let v_out = format!("e{}_out", e.id);
        fwd.insert(
            e.id,
            (VertexId::new(v_in.clone()), VertexId::new(v_out.clone())),
        );
        vertices.push(v_in);
        vertices.push(v_out);
    }
    let mut edges = Vec::new();
    let mut internal_edge = BTreeMap::new();
    let mut next = 0u32;
    for e in n.edges() {
        next += 1;
        internal_edge.insert(e.id, EdgeId(next));
        let (v_in, v_out) = &fwd[&e.id];
        edges.push(Edge::new(next, v_in.as_str(), v_out.as_str()));
    }
    for a in n.edges() {
        for b in n.edges() {
            if a.head == b.tail {
                next += 1;
                edges.push(Edge::new(
                    next,
                    fwd[&a.id].1.as_str(),
                    fwd[&b.id].0.as_str(),
                ));
            }
        }
    }
    for e in n.edges() {
        if e.tail == *n.source() {
            next += 1;
            edges.push(Edge::new(next, "s'", fwd[&e.id].0.as_str()));
        }
    }
    for e in n.edges() {
        if e.head == *n.sink() {
            next += 1;
            edges.push(Edge::new(next, fwd[&e.id].1.as_str(), "t'"));
        }
    }
    let network = Network::new(vertices, edges, "s'", "t'").expect("line network is well formed");
    LineNetworkMap {
        network,
        base: n.clone(),
        fwd,
        internal_edge,
    }
}

/// Whether deleting the vertex set `vs` (with every incident edge) drops the
/// max flow while deleting any proper subset does not. The source and sink
/// are off limits.
pub fn vertex_cf_verify(n: &Network, vs: &BTreeSet<VertexId>) -> Result<bool> {
    if vs.is_empty() || vs.contains(n.source()) || vs.contains(n.sink()) {
        return Err(Error::BadVertexSet);
    }
    for v in vs {
        if !n.has_vertex(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
    }
    let incident = |keep_out: &VertexId| -> EdgeSet {
        n.edges()
            .iter()
            .filter(|e| {
                vs.contains(&e.tail) && e.tail != *keep_out
                    || vs.contains(&e.head) && e.head != *keep_out
            })
            .map(|e| e.id)
            .collect()
    };
    let before = maxflow::max_flow(n).value();
    let all: EdgeSet = n
        .edges()
        .iter()
        .filter(|e| vs.contains(&e.tail) || vs.contains(&e.head))
        .map(|e| e.id)
        .collect();
    let after = maxflow::max_flow(&n.remove_edges(&all)?).value();
    if after >= before {
        return Ok(false);
    }
    // Monotonicity again: only the maximal proper subsets need checking.
    for v in vs {
        let kept = maxflow::max_flow(&n.remove_edges(&incident(v))?).value();
        if kept < before {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which stand-in vertex to pick when translating an edge factor into a
/// vertex factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointChoice {
    In,
    Out,
}

/// Translates a 1-CF of the base network into a vertex capacity factor of
/// the line network, picking `e_in` or `e_out` per edge as directed by
/// `choices` (aligned with `f` in id order). Any choice vector works.
pub fn edge_cf_to_vertex_cf(
    map: &LineNetworkMap,
    f: &EdgeSet,
    choices: &[EndpointChoice],
) -> Result<BTreeSet<VertexId>> {
    if choices.len() != f.len() {
        return Err(Error::ChoiceLength {
            got: choices.len(),
            want: f.len(),
        });
    }
    if !verify_kcf(&map.base, f, 1)? {
        return Err(Error::NotACapacityFactor { k: 1 });
    }
    Ok(f.iter()
        .zip(choices)
        .map(|(id, choice)| {
            let (v_in, v_out) = &map.fwd[&id];
            match choice {
                EndpointChoice::In => v_in.clone(),
                EndpointChoice::Out => v_out.clone(),
            }
        })
        .collect())
}

/// Translates a vertex capacity factor of the line network back into a 1-CF
/// of the base network by collapsing each stand-in vertex to its edge.
pub fn vertex_cf_to_edge_cf(map: &LineNetworkMap, vs: &BTreeSet<VertexId>) -> Result<EdgeSet> {
    if !vertex_cf_verify(&map.network, vs)? {
        return Err(Error::NotAVertexCapacityFactor);
    }
    let mut owner: BTreeMap<&VertexId, EdgeId> = BTreeMap::new();
    for (id, (v_in, v_out)) in &map.fwd {
        owner.insert(v_in, *id);
        owner.insert(v_out, *id);
    }
    Ok(vs.iter().map(|v| owner[v]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfcore::{
        capacity_rank, enumerate_kcfs, is_partially_connected_cut, max_partially_connected_cut,
    };
    use crate::figures;
    use crate::maxflow::{max_flow, min_cut, reachable};

    fn lit(v: i64) -> Literal {
        Literal::new(v.unsigned_abs() as usize, v < 0)
    }

    fn clause(a: i64, b: i64, c: i64) -> [Literal; 3] {
        [lit(a), lit(b), lit(c)]
    }

    /// (x1∨x2∨x3)∧(x1∨x3∨¬x3)∧(¬x1∨¬x2∨x3)
    fn three_by_three() -> NaesatInstance {
        NaesatInstance::new(
            3,
            vec![clause(1, 2, 3), clause(1, 3, -3), clause(-1, -2, 3)],
        )
        .unwrap()
    }

    #[test]
    fn parse_roundtrip_and_errors() {
        let text = "c a comment\np naesat 3 2\n1 2 3\nc another\n-1 -2 3\n";
        let t = NaesatInstance::parse(text).unwrap();
        assert_eq!(t.num_vars(), 3);
        assert_eq!(t.clauses(), &[clause(1, 2, 3), clause(-1, -2, 3)]);

        for bad in [
            "",
            "p cnf 3 2\n1 2 3\n-1 -2 3",
            "p naesat 3 2\n1 2 3",
            "p naesat 3 1\n1 2 3\n-1 -2 3",
            "p naesat 3 1\n1 2",
            "p naesat 3 1\n1 2 x",
            "p naesat 3 1\n1 2 0",
            "p naesat 2 1\n1 2 3",
            "p naesat 0 0\n",
        ] {
            assert!(
                matches!(NaesatInstance::parse(bad), Err(Error::Malformed(_))),
                "{bad:?}"
            );
        }
        assert_eq!(
            NaesatInstance::parse("p naesat 1 1\n1 1 1").unwrap_err(),
            Error::DegenerateClause(1)
        );
    }

    #[test]
    fn nae_check_needs_mixed_values() {
        let t = NaesatInstance::new(2, vec![clause(1, 1, 2)]).unwrap();
        assert!(t.is_nae_satisfied_by(&[true, false]));
        assert!(!t.is_nae_satisfied_by(&[true, true]));
        // x∨¬x∨y is satisfied by anything
        let t = NaesatInstance::new(2, vec![clause(1, -1, 2)]).unwrap();
        assert!(t.is_nae_satisfied_by(&[true, true]));
        assert!(t.is_nae_satisfied_by(&[false, false]));
    }

    #[test]
    fn brute_force_oracle() {
        let t = NaesatInstance::new(3, vec![clause(1, 2, 3)]).unwrap();
        let a = naesat_brute_force(&t).unwrap();
        assert!(t.is_nae_satisfied_by(&a));

        let t = three_by_three();
        let a = naesat_brute_force(&t).unwrap();
        assert!(t.is_nae_satisfied_by(&a));
        assert!(t.is_nae_satisfied_by(&[true, false, true]));

        // x≠y and x≠¬y cannot both hold
        let t = NaesatInstance::new(2, vec![clause(1, 1, 2), clause(1, 1, -2)]).unwrap();
        assert_eq!(naesat_brute_force(&t), None);
    }

    #[test]
    fn gadget_shape() {
        let r = reduce_naesat(&three_by_three());
        assert_eq!(r.k, 10 * 9 + 2 * 3 + 2 * 3);
        assert_eq!(r.network.vertices().len(), 10);
        assert_eq!(r.network.edges().len(), 158);
        assert_eq!(max_flow(&r.network).value(), 1);
        assert!(r.vertex_map.contains_key("s'"));
        assert!(r.vertex_map.contains_key("-x2"));
        let crossing = r
            .edge_roles
            .values()
            .filter(|role| **role == EdgeRole::Crossing)
            .count();
        assert_eq!(crossing, 18);
        let forcing = r
            .edge_roles
            .values()
            .filter(|role| **role == EdgeRole::Forcing)
            .count();
        assert_eq!(forcing, 8 * 3 * 3 + 6 * 3 * 3);
    }

    #[test]
    fn repeated_literals_shrink_the_crossing_family() {
        // (x∨x∨y) keeps only two of the three literal pairs
        let t = NaesatInstance::new(2, vec![clause(1, 1, 2)]).unwrap();
        let r = reduce_naesat(&t);
        let crossing = r
            .edge_roles
            .values()
            .filter(|role| **role == EdgeRole::Crossing)
            .count();
        assert_eq!(crossing, 4);
    }

    #[test]
    fn single_clause_threshold_is_reached() {
        let t = NaesatInstance::new(3, vec![clause(1, 2, 3)]).unwrap();
        let r = reduce_naesat(&t);
        assert_eq!(r.k, 38);
        let best = max_partially_connected_cut(&r.network).unwrap();
        assert_eq!(best.len(), 38);
    }

    #[test]
    fn maximum_cuts_respect_the_forcing_structure() {
        let t = NaesatInstance::new(2, vec![clause(1, 1, 2)]).unwrap();
        let r = reduce_naesat(&t);
        let best = max_partially_connected_cut(&r.network).unwrap();
        assert_eq!(best.len(), r.k);
        let rest = r.network.remove_edges(&best).unwrap();
        let side = |name: &str| reachable(&rest, r.network.source(), &VertexId::new(name));
        assert!(side("s'").unwrap());
        assert!(!side("t'").unwrap());
        for i in 1..=2 {
            assert_ne!(
                side(&format!("x{i}")).unwrap(),
                side(&format!("-x{i}")).unwrap(),
                "x{i} and -x{i} must sit on opposite sides"
            );
        }
    }

    #[test]
    fn assignments_become_cuts() {
        let r = reduce_naesat(&three_by_three());
        let f = assignment_to_factor(&r, &[true, false, true]).unwrap();
        assert_eq!(f.len(), r.k);
        assert!(is_partially_connected_cut(&r.network, &f).unwrap());
        let crossing_members = f
            .iter()
            .filter(|id| r.edge_roles[id] == EdgeRole::Crossing)
            .count();
        assert_eq!(crossing_members, 2 * 3, "two crossing edges per clause");

        let complement = assignment_to_factor(&r, &[false, true, false]).unwrap();
        assert_eq!(complement.len(), r.k);
        assert_ne!(complement, f);

        // x1=x2=x3=true leaves the first clause all on one side
        assert_eq!(
            assignment_to_factor(&r, &[true, true, true]).unwrap_err(),
            Error::NotNaeAssignment
        );
        assert!(matches!(
            assignment_to_factor(&r, &[true, false]).unwrap_err(),
            Error::Malformed(_)
        ));
    }

    #[test]
    fn rank_wrapper_shape() {
        let (wrapped, probe) = cr_bound_network(&figures::fig2());
        assert_eq!(wrapped.vertices().len(), 8);
        assert_eq!(wrapped.edges().len(), 16);
        assert_eq!(max_flow(&wrapped).value(), 1);
        assert_eq!(wrapped.edge(probe).unwrap().head.as_str(), "t");
        assert_eq!(wrapped.source().as_str(), "s'");
    }

    #[test]
    fn rank_wrapper_renames_clashing_terminals() {
        let n = Network::new(
            ["s", "t", "s'", "t'"],
            [
                Edge::new(1, "s", "s'"),
                Edge::new(2, "s'", "t'"),
                Edge::new(3, "t'", "t"),
            ],
            "s",
            "t",
        )
        .unwrap();
        let (wrapped, _) = cr_bound_network(&n);
        assert_eq!(wrapped.source().as_str(), "s''");
        assert_eq!(wrapped.sink().as_str(), "t''");
        assert_eq!(max_flow(&wrapped).value(), 1);
    }

    #[test]
    fn probe_rank_reveals_the_original_flow_value() {
        // The cheapest 1-CF through the probe is the probe plus a minimum cut
        // of the original network, so its size is the original max flow plus
        // one. Verified against exhaustive enumeration per network.
        let nets = [
            figures::fig2(),
            figures::fig4(),
            figures::fig7(),
            figures::fig1(2),
            Network::new(["a", "b"], [Edge::new(1, "a", "b")], "a", "b").unwrap(),
        ];
        for n in nets {
            let flow = max_flow(&n).value();
            let (wrapped, probe) = cr_bound_network(&n);
            // no factor of size ≤ flow touches the probe…
            let small = enumerate_kcfs(&wrapped, 1, Some(flow)).unwrap();
            assert!(small.iter().all(|f| !f.contains(probe)));
            // …while probe + min cut is a factor
            let candidate = min_cut(&n).union(&EdgeSet::from_ids([probe]));
            assert!(verify_kcf(&wrapped, &candidate, 1).unwrap());
            let rank = capacity_rank(&wrapped, probe).unwrap();
            assert_eq!(rank.rank, Some(flow + 1), "on {}", n.to_dot());
        }
    }

    #[test]
    fn line_network_of_the_two_route_example() {
        let map = line_network(&figures::fig7());
        assert_eq!(map.network.vertices().len(), 16);
        assert_eq!(max_flow(&map.network).value(), 2);
        let (v_in, v_out) = &map.fwd[&EdgeId(3)];
        assert_eq!(v_in.as_str(), "e3_in");
        assert_eq!(v_out.as_str(), "e3_out");
        let internal = map.network.edge(map.internal_edge[&EdgeId(3)]).unwrap();
        assert_eq!(internal.tail.as_str(), "e3_in");
        assert_eq!(internal.head.as_str(), "e3_out");
        let from_source = map
            .network
            .edges()
            .iter()
            .filter(|e| e.tail.as_str() == "s'")
            .count();
        let into_sink = map
            .network
            .edges()
            .iter()
            .filter(|e| e.head.as_str() == "t'")
            .count();
        assert_eq!((from_source, into_sink), (2, 3));
    }

    #[test]
    fn line_network_of_a_single_edge_is_a_path() {
        let n = Network::new(["a", "b"], [Edge::new(7, "a", "b")], "a", "b").unwrap();
        let map = line_network(&n);
        assert_eq!(map.network.vertices().len(), 4);
        assert_eq!(map.network.edges().len(), 3);
        assert_eq!(max_flow(&map.network).value(), 1);
    }

    #[test]
    fn line_network_preserves_flow_on_the_examples() {
        for n in [
            figures::fig1(3),
            figures::fig2(),
            figures::fig3(),
            figures::fig4(),
            figures::fig5(),
            figures::fig7(),
        ] {
            let map = line_network(&n);
            assert_eq!(max_flow(&map.network).value(), max_flow(&n).value());
        }
    }

    #[test]
    fn vertex_factor_verification() {
        let map = line_network(&figures::fig7());
        let single: BTreeSet<VertexId> = [VertexId::new("e1_in")].into();
        assert!(vertex_cf_verify(&map.network, &single).unwrap());
        let pair: BTreeSet<VertexId> = [VertexId::new("e3_out"), VertexId::new("e5_in")].into();
        assert!(vertex_cf_verify(&map.network, &pair).unwrap());
        // deleting e4's stand-in reroutes through the other branch
        let dud: BTreeSet<VertexId> = [VertexId::new("e4_in")].into();
        assert!(!vertex_cf_verify(&map.network, &dud).unwrap());

        assert_eq!(
            vertex_cf_verify(&map.network, &BTreeSet::new()).unwrap_err(),
            Error::BadVertexSet
        );
        let terminal: BTreeSet<VertexId> = [VertexId::new("s'")].into();
        assert_eq!(
            vertex_cf_verify(&map.network, &terminal).unwrap_err(),
            Error::BadVertexSet
        );
        let ghost: BTreeSet<VertexId> = [VertexId::new("nope")].into();
        assert_eq!(
            vertex_cf_verify(&map.network, &ghost).unwrap_err(),
            Error::UnknownVertex(VertexId::new("nope"))
        );
    }

    #[test]
    fn off_route_vertices_never_verify() {
        let n = Network::new(
            ["s", "t", "u", "w"],
            [Edge::new(1, "s", "t"), Edge::new(2, "u", "w")],
            "s",
            "t",
        )
        .unwrap();
        let map = line_network(&n);
        let vs: BTreeSet<VertexId> = [VertexId::new("e2_in")].into();
        assert!(!vertex_cf_verify(&map.network, &vs).unwrap());
    }

    #[test]
    fn factor_translation_round_trips() {
        let map = line_network(&figures::fig7());
        for f in enumerate_kcfs(&figures::fig7(), 1, None).unwrap() {
            // every in/out choice vector yields a vertex factor
            for bits in 0..1u32 << f.len() {
                let choices: Vec<EndpointChoice> = (0..f.len())
                    .map(|i| {
                        if bits >> i & 1 == 1 {
                            EndpointChoice::Out
                        } else {
                            EndpointChoice::In
                        }
                    })
                    .collect();
                let vs = edge_cf_to_vertex_cf(&map, &f, &choices).unwrap();
                assert!(vertex_cf_verify(&map.network, &vs).unwrap(), "{f} / {vs:?}");
                assert_eq!(vertex_cf_to_edge_cf(&map, &vs).unwrap(), f);
            }
        }
    }

    #[test]
    fn factor_translation_rejects_non_factors() {
        let map = line_network(&figures::fig7());
        let not_factor = EdgeSet::from_ids([4u32]);
        assert_eq!(
            edge_cf_to_vertex_cf(&map, &not_factor, &[EndpointChoice::In]).unwrap_err(),
            Error::NotACapacityFactor { k: 1 }
        );
        assert_eq!(
            edge_cf_to_vertex_cf(&map, &EdgeSet::from_ids([1u32]), &[]).unwrap_err(),
            Error::ChoiceLength { got: 0, want: 1 }
        );
        let vs: BTreeSet<VertexId> = [VertexId::new("e4_in")].into();
        assert_eq!(
            vertex_cf_to_edge_cf(&map, &vs).unwrap_err(),
            Error::NotAVertexCapacityFactor
        );
    }
}
