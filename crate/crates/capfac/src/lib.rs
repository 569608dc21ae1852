//! Capacity-factor analysis for directed networks with unit edge capacities.
//!
//! A *capacity factor* of order `k` (a `k`-CF) is a minimal set of edges whose
//! removal lowers the source-sink maximum flow by at least `k`: deleting the
//! whole set costs at least `k` units of flow, while deleting any proper
//! subset costs strictly less. Order-1 factors single out the edges whose loss
//! can hurt throughput at all; the union of all 1-CFs is the *D-set* and its
//! complement the *H-set*. The library computes these objects exactly:
//!
//! * [`netmodel`] — network representation, parsing, serialization, pruning;
//! * [`maxflow`] — unit-capacity maximum flow with path witnesses, residual
//!   graphs, canonical minimum cuts;
//! * [`classify`] — D-set/H-set classification in polynomial time;
//! * [`cfcore`] — verification, enumeration, membership tests, capacity
//!   ranks, factor surgery (extension and splitting), partially connected
//!   cuts, and the multicast generalization;
//! * [`reductions`] — the NAE-SAT hardness gadget, the capacity-rank
//!   lower-bound construction, and the line-network (edge/vertex) translation;
//! * [`figures`] — small built-in example networks used by the CLI and tests;
//! * [`cli`] — the `capfac` command-line front end.

pub mod cfcore;
pub mod classify;
pub mod cli;
pub mod figures;
mod index;
pub mod maxflow;
pub mod netmodel;
pub mod reductions;

pub use netmodel::{Edge, EdgeId, EdgeSet, MulticastNetwork, Network, VertexId};

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A document (JSON network, edge list, NAE-SAT text) failed to parse.
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("duplicate edge id {0}")]
    DuplicateEdgeId(EdgeId),
    #[error("edge {0} is a self-loop")]
    SelfLoop(EdgeId),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),
    #[error("source and sink must be distinct")]
    SourceIsSink,
    #[error("multicast network requires at least one sink")]
    NoSinks,
    #[error("network is cyclic")]
    Cyclic,
    #[error("network has zero maximum flow")]
    ZeroFlow,
    /// A factor order `k` outside `1..=max` was requested.
    #[error("order {k} outside valid range 1..={max}")]
    OrderOutOfRange { k: usize, max: usize },
    #[error("edge set is empty")]
    EmptyEdgeSet,
    #[error("edge set is not a {k}-CF")]
    NotACapacityFactor { k: usize },
    #[error("vertex set is not a vertex capacity factor")]
    NotAVertexCapacityFactor,
    #[error("split order {m} outside valid range 1..={max}")]
    SplitOutOfRange { m: usize, max: usize },
    #[error("k-vector has {got} components but the network has {want} sinks")]
    KVectorLength { got: usize, want: usize },
    #[error("k-vector must have a nonzero component")]
    KVectorZero,
    #[error("vertex set must be nonempty and exclude the source and the sink")]
    BadVertexSet,
    #[error("assignment does not satisfy the not-all-equal condition")]
    NotNaeAssignment,
    #[error("clause {0} repeats a single literal three times")]
    DegenerateClause(usize),
    #[error("endpoint choice has {got} entries but the factor has {want} edges")]
    ChoiceLength { got: usize, want: usize },
}

impl Error {
    /// Whether the error stems from unusable input (bad document, unknown
    /// name) rather than from the semantics of an otherwise valid request.
    /// The CLI maps input errors to exit code 2 and domain errors to 1.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Malformed(_)
                | Error::DuplicateEdgeId(_)
                | Error::SelfLoop(_)
                | Error::UnknownVertex(_)
                | Error::UnknownEdge(_)
                | Error::SourceIsSink
                | Error::NoSinks
                | Error::DegenerateClause(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
