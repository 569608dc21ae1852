//! Command-line front end. Every analysis is a subcommand printing one line
//! of JSON (or DOT text under `--dot`); outputs are byte-stable for fixed
//! inputs so they can be golden-tested and piped.
//!
//! Exit codes: 0 success, 1 domain error (e.g. the set is not a capacity
//! factor), 2 usage or input error (unreadable file, malformed document,
//! bad flags).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::netmodel::{EdgeId, EdgeSet, Network, VertexId};
use crate::{cfcore, classify, figures, maxflow, reductions, Error, Result};

/// Captured outcome of one invocation: what to print and how to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(
    name = "capfac",
    version,
    about = "Analyze link criticality in unit-capacity networks via capacity factors",
    color = clap::ColorChoice::Never
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// `NET` arguments take a file path or `-` for standard input, holding either
/// the JSON document format or the whitespace edge-list format.
#[derive(Subcommand)]
enum Cmd {
    /// Compute the max flow value with edge-disjoint witness paths
    Maxflow { net: String },
    /// Partition edges into the D-set (in some factor) and H-set (in none)
    Classify {
        net: String,
        /// Include the per-edge witness kind in the output
        #[arg(long)]
        witness: bool,
        /// Classify by exhaustive factor enumeration instead of the max-flow
        /// shortcut (required for the factor-defined partition on cyclic
        /// networks)
        #[arg(long, conflicts_with = "witness")]
        brute_force: bool,
    },
    /// List all order-k capacity factors
    Enumerate {
        net: String,
        #[arg(long)]
        k: usize,
        /// Only report factors up to this size
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Compute the capacity rank of one edge
    Rank {
        net: String,
        #[arg(long)]
        edge: u32,
    },
    /// Check whether an edge set is an order-k capacity factor
    Verify {
        net: String,
        #[arg(long)]
        k: usize,
        /// Comma-separated edge ids
        #[arg(long, value_delimiter = ',', required = true)]
        edges: Vec<u32>,
    },
    /// Decide whether some order-k factor contains the edge (acyclic only)
    Membership {
        net: String,
        #[arg(long)]
        edge: u32,
        #[arg(long)]
        k: usize,
    },
    /// Build the hardness gadget for a not-all-equal SAT instance
    ReduceNaesat { cnf: String },
    /// Build the line network, whose vertex factors mirror edge factors
    LineGraph {
        net: String,
        /// Emit DOT text instead of JSON
        #[arg(long)]
        dot: bool,
    },
    /// Wrap the network so one probe edge's rank reveals the max flow
    CrBound {
        net: String,
        /// Emit DOT text instead of JSON
        #[arg(long)]
        dot: bool,
    },
    /// Emit a built-in example network
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// The bottleneck-plus-parallel-lanes family with 3^n + 1 factors
    Fig1 {
        #[arg(long)]
        n: usize,
        /// Emit DOT text instead of JSON
        #[arg(long)]
        dot: bool,
    },
    /// A fixed example network: fig2, fig3, fig4, fig5, or fig7
    Figure {
        #[arg(long)]
        name: String,
        /// Emit DOT text instead of JSON
        #[arg(long)]
        dot: bool,
    },
}

/// Parses `argv` and runs the selected subcommand, capturing output instead
/// of printing, so callers (and tests) decide what to do with it.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandResult {
                        exit_code: 0,
                        stdout: rendered,
                        stderr: String::new(),
                    }
                }
                _ => CommandResult {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                },
            };
        }
    };
    match execute(cli.cmd) {
        Ok(stdout) => CommandResult {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => CommandResult {
            exit_code: if e.is_input_error() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Malformed(format!("cannot read standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Error::Malformed(format!("cannot read {path}: {e}")))?;
    }
    Ok(text)
}

fn load_network(path: &str) -> Result<Network> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('{') {
        Network::from_json(&text)
    } else {
        Network::from_edge_list(&text)
    }
}

fn json_line<T: Serialize>(doc: &T) -> String {
    let mut line = serde_json::to_string(doc).expect("output serialization cannot fail");
    line.push('\n');
    line
}

fn execute(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Maxflow { net } => {
            #[derive(Serialize)]
            struct Doc<'a> {
                value: usize,
                paths: &'a [Vec<EdgeId>],
                used_edges: &'a EdgeSet,
            }
            let n = load_network(&net)?;
            let flow = maxflow::max_flow(&n);
            Ok(json_line(&Doc {
                value: flow.value(),
                paths: flow.paths(),
                used_edges: flow.used_edges(),
            }))
        }
        Cmd::Classify {
            net,
            witness,
            brute_force,
        } => {
            #[derive(Serialize)]
            struct Doc<'a> {
                #[serde(rename = "D")]
                d: &'a EdgeSet,
                #[serde(rename = "H")]
                h: &'a EdgeSet,
            }
            let n = load_network(&net)?;
            if brute_force {
                let (d, h) = cfcore::brute_force_classification(&n)?;
                return Ok(json_line(&Doc { d: &d, h: &h }));
            }
            let report = classify::classify_edges(&n)?;
            if witness {
                return Ok(format!("{}\n", report.to_json()));
            }
            Ok(json_line(&Doc {
                d: report.d_set(),
                h: report.h_set(),
            }))
        }
        Cmd::Enumerate { net, k, max_size } => {
            let n = load_network(&net)?;
            let factors = cfcore::enumerate_kcfs(&n, k, max_size)?;
            Ok(json_line(&factors))
        }
        Cmd::Rank { net, edge } => {
            let n = load_network(&net)?;
            let result = cfcore::capacity_rank(&n, EdgeId(edge))?;
            Ok(format!("{}\n", result.to_json()))
        }
        Cmd::Verify { net, k, edges } => {
            let n = load_network(&net)?;
            let report = cfcore::certify_kcf(&n, &EdgeSet::from_ids(edges), k)?;
            Ok(json_line(&report))
        }
        Cmd::Membership { net, edge, k } => {
            #[derive(Serialize)]
            struct Doc {
                edge: EdgeId,
                k: usize,
                member: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<Vec<EdgeId>>,
            }
            let n = load_network(&net)?;
            let found = cfcore::kcf_membership(&n, EdgeId(edge), k)?;
            Ok(json_line(&Doc {
                edge: EdgeId(edge),
                k,
                member: found.member,
                witness: found.witness,
            }))
        }
        Cmd::ReduceNaesat { cnf } => {
            #[derive(Serialize)]
            struct Doc {
                network: crate::netmodel::NetworkDoc,
                k: usize,
                edge_roles: BTreeMap<String, reductions::EdgeRole>,
            }
            let text = read_input(&cnf)?;
            let instance = reductions::NaesatInstance::parse(&text)?;
            let out = reductions::reduce_naesat(&instance);
            Ok(json_line(&Doc {
                network: out.network.doc(),
                k: out.k,
                edge_roles: out
                    .edge_roles
                    .iter()
                    .map(|(id, role)| (id.to_string(), *role))
                    .collect(),
            }))
        }
        Cmd::LineGraph { net, dot } => {
            #[derive(Serialize)]
            struct Doc<'a> {
                network: crate::netmodel::NetworkDoc,
                fwd: BTreeMap<String, (&'a VertexId, &'a VertexId)>,
                internal_edge: BTreeMap<String, EdgeId>,
            }
            let n = load_network(&net)?;
            let map = reductions::line_network(&n);
            if dot {
                return Ok(map.network.to_dot());
            }
            Ok(json_line(&Doc {
                network: map.network.doc(),
                fwd: map
                    .fwd
                    .iter()
                    .map(|(id, (v_in, v_out))| (id.to_string(), (v_in, v_out)))
                    .collect(),
                internal_edge: map
                    .internal_edge
                    .iter()
                    .map(|(base, line)| (base.to_string(), *line))
                    .collect(),
            }))
        }
        Cmd::CrBound { net, dot } => {
            #[derive(Serialize)]
            struct Doc {
                network: crate::netmodel::NetworkDoc,
                probe: EdgeId,
            }
            let n = load_network(&net)?;
            let (wrapped, probe) = reductions::cr_bound_network(&n);
            if dot {
                return Ok(wrapped.to_dot());
            }
            Ok(json_line(&Doc {
                network: wrapped.doc(),
                probe,
            }))
        }
        Cmd::Gen { what } => {
            let (n, dot) = match what {
                GenCmd::Fig1 { n, dot } => {
                    if n == 0 {
                        return Err(Error::Malformed("--n must be at least 1".into()));
                    }
                    (figures::fig1(n), dot)
                }
                GenCmd::Figure { name, dot } => {
                    let n = figures::by_name(&name).ok_or_else(|| {
                        Error::Malformed(format!(
                            "unknown figure {name:?}; expected one of {}",
                            figures::FIGURE_NAMES.join(", ")
                        ))
                    })?;
                    (n, dot)
                }
            };
            if dot {
                return Ok(n.to_dot());
            }
            Ok(format!("{}\n", n.to_json()))
        }
    }
}
