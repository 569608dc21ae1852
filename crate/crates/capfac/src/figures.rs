//! Built-in example networks, exposed through `capfac gen` and reused across
//! the test suite. Each exercises a specific behavior: `fig1` is a scalable
//! family with a known factor count, `fig2` has an edge no maximum flow can
//! use, `fig3` is cyclic, `fig4` shows that gluing two factors together can
//! fail to be a factor, `fig5` is a larger classification example, and `fig7`
//! has a small complete factor catalogue.

use crate::netmodel::{Edge, Network};

fn net(vertices: &[&str], edges: &[(u32, &str, &str)], source: &str, sink: &str) -> Network {
    Network::new(
        vertices.iter().copied(),
        edges.iter().map(|&(id, t, h)| Edge::new(id, t, h)),
        source,
        sink,
    )
    .expect("built-in network is valid")
}

/// Names accepted by [`by_name`].
pub const FIGURE_NAMES: &[&str] = &["fig2", "fig3", "fig4", "fig5", "fig7"];

pub fn by_name(name: &str) -> Option<Network> {
    match name {
        "fig2" => Some(fig2()),
        "fig3" => Some(fig3()),
        "fig4" => Some(fig4()),
        "fig5" => Some(fig5()),
        "fig7" => Some(fig7()),
        _ => None,
    }
}

/// A bottleneck edge `e0` feeding `n` parallel three-edge paths. The maximum
/// flow is 1 and the 1-CFs are `{e0}` plus every transversal picking one edge
/// per path: `3^n + 1` factors in total.
pub fn fig1(n: usize) -> Network {
    assert!(n >= 1, "fig1 needs at least one path");
    let mut vertices = vec!["s".to_owned(), "sp".to_owned(), "t".to_owned()];
    let mut edges = vec![Edge::new(0, "s", "sp")];
    for k in 1..=n {
        let a = format!("a{k}");
        let b = format!("b{k}");
        let k = k as u32;
        edges.push(Edge::new(3 * k - 2, "sp", a.as_str()));
        edges.push(Edge::new(3 * k - 1, a.as_str(), b.as_str()));
        edges.push(Edge::new(3 * k, b.as_str(), "t"));
        vertices.push(a);
        vertices.push(b);
    }
    Network::new(vertices, edges, "s", "t").expect("built-in network is valid")
}

/// Two disjoint paths plus a crossover edge `e4` that no maximum flow uses.
pub fn fig2() -> Network {
    net(
        &["s", "v1", "v2", "v3", "v4", "t"],
        &[
            (1, "s", "v1"),
            (2, "s", "v2"),
            (3, "v1", "v3"),
            (4, "v3", "v2"),
            (5, "v2", "v4"),
            (6, "v3", "t"),
            (7, "v4", "t"),
        ],
        "s",
        "t",
    )
}

/// Cyclic example: the two-cycle between `v1` and `v2` can appear in a
/// maximum flow, yet neither of its edges belongs to any capacity factor.
pub fn fig3() -> Network {
    net(
        &["s", "v1", "v2", "t"],
        &[
            (1, "s", "v1"),
            (2, "s", "v2"),
            (3, "v1", "v2"),
            (4, "v2", "v1"),
            (5, "v1", "t"),
            (6, "v2", "t"),
        ],
        "s",
        "t",
    )
}

/// Three disjoint paths with a shared middle vertex; `{e4,e5}` is a 2-CF and
/// `{e7,e9}` a 1-CF of the remainder, but their union is not a 3-CF.
pub fn fig4() -> Network {
    net(
        &["s", "v1", "v2", "v3", "v4", "v5", "v6", "t"],
        &[
            (1, "s", "v1"),
            (2, "s", "v2"),
            (3, "s", "v3"),
            (4, "v1", "v4"),
            (5, "v2", "v5"),
            (6, "v3", "v5"),
            (7, "v3", "v6"),
            (8, "v4", "t"),
            (9, "v5", "t"),
            (10, "v6", "t"),
        ],
        "s",
        "t",
    )
}

/// Classification example with maximum flow 3: eleven edges lie in some
/// maximum flow or on a residual cycle, four (including two that cannot reach
/// the sink at all) do not.
pub fn fig5() -> Network {
    net(
        &["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9", "v10"],
        &[
            (1, "v1", "v2"),
            (2, "v1", "v3"),
            (3, "v1", "v4"),
            (4, "v1", "v5"),
            (5, "v2", "v6"),
            (6, "v3", "v7"),
            (7, "v4", "v8"),
            (8, "v4", "v9"),
            (9, "v9", "v5"),
            (10, "v6", "v10"),
            (11, "v7", "v10"),
            (12, "v8", "v10"),
            (13, "v9", "v10"),
            (14, "v7", "v2"),
            (15, "v8", "v3"),
        ],
        "v1",
        "v10",
    )
}

/// Small factor-catalogue example: exactly seven 1-CFs.
pub fn fig7() -> Network {
    net(
        &["s", "v1", "v2", "v3", "v4", "t"],
        &[
            (1, "s", "v1"),
            (2, "s", "v2"),
            (3, "v2", "v3"),
            (4, "v3", "t"),
            (5, "v2", "v4"),
            (6, "v4", "t"),
            (7, "v1", "t"),
        ],
        "s",
        "t",
    )
}
