//! Graphviz DOT export.
//!
//! P1 vertices are circles and P2 vertices boxes. Vertices in the true-game
//! (or synthesized) winning region are filled red, vertices in the perceived
//! winning region blue, vertices in both purple. Target vertices get a double
//! border, unreachable vertices a dashed outline and edges removed by the
//! stealth restriction are dashed red. Vertices and edges are emitted in index
//! order, so the output is a deterministic function of the input.

use std::fmt::Write as _;
use std::path::Path;

use fixedbitset::FixedBitSet;
use hypergame_core::{Arena, GameGraph, Hts, Player, ProductGame, RestrictedGame, StochasticGame};

pub const TRUE_WIN_FILL: &str = "#f4a6a6";
pub const PERCEIVED_WIN_FILL: &str = "#a6c8f4";
pub const BOTH_FILL: &str = "#d3a6f4";

#[derive(Debug, Clone, Copy, Default)]
pub struct Highlight<'a> {
    /// Filled with [`TRUE_WIN_FILL`].
    pub true_win: Option<&'a FixedBitSet>,
    /// Filled with [`PERCEIVED_WIN_FILL`].
    pub perceived_win: Option<&'a FixedBitSet>,
    /// Drawn with a double border.
    pub target: Option<&'a FixedBitSet>,
    /// Vertices outside this set are dashed.
    pub reachable: Option<&'a FixedBitSet>,
}

struct Node {
    label: String,
    owner: Player,
}

struct EdgeOut {
    from: usize,
    to: usize,
    label: String,
    removed: bool,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn render(name: &str, nodes: &[Node], edges: &[EdgeOut], hl: &Highlight<'_>) -> String {
    let has = |set: Option<&FixedBitSet>, v: usize| set.is_some_and(|s| s.contains(v));
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for (v, node) in nodes.iter().enumerate() {
        let shape = match node.owner {
            Player::P1 => "circle",
            Player::P2 => "box",
        };
        let mut attrs = vec![format!("label={}", quote(&node.label)), format!("shape={shape}")];
        let fill = match (has(hl.true_win, v), has(hl.perceived_win, v)) {
            (true, true) => Some(BOTH_FILL),
            (true, false) => Some(TRUE_WIN_FILL),
            (false, true) => Some(PERCEIVED_WIN_FILL),
            (false, false) => None,
        };
        let dashed = hl.reachable.is_some_and(|r| !r.contains(v));
        let mut style = Vec::new();
        if let Some(fill) = fill {
            style.push("filled");
            attrs.push(format!("fillcolor={}", quote(fill)));
        }
        if dashed {
            style.push("dashed");
        }
        if !style.is_empty() {
            attrs.push(format!("style={}", quote(&style.join(","))));
        }
        if has(hl.target, v) {
            attrs.push("peripheries=2".into());
        }
        writeln!(out, "  n{v} [{}];", attrs.join(", ")).unwrap();
    }
    for e in edges {
        let mut attrs = vec![format!("label={}", quote(&e.label))];
        if e.removed {
            attrs.push("color=red".into());
            attrs.push("style=dashed".into());
        }
        writeln!(out, "  n{} -> n{} [{}];", e.from, e.to, attrs.join(", ")).unwrap();
    }
    out.push_str("}\n");
    out
}

fn graph_edges(arena: &Arena, graph: &GameGraph) -> Vec<EdgeOut> {
    (0..graph.num_vertices())
        .flat_map(|v| {
            graph.successors(v).iter().map(move |e| EdgeOut {
                from: v,
                to: e.target,
                label: arena.action_name(e.action).to_string(),
                removed: false,
            })
        })
        .collect()
}

/// The arena; highlight sets are over arena states.
pub fn arena_dot(arena: &Arena, hl: &Highlight<'_>) -> String {
    let nodes: Vec<Node> = arena
        .states()
        .map(|s| Node {
            label: arena.state_name(s).to_string(),
            owner: arena.owner(s),
        })
        .collect();
    render("arena", &nodes, &graph_edges(arena, &GameGraph::from_arena(arena)), hl)
}

/// A product game; highlight sets are over product vertices `(s, q)`.
pub fn product_dot(arena: &Arena, product: &ProductGame, hl: &Highlight<'_>) -> String {
    let graph = product.graph();
    let nodes: Vec<Node> = (0..graph.num_vertices())
        .map(|v| {
            let (s, q) = product.state(v);
            Node {
                label: format!("({},{q})", arena.state_name(s)),
                owner: graph.owner(v),
            }
        })
        .collect();
    render("product", &nodes, &graph_edges(arena, graph), hl)
}

fn hts_nodes(arena: &Arena, hts: &Hts) -> Vec<Node> {
    (0..hts.num_vertices())
        .map(|v| {
            let st = hts.state(v);
            Node {
                label: format!("({},{},{})", arena.state_name(st.s), st.q, st.p),
                owner: hts.owner(v),
            }
        })
        .collect()
}

/// The hypergame transition system over the full space.
pub fn hts_dot(arena: &Arena, hts: &Hts, hl: &Highlight<'_>) -> String {
    render("hts", &hts_nodes(arena, hts), &graph_edges(arena, hts.graph()), hl)
}

/// The HTS with the edges removed by the restriction drawn dashed red.
pub fn restricted_dot(arena: &Arena, hts: &Hts, rg: &RestrictedGame, hl: &Highlight<'_>) -> String {
    let mut edges = graph_edges(arena, hts.graph());
    for e in &mut edges {
        let action = arena.action_by_name(&e.label).expect("edge labels are action names");
        e.removed = rg.is_removed(e.from, action);
    }
    render("restricted", &hts_nodes(arena, hts), &edges, hl)
}

/// The one-player stochastic game; P2 vertices are probabilistic and their
/// edges form the support.
pub fn stochastic_dot(arena: &Arena, hts: &Hts, g: &StochasticGame, hl: &Highlight<'_>) -> String {
    render("stochastic", &hts_nodes(arena, hts), &graph_edges(arena, g.graph()), hl)
}

pub fn write_dot(path: &Path, text: &str) -> std::io::Result<()> {
    std::fs::write(path, text)
}
