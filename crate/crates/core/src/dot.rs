//! Graphviz export.

use std::fmt::Write;

use crate::allocation::StrategyMatrix;
use crate::format::sig6;
use crate::graph::{Sign, SignedGraph};

/// DOT text for `g`: friend edges solid and labelled `+`, adversary edges
/// dashed and labelled `-`. With a matrix the label becomes `u_ij/u_ji`
/// for the edge `i -- j` with `i < j`. Nodes and edges are emitted in label
/// order, so equal inputs give equal bytes.
pub fn export_dot(g: &SignedGraph, u: Option<&StrategyMatrix>) -> String {
    let mut out = String::from("graph pag {\n");
    for i in 1..=g.n() {
        let _ = writeln!(out, "  {i};");
    }
    for (pair, sign) in g.edges() {
        let (i, j) = (pair.lo(), pair.hi());
        let style = match sign {
            Sign::Friend => "solid",
            Sign::Adversary => "dashed",
        };
        let label = match u {
            Some(u) => format!("{}/{}", sig6(u.get(i, j)), sig6(u.get(j, i))),
            None => match sign {
                Sign::Friend => "+".into(),
                Sign::Adversary => "-".into(),
            },
        };
        let _ = writeln!(out, "  {i} -- {j} [style={style}, label=\"{label}\"];");
    }
    out.push_str("}\n");
    out
}
