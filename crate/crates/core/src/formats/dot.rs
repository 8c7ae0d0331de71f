//! Graphviz export.

use std::fmt::Write;

use num_traits::Signed;

use crate::exchange::OrientedExchangeGraph;
use crate::quiver::{ExtMatrix, VertexColor};

fn vertex_name(q: &ExtMatrix, i: usize) -> String {
    if i < q.n() {
        format!("\"{}\"", i + 1)
    } else {
        format!("\"{}'\"", i - q.n() + 1)
    }
}

/// Mutable vertices are circles filled by colour, frozen vertices `j'` are
/// blue boxes. Each ordered pair with arrows gets one edge labelled with
/// the multiplicity.
pub fn quiver_to_dot(q: &ExtMatrix) -> String {
    let n = q.n();
    let total = n + q.m();
    let mut out = String::from("digraph quiver {\n");
    for (i, c) in q.colors().into_iter().enumerate() {
        let fill = match c {
            VertexColor::Green => "green",
            VertexColor::Red => "red",
            VertexColor::Neither => "grey",
        };
        writeln!(out, "  {} [shape=circle, style=filled, fillcolor={fill}];", vertex_name(q, i)).unwrap();
    }
    for i in n..total {
        writeln!(out, "  {} [shape=box, color=blue];", vertex_name(q, i)).unwrap();
    }
    // b[i][j] > 0 counts arrows i -> j; frozen rows only pair with mutable columns.
    for i in 0..total {
        for j in 0..n {
            let (src, dst, mult) = if i < n {
                (i, j, q.entry(i, j).clone())
            } else {
                let b = q.entry(i, j);
                if b.is_positive() {
                    (i, j, b.clone())
                } else {
                    (j, i, -b)
                }
            };
            if mult.is_positive() {
                writeln!(
                    out,
                    "  {} -> {} [label=\"{mult}\"];",
                    vertex_name(q, src),
                    vertex_name(q, dst)
                )
                .unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Nodes are numbered from 1 in discovery order; edge labels are the
/// mutated vertex. The source is filled green, all-red vertices red.
pub fn graph_to_dot(g: &OrientedExchangeGraph) -> String {
    let mut out = String::from("digraph exchange {\n");
    let in_deg = g.in_degrees();
    for (i, v) in g.vertices.iter().enumerate() {
        let fill = if v.representative.all_red() {
            ", style=filled, fillcolor=red"
        } else if in_deg[i] == 0 {
            ", style=filled, fillcolor=green"
        } else {
            ""
        };
        writeln!(out, "  \"{}\" [tooltip=\"{}\"{fill}];", i + 1, v.key).unwrap();
    }
    for e in &g.edges {
        writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.source + 1, e.target + 1, e.vertex + 1).unwrap();
    }
    out.push_str("}\n");
    out
}
