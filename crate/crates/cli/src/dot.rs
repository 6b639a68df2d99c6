//! Graphviz rendering of torus graphs.

use std::fmt::Write;

use torusbord::{Sign, TorusGraph};

/// One node per vertex, labelled with its id and sign, and one undirected
/// edge per dart pair, labelled `a | b` with the labels of both darts.
pub fn emit_dot(g: &TorusGraph) -> String {
    let mut s = String::from("graph torus {\n");
    for (v, sigma) in g.vertices() {
        let sign = match sigma {
            Some(Sign::Plus) => " (+)",
            Some(Sign::Minus) => " (-)",
            None => "",
        };
        writeln!(s, "  v{v} [label=\"{v}{sign}\"];").unwrap();
    }
    for d in g.darts() {
        if d.id < d.partner {
            let t = g.origin(d.partner);
            let back = g.label(d.partner);
            writeln!(
                s,
                "  v{} -- v{t} [label=\"{} | {back}\"];",
                d.vertex, d.label
            )
            .unwrap();
        }
    }
    s.push_str("}\n");
    s
}
