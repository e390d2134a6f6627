//! Graphviz export of Hasse diagrams, drawn bottom to top with one rank per
//! height.

use std::fmt::Write;

use crate::poset::Poset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The cover relation of `p` as a DOT digraph, edges pointing upward.
pub fn hasse_dot(p: &Poset) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(p.name())).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    let heights = p.heights();
    let levels = heights.iter().copied().max().map_or(0, |h| h + 1);
    for level in 0..levels {
        let members: Vec<String> = (0..p.len())
            .filter(|&i| heights[i] == level)
            .map(|i| quote(p.element_name(i)))
            .collect();
        writeln!(out, "  {{ rank=same; {}; }}", members.join("; ")).unwrap();
    }
    for (a, b) in p.cover_pairs() {
        writeln!(
            out,
            "  {} -> {};",
            quote(p.element_name(a)),
            quote(p.element_name(b))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birkhoff::upset_lattice;
    use crate::config::Caps;

    #[test]
    fn wedge_upset_lattice_dot() {
        let x = Poset::new("X", &["a", "b", "c"], &[("a", "b"), ("c", "b")]).unwrap();
        let fx = upset_lattice(&x, &Caps::default()).unwrap();
        let dot = hasse_dot(fx.lattice.order());
        assert!(dot.starts_with("digraph \"F_X\" {\n  rankdir=BT;"));
        assert!(dot.contains("{ rank=same; \"{a,b,c}\"; }"));
        assert!(dot.contains("{ rank=same; \"{a,b}\"; \"{b,c}\"; }"));
        assert!(dot.contains("\"{a,b,c}\" -> \"{a,b}\";"));
        assert!(dot.contains("\"{b}\" -> \"{}\";"));
        assert_eq!(dot.matches("->").count(), 5);
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b"), "\"a\\\"b\"");
    }
}
