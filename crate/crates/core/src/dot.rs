//! Graphviz export of a world's transition diagram.

use std::fmt::Write;

use crate::world::World;

/// One node per state and one labelled edge per defined minimum transition, including the
/// identity self-loops. Ordering follows state then alphabet order.
pub fn export_dot(world: &World) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(world.name()));
    for s in world.states() {
        let _ = writeln!(out, "    {};", quote(world.state_label(s)));
    }
    for t in world.transitions() {
        let _ = writeln!(
            out,
            "    {} -> {} [label={}];",
            quote(world.state_label(t.from)),
            quote(world.state_label(t.to)),
            quote(world.action_symbol(t.action)),
        );
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::world::Treatment;

    fn edges(dot: &str) -> usize {
        dot.lines().filter(|l| l.contains("->")).count()
    }

    fn nodes(dot: &str) -> usize {
        dot.lines()
            .filter(|l| l.trim_end().ends_with(';') && !l.contains("->"))
            .count()
    }

    #[test]
    fn counts() {
        let dot = export_dot(&gallery::cyclical_2x2());
        assert_eq!((nodes(&dot), edges(&dot)), (4, 20));
        assert_eq!(edges(&export_dot(&gallery::wall_masked())), 18);
        let single = gallery::cyclical_grid(1, 1, &[], Treatment::Masked).unwrap();
        let dot = export_dot(&single);
        assert_eq!((nodes(&dot), edges(&dot)), (1, 5));
    }

    #[test]
    fn output_shape() {
        let dot = export_dot(&gallery::cyclical_2x2());
        assert!(dot.starts_with("digraph \"cyclical-2x2\" {\n"));
        assert!(dot.contains("    \"w0\" -> \"w2\" [label=\"U\"];\n"));
        assert!(dot.ends_with("}\n"));
    }
}
