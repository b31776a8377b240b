//! Graphviz export.

use std::fmt::Write;

use crate::automaton::Automaton;

/// Shortens `label` to at most `width` characters, marking cuts with `…`.
/// A width of 0 disables truncation.
pub fn truncate_label(label: &str, width: usize) -> String {
    if width == 0 || label.chars().count() <= width {
        return label.to_string();
    }
    let mut out: String = label.chars().take(width.saturating_sub(1)).collect();
    out.push('…');
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph of `a`. Nodes are keyed by index so truncated labels never
/// collide; initial states get an arrow from an invisible point.
pub fn to_dot(a: &Automaton, name: &str, width: usize) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=box, style=rounded];").unwrap();
    for s in a.state_ids() {
        let full = a.state_name(s);
        let label = truncate_label(full, width);
        if label == full {
            writeln!(out, "  n{} [label={}];", s.index(), quote(&label)).unwrap();
        } else {
            writeln!(
                out,
                "  n{} [label={}, tooltip={}];",
                s.index(),
                quote(&label),
                quote(full)
            )
            .unwrap();
        }
    }
    for &s in a.initial() {
        writeln!(out, "  i{0} [shape=point, style=invis];", s.index()).unwrap();
        writeln!(out, "  i{0} -> n{0};", s.index()).unwrap();
    }
    for (s, e, t) in a.transitions() {
        let decl = a.alphabet().decl(e);
        let mut attrs = format!("label={}", quote(&decl.name));
        if !decl.controllable {
            attrs.push_str(", style=dashed");
        }
        if !decl.observable {
            attrs.push_str(", color=gray");
        }
        writeln!(out, "  n{} -> n{} [{}];", s.index(), t.index(), attrs).unwrap();
    }
    out.push_str("}\n");
    out
}
