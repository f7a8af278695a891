//! Graphviz export.

use std::fmt::Write;

use sfa_core::Sfa;

/// Renders `a` as a DOT digraph. States appear in declaration order and
/// edges sorted by source, target and label, so equal automata give equal
/// text.
pub fn export_dot(a: &Sfa) -> String {
    let mut out = String::from("digraph sfa {\n  rankdir=LR;\n  __start [shape=point];\n");
    for (q, name) in a.states().iter().enumerate() {
        let shape = if a.is_accepting(q) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(out, "  {} [shape={shape}];", quote(name)).unwrap();
    }
    writeln!(out, "  __start -> {};", quote(a.state_name(a.initial()))).unwrap();

    let mut edges: Vec<(usize, usize, String)> = a
        .transitions()
        .iter()
        .map(|t| (t.from, t.to, t.pred.display(a.binding()).to_string()))
        .collect();
    edges.sort();
    for (from, to, label) in edges {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(a.state_name(from)),
            quote(a.state_name(to)),
            quote(&label)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                q.push('\\');
                q.push(c);
            }
            '\n' => q.push_str("\\n"),
            _ => q.push(c),
        }
    }
    q.push('"');
    q
}
