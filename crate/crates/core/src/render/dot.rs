use alloc::string::String;
use core::fmt::Write;

use super::{Band, Border, Glyph, LineStyle, RenderDoc};

/// Graphviz DOT text: one `cluster_<org>` subgraph per organization, nodes
/// `n<id>`, edges in graph order. Output depends only on `doc`.
pub fn emit_dot(doc: &RenderDoc) -> String {
    if doc.clusters.is_empty() && doc.nodes.is_empty() && doc.edges.is_empty() {
        return String::from("digraph cup {}\n");
    }
    let mut out = String::new();
    out.push_str("digraph cup {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  newrank=true;\n");
    out.push_str("  node [shape=box, fontname=\"Helvetica\"];\n");
    out.push_str("  edge [arrowhead=normal];\n");

    for cluster in &doc.clusters {
        let _ = writeln!(out, "  subgraph cluster_{} {{", cluster.id);
        let _ = writeln!(out, "    label=\"{}\";", escape(&cluster.label));
        let style = match cluster.border {
            Border::Solid => "solid",
            Border::Dashed => "dashed",
            Border::UserOrg => "rounded",
        };
        let _ = writeln!(out, "    style={style};");
        for node in doc.nodes.iter().filter(|n| n.cluster == cluster.id) {
            let shape = match node.glyph {
                Glyph::Provider | Glyph::Consumer => "box",
                Glyph::EndUser => "ellipse",
                Glyph::Hardware => "box3d",
                Glyph::Virtualization => "component",
            };
            let _ = write!(
                out,
                "    n{} [label=\"{}\", shape={shape}, band=\"{}\", glyph=\"{}\"",
                node.id,
                escape(&node.label),
                node.band.code(),
                glyph_code(node.glyph)
            );
            if node.merge_bar {
                out.push_str(", merge_bar=true, penwidth=4");
            }
            out.push_str("];\n");
        }
        out.push_str("  }\n");
    }

    for band in Band::ALL {
        let mut members = doc.nodes.iter().filter(|n| n.band == band).peekable();
        if members.peek().is_none() {
            continue;
        }
        let _ = write!(out, "  {{ rank=same;");
        for node in members {
            let _ = write!(out, " n{};", node.id);
        }
        let _ = writeln!(out, " }} // {}", band.code());
    }

    for edge in &doc.edges {
        let style = match edge.style {
            LineStyle::Solid => "solid",
            LineStyle::Dashed => "dashed",
        };
        let _ = write!(out, "  n{} -> n{} [style={style}", edge.from, edge.to);
        if let Some(size) = &edge.size_label {
            let _ = write!(out, ", label=\"{}\"", escape(size));
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}

fn glyph_code(glyph: Glyph) -> &'static str {
    match glyph {
        Glyph::Provider => "PROVIDER",
        Glyph::Consumer => "CONSUMER",
        Glyph::EndUser => "END_USER",
        Glyph::Hardware => "HW",
        Glyph::Virtualization => "VIRT",
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{compile, render::to_renderdoc};

    fn dot(text: &str) -> String {
        emit_dot(&to_renderdoc(&compile(text).unwrap().1))
    }

    #[test]
    fn empty_doc() {
        assert_eq!(emit_dot(&RenderDoc::default()), "digraph cup {}\n");
    }

    #[test]
    fn private_and_public_differ_in_one_edge_style() {
        let public = dot("i.e");
        let private = dot("ie");
        let nodes = |s: &str| -> alloc::vec::Vec<String> {
            s.lines()
                .map(str::trim)
                .filter(|l| l.starts_with('n') && l.as_bytes().get(1).is_some_and(u8::is_ascii_digit))
                .filter(|l| !l.contains("->"))
                .map(String::from)
                .collect()
        };
        let edges = |s: &str| -> alloc::vec::Vec<String> {
            s.lines().filter(|l| l.contains("->")).map(String::from).collect()
        };
        assert_eq!(nodes(&public), nodes(&private));
        let changed: alloc::vec::Vec<(String, String)> = edges(&public)
            .into_iter()
            .zip(edges(&private))
            .filter(|(a, b)| a != b)
            .collect();
        assert_eq!(
            changed,
            [(
                String::from("  n1 -> n2 [style=solid];"),
                String::from("  n1 -> n2 [style=dashed];")
            )]
        );
        // The private end-user also moves into the provider's cluster.
        assert!(public.contains("subgraph cluster_1"));
        assert!(!private.contains("subgraph cluster_1"));
    }

    #[test]
    fn labels_are_escaped() {
        assert_eq!(escape("a\"b\\c"), "a\\\"b\\\\c");
    }
}
