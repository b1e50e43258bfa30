use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{Band, Border, Glyph, LineStyle, RenderDoc};

pub const VIEWBOX_WIDTH: i64 = 1000;
pub const BAND_HEIGHT: i64 = 120;

const HEIGHT: i64 = BAND_HEIGHT * Band::ALL.len() as i64;
/// Space on the left for band titles.
const GUTTER: i64 = 130;
const RIGHT_MARGIN: i64 = 10;

struct Placed {
    cx: i64,
    cy: i64,
    rx: i64,
    ry: i64,
}

/// Self-contained SVG 1.1 drawing of `doc`.
///
/// Bands are stacked bottom-up with a fixed height; organizations are
/// columns ordered by id, each as wide as its most crowded band. Only
/// integer coordinates are emitted, so the output is byte-stable.
pub fn emit_svg(doc: &RenderDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {VIEWBOX_WIDTH} {HEIGHT}\" width=\"{VIEWBOX_WIDTH}\" height=\"{HEIGHT}\">"
    );
    if doc.nodes.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    out.push_str(concat!(
        "  <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" ",
        "markerWidth=\"8\" markerHeight=\"8\" orient=\"auto\">",
        "<path d=\"M0,0 L10,5 L0,10 z\" fill=\"#333\"/></marker></defs>\n"
    ));

    for band in Band::ALL {
        if !doc.nodes.iter().any(|n| n.band == band) {
            continue;
        }
        let top = band_top(band);
        let class = band.code().to_ascii_lowercase().replace('_', "");
        let _ = writeln!(
            out,
            "  <rect class=\"band band-{class}\" x=\"0\" y=\"{top}\" width=\"{VIEWBOX_WIDTH}\" height=\"{BAND_HEIGHT}\" fill=\"{}\" stroke=\"none\"/>",
            if band.index() % 2 == 0 { "#f2f2f2" } else { "#e8e8e8" }
        );
        let _ = writeln!(
            out,
            "  <text class=\"band-label\" x=\"8\" y=\"{}\" font-family=\"Helvetica\" font-size=\"14\">{}</text>",
            top + 20,
            band.title()
        );
    }

    // Columns: a cluster needs as many slots as its most crowded band.
    let mut slots = vec![1i64; doc.clusters.len()];
    for (ci, cluster) in doc.clusters.iter().enumerate() {
        for band in Band::ALL {
            let count = doc
                .nodes
                .iter()
                .filter(|n| n.cluster == cluster.id && n.band == band)
                .count() as i64;
            slots[ci] = slots[ci].max(count);
        }
    }
    let total_slots: i64 = slots.iter().sum::<i64>().max(1);
    let slot_width = (VIEWBOX_WIDTH - GUTTER - RIGHT_MARGIN) / total_slots;
    let mut first_slot = Vec::with_capacity(slots.len());
    let mut acc = 0;
    for s in &slots {
        first_slot.push(acc);
        acc += s;
    }

    let mut placed: Vec<Option<Placed>> = (0..doc.nodes.len()).map(|_| None).collect();
    for (ci, cluster) in doc.clusters.iter().enumerate() {
        let left = GUTTER + first_slot[ci] * slot_width;
        for band in Band::ALL {
            let members: Vec<usize> = doc
                .nodes
                .iter()
                .enumerate()
                .filter(|(_, n)| n.cluster == cluster.id && n.band == band)
                .map(|(i, _)| i)
                .collect();
            let offset = (slots[ci] - members.len() as i64) * slot_width / 2;
            for (k, &i) in members.iter().enumerate() {
                let cx = left + offset + k as i64 * slot_width + slot_width / 2;
                let cy = band_top(band) + BAND_HEIGHT / 2;
                let (rx, ry) = match doc.nodes[i].glyph {
                    Glyph::EndUser => (22, 22),
                    Glyph::Hardware | Glyph::Virtualization => ((slot_width / 2 - 16).clamp(18, 60), 22),
                    Glyph::Provider | Glyph::Consumer => ((slot_width / 2 - 16).clamp(18, 70), 26),
                };
                placed[i] = Some(Placed { cx, cy, rx, ry });
            }
        }
    }

    for (ci, cluster) in doc.clusters.iter().enumerate() {
        let members: Vec<Band> = doc
            .nodes
            .iter()
            .filter(|n| n.cluster == cluster.id)
            .map(|n| n.band)
            .collect();
        let (Some(low), Some(high)) = (members.iter().min(), members.iter().max()) else {
            continue;
        };
        let x = GUTTER + first_slot[ci] * slot_width + 6;
        let width = slots[ci] * slot_width - 12;
        let y = band_top(*high) + 8;
        let height = band_top(*low) + BAND_HEIGHT - 8 - y;
        let (kind, extra) = match cluster.border {
            Border::Solid => ("solid", ""),
            Border::Dashed => ("dashed", " stroke-dasharray=\"10 6\""),
            Border::UserOrg => ("user-org", " rx=\"18\""),
        };
        let _ = writeln!(
            out,
            "  <rect class=\"cluster cluster-{kind}\" data-org=\"{}\" x=\"{x}\" y=\"{y}\" width=\"{width}\" height=\"{height}\" fill=\"none\" stroke=\"#222\" stroke-width=\"2\"{extra}/>",
            cluster.id
        );
        let _ = writeln!(
            out,
            "  <text class=\"cluster-label\" x=\"{}\" y=\"{}\" font-family=\"Helvetica\" font-size=\"11\">{}</text>",
            x + 6,
            y + 14,
            xml_escape(&cluster.label)
        );
    }

    for edge in &doc.edges {
        let (Some(Some(from)), Some(Some(to))) = (placed.get(edge.from), placed.get(edge.to)) else {
            continue;
        };
        let (x1, y1, x2, y2) = if from.cy == to.cy {
            let dir = if to.cx >= from.cx { 1 } else { -1 };
            (from.cx + dir * from.rx, from.cy, to.cx - dir * to.rx, to.cy)
        } else if to.cy < from.cy {
            (from.cx, from.cy - from.ry, to.cx, to.cy + to.ry)
        } else {
            (from.cx, from.cy + from.ry, to.cx, to.cy - to.ry)
        };
        let (kind, dash) = match edge.style {
            LineStyle::Solid => ("external", ""),
            LineStyle::Dashed => ("internal", " stroke-dasharray=\"8 5\""),
        };
        let _ = writeln!(
            out,
            "  <line class=\"edge {kind}\" data-from=\"{}\" data-to=\"{}\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#333\" stroke-width=\"2\"{dash} marker-end=\"url(#arrow)\"/>",
            edge.from, edge.to
        );
        if let Some(size) = &edge.size_label {
            let _ = writeln!(
                out,
                "  <text class=\"size\" x=\"{}\" y=\"{}\" font-family=\"Helvetica\" font-size=\"13\">{}</text>",
                (x1 + x2) / 2 + 8,
                (y1 + y2) / 2 + 12,
                xml_escape(size)
            );
        }
    }

    for (node, place) in doc.nodes.iter().zip(&placed) {
        let Some(p) = place else { continue };
        let (cx, cy, rx, ry) = (p.cx, p.cy, p.rx, p.ry);
        match node.glyph {
            Glyph::Provider | Glyph::Consumer => {
                let class = if node.glyph == Glyph::Provider { "provider" } else { "consumer" };
                let _ = writeln!(
                    out,
                    "  <ellipse class=\"node {class}\" data-node=\"{}\" cx=\"{cx}\" cy=\"{cy}\" rx=\"{rx}\" ry=\"{ry}\" fill=\"#fff\" stroke=\"#222\" stroke-width=\"1\"/>",
                    node.id
                );
            }
            Glyph::EndUser => {
                let _ = writeln!(
                    out,
                    "  <circle class=\"node end-user\" data-node=\"{}\" cx=\"{cx}\" cy=\"{cy}\" r=\"{rx}\" fill=\"#fff\" stroke=\"#222\" stroke-width=\"1\"/>",
                    node.id
                );
            }
            Glyph::Hardware => {
                let _ = writeln!(
                    out,
                    "  <polygon class=\"node hw\" data-node=\"{}\" points=\"{},{} {},{} {},{} {},{}\" fill=\"#fff\" stroke=\"#222\" stroke-width=\"1\"/>",
                    node.id,
                    cx - rx, cy - ry, cx + rx, cy - ry, cx + rx, cy + ry, cx - rx, cy + ry
                );
            }
            Glyph::Virtualization => {
                let _ = writeln!(
                    out,
                    "  <polygon class=\"node virt\" data-node=\"{}\" points=\"{},{} {},{} {},{} {},{} {},{} {},{}\" fill=\"#fff\" stroke=\"#222\" stroke-width=\"1\"/>",
                    node.id,
                    cx - rx, cy, cx - rx + 12, cy - ry, cx + rx - 12, cy - ry,
                    cx + rx, cy, cx + rx - 12, cy + ry, cx - rx + 12, cy + ry
                );
            }
        }
        let _ = writeln!(
            out,
            "  <text class=\"node-label\" x=\"{cx}\" y=\"{}\" text-anchor=\"middle\" font-family=\"Helvetica\" font-size=\"12\">{}</text>",
            cy + 4,
            xml_escape(&node.label)
        );
        if node.merge_bar {
            let _ = writeln!(
                out,
                "  <line class=\"merge-bar\" data-node=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#000\" stroke-width=\"6\"/>",
                node.id,
                cx - rx + 10,
                cy + ry - 8,
                cx + rx - 10,
                cy + ry - 8
            );
        }
    }

    out.push_str("</svg>\n");
    out
}

fn band_top(band: Band) -> i64 {
    (Band::ALL.len() - 1 - band.index()) as i64 * BAND_HEIGHT
}

fn xml_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}
