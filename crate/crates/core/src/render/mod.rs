//! Visual form of a pattern: organization boxes stacked over abstraction
//! level bands, with dashed lines for internal SLAs and solid lines for
//! external ones.
//!
//! [`to_renderdoc`] decides what is drawn; [`emit_dot`] and [`emit_svg`] only
//! serialize it, deterministically.

mod dot;
mod svg;

pub use dot::emit_dot;
pub use svg::{emit_svg, BAND_HEIGHT, VIEWBOX_WIDTH};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::level::Level;
use crate::semantics::{classify_spillover, ProvisioningGraph, Sla, StakeholderKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Border {
    /// Native cloud provider.
    Solid,
    /// Non-native provider or mediator.
    Dashed,
    /// Organization holding only the end-user.
    UserOrg,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub id: usize,
    pub border: Border,
    pub label: String,
}

/// Horizontal band of the diagram, bottom-up. Virtualization gets its own
/// band between bare hardware and IaaS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Band {
    #[serde(rename = "HW")]
    Hardware,
    #[serde(rename = "VIRT")]
    Virtualization,
    Iaas,
    Paas,
    Saas,
    EndUser,
}

impl Band {
    pub const ALL: [Band; 6] = [
        Band::Hardware,
        Band::Virtualization,
        Band::Iaas,
        Band::Paas,
        Band::Saas,
        Band::EndUser,
    ];

    /// Position from the bottom.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn code(self) -> &'static str {
        match self {
            Band::Hardware => "HW",
            Band::Virtualization => "VIRT",
            Band::Iaas => "IAAS",
            Band::Paas => "PAAS",
            Band::Saas => "SAAS",
            Band::EndUser => "END_USER",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Band::Hardware => "Hardware resources",
            Band::Virtualization => "Virtualization",
            Band::Iaas => "IaaS",
            Band::Paas => "PaaS",
            Band::Saas => "SaaS",
            Band::EndUser => "End-user",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Glyph {
    /// Provider with no written provider below it.
    Provider,
    /// Intermediary: consumes from a written provider and provides onwards.
    Consumer,
    EndUser,
    #[serde(rename = "HW")]
    Hardware,
    #[serde(rename = "VIRT")]
    Virtualization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderNode {
    pub id: usize,
    pub cluster: usize,
    pub band: Band,
    pub glyph: Glyph,
    pub label: String,
    /// Thick line marking where hybrid resources are merged.
    pub merge_bar: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LineStyle {
    /// External SLA.
    Solid,
    /// Internal SLA.
    Dashed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderEdge {
    pub from: usize,
    pub to: usize,
    pub style: LineStyle,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_label: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderDoc {
    pub clusters: Vec<Cluster>,
    pub nodes: Vec<RenderNode>,
    pub edges: Vec<RenderEdge>,
}

pub fn to_renderdoc(graph: &ProvisioningGraph) -> RenderDoc {
    let clusters = (0..graph.org_count())
        .map(|org| {
            let members: Vec<_> = graph
                .nodes
                .iter()
                .filter(|n| n.org.0 == org)
                .collect();
            let (border, label) = if members.iter().all(|n| n.kind == StakeholderKind::EndUser) {
                (Border::UserOrg, format!("org {org}: end-user's organization"))
            } else if graph.org_is_native(crate::semantics::OrgId(org)) {
                (Border::Solid, format!("org {org}: native provider"))
            } else if members.iter().any(|n| n.kind == StakeholderKind::Mediator) {
                (Border::Dashed, format!("org {org}: mediator"))
            } else {
                (Border::Dashed, format!("org {org}: non-native provider"))
            };
            Cluster {
                id: org,
                border,
                label,
            }
        })
        .collect();

    let mut bars: Vec<usize> = graph
        .merges
        .iter()
        .map(|m| classify_spillover(graph, m).unwrap_or(m.consumer).0)
        .collect();
    bars.sort_unstable();

    let nodes = graph
        .nodes
        .iter()
        .map(|n| {
            let (band, glyph) = match (n.level, n.implicit) {
                (Level::Hardware, true) => (Band::Virtualization, Glyph::Virtualization),
                (Level::Hardware, false) => (Band::Hardware, Glyph::Hardware),
                (Level::EndUser, _) => (Band::EndUser, Glyph::EndUser),
                (level, _) => {
                    let band = match level {
                        Level::Iaas => Band::Iaas,
                        Level::Paas => Band::Paas,
                        _ => Band::Saas,
                    };
                    let glyph = if graph.roles(n.id).intermediary {
                        Glyph::Consumer
                    } else {
                        Glyph::Provider
                    };
                    (band, glyph)
                }
            };
            let label = match n.kind {
                StakeholderKind::Mediator => format!("{} mediator", n.level),
                _ if n.level == Level::Hardware && n.implicit => String::from("Virtualized hardware"),
                _ if n.level == Level::Hardware => String::from("Hardware"),
                _ => String::from(n.level.name()),
            };
            RenderNode {
                id: n.id.0,
                cluster: n.org.0,
                band,
                glyph,
                label,
                merge_bar: bars.binary_search(&n.id.0).is_ok(),
            }
        })
        .collect();

    let edges = graph
        .edges
        .iter()
        .map(|e| RenderEdge {
            from: e.provider.0,
            to: e.consumer.0,
            style: match e.sla {
                Sla::External => LineStyle::Solid,
                Sla::Internal => LineStyle::Dashed,
            },
            size_label: e.size.map(|s| format!("{s}")),
        })
        .collect();

    RenderDoc {
        clusters,
        nodes,
        edges,
    }
}
