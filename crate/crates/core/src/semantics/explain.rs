use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{classify_spillover, NodeId, OrgId, ProvisioningGraph, Role, Sla, StakeholderKind};
use crate::level::Level;

/// Unit in which sizes are expressed. Sizes never carry a unit in the
/// pattern text; it is supplied alongside.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeUnit {
    pub name: String,
    /// Resource units per size unit, for orders of magnitude such as
    /// "hundreds". `None` for units that are not a plain multiple.
    pub multiplier: Option<u64>,
}

impl SizeUnit {
    pub fn new(name: &str) -> SizeUnit {
        let multiplier = match name.to_ascii_lowercase().trim_end_matches('s') {
            "one" | "unit" => Some(1),
            "ten" => Some(10),
            "hundred" => Some(100),
            "thousand" => Some(1_000),
            "million" => Some(1_000_000),
            "billion" => Some(1_000_000_000),
            _ => None,
        };
        SizeUnit {
            name: name.to_string(),
            multiplier,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeSummary {
    pub id: NodeId,
    pub level: Level,
    pub kind: StakeholderKind,
    pub org: OrgId,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub provider: NodeId,
    pub consumer: NodeId,
    pub provider_level: Level,
    pub consumer_level: Level,
    pub sla: Sla,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRoles {
    pub node: NodeId,
    pub roles: Vec<Role>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NativeFlag {
    pub node: NodeId,
    pub native: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlaCounts {
    pub internal: usize,
    pub external: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrgReport {
    pub id: OrgId,
    pub native: bool,
    pub mediator: bool,
    /// Holds only the end-user.
    pub end_user_org: bool,
    pub virtualized_hw: bool,
    pub members: Vec<NodeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeReport {
    pub consumer: NodeId,
    pub consumer_level: Level,
    pub merged_level: Level,
    pub feeders: Vec<NodeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_size: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
    /// `total_size` times the unit multiplier.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resource_units: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spillover_front: Option<NodeId>,
}

/// Structured reading of a provisioning graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub nodes: Vec<NodeSummary>,
    pub pairs: Vec<PairReport>,
    pub roles: Vec<NodeRoles>,
    pub slas: SlaCounts,
    pub orgs: Vec<OrgReport>,
    pub native_flags: Vec<NativeFlag>,
    pub mediators: Vec<NodeId>,
    pub merges: Vec<MergeReport>,
    pub private_cloud: bool,
}

pub fn explain(graph: &ProvisioningGraph) -> Report {
    let nodes = graph
        .nodes
        .iter()
        .map(|n| NodeSummary {
            id: n.id,
            level: n.level,
            kind: n.kind,
            org: n.org,
            label: node_label(graph, n.id),
        })
        .collect();

    let pairs = graph
        .edges
        .iter()
        .map(|e| PairReport {
            provider: e.provider,
            consumer: e.consumer,
            provider_level: graph.node(e.provider).level,
            consumer_level: graph.node(e.consumer).level,
            sla: e.sla,
            size: e.size,
        })
        .collect();

    let roles = graph
        .nodes
        .iter()
        .map(|n| NodeRoles {
            node: n.id,
            roles: graph.roles(n.id).to_vec(),
        })
        .collect();

    let external = graph.edges.iter().filter(|e| e.sla == Sla::External).count();
    let slas = SlaCounts {
        internal: graph.edges.len() - external,
        external,
    };

    let orgs = (0..graph.org_count())
        .map(OrgId)
        .map(|org| {
            let members: Vec<NodeId> = graph.org_members(org).map(|n| n.id).collect();
            OrgReport {
                id: org,
                native: graph.org_is_native(org),
                mediator: graph
                    .org_members(org)
                    .any(|n| n.kind == StakeholderKind::Mediator),
                end_user_org: graph
                    .org_members(org)
                    .all(|n| n.kind == StakeholderKind::EndUser),
                virtualized_hw: graph.org_members(org).all(|n| n.virtualized_hw),
                members,
            }
        })
        .collect();

    let native_flags = graph
        .nodes
        .iter()
        .filter(|n| n.kind != StakeholderKind::EndUser)
        .map(|n| NativeFlag {
            node: n.id,
            native: n.kind == StakeholderKind::NativeProvider,
        })
        .collect();

    let merges = graph
        .merges
        .iter()
        .map(|m| MergeReport {
            consumer: m.consumer,
            consumer_level: graph.node(m.consumer).level,
            merged_level: m.merged_level,
            feeders: m.feeders.clone(),
            total_size: m.total_size,
            unit: None,
            resource_units: None,
            spillover_front: classify_spillover(graph, m),
        })
        .collect();

    Report {
        nodes,
        pairs,
        roles,
        slas,
        orgs,
        native_flags,
        mediators: graph.mediators().map(|n| n.id).collect(),
        merges,
        private_cloud: graph.private_cloud,
    }
}

fn node_label(graph: &ProvisioningGraph, id: NodeId) -> String {
    let node = graph.node(id);
    match (node.level, node.implicit) {
        (Level::Hardware, true) => "Hardware (virtualized)".into(),
        (Level::Hardware, false) => "Hardware (not virtualized)".into(),
        (level, _) => level.name().into(),
    }
}

impl Report {
    /// Attaches a size unit to every merge total.
    pub fn with_unit(mut self, unit: &SizeUnit) -> Report {
        for merge in &mut self.merges {
            merge.unit = Some(unit.name.clone());
            merge.resource_units = match (merge.total_size, unit.multiplier) {
                (Some(total), Some(factor)) => total.checked_mul(factor),
                _ => None,
            };
        }
        self
    }

    fn label(&self, id: NodeId) -> String {
        let mut out = String::new();
        let _ = write!(out, "{id} {}", self.nodes[id.0].label);
        out
    }

    /// Plain-text listing, one fact per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let list = |ids: &[NodeId]| {
            let mut s = String::new();
            for (i, id) in ids.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                let _ = write!(s, "{id}");
            }
            s
        };

        out.push_str("pairs (provider -> consumer):\n");
        for pair in &self.pairs {
            let _ = write!(
                out,
                "  ({}, {}) {} -> {}: {} SLA",
                pair.provider_level,
                pair.consumer_level,
                pair.provider,
                pair.consumer,
                pair.sla
            );
            if let Some(size) = pair.size {
                let _ = write!(out, ", size {size}");
            }
            out.push('\n');
        }

        out.push_str("stakeholders:\n");
        for (summary, roles) in self.nodes.iter().zip(&self.roles) {
            let kind = match summary.kind {
                StakeholderKind::NativeProvider => "native provider",
                StakeholderKind::NonnativeProvider => "non-native provider",
                StakeholderKind::Mediator => "mediator",
                StakeholderKind::EndUser => "end-user",
            };
            let _ = write!(out, "  {} [{kind}, {}]: ", self.label(summary.id), summary.org);
            for (i, role) in roles.roles.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(match role {
                    Role::Provider => "provider",
                    Role::Consumer => "consumer",
                    Role::Intermediary => "intermediary",
                });
            }
            out.push('\n');
        }

        out.push_str("organizations:\n");
        for org in &self.orgs {
            let _ = write!(out, "  {}", org.id);
            if org.end_user_org {
                out.push_str(": end-user's organization");
            } else if org.native {
                out.push_str(": native cloud provider");
            } else if org.mediator {
                out.push_str(": mediator (non-native)");
            } else {
                out.push_str(": non-native cloud provider");
            }
            let _ = write!(out, " {{{}}}", list(&org.members));
            if org.native {
                out.push_str(if org.virtualized_hw {
                    "; hardware provisioned with virtualization"
                } else {
                    "; hardware provisioned without virtualization"
                });
            }
            out.push('\n');
        }

        let _ = writeln!(
            out,
            "slas: {} internal, {} external",
            self.slas.internal, self.slas.external
        );

        if self.mediators.is_empty() {
            out.push_str("mediators: none\n");
        } else {
            out.push_str("mediators:\n");
            for id in &self.mediators {
                let _ = writeln!(out, "  {}", self.label(*id));
            }
        }

        if self.merges.is_empty() {
            out.push_str("hybrid merges: none\n");
        } else {
            out.push_str("hybrid merges:\n");
            for merge in &self.merges {
                match merge.total_size {
                    Some(total) => {
                        let _ = write!(out, "  hybrid total at {}: {total}", merge.merged_level);
                        match (&merge.unit, merge.resource_units) {
                            (Some(unit), Some(units)) => {
                                let _ = write!(out, " {unit} = {units} resource units");
                            }
                            (Some(unit), None) => {
                                let _ = write!(out, " {unit}");
                            }
                            (None, _) => out.push_str(" units"),
                        }
                    }
                    None => {
                        let _ = write!(
                            out,
                            "  hybrid total at {}: unknown (not every feeder declares a size)",
                            merge.merged_level
                        );
                    }
                }
                let _ = writeln!(
                    out,
                    "; consumed by {} from {}",
                    self.label(merge.consumer),
                    list(&merge.feeders)
                );
                if let Some(front) = merge.spillover_front {
                    let _ = writeln!(
                        out,
                        "  spill-over: {} fronts the merge and expands into the other providers",
                        self.label(front)
                    );
                }
            }
        }

        let _ = writeln!(
            out,
            "private cloud: {}",
            if self.private_cloud { "yes" } else { "no" }
        );
        out
    }
}
