//! Semantic model: stakeholders, provisioning relationships, organizations
//! and hybrid merge points derived from a [`PatternAst`](crate::PatternAst).

mod analyze;
mod explain;

pub use analyze::analyze;
pub use explain::{explain, MergeReport, NodeSummary, OrgReport, PairReport, Report, SizeUnit};

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::diagnostic::{Diagnostic, RuleId, Span};
use crate::level::Level;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrgId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for OrgId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "org {}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StakeholderKind {
    /// Provider inside an organization that owns the hardware of its chain.
    NativeProvider,
    NonnativeProvider,
    Mediator,
    EndUser,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Sla {
    Internal,
    External,
}

impl fmt::Display for Sla {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sla::Internal => "internal",
            Sla::External => "external",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StakeholderNode {
    pub id: NodeId,
    pub level: Level,
    pub kind: StakeholderKind,
    pub org: OrgId,
    /// False only in organizations that run hardware without virtualization.
    pub virtualized_hw: bool,
    /// The virtualized hardware under a chain that omits `n`; no letter in
    /// the text stands for it.
    pub implicit: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u64>,
    /// Section the node was built from; `None` for implicit hardware.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<Span>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvisioningEdge {
    pub provider: NodeId,
    pub consumer: NodeId,
    pub sla: Sla,
    /// Provisioning size declared on the provider's section.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u64>,
}

/// A consumer fed by two or more providers at the same level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergePoint {
    pub consumer: NodeId,
    pub merged_level: Level,
    pub feeders: Vec<NodeId>,
    /// Sum of the feeders' sizes; absent unless every feeder declares one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_size: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvisioningGraph {
    pub nodes: Vec<StakeholderNode>,
    pub edges: Vec<ProvisioningEdge>,
    pub merges: Vec<MergePoint>,
    pub private_cloud: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Role {
    Provider,
    Consumer,
    Intermediary,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RoleSet {
    pub provider: bool,
    pub consumer: bool,
    pub intermediary: bool,
}

impl RoleSet {
    pub fn contains(&self, role: Role) -> bool {
        match role {
            Role::Provider => self.provider,
            Role::Consumer => self.consumer,
            Role::Intermediary => self.intermediary,
        }
    }

    pub fn to_vec(self) -> Vec<Role> {
        [Role::Provider, Role::Consumer, Role::Intermediary]
            .into_iter()
            .filter(|r| self.contains(*r))
            .collect()
    }
}

impl ProvisioningGraph {
    pub fn node(&self, id: NodeId) -> &StakeholderNode {
        &self.nodes[id.0]
    }

    pub fn out_edges(&self, id: NodeId) -> impl Iterator<Item = &ProvisioningEdge> {
        self.edges.iter().filter(move |e| e.provider == id)
    }

    pub fn in_edges(&self, id: NodeId) -> impl Iterator<Item = &ProvisioningEdge> {
        self.edges.iter().filter(move |e| e.consumer == id)
    }

    /// Roles of a node.
    ///
    /// An intermediary consumes from a provider written in the pattern and
    /// provides onwards. Implicit hardware has no letter, so the lowest
    /// written provider of a chain is not an intermediary: in `ips.e` only
    /// `p` and `s` are.
    pub fn roles(&self, id: NodeId) -> RoleSet {
        let node = self.node(id);
        let provider = self.out_edges(id).next().is_some();
        let consumer = self.in_edges(id).next().is_some();
        let written_supplier = self.in_edges(id).any(|e| !self.node(e.provider).implicit);
        RoleSet {
            provider,
            consumer,
            intermediary: provider && written_supplier && node.kind != StakeholderKind::EndUser,
        }
    }

    pub fn org_count(&self) -> usize {
        self.nodes.iter().map(|n| n.org.0 + 1).max().unwrap_or(0)
    }

    pub fn org_members(&self, org: OrgId) -> impl Iterator<Item = &StakeholderNode> {
        self.nodes.iter().filter(move |n| n.org == org)
    }

    /// An organization is native when it owns the hardware its chain runs on.
    pub fn org_is_native(&self, org: OrgId) -> bool {
        self.org_members(org).any(|n| {
            n.level == Level::Hardware && n.kind == StakeholderKind::NativeProvider
        })
    }

    pub fn end_user(&self) -> Option<&StakeholderNode> {
        self.nodes.iter().find(|n| n.kind == StakeholderKind::EndUser)
    }

    pub fn mediators(&self) -> impl Iterator<Item = &StakeholderNode> {
        self.nodes.iter().filter(|n| n.kind == StakeholderKind::Mediator)
    }

    pub fn has_mediator(&self) -> bool {
        self.mediators().next().is_some()
    }

    pub fn has_hybrid(&self) -> bool {
        !self.merges.is_empty()
    }

    /// Some organization runs its hardware without virtualization.
    pub fn has_nonvirtualized_hw(&self) -> bool {
        self.nodes.iter().any(|n| !n.virtualized_hw)
    }

    pub fn level_present(&self, level: Level) -> bool {
        self.nodes.iter().any(|n| n.level == level)
    }

    pub fn external_sla_at(&self, provider: Level, consumer: Level) -> bool {
        self.edges.iter().any(|e| {
            e.sla == Sla::External
                && self.node(e.provider).level == provider
                && self.node(e.consumer).level == consumer
        })
    }
}

/// Provider that fronts a hybrid merge: the single feeder inside the
/// consumer's own organization, which expands into the external feeders when
/// its capacity runs out. `None` when zero or several feeders are internal.
pub fn classify_spillover(graph: &ProvisioningGraph, merge: &MergePoint) -> Option<NodeId> {
    let consumer_org = graph.node(merge.consumer).org;
    let mut internal = merge
        .feeders
        .iter()
        .copied()
        .filter(|f| graph.node(*f).org == consumer_org);
    let front = internal.next()?;
    internal.next().is_none().then_some(front)
}

/// Warnings for an analyzed graph.
pub fn lint(graph: &ProvisioningGraph) -> Vec<Diagnostic> {
    graph
        .mediators()
        .filter(|m| m.level == Level::Hardware)
        .map(|m| {
            Diagnostic::warning(
                RuleId::HardwareMediator,
                m.span.unwrap_or_default(),
                format!(
                    "{} mediator re-provisions non-virtualized hardware; no dot can mark its \
                     upstream SLA, which is taken as external",
                    m.level
                ),
            )
        })
        .collect()
}
