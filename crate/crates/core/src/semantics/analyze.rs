use alloc::format;
use alloc::vec::Vec;

use super::{
    MergePoint, NodeId, OrgId, ProvisioningEdge, ProvisioningGraph, Sla, StakeholderKind,
    StakeholderNode,
};
use crate::diagnostic::{Diagnostic, RuleId, Span};
use crate::level::Level;
use crate::syntax::{Group, PatternAst, Section};

/// Builds the provisioning graph of a parsed pattern and enforces the
/// semantic rules for hybrids and mediators.
///
/// * Adjacent sections form (provider, consumer) pairs; a dot after the
///   provider makes the pair cross an organization boundary.
/// * A chain that starts without `n` rests on implicit virtualized hardware
///   owned by the organization of its first section.
/// * Groups feed the first section after them. If that section repeats the
///   groups' level it is a mediator, which must lease across a boundary;
///   if it is higher, the groups provision to it directly.
/// * Two or more groups feeding one consumer make a merge point whose total
///   size is the sum of the feeders' sizes.
///
/// Organizations are the connected components of internal SLAs, numbered
/// left to right.
pub fn analyze(ast: &PatternAst) -> Result<ProvisioningGraph, Vec<Diagnostic>> {
    let mut builder = Builder::default();
    let last = builder.chain(&ast.groups, &ast.sections);
    if builder.errors.is_empty() {
        match last {
            Some((_, section)) if section.level == Level::EndUser => {}
            other => {
                let span = other.map_or(Span::default(), |(_, s)| s.span);
                builder.errors.push(Diagnostic::error(
                    RuleId::MandatorySections,
                    span,
                    "a pattern must end with the end-user section `e`",
                ));
            }
        }
    }
    if builder.errors.is_empty() {
        Ok(builder.finish())
    } else {
        Err(builder.errors)
    }
}

struct Draft {
    level: Level,
    implicit: bool,
    /// Bottom of a chain: the hardware the chain's owner runs on.
    hardware_root: bool,
    mediator: bool,
    size: Option<u64>,
    span: Option<Span>,
}

#[derive(Default)]
struct Builder {
    drafts: Vec<Draft>,
    edges: Vec<ProvisioningEdge>,
    merges: Vec<MergePoint>,
    parent: Vec<usize>,
    errors: Vec<Diagnostic>,
}

impl Builder {
    fn add(&mut self, draft: Draft) -> NodeId {
        let id = self.drafts.len();
        self.drafts.push(draft);
        self.parent.push(id);
        NodeId(id)
    }

    fn add_section(&mut self, section: &Section, hardware_root: bool, mediator: bool) -> NodeId {
        self.add(Draft {
            level: section.level,
            implicit: false,
            hardware_root,
            mediator,
            size: section.size,
            span: Some(section.span),
        })
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn link(&mut self, provider: NodeId, consumer: NodeId, sla: Sla, size: Option<u64>) {
        if sla == Sla::Internal {
            let (a, b) = (self.find(provider.0), self.find(consumer.0));
            self.parent[a.max(b)] = a.min(b);
        }
        self.edges.push(ProvisioningEdge {
            provider,
            consumer,
            sla,
            size,
        });
    }

    fn error(&mut self, rule: RuleId, span: Span, message: impl Into<alloc::string::String>) {
        self.errors.push(Diagnostic::error(rule, span, message));
    }

    /// Builds one chain, with the groups feeding it, and returns its last
    /// node together with the section that node came from.
    fn chain<'a>(
        &mut self,
        groups: &'a [Group],
        sections: &'a [Section],
    ) -> Option<(NodeId, &'a Section)> {
        let mut feeders = Vec::with_capacity(groups.len());
        for group in groups {
            if let Some(feeder) = self.chain(&group.groups, &group.sections) {
                feeders.push(feeder);
            }
        }

        for pair in sections.windows(2) {
            if pair[1].level <= pair[0].level {
                self.error(
                    RuleId::SectionOrder,
                    pair[1].span,
                    format!("{} section after {}", pair[1].level, pair[0].level),
                );
            }
        }

        let Some(first) = sections.first() else {
            if let Some(last) = groups.last() {
                self.error(
                    RuleId::GroupsWithoutConsumer,
                    last.span,
                    "parenthesized specifications need a following section to feed",
                );
            }
            return None;
        };

        let first_id = if groups.is_empty() {
            if first.level == Level::Hardware {
                self.add_section(first, true, false)
            } else {
                let hardware = self.add(Draft {
                    level: Level::Hardware,
                    implicit: true,
                    hardware_root: true,
                    mediator: false,
                    size: None,
                    span: None,
                });
                let id = self.add_section(first, false, false);
                self.link(hardware, id, Sla::Internal, None);
                id
            }
        } else {
            self.feed(groups, &feeders, first)?
        };

        let mut previous = (first_id, first);
        for section in &sections[1..] {
            let id = self.add_section(section, false, false);
            let (provider, provider_section) = previous;
            self.link(provider, id, sla_of(provider_section), provider_section.size);
            previous = (id, section);
        }
        Some(previous)
    }

    /// Creates the consumer of a set of groups and connects the groups to it.
    fn feed(
        &mut self,
        groups: &[Group],
        feeders: &[(NodeId, &Section)],
        consumer: &Section,
    ) -> Option<NodeId> {
        let groups_span = groups[0].span.to(groups[groups.len() - 1].span);
        let mut levels = groups.iter().filter_map(Group::terminal_level);
        let terminal = levels.next()?;
        if let Some(other) = levels.find(|l| *l != terminal) {
            self.error(
                RuleId::MixedGroupTerminalLevels,
                groups_span,
                format!(
                    "sibling specifications in parentheses end at different levels ({terminal} and {other})"
                ),
            );
            return None;
        }
        if feeders.len() != groups.len() {
            return None;
        }
        if consumer.level == Level::EndUser {
            self.error(
                RuleId::GroupsWithoutConsumer,
                groups_span,
                "parenthesized specifications need a provider section to feed, not the end-user",
            );
            return None;
        }

        let mediator = match consumer.level.cmp(&terminal) {
            core::cmp::Ordering::Less => {
                self.error(
                    RuleId::GroupConsumerBelowTerminal,
                    consumer.span,
                    format!(
                        "{} section cannot consume from specifications ending at {terminal}",
                        consumer.level
                    ),
                );
                return None;
            }
            core::cmp::Ordering::Equal => true,
            core::cmp::Ordering::Greater => false,
        };

        if mediator && terminal != Level::Hardware {
            for (_, section) in feeders {
                if !section.external {
                    self.error(
                        RuleId::MediatorInternalProvider,
                        section.span,
                        format!(
                            "the {terminal} mediator is a separate legal entity; end this \
                             specification with `.`"
                        ),
                    );
                }
            }
        }

        let consumer_id = self.add_section(consumer, false, mediator);
        let mut total = Some(0u64);
        for (feeder, section) in feeders {
            // A hardware mediator cannot be preceded by a dot, yet it is an
            // independent organization all the same.
            let sla = if mediator { Sla::External } else { sla_of(section) };
            self.link(*feeder, consumer_id, sla, section.size);
            total = match (total, section.size) {
                (Some(sum), Some(size)) => sum.checked_add(size),
                _ => None,
            };
        }
        if feeders.len() >= 2 {
            self.merges.push(MergePoint {
                consumer: consumer_id,
                merged_level: terminal,
                feeders: feeders.iter().map(|(id, _)| *id).collect(),
                total_size: total,
            });
        }
        Some(consumer_id)
    }

    fn finish(mut self) -> ProvisioningGraph {
        let count = self.drafts.len();
        let roots: Vec<usize> = (0..count).map(|i| self.find(i)).collect();

        let mut ordinal = alloc::vec![usize::MAX; count];
        let mut next = 0;
        for &root in &roots {
            if ordinal[root] == usize::MAX {
                ordinal[root] = next;
                next += 1;
            }
        }

        let mut native = alloc::vec![false; count];
        let mut bare_metal = alloc::vec![false; count];
        for (draft, &root) in self.drafts.iter().zip(&roots) {
            if draft.hardware_root {
                native[root] = true;
                bare_metal[root] |= !draft.implicit;
            }
        }

        let nodes = self
            .drafts
            .iter()
            .zip(&roots)
            .enumerate()
            .map(|(i, (draft, &root))| {
                let kind = if draft.level == Level::EndUser {
                    StakeholderKind::EndUser
                } else if draft.mediator {
                    StakeholderKind::Mediator
                } else if native[root] {
                    StakeholderKind::NativeProvider
                } else {
                    StakeholderKind::NonnativeProvider
                };
                StakeholderNode {
                    id: NodeId(i),
                    level: draft.level,
                    kind,
                    org: OrgId(ordinal[root]),
                    virtualized_hw: !bare_metal[root],
                    implicit: draft.implicit,
                    size: draft.size,
                    span: draft.span,
                }
            })
            .collect();

        let private_cloud = self.edges.iter().all(|e| e.sla == Sla::Internal);
        ProvisioningGraph {
            nodes,
            edges: self.edges,
            merges: self.merges,
            private_cloud,
        }
    }
}

fn sla_of(section: &Section) -> Sla {
    if section.external {
        Sla::External
    } else {
        Sla::Internal
    }
}

#[cfg(test)]
mod tests {
    use alloc::vec;

    use super::super::{classify_spillover, Role};
    use super::*;
    use crate::syntax::parse;

    fn graph(text: &str) -> ProvisioningGraph {
        analyze(&parse(text).unwrap()).unwrap()
    }

    fn errors(text: &str) -> Vec<RuleId> {
        analyze(&parse(text).unwrap())
            .unwrap_err()
            .into_iter()
            .map(|d| d.rule)
            .collect()
    }

    fn pairs(g: &ProvisioningGraph) -> Vec<(Level, Level, Sla)> {
        g.edges
            .iter()
            .map(|e| (g.node(e.provider).level, g.node(e.consumer).level, e.sla))
            .collect()
    }

    fn level_of(g: &ProvisioningGraph, id: NodeId) -> Level {
        g.node(id).level
    }

    #[test]
    fn elementary_pairs_and_slas() {
        use Level::*;
        let g = graph("ips.e");
        assert_eq!(
            pairs(&g),
            [
                (Hardware, Iaas, Sla::Internal),
                (Iaas, Paas, Sla::Internal),
                (Paas, Saas, Sla::Internal),
                (Saas, EndUser, Sla::External)
            ]
        );
        let intermediaries: Vec<Level> = g
            .nodes
            .iter()
            .filter(|n| g.roles(n.id).contains(Role::Intermediary))
            .map(|n| n.level)
            .collect();
        assert_eq!(intermediaries, [Paas, Saas]);
    }

    #[test]
    fn explicit_hardware_makes_the_lowest_provider_an_intermediary() {
        let g = graph("nips.e");
        let i = g.nodes.iter().find(|n| n.level == Level::Iaas).unwrap();
        assert!(g.roles(i.id).intermediary);
        assert!(!g.roles(NodeId(0)).intermediary);
    }

    #[test]
    fn private_cloud() {
        let g = graph("ie");
        assert_eq!(g.org_count(), 1);
        assert!(g.private_cloud);
        assert_eq!(pairs(&g)[1].2, Sla::Internal);
    }

    #[test]
    fn native_and_nonnative_organizations() {
        let g = graph("ip.s.e");
        let orgs: Vec<(Level, usize, StakeholderKind)> =
            g.nodes.iter().map(|n| (n.level, n.org.0, n.kind)).collect();
        use StakeholderKind::*;
        assert_eq!(
            orgs,
            [
                (Level::Hardware, 0, NativeProvider),
                (Level::Iaas, 0, NativeProvider),
                (Level::Paas, 0, NativeProvider),
                (Level::Saas, 1, NonnativeProvider),
                (Level::EndUser, 2, EndUser),
            ]
        );
        assert!(g.nodes.iter().all(|n| n.virtualized_hw));
    }

    #[test]
    fn non_virtualized_hardware() {
        let g = graph("nps.e");
        assert_eq!(g.nodes.len(), 4);
        assert!(!g.nodes[0].implicit);
        assert!(!g.nodes[0].virtualized_hw);
        assert!(g.has_nonvirtualized_hw());
        assert_eq!(g.org_count(), 2);
    }

    #[test]
    fn hybrid_merge_sums_sizes() {
        let g = graph("(ip1)(i.p2.)s.e");
        assert_eq!(g.merges.len(), 1);
        let merge = &g.merges[0];
        assert_eq!(level_of(&g, merge.consumer), Level::Saas);
        assert_eq!(merge.merged_level, Level::Paas);
        assert_eq!(merge.total_size, Some(3));
        assert!(!g.has_mediator());
    }

    #[test]
    fn merge_total_requires_every_size() {
        let g = graph("(ip1)(i.p.)s.e");
        assert_eq!(g.merges[0].total_size, None);
    }

    #[test]
    fn single_provider_mediator() {
        let g = graph("(i.)i.e");
        let mediators: Vec<_> = g.mediators().collect();
        assert_eq!(mediators.len(), 1);
        assert_eq!(mediators[0].level, Level::Iaas);
        assert_eq!(mediators[0].span, Some(Span::new(4, 6)));
        assert!(g.merges.is_empty());
    }

    #[test]
    fn multi_provider_mediator() {
        let g = graph("(ip.)(i.p.)p.s.e");
        let mediator = g.mediators().next().unwrap();
        assert_eq!(mediator.level, Level::Paas);
        let suppliers: Vec<Level> = g
            .in_edges(mediator.id)
            .map(|e| level_of(&g, e.provider))
            .collect();
        assert_eq!(suppliers, [Level::Paas, Level::Paas]);
        assert!(g.in_edges(mediator.id).all(|e| e.sla == Sla::External));
    }

    #[test]
    fn mediator_requires_external_upstream() {
        assert_eq!(errors("(i)i.e"), [RuleId::MediatorInternalProvider]);
        assert_eq!(errors("(ip.)(i.p)p.s.e"), [RuleId::MediatorInternalProvider]);
    }

    #[test]
    fn hybrid_with_internal_and_external_feeders() {
        let g = graph("(i.)(i)s.e");
        let merge = &g.merges[0];
        let slas: Vec<Sla> = g.in_edges(merge.consumer).map(|e| e.sla).collect();
        assert_eq!(slas, [Sla::External, Sla::Internal]);
        assert_eq!(g.node(merge.feeders[1]).org, g.node(merge.consumer).org);
        assert_eq!(
            g.node(merge.consumer).kind,
            StakeholderKind::NativeProvider
        );
        assert_eq!(classify_spillover(&g, merge), Some(merge.feeders[1]));
    }

    #[test]
    fn spillover_needs_exactly_one_internal_feeder() {
        let g = graph("(i.)(i.)s.e");
        assert_eq!(classify_spillover(&g, &g.merges[0]), None);
        let g = graph("(ni3.)(i2.)s.e");
        assert_eq!(classify_spillover(&g, &g.merges[0]), None);
        assert_eq!(g.merges[0].total_size, Some(5));
        assert_eq!(
            g.node(g.merges[0].consumer).kind,
            StakeholderKind::NonnativeProvider
        );
        let g = graph("(i)(i)s.e");
        assert_eq!(classify_spillover(&g, &g.merges[0]), None);
    }

    #[test]
    fn mixed_group_levels_are_rejected() {
        assert_eq!(errors("(i)(p)s.e"), [RuleId::MixedGroupTerminalLevels]);
    }

    #[test]
    fn consumer_below_groups_is_rejected() {
        assert_eq!(errors("(p.)i.e"), [RuleId::GroupConsumerBelowTerminal]);
    }

    #[test]
    fn nested_groups_feed_their_enclosing_chain() {
        let g = graph("((i.)(i)p.)s.e");
        assert_eq!(g.merges.len(), 1);
        assert_eq!(level_of(&g, g.merges[0].consumer), Level::Paas);
        let s = g.nodes.iter().find(|n| n.level == Level::Saas).unwrap();
        assert_eq!(g.in_edges(s.id).count(), 1);
    }

    #[test]
    fn hardware_mediator_is_external_and_flagged() {
        let g = graph("(n)ni.e");
        let mediator = g.mediators().next().unwrap();
        assert_eq!(mediator.level, Level::Hardware);
        assert!(g.in_edges(mediator.id).all(|e| e.sla == Sla::External));
        let warnings = super::super::lint(&g);
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].rule, RuleId::HardwareMediator);
    }

    #[test]
    fn end_user_size_is_kept_on_the_node() {
        let g = graph("i3.s.e6");
        assert_eq!(g.end_user().unwrap().size, Some(6));
        assert_eq!(g.edges[1].size, Some(3));
    }

    #[test]
    fn hand_built_ast_errors() {
        let ast = PatternAst::new(vec![], vec![Section::new(Level::Iaas), Section::new(Level::Iaas)]);
        let rules: Vec<RuleId> = analyze(&ast).unwrap_err().into_iter().map(|d| d.rule).collect();
        assert_eq!(rules, [RuleId::SectionOrder]);

        let ast = PatternAst::new(vec![], vec![Section::new(Level::Iaas)]);
        let rules: Vec<RuleId> = analyze(&ast).unwrap_err().into_iter().map(|d| d.rule).collect();
        assert_eq!(rules, [RuleId::MandatorySections]);

        let ast = PatternAst::new(
            vec![Group::new(vec![], vec![Section::new(Level::Iaas).external()])],
            vec![Section::new(Level::EndUser)],
        );
        let rules: Vec<RuleId> = analyze(&ast).unwrap_err().into_iter().map(|d| d.rule).collect();
        assert_eq!(rules, [RuleId::GroupsWithoutConsumer]);
    }
}
