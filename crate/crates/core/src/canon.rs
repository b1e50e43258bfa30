//! Canonical form, equivalence and diffing.
//!
//! The order of sibling parenthesized specifications carries no meaning, so
//! the canonical form sorts them, at every depth, by the bytes of their own
//! canonical text. Sizes and dots stay part of a pattern's identity.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::level::Level;
use crate::syntax::{print, Group, PatternAst, Section};

pub fn canonicalize(ast: &PatternAst) -> PatternAst {
    let mut out = PatternAst {
        groups: canonical_groups(&ast.groups),
        sections: ast.sections.clone(),
        source: String::new(),
    };
    out.relayout();
    out
}

fn canonical_groups(groups: &[Group]) -> Vec<Group> {
    let mut keyed: Vec<(String, Group)> = groups
        .iter()
        .map(|g| {
            let group = Group::new(canonical_groups(&g.groups), g.sections.clone());
            (format!("{group}"), group)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.as_bytes().cmp(b.0.as_bytes()));
    keyed.into_iter().map(|(_, g)| g).collect()
}

/// Canonical text of a pattern.
pub fn canonical_text(ast: &PatternAst) -> String {
    print(&canonicalize(ast))
}

pub fn equivalent(a: &PatternAst, b: &PatternAst) -> bool {
    canonical_text(a) == canonical_text(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DifferenceKind {
    Sla,
    Size,
    Level,
    Group,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Difference {
    pub kind: DifferenceKind,
    pub detail: String,
}

/// Section-aligned differences between two patterns, after canonicalization.
/// Empty iff the patterns are equivalent.
///
/// Sections are matched by level. Identical groups cancel out; the remaining
/// groups are paired in canonical order and compared recursively, and any
/// left over are reported as present on one side only.
pub fn diff(a: &PatternAst, b: &PatternAst) -> Vec<Difference> {
    let (a, b) = (canonicalize(a), canonicalize(b));
    let mut out = Vec::new();
    diff_body(&a.groups, &a.sections, &b.groups, &b.sections, "", &mut out);
    out
}

fn diff_body(
    a_groups: &[Group],
    a_sections: &[Section],
    b_groups: &[Group],
    b_sections: &[Section],
    context: &str,
    out: &mut Vec<Difference>,
) {
    let mut only_b: Vec<&Group> = b_groups.iter().collect();
    let mut only_a: Vec<&Group> = Vec::new();
    for g in a_groups {
        match only_b.iter().position(|other| *other == g) {
            Some(i) => {
                only_b.remove(i);
            }
            None => only_a.push(g),
        }
    }
    let paired = only_a.len().min(only_b.len());
    for (ga, gb) in only_a.iter().zip(&only_b) {
        let inner = format!("{context}group {ga} vs {gb}: ");
        diff_body(&ga.groups, &ga.sections, &gb.groups, &gb.sections, &inner, out);
    }
    for g in &only_a[paired..] {
        out.push(Difference {
            kind: DifferenceKind::Group,
            detail: format!("{context}hybrid feeder {g} only in a"),
        });
    }
    for g in &only_b[paired..] {
        out.push(Difference {
            kind: DifferenceKind::Group,
            detail: format!("{context}hybrid feeder {g} only in b"),
        });
    }

    for level in Level::ALL {
        let sa = a_sections.iter().position(|s| s.level == level);
        let sb = b_sections.iter().position(|s| s.level == level);
        match (sa, sb) {
            (None, None) => {}
            (Some(_), None) => out.push(Difference {
                kind: DifferenceKind::Level,
                detail: format!("{context}{level} section present only in a"),
            }),
            (None, Some(_)) => out.push(Difference {
                kind: DifferenceKind::Level,
                detail: format!("{context}{level} section present only in b"),
            }),
            (Some(ia), Some(ib)) => {
                let (x, y) = (&a_sections[ia], &b_sections[ib]);
                let next_a = a_sections.get(ia + 1).map(|s| s.level);
                let next_b = b_sections.get(ib + 1).map(|s| s.level);
                // With different consumers the level difference already
                // explains the changed pair.
                if x.external != y.external && next_a == next_b {
                    let next = next_a.map_or("its consumer", Level::name);
                    out.push(Difference {
                        kind: DifferenceKind::Sla,
                        detail: format!(
                            "{context}SLA at {level}->{next}: {} vs {}",
                            sla_name(x.external),
                            sla_name(y.external)
                        ),
                    });
                }
                if x.size != y.size {
                    out.push(Difference {
                        kind: DifferenceKind::Size,
                        detail: format!(
                            "{context}size at {level}: {} vs {}",
                            size_name(x.size),
                            size_name(y.size)
                        ),
                    });
                }
            }
        }
    }
}

fn sla_name(external: bool) -> &'static str {
    if external {
        "EXTERNAL"
    } else {
        "INTERNAL"
    }
}

fn size_name(size: Option<u64>) -> String {
    size.map_or_else(|| String::from("none"), |s| format!("{s}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn canon(text: &str) -> String {
        canonical_text(&parse(text).unwrap())
    }

    fn eq(a: &str, b: &str) -> bool {
        equivalent(&parse(a).unwrap(), &parse(b).unwrap())
    }

    fn differences(a: &str, b: &str) -> Vec<Difference> {
        diff(&parse(a).unwrap(), &parse(b).unwrap())
    }

    #[test]
    fn sorts_sibling_groups_by_text() {
        assert_eq!(canon("(i.p.)(ip)s.e"), "(i.p.)(ip)s.e");
        assert_eq!(canon("(ip)(i.p.)s.e"), "(i.p.)(ip)s.e");
        assert_eq!(canon("I.E"), "i.e");
        assert_eq!(canon("((i)(i.)p.)s.e"), "((i)(i.)p.)s.e");
    }

    #[test]
    fn canonical_ast_has_fresh_spans() {
        let c = canonicalize(&parse("(ip)(i.p.)s.e").unwrap());
        assert_eq!(c.source, "(i.p.)(ip)s.e");
        assert_eq!(c.groups[1].span.start, 6);
    }

    #[test]
    fn equivalence() {
        assert!(eq("(ip)(i.p.)s.e", "(i.p.)(ip)s.e"));
        assert!(!eq("i.e", "ie"));
        assert!(!eq("i3.e", "i.e"));
    }

    #[test]
    fn diff_of_equivalent_patterns_is_empty() {
        assert!(differences("(ip)(i.p.)s.e", "(i.p.)(ip)s.e").is_empty());
    }

    #[test]
    fn diff_reports_sla_flip() {
        let d = differences("i.e", "ie");
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DifferenceKind::Sla);
        assert_eq!(d[0].detail, "SLA at IaaS->End-user: EXTERNAL vs INTERNAL");
    }

    #[test]
    fn diff_reports_missing_level() {
        let d = differences("i.s.e", "ip.s.e");
        assert_eq!(
            d,
            [Difference {
                kind: DifferenceKind::Level,
                detail: "PaaS section present only in b".into()
            }]
        );
    }

    #[test]
    fn diff_reports_extra_feeder() {
        let d = differences("(i.)(i)s.e", "(i.)s.e");
        assert_eq!(
            d,
            [Difference {
                kind: DifferenceKind::Group,
                detail: "hybrid feeder (i) only in a".into()
            }]
        );
    }

    #[test]
    fn diff_recurses_into_paired_groups() {
        let d = differences("(i3.)(p.)s.e", "(i.)(p.)s.e");
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DifferenceKind::Size);
        assert_eq!(d[0].detail, "group (i3.) vs (i.): size at IaaS: 3 vs none");
    }
}
