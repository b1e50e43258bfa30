use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::diagnostic::Span;
use crate::level::Level;

/// One abstraction-level section: a letter, an optional size, and an optional
/// trailing dot marking an external SLA towards the next consumer.
///
/// Equality is structural and ignores `span`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Section {
    pub level: Level,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u64>,
    pub external: bool,
    #[serde(default)]
    pub span: Span,
}

impl Section {
    pub fn new(level: Level) -> Self {
        Section {
            level,
            size: None,
            external: false,
            span: Span::default(),
        }
    }

    pub fn with_size(mut self, size: u64) -> Self {
        self.size = Some(size);
        self
    }

    pub fn external(mut self) -> Self {
        self.external = true;
        self
    }
}

impl PartialEq for Section {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && self.size == other.size && self.external == other.external
    }
}

impl Eq for Section {}

/// A parenthesized provider specification feeding the section that follows
/// it. Groups nest.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Group {
    #[serde(default)]
    pub groups: Vec<Group>,
    pub sections: Vec<Section>,
    #[serde(default)]
    pub span: Span,
}

impl Group {
    pub fn new(groups: Vec<Group>, sections: Vec<Section>) -> Self {
        Group {
            groups,
            sections,
            span: Span::default(),
        }
    }

    /// Level at which this group provisions to its consumer.
    pub fn terminal_level(&self) -> Option<Level> {
        self.sections.last().map(|s| s.level)
    }

    /// The section whose out-edge leaves the parentheses.
    pub fn terminal(&self) -> Option<&Section> {
        self.sections.last()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.groups == other.groups && self.sections == other.sections
    }
}

impl Eq for Group {}

/// Lossless parse tree of one pattern.
///
/// Equality is structural: spans and the source text are ignored, so
/// `parse("I_3.E") == parse("i3.e")`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct PatternAst {
    #[serde(default)]
    pub groups: Vec<Group>,
    /// Top-level chain; the last entry is the end-user section.
    pub sections: Vec<Section>,
    #[serde(default)]
    pub source: String,
}

impl PartialEq for PatternAst {
    fn eq(&self, other: &Self) -> bool {
        self.groups == other.groups && self.sections == other.sections
    }
}

impl Eq for PatternAst {}

impl PatternAst {
    pub fn new(groups: Vec<Group>, sections: Vec<Section>) -> Self {
        let mut ast = PatternAst {
            groups,
            sections,
            source: String::new(),
        };
        ast.relayout();
        ast
    }

    pub fn end_user(&self) -> Option<&Section> {
        self.sections.last().filter(|s| s.level == Level::EndUser)
    }

    /// Rewrites `source` and every span to describe the printed form.
    pub fn relayout(&mut self) {
        fn sections(list: &mut [Section], pos: &mut usize, out: &mut String) {
            for section in list {
                let start = *pos;
                super::printer::write_section(section, out);
                *pos = out.len();
                section.span = Span::new(start, *pos);
            }
        }
        fn group(g: &mut Group, pos: &mut usize, out: &mut String) {
            let start = *pos;
            out.push('(');
            *pos = out.len();
            for inner in &mut g.groups {
                group(inner, pos, out);
            }
            sections(&mut g.sections, pos, out);
            out.push(')');
            *pos = out.len();
            g.span = Span::new(start, *pos);
        }
        let mut out = String::new();
        let mut pos = 0;
        for g in &mut self.groups {
            group(g, &mut pos, &mut out);
        }
        sections(&mut self.sections, &mut pos, &mut out);
        self.source = out;
    }

    /// Copy with every size annotation removed.
    pub fn without_sizes(&self) -> PatternAst {
        fn strip_sections(list: &mut [Section]) {
            for s in list {
                s.size = None;
            }
        }
        fn strip_group(g: &mut Group) {
            g.groups.iter_mut().for_each(strip_group);
            strip_sections(&mut g.sections);
        }
        let mut copy = self.clone();
        copy.groups.iter_mut().for_each(strip_group);
        strip_sections(&mut copy.sections);
        copy.relayout();
        copy
    }

    /// Maximum parenthesis nesting depth; 0 when there are no groups.
    pub fn depth(&self) -> usize {
        fn depth(g: &Group) -> usize {
            1 + g.groups.iter().map(depth).max().unwrap_or(0)
        }
        self.groups.iter().map(depth).max().unwrap_or(0)
    }
}
