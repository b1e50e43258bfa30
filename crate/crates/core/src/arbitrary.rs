//! Proptest strategies producing valid patterns.
//!
//! Strategies draw raw choices (bit masks, sizes, child counts) and
//! interpret them relative to the level a group must end at, so every
//! draw is valid by construction and shrinking stays meaningful.

use alloc::vec::Vec;

use proptest::collection::vec;
use proptest::option;
use proptest::prelude::*;

use crate::level::Level;
use crate::syntax::{print, Group, PatternAst, Section};

/// Largest number of sibling groups generated at one place.
pub const MAX_SIBLINGS: usize = 4;

const PROVIDERS: [Level; 4] = [Level::Hardware, Level::Iaas, Level::Paas, Level::Saas];

#[derive(Clone, Debug)]
struct RawChain {
    mask: u8,
    dots: u8,
    sizes: [Option<u64>; 4],
}

#[derive(Clone, Debug)]
struct RawGroup {
    chain: RawChain,
    child_level: u8,
    children: Vec<RawGroup>,
}

#[derive(Clone, Debug)]
struct RawPattern {
    chain: RawChain,
    end_user_size: Option<u64>,
    group_level: u8,
    groups: Vec<RawGroup>,
}

fn raw_chain() -> impl Strategy<Value = RawChain> {
    (any::<u8>(), any::<u8>(), [size(), size(), size(), size()])
        .prop_map(|(mask, dots, sizes)| RawChain { mask, dots, sizes })
}

fn size() -> impl Strategy<Value = Option<u64>> {
    option::weighted(0.25, 0u64..10_000)
}

fn siblings<S: Strategy<Value = RawGroup>>(inner: S) -> impl Strategy<Value = Vec<RawGroup>> {
    prop_oneof![
        3 => Just(Vec::new()),
        2 => vec(inner, 1..=MAX_SIBLINGS),
    ]
}

fn raw_group(depth: usize) -> BoxedStrategy<RawGroup> {
    let leaf = raw_chain().prop_map(|chain| RawGroup {
        chain,
        child_level: 0,
        children: Vec::new(),
    });
    if depth <= 1 {
        return leaf.boxed();
    }
    (raw_chain(), any::<u8>(), siblings(raw_group(depth - 1)))
        .prop_map(|(chain, child_level, children)| RawGroup {
            chain,
            child_level,
            children,
        })
        .boxed()
}

/// Valid ASTs with at most [`MAX_SIBLINGS`] groups side by side and
/// parentheses nested at most `depth` deep. Spans and source are set.
pub fn pattern_ast(depth: usize) -> impl Strategy<Value = PatternAst> {
    let groups = if depth == 0 {
        Just(Vec::new()).boxed()
    } else {
        siblings(raw_group(depth)).boxed()
    };
    (raw_chain(), option::weighted(0.05, 0u64..100), any::<u8>(), groups).prop_map(
        |(chain, end_user_size, group_level, groups)| {
            build(&RawPattern {
                chain,
                end_user_size,
                group_level,
                groups,
            })
        },
    )
}

/// [`pattern_ast`] with the default shape: nesting at most two deep.
pub fn any_pattern_ast() -> impl Strategy<Value = PatternAst> {
    pattern_ast(2)
}

/// Printed form of [`any_pattern_ast`].
pub fn pattern_text() -> impl Strategy<Value = alloc::string::String> {
    any_pattern_ast().prop_map(|ast| print(&ast))
}

fn build(raw: &RawPattern) -> PatternAst {
    let mut groups = Vec::new();
    let mut low = 0;
    if !raw.groups.is_empty() {
        let terminal = raw.group_level as usize % PROVIDERS.len();
        groups = raw.groups.iter().map(|g| build_group(g, terminal)).collect();
        low = terminal;
    }
    // The top chain needs at least one service level.
    let mut levels = pick(&raw.chain, low, PROVIDERS.len() - 1);
    if !levels.iter().any(|&l| l > 0) {
        levels.push(low.max(1));
    }
    let mut sections = sections(&raw.chain, &levels);
    if !groups.is_empty() && levels[0] == low && low > 0 {
        for g in &mut groups {
            mark_terminal_external(g);
        }
    }
    let mut end_user = Section::new(Level::EndUser);
    end_user.size = raw.end_user_size;
    sections.push(end_user);
    PatternAst::new(groups, sections)
}

fn build_group(raw: &RawGroup, terminal: usize) -> Group {
    if raw.children.is_empty() {
        let mut levels = pick(&raw.chain, 0, terminal);
        ensure_last(&mut levels, terminal);
        return Group::new(Vec::new(), sections(&raw.chain, &levels));
    }
    let child_terminal = raw.child_level as usize % (terminal + 1);
    let mut children: Vec<Group> = raw
        .children
        .iter()
        .map(|c| build_group(c, child_terminal))
        .collect();
    let mut levels = pick(&raw.chain, child_terminal, terminal);
    ensure_last(&mut levels, terminal);
    // A mediator needs external SLAs from its feeders, except at the
    // hardware level where a dot cannot be written.
    if levels[0] == child_terminal && child_terminal > 0 {
        for c in &mut children {
            mark_terminal_external(c);
        }
    }
    Group::new(children, sections(&raw.chain, &levels))
}

/// Provider level indices in `low..=high` selected by the chain's mask.
fn pick(chain: &RawChain, low: usize, high: usize) -> Vec<usize> {
    (low..=high).filter(|&l| chain.mask & (1 << l) != 0).collect()
}

fn ensure_last(levels: &mut Vec<usize>, terminal: usize) {
    if levels.last() != Some(&terminal) {
        levels.push(terminal);
    }
}

fn sections(chain: &RawChain, levels: &[usize]) -> Vec<Section> {
    levels
        .iter()
        .map(|&l| {
            let mut s = Section::new(PROVIDERS[l]);
            s.size = chain.sizes[l];
            s.external = l > 0 && chain.dots & (1 << l) != 0;
            s
        })
        .collect()
}

fn mark_terminal_external(group: &mut Group) {
    if let Some(last) = group.sections.last_mut() {
        last.external = true;
    }
}
