//! Brute-force reading of pattern text, independent of the parser.
//!
//! The oracle never builds a tree. It looks at each letter and the bytes
//! around it: what follows tells it the consumer and the SLA, what precedes
//! tells it whether an implicit hardware node sits underneath.

use std::collections::{BTreeMap, BTreeSet};

use cup_core::semantics::{ProvisioningGraph, Sla};

pub const MAX_LETTERS: usize = 6;

/// A stakeholder as the oracle names it: by the byte offset of its letter,
/// or, for implicit hardware, by the offset of the letter it feeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Key {
    Letter(usize),
    HardwareUnder(usize),
}

#[derive(Debug, PartialEq, Eq)]
pub struct Reading {
    pub edges: BTreeSet<(Key, Key, bool)>,
    /// Organizations as sets of keys, each with its native flag.
    pub orgs: BTreeSet<(BTreeSet<Key>, bool)>,
}

fn is_letter(b: u8) -> bool {
    matches!(b, b'n' | b'i' | b'p' | b's' | b'e')
}

/// Index just past the parenthesis group opening at `open`.
fn skip_group(text: &[u8], open: usize) -> usize {
    let mut depth = 0;
    for (k, &b) in text.iter().enumerate().skip(open) {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return k + 1;
                }
            }
            _ => {}
        }
    }
    panic!("unbalanced oracle input");
}

/// The letter that consumes from the letter at `at`, if any.
fn consumer_of(text: &[u8], at: usize) -> Option<usize> {
    let mut k = at + 1;
    if text.get(k) == Some(&b'.') {
        k += 1;
    }
    match text.get(k)? {
        &b if is_letter(b) => Some(k),
        b')' => {
            // Leave this group and skip the sibling groups after it.
            let mut k = close_run(text, at);
            while text[k] == b'(' {
                k = skip_group(text, k);
            }
            Some(k)
        }
        _ => None,
    }
}

/// Index just past the `)` closing the group that contains `at`.
fn close_run(text: &[u8], at: usize) -> usize {
    let mut depth = 0i32;
    for (k, &b) in text.iter().enumerate().skip(at) {
        match b {
            b'(' => depth += 1,
            b')' if depth == 0 => return k + 1,
            b')' => depth -= 1,
            _ => {}
        }
    }
    panic!("letter is not inside a group");
}

pub fn oracle(text: &str) -> Reading {
    let bytes = text.as_bytes();
    let letters: Vec<usize> = (0..bytes.len()).filter(|&k| is_letter(bytes[k])).collect();
    let mut edges = BTreeSet::new();

    for &at in &letters {
        let starts_chain = at == 0 || bytes[at - 1] == b'(';
        if starts_chain && bytes[at] != b'n' {
            edges.insert((Key::HardwareUnder(at), Key::Letter(at), false));
        }
        if let Some(to) = consumer_of(bytes, at) {
            let dotted = bytes.get(at + 1) == Some(&b'.');
            let crosses = bytes[at + 1 + dotted as usize] == b')';
            // Hardware handed over to another hardware provider cannot be
            // internal: the receiver re-provisions it.
            let hardware_mediator = crosses && bytes[at] == b'n' && bytes[to] == b'n';
            edges.insert((Key::Letter(at), Key::Letter(to), dotted || hardware_mediator));
        }
    }

    // Organizations: connected components over internal edges.
    let mut keys: BTreeSet<Key> = letters.iter().map(|&k| Key::Letter(k)).collect();
    for (a, b, _) in &edges {
        keys.insert(*a);
        keys.insert(*b);
    }
    let mut parent: BTreeMap<Key, Key> = keys.iter().map(|&k| (k, k)).collect();
    fn root(parent: &BTreeMap<Key, Key>, mut k: Key) -> Key {
        while parent[&k] != k {
            k = parent[&k];
        }
        k
    }
    for &(a, b, external) in &edges {
        if !external {
            let (ra, rb) = (root(&parent, a), root(&parent, b));
            parent.insert(ra, rb);
        }
    }
    let mut groups: BTreeMap<Key, BTreeSet<Key>> = BTreeMap::new();
    for &k in &keys {
        groups.entry(root(&parent, k)).or_default().insert(k);
    }
    let owns_hardware = |k: &Key| match *k {
        Key::HardwareUnder(_) => true,
        Key::Letter(at) => bytes[at] == b'n' && !(at > 0 && bytes[at - 1] == b')'),
    };
    let orgs = groups
        .into_values()
        .map(|members| {
            let native = members.iter().any(owns_hardware);
            (members, native)
        })
        .collect();
    Reading { edges, orgs }
}

pub fn reading(graph: &ProvisioningGraph) -> Reading {
    let key = |id: cup_core::semantics::NodeId| -> Key {
        let node = graph.node(id);
        match node.span {
            Some(span) => Key::Letter(span.start),
            None => {
                let fed = graph.out_edges(id).next().expect("implicit hardware feeds a letter");
                Key::HardwareUnder(graph.node(fed.consumer).span.unwrap().start)
            }
        }
    };
    let edges = graph
        .edges
        .iter()
        .map(|e| (key(e.provider), key(e.consumer), e.sla == Sla::External))
        .collect();
    let mut orgs: BTreeMap<usize, BTreeSet<Key>> = BTreeMap::new();
    for node in &graph.nodes {
        orgs.entry(node.org.0).or_default().insert(key(node.id));
    }
    let orgs = orgs
        .into_iter()
        .map(|(org, members)| (members, graph.org_is_native(cup_core::semantics::OrgId(org))))
        .collect();
    Reading { edges, orgs }
}

/// Chains of strictly ascending letters with an optional dot after each.
/// Descending or repeated letters are rejected before analysis ever runs,
/// so leaving them out loses no valid pattern.
fn chains(len: usize) -> Vec<String> {
    let mut out = Vec::new();
    let letters = ['n', 'i', 'p', 's', 'e'];
    for mask in 0u32..32 {
        if mask.count_ones() as usize != len {
            continue;
        }
        let picked: Vec<char> = (0..5).filter(|b| mask & (1 << b) != 0).map(|b| letters[b]).collect();
        for dots in 0u32..(1 << len) {
            let mut s = String::new();
            for (k, c) in picked.iter().enumerate() {
                s.push(*c);
                if dots & (1 << k) != 0 {
                    s.push('.');
                }
            }
            out.push(s);
        }
    }
    out
}

/// Splits of `total` letters into `parts` non-empty chains.
fn splits(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return if total >= 1 { vec![vec![total]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..total {
        for mut rest in splits(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Prints chain slots into one pattern shape.
type Layout = fn(&[&str]) -> String;

pub fn candidates() -> Vec<String> {
    let by_len: Vec<Vec<String>> = (0..=5).map(chains).collect();
    // Layouts with chain slots A, B, X.
    let shapes: [(usize, Layout); 4] = [
        (1, |c| c[0].to_string()),
        (2, |c| format!("({}){}", c[0], c[1])),
        (3, |c| format!("({})({}){}", c[0], c[1], c[2])),
        (3, |c| format!("(({}){}){}", c[0], c[1], c[2])),
    ];
    let mut out = Vec::new();
    for (slots, layout) in shapes {
        for total in slots..=MAX_LETTERS {
            for split in splits(total, slots) {
                if split.iter().any(|&n| n > 5) {
                    continue;
                }
                let mut stack: Vec<Vec<&str>> = vec![vec![]];
                for &n in &split {
                    stack = stack
                        .into_iter()
                        .flat_map(|prefix| {
                            by_len[n].iter().map(move |c| {
                                let mut p = prefix.clone();
                                p.push(c.as_str());
                                p
                            })
                        })
                        .collect();
                }
                out.extend(stack.iter().map(|parts| layout(parts)));
            }
        }
    }
    out
}

