//! Exhaustive comparison of the analyzer against the brute-force oracle.

mod support;

use cup_core::semantics::analyze;
use cup_core::syntax::parse;
use support::oracle::{candidates, oracle, reading, Key};

#[test]
fn analyzer_matches_oracle_on_every_small_pattern() {
    let mut valid = 0;
    let mut mismatches = Vec::new();
    let all = candidates();
    for text in &all {
        let Ok(ast) = parse(text) else { continue };
        let Ok(graph) = analyze(&ast) else { continue };
        valid += 1;
        let expected = oracle(text);
        let actual = reading(&graph);
        if expected != actual {
            mismatches.push(format!("{text}\n  oracle:   {expected:?}\n  analyzer: {actual:?}"));
        }
    }
    assert!(valid > 1_000, "only {valid} valid patterns out of {}", all.len());
    assert!(
        mismatches.is_empty(),
        "{} of {valid} disagree, first:\n{}",
        mismatches.len(),
        mismatches[0]
    );
}

#[test]
fn oracle_reads_known_shapes() {
    let r = oracle("(i.)(i)s.e");
    let l = Key::Letter;
    assert!(r.edges.contains(&(l(1), l(7), true)));
    assert!(r.edges.contains(&(l(5), l(7), false)));
    assert!(r.edges.contains(&(Key::HardwareUnder(1), l(1), false)));
    assert!(!r.edges.iter().any(|e| e.1 == l(7) && matches!(e.0, Key::HardwareUnder(_))));
    assert_eq!(r.orgs.len(), 3);

    let r = oracle("(n)ni.e");
    assert!(r.edges.contains(&(l(1), l(3), true)));
    let r = oracle("((i.)p.)s.e");
    assert!(r.edges.contains(&(l(2), l(5), true)));
    assert!(r.edges.contains(&(l(5), l(8), true)));
}

#[test]
fn enumeration_covers_every_shape() {
    let all = candidates();
    for probe in ["i.e", "(i.)(i)s.e", "((i.)p.)s.e", "(s.)s.e", "nps.e", "(i)(p)s.e"] {
        assert!(all.iter().any(|c| c == probe), "{probe} missing");
    }
}
