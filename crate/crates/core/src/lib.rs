//! Toolkit for cloud usage patterns: compact strings such as `ip.s.e` or
//! `(i.)(i)s.e` that describe who provisions which abstraction level to whom,
//! under which kind of SLA, and in what volume.
//!
//! The pipeline is
//!
//! ```text
//! text --syntax::parse--> PatternAst --semantics::analyze--> ProvisioningGraph
//!                            |                                   |
//!                      canon::canonicalize                 render::to_renderdoc
//!                                                                |
//!                                                  render::emit_dot / emit_svg
//! ```
//!
//! Everything here is pure and allocation-only, so the crate builds without
//! `std`. File IO, JSON and the command-line front end live in `cup-cli`.
//!
//! ```
//! let ast = cup_core::syntax::parse("ip.s.e").unwrap();
//! let graph = cup_core::semantics::analyze(&ast).unwrap();
//! assert_eq!(graph.edges.len(), 4);
//! assert!(!graph.private_cloud);
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(test, feature = "proptest"))]
extern crate std;

pub mod canon;
pub mod catalog;
pub mod diagnostic;
pub mod level;
pub mod render;
pub mod semantics;
pub mod syntax;

#[cfg(feature = "proptest")]
pub mod arbitrary;

pub use diagnostic::{Diagnostic, RuleId, Severity, Span};
pub use level::Level;
pub use semantics::ProvisioningGraph;
pub use syntax::PatternAst;

use alloc::vec::Vec;

/// Runs every syntactic and semantic check on `text` and returns all
/// diagnostics, errors and warnings alike, ordered by position.
///
/// The pattern is valid iff none of the returned diagnostics is an error.
pub fn check(text: &str) -> Vec<Diagnostic> {
    let mut diagnostics = match syntax::parse(text) {
        Err(errors) => errors,
        Ok(ast) => {
            let mut found = syntax::lint(&ast);
            match semantics::analyze(&ast) {
                Ok(graph) => found.extend(semantics::lint(&graph)),
                Err(errors) => found.extend(errors),
            }
            found
        }
    };
    diagnostics.sort_by_key(|d| (d.span.start, d.span.end));
    diagnostics
}

/// Parses and analyzes in one step.
pub fn compile(text: &str) -> Result<(PatternAst, ProvisioningGraph), Vec<Diagnostic>> {
    let ast = syntax::parse(text)?;
    let graph = semantics::analyze(&ast)?;
    Ok((ast, graph))
}
