//! Rule-anchored diagnostics.

use alloc::string::String;
use core::fmt;

use serde::{Deserialize, Serialize};

/// Half-open byte range `[start, end)` into the pattern text.
///
/// Serialized as a two-element array.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub const fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub const fn len(&self) -> usize {
        self.end - self.start
    }

    pub const fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Smallest span covering both.
    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl From<[usize; 2]> for Span {
    fn from([start, end]: [usize; 2]) -> Self {
        Span { start, end }
    }
}

impl From<Span> for [usize; 2] {
    fn from(span: Span) -> Self {
        [span.start, span.end]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        })
    }
}

macro_rules! rule_ids {
    ($( $(#[$meta:meta])* $variant:ident => $code:literal ),* $(,)?) => {
        /// Closed set of rule identifiers. Codes of the form `E.*`, `H.*` and
        /// `M.*` name a notation rule; `X.*` codes and the bare names are
        /// toolkit checks.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum RuleId {
            $( $(#[$meta])* #[serde(rename = $code)] $variant, )*
        }

        impl RuleId {
            pub const ALL: &'static [RuleId] = &[$(RuleId::$variant),*];

            pub const fn code(self) -> &'static str {
                match self {
                    $( RuleId::$variant => $code, )*
                }
            }

            pub fn from_code(code: &str) -> Option<RuleId> {
                match code {
                    $( $code => Some(RuleId::$variant), )*
                    _ => None,
                }
            }
        }
    };
}

rule_ids! {
    /// Sections out of the fixed bottom-up order, or a level repeated
    /// outside the mediator position.
    SectionOrder => "E.I.1",
    /// Missing end-user section, or no `i`, `p` or `s` section.
    MandatorySections => "E.I.2",
    /// The end-user section holds more than one character.
    SectionArity => "E.I.3",
    /// More than one size number in a section, or a number not placed
    /// right after a letter.
    SizePlacement => "E.I.5",
    /// A dot after `n` or after `e`.
    DotPlacement => "E.I.6",
    /// Sibling groups end at different abstraction levels.
    MixedGroupTerminalLevels => "H.0",
    /// End-user section written inside parentheses.
    EndUserInGroup => "H.II",
    /// External SLA of a hybrid provider written outside its parentheses.
    DotOutsideGroup => "H.III",
    /// The section after a set of groups is below the groups' level.
    GroupConsumerBelowTerminal => "H.5",
    /// A group feeding a mediator lacks its trailing dot.
    MediatorInternalProvider => "M.III",
    /// Size written on the end-user section (accepted, flagged).
    SizeOnEndUser => "X.1",
    /// Groups with no following section to consume from them.
    GroupsWithoutConsumer => "X.2",
    /// Mediator at the non-virtualized hardware level (accepted, flagged).
    HardwareMediator => "X.3",
    /// Parentheses nested deeper than the supported limit.
    NestingTooDeep => "X.4",
    /// Size number does not fit in 64 bits.
    SizeOverflow => "X.5",
    UnexpectedCharacter => "UnexpectedCharacter",
    UnexpectedToken => "UnexpectedToken",
    UnbalancedParen => "UnbalancedParen",
    EmptyGroup => "EmptyGroup",
    GroupAfterSection => "GroupAfterSection",
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    #[serde(rename = "rule_id")]
    pub rule: RuleId,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn error(rule: RuleId, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            rule,
            message: message.into(),
            span,
        }
    }

    pub fn warning(rule: RuleId, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            rule,
            message: message.into(),
            span,
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}]: {} at {}..{}",
            self.severity, self.rule, self.message, self.span.start, self.span.end
        )
    }
}
