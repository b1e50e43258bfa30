use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::ast::{Group, PatternAst, Section};
use super::lexer::{tokenize, Token, TokenKind};
use crate::diagnostic::{Diagnostic, RuleId, Span};
use crate::level::Level;

/// Deepest accepted parenthesis nesting.
pub const MAX_DEPTH: usize = 16;

/// Parses a pattern, enforcing every purely syntactic rule.
///
/// On failure every error found is returned, ordered by position. The parser
/// keeps going after most errors, so a single call reports e.g. both the
/// misplaced dot and the missing service section in `n.e`.
pub fn parse(text: &str) -> Result<PatternAst, Vec<Diagnostic>> {
    let tokens = tokenize(text).map_err(|d| vec![d])?;
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        errors: Vec::new(),
    };
    let (groups, sections) = parser.body(0);
    parser.check_top_level(&groups, &sections);

    if parser.errors.is_empty() {
        Ok(PatternAst {
            groups,
            sections,
            source: text.to_string(),
        })
    } else {
        let mut errors = parser.errors;
        errors.sort_by_key(|d| (d.span.start, d.span.end));
        Err(errors)
    }
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    errors: Vec<Diagnostic>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Token> {
        self.tokens.get(self.pos).copied()
    }

    fn previous(&self) -> Option<TokenKind> {
        self.pos.checked_sub(1).map(|i| self.tokens[i].kind)
    }

    fn error(&mut self, rule: RuleId, span: Span, message: impl Into<alloc::string::String>) {
        self.errors.push(Diagnostic::error(rule, span, message));
    }

    /// Groups followed by sections, up to the closing parenthesis of the
    /// enclosing group (not consumed) or the end of input.
    fn body(&mut self, depth: usize) -> (Vec<Group>, Vec<Section>) {
        let in_group = depth > 0;
        let mut groups = Vec::new();
        let mut sections: Vec<Section> = Vec::new();

        while let Some(tok) = self.peek() {
            match tok.kind {
                TokenKind::RParen if in_group => break,
                TokenKind::RParen => {
                    self.error(RuleId::UnbalancedParen, tok.span, "unmatched `)`");
                    self.pos += 1;
                }
                TokenKind::LParen => {
                    self.pos += 1;
                    if !sections.is_empty() {
                        self.error(
                            RuleId::GroupAfterSection,
                            tok.span,
                            "parenthesized specifications must come before the sections they feed",
                        );
                    }
                    if depth + 1 > MAX_DEPTH {
                        self.error(
                            RuleId::NestingTooDeep,
                            tok.span,
                            format!("parentheses nested deeper than {MAX_DEPTH} levels"),
                        );
                        self.skip_group(tok.span);
                    } else if let Some(group) = self.group(tok.span, depth + 1) {
                        groups.push(group);
                    }
                }
                TokenKind::Letter(level) => self.section(level, in_group, &mut sections),
                TokenKind::Dot => {
                    match self.previous() {
                        None | Some(TokenKind::LParen) => self.error(
                            RuleId::UnexpectedCharacter,
                            tok.span,
                            "`.` must follow the letter of the provider it belongs to",
                        ),
                        Some(TokenKind::RParen) => self.error(
                            RuleId::DotOutsideGroup,
                            tok.span,
                            "the external SLA of a hybrid provider is written inside its parentheses",
                        ),
                        // Already reported at the stray size.
                        Some(TokenKind::Number(_)) => {}
                        _ => self.error(RuleId::UnexpectedToken, tok.span, "repeated `.`"),
                    }
                    self.pos += 1;
                }
                TokenKind::Number(_) => {
                    if matches!(self.previous(), Some(TokenKind::Number(_))) {
                        self.error(
                            RuleId::SizePlacement,
                            tok.span,
                            "a section carries at most one size number",
                        );
                    } else {
                        self.error(
                            RuleId::SizePlacement,
                            tok.span,
                            "a size must come directly after the letter of its section",
                        );
                    }
                    self.pos += 1;
                }
            }
        }
        (groups, sections)
    }

    fn section(&mut self, level: Level, in_group: bool, sections: &mut Vec<Section>) {
        let letter = self.tokens[self.pos];
        self.pos += 1;
        let mut section = Section {
            level,
            size: None,
            external: false,
            span: letter.span,
        };
        if let Some(Token {
            kind: TokenKind::Number(n),
            span,
        }) = self.peek()
        {
            section.size = Some(n);
            section.span = section.span.to(span);
            self.pos += 1;
        }
        if let Some(Token {
            kind: TokenKind::Dot,
            span,
        }) = self.peek()
        {
            match level {
                Level::Hardware => self.error(
                    RuleId::DotPlacement,
                    span,
                    "no `.` after `n`: non-virtualized hardware belongs to the organization above it",
                ),
                Level::EndUser => {
                    self.error(RuleId::DotPlacement, span, "no `.` after the end-user section")
                }
                _ => section.external = true,
            }
            section.span = section.span.to(span);
            self.pos += 1;
        }

        if level == Level::EndUser && in_group {
            self.error(
                RuleId::EndUserInGroup,
                letter.span,
                "the end-user section cannot appear inside parentheses",
            );
        } else if let Some(last) = sections.last() {
            if last.level == Level::EndUser {
                if level == Level::EndUser {
                    self.error(
                        RuleId::SectionArity,
                        letter.span,
                        "the end-user section holds a single `e`",
                    );
                } else {
                    self.error(
                        RuleId::SectionOrder,
                        last.span.to(letter.span),
                        format!("{level} section after the end-user section"),
                    );
                }
            } else if level == last.level {
                self.error(
                    RuleId::SectionOrder,
                    last.span.to(letter.span),
                    format!("{level} appears twice; only a mediator after parentheses may repeat a level"),
                );
            } else if level < last.level {
                self.error(
                    RuleId::SectionOrder,
                    last.span.to(letter.span),
                    format!(
                        "{level} section after {}; sections must go n, i, p, s, e",
                        last.level
                    ),
                );
            }
        }
        sections.push(section);
    }

    fn group(&mut self, open: Span, depth: usize) -> Option<Group> {
        let (groups, sections) = self.body(depth);
        let close = match self.peek() {
            Some(tok) if tok.kind == TokenKind::RParen => {
                self.pos += 1;
                tok.span
            }
            _ => {
                self.error(RuleId::UnbalancedParen, open, "unclosed `(`");
                return None;
            }
        };
        let span = open.to(close);
        if sections.is_empty() {
            if groups.is_empty() {
                self.error(RuleId::EmptyGroup, span, "empty parentheses");
            } else {
                self.error(
                    RuleId::GroupsWithoutConsumer,
                    close,
                    "nested parentheses need a section inside the enclosing group to feed",
                );
            }
        }
        Some(Group {
            groups,
            sections,
            span,
        })
    }

    /// Skips past the parenthesis matching an already consumed `(`.
    fn skip_group(&mut self, open: Span) {
        let mut open_count = 1usize;
        while let Some(tok) = self.peek() {
            self.pos += 1;
            match tok.kind {
                TokenKind::LParen => open_count += 1,
                TokenKind::RParen => {
                    open_count -= 1;
                    if open_count == 0 {
                        return;
                    }
                }
                _ => {}
            }
        }
        self.error(RuleId::UnbalancedParen, open, "unclosed `(`");
    }

    fn check_top_level(&mut self, groups: &[Group], sections: &[Section]) {
        // An unclosed group swallows the rest of the input; missing
        // sections after it are a consequence, not a separate mistake.
        if self.errors.iter().any(|d| d.rule == RuleId::UnbalancedParen) {
            return;
        }
        let fallback = self
            .tokens
            .last()
            .map_or(Span::new(0, 0), |t| t.span);
        if !sections.iter().any(|s| s.level == Level::EndUser) {
            self.error(
                RuleId::MandatorySections,
                fallback,
                "a pattern must end with the end-user section `e`",
            );
        }
        if !sections.iter().any(|s| s.level.is_service()) {
            let span = sections.first().map_or(fallback, |s| s.span);
            self.error(
                RuleId::MandatorySections,
                span,
                "a pattern needs at least one of the sections i, p or s outside parentheses",
            );
            if let Some(last) = groups.last() {
                self.error(
                    RuleId::GroupsWithoutConsumer,
                    last.span,
                    "parenthesized specifications need a following provider section to feed",
                );
            }
        }
    }
}
