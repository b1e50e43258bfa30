use alloc::format;
use alloc::vec::Vec;

use crate::diagnostic::{Diagnostic, RuleId, Span};
use crate::level::Level;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Letter(Level),
    Dot,
    LParen,
    RParen,
    Number(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

/// Splits `text` into tokens, stopping at the first byte that cannot start
/// one.
///
/// An `_` directly followed by digits belongs to the number token.
pub fn tokenize(text: &str) -> Result<Vec<Token>, Diagnostic> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::with_capacity(bytes.len());
    let mut pos = 0;
    while pos < bytes.len() {
        let start = pos;
        let b = bytes[pos];
        let kind = match b {
            b'.' => TokenKind::Dot,
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            b'_' | b'0'..=b'9' => {
                let digits_start = if b == b'_' { pos + 1 } else { pos };
                let mut end = digits_start;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                if end == digits_start {
                    return Err(Diagnostic::error(
                        RuleId::UnexpectedCharacter,
                        Span::new(start, start + 1),
                        "`_` must be followed by the digits of a size",
                    ));
                }
                let value = text[digits_start..end].parse::<u64>().map_err(|_| {
                    Diagnostic::error(
                        RuleId::SizeOverflow,
                        Span::new(start, end),
                        "size does not fit in 64 bits",
                    )
                })?;
                tokens.push(Token {
                    kind: TokenKind::Number(value),
                    span: Span::new(start, end),
                });
                pos = end;
                continue;
            }
            _ => match Level::from_letter(b as char) {
                Some(level) if b.is_ascii() => TokenKind::Letter(level),
                _ => return Err(unexpected(text, start)),
            },
        };
        pos += 1;
        tokens.push(Token {
            kind,
            span: Span::new(start, pos),
        });
    }
    Ok(tokens)
}

fn unexpected(text: &str, at: usize) -> Diagnostic {
    let ch = text[at..].chars().next().unwrap_or('\u{fffd}');
    let span = Span::new(at, at + ch.len_utf8());
    let message = if ch.is_whitespace() {
        "whitespace is not allowed inside a pattern".into()
    } else {
        format!("unexpected character {ch:?}; expected one of n i p s e . ( ) or a digit")
    };
    Diagnostic::error(RuleId::UnexpectedCharacter, span, message)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn simple_pattern() {
        use TokenKind::*;
        assert_eq!(kinds("i.e"), [Letter(Level::Iaas), Dot, Letter(Level::EndUser)]);
    }

    #[test]
    fn case_is_folded() {
        assert_eq!(kinds("I.E"), kinds("i.e"));
    }

    #[test]
    fn sizes_become_numbers() {
        use TokenKind::*;
        assert_eq!(
            kinds("i3.s.e"),
            [Letter(Level::Iaas), Number(3), Dot, Letter(Level::Saas), Dot, Letter(Level::EndUser)]
        );
        let tokens = tokenize("i_42.e").unwrap();
        assert_eq!(tokens[1].kind, Number(42));
        assert_eq!(tokens[1].span, Span::new(1, 4));
    }

    #[test]
    fn whitespace_is_rejected() {
        let err = tokenize("i. e").unwrap_err();
        assert_eq!(err.rule, RuleId::UnexpectedCharacter);
        assert_eq!(err.span, Span::new(2, 3));
        assert!(err.message.contains("whitespace"));
    }

    #[test]
    fn unknown_characters_cover_the_whole_char() {
        let err = tokenize("iä").unwrap_err();
        assert_eq!(err.span, Span::new(1, 3));
        let err = tokenize("x").unwrap_err();
        assert_eq!(err.rule, RuleId::UnexpectedCharacter);
    }

    #[test]
    fn lone_underscore_is_rejected() {
        assert_eq!(tokenize("i_.e").unwrap_err().span, Span::new(1, 2));
    }

    #[test]
    fn huge_sizes_overflow() {
        let err = tokenize("i99999999999999999999999.e").unwrap_err();
        assert_eq!(err.rule, RuleId::SizeOverflow);
    }
}
