use core::fmt;

use serde::{Deserialize, Serialize};

/// Abstraction level of a section, ordered bottom-up.
///
/// `Hardware` is the level of the `n` letter. A pattern that omits `n` still
/// has hardware underneath its lowest provider; that hardware is assumed to be
/// virtualized and shows up in the semantic model as an implicit node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Level {
    Hardware,
    Iaas,
    Paas,
    Saas,
    EndUser,
}

impl Level {
    pub const ALL: [Level; 5] = [
        Level::Hardware,
        Level::Iaas,
        Level::Paas,
        Level::Saas,
        Level::EndUser,
    ];

    /// Lowercase pattern letter.
    pub const fn letter(self) -> char {
        match self {
            Level::Hardware => 'n',
            Level::Iaas => 'i',
            Level::Paas => 'p',
            Level::Saas => 's',
            Level::EndUser => 'e',
        }
    }

    /// Case-insensitive inverse of [`Level::letter`].
    pub const fn from_letter(c: char) -> Option<Level> {
        match c.to_ascii_lowercase() {
            'n' => Some(Level::Hardware),
            'i' => Some(Level::Iaas),
            'p' => Some(Level::Paas),
            's' => Some(Level::Saas),
            'e' => Some(Level::EndUser),
            _ => None,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Level::Hardware => "Hardware",
            Level::Iaas => "IaaS",
            Level::Paas => "PaaS",
            Level::Saas => "SaaS",
            Level::EndUser => "End-user",
        }
    }

    /// True for the three service delivery levels `i`, `p` and `s`.
    pub const fn is_service(self) -> bool {
        matches!(self, Level::Iaas | Level::Paas | Level::Saas)
    }

    /// Accepts a letter (`i`), the display name (`IaaS`), or the JSON name
    /// (`IAAS`), ignoring case.
    pub fn parse(name: &str) -> Option<Level> {
        let mut chars = name.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            return Level::from_letter(c);
        }
        Level::ALL.into_iter().find(|level| {
            let json = match level {
                Level::Hardware => "HARDWARE",
                Level::Iaas => "IAAS",
                Level::Paas => "PAAS",
                Level::Saas => "SAAS",
                Level::EndUser => "END_USER",
            };
            name.eq_ignore_ascii_case(level.name())
                || name.eq_ignore_ascii_case(json)
                || (*level == Level::EndUser && name.eq_ignore_ascii_case("enduser"))
        })
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_bottom_up() {
        for pair in Level::ALL.windows(2) {
            assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn letters_round_trip() {
        for level in Level::ALL {
            assert_eq!(Level::from_letter(level.letter()), Some(level));
            assert_eq!(Level::from_letter(level.letter().to_ascii_uppercase()), Some(level));
        }
        assert_eq!(Level::from_letter('x'), None);
    }

    #[test]
    fn parse_accepts_several_spellings() {
        assert_eq!(Level::parse("p"), Some(Level::Paas));
        assert_eq!(Level::parse("PaaS"), Some(Level::Paas));
        assert_eq!(Level::parse("END_USER"), Some(Level::EndUser));
        assert_eq!(Level::parse("EndUser"), Some(Level::EndUser));
        assert_eq!(Level::parse("cloud"), None);
    }
}
