//! Named scenarios and queries over their analyzed graphs.

mod corpus;

use alloc::borrow::ToOwned;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::diagnostic::Diagnostic;
use crate::level::Level;
use crate::semantics::ProvisioningGraph;
use crate::syntax::PatternAst;
use crate::{canon, compile};

/// One named real-world scenario and the pattern it follows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioEntry {
    pub key: String,
    pub title: String,
    pub pattern: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub app_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_unit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_note: Option<String>,
}

impl ScenarioEntry {
    pub fn new(key: &str, title: &str, pattern: &str) -> Self {
        ScenarioEntry {
            key: key.to_owned(),
            title: title.to_owned(),
            pattern: pattern.to_owned(),
            app_type: None,
            size_unit: None,
            source_note: None,
        }
    }

    pub fn with_app_type(mut self, app_type: &str) -> Self {
        self.app_type = Some(app_type.to_owned());
        self
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.source_note = Some(note.to_owned());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogError {
    /// The entry's pattern has at least one error diagnostic.
    ValidationFailed(String, Vec<Diagnostic>),
    DuplicateKey(String),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::ValidationFailed(key, diags) => {
                write!(f, "entry {key} has an invalid pattern")?;
                for d in diags {
                    write!(f, "; {d}")?;
                }
                Ok(())
            }
            CatalogError::DuplicateKey(key) => write!(f, "duplicate entry key {key}"),
        }
    }
}

impl core::error::Error for CatalogError {}

#[derive(Clone, Debug)]
struct Stored {
    entry: ScenarioEntry,
    ast: PatternAst,
    graph: ProvisioningGraph,
}

/// A validated, immutable set of scenarios.
///
/// Every entry's pattern was compiled without errors on the way in, and
/// the analyzed graph is kept alongside it for queries.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    // Kept sorted by key.
    stored: Vec<Stored>,
}

impl Catalog {
    /// Validates all entries; fails on the first invalid or repeated key.
    pub fn new(entries: Vec<ScenarioEntry>) -> Result<Catalog, CatalogError> {
        let mut stored: Vec<Stored> = Vec::with_capacity(entries.len());
        for entry in entries {
            if stored.iter().any(|s| s.entry.key == entry.key) {
                return Err(CatalogError::DuplicateKey(entry.key));
            }
            let (ast, graph) = compile(&entry.pattern)
                .map_err(|diags| CatalogError::ValidationFailed(entry.key.clone(), diags))?;
            stored.push(Stored { entry, ast, graph });
        }
        stored.sort_by(|a, b| a.entry.key.cmp(&b.entry.key));
        Ok(Catalog { stored })
    }

    /// The ten scenarios shipped with the toolkit.
    pub fn builtin() -> Catalog {
        Catalog::new(corpus::entries()).expect("built-in corpus is valid")
    }

    pub fn len(&self) -> usize {
        self.stored.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stored.is_empty()
    }

    /// Entries in key order.
    pub fn entries(&self) -> impl Iterator<Item = &ScenarioEntry> {
        self.stored.iter().map(|s| &s.entry)
    }

    pub fn get(&self, key: &str) -> Option<&ScenarioEntry> {
        self.entries().find(|e| e.key == key)
    }

    pub fn graph(&self, key: &str) -> Option<&ProvisioningGraph> {
        self.stored.iter().find(|s| s.entry.key == key).map(|s| &s.graph)
    }

    /// Entries satisfying every predicate, in key order.
    pub fn query(&self, predicates: &[Predicate]) -> Vec<&ScenarioEntry> {
        self.stored
            .iter()
            .filter(|s| predicates.iter().all(|p| p.holds(&s.entry, &s.graph)))
            .map(|s| &s.entry)
            .collect()
    }

    /// Entries whose pattern matches `pattern` up to group order and sizes.
    pub fn find_conforming(&self, pattern: &str) -> Result<Vec<&ScenarioEntry>, Vec<Diagnostic>> {
        let (query, _) = compile(pattern)?;
        let query = query.without_sizes();
        Ok(self
            .stored
            .iter()
            .filter(|s| canon::equivalent(&s.ast.without_sizes(), &query))
            .map(|s| &s.entry)
            .collect())
    }

    /// Pairs of keys whose patterns differ only in sizes (or group order).
    pub fn near_duplicates(&self) -> Vec<(&str, &str)> {
        let stripped: Vec<String> = self
            .stored
            .iter()
            .map(|s| canon::canonical_text(&s.ast.without_sizes()))
            .collect();
        let mut out = Vec::new();
        for i in 0..self.stored.len() {
            for j in i + 1..self.stored.len() {
                if stripped[i] == stripped[j] {
                    out.push((self.stored[i].entry.key.as_str(), self.stored[j].entry.key.as_str()));
                }
            }
        }
        out
    }
}

/// One conjunct of a catalog query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    HasMediator,
    HasHybrid,
    PrivateCloud,
    NonvirtualizedHw,
    LevelPresent(Level),
    ExternalSlaAt(Level, Level),
    AppType(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredicateError {
    UnknownPredicate(String),
    MissingArgument(String),
    UnexpectedArgument(String),
    BadLevel(String),
}

impl fmt::Display for PredicateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicateError::UnknownPredicate(name) => write!(f, "unknown predicate `{name}`"),
            PredicateError::MissingArgument(name) => write!(f, "predicate `{name}` needs an argument"),
            PredicateError::UnexpectedArgument(name) => {
                write!(f, "predicate `{name}` takes no argument")
            }
            PredicateError::BadLevel(text) => write!(f, "`{text}` is not an abstraction level"),
        }
    }
}

impl core::error::Error for PredicateError {}

impl Predicate {
    pub const NAMES: [&'static str; 7] = [
        "has_mediator",
        "has_hybrid",
        "private_cloud",
        "nonvirtualized_hw",
        "level_present",
        "external_sla_at",
        "app_type",
    ];

    /// Parses `name`, `name=ARG` or `name(ARG)`.
    ///
    /// Levels are given by letter or name; `external_sla_at` takes
    /// `PROVIDER->CONSUMER`.
    pub fn parse(text: &str) -> Result<Predicate, PredicateError> {
        let (name, arg) = split_argument(text.trim());
        let level = |s: &str| Level::parse(s.trim()).ok_or_else(|| PredicateError::BadLevel(s.to_string()));
        let flag = |p: Predicate| match arg {
            Some(_) => Err(PredicateError::UnexpectedArgument(name.to_string())),
            None => Ok(p),
        };
        let needs = || arg.ok_or_else(|| PredicateError::MissingArgument(name.to_string()));
        match name {
            "has_mediator" => flag(Predicate::HasMediator),
            "has_hybrid" => flag(Predicate::HasHybrid),
            "private_cloud" => flag(Predicate::PrivateCloud),
            "nonvirtualized_hw" => flag(Predicate::NonvirtualizedHw),
            "level_present" => Ok(Predicate::LevelPresent(level(needs()?)?)),
            "external_sla_at" => {
                let arg = needs()?;
                let (from, to) = arg
                    .split_once("->")
                    .ok_or_else(|| PredicateError::BadLevel(arg.to_string()))?;
                Ok(Predicate::ExternalSlaAt(level(from)?, level(to)?))
            }
            "app_type" => Ok(Predicate::AppType(needs()?.to_string())),
            _ => Err(PredicateError::UnknownPredicate(name.to_string())),
        }
    }

    pub fn holds(&self, entry: &ScenarioEntry, graph: &ProvisioningGraph) -> bool {
        match self {
            Predicate::HasMediator => graph.has_mediator(),
            Predicate::HasHybrid => graph.has_hybrid(),
            Predicate::PrivateCloud => graph.private_cloud,
            Predicate::NonvirtualizedHw => graph.has_nonvirtualized_hw(),
            Predicate::LevelPresent(level) => graph.level_present(*level),
            Predicate::ExternalSlaAt(from, to) => graph.external_sla_at(*from, *to),
            Predicate::AppType(tag) => entry.app_type.as_deref() == Some(tag.as_str()),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::HasMediator => f.write_str("has_mediator"),
            Predicate::HasHybrid => f.write_str("has_hybrid"),
            Predicate::PrivateCloud => f.write_str("private_cloud"),
            Predicate::NonvirtualizedHw => f.write_str("nonvirtualized_hw"),
            Predicate::LevelPresent(l) => write!(f, "level_present={}", l.name()),
            Predicate::ExternalSlaAt(a, b) => write!(f, "external_sla_at={}->{}", a.name(), b.name()),
            Predicate::AppType(t) => write!(f, "app_type={t}"),
        }
    }
}

fn split_argument(text: &str) -> (&str, Option<&str>) {
    if let Some((name, rest)) = text.split_once('(') {
        if let Some(arg) = rest.strip_suffix(')') {
            return (name.trim(), Some(arg));
        }
    }
    match text.split_once('=') {
        Some((name, arg)) => (name.trim(), Some(arg)),
        None => (text, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RuleId;
    use alloc::vec;

    fn keys(found: Vec<&ScenarioEntry>) -> Vec<&str> {
        found.into_iter().map(|e| e.key.as_str()).collect()
    }

    fn query(text: &str) -> Vec<String> {
        let catalog = Catalog::builtin();
        let p = Predicate::parse(text).unwrap();
        keys(catalog.query(&[p])).into_iter().map(String::from).collect()
    }

    #[test]
    fn builtin_has_ten_sorted_entries() {
        let c = Catalog::builtin();
        let keys: Vec<&str> = c.entries().map(|e| e.key.as_str()).collect();
        assert_eq!(
            keys,
            ["AWS", "DNB", "DTO", "EJT", "EZS", "FBK", "FRC", "GAN", "SFR", "ZNG"]
        );
    }

    #[test]
    fn flag_queries() {
        assert_eq!(query("has_mediator"), ["DTO"]);
        assert_eq!(query("has_hybrid"), ["ZNG"]);
        assert_eq!(query("private_cloud"), ["DNB"]);
        assert_eq!(query("nonvirtualized_hw"), ["FBK"]);
        assert_eq!(query("app_type=CRM/PRM"), ["EJT", "SFR"]);
    }

    #[test]
    fn level_queries() {
        assert_eq!(query("level_present=p"), ["EJT", "EZS", "FBK", "FRC", "SFR"]);
        assert_eq!(query("external_sla_at(IaaS->End-user)"), ["AWS"]);
        assert_eq!(query("external_sla_at=i->s"), ["GAN", "ZNG"]);
    }

    #[test]
    fn conjunction() {
        let c = Catalog::builtin();
        let preds = [
            Predicate::parse("level_present=s").unwrap(),
            Predicate::parse("app_type=CRM/PRM").unwrap(),
            Predicate::parse("external_sla_at=p->s").unwrap(),
        ];
        assert_eq!(keys(c.query(&preds)), ["EJT"]);
    }

    #[test]
    fn predicate_errors() {
        assert_eq!(
            Predicate::parse("is_cool"),
            Err(PredicateError::UnknownPredicate("is_cool".into()))
        );
        assert!(matches!(Predicate::parse("level_present"), Err(PredicateError::MissingArgument(_))));
        assert!(matches!(Predicate::parse("has_hybrid=1"), Err(PredicateError::UnexpectedArgument(_))));
        assert!(matches!(Predicate::parse("level_present=q"), Err(PredicateError::BadLevel(_))));
    }

    #[test]
    fn predicate_display_parses_back() {
        for text in ["has_mediator", "level_present=IaaS", "external_sla_at=PaaS->SaaS", "app_type=CRM/PRM"] {
            let p = Predicate::parse(text).unwrap();
            assert_eq!(Predicate::parse(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn find_conforming_ignores_order_and_size() {
        let c = Catalog::builtin();
        assert_eq!(keys(c.find_conforming("i.e").unwrap()), ["AWS"]);
        assert_eq!(keys(c.find_conforming("(i)(i.)s.e").unwrap()), ["ZNG"]);
        assert_eq!(keys(c.find_conforming("(i4)(i.)s.e").unwrap()), ["ZNG"]);
        let err = c.find_conforming("sp.e").unwrap_err();
        assert_eq!(err[0].rule, RuleId::SectionOrder);
    }

    #[test]
    fn rejects_invalid_and_duplicate_entries() {
        let bad = Catalog::new(vec![ScenarioEntry::new("X", "x", "e")]).unwrap_err();
        match bad {
            CatalogError::ValidationFailed(key, diags) => {
                assert_eq!(key, "X");
                assert_eq!(diags.len(), 1);
                assert_eq!(diags[0].rule, RuleId::MandatorySections);
            }
            other => panic!("{other:?}"),
        }
        let dup = Catalog::new(vec![
            ScenarioEntry::new("A", "a", "i.e"),
            ScenarioEntry::new("A", "b", "p.e"),
        ])
        .unwrap_err();
        assert_eq!(dup, CatalogError::DuplicateKey("A".into()));
    }

    #[test]
    fn near_duplicates_are_flagged() {
        let c = Catalog::new(vec![
            ScenarioEntry::new("A", "a", "(i2.)(i)s.e"),
            ScenarioEntry::new("B", "b", "(i)(i.)s3.e"),
            ScenarioEntry::new("C", "c", "i.s.e"),
        ])
        .unwrap();
        assert_eq!(c.near_duplicates(), [("A", "B")]);
        assert!(Catalog::builtin().near_duplicates().is_empty());
    }
}
