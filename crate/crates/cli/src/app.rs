//! Subcommand implementations. Each returns what to print and the exit
//! code; `main` only parses arguments and performs IO.

use std::fmt::Write;

use cup_core::canon::{canonical_text, diff, Difference, DifferenceKind};
use cup_core::catalog::{Catalog, Predicate, ScenarioEntry};
use cup_core::render::{emit_dot, emit_svg, to_renderdoc};
use cup_core::semantics::{explain, SizeUnit};
use cup_core::syntax::{parse, Group, PatternAst, Section};
use cup_core::{check, compile, Diagnostic, Severity};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
/// Invalid pattern, failed check, or patterns that differ.
pub const EXIT_FAILURE: u8 = 1;
/// Bad invocation or unreadable input.
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            stdout,
            ..Outcome::default()
        }
    }

    fn fail(code: u8, stdout: String, stderr: String) -> Outcome {
        Outcome { stdout, stderr, code }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub json: bool,
    pub color: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Svg,
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn paint(color: bool, code: &str, text: &str) -> String {
    if color {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

/// Compiler-style listing with a caret line under each span.
pub fn render_diagnostics(source: &str, diagnostics: &[Diagnostic], color: bool) -> String {
    let mut out = String::new();
    for d in diagnostics {
        let (label, code) = match d.severity {
            Severity::Error => ("error", "1;31"),
            Severity::Warning => ("warning", "1;33"),
        };
        let start = d.span.start.min(source.len());
        let end = d.span.end.clamp(start, source.len());
        let column = source.get(..start).map_or(start, |s| s.chars().count());
        let width = source.get(start..end).map_or(1, |s| s.chars().count()).max(1);
        let _ = writeln!(
            out,
            "{}: {}",
            paint(color, code, &format!("{label}[{}]", d.rule.code())),
            d.message
        );
        let _ = writeln!(out, "  | {}", printable(source));
        let _ = writeln!(
            out,
            "  | {}{}",
            " ".repeat(column),
            paint(color, code, &"^".repeat(width))
        );
    }
    out
}

/// Control characters shown as `?` so carets stay aligned.
fn printable(source: &str) -> String {
    source.chars().map(|c| if c.is_control() { '?' } else { c }).collect()
}

fn summary(diagnostics: &[Diagnostic]) -> String {
    let errors = diagnostics.iter().filter(|d| d.is_error()).count();
    let warnings = diagnostics.len() - errors;
    let plural = |n: usize, word: &str| format!("{n} {word}{}", if n == 1 { "" } else { "s" });
    format!("{}, {}", plural(errors, "error"), plural(warnings, "warning"))
}

#[derive(Serialize)]
struct DiagnosticsJson<'a> {
    pattern: &'a str,
    valid: bool,
    diagnostics: &'a [Diagnostic],
}

/// Failure outcome for a pattern that does not compile.
fn rejected(pattern: &str, diagnostics: &[Diagnostic], opts: Options) -> Outcome {
    if opts.json {
        let body = json(&DiagnosticsJson {
            pattern,
            valid: false,
            diagnostics,
        });
        Outcome::fail(EXIT_FAILURE, body, String::new())
    } else {
        Outcome::fail(
            EXIT_FAILURE,
            String::new(),
            render_diagnostics(pattern, diagnostics, opts.color),
        )
    }
}

pub fn cmd_parse(pattern: &str, opts: Options) -> Outcome {
    match parse(pattern) {
        Err(diagnostics) => rejected(pattern, &diagnostics, opts),
        Ok(ast) if opts.json => Outcome::ok(json(&ast)),
        Ok(ast) => {
            let mut out = format!("{ast}\npattern\n");
            for g in &ast.groups {
                tree_group(&mut out, g, 1);
            }
            for s in &ast.sections {
                tree_section(&mut out, s, 1);
            }
            Outcome::ok(out)
        }
    }
}

fn tree_group(out: &mut String, group: &Group, depth: usize) {
    let _ = writeln!(out, "{}group {group}", "  ".repeat(depth));
    for g in &group.groups {
        tree_group(out, g, depth + 1);
    }
    for s in &group.sections {
        tree_section(out, s, depth + 1);
    }
}

fn tree_section(out: &mut String, section: &Section, depth: usize) {
    let _ = write!(out, "{}section {}", "  ".repeat(depth), section.level.name());
    if let Some(size) = section.size {
        let _ = write!(out, " size {size}");
    }
    if section.external {
        out.push_str(" external");
    }
    out.push('\n');
}

pub fn cmd_check(pattern: &str, opts: Options) -> Outcome {
    let diagnostics = check(pattern);
    let valid = !diagnostics.iter().any(Diagnostic::is_error);
    let stdout = if opts.json {
        json(&DiagnosticsJson {
            pattern,
            valid,
            diagnostics: &diagnostics,
        })
    } else if diagnostics.is_empty() {
        "ok\n".to_string()
    } else {
        let mut out = render_diagnostics(pattern, &diagnostics, opts.color);
        out.push_str(&summary(&diagnostics));
        out.push('\n');
        out
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if valid { EXIT_OK } else { EXIT_FAILURE },
    }
}

pub fn cmd_explain(pattern: &str, unit: Option<&str>, opts: Options) -> Outcome {
    let (_, graph) = match compile(pattern) {
        Ok(compiled) => compiled,
        Err(diagnostics) => return rejected(pattern, &diagnostics, opts),
    };
    let mut report = explain(&graph);
    if let Some(unit) = unit {
        report = report.with_unit(&SizeUnit::new(unit));
    }
    if opts.json {
        Outcome::ok(json(&report))
    } else {
        Outcome::ok(report.to_text())
    }
}

#[derive(Serialize)]
struct CanonJson<'a> {
    pattern: &'a str,
    canonical: String,
}

pub fn cmd_canon(pattern: &str, opts: Options) -> Outcome {
    match parse(pattern) {
        Err(diagnostics) => rejected(pattern, &diagnostics, opts),
        Ok(ast) => {
            let canonical = canonical_text(&ast);
            if opts.json {
                Outcome::ok(json(&CanonJson { pattern, canonical }))
            } else {
                Outcome::ok(canonical + "\n")
            }
        }
    }
}

#[derive(Serialize)]
struct EqJson<'a> {
    equivalent: bool,
    a: String,
    b: String,
    differences: &'a [Difference],
}

pub fn cmd_eq(a: &str, b: &str, opts: Options) -> Outcome {
    let parse_side = |text: &str| -> Result<PatternAst, Outcome> {
        parse(text).map_err(|diagnostics| {
            let mut out = rejected(text, &diagnostics, opts);
            out.code = EXIT_USAGE;
            out
        })
    };
    let ast_a = match parse_side(a) {
        Ok(ast) => ast,
        Err(out) => return out,
    };
    let ast_b = match parse_side(b) {
        Ok(ast) => ast,
        Err(out) => return out,
    };
    let differences = diff(&ast_a, &ast_b);
    let equivalent = differences.is_empty();
    let stdout = if opts.json {
        json(&EqJson {
            equivalent,
            a: canonical_text(&ast_a),
            b: canonical_text(&ast_b),
            differences: &differences,
        })
    } else if equivalent {
        "equivalent\n".to_string()
    } else {
        let mut out = String::from("different\n");
        for d in &differences {
            let kind = match d.kind {
                DifferenceKind::Sla => "sla",
                DifferenceKind::Size => "size",
                DifferenceKind::Level => "level",
                DifferenceKind::Group => "group",
            };
            let _ = writeln!(out, "  {kind}: {}", d.detail);
        }
        out
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if equivalent { EXIT_OK } else { EXIT_FAILURE },
    }
}

/// Rendered text for `pattern`; the caller decides where it goes.
pub fn cmd_render(pattern: &str, format: Format, opts: Options) -> Outcome {
    let (_, graph) = match compile(pattern) {
        Ok(compiled) => compiled,
        Err(diagnostics) => return rejected(pattern, &diagnostics, opts),
    };
    let doc = to_renderdoc(&graph);
    Outcome::ok(if opts.json {
        json(&doc)
    } else {
        match format {
            Format::Dot => emit_dot(&doc),
            Format::Svg => emit_svg(&doc),
        }
    })
}

fn listing(entries: &[&ScenarioEntry], opts: Options) -> String {
    if opts.json {
        return json(entries);
    }
    let key_width = entries.iter().map(|e| e.key.len()).max().unwrap_or(0);
    let pattern_width = entries.iter().map(|e| e.pattern.len()).max().unwrap_or(0);
    let mut out = String::new();
    for e in entries {
        let _ = write!(out, "{:key_width$}  {:pattern_width$}  {}", e.key, e.pattern, e.title);
        if let Some(app) = &e.app_type {
            let _ = write!(out, " [{app}]");
        }
        out.push('\n');
    }
    out
}

pub fn cmd_catalog_list(catalog: &Catalog, opts: Options) -> Outcome {
    let entries: Vec<&ScenarioEntry> = catalog.entries().collect();
    Outcome::ok(listing(&entries, opts))
}

pub fn cmd_catalog_query(catalog: &Catalog, predicates: &[String], opts: Options) -> Outcome {
    let mut parsed = Vec::with_capacity(predicates.len());
    for text in predicates {
        match Predicate::parse(text) {
            Ok(p) => parsed.push(p),
            Err(err) => {
                return Outcome::fail(
                    EXIT_USAGE,
                    String::new(),
                    format!("error: {err}\nknown predicates: {}\n", Predicate::NAMES.join(", ")),
                )
            }
        }
    }
    Outcome::ok(listing(&catalog.query(&parsed), opts))
}

pub fn cmd_catalog_find(catalog: &Catalog, pattern: &str, opts: Options) -> Outcome {
    match catalog.find_conforming(pattern) {
        Err(diagnostics) => rejected(pattern, &diagnostics, opts),
        Ok(found) => Outcome::ok(listing(&found, opts)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLAIN: Options = Options {
        json: false,
        color: false,
    };

    #[test]
    fn carets_under_out_of_order_letters() {
        let out = cmd_check("pi.e", PLAIN);
        assert_eq!(out.code, EXIT_FAILURE);
        assert!(out.stdout.starts_with("error[E.I.1]: "));
        assert!(out.stdout.contains("  | pi.e\n  | ^^\n"));
    }

    #[test]
    fn color_only_when_asked() {
        let plain = render_diagnostics("e", &check("e"), false);
        let colored = render_diagnostics("e", &check("e"), true);
        assert!(!plain.contains('\x1b'));
        assert!(colored.contains("\x1b[1;31m"));
    }

    #[test]
    fn warnings_do_not_fail_check() {
        let out = cmd_check("i3.s.e6", PLAIN);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("warning[X.1]"));
        assert!(out.stdout.ends_with("0 errors, 1 warning\n"));
    }

    #[test]
    fn parse_tree() {
        let out = cmd_parse("(I_2.)s.e", PLAIN);
        assert_eq!(
            out.stdout,
            "(i2.)s.e\npattern\n  group (i2.)\n    section IaaS size 2 external\n  section SaaS external\n  section End-user\n"
        );
    }

    #[test]
    fn eq_reports_differences() {
        let out = cmd_eq("i.e", "ie", PLAIN);
        assert_eq!(out.code, EXIT_FAILURE);
        assert!(out.stdout.starts_with("different\n  sla: "));
        assert_eq!(cmd_eq("i.e", "i..e", PLAIN).code, EXIT_USAGE);
    }

    #[test]
    fn hybrid_total_in_unit() {
        let out = cmd_explain("(ip1)(i.p2.)s.e", Some("hundreds"), PLAIN);
        assert!(out.stdout.contains("hybrid total at PaaS: 3 hundreds = 300 resource units"));
    }

    #[test]
    fn unknown_predicate_is_a_usage_error() {
        let out = cmd_catalog_query(&Catalog::builtin(), &["shiny".into()], PLAIN);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("unknown predicate `shiny`"));
    }

    #[test]
    fn control_characters_keep_carets_aligned() {
        let d = check("i\u{7}e");
        let text = render_diagnostics("i\u{7}e", &d, false);
        assert!(text.contains("  | i?e\n  |  ^\n"));
    }
}
