use alloc::string::String;
use core::fmt::{self, Write};

use super::ast::{Group, PatternAst, Section};

/// Lowercase compact text; `parse(&print(ast)) == Ok(ast)` for valid ASTs.
pub fn print(ast: &PatternAst) -> String {
    let mut out = String::with_capacity(ast.source.len());
    for g in &ast.groups {
        write_group(g, &mut out);
    }
    for s in &ast.sections {
        write_section(s, &mut out);
    }
    out
}

pub(crate) fn write_group(group: &Group, out: &mut String) {
    out.push('(');
    for g in &group.groups {
        write_group(g, out);
    }
    for s in &group.sections {
        write_section(s, out);
    }
    out.push(')');
}

pub(crate) fn write_section(section: &Section, out: &mut String) {
    out.push(section.level.letter());
    if let Some(size) = section.size {
        let _ = write!(out, "{size}");
    }
    if section.external {
        out.push('.');
    }
}

impl fmt::Display for PatternAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_group(self, &mut out);
        f.write_str(&out)
    }
}
