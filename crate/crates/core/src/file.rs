//! The `.dga` text format.
//!
//! ```text
//! # comment
//! [algebra]
//! x = 4
//! y = 7
//!
//! [differential]
//! y = x^2
//!
//! [classes]
//! nu = x
//!
//! [meta]
//! top = y
//! ```
//!
//! Generators are declared one per line in `[algebra]`; generators without a
//! line in `[differential]` are closed. `[classes]` holds named elements and
//! `[meta]` free-form settings, of which `top` names the top generator for the
//! checker. [`DgaFile::emit`] writes the canonical form, which parses back to
//! the same bytes.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element};
use crate::corpus::CorpusEntry;
use crate::dga::SullivanDga;
use crate::error::{Error, Result};
use crate::expr::parse_element;

#[derive(Clone, Debug)]
pub struct DgaFile {
    pub dga: SullivanDga,
    pub classes: BTreeMap<String, Element>,
    pub meta: BTreeMap<String, String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Algebra,
    Differential,
    Classes,
    Meta,
}

fn file_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::File {
        line,
        column,
        message: message.into(),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Column (1-based, within `text`) of the first occurrence of `name` as a
/// whole identifier.
fn identifier_column(text: &str, name: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let ident = |c: u8| c.is_ascii_alphanumeric() || c == b'_' || c == b'@';
    text.match_indices(name)
        .map(|(i, _)| i)
        .find(|&i| {
            let before = i == 0 || !ident(bytes[i - 1]);
            let end = i + name.len();
            before && (end == bytes.len() || !ident(bytes[end]))
        })
        .map(|i| i + 1)
}

struct Line<'a> {
    number: usize,
    key: &'a str,
    value: &'a str,
    value_column: usize,
}

fn parse_expression(alg: &Algebra, line: &Line) -> Result<Element> {
    parse_element(alg, line.value).map_err(|e| match e {
        Error::Syntax { column, message } => file_error(line.number, line.value_column + column - 1, message),
        Error::UnknownGenerator(name) => file_error(
            line.number,
            line.value_column + identifier_column(line.value, &name).unwrap_or(1) - 1,
            format!("unknown generator `{name}`"),
        ),
        other => other,
    })
}

impl DgaFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut section = None;
        let mut lines: Vec<(Section, Line)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let number = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let indent = raw.len() - raw.trim_start().len();
            if let Some(name) = trimmed.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| file_error(number, indent + 1, "unterminated section header"))?;
                section = Some(match name.trim() {
                    "algebra" => Section::Algebra,
                    "differential" => Section::Differential,
                    "classes" => Section::Classes,
                    "meta" => Section::Meta,
                    other => return Err(file_error(number, indent + 2, format!("unknown section [{other}]"))),
                });
                continue;
            }
            let current = section.ok_or_else(|| file_error(number, indent + 1, "entry before any section header"))?;
            let eq = raw
                .find('=')
                .ok_or_else(|| file_error(number, indent + 1, "expected `name = value`"))?;
            let key = raw[..eq].trim();
            if !is_identifier(key) {
                return Err(file_error(number, indent + 1, format!("`{key}` is not a valid name")));
            }
            let after = &raw[eq + 1..];
            let value = after.trim();
            let value_column = eq + 2 + (after.len() - after.trim_start().len());
            lines.push((
                current,
                Line {
                    number,
                    key,
                    value,
                    value_column,
                },
            ));
        }

        let mut algebra = Algebra::new();
        for (_, line) in lines.iter().filter(|(s, _)| *s == Section::Algebra) {
            let degree: u32 = line
                .value
                .parse()
                .ok()
                .filter(|&d| d > 0)
                .ok_or_else(|| file_error(line.number, line.value_column, "degree must be a positive integer"))?;
            if algebra.index_of(line.key).is_some() {
                return Err(file_error(
                    line.number,
                    1,
                    format!("generator `{}` declared twice", line.key),
                ));
            }
            algebra.add_generator(line.key, degree)?;
        }

        let mut diff = vec![Element::zero(); algebra.len()];
        let mut seen = vec![false; algebra.len()];
        for (_, line) in lines.iter().filter(|(s, _)| *s == Section::Differential) {
            let index = algebra.index_of(line.key).ok_or_else(|| {
                file_error(
                    line.number,
                    1,
                    format!("differential of undeclared generator `{}`", line.key),
                )
            })?;
            if seen[index] {
                return Err(file_error(
                    line.number,
                    1,
                    format!("second differential for `{}`", line.key),
                ));
            }
            seen[index] = true;
            diff[index] = parse_expression(&algebra, line)?;
        }

        let mut classes = BTreeMap::new();
        for (_, line) in lines.iter().filter(|(s, _)| *s == Section::Classes) {
            let e = parse_expression(&algebra, line)?;
            if classes.insert(line.key.to_string(), e).is_some() {
                return Err(file_error(
                    line.number,
                    1,
                    format!("class `{}` defined twice", line.key),
                ));
            }
        }
        let mut meta = BTreeMap::new();
        for (_, line) in lines.iter().filter(|(s, _)| *s == Section::Meta) {
            if meta.insert(line.key.to_string(), line.value.to_string()).is_some() {
                return Err(file_error(
                    line.number,
                    1,
                    format!("meta key `{}` given twice", line.key),
                ));
            }
        }
        let dga = SullivanDga::new(algebra, diff)?;
        Ok(DgaFile { dga, classes, meta })
    }

    pub fn from_dga(dga: SullivanDga) -> Self {
        DgaFile {
            dga,
            classes: BTreeMap::new(),
            meta: BTreeMap::new(),
        }
    }

    pub fn from_corpus(entry: &CorpusEntry) -> Self {
        let mut f = DgaFile::from_dga(entry.dga.clone());
        f.classes.insert("nu".into(), entry.nu.clone());
        f.meta.insert("top".into(), entry.top.clone());
        f
    }

    /// Canonical text form.
    pub fn emit(&self) -> String {
        let mut out = String::from("[algebra]\n");
        let alg = self.dga.algebra();
        for g in alg.generators() {
            out.push_str(&format!("{} = {}\n", g.name, g.degree));
        }
        out.push_str("\n[differential]\n");
        for g in alg.generators() {
            let dg = self.dga.generator_differential(g.index);
            if !dg.is_zero() {
                out.push_str(&format!("{} = {}\n", g.name, self.dga.format(dg)));
            }
        }
        if !self.classes.is_empty() {
            out.push_str("\n[classes]\n");
            for (name, e) in &self.classes {
                out.push_str(&format!("{name} = {}\n", self.dga.format(e)));
            }
        }
        if !self.meta.is_empty() {
            out.push_str("\n[meta]\n");
            for (k, v) in &self.meta {
                out.push_str(&format!("{k} = {v}\n"));
            }
        }
        out
    }

    /// The class called `name`.
    pub fn class(&self, name: &str) -> Result<&Element> {
        self.classes
            .get(name)
            .ok_or_else(|| Error::Presentation(format!("the file defines no class `{name}`")))
    }

    /// `[meta] top`, or the last declared generator.
    pub fn top(&self) -> Result<String> {
        if let Some(t) = self.meta.get("top") {
            return Ok(t.clone());
        }
        self.dga
            .algebra()
            .generators()
            .last()
            .map(|g| g.name.clone())
            .ok_or_else(|| Error::Presentation("the algebra has no generators".into()))
    }
}
