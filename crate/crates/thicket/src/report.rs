//! Structured plain-text reports.
//!
//! A report is an ordered list of named sections, each an ordered list
//! of `key = value` entries. Order is append order everywhere, so a
//! report built the same way twice serializes to identical bytes —
//! callers that want reproducible output just have to build sections in
//! a fixed sequence. The format round-trips through [`Report::parse`].

use crate::error::{Error, Result};
use sha2::{Digest, Sha256};
use std::fmt::Display;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    sections: Vec<Section>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    name: String,
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    /// The section with this name, appended if absent.
    pub fn section(&mut self, name: &str) -> &mut Section {
        if let Some(i) = self.sections.iter().position(|s| s.name == name) {
            return &mut self.sections[i];
        }
        self.sections.push(Section { name: name.to_string(), entries: Vec::new() });
        self.sections.last_mut().expect("just pushed")
    }

    pub fn sections(&self) -> impl Iterator<Item = &Section> {
        self.sections.iter()
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .iter()
            .find(|s| s.name == section)?
            .entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "[{}]", s.name);
            for (k, v) in &s.entries {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Report> {
        let mut report = Report::new();
        let mut current: Option<usize> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(name) = trimmed.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| Error::Parse { line, msg: "unterminated section header".into() })?
                    .trim();
                if name.is_empty() {
                    return Err(Error::Parse { line, msg: "empty section name".into() });
                }
                report.section(name);
                current = Some(report.sections.len() - 1);
                continue;
            }
            let (key, value) = trimmed.split_once('=').ok_or_else(|| Error::Parse {
                line,
                msg: "expected `key = value` or `[section]`".into(),
            })?;
            let at = current.ok_or_else(|| Error::Parse {
                line,
                msg: "entry before any section header".into(),
            })?;
            report.sections[at].entries.push((key.trim().to_string(), value.trim().to_string()));
        }
        Ok(report)
    }
}

impl Section {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Record a value, replacing an earlier entry with the same key in
    /// place (so repeated puts stay byte-deterministic).
    pub fn put(&mut self, key: &str, value: impl Display) -> &mut Section {
        let value = value.to_string();
        if let Some(e) = self.entries.iter_mut().find(|(k, _)| k == key) {
            e.1 = value;
        } else {
            self.entries.push((key.to_string(), value));
        }
        self
    }
}

/// Hex SHA-256 digest, used to pin the exact input bytes in reports.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        let _ = write!(out, "{b:02x}");
    }
    out
}

/// Space-separated index sequence (`-` for the empty one), the report
/// encoding for ladders and other witness index lists.
pub fn encode_indices(xs: &[usize]) -> String {
    if xs.is_empty() {
        return "-".into();
    }
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn decode_indices(text: &str) -> Result<Vec<usize>> {
    let trimmed = text.trim();
    if trimmed == "-" || trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split_whitespace()
        .map(|tok| {
            tok.parse().map_err(|_| Error::Parse {
                line: 0,
                msg: format!("bad index {tok:?} in witness field"),
            })
        })
        .collect()
}
