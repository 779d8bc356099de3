//! The line-oriented group specification file.
//!
//! ```text
//! # comment
//! kind = semidirect
//! dimension = 4
//! generator = 2,1,4,8
//! ```
//!
//! Keys are ASCII `[A-Za-z0-9._,-]+`; repeated keys are kept in order. Nested
//! groups use dotted prefixes (`g1.kind = ...`).

use std::fmt::Write as _;

use super::gf2::Gf2Matrix;
use super::{Cyclic, ElementaryAbelian2, FiniteGroup, GroupKind, Semidirect, Symmetric};
use crate::error::{Error, Result};

/// Default cap on the automorphism closure when a file does not set one.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupFile {
    entries: Vec<(String, String)>,
}

fn valid_key(key: &str) -> bool {
    !key.is_empty()
        && key
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'.' | b'_' | b',' | b'-'))
}

impl GroupFile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let start = offset;
            offset += line.len();
            let body = line.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let (k, v) = body
                .split_once('=')
                .ok_or_else(|| Error::parse(start, "expected `key = value`"))?;
            let k = k.trim();
            if !valid_key(k) {
                return Err(Error::parse(start, format!("invalid key `{k}`")));
            }
            entries.push((k.to_string(), v.trim().to_string()));
        }
        Ok(GroupFile { entries })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::Invalid(format!("missing key `{key}`")))
    }

    pub fn require_usize(&self, key: &str) -> Result<usize> {
        let v = self.require(key)?;
        v.parse().map_err(|_| {
            Error::Invalid(format!("`{key}` must be a non-negative integer, got `{v}`"))
        })
    }

    pub fn get_all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.entries
            .iter()
            .filter(move |(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Entries whose key starts with `prefix.`, with the prefix removed.
    pub fn section(&self, prefix: &str) -> GroupFile {
        let p = format!("{prefix}.");
        GroupFile {
            entries: self
                .entries
                .iter()
                .filter_map(|(k, v)| k.strip_prefix(&p).map(|s| (s.to_string(), v.clone())))
                .collect(),
        }
    }

    pub fn append_section(&mut self, prefix: &str, other: &GroupFile) {
        for (k, v) in &other.entries {
            self.entries.push((format!("{prefix}.{k}"), v.clone()));
        }
    }

    pub fn kind(&self) -> Result<GroupKind> {
        GroupKind::parse(self.require("kind")?)
    }

    fn expect_kind(&self, kind: GroupKind) -> Result<()> {
        let found = self.kind()?;
        if found != kind {
            return Err(Error::Invalid(format!(
                "expected kind {kind}, found {found}"
            )));
        }
        Ok(())
    }
}

/// Groups that can be written to and rebuilt from a [`GroupFile`].
pub trait GroupIo: FiniteGroup + Sized {
    fn to_group_file(&self) -> GroupFile;

    fn from_group_file(file: &GroupFile) -> Result<Self>;
}

impl GroupIo for ElementaryAbelian2 {
    fn to_group_file(&self) -> GroupFile {
        let mut f = GroupFile::new();
        f.push("kind", self.kind());
        f.push("dimension", self.dim());
        f
    }

    fn from_group_file(file: &GroupFile) -> Result<Self> {
        file.expect_kind(GroupKind::ElementaryAbelian2)?;
        ElementaryAbelian2::new(file.require_usize("dimension")?)
    }
}

impl GroupIo for Cyclic {
    fn to_group_file(&self) -> GroupFile {
        let mut f = GroupFile::new();
        f.push("kind", self.kind());
        f.push("order", self.modulus());
        f
    }

    fn from_group_file(file: &GroupFile) -> Result<Self> {
        file.expect_kind(GroupKind::Cyclic)?;
        Cyclic::new(file.require_usize("order")? as u64)
    }
}

impl GroupIo for Symmetric {
    fn to_group_file(&self) -> GroupFile {
        let mut f = GroupFile::new();
        f.push("kind", self.kind());
        f.push("degree", self.degree());
        f
    }

    fn from_group_file(file: &GroupFile) -> Result<Self> {
        file.expect_kind(GroupKind::Symmetric)?;
        Symmetric::new(file.require_usize("degree")?)
    }
}

impl GroupIo for Semidirect {
    fn to_group_file(&self) -> GroupFile {
        let mut f = GroupFile::new();
        f.push("kind", self.kind());
        f.push("dimension", self.dim());
        f.push("closure-cap", self.automorphism_count().max(1));
        for g in self.automorphism_generators() {
            f.push("generator", g.to_hex());
        }
        f
    }

    fn from_group_file(file: &GroupFile) -> Result<Self> {
        file.expect_kind(GroupKind::Semidirect)?;
        let dim = file.require_usize("dimension")?;
        let cap = match file.get("closure-cap") {
            Some(_) => file.require_usize("closure-cap")?,
            None => DEFAULT_CLOSURE_CAP,
        };
        let gens = file
            .get_all("generator")
            .map(|g| Gf2Matrix::parse_hex(dim, g))
            .collect::<Result<Vec<_>>>()?;
        Semidirect::new(dim, gens, cap)
    }
}

/// Named elements `prefix.<label> = <element>` in file order.
pub fn read_named_elements<G: FiniteGroup>(
    g: &G,
    file: &GroupFile,
    prefix: &str,
) -> Result<Vec<(String, G::Elem)>> {
    let p = format!("{prefix}.");
    file.entries()
        .iter()
        .filter_map(|(k, v)| k.strip_prefix(&p).map(|label| (label, v)))
        .map(|(label, v)| Ok((label.to_string(), g.parse_element(v)?)))
        .collect()
}
