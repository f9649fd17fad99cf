//! Named spaces and maps read from a declaration file.
//!
//! The text format is line oriented:
//!
//! ```text
//! # the running example
//! space p { x0: 1/2, x1: 1/2 }
//! space q { y0: 3/4, y1: 1/4 }
//! map f : p -> q { y0 | x0 = 1, y0 | x1 = 1/2, y1 | x1 = 1/2 }
//! ```
//!
//! Map entries read `target | source = value`; omitted entries are zero. The
//! target space must be exactly the pushforward of the source space. Labels
//! that are not plain words are written in double quotes.
//!
//! A JSON mirror with `"spaces"` and `"maps"` keys is accepted wherever text
//! is, and is what [`to_json`] produces.

mod build;
mod json;
mod text;

use std::fmt;

use thiserror::Error;

use crate::error::CoreError;
use crate::morphism::Morphism;
use crate::space::ProbSpace;

pub use json::to_json;
pub use text::to_text;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DocError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: invalid `{name}`: {source}")]
    Validation {
        line: usize,
        col: usize,
        name: String,
        source: CoreError,
    },
    #[error("{line}:{col}: unresolved reference `{name}`")]
    Unresolved { line: usize, col: usize, name: String },
}

impl DocError {
    /// `(line, column)`, both 1-based.
    pub fn position(&self) -> (usize, usize) {
        match self {
            DocError::Syntax { line, col, .. }
            | DocError::Validation { line, col, .. }
            | DocError::Unresolved { line, col, .. } => (*line, *col),
        }
    }
}

/// A declared map together with the names of its endpoint spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDecl {
    pub src: String,
    pub tgt: String,
    pub morphism: Morphism,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    spaces: Vec<(String, ProbSpace)>,
    maps: Vec<(String, MapDecl)>,
}

impl Document {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a space, replacing any earlier one with the same name.
    pub fn insert_space(&mut self, name: impl Into<String>, space: ProbSpace) {
        let name = name.into();
        match self.spaces.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = space,
            None => self.spaces.push((name, space)),
        }
    }

    /// Adds a map together with spaces `<name>_src` and `<name>_tgt`.
    pub fn insert_morphism(&mut self, name: &str, m: &Morphism) {
        let (src, tgt) = (format!("{name}_src"), format!("{name}_tgt"));
        self.insert_space(src.clone(), m.src().clone());
        self.insert_space(tgt.clone(), m.tgt().clone());
        self.insert_map(name, src, tgt, m.clone());
    }

    /// Adds a map whose endpoints are already declared under `src` and `tgt`.
    pub fn insert_map(&mut self, name: impl Into<String>, src: String, tgt: String, morphism: Morphism) {
        let name = name.into();
        let decl = MapDecl { src, tgt, morphism };
        match self.maps.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = decl,
            None => self.maps.push((name, decl)),
        }
    }

    pub fn space(&self, name: &str) -> Option<&ProbSpace> {
        self.spaces.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    pub fn map(&self, name: &str) -> Option<&MapDecl> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn morphism(&self, name: &str) -> Option<&Morphism> {
        self.map(name).map(|m| &m.morphism)
    }

    pub fn spaces(&self) -> impl Iterator<Item = (&str, &ProbSpace)> {
        self.spaces.iter().map(|(n, s)| (n.as_str(), s))
    }

    pub fn maps(&self) -> impl Iterator<Item = (&str, &MapDecl)> {
        self.maps.iter().map(|(n, m)| (n.as_str(), m))
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_text(self))
    }
}

/// Parses either format; input whose first non-blank character is `{` is
/// read as JSON.
pub fn parse_document(input: &str) -> Result<Document, DocError> {
    if input.trim_start().starts_with('{') {
        json::parse(input)
    } else {
        text::parse(input)
    }
}

#[cfg(test)]
mod tests;
