// Shared resolution step: both front ends produce declarations with source
// positions, and this turns them into validated spaces and maps.

use std::collections::HashMap;

use num_traits::Zero;

use super::{DocError, Document};
use crate::error::CoreError;
use crate::label::Label;
use crate::map::StochMap;
use crate::morphism::Morphism;
use crate::rational::Rational;
use crate::space::ProbSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone)]
pub(super) struct Spanned<T> {
    pub at: Pos,
    pub value: T,
}

pub(super) struct SpaceDecl {
    pub name: Spanned<String>,
    pub entries: Vec<(Spanned<String>, Rational)>,
}

pub(super) struct MapDecl {
    pub name: Spanned<String>,
    pub src: Spanned<String>,
    pub tgt: Spanned<String>,
    pub entries: Vec<(Spanned<String>, Spanned<String>, Rational)>,
}

pub(super) enum Decl {
    Space(SpaceDecl),
    Map(MapDecl),
}

fn invalid(at: Pos, name: &str, source: CoreError) -> DocError {
    DocError::Validation {
        line: at.line,
        col: at.col,
        name: name.to_string(),
        source,
    }
}

pub(super) fn syntax(at: Pos, msg: impl Into<String>) -> DocError {
    DocError::Syntax {
        line: at.line,
        col: at.col,
        msg: msg.into(),
    }
}

fn label(s: &Spanned<String>) -> Result<Label, DocError> {
    Label::new(s.value.clone()).map_err(|e| invalid(s.at, &s.value, e))
}

fn check_fresh(seen: &mut HashMap<String, Pos>, name: &Spanned<String>) -> Result<(), DocError> {
    if seen.insert(name.value.clone(), name.at).is_some() {
        return Err(syntax(name.at, format!("`{}` is declared twice", name.value)));
    }
    Ok(())
}

pub(super) fn build(decls: Vec<Decl>) -> Result<Document, DocError> {
    let mut doc = Document::new();
    let (mut space_names, mut map_names) = (HashMap::new(), HashMap::new());
    let mut maps = Vec::new();
    for decl in decls {
        match decl {
            Decl::Space(s) => {
                check_fresh(&mut space_names, &s.name)?;
                let mut labels = Vec::with_capacity(s.entries.len());
                let mut probs = Vec::with_capacity(s.entries.len());
                for (l, v) in &s.entries {
                    labels.push(label(l)?);
                    probs.push(v.clone());
                }
                let space = ProbSpace::new(labels, probs).map_err(|e| invalid(s.name.at, &s.name.value, e))?;
                doc.insert_space(s.name.value, space);
            }
            Decl::Map(m) => {
                check_fresh(&mut map_names, &m.name)?;
                maps.push(m);
            }
        }
    }
    for m in maps {
        let lookup = |n: &Spanned<String>| {
            doc.space(&n.value).cloned().ok_or_else(|| DocError::Unresolved {
                line: n.at.line,
                col: n.at.col,
                name: n.value.clone(),
            })
        };
        let (src, tgt) = (lookup(&m.src)?, lookup(&m.tgt)?);
        let mut cols = vec![vec![Rational::zero(); tgt.len()]; src.len()];
        let mut set = vec![vec![false; tgt.len()]; src.len()];
        for (y, x, v) in &m.entries {
            let index = |space: &ProbSpace, l: &Spanned<String>| {
                let lab = label(l)?;
                space
                    .index_of(&lab)
                    .ok_or_else(|| invalid(l.at, &l.value, CoreError::UnknownLabel(l.value.clone())))
            };
            let (yi, xi) = (index(&tgt, y)?, index(&src, x)?);
            if set[xi][yi] {
                return Err(syntax(y.at, format!("entry `{} | {}` is given twice", y.value, x.value)));
            }
            set[xi][yi] = true;
            cols[xi][yi] = v.clone();
        }
        let err = |e| invalid(m.name.at, &m.name.value, e);
        let map = StochMap::from_columns(src.labels().to_vec(), tgt.labels().to_vec(), cols).map_err(err)?;
        let morphism = Morphism::with_target(map, src, tgt).map_err(err)?;
        doc.insert_map(m.name.value, m.src.value, m.tgt.value, morphism);
    }
    Ok(doc)
}
