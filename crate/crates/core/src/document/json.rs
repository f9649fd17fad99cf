use serde_json::{json, Map, Value};

use super::build::{build, syntax, Decl, MapDecl, Pos, SpaceDecl, Spanned};
use super::{DocError, Document};
use crate::rational::{self, Rational};

// serde_json values carry no positions, so semantic errors point at the first
// occurrence of the quoted key in the source text.
fn locate(text: &str, key: &str) -> Pos {
    let needle = serde_json::to_string(key).unwrap_or_default();
    let Some(offset) = text.find(&needle) else {
        return Pos { line: 1, col: 1 };
    };
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Pos { line, col }
}

struct Reader<'a> {
    text: &'a str,
}

impl Reader<'_> {
    fn spanned(&self, s: &str) -> Spanned<String> {
        Spanned {
            at: locate(self.text, s),
            value: s.to_string(),
        }
    }

    fn object<'v>(&self, v: &'v Value, ctx: &str) -> Result<&'v Map<String, Value>, DocError> {
        v.as_object()
            .ok_or_else(|| syntax(locate(self.text, ctx), format!("`{ctx}` must be an object")))
    }

    fn string(&self, v: &Value, ctx: &str) -> Result<String, DocError> {
        v.as_str()
            .map(str::to_string)
            .ok_or_else(|| syntax(locate(self.text, ctx), format!("`{ctx}` must be a string")))
    }

    fn rational(&self, v: &Value, ctx: &str) -> Result<Rational, DocError> {
        let parsed = match v {
            Value::String(s) => rational::parse(s),
            Value::Number(n) if n.is_i64() || n.is_u64() => rational::parse(&n.to_string()),
            _ => None,
        };
        parsed.ok_or_else(|| syntax(locate(self.text, ctx), format!("`{ctx}` holds a value that is not a rational")))
    }
}

pub(super) fn parse(text: &str) -> Result<Document, DocError> {
    let root: Value = serde_json::from_str(text).map_err(|e| DocError::Syntax {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    let r = Reader { text };
    let root = r.object(&root, "document")?;
    for key in root.keys() {
        if key != "spaces" && key != "maps" {
            return Err(syntax(locate(text, key), format!("unexpected key `{key}`")));
        }
    }
    let mut decls = Vec::new();
    if let Some(spaces) = root.get("spaces") {
        for (name, body) in r.object(spaces, "spaces")? {
            let mut entries = Vec::new();
            for (l, v) in r.object(body, name)? {
                entries.push((r.spanned(l), r.rational(v, l)?));
            }
            decls.push(Decl::Space(SpaceDecl {
                name: r.spanned(name),
                entries,
            }));
        }
    }
    if let Some(maps) = root.get("maps") {
        for (name, body) in r.object(maps, "maps")? {
            let body = r.object(body, name)?;
            let field = |k: &str| {
                body.get(k)
                    .ok_or_else(|| syntax(locate(text, name), format!("map `{name}` has no `{k}`")))
            };
            let src = r.string(field("src")?, name)?;
            let tgt = r.string(field("tgt")?, name)?;
            let mut entries = Vec::new();
            let rows = field("entries")?
                .as_array()
                .ok_or_else(|| syntax(locate(text, name), "`entries` must be an array"))?;
            for row in rows {
                match row.as_array().map(Vec::as_slice) {
                    Some([y, x, v]) => {
                        let (y, x) = (r.string(y, name)?, r.string(x, name)?);
                        entries.push((r.spanned(&y), r.spanned(&x), r.rational(v, name)?));
                    }
                    _ => {
                        return Err(syntax(
                            locate(text, name),
                            "each entry must be a [target, source, value] triple",
                        ))
                    }
                }
            }
            decls.push(Decl::Map(MapDecl {
                name: r.spanned(name),
                src: r.spanned(&src),
                tgt: r.spanned(&tgt),
                entries,
            }));
        }
    }
    build(decls)
}

/// The JSON mirror of a document. Values are rational strings and only
/// nonzero map entries are listed.
pub fn to_json(doc: &Document) -> Value {
    let mut spaces = Map::new();
    for (name, space) in doc.spaces() {
        let body: Map<String, Value> = space
            .labels()
            .iter()
            .zip(space.probs())
            .map(|(l, p)| (l.to_string(), Value::String(rational::format(p))))
            .collect();
        spaces.insert(name.to_string(), Value::Object(body));
    }
    let mut maps = Map::new();
    for (name, decl) in doc.maps() {
        let f = decl.morphism.map();
        let mut entries = Vec::new();
        for (x, col) in f.columns().iter().enumerate() {
            for (y, v) in col.iter().enumerate() {
                if *v != rational::zero() {
                    entries.push(json!([f.tgt()[y].as_str(), f.src()[x].as_str(), rational::format(v)]));
                }
            }
        }
        maps.insert(
            name.to_string(),
            json!({ "src": decl.src, "tgt": decl.tgt, "entries": entries }),
        );
    }
    json!({ "spaces": spaces, "maps": maps })
}
