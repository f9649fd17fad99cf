use std::fmt::Write as _;

use super::build::{build, syntax, Decl, MapDecl, Pos, SpaceDecl, Spanned};
use super::{DocError, Document};
use crate::label::Label;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Quoted(String),
    LBrace,
    RBrace,
    Colon,
    Comma,
    Pipe,
    Eq,
    Arrow,
    Eof,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '•' | '\'' | '-' | '+' | '/')
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Word(w) => format!("`{w}`"),
        Tok::Quoted(q) => format!("{q:?}"),
        Tok::LBrace => "`{`".into(),
        Tok::RBrace => "`}`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Pipe => "`|`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn lex(input: &str) -> Result<Vec<Spanned<Tok>>, DocError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let at = Pos { line, col };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        let arrow = c == '-' && chars.get(i + 1) == Some(&'>');
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            '|' => Some(Tok::Pipe),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(t) = single {
            bump!();
            out.push(Spanned { at, value: t });
        } else if arrow {
            bump!();
            bump!();
            out.push(Spanned { at, value: Tok::Arrow });
        } else if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None | Some('\n') => return Err(syntax(at, "unterminated string")),
                    Some('"') => {
                        bump!();
                        break;
                    }
                    Some('\\') => {
                        let esc = Pos { line, col };
                        bump!();
                        match chars.get(i) {
                            Some(&e @ ('"' | '\\')) => s.push(e),
                            Some('n') => s.push('\n'),
                            _ => return Err(syntax(esc, "unknown escape")),
                        }
                        bump!();
                    }
                    Some(&other) => {
                        s.push(other);
                        bump!();
                    }
                }
            }
            out.push(Spanned { at, value: Tok::Quoted(s) });
        } else if is_word_char(c) {
            let mut w = String::new();
            while i < chars.len() && is_word_char(chars[i]) {
                if chars[i] == '-' && chars.get(i + 1) == Some(&'>') {
                    break;
                }
                w.push(chars[i]);
                bump!();
            }
            out.push(Spanned { at, value: Tok::Word(w) });
        } else {
            return Err(syntax(at, format!("unexpected character `{c}`")));
        }
    }
    out.push(Spanned {
        at: Pos { line, col },
        value: Tok::Eof,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned<Tok>>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned<Tok> {
        &self.toks[self.i]
    }

    fn next(&mut self) -> Spanned<Tok> {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, DocError> {
        let t = self.next();
        if t.value == want {
            Ok(t.at)
        } else {
            Err(syntax(t.at, format!("expected {}, found {}", describe(&want), describe(&t.value))))
        }
    }

    fn name(&mut self, what: &str) -> Result<Spanned<String>, DocError> {
        let t = self.next();
        match t.value {
            Tok::Word(w) | Tok::Quoted(w) => Ok(Spanned { at: t.at, value: w }),
            other => Err(syntax(t.at, format!("expected {what}, found {}", describe(&other)))),
        }
    }

    fn rational(&mut self) -> Result<Rational, DocError> {
        let t = self.next();
        match &t.value {
            Tok::Word(w) => rational::parse(w).ok_or_else(|| syntax(t.at, format!("`{w}` is not a rational"))),
            other => Err(syntax(t.at, format!("expected a rational, found {}", describe(other)))),
        }
    }

    // Comma separated items up to the closing brace; a trailing comma is allowed.
    fn block<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, DocError>) -> Result<Vec<T>, DocError> {
        self.expect(Tok::LBrace)?;
        let mut items = Vec::new();
        loop {
            if self.peek().value == Tok::RBrace {
                self.next();
                return Ok(items);
            }
            items.push(item(self)?);
            let t = self.next();
            match t.value {
                Tok::Comma => {}
                Tok::RBrace => return Ok(items),
                other => return Err(syntax(t.at, format!("expected `,` or `}}`, found {}", describe(&other)))),
            }
        }
    }

    fn decl(&mut self) -> Result<Option<Decl>, DocError> {
        let t = self.next();
        match &t.value {
            Tok::Eof => Ok(None),
            Tok::Word(k) if k == "space" => {
                let name = self.name("a space name")?;
                let entries = self.block(|p| {
                    let l = p.name("a label")?;
                    p.expect(Tok::Colon)?;
                    Ok((l, p.rational()?))
                })?;
                Ok(Some(Decl::Space(SpaceDecl { name, entries })))
            }
            Tok::Word(k) if k == "map" => {
                let name = self.name("a map name")?;
                self.expect(Tok::Colon)?;
                let src = self.name("a space name")?;
                self.expect(Tok::Arrow)?;
                let tgt = self.name("a space name")?;
                let entries = self.block(|p| {
                    let y = p.name("a target label")?;
                    p.expect(Tok::Pipe)?;
                    let x = p.name("a source label")?;
                    p.expect(Tok::Eq)?;
                    Ok((y, x, p.rational()?))
                })?;
                Ok(Some(Decl::Map(MapDecl { name, src, tgt, entries })))
            }
            other => Err(syntax(t.at, format!("expected `space` or `map`, found {}", describe(other)))),
        }
    }
}

pub(super) fn parse(input: &str) -> Result<Document, DocError> {
    let mut p = Parser { toks: lex(input)?, i: 0 };
    let mut decls = Vec::new();
    while let Some(d) = p.decl()? {
        decls.push(d);
    }
    build(decls)
}

fn quote(s: &str) -> String {
    let plain = !s.is_empty() && s.chars().all(is_word_char) && !s.contains("->") && s != "space" && s != "map";
    if plain {
        return s.to_string();
    }
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn label(l: &Label) -> String {
    quote(l.as_str())
}

/// Pretty-prints a document in the text format; parsing the result gives
/// back an equal document.
pub fn to_text(doc: &Document) -> String {
    let mut out = String::new();
    for (name, space) in doc.spaces() {
        let body: Vec<String> = space
            .labels()
            .iter()
            .zip(space.probs())
            .map(|(l, p)| format!("{}: {}", label(l), rational::format(p)))
            .collect();
        let _ = writeln!(out, "space {} {{ {} }}", quote(name), body.join(", "));
    }
    for (name, decl) in doc.maps() {
        let f = decl.morphism.map();
        let _ = writeln!(out, "map {} : {} -> {} {{", quote(name), quote(&decl.src), quote(&decl.tgt));
        for (x, col) in f.columns().iter().enumerate() {
            for (y, v) in col.iter().enumerate() {
                if *v != rational::zero() {
                    let _ = writeln!(out, "  {} | {} = {},", label(&f.tgt()[y]), label(&f.src()[x]), rational::format(v));
                }
            }
        }
        out.push_str("}\n");
    }
    out
}
