//! Operadic terms: parsing, printing and spans.
//!
//! ```text
//! term  := ident | json-object
//!        | "compose(" term "," int "," term ")"
//!        | "permute(" perm "," term ")"
//!        | "trace(" term "," "[" [term ("," term)*] "]" ")"
//!        | "unit(" int ")"
//! perm  := "[" [int ("," int)*] "]"
//! ```

use std::fmt;

use serde_json::Value as Json;

/// Byte range into the source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone)]
pub struct Term {
    pub kind: TermKind,
    pub span: Span,
}

/// Spans are ignored: two terms are equal when their trees are.
impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TermKind {
    Ident(String),
    Literal(Json),
    Compose(Box<Term>, usize, Box<Term>),
    Permute(Vec<usize>, Box<Term>),
    Trace(Box<Term>, Vec<Term>),
    Unit(usize),
}

impl Term {
    pub fn new(kind: TermKind) -> Self {
        Self { kind, span: Span::default() }
    }
}

/// 1-based line and column of a byte offset.
pub fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at line {line}, column {column}: expected {}, found {found}", expected_list(.expected))]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

fn expected_list(items: &[String]) -> String {
    match items {
        [one] => one.clone(),
        _ => format!("one of {}", items.join(", ")),
    }
}

const TERM_START: [&str; 6] = ["identifier", "JSON object", "`compose(`", "`permute(`", "`trace(`", "`unit(`"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn error_at(&self, pos: usize, expected: &[&str]) -> SyntaxError {
        let (line, column) = line_col(self.src, pos);
        let found = match self.src[pos..].chars().next() {
            None => "end of input".to_string(),
            Some(c) => format!("`{c}`"),
        };
        SyntaxError { line, column, expected: expected.iter().map(|s| s.to_string()).collect(), found }
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        self.error_at(self.pos, expected)
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars.find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_')).map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(&rest[..end])
    }

    fn int(&mut self) -> Result<usize, SyntaxError> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return Err(self.error(&["integer"]));
        }
        let n = rest[..end].parse().map_err(|_| self.error(&["integer that fits in 64 bits"]))?;
        self.pos += end;
        Ok(n)
    }

    fn perm(&mut self) -> Result<Vec<usize>, SyntaxError> {
        self.expect('[')?;
        let mut images = Vec::new();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(images);
        }
        loop {
            images.push(self.int()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(images);
                }
                _ => return Err(self.error(&["`,`", "`]`"])),
            }
        }
    }

    /// A balanced `{…}` block, honouring JSON strings.
    fn literal(&mut self) -> Result<Json, SyntaxError> {
        let start = self.pos;
        let (mut depth, mut in_str, mut escaped) = (0usize, false, false);
        for (i, c) in self.rest().char_indices() {
            if in_str {
                match (escaped, c) {
                    (true, _) => escaped = false,
                    (false, '\\') => escaped = true,
                    (false, '"') => in_str = false,
                    _ => {}
                }
                continue;
            }
            match c {
                '"' => in_str = true,
                '{' | '[' => depth += 1,
                '}' | ']' => {
                    depth -= 1;
                    if depth == 0 {
                        let text = &self.src[start..start + i + 1];
                        return match serde_json::from_str(text) {
                            Ok(v) => {
                                self.pos = start + i + 1;
                                Ok(v)
                            }
                            Err(e) => {
                                let mut err = self.error_at(start, &["valid JSON"]);
                                err.found = format!("invalid JSON ({e})");
                                Err(err)
                            }
                        };
                    }
                }
                _ => {}
            }
        }
        self.pos = self.src.len();
        Err(self.error(&["`}`"]))
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('{') {
            let v = self.literal()?;
            return Ok(Term { kind: TermKind::Literal(v), span: Span { start, end: self.pos } });
        }
        let Some(name) = self.ident() else {
            return Err(self.error(&TERM_START));
        };
        let after_name = self.pos;
        self.skip_ws();
        let call = self.peek() == Some('(');
        let kind = match (name, call) {
            ("compose", true) => {
                self.pos += 1;
                let left = self.term()?;
                self.expect(',')?;
                let i = self.int()?;
                self.expect(',')?;
                let right = self.term()?;
                self.expect(')')?;
                TermKind::Compose(Box::new(left), i, Box::new(right))
            }
            ("permute", true) => {
                self.pos += 1;
                let p = self.perm()?;
                self.expect(',')?;
                let t = self.term()?;
                self.expect(')')?;
                TermKind::Permute(p, Box::new(t))
            }
            ("trace", true) => {
                self.pos += 1;
                let m = self.term()?;
                self.expect(',')?;
                self.expect('[')?;
                let mut items = Vec::new();
                self.skip_ws();
                if self.peek() == Some(']') {
                    self.pos += 1;
                } else {
                    loop {
                        items.push(self.term()?);
                        self.skip_ws();
                        match self.peek() {
                            Some(',') => self.pos += 1,
                            Some(']') => {
                                self.pos += 1;
                                break;
                            }
                            _ => return Err(self.error(&["`,`", "`]`"])),
                        }
                    }
                }
                self.expect(')')?;
                TermKind::Trace(Box::new(m), items)
            }
            ("unit", true) => {
                self.pos += 1;
                let n = self.int()?;
                self.expect(')')?;
                TermKind::Unit(n)
            }
            (_, true) => {
                let (line, column) = line_col(self.src, start);
                return Err(SyntaxError {
                    line,
                    column,
                    expected: ["`compose`", "`permute`", "`trace`", "`unit`"].map(String::from).to_vec(),
                    found: format!("`{name}(`"),
                });
            }
            (_, false) => {
                self.pos = after_name;
                TermKind::Ident(name.to_string())
            }
        };
        Ok(Term { kind, span: Span { start, end: self.pos } })
    }
}

pub fn parse(source: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser { src: source, pos: 0 };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != source.len() {
        return Err(p.error(&["end of input"]));
    }
    Ok(t)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TermKind::Ident(s) => f.write_str(s),
            TermKind::Literal(v) => write!(f, "{v}"),
            TermKind::Compose(l, i, r) => write!(f, "compose({l}, {i}, {r})"),
            TermKind::Permute(p, t) => {
                let images: Vec<String> = p.iter().map(usize::to_string).collect();
                write!(f, "permute([{}], {t})", images.join(", "))
            }
            TermKind::Trace(m, items) => {
                let items: Vec<String> = items.iter().map(Term::to_string).collect();
                write!(f, "trace({m}, [{}])", items.join(", "))
            }
            TermKind::Unit(n) => write!(f, "unit({n})"),
        }
    }
}
