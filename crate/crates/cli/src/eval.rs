//! Evaluation of terms against named bindings.

use std::collections::BTreeMap;
use std::fmt;

use cyclotrace_core::intervals::{compose_intervals, module_compose, ConfigFile};
use cyclotrace_core::loops::pl::LoopJson;
use cyclotrace_core::loops::{c1_action, j1_trace, PlSpace};
use cyclotrace_core::polytopes::{compose_k, compose_w, Face, FaceJson};
use cyclotrace_core::{Bracketing, CircleConfig, Error, Permutation, PlLoop, UnitIntervalConfig};
use serde_json::Value as Json;

use crate::term::{line_col, Span, Term, TermKind};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    /// `unit(n)` before its family is known.
    Unit(usize),
    Intervals(UnitIntervalConfig),
    Circle(CircleConfig),
    Face(Face),
    Loop(PlLoop),
}

impl Value {
    /// Reads a JSON document in any of the supported schemas.
    pub fn from_json(v: &Json) -> Result<Self, String> {
        let obj = v.as_object().ok_or("expected a JSON object")?;
        let parsed = if obj.contains_key("type") {
            serde_json::from_value::<ConfigFile>(v.clone()).map(|c| match c {
                ConfigFile::Circle(d) => Value::Circle(d),
                ConfigFile::Unit(c) => Value::Intervals(c),
            })
        } else if obj.contains_key("breakpoints") {
            let j: LoopJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
            return PlLoop::from_json(&j).map(Value::Loop).map_err(|e| e.to_string());
        } else if obj.contains_key("sets") {
            let j: FaceJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
            return Face::try_from(j).map(Value::Face).map_err(|e| e.to_string());
        } else {
            return Err("unrecognized object: expected a configuration, a face or a loop".into());
        };
        parsed.map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> Json {
        let encoded = match self {
            Value::Unit(n) => {
                serde_json::to_value(ConfigFile::Unit(unit_intervals(*n).unwrap_or_else(UnitIntervalConfig::unit)))
            }
            Value::Intervals(c) => serde_json::to_value(ConfigFile::Unit(c.clone())),
            Value::Circle(d) => serde_json::to_value(ConfigFile::Circle(d.clone())),
            Value::Face(f) => serde_json::to_value(FaceJson::from(f)),
            Value::Loop(l) => serde_json::to_value(l.to_json()),
        };
        encoded.expect("values serialize")
    }

    fn kind(&self) -> &'static str {
        match self {
            Value::Unit(_) => "unit",
            Value::Intervals(_) => "interval configuration",
            Value::Circle(_) => "circle configuration",
            Value::Face(Face::K(_)) => "associahedron face",
            Value::Face(Face::W(_)) => "cyclohedron face",
            Value::Loop(_) => "loop",
        }
    }

    fn arity(&self) -> Option<usize> {
        match self {
            Value::Unit(n) => Some(*n),
            Value::Intervals(c) => Some(c.arity()),
            Value::Circle(d) => Some(d.arity()),
            Value::Face(Face::K(b)) => Some(b.n()),
            Value::Face(Face::W(t)) => Some(t.n()),
            Value::Loop(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = serde_json::to_string_pretty(&self.to_json()).map_err(|_| fmt::Error)?;
        f.write_str(&text)
    }
}

/// An evaluation error pinned to the offending subterm.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("at line {line}, column {column} in `{snippet}`: {message}")]
pub struct EvalError {
    pub line: usize,
    pub column: usize,
    pub snippet: String,
    pub message: String,
}

pub type Bindings = BTreeMap<String, Value>;

fn unit_intervals(n: usize) -> Option<UnitIntervalConfig> {
    match n {
        0 => Some(UnitIntervalConfig::point()),
        1 => Some(UnitIntervalConfig::unit()),
        _ => None,
    }
}

struct Evaluator<'a> {
    source: &'a str,
    bindings: &'a Bindings,
}

impl Evaluator<'_> {
    fn fail(&self, span: Span, message: impl fmt::Display) -> EvalError {
        let (line, column) = line_col(self.source, span.start);
        let snippet = self.source.get(span.start..span.end).unwrap_or("").to_string();
        EvalError { line, column, snippet, message: message.to_string() }
    }

    fn eval(&self, t: &Term) -> Result<Value, EvalError> {
        let err = |e: Error| self.fail(t.span, e);
        match &t.kind {
            TermKind::Ident(name) => {
                self.bindings.get(name).cloned().ok_or_else(|| self.fail(t.span, format!("unbound name `{name}`")))
            }
            TermKind::Literal(v) => Value::from_json(v).map_err(|e| self.fail(t.span, e)),
            TermKind::Unit(n) => {
                if *n > 1 {
                    return Err(self.fail(t.span, format!("unit({n}): only unit(1) and unit(0) exist")));
                }
                Ok(Value::Unit(*n))
            }
            TermKind::Compose(l, i, r) => {
                let (left, right) = (self.eval(l)?, self.eval(r)?);
                let k = left.arity().ok_or_else(|| self.fail(l.span, "loops cannot be composed"))?;
                if *i < 1 || *i > k {
                    return Err(err(Error::IndexOutOfRange { index: *i, arity: k }));
                }
                self.compose(t.span, left, *i, right)
            }
            TermKind::Permute(images, inner) => {
                let sigma = Permutation::new(images.clone()).map_err(err)?;
                match self.eval(inner)? {
                    Value::Intervals(c) => c.permute(&sigma).map(Value::Intervals).map_err(err),
                    Value::Circle(d) => d.permute(&sigma).map(Value::Circle).map_err(err),
                    Value::Unit(n) if sigma.size() == n => Ok(Value::Unit(n)),
                    Value::Unit(n) => Err(err(Error::ArityMismatch { expected: n, got: sigma.size() })),
                    other => Err(self.fail(t.span, format!("a {} carries no symmetric group action", other.kind()))),
                }
            }
            TermKind::Trace(m, items) => {
                let module = self.eval(m)?;
                let loops = items
                    .iter()
                    .map(|item| match self.eval(item)? {
                        Value::Loop(l) => Ok(l),
                        other => Err(self.fail(item.span, format!("expected a loop, found a {}", other.kind()))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let Some(first) = loops.first() else {
                    return Err(self.fail(t.span, "cannot infer the basepoint from an empty loop list"));
                };
                let space = PlSpace::new(first.basepoint().to_vec());
                let out = match module {
                    Value::Circle(d) => j1_trace(&space, &d, &loops),
                    Value::Intervals(c) => c1_action(&space, &c, &loops),
                    Value::Unit(n) => c1_action(&space, &unit_intervals(n).expect("checked at construction"), &loops),
                    other => return Err(self.fail(m.span, format!("cannot trace over a {}", other.kind()))),
                };
                out.map(Value::Loop).map_err(err)
            }
        }
    }

    fn compose(&self, span: Span, left: Value, i: usize, right: Value) -> Result<Value, EvalError> {
        let err = |e: Error| self.fail(span, e);
        let mismatch =
            |l: &Value, r: &Value| self.fail(span, format!("cannot compose a {} with a {}", l.kind(), r.kind()));
        let face_unit = |n: usize| match n {
            1 => Ok(Bracketing::top(1)),
            _ => Err(self.fail(span, "faces have no arity-0 element")),
        };
        match (left, right) {
            (Value::Unit(_), r) => Ok(r),
            (l @ (Value::Intervals(_) | Value::Circle(_)), Value::Unit(n)) => {
                let g = unit_intervals(n).expect("checked at construction");
                self.compose(span, l, i, Value::Intervals(g))
            }
            (l @ Value::Face(_), Value::Unit(n)) => self.compose(span, l, i, Value::Face(Face::K(face_unit(n)?))),
            (Value::Intervals(f), Value::Intervals(g)) => {
                compose_intervals(&f, &g, i).map(Value::Intervals).map_err(err)
            }
            (Value::Circle(d), Value::Intervals(g)) => module_compose(&d, &g, i).map(Value::Circle).map_err(err),
            (Value::Face(Face::K(x)), Value::Face(Face::K(y))) => {
                compose_k(&x, &y, i).map(|f| Value::Face(Face::K(f))).map_err(err)
            }
            (Value::Face(Face::W(m)), Value::Face(Face::K(y))) => {
                compose_w(&m, &y, i).map(|f| Value::Face(Face::W(f))).map_err(err)
            }
            (l, r) => Err(mismatch(&l, &r)),
        }
    }
}

/// Evaluates `term`, parsed from `source`, with `bindings` for its names.
pub fn evaluate(source: &str, term: &Term, bindings: &Bindings) -> Result<Value, EvalError> {
    Evaluator { source, bindings }.eval(term)
}
