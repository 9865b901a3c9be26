//! Line-oriented `.vass` documents.
//!
//! ```text
//! # comment
//! dim 2
//! kind vass            # vas | vass | seqvas
//! encoding binary      # optional; unary by default
//! state p
//! state q
//! trans p q 1 -1       # vass; `trans * 1 -1` for vas and seqvas base
//! bridge 0 1           # seqvas only, in order
//! init p 0 0
//! target q 1 1
//! ```
//!
//! A `#` starts a comment only at the beginning of a token, so constructed
//! state names such as `q#vec(1,2)` survive a round trip.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use vasreach::model::Encoding;
use vasreach::{Configuration, IntVector, ReachInstance, SequentialVas, StateId, System, Transition, Vass};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Vas,
    Vass,
    SeqVas,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Vas => "vas",
            Kind::Vass => "vass",
            Kind::SeqVas => "seqvas",
        }
    }

    /// The kind a serialized instance gets.
    pub fn of(inst: &ReachInstance) -> Kind {
        match inst.system() {
            System::Sequential(_) => Kind::SeqVas,
            System::Vass(v) if v.is_vas() && v.states()[0] == StateId::vas() => Kind::Vas,
            System::Vass(_) => Kind::Vass,
        }
    }
}

/// A parsed document: the instance plus its size-accounting flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub instance: ReachInstance,
    pub encoding: Encoding,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let mut tokens = Vec::new();
        let mut rest = raw;
        let mut offset = 0;
        loop {
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                break;
            }
            let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
            tokens.push(Token {
                text: &trimmed[..end],
                line: n + 1,
                column: raw[..offset].chars().count() + 1,
            });
            offset += end;
            rest = &trimmed[end..];
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn at_end_of(line: &[Token<'_>]) -> ParseError {
    let last = line.last().expect("nonempty line");
    ParseError {
        line: last.line,
        column: last.column + last.text.chars().count(),
        message: String::new(),
    }
}

fn vector(line: &[Token<'_>], start: usize, dim: usize) -> Result<IntVector, ParseError> {
    let values = &line[start.min(line.len())..];
    if values.len() != dim {
        let mut e = if values.len() > dim {
            values[dim].error("")
        } else {
            at_end_of(line)
        };
        e.message = format!(
            "expected {dim} integers after `{}`, found {}",
            line[0].text,
            values.len()
        );
        return Err(e);
    }
    values
        .iter()
        .map(|t| {
            t.text
                .parse::<BigInt>()
                .map_err(|_| t.error(format!("malformed integer `{}`", t.text)))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(IntVector::new)
}

fn natural(tok: &Token<'_>) -> Result<usize, ParseError> {
    tok.text
        .parse()
        .map_err(|_| tok.error(format!("expected a natural number, found `{}`", tok.text)))
}

fn operand<'a, 'b>(line: &'b [Token<'a>], i: usize) -> Result<&'b Token<'a>, ParseError> {
    line.get(i).ok_or_else(|| {
        let mut e = at_end_of(line);
        e.message = format!("`{}` is missing an operand", line[0].text);
        e
    })
}

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let lines = tokenize(text);
    let mut dim = None;
    let mut kind = None;
    let mut encoding = None;
    for line in &lines {
        let head = &line[0];
        let slot_taken = |set: bool| {
            if set {
                Err(head.error(format!("duplicate `{}` line", head.text)))
            } else {
                Ok(())
            }
        };
        match head.text {
            "dim" => {
                slot_taken(dim.is_some())?;
                dim = Some(natural(operand(line, 1)?)?);
            }
            "kind" => {
                slot_taken(kind.is_some())?;
                let t = operand(line, 1)?;
                kind = Some(match t.text {
                    "vas" => Kind::Vas,
                    "vass" => Kind::Vass,
                    "seqvas" => Kind::SeqVas,
                    other => return Err(t.error(format!("unknown kind `{other}`, expected vas, vass or seqvas"))),
                });
            }
            "encoding" => {
                slot_taken(encoding.is_some())?;
                let t = operand(line, 1)?;
                encoding = Some(match t.text {
                    "unary" => Encoding::Unary,
                    "binary" => Encoding::Binary,
                    other => return Err(t.error(format!("unknown encoding `{other}`"))),
                });
            }
            _ => continue,
        }
        if line.len() > 2 {
            return Err(line[2].error(format!("unexpected token after `{}`", head.text)));
        }
    }
    let missing = |what: &str| ParseError {
        line: lines.last().map_or(1, |l| l[0].line),
        column: 1,
        message: format!("{what} required"),
    };
    let dim = dim.ok_or_else(|| missing("dim"))?;
    let kind = kind.ok_or_else(|| missing("kind"))?;

    let mut states: Vec<StateId> = Vec::new();
    let mut transitions: Vec<Transition> = Vec::new();
    let mut base: Vec<IntVector> = Vec::new();
    let mut bridges: Vec<IntVector> = Vec::new();
    let mut init: Option<(StateId, IntVector)> = None;
    let mut target: Option<(StateId, IntVector)> = None;
    let declared = |states: &[StateId], tok: &Token<'_>| -> Result<StateId, ParseError> {
        match kind {
            Kind::Vass => {
                let q = StateId::new(tok.text);
                if tok.text == "*" || !states.contains(&q) {
                    return Err(tok.error(format!("undeclared state `{}`", tok.text)));
                }
                Ok(q)
            }
            _ if tok.text == "*" => Ok(StateId::vas()),
            _ => Err(tok.error(format!("a {} uses `*` as its state", kind.as_str()))),
        }
    };
    for line in &lines {
        let head = &line[0];
        match head.text {
            "dim" | "kind" | "encoding" => {}
            "state" => {
                if kind != Kind::Vass {
                    return Err(head.error("`state` lines are only allowed in a vass"));
                }
                let t = operand(line, 1)?;
                if t.text == "*" {
                    return Err(t.error("`*` is not a state name"));
                }
                if line.len() > 2 {
                    return Err(line[2].error("unexpected token after the state name"));
                }
                let q = StateId::new(t.text);
                if states.contains(&q) {
                    return Err(t.error(format!("state `{}` declared twice", t.text)));
                }
                states.push(q);
            }
            "trans" => match kind {
                Kind::Vass => {
                    let src = declared(&states, operand(line, 1)?)?;
                    let dst = declared(&states, operand(line, 2)?)?;
                    transitions.push(Transition::new(src, vector(line, 3, dim)?, dst));
                }
                _ => {
                    declared(&states, operand(line, 1)?)?;
                    base.push(vector(line, 2, dim)?);
                }
            },
            "bridge" => {
                if kind != Kind::SeqVas {
                    return Err(head.error("`bridge` lines are only allowed in a seqvas"));
                }
                bridges.push(vector(line, 1, dim)?);
            }
            "init" | "target" => {
                let slot = if head.text == "init" { &mut init } else { &mut target };
                if slot.is_some() {
                    return Err(head.error(format!("duplicate `{}` line", head.text)));
                }
                let q = declared(&states, operand(line, 1)?)?;
                let x = vector(line, 2, dim)?;
                if let Some(i) = x.first_negative() {
                    return Err(line[2 + i].error("configurations must be nonnegative"));
                }
                *slot = Some((q, x));
            }
            other => return Err(head.error(format!("unknown directive `{other}`"))),
        }
    }
    let (s_state, s) = init.ok_or_else(|| missing("init"))?;
    let (t_state, t) = target.ok_or_else(|| missing("target"))?;
    let internal = |e: vasreach::ModelError| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
    };
    let instance = match kind {
        Kind::Vas => ReachInstance::vas(dim, base, s, t).map_err(internal)?,
        Kind::Vass => {
            let v = Vass::new(dim, states, transitions).map_err(internal)?;
            ReachInstance::from_vass(v, Configuration::new(s_state, s), Configuration::new(t_state, t))
                .map_err(internal)?
        }
        Kind::SeqVas => {
            let seq = SequentialVas::new(dim, base, bridges).map_err(internal)?;
            ReachInstance::sequential(seq, s, t).map_err(internal)?
        }
    };
    Ok(Document {
        instance,
        encoding: encoding.unwrap_or_default(),
    })
}

fn push_vector(out: &mut String, x: &IntVector) {
    for v in x.iter() {
        let _ = write!(out, " {v}");
    }
}

/// Serializes with optional leading comment lines.
pub fn serialize(inst: &ReachInstance, encoding: Encoding, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        for l in c.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    let kind = Kind::of(inst);
    let _ = writeln!(out, "dim {}", inst.dim());
    let _ = writeln!(out, "kind {}", kind.as_str());
    if encoding == Encoding::Binary {
        out.push_str("encoding binary\n");
    }
    let name = |q: &StateId| match kind {
        Kind::Vass => q.to_string(),
        _ => "*".to_string(),
    };
    match inst.system() {
        System::Sequential(seq) => {
            for a in seq.base() {
                out.push_str("trans *");
                push_vector(&mut out, a);
                out.push('\n');
            }
            for a in seq.bridges() {
                out.push_str("bridge");
                push_vector(&mut out, a);
                out.push('\n');
            }
        }
        System::Vass(v) => {
            if kind == Kind::Vass {
                for q in v.states() {
                    let _ = writeln!(out, "state {q}");
                }
            }
            for t in v.transitions() {
                match kind {
                    Kind::Vass => {
                        let _ = write!(out, "trans {} {}", t.src, t.dst);
                    }
                    _ => out.push_str("trans *"),
                }
                push_vector(&mut out, &t.effect);
                out.push('\n');
            }
        }
    }
    for (label, c) in [("init", inst.source()), ("target", inst.target())] {
        let _ = write!(out, "{label} {}", name(&c.state));
        push_vector(&mut out, &c.vector);
        out.push('\n');
    }
    out
}

/// Whether a state name survives serialization.
pub fn is_serializable_name(q: &str) -> bool {
    !q.is_empty() && q != "*" && !q.starts_with('#') && !q.contains(char::is_whitespace)
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(&self.instance, self.encoding, &[]))
    }
}
