//! The `.lgr` diagram language.
//!
//! ```text
//! diagram := "tangle" NAME "{" "left" INT "[" INT-list "]" event* "}"
//! event   := "L" INT INT | "R" INT ["bp"] | "X" INT
//!          | "V" INT INT INT "[" INT-list "]" ["lbp"] | "B" INT ("+"|"-")
//! ```
//!
//! Positions are 0-based strand indices, top to bottom. `#` starts a comment.
//! Semantic checks (ranges, potentials) are left to [`FrontDiagram::validate`].

use serde_json::Value;
use thiserror::Error;

use crate::front::{FrontDiagram, SliceEvent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Anything with a fixed JSON encoding.
pub trait ToJson {
    fn to_json(&self) -> Value;
}

/// Pretty JSON text of a result object.
pub fn to_json<T: ToJson + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(&value.to_json()).expect("JSON values always serialize")
}

impl ToJson for FrontDiagram {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("diagram serializes")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> SyntaxError {
    SyntaxError { line, column, message: message.into() }
}

fn lex(text: &str) -> Result<(Vec<Token>, (usize, usize)), SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let (l0, c0) = (line, column);
        let mut advance = |k: &mut usize, n: usize| {
            for _ in 0..n {
                if chars[*k] == '\n' {
                    line += 1;
                    column = 1;
                } else {
                    column += 1;
                }
                *k += 1;
            }
        };
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: l0, column: c0 });
            advance(&mut k, 1);
        } else if c.is_whitespace() {
            advance(&mut k, 1);
        } else if c == '#' {
            while k < chars.len() && chars[k] != '\n' {
                advance(&mut k, 1);
            }
        } else if c == '-' || c.is_ascii_digit() {
            let mut end = k + 1;
            while end < chars.len() && chars[end].is_ascii_digit() {
                end += 1;
            }
            if c == '-' && end == k + 1 {
                out.push(Token { tok: Tok::Minus, line: l0, column: c0 });
                advance(&mut k, 1);
                continue;
            }
            let s: String = chars[k..end].iter().collect();
            let v: i64 = s.parse().map_err(|_| err(l0, c0, format!("integer '{}' out of range", s)))?;
            out.push(Token { tok: Tok::Int(v), line: l0, column: c0 });
            let n = end - k;
            advance(&mut k, n);
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut end = k + 1;
            while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_') {
                end += 1;
            }
            let s: String = chars[k..end].iter().collect();
            out.push(Token { tok: Tok::Ident(s), line: l0, column: c0 });
            let n = end - k;
            advance(&mut k, n);
        } else {
            return Err(err(l0, c0, format!("unexpected character '{}'", c)));
        }
    }
    Ok((out, (line, column)))
}

struct Parser {
    toks: Vec<Token>,
    k: usize,
    eof: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.k)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.column)).unwrap_or(self.eof)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        let (l, c) = self.here();
        Err(err(l, c, message))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.k).cloned();
        self.k += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(t) if t.tok == want => {
                self.k += 1;
                Ok(())
            }
            _ => self.fail(format!("expected {}", what)),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), .. }) if s == kw => {
                self.k += 1;
                Ok(())
            }
            _ => self.fail(format!("expected '{}'", kw)),
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == kw) && {
            self.k += 1;
            true
        }
    }

    fn int(&mut self) -> Result<i64, SyntaxError> {
        match self.peek() {
            Some(Token { tok: Tok::Int(v), .. }) => {
                let v = *v;
                self.k += 1;
                Ok(v)
            }
            _ => self.fail("expected an integer"),
        }
    }

    fn index(&mut self) -> Result<usize, SyntaxError> {
        let (l, c) = self.here();
        let v = self.int()?;
        usize::try_from(v).map_err(|_| err(l, c, "expected a nonnegative integer"))
    }

    fn int_list(&mut self) -> Result<Vec<i64>, SyntaxError> {
        self.expect(Tok::LBracket, "'['")?;
        let mut out = Vec::new();
        if matches!(self.peek(), Some(Token { tok: Tok::RBracket, .. })) {
            self.k += 1;
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            match self.next().map(|t| t.tok) {
                Some(Tok::Comma) => continue,
                Some(Tok::RBracket) => return Ok(out),
                _ => {
                    self.k -= 1;
                    return self.fail("expected ',' or ']'");
                }
            }
        }
    }

    fn event(&mut self) -> Result<SliceEvent, SyntaxError> {
        let Some(Token { tok: Tok::Ident(kind), .. }) = self.peek().cloned() else {
            return self.fail("expected an event (L, R, X, V, B) or '}'");
        };
        self.k += 1;
        Ok(match kind.as_str() {
            "L" => {
                let pos = self.index()?;
                SliceEvent::LeftCusp { pos, upper: self.int()? }
            }
            "R" => {
                let pos = self.index()?;
                SliceEvent::RightCusp { pos, basepoint: self.eat_keyword("bp") }
            }
            "X" => SliceEvent::Crossing { pos: self.index()? },
            "V" => {
                let pos = self.index()?;
                let left = self.index()?;
                let right = self.index()?;
                let right_potentials = self.int_list()?;
                let left_basepoints = self.eat_keyword("lbp");
                SliceEvent::Vertex { pos, left, right, right_potentials, left_basepoints }
            }
            "B" => {
                let pos = self.index()?;
                let orientation = match self.next().map(|t| t.tok) {
                    Some(Tok::Plus) => 1,
                    Some(Tok::Minus) => -1,
                    _ => {
                        self.k -= 1;
                        return self.fail("expected '+' or '-'");
                    }
                };
                SliceEvent::BasePoint { pos, orientation }
            }
            _ => {
                self.k -= 1;
                return self.fail(format!("unknown event '{}'", kind));
            }
        })
    }
}

/// Parses one diagram.
pub fn parse(text: &str) -> Result<FrontDiagram, SyntaxError> {
    let (toks, eof) = lex(text)?;
    let mut p = Parser { toks, k: 0, eof };
    p.keyword("tangle")?;
    let name = match p.next() {
        Some(Token { tok: Tok::Ident(s), .. }) => s,
        _ => {
            p.k -= 1;
            return p.fail("expected a diagram name");
        }
    };
    p.expect(Tok::LBrace, "'{'")?;
    p.keyword("left")?;
    let left_arity = p.index()?;
    let left_potentials = p.int_list()?;
    let mut events = Vec::new();
    loop {
        if matches!(p.peek(), Some(Token { tok: Tok::RBrace, .. })) {
            p.k += 1;
            break;
        }
        if p.peek().is_none() {
            return p.fail("expected '}'");
        }
        events.push(p.event()?);
    }
    if p.peek().is_some() {
        return p.fail("unexpected text after the closing '}'");
    }
    Ok(FrontDiagram { name: Some(name), left_arity, left_potentials, events })
}

fn list(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Canonical text. Markings are written as crossings with a trailing comment,
/// so they read back as ordinary crossings.
pub fn serialize(d: &FrontDiagram) -> String {
    let mut s = format!("tangle {} {{\n", d.name.as_deref().unwrap_or("t"));
    s += &format!("  left {} {}\n", d.left_arity, list(&d.left_potentials));
    for e in &d.events {
        let line = match e {
            SliceEvent::LeftCusp { pos, upper } => format!("L {} {}", pos, upper),
            SliceEvent::RightCusp { pos, basepoint } => {
                format!("R {}{}", pos, if *basepoint { " bp" } else { "" })
            }
            SliceEvent::Crossing { pos } => format!("X {}", pos),
            SliceEvent::Marking { pos } => format!("X {} # marked", pos),
            SliceEvent::Vertex { pos, left, right, right_potentials, left_basepoints } => format!(
                "V {} {} {} {}{}",
                pos,
                left,
                right,
                list(right_potentials),
                if *left_basepoints { " lbp" } else { "" }
            ),
            SliceEvent::BasePoint { pos, orientation } => {
                format!("B {} {}", pos, if *orientation < 0 { "-" } else { "+" })
            }
        };
        s += "  ";
        s += &line;
        s += "\n";
    }
    s += "}\n";
    s
}
