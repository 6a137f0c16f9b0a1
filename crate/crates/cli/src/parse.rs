//! Ideal expressions: `vars x, y ; x^2, x*y`.
//!
//! ```text
//! expr  := "vars" names ";" ( "0" | term ("," term)* )
//! names := ( name ("," name)* )?
//! term  := "1" | factor ("*" factor)*
//! factor:= name ("^" int)?
//! name  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Whitespace (including newlines) is insignificant. The empty declaration
//! and the term `1` exist so that every ideal the engine can print,
//! including the residue field and the unit ideal, parses back.

use std::fmt;

use depthforge_core::{Monomial, MonomialIdeal, RingContext};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found}")]
    Syntax { expected: &'static str, found: String },
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("duplicate variable declaration `{0}`")]
    DuplicateVariable(String),
    #[error("exponents must be positive integers")]
    NonPositiveExponent,
    #[error("exponent `{0}` is too large")]
    ExponentOverflow(String),
    #[error("{0}")]
    Engine(String),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(String),
    Comma,
    Semi,
    Star,
    Caret,
    Minus,
    Other(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(s) => write!(f, "`{s}`"),
            Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Other(c) => write!(f, "`{}`", c.escape_debug()),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Vec<(Tok, Pos)> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c.is_whitespace() {
            chars.next();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            continue;
        }
        let mut take_while = |pred: fn(char) -> bool| {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !pred(d) {
                    break;
                }
                s.push(d);
                chars.next();
            }
            s
        };
        let tok = if c.is_ascii_alphabetic() {
            Tok::Name(take_while(|d| d.is_ascii_alphanumeric() || d == '_'))
        } else if c.is_ascii_digit() {
            Tok::Int(take_while(|d| d.is_ascii_digit()))
        } else {
            chars.next();
            match c {
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '-' => Tok::Minus,
                other => Tok::Other(other),
            }
        };
        column += match &tok {
            Tok::Name(s) | Tok::Int(s) => s.chars().count(),
            _ => 1,
        };
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column }));
    out
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, pos: Pos, kind: ParseErrorKind) -> Result<T, ParseError> {
        Err(ParseError { line: pos.line, column: pos.column, kind })
    }

    fn expected<T>(&self, expected: &'static str) -> Result<T, ParseError> {
        let found = self.peek().to_string();
        self.fail(self.pos(), ParseErrorKind::Syntax { expected, found })
    }

    fn name(&mut self, expected: &'static str) -> Result<(String, Pos), ParseError> {
        match self.peek().clone() {
            Tok::Name(s) => Ok((s, self.bump().1)),
            _ => self.expected(expected),
        }
    }

    fn declarations(&mut self) -> Result<Vec<String>, ParseError> {
        match self.peek() {
            Tok::Name(kw) if kw == "vars" => {
                self.bump();
            }
            _ => return self.expected("`vars`"),
        }
        let mut names: Vec<String> = Vec::new();
        if *self.peek() == Tok::Semi {
            self.bump();
            return Ok(names);
        }
        loop {
            let (name, pos) = self.name("a variable name")?;
            if names.contains(&name) {
                return self.fail(pos, ParseErrorKind::DuplicateVariable(name));
            }
            names.push(name);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::Semi => {
                    self.bump();
                    return Ok(names);
                }
                _ => return self.expected("`,` or `;`"),
            }
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Minus => self.fail(pos, ParseErrorKind::NonPositiveExponent),
            Tok::Int(s) => {
                self.bump();
                match s.parse::<u32>() {
                    Ok(0) => self.fail(pos, ParseErrorKind::NonPositiveExponent),
                    Ok(e) => Ok(e),
                    Err(_) => self.fail(pos, ParseErrorKind::ExponentOverflow(s)),
                }
            }
            _ => self.expected("an exponent"),
        }
    }

    fn term(&mut self, ctx: &RingContext) -> Result<Monomial, ParseError> {
        let start = self.pos();
        let mut exps = vec![0u32; ctx.num_vars()];
        if matches!(self.peek(), Tok::Int(s) if s == "1") {
            self.bump();
            return Ok(Monomial::new(exps));
        }
        loop {
            let (name, pos) = self.name("a variable name")?;
            let Some(i) = ctx.index_of(&name) else {
                return self.fail(pos, ParseErrorKind::UndeclaredVariable(name));
            };
            let e = if *self.peek() == Tok::Caret {
                self.bump();
                self.exponent()?
            } else {
                1
            };
            exps[i] = match exps[i].checked_add(e) {
                Some(v) => v,
                None => return self.fail(pos, ParseErrorKind::ExponentOverflow(format!("{name}^{e}"))),
            };
            if *self.peek() != Tok::Star {
                break;
            }
            self.bump();
        }
        Monomial::checked(exps).or_else(|e| self.fail(start, ParseErrorKind::Engine(e.to_string())))
    }

    fn terms(&mut self, ctx: &RingContext) -> Result<Vec<Monomial>, ParseError> {
        if matches!(self.peek(), Tok::Int(s) if s == "0") {
            self.bump();
            return Ok(Vec::new());
        }
        let mut gens = vec![self.term(ctx)?];
        while *self.peek() == Tok::Comma {
            self.bump();
            gens.push(self.term(ctx)?);
        }
        Ok(gens)
    }
}

/// Parses an ideal expression into its ring and minimalized ideal.
pub fn parse_ideal(text: &str) -> Result<(RingContext, MonomialIdeal), ParseError> {
    let mut p = Parser { toks: lex(text), at: 0 };
    let start = p.pos();
    let names = p.declarations()?;
    let ctx = RingContext::new(names).or_else(|e| p.fail(start, ParseErrorKind::Engine(e.to_string())))?;
    let gens = p.terms(&ctx)?;
    if *p.peek() != Tok::End {
        return p.expected("`,` or end of input");
    }
    let ideal = MonomialIdeal::minimalize(gens, ctx.num_vars())
        .or_else(|e| p.fail(start, ParseErrorKind::Engine(e.to_string())))?;
    Ok((ctx, ideal))
}

/// The expression [`parse_ideal`] reads back as `(ctx, ideal)`.
pub fn format_ideal(ctx: &RingContext, ideal: &MonomialIdeal) -> String {
    let body = if ideal.is_zero() {
        "0".to_string()
    } else {
        let shown = ideal.display_with(ctx.var_names()).to_string();
        shown[1..shown.len() - 1].to_string()
    };
    if ctx.num_vars() == 0 {
        return format!("vars ; {body}");
    }
    format!("vars {} ; {}", ctx.var_names().join(", "), body)
}
