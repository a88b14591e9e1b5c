//! Concrete syntax for LTL formulas.
//!
//! ```text
//! formula := implies
//! implies := or ( "->" implies )?
//! or      := and ( "|" and )*
//! and     := binary ( "&" binary )*
//! binary  := unary ( ("U" | "R") binary )?
//! unary   := ("!" | "X" | "G" | "F") unary | primary
//! primary := "true" | "false" | ident | "(" formula ")"
//! ```
//!
//! An identifier that starts with one of the unary operator letters `X`, `G`
//! or `F` is split, so `GFa` reads as `G F a` and `Xp` as `X p`. Atom names
//! therefore cannot begin with those three capitals.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at {}:{}: found {}, expected one of: {}",
            self.line,
            self.column,
            self.found,
            self.expected.join(", ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    True,
    False,
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Release,
    Globally,
    Finally,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::True => "`true`".into(),
            Tok::False => "`false`".into(),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Next => "`X`".into(),
            Tok::Until => "`U`".into(),
            Tok::Release => "`R`".into(),
            Tok::Globally => "`G`".into(),
            Tok::Finally => "`F`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn error_at(line: usize, column: usize, found: String, expected: &[&str]) -> ParseError {
    ParseError {
        line,
        column,
        found,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '!' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            i += 1;
            column += 1;
            continue;
        }
        if c == '-' {
            if chars.get(i + 1) == Some(&'>') {
                out.push(Spanned {
                    tok: Tok::Implies,
                    line: l0,
                    column: c0,
                });
                i += 2;
                column += 2;
                continue;
            }
            return Err(error_at(l0, c0, "`-`".into(), &["`->`"]));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            push_word(&mut out, &word, l0, c0);
            column += i - start;
            continue;
        }
        return Err(error_at(
            l0,
            c0,
            format!("character `{c}`"),
            &["formula", "operator"],
        ));
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

fn push_word(out: &mut Vec<Spanned>, word: &str, line: usize, column: usize) {
    let keyword = match word {
        "true" => Some(Tok::True),
        "false" => Some(Tok::False),
        "X" => Some(Tok::Next),
        "U" => Some(Tok::Until),
        "R" => Some(Tok::Release),
        "G" => Some(Tok::Globally),
        "F" => Some(Tok::Finally),
        _ => None,
    };
    if let Some(tok) = keyword {
        out.push(Spanned { tok, line, column });
        return;
    }
    let op = match word.as_bytes()[0] {
        b'X' => Some(Tok::Next),
        b'G' => Some(Tok::Globally),
        b'F' => Some(Tok::Finally),
        _ => None,
    };
    match op {
        Some(tok) => {
            out.push(Spanned { tok, line, column });
            push_word(out, &word[1..], line, column + 1);
        }
        None => out.push(Spanned {
            tok: Tok::Ident(word.to_string()),
            line,
            column,
        }),
    }
}

const OPERAND: &[&str] = &[
    "`true`",
    "`false`",
    "identifier",
    "`!`",
    "`X`",
    "`G`",
    "`F`",
    "`(`",
];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, expected: &[&str]) -> ParseError {
        let t = &self.toks[self.pos];
        error_at(t.line, t.column, t.tok.describe(), expected)
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.binary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.binary()?);
        }
        Ok(lhs)
    }

    fn binary(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        match self.peek() {
            Tok::Until => {
                self.bump();
                Ok(Formula::until(lhs, self.binary()?))
            }
            Tok::Release => {
                self.bump();
                Ok(Formula::release(lhs, self.binary()?))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Next => {
                self.bump();
                Ok(Formula::next(self.unary()?))
            }
            Tok::Globally => {
                self.bump();
                Ok(Formula::globally(self.unary()?))
            }
            Tok::Finally => {
                self.bump();
                Ok(Formula::finally(self.unary()?))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(Arc::from(name.as_str())))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.implies()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.fail(&["`)`", "`&`", "`|`", "`->`", "`U`", "`R`"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.fail(OPERAND)),
        }
    }
}

/// Parses a formula; whitespace is insignificant.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.implies()?;
    if *p.peek() != Tok::Eof {
        return Err(p.fail(&["end of input", "`&`", "`|`", "`->`", "`U`", "`R`"]));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
