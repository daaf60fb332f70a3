//! Text syntax for generators, words and bracket expressions.
//!
//! ```text
//! expr    := bracket | gen ;
//! bracket := "[" expr "," expr "]" ;
//! word    := term { "*" term } ;
//! term    := gen [ "^" integer ] | "(" word ")" [ "^" integer ] ;
//! gen     := letter { letter | digit } ;
//! ```
//!
//! Whitespace is ignored. Inside a word a bracket may also appear as a term
//! (it is flattened), and the literal `1` denotes the identity. Known
//! generator tokens are `xA<n>`, `xB<n>` and the bare `x<n>`, which means
//! `xA<n>`.

use thiserror::Error;

use crate::word::{BracketExpr, Generator, Side, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator `{token}` at position {position}")]
    UnknownGenerator { position: usize, token: String },
    #[error("power applied inside bracket context at position {position}")]
    PowerInBracket { position: usize },
}

/// Result of parsing free-form input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Expr(BracketExpr),
    Word(Word),
}

impl Parsed {
    pub fn into_word(self) -> Word {
        match self {
            Parsed::Expr(e) => e.flatten(),
            Parsed::Word(w) => w,
        }
    }
}

/// Parses either a bracket expression (a lone generator counts as a leaf) or,
/// failing that, a word.
pub fn parse(text: &str) -> Result<Parsed, ParseError> {
    let mut p = Parser::new(text);
    p.skip_ws();
    let start = p.pos;
    if matches!(p.peek(), Some('[')) || p.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
        match p.expr() {
            Ok(e) => {
                p.skip_ws();
                if p.at_end() {
                    return Ok(Parsed::Expr(e));
                }
            }
            Err(err @ (ParseError::PowerInBracket { .. } | ParseError::UnknownGenerator { .. })) => {
                return Err(err)
            }
            Err(_) => {}
        }
    }
    p.pos = start;
    let w = p.word()?;
    p.finish()?;
    Ok(Parsed::Word(w))
}

pub fn parse_expr(text: &str) -> Result<BracketExpr, ParseError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_word(text: &str) -> Result<Word, ParseError> {
    let mut p = Parser::new(text);
    let w = p.word()?;
    p.finish()?;
    Ok(w)
}

pub fn parse_generator(text: &str) -> Result<Generator, ParseError> {
    let mut p = Parser::new(text);
    let g = p.generator()?;
    p.finish()?;
    Ok(g)
}

pub fn serialize_expr(e: &BracketExpr) -> String {
    e.to_string()
}

/// True when the text names any generator with an explicit side, like `xB2`.
pub fn has_sided_generators(text: &str) -> bool {
    let bytes = text.as_bytes();
    bytes
        .windows(2)
        .enumerate()
        .any(|(i, w)| w[0] == b'x' && (w[1] == b'A' || w[1] == b'B') && (i == 0 || !bytes[i - 1].is_ascii_alphanumeric()))
}

const MAX_EXPONENT: u64 = 1 << 20;

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser { chars: src.chars().collect(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { position: self.pos, message: message.into() }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(match self.peek() {
                Some(found) => format!("expected `{c}`, found `{found}`"),
                None => format!("expected `{c}`, found end of input"),
            }))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.syntax(format!("unexpected `{c}`"))),
        }
    }

    fn generator(&mut self) -> Result<Generator, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => return Err(self.syntax(format!("expected generator, found `{c}`"))),
            None => return Err(self.syntax("expected generator, found end of input")),
        }
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        let token: String = self.chars[start..self.pos].iter().collect();
        resolve_generator(&token).ok_or(ParseError::UnknownGenerator { position: start, token })
    }

    fn expr(&mut self) -> Result<BracketExpr, ParseError> {
        self.expr_at(0)
    }

    fn expr_at(&mut self, depth: usize) -> Result<BracketExpr, ParseError> {
        self.skip_ws();
        let e = if self.peek() == Some('[') {
            self.bracket_at(depth)?
        } else {
            BracketExpr::leaf(self.generator()?)
        };
        self.skip_ws();
        match self.peek() {
            Some('^') if depth > 0 => Err(ParseError::PowerInBracket { position: self.pos }),
            _ => Ok(e),
        }
    }

    fn bracket_at(&mut self, depth: usize) -> Result<BracketExpr, ParseError> {
        self.expect('[')?;
        let left = self.expr_at(depth + 1)?;
        self.expect(',')?;
        let right = self.expr_at(depth + 1)?;
        self.expect(']')?;
        Ok(BracketExpr::node(left, right))
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = self.term()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                w = w.multiply(&self.term()?);
            } else {
                return Ok(w);
            }
        }
    }

    fn term(&mut self) -> Result<Word, ParseError> {
        self.skip_ws();
        let base = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                w
            }
            Some('[') => self.bracket_at(0)?.flatten(),
            Some('1') => {
                self.pos += 1;
                Word::identity()
            }
            _ => Word::generator(self.generator()?),
        };
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            let exponent = self.integer()?;
            Ok(base.pow(exponent))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse::<i64>() {
            Ok(n) if n.unsigned_abs() <= MAX_EXPONENT => Ok(n),
            Ok(_) => Err(ParseError::Syntax {
                position: start,
                message: format!("exponent magnitude exceeds {MAX_EXPONENT}"),
            }),
            Err(_) => Err(ParseError::Syntax {
                position: start,
                message: "expected signed integer exponent".into(),
            }),
        }
    }
}

fn resolve_generator(token: &str) -> Option<Generator> {
    let rest = token.strip_prefix('x')?;
    let (side, digits) = match rest.as_bytes().first()? {
        b'A' => (Side::A, &rest[1..]),
        b'B' => (Side::B, &rest[1..]),
        _ => (Side::A, rest),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return None;
    }
    Generator::try_new(side, digits.parse().ok()?)
}
