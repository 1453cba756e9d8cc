//! Text grammar for multisegments and shared CLI plumbing.
//!
//! Grammar: `msgm := term ("+" term)*`, `term := [uint "*"] "[" int "," int "]"`,
//! whitespace ignored. `0` denotes the empty multisegment. All integers are
//! bound-checked to `|value| <= 10^6`.

use crate::multisegment::Multisegment;
use crate::segment::Segment;
use thiserror::Error;

pub const VALUE_BOUND: i64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("parse error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("range error at position {pos}: {msg}")]
    Range { pos: usize, msg: String },
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input: input.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.syntax(format!("expected '{}'", c as char))),
        }
    }

    fn syntax(&self, msg: String) -> ParseError {
        ParseError::Syntax { pos: self.pos, msg }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let negative = if self.input.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let digits_start = self.pos;
        while self
            .input
            .get(self.pos)
            .is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(ParseError::Syntax {
                pos: start,
                msg: "expected integer".to_string(),
            });
        }
        let text = std::str::from_utf8(&self.input[digits_start..self.pos]).unwrap();
        let value: i64 = text.parse().map_err(|_| ParseError::Range {
            pos: start,
            msg: "integer out of range".to_string(),
        })?;
        let value = if negative { -value } else { value };
        if value.abs() > VALUE_BOUND {
            return Err(ParseError::Range {
                pos: start,
                msg: format!("|{value}| exceeds bound {VALUE_BOUND}"),
            });
        }
        Ok(value)
    }

    fn term(&mut self) -> Result<(Segment, u32), ParseError> {
        let start = self.pos;
        let mut mult: u32 = 1;
        // optional "uint *" prefix
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let v = self.integer()?;
            if v < 1 {
                return Err(ParseError::Range {
                    pos: start,
                    msg: "multiplicity must be positive".to_string(),
                });
            }
            mult = v as u32;
            self.expect(b'*')?;
        }
        self.expect(b'[')?;
        let begin_pos = self.pos;
        let begin = self.integer()?;
        self.expect(b',')?;
        let end = self.integer()?;
        self.expect(b']')?;
        let seg = Segment::new(begin as i32, end as i32).map_err(|_| ParseError::Range {
            pos: begin_pos,
            msg: format!("begin {begin} exceeds end {end}"),
        })?;
        Ok((seg, mult))
    }

    fn multisegment(&mut self) -> Result<Multisegment, ParseError> {
        // "0" denotes the empty multisegment
        if self.peek() == Some(b'0') {
            let save = self.pos;
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(Multisegment::new());
            }
            self.pos = save;
        }
        let mut m = Multisegment::new();
        let (seg, mult) = self.term()?;
        m.insert(seg, mult);
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let (seg, mult) = self.term()?;
            m.insert(seg, mult);
        }
        if self.peek().is_some() {
            return Err(self.syntax("unexpected trailing input".to_string()));
        }
        Ok(m)
    }
}

pub fn parse_multisegment(text: &str) -> Result<Multisegment, ParseError> {
    Parser::new(text).multisegment()
}
