//! Text grammar for virtual representations.
//!
//! ```text
//! rep    := term (('+' | '-') term)*
//! term   := INT | INT? gen
//! gen    := 'xi' suffix?
//! suffix := '_p' | '_q' | '^' INT
//! ```
//!
//! Whitespace is ignored, the first term may carry a sign, and `ξ` is
//! accepted as a spelling of `xi`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::RawRep;
use crate::group::GroupPQ;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at position {position}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl fmt::Display) -> Self {
        ParseError {
            position,
            message: message.to_string(),
        }
    }
}

pub(crate) struct Cursor {
    chars: Vec<(usize, char)>,
    idx: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().enumerate().collect(),
            idx: 0,
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self
            .chars
            .get(self.idx)
            .is_some_and(|(_, c)| c.is_whitespace())
        {
            self.idx += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    pub(crate) fn pos(&self) -> usize {
        self.chars
            .get(self.idx)
            .map_or(self.chars.len(), |&(i, _)| i)
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    /// Consumes `word` if the remaining input starts with it (no whitespace inside).
    pub(crate) fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let n = word.chars().count();
        let ok = self.idx + n <= self.chars.len()
            && self.chars[self.idx..self.idx + n]
                .iter()
                .map(|&(_, c)| c)
                .eq(word.chars());
        if ok {
            self.idx += n;
        }
        ok
    }

    pub(crate) fn integer(&mut self) -> Result<Option<i64>, ParseError> {
        self.skip_ws();
        let start = self.idx;
        let pos = self.pos();
        let mut end = self.idx;
        if matches!(self.chars.get(end), Some((_, '+' | '-'))) {
            end += 1;
        }
        let digits_start = end;
        while self.chars.get(end).is_some_and(|(_, c)| c.is_ascii_digit()) {
            end += 1;
        }
        if end == digits_start {
            return Ok(None);
        }
        let s: String = self.chars[start..end].iter().map(|&(_, c)| c).collect();
        self.idx = end;
        s.parse::<i64>()
            .map(Some)
            .map_err(|_| ParseError::new(pos, format!("integer {s} out of range")))
    }

    pub(crate) fn unsigned(&mut self) -> Result<Option<i64>, ParseError> {
        self.skip_ws();
        if self
            .chars
            .get(self.idx)
            .is_some_and(|(_, c)| c.is_ascii_digit())
        {
            self.integer()
        } else {
            Ok(None)
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn unexpected(&mut self, expected: &str) -> ParseError {
        let pos = self.pos();
        match self.peek() {
            Some(c) => ParseError::new(pos, format!("expected {expected}, found '{c}'")),
            None => ParseError::new(pos, format!("expected {expected}, found end of input")),
        }
    }
}

/// Parses a representation, identifying `ξ^j` with `ξ^{pq-j}`.
pub fn parse_rep(text: &str, g: GroupPQ) -> Result<RawRep, ParseError> {
    let order = g.order() as i64;
    let mut cur = Cursor::new(text);
    let mut trivial = 0i64;
    let mut nontrivial: BTreeMap<u64, i64> = BTreeMap::new();
    let mut first = true;
    loop {
        let sign = if first {
            if cur.eat('-') {
                -1
            } else {
                cur.eat('+');
                1
            }
        } else if cur.eat('+') {
            1
        } else if cur.eat('-') {
            -1
        } else if cur.at_end() {
            break;
        } else {
            return Err(cur.unexpected("'+' or '-'"));
        };
        first = false;

        let coeff = cur.unsigned()?;
        if cur.eat_word("xi") || cur.eat_word("ξ") {
            let exp_pos = cur.pos();
            let j = if cur.eat_word("_p") {
                g.p() as i64
            } else if cur.eat_word("_q") {
                g.q() as i64
            } else if cur.eat('^') {
                cur.integer()?
                    .ok_or_else(|| cur.unexpected("an exponent"))?
            } else {
                1
            };
            let mut j = j.rem_euclid(order);
            if j == 0 {
                return Err(ParseError::new(
                    exp_pos,
                    "ξ^0 is the trivial representation; write an integer",
                ));
            }
            if 2 * j > order {
                j = order - j;
            }
            let mult = sign * coeff.unwrap_or(1);
            *nontrivial.entry(j as u64).or_insert(0) += mult;
        } else {
            let Some(c) = coeff else {
                return Err(cur.unexpected("an integer or 'xi'"));
            };
            trivial += sign * c;
        }
    }
    nontrivial.retain(|_, m| *m != 0);
    Ok(RawRep {
        trivial,
        nontrivial,
    })
}
