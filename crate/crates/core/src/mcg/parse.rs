//! Word syntax: `a`, `b`, `a^-1`, `a^5`, `(w)^n` (power), `(w)^u`
//! (conjugation `u·w·u⁻¹`, where `u` is a twist with optional exponent or a
//! parenthesized word). Top-level items are the fiber segments.

use alloc::vec::Vec;
use core::fmt;

use super::{Factorization, MonodromyWord, Twist};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyParseError {
    pub column: usize,
    pub message: &'static str,
}

impl fmt::Display for MonodromyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl core::error::Error for MonodromyParseError {}

struct P {
    chars: Vec<char>,
    pos: usize,
}

impl P {
    fn err(&self, message: &'static str) -> MonodromyParseError {
        MonodromyParseError {
            column: self.pos + 1,
            message,
        }
    }

    fn peek(&mut self) -> Option<char> {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<i64, MonodromyParseError> {
        self.peek();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.err("expected integer"));
        }
        let s: alloc::string::String = self.chars[start..self.pos].iter().collect();
        match s.parse::<i64>() {
            Ok(v) if v.unsigned_abs() <= 1_000_000 => Ok(v),
            _ => {
                self.pos = start;
                Err(self.err("exponent out of range"))
            }
        }
    }

    fn letter(&mut self) -> Option<Twist> {
        match self.peek() {
            Some('a') => {
                self.pos += 1;
                Some(Twist::A)
            }
            Some('b') => {
                self.pos += 1;
                Some(Twist::B)
            }
            _ => None,
        }
    }

    fn group(&mut self) -> Result<MonodromyWord, MonodromyParseError> {
        // caller consumed '('
        let items = self.items()?;
        if self.peek() != Some(')') {
            return Err(self.err("expected `)`"));
        }
        self.pos += 1;
        Ok(MonodromyWord::product(&items))
    }

    fn item(&mut self) -> Result<MonodromyWord, MonodromyParseError> {
        if let Some(t) = self.letter() {
            let e = if self.peek() == Some('^') {
                self.pos += 1;
                self.int()?
            } else {
                1
            };
            if e == 0 {
                return Err(self.err("zero exponent"));
            }
            return Ok(MonodromyWord::twist(t, e));
        }
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.group()?;
                if self.peek() != Some('^') {
                    return Ok(w);
                }
                self.pos += 1;
                match self.peek() {
                    Some(c) if c.is_ascii_digit() || c == '-' || c == '+' => Ok(w.pow(self.int()?)),
                    Some('(') => {
                        self.pos += 1;
                        let u = self.group()?;
                        Ok(w.conjugate(&u))
                    }
                    _ => match self.letter() {
                        Some(t) => {
                            let e = if self.peek() == Some('^') {
                                self.pos += 1;
                                self.int()?
                            } else {
                                1
                            };
                            Ok(w.conjugate(&MonodromyWord::twist(t, e)))
                        }
                        None => Err(self.err("expected exponent or conjugating word")),
                    },
                }
            }
            Some(_) => Err(self.err("expected `a`, `b` or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn items(&mut self) -> Result<Vec<MonodromyWord>, MonodromyParseError> {
        let mut out = Vec::new();
        while matches!(self.peek(), Some('a') | Some('b') | Some('(')) {
            out.push(self.item()?);
        }
        Ok(out)
    }
}

/// Parses a word; each top-level item becomes one segment.
pub fn parse_factorization(text: &str) -> Result<Factorization, MonodromyParseError> {
    let mut p = P {
        chars: text.chars().collect(),
        pos: 0,
    };
    let items = p.items()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected character"));
    }
    Ok(Factorization::new(items))
}

pub fn parse_monodromy(text: &str) -> Result<MonodromyWord, MonodromyParseError> {
    parse_factorization(text).map(|f| f.word())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcg::{i5_lemma_factorization, is_identity_factorization};

    #[test]
    fn powers_and_conjugates() {
        let w = parse_monodromy("(a b)^6").unwrap();
        assert_eq!(w.twist_count(), 12);
        assert!(is_identity_factorization(&w).unwrap());

        let f = parse_factorization("a b (b)^a a^5 (b)^(a^-1) b (a)^b^-1 b").unwrap();
        assert_eq!(f, i5_lemma_factorization());

        let c = parse_monodromy("(a^5)^(a b)").unwrap();
        assert_eq!(c, MonodromyWord::a(5).conjugate(&MonodromyWord::from_positive("ab").unwrap()));
    }

    #[test]
    fn errors() {
        assert_eq!(parse_monodromy("a c").unwrap_err().column, 3);
        assert!(parse_monodromy("(a b").is_err());
        assert!(parse_monodromy("a^").is_err());
        assert!(parse_monodromy("a^0").is_err());
        assert!(parse_monodromy("").unwrap().is_empty());
    }
}
