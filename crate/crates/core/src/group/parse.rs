//! Text syntax for presentations and words.
//!
//! ```text
//! presentation := '<' names? '|' relations? '>'
//! relations    := relation (',' relation)*
//! relation     := word ('=' word)?
//! word         := atom*
//! atom         := primary ('^' int)?
//! primary      := name | '1' | '(' word ')' | '[' word ',' word ']'
//! ```
//!
//! `u = v` is read as the relator `u v⁻¹`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::presentation::{GroupPresentation, PresentationError};
use super::word::Word;
use super::{MAX_EXPONENT, MAX_WORD_LEN};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Expected(&'static str),
    UnexpectedEnd,
    UnknownGenerator(String),
    ExponentOverflow,
    Presentation(PresentationError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::UnknownGenerator(n) => write!(f, "unknown generator `{n}`"),
            ParseErrorKind::ExponentOverflow => f.write_str("exponent out of range"),
            ParseErrorKind::Presentation(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: Vec<String>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src,
            pos: 0,
            names: Vec::new(),
        }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        (line, column)
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let (line, column) = self.location(pos);
        ParseError { kind, line, column }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        self.error_at(self.pos, kind)
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else if self.peek().is_none() {
            Err(self.error(ParseErrorKind::UnexpectedEnd))
        } else {
            Err(self.error(ParseErrorKind::Expected(what)))
        }
    }

    fn name(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let mut end = 0;
        for (i, c) in rest.char_indices() {
            let ok = if i == 0 {
                c.is_ascii_alphabetic() || c == '_'
            } else {
                c.is_ascii_alphanumeric() || c == '_'
            };
            if !ok {
                break;
            }
            end = i + c.len_utf8();
        }
        if end == 0 {
            return None;
        }
        self.pos += end;
        Some((start, &rest[..end]))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut i = self.pos;
        if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
            i += 1;
        }
        let digits_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == digits_start {
            return Err(self.error(ParseErrorKind::Expected("integer exponent")));
        }
        self.pos = i;
        match self.src[start..i].parse::<i32>() {
            Ok(v) if i64::from(v).abs() <= MAX_EXPONENT => Ok(i64::from(v)),
            _ => Err(self.error_at(start, ParseErrorKind::ExponentOverflow)),
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut acc = Word::identity();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '1' || c == '(' || c == '[' => {
                    let start = self.pos;
                    let atom = self.atom()?;
                    if acc.len() + atom.len() > MAX_WORD_LEN {
                        return Err(self.error_at(start, ParseErrorKind::ExponentOverflow));
                    }
                    acc = acc.mul(&atom);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<Word, ParseError> {
        let start = self.pos;
        let base = self.primary()?;
        if self.eat('^') {
            let e = self.int()?;
            if (base.len() as u64).saturating_mul(e.unsigned_abs()) > MAX_WORD_LEN as u64 {
                return Err(self.error_at(start, ParseErrorKind::ExponentOverflow));
            }
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity())
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')', "`)`")?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',', "`,` inside commutator")?;
                let v = self.word()?;
                self.expect(']', "`]`")?;
                Ok(Word::commutator(&u, &v))
            }
            Some(_) => {
                let (at, name) = self
                    .name()
                    .ok_or_else(|| self.error(ParseErrorKind::Expected("generator")))?;
                match self.names.iter().position(|g| g == name) {
                    Some(i) => Ok(Word::generator(i)),
                    None => Err(self.error_at(at, ParseErrorKind::UnknownGenerator(name.to_string()))),
                }
            }
            None => Err(self.error(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn relation(&mut self) -> Result<Word, ParseError> {
        let lhs = self.word()?;
        if self.eat('=') {
            let rhs = self.word()?;
            Ok(lhs.mul(&rhs.inverse()))
        } else {
            Ok(lhs)
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error(ParseErrorKind::Expected("end of input"))),
        }
    }

    fn presentation(&mut self) -> Result<GroupPresentation, ParseError> {
        self.expect('<', "`<`")?;
        let names_start = self.pos;
        if self.peek() != Some('|') {
            loop {
                let (_, n) = self
                    .name()
                    .ok_or_else(|| self.error(ParseErrorKind::Expected("generator name")))?;
                self.names.push(n.to_string());
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect('|', "`|` or `,`")?;
        let mut relators = Vec::new();
        if self.peek() != Some('>') {
            loop {
                relators.push(self.relation()?);
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect('>', "`>` or `,`")?;
        self.finish()?;
        GroupPresentation::new(self.names.clone(), relators)
            .map_err(|e| self.error_at(names_start, ParseErrorKind::Presentation(e)))
    }
}

/// Parses `<g1, g2 | w1, w2>`.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation, ParseError> {
    Parser::new(text).presentation()
}

/// Parses a single word over the given generator names.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word, ParseError> {
    let mut p = Parser::new(text);
    p.names = generators.to_vec();
    let w = p.relation()?;
    p.finish()?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Letter;

    #[test]
    fn spec_examples() {
        let p = parse_presentation("<x | x^5>").unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators(), &[Word::power_of(0, 5)]);

        let p = parse_presentation("<x,y | x^2, y^3>").unwrap();
        assert_eq!(p.relators(), &[Word::power_of(0, 2), Word::power_of(1, 3)]);

        let p = parse_presentation("<a,b | [a,b]>").unwrap();
        let expected = Word::from_letters([
            Letter::new(0, true),
            Letter::new(1, true),
            Letter::new(0, false),
            Letter::new(1, false),
        ]);
        assert_eq!(p.relators(), &[expected]);
    }

    #[test]
    fn free_and_trivial() {
        let f = parse_presentation("<x, y |>").unwrap();
        assert_eq!(f.relator_count(), 0);
        let t = parse_presentation("< | >").unwrap();
        assert_eq!(t, GroupPresentation::trivial());
        assert_eq!(parse_presentation("<x | 1>").unwrap().relator_count(), 0);
    }

    #[test]
    fn powers_of_groups_and_equations() {
        let p = parse_presentation("<a,b | (a b)^-2, a^2 = b^3>").unwrap();
        assert_eq!(p.format_word(&p.relators()[0]), "b^-1 a^-1 b^-1 a^-1");
        assert_eq!(p.format_word(&p.relators()[1]), "a^2 b^-3");
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_presentation("<x | x^2,\n  y>").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownGenerator("y".into()));
        assert_eq!((e.line, e.column), (2, 3));

        let e = parse_presentation("<x | x^99999999999>").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ExponentOverflow);
        assert_eq!((e.line, e.column), (1, 8));

        let e = parse_presentation("<x | x^>").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Expected("integer exponent"));

        let e = parse_presentation("<x, x | >").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Presentation(_)));

        let e = parse_presentation("<x | x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
    }

    #[test]
    fn printer_round_trip() {
        for text in [
            "<x | x^5>",
            "<a, b | [a,b]>",
            "<a1, b1, c, d | [b1^-1, d^-1] = a1, [a1^-1,d] = b1, [a1,c], [b1,c], [c,d]>",
            "< | >",
            "<t, u_2 | t^-3 u_2 t u_2^2>",
        ] {
            let p = parse_presentation(text).unwrap();
            let printed = p.to_string();
            assert_eq!(parse_presentation(&printed).unwrap(), p, "{printed}");
        }
    }

    #[test]
    fn word_parsing() {
        let names = ["x".to_string(), "y".to_string()];
        let w = parse_word("x y^-1 [x,y]", &names).unwrap();
        assert_eq!(w.len(), 6);
        assert!(parse_word("z", &names).is_err());
    }
}
