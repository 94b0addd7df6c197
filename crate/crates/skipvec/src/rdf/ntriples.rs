use std::io::BufRead;

use super::graph::Graph;
use super::term::{Term, Triple};

/// N-Triples parse failure, carrying the 1-based line number and the
/// offending text.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {reason}: {text}")]
    Malformed {
        line: usize,
        reason: String,
        text: String,
    },
    #[error("line {line}: literal cannot be a subject: {text}")]
    LiteralSubject { line: usize, text: String },
    #[error("I/O error while reading input: {0}")]
    Io(#[from] std::io::Error),
}

/// Parses line-oriented N-Triples. Comment lines start with `#`, blank
/// lines are allowed, duplicate triples collapse, and equal terms share one
/// interned identity in the resulting graph.
pub fn parse_ntriples<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut triples = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if let Some(triple) = parse_line(&line, idx + 1)? {
            triples.push(triple);
        }
    }
    Ok(Graph::from_triples(triples))
}

pub fn parse_ntriples_str(text: &str) -> Result<Graph, ParseError> {
    parse_ntriples(text.as_bytes())
}

fn malformed(line: usize, reason: &str, text: &str) -> ParseError {
    ParseError::Malformed {
        line,
        reason: reason.to_string(),
        text: text.to_string(),
    }
}

fn parse_line(line: &str, lineno: usize) -> Result<Option<Triple>, ParseError> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let mut cursor = Cursor::new(trimmed);

    let s = cursor
        .term()
        .map_err(|r| malformed(lineno, &r, trimmed))?
        .ok_or_else(|| malformed(lineno, "missing subject", trimmed))?;
    if s.is_literal() {
        return Err(ParseError::LiteralSubject {
            line: lineno,
            text: trimmed.to_string(),
        });
    }
    let p = cursor
        .term()
        .map_err(|r| malformed(lineno, &r, trimmed))?
        .ok_or_else(|| malformed(lineno, "missing predicate", trimmed))?;
    let o = cursor
        .term()
        .map_err(|r| malformed(lineno, &r, trimmed))?
        .ok_or_else(|| malformed(lineno, "missing object", trimmed))?;

    cursor.skip_ws();
    if !cursor.eat('.') {
        return Err(malformed(lineno, "expected terminating '.'", trimmed));
    }
    cursor.skip_ws();
    if !(cursor.at_end() || cursor.peek() == Some('#')) {
        return Err(malformed(lineno, "trailing content after '.'", trimmed));
    }

    let triple = Triple::new(s, p, o).map_err(|e| malformed(lineno, &e.to_string(), trimmed))?;
    Ok(Some(triple))
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(text: &str) -> Cursor {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn take_until(&mut self, stop: char) -> Option<String> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == stop {
                let s: String = self.chars[start..self.pos].iter().collect();
                self.pos += 1;
                return Some(s);
            }
            self.pos += 1;
        }
        None
    }

    /// Next term token, or `None` at end of line. Errors carry a short
    /// reason string.
    fn term(&mut self) -> Result<Option<Term>, String> {
        self.skip_ws();
        match self.peek() {
            None => Ok(None),
            Some('<') => {
                self.pos += 1;
                let iri = self.take_until('>').ok_or("unterminated IRI")?;
                if iri.is_empty() {
                    return Err("empty IRI".to_string());
                }
                Ok(Some(Term::iri(iri)))
            }
            Some('_') => {
                self.pos += 1;
                if !self.eat(':') {
                    return Err("expected ':' after '_' in blank node".to_string());
                }
                let start = self.pos;
                while matches!(self.peek(), Some(c) if !c.is_whitespace() && c != '.') {
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err("empty blank node label".to_string());
                }
                let label: String = self.chars[start..self.pos].iter().collect();
                Ok(Some(Term::blank(label)))
            }
            Some('"') => {
                let start = self.pos;
                self.pos += 1;
                loop {
                    match self.peek() {
                        None => return Err("unterminated literal".to_string()),
                        Some('\\') => self.pos += 2,
                        Some('"') => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => self.pos += 1,
                    }
                }
                // Optional datatype or language tag, kept verbatim.
                if self.peek() == Some('^') {
                    self.pos += 1;
                    if !self.eat('^') || !self.eat('<') {
                        return Err("malformed datatype suffix".to_string());
                    }
                    self.take_until('>').ok_or("unterminated datatype IRI")?;
                } else if self.peek() == Some('@') {
                    self.pos += 1;
                    let tag_start = self.pos;
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                        self.pos += 1;
                    }
                    if self.pos == tag_start {
                        return Err("empty language tag".to_string());
                    }
                }
                let token: String = self.chars[start..self.pos].iter().collect();
                Ok(Some(Term::literal(token)))
            }
            Some(c) => Err(format!("unexpected character '{c}'")),
        }
    }
}
