//! Ring and ideal spec parsing.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! ring  := atom (" x " atom)*
//! atom  := "Z/" int | "Z/" int "[x]/(" poly ")" | "UT" int "(" ring ")" | "M" int "(" ring ")"
//! poly  := term ("+" term)*            ascending powers, e.g. 1+x^2
//! ideal := "(" name ("," name)* ")"    names per the ring's element naming
//! ```
//!
//! `render(parse(text))` yields the canonical text form.

use std::sync::Arc;

use thiserror::Error;

use glcomm_core::{ideal_generate, IdealSet, RingSpec, RingTable};

#[derive(Debug, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        position,
        message: message.into(),
    })
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, expected: &str) -> bool {
        if self.bytes[self.pos..].starts_with(expected.as_bytes()) {
            self.pos += expected.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, expected: &str) -> Result<(), ParseError> {
        if self.eat(expected) {
            Ok(())
        } else {
            err(self.pos, format!("expected {expected:?}"))
        }
    }

    fn parse_int(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return err(start, "expected an integer");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse().map_err(|_| ParseError {
            position: start,
            message: "integer out of range".into(),
        })
    }
}

/// Parses a ring spec, e.g. `Z/8`, `Z/2[x]/(x^3)`, `UT2(Z/2)`,
/// `Z/2 x Z/4`, `M2(Z/2)`.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec, ParseError> {
    if text.trim().is_empty() {
        return err(0, "empty ring spec");
    }
    let mut c = Cursor::new(text);
    let spec = parse_ring(&mut c)?;
    c.skip_ws();
    if c.pos != c.bytes.len() {
        return err(c.pos, "trailing input after ring spec");
    }
    Ok(spec)
}

fn parse_ring(c: &mut Cursor) -> Result<RingSpec, ParseError> {
    let mut factors = vec![parse_atom(c)?];
    loop {
        let save = c.pos;
        c.skip_ws();
        if c.peek() == Some(b'x') {
            c.pos += 1;
            c.skip_ws();
            factors.push(parse_atom(c)?);
        } else {
            c.pos = save;
            break;
        }
    }
    if factors.len() == 1 {
        Ok(factors.pop().unwrap())
    } else {
        Ok(RingSpec::product(factors))
    }
}

fn parse_atom(c: &mut Cursor) -> Result<RingSpec, ParseError> {
    c.skip_ws();
    let start = c.pos;
    if c.eat("Z/") {
        let int_pos = c.pos;
        let m = c.parse_int()?;
        if m < 2 {
            return err(
                int_pos,
                format!("modulus must be >= 2, got {m} (the zero ring is rejected)"),
            );
        }
        c.skip_ws();
        if c.peek() == Some(b'[') {
            c.expect("[x]/(")?;
            let poly_pos = c.pos;
            let modulus = parse_poly(c)?;
            c.expect(")")?;
            if modulus.len() < 2 {
                return err(poly_pos, "modulus polynomial must have degree >= 1");
            }
            if modulus.last().map(|&l| l % m) != Some(1) {
                return err(poly_pos, "modulus polynomial must be monic");
            }
            let spec = RingSpec::PolyQuotient { p: m, modulus };
            if spec.validate().is_err() {
                return err(int_pos, format!("coefficient modulus {m} must be prime"));
            }
            Ok(spec)
        } else {
            Ok(RingSpec::Modular(m))
        }
    } else if c.eat("UT") {
        let k_pos = c.pos;
        let k = c.parse_int()? as usize;
        if k < 2 {
            return err(k_pos, "matrix ring size must be >= 2");
        }
        c.skip_ws();
        c.expect("(")?;
        let base = parse_ring(c)?;
        c.skip_ws();
        c.expect(")")?;
        Ok(RingSpec::Triangular {
            k,
            base: Box::new(base),
        })
    } else if c.peek() == Some(b'M') && c.bytes.get(c.pos + 1).is_some_and(|b| b.is_ascii_digit())
    {
        c.pos += 1;
        let k_pos = c.pos;
        let k = c.parse_int()? as usize;
        if k < 2 {
            return err(k_pos, "matrix ring size must be >= 2");
        }
        c.skip_ws();
        c.expect("(")?;
        let base = parse_ring(c)?;
        c.skip_ws();
        c.expect(")")?;
        Ok(RingSpec::FullMatrix {
            k,
            base: Box::new(base),
        })
    } else {
        err(start, "expected a ring spec (Z/m, Z/p[x]/(f), UTk(R), or Mk(R))")
    }
}

/// Ascending-power coefficient vector of a polynomial like `1+x+2x^3`.
fn parse_poly(c: &mut Cursor) -> Result<Vec<u64>, ParseError> {
    let mut coeffs: Vec<u64> = Vec::new();
    loop {
        c.skip_ws();
        let term_pos = c.pos;
        let coeff = if c.peek().is_some_and(|b| b.is_ascii_digit()) {
            c.parse_int()?
        } else {
            1
        };
        let power = if c.peek() == Some(b'x') {
            c.pos += 1;
            if c.peek() == Some(b'^') {
                c.pos += 1;
                c.parse_int()? as usize
            } else {
                1
            }
        } else {
            if c.pos == term_pos {
                return err(term_pos, "expected a polynomial term");
            }
            0
        };
        if power > 16 {
            return err(term_pos, "polynomial degree too large");
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, 0);
        }
        coeffs[power] += coeff;
        c.skip_ws();
        if c.peek() == Some(b'+') {
            c.pos += 1;
        } else {
            break;
        }
    }
    Ok(coeffs)
}

/// Parses one ideal spec `(g1,g2,...)` over `ring`. `(0)` is the zero
/// ideal and `(1)` the unit ideal; element names follow the ring's
/// canonical naming plus the registered aliases (`Eij` for matrix rings,
/// `x` for polynomial quotients).
pub fn parse_ideal_spec(text: &str, ring: &Arc<RingTable>) -> Result<IdealSet, ParseError> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    if !trimmed.starts_with('(') || !trimmed.ends_with(')') {
        return err(offset, "ideal spec must be parenthesized, e.g. (2)");
    }
    let inner = &trimmed[1..trimmed.len() - 1];
    let mut gens = Vec::new();
    for (pos, name) in split_top_level(inner) {
        let name = name.trim();
        if name.is_empty() {
            return err(offset + 1 + pos, "empty generator name");
        }
        match ring.element_by_name(name) {
            Some(idx) => gens.push(idx),
            None => {
                return err(
                    offset + 1 + pos,
                    format!("unknown element name {:?} in {}", name, ring.fingerprint()),
                )
            }
        }
    }
    if gens.is_empty() {
        return err(offset, "ideal spec needs at least one generator");
    }
    ideal_generate(ring, &gens).map_err(|e| ParseError {
        position: offset,
        message: e.to_string(),
    })
}

/// Parses a comma-separated list of ideal specs, e.g. `(2),(2),(4)`.
pub fn parse_ideal_list(text: &str, ring: &Arc<RingTable>) -> Result<Vec<IdealSet>, ParseError> {
    let mut out = Vec::new();
    for (pos, part) in split_top_level(text) {
        if part.trim().is_empty() {
            return err(pos, "empty ideal spec in list");
        }
        let ideal = parse_ideal_spec(part, ring).map_err(|e| ParseError {
            position: pos + e.position,
            message: e.message,
        })?;
        out.push(ideal);
    }
    if out.is_empty() {
        return err(0, "at least one ideal spec required");
    }
    Ok(out)
}

/// Splits on commas that are outside any parentheses or brackets,
/// returning byte offsets with the pieces. Element names such as
/// `(0,1)` or `[0,1;0,0]` stay intact.
fn split_top_level(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if start < text.len() || !text.is_empty() {
        out.push((start, &text[start..]));
    }
    out
}
