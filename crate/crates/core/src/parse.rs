//! Text syntax for rings, monomials, ideals and linear families.
//!
//! ```text
//! monomial := factor ('*' factor)*
//! factor   := var ('^' exponent)?
//! exponent := nonneg-integer | '(' linear ')'
//! linear   := ['+'|'-'] term (('+'|'-') term)*
//! term     := integer ['*'] 'n' | 'n' | integer
//! ```
//!
//! Whitespace is insignificant. Repeated variables accumulate. The symbol `n`
//! is the family parameter and is only accepted in family mode, where it is
//! also reserved as a variable name.

use std::ops::RangeInclusive;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, RingContext};
use crate::stabilization::{LinearExponent, LinearExponentFamily};

const PARAMETER: &str = "n";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Plain,
    Family,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
    mode: Mode,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, base: usize, mode: Mode) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
            base,
            mode,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.base + self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        if s.is_empty() || s.as_bytes()[0].is_ascii_digit() {
            self.pos = start;
            return self.err("expected a variable name");
        }
        Ok(s)
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match digits.parse::<u64>() {
            Ok(v) if v <= u32::MAX as u64 => Ok(v),
            _ => {
                self.pos = start;
                self.err(format!("exponent {digits} exceeds 2^32 - 1"))
            }
        }
    }

    fn linear(&mut self) -> Result<LinearExponent> {
        let mut acc = LinearExponent::constant(0);
        let mut first = true;
        loop {
            let sign = if self.eat(b'-') {
                -1
            } else if self.eat(b'+') || first {
                1
            } else {
                break;
            };
            first = false;
            let at_param = self.peek() == Some(b'n');
            let (coef, has_param) = if at_param {
                (1, true)
            } else {
                let c = self.integer()? as i64;
                self.eat(b'*');
                (c, self.peek() == Some(b'n'))
            };
            if has_param {
                if self.mode == Mode::Plain {
                    return self.err("parameter 'n' is only allowed in family expressions");
                }
                self.pos += 1;
                if matches!(self.src.get(self.pos), Some(c) if c.is_ascii_alphanumeric() || *c == b'_') {
                    return self.err("expected 'n' as the family parameter");
                }
                acc.slope += sign * coef;
            } else {
                acc.offset += sign * coef;
            }
            if !matches!(self.peek(), Some(b'+') | Some(b'-')) {
                break;
            }
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<LinearExponent> {
        if self.eat(b'(') {
            let e = self.linear()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            Ok(e)
        } else if self.peek() == Some(b'n') && self.mode == Mode::Plain {
            self.err("parameter 'n' is only allowed in family expressions")
        } else {
            Ok(LinearExponent::constant(self.integer()? as i64))
        }
    }

    fn monomial(&mut self, ring: &RingContext) -> Result<Vec<LinearExponent>> {
        let mut exps = vec![LinearExponent::constant(0); ring.num_vars()];
        loop {
            let start = self.pos;
            let name = self.ident()?;
            let Some(k) = ring.index_of(name) else {
                self.pos = start;
                self.skip_ws();
                return self.err(format!("unknown variable {name:?}"));
            };
            let e = if self.eat(b'^') {
                self.exponent()?
            } else {
                LinearExponent::constant(1)
            };
            exps[k].slope += e.slope;
            exps[k].offset += e.offset;
            if !self.eat(b'*') {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(exps)
    }
}

fn constant_exponents(exps: Vec<LinearExponent>, base: usize) -> Result<Monomial> {
    exps.into_iter()
        .map(|e| {
            debug_assert_eq!(e.slope, 0);
            u32::try_from(e.offset).map_err(|_| Error::Parse {
                position: base,
                message: format!("exponent {} out of range", e.offset),
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(Monomial::new)
}

/// Parses a monomial such as `x1*x2^2*x1` over `ring`.
pub fn parse_monomial(text: &str, ring: &RingContext) -> Result<Monomial> {
    parse_monomial_at(text, 0, ring)
}

fn parse_monomial_at(text: &str, base: usize, ring: &RingContext) -> Result<Monomial> {
    let exps = Parser::new(text, base, Mode::Plain).monomial(ring)?;
    constant_exponents(exps, base)
}

/// Parses a family generator such as `a^(6n-1)*b` into per-variable linear
/// exponents.
pub fn parse_family_monomial(text: &str, ring: &RingContext) -> Result<Vec<LinearExponent>> {
    Parser::new(text, 0, Mode::Family).monomial(ring)
}

/// Comma-separated variable names.
pub fn parse_ring(text: &str) -> Result<RingContext> {
    let names: Vec<&str> = text.split(',').map(str::trim).collect();
    RingContext::new(&names)
}

/// Splits a comma-separated generator list, keeping each piece's offset.
fn split_generators(text: &str) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        if piece.trim().is_empty() {
            return Err(Error::Parse {
                position: offset,
                message: "empty generator".into(),
            });
        }
        out.push((offset, piece));
        offset += piece.len() + 1;
    }
    Ok(out)
}

/// Parses `--ring` and `--ideal` style inputs into an ideal.
pub fn parse_ideal(ring_text: &str, gens_text: &str) -> Result<MonomialIdeal> {
    let ring = Arc::new(parse_ring(ring_text)?);
    let gens = split_generators(gens_text)?
        .into_iter()
        .map(|(offset, g)| parse_monomial_at(g, offset, &ring))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(ring, gens)
}

/// Parses a family: generators whose exponents may be linear in `n`.
pub fn parse_family(ring_text: &str, gens_text: &str) -> Result<LinearExponentFamily> {
    let ring = Arc::new(parse_ring(ring_text)?);
    if ring.index_of(PARAMETER).is_some() {
        return Err(Error::Argument(
            "'n' is reserved for the family parameter and cannot be a variable".into(),
        ));
    }
    let gens = split_generators(gens_text)?
        .into_iter()
        .map(|(offset, g)| Parser::new(g, offset, Mode::Family).monomial(&ring))
        .collect::<Result<Vec<_>>>()?;
    LinearExponentFamily::new(ring, gens)
}

/// `A..B` (inclusive) or a single `A`.
pub fn parse_n_range(text: &str) -> Result<RangeInclusive<i64>> {
    let bad = |message: &str| Error::Parse {
        position: 0,
        message: format!("{message}: {text:?}"),
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let lo: i64 = lo.trim().parse().map_err(|_| bad("bad range start"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad("bad range end"))?;
    if lo > hi {
        return Err(bad("empty range"));
    }
    Ok(lo..=hi)
}
