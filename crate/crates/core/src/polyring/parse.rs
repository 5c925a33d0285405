//! Text form of polynomials.
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := integer ('*' factor)* | factor ('*' factor)*
//! factor := gen ('^' nat)?
//! gen    := ('c'|'x'|'y') nat
//! ```
//!
//! Whitespace between tokens is ignored. A sign may precede the first term.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Family, Generator, GeneratorContext, GradedPoly, Monomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Gen(Family, u32),
    Plus,
    Minus,
    Star,
    Caret,
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            b'c' | b'x' | b'y' => {
                let family = match b {
                    b'c' => Family::C,
                    b'x' => Family::X,
                    _ => Family::Y,
                };
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if digits == i {
                    return Err(syntax(digits, "expected generator index"));
                }
                let index: u32 = text[digits..i]
                    .parse()
                    .map_err(|_| syntax(digits, "generator index too large"))?;
                out.push((start, Tok::Gen(family, index)));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(syntax(start, format!("unexpected character {ch:?}")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    ctx: &'a Arc<GeneratorContext>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn poly(&mut self) -> Result<GradedPoly> {
        let mut acc = GradedPoly::zero(self.ctx);
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (coeff, mono) = self.term()?;
            let coeff = if negative { -coeff } else { coeff };
            acc.add_term(mono, coeff);
            match self.peek() {
                None => return Ok(acc),
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                Some(_) => return Err(syntax(self.offset(), "expected '+' or '-'")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(BigInt, Monomial)> {
        let mut coeff = BigInt::one();
        let mut factors = Vec::new();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                coeff = n;
            }
            Some(Tok::Gen(..)) => factors.push(self.factor()?),
            _ => return Err(syntax(self.offset(), "expected an integer or a generator")),
        }
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok((coeff, Monomial::from_factors(factors)))
    }

    fn factor(&mut self) -> Result<(Generator, u32)> {
        let offset = self.offset();
        let Some(Tok::Gen(family, index)) = self.peek().cloned() else {
            return Err(syntax(offset, "expected a generator"));
        };
        self.pos += 1;
        let g = Generator { family, index };
        self.ctx.check(g)?;
        let mut exp = 1;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let at = self.offset();
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    exp = u32::try_from(n).map_err(|_| syntax(at, "exponent too large"))?;
                }
                _ => return Err(syntax(at, "expected an exponent")),
            }
        }
        Ok((g, exp))
    }
}

/// Parses `text` into a polynomial over `ctx`.
pub fn parse_poly(text: &str, ctx: &Arc<GeneratorContext>) -> Result<GradedPoly> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        ctx,
    };
    parser.poly()
}

/// Canonical text: terms in term order, explicit ` + ` / ` - ` separators, unit
/// coefficients omitted, `0` for the zero polynomial.
pub fn render_poly(p: &GradedPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = c.abs();
        if m.is_one() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&m.to_string());
        }
    }
    out
}
