//! Text form of polynomials.
//!
//! ```text
//! poly  := ['+'|'-'] term (('+'|'-') term)*
//! term  := coeff ('*' var)* | var ('*' var)*
//! var   := 'x' digit ['^' exponent]
//! ```
//!
//! Whitespace is ignored and coefficients are reduced mod p. The canonical
//! printer lists terms in decreasing monomial order with coefficients in
//! `[1, p - 1]`, omitting a coefficient of 1 in front of variables.

use std::fmt;

use super::{GradedRing, Monomial, Polynomial};
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Self {
            chars,
            pos: 0,
            text,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.text.len(), |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.offset();
        let mut value: u64 = 0;
        let mut seen = false;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(c as u64 - '0' as u64))
                .ok_or(Error::Syntax {
                    position: start,
                    message: "number too large".into(),
                })?;
            self.bump();
            seen = true;
        }
        if !seen {
            return self.error("expected a number");
        }
        Ok(value)
    }
}

pub fn parse(ring: &GradedRing, text: &str) -> Result<Polynomial> {
    let field = ring.field();
    let nvars = ring.nvars();
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return cur.error("empty polynomial");
    }
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    let mut degree: Option<u32> = None;
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            Some('+') => {
                cur.bump();
            }
            Some('-') => {
                cur.bump();
                negative = true;
            }
            Some(_) if first => {}
            Some(c) => return cur.error(format!("expected '+' or '-', found '{c}'")),
            None => break,
        }
        first = false;

        let mut coeff = 1u32;
        let mut exps = vec![0u32; nvars];
        let mut expect_var = true;
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            coeff = field.reduce_u64(cur.number()?);
            expect_var = false;
        }
        loop {
            if !expect_var {
                if cur.peek() != Some('*') {
                    break;
                }
                cur.bump();
            }
            expect_var = false;
            if cur.peek() != Some('x') {
                return cur.error("expected a variable");
            }
            cur.bump();
            let at = cur.offset();
            let idx = match cur.bump() {
                Some(c) if c.is_ascii_digit() => c as usize - '0' as usize,
                _ => {
                    return Err(Error::Syntax {
                        position: at,
                        message: "expected a variable index digit".into(),
                    })
                }
            };
            if idx >= nvars {
                return Err(Error::Syntax {
                    position: at,
                    message: format!("variable x{idx} outside x0..x{}", nvars - 1),
                });
            }
            let mut e = 1;
            if cur.peek() == Some('^') {
                cur.bump();
                e = u32::try_from(cur.number()?).map_err(|_| Error::Syntax {
                    position: at,
                    message: "exponent too large".into(),
                })?;
            }
            exps[idx] += e;
        }
        let m = Monomial::new(exps);
        let d = m.degree();
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => return Err(Error::MixedDegrees(d0, d)),
            _ => {}
        }
        terms.push((m, if negative { field.neg(coeff) } else { coeff }));
    }
    let degree = degree.expect("at least one term parsed");
    ring.check_degree(degree)?;
    Polynomial::from_terms(*ring, degree, terms)
}

pub(super) fn write_canonical(p: &Polynomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (m, c)) in p.terms().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        let mut factors: Vec<String> = Vec::new();
        if c != 1 || m.degree() == 0 {
            factors.push(c.to_string());
        }
        for (v, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{v}")),
                _ => factors.push(format!("x{v}^{e}")),
            }
        }
        f.write_str(&factors.join("*"))?;
    }
    Ok(())
}
