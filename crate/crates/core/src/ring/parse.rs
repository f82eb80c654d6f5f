use super::{Coeff, Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};

/// Parses `[coeff "*"] var ["^" exp] ("*" var ["^" exp])*` terms joined by
/// `+`/`-`. A bare integer is a constant term. Whitespace is ignored and the
/// Unicode minus sign is accepted for `-`.
pub fn parse_polynomial(text: &str, ring: &PolyRing) -> Result<Polynomial> {
    let toks: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i, if c == '\u{2212}' { '-' } else { c }))
        .collect();
    let mut p = Parser {
        toks,
        pos: 0,
        ring,
        end: text.len(),
    };
    let mut terms = Vec::new();
    let mut sign = 1i64;
    if let Some(c) = p.peek() {
        if c == '-' || c == '+' {
            sign = if c == '-' { -1 } else { 1 };
            p.pos += 1;
        }
    }
    loop {
        let (m, c) = p.term(sign)?;
        terms.push((m, c));
        match p.peek() {
            None => break,
            Some('+') => sign = 1,
            Some('-') => sign = -1,
            Some(c) => return Err(p.err(format!("unexpected '{c}'"))),
        }
        p.pos += 1;
    }
    Ok(Polynomial::from_terms(ring, terms))
}

struct Parser<'a> {
    toks: Vec<(usize, char)>,
    pos: usize,
    ring: &'a PolyRing,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err(&self, message: String) -> Error {
        Error::Syntax {
            position: self.offset(),
            message,
        }
    }

    fn number(&mut self) -> Option<u128> {
        let start = self.pos;
        let mut v: u128 = 0;
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            v = v.saturating_mul(10).saturating_add(c.to_digit(10).unwrap() as u128);
            self.pos += 1;
        }
        (self.pos > start).then_some(v)
    }

    fn term(&mut self, sign: i64) -> Result<(Monomial, Coeff)> {
        let field = self.ring.field();
        let p = field.modulus() as u128;
        let mut coeff: Coeff = 1;
        let mut mono = Monomial::one(self.ring.nvars());
        let mut exps = vec![0u16; self.ring.nvars()];
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = (self.number().unwrap() % p) as Coeff;
                if self.peek() != Some('*') {
                    return Ok((mono, signed(field, coeff, sign)));
                }
                self.pos += 1;
                self.factor(&mut exps)?;
            }
            Some(_) => self.factor(&mut exps)?,
            None => return Err(self.err("expected a term".into())),
        }
        while self.peek() == Some('*') {
            self.pos += 1;
            self.factor(&mut exps)?;
        }
        mono = Monomial::from_exponents(&exps);
        Ok((mono, signed(field, coeff, sign)))
    }

    fn factor(&mut self, exps: &mut [u16]) -> Result<()> {
        let start = self.offset();
        let mut name = String::new();
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            Some(c) => return Err(self.err(format!("expected a variable, found '{c}'"))),
            None => return Err(self.err("expected a variable".into())),
        }
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
            name.push(c);
            self.pos += 1;
        }
        let idx = self
            .ring
            .var_index(&name)
            .ok_or(Error::UnknownVariable {
                name: name.clone(),
                position: start,
            })?;
        let mut e: u128 = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            e = self
                .number()
                .ok_or_else(|| self.err("expected an exponent".into()))?;
        }
        let total = exps[idx] as u128 + e;
        if total > u16::MAX as u128 / 2 {
            return Err(self.err("exponent too large".into()));
        }
        exps[idx] = total as u16;
        Ok(())
    }
}

fn signed(field: super::PrimeField, c: Coeff, sign: i64) -> Coeff {
    if sign < 0 {
        field.neg(c)
    } else {
        c
    }
}
