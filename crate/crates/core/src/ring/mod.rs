//! Coefficient field, monomials and polynomials of a standard-graded
//! polynomial ring over a prime field.

mod field;
mod monomial;
mod parse;
mod polynomial;

use std::fmt;
use std::sync::Arc;

pub use field::{Coeff, PrimeField, DEFAULT_PRIME};
pub use monomial::{mono_compare, monomials_of_degree, Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;

use crate::error::{Error, Result};

/// `F_p[x_1, ..., x_n]` with every variable in degree one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new(p: u32, vars: &[&str], order: MonomialOrder) -> Result<Ring> {
        Self::from_names(p, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn from_names(p: u32, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        let field = PrimeField::new(p)?;
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        if vars.len() > 64 {
            return Err(Error::InvalidRing("at most 64 variables are supported".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!("invalid variable name '{v}'")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable name '{v}'")));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(self, 1)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::from_terms(self, vec![(Monomial::var(self.nvars(), i), 1)])
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, self)
    }

    pub fn display<'a>(&'a self, f: &'a Polynomial) -> impl fmt::Display + 'a {
        polynomial::Display { ring: self, poly: f }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(format!("{}^{}", self.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Human-readable ring description, e.g. `F_32003[x,y,z] grevlex`.
    pub fn describe(&self) -> String {
        format!("{}[{}] {}", self.field, self.vars.join(","), self.order.name())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_validation() {
        assert!(PolyRing::new(32003, &["x", "y"], MonomialOrder::Grevlex).is_ok());
        assert!(PolyRing::new(32003, &[], MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(32003, &["x", "x"], MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(32003, &["1x"], MonomialOrder::Grevlex).is_err());
        assert!(PolyRing::new(32004, &["x"], MonomialOrder::Grevlex).is_err());
    }
}
