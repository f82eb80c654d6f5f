use std::cmp::Ordering;
use std::fmt;

use super::{mono_compare, Coeff, Monomial, PolyRing};

/// A polynomial as a list of `(monomial, coefficient)` pairs, sorted
/// strictly descending in the ring's monomial order, with no zero
/// coefficients. The ring is passed to every operation rather than stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(ring: &PolyRing, c: Coeff) -> Self {
        let c = c % ring.field().modulus();
        if c == 0 {
            return Self::zero();
        }
        Polynomial {
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Polynomial { terms: vec![(m, c)] }
    }

    /// Builds a normalized polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &PolyRing, mut terms: Vec<(Monomial, Coeff)>) -> Self {
        let order = ring.order();
        let field = ring.field();
        terms.sort_by(|a, b| mono_compare(&b.0, &a.0, order));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % field.modulus();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = field.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { terms: out }
    }

    /// Trusts that `terms` is already sorted and free of zeros.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, Coeff)>) -> Self {
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Coeff)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.first()
    }

    /// Nonzero constant polynomial.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// `Some(d)` iff the polynomial is nonzero and all terms have degree `d`.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn neg(&self, ring: &PolyRing) -> Polynomial {
        let f = ring.field();
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, ring: &PolyRing, c: Coeff) -> Polynomial {
        if c == 0 {
            return Self::zero();
        }
        let f = ring.field();
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn mul_term(&self, ring: &PolyRing, m: &Monomial, c: Coeff) -> Polynomial {
        if c == 0 {
            return Self::zero();
        }
        let f = ring.field();
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), f.mul(*a, c)))
                .collect(),
        }
    }

    pub fn add(&self, ring: &PolyRing, other: &Polynomial) -> Polynomial {
        let order = ring.order();
        let f = ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match mono_compare(&a.0, &b.0, order) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a.1, b.1);
                    if c != 0 {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn sub(&self, ring: &PolyRing, other: &Polynomial) -> Polynomial {
        self.add(ring, &other.neg(ring))
    }

    pub fn mul(&self, ring: &PolyRing, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc = Polynomial::zero();
        for (m, c) in &other.terms {
            acc = acc.add(ring, &self.mul_term(ring, m, *c));
        }
        acc
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self, ring: &PolyRing) -> Polynomial {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) => self.scale(ring, ring.field().inv(*c)),
        }
    }

    /// Coefficient of the constant term.
    pub fn constant_coeff(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }
}

pub(super) struct Display<'a> {
    pub ring: &'a PolyRing,
    pub poly: &'a Polynomial,
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let s = field.to_signed(*c);
            let (neg, mag) = (s < 0, s.unsigned_abs());
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{mag}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}
