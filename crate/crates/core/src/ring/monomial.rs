use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Monomial order on the underlying polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "grevlex" => Some(MonomialOrder::Grevlex),
            "lex" => Some(MonomialOrder::Lex),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

/// Exponent vector of a monomial. All variables have degree one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> i32 {
        self.exps.iter().map(|&e| e as i32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit `i` set iff variable `i` occurs. Used as a quick divisibility filter.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
    }

    pub fn cmp_with(&self, other: &Monomial, order: MonomialOrder) -> Ordering {
        mono_compare(self, other, order)
    }
}

/// Compares two monomials of the same ring.
///
/// Grevlex: total degree first, then the monomial with the smaller exponent in
/// the last differing variable is larger. Lex: first differing variable decides.
pub fn mono_compare(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Ordering {
    match order {
        MonomialOrder::Lex => {
            for (x, y) in a.exps.iter().zip(&b.exps) {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        }
        MonomialOrder::Grevlex => {
            match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {}
                o => return o,
            }
            for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                match x.cmp(y) {
                    Ordering::Equal => continue,
                    o => return o.reverse(),
                }
            }
            Ordering::Equal
        }
    }
}

/// All monomials of total degree `d` in `n` variables, in descending lex order.
pub fn monomials_of_degree(n: usize, d: i32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d < 0 || n == 0 {
        if d == 0 {
            out.push(Monomial::one(n));
        }
        return out;
    }
    let mut cur = vec![0u16; n];
    fn rec(i: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i == n - 1 {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d as u16, &mut cur, &mut out);
    out
}
