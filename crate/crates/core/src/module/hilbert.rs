use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ring::Monomial;

/// Hilbert series `numerator(t) / (1 - t)^n` of a graded module over a
/// polynomial ring in `n` variables. The numerator is a Laurent polynomial
/// stored as sorted `(exponent, coefficient)` pairs with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub nvars: usize,
    pub numerator: Vec<(i32, i64)>,
}

impl HilbertSeries {
    pub fn from_map(nvars: usize, map: BTreeMap<i32, i64>) -> Self {
        HilbertSeries {
            nvars,
            numerator: map.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Value of the Hilbert function in degree `d`.
    pub fn hf(&self, d: i32) -> i64 {
        let n = self.nvars as i64;
        self.numerator
            .iter()
            .filter(|(j, _)| d >= *j)
            .map(|(j, c)| c * binomial((d - j) as i64 + n - 1, n - 1))
            .sum()
    }

    pub fn hf_range(&self, lo: i32, hi: i32) -> Vec<i64> {
        (lo..=hi).map(|d| self.hf(d)).collect()
    }

    /// `self + sign * other`.
    pub fn combine(&self, sign: i64, other: &HilbertSeries) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut map: BTreeMap<i32, i64> = self.numerator.iter().copied().collect();
        for &(j, c) in &other.numerator {
            *map.entry(j).or_insert(0) += sign * c;
        }
        HilbertSeries::from_map(self.nvars, map)
    }

    /// The series of the module with every generator moved up by `delta` degrees.
    pub fn shifted(&self, delta: i32) -> Self {
        HilbertSeries {
            nvars: self.nvars,
            numerator: self.numerator.iter().map(|(j, c)| (j + delta, *c)).collect(),
        }
    }

    /// Krull dimension: `n` minus the multiplicity of `t = 1` as a root of
    /// the numerator. `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let lo = self.numerator.first().unwrap().0;
        // coefficients of t^{-lo} * numerator, ascending powers
        let hi = self.numerator.last().unwrap().0;
        let mut coeffs = vec![0i128; (hi - lo + 1) as usize];
        for (j, c) in &self.numerator {
            coeffs[(j - lo) as usize] = *c as i128;
        }
        let mut order = 0usize;
        while coeffs.iter().sum::<i128>() == 0 {
            // divide by (1 - t): q_k = Σ_{i≤k} a_i
            let mut acc = 0i128;
            let mut q = Vec::with_capacity(coeffs.len() - 1);
            for a in &coeffs[..coeffs.len() - 1] {
                acc += a;
                q.push(acc);
            }
            coeffs = q;
            order += 1;
        }
        Some(self.nvars.saturating_sub(order))
    }

    pub fn format(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .numerator
            .iter()
            .map(|(j, c)| match *j {
                0 => format!("{c}"),
                _ => format!("{c}*t^{j}"),
            })
            .collect();
        format!("({}) / (1-t)^{}", parts.join(" + "), self.nvars)
    }
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// Hilbert numerator of `R/J` for a monomial ideal `J`, by pivoting on a
/// power of the most frequent variable.
pub fn monomial_quotient_numerator(gens: &[Monomial]) -> BTreeMap<i32, i64> {
    let mut gens = minimalize(gens.to_vec());
    let mut out = BTreeMap::new();
    if gens.is_empty() {
        out.insert(0, 1);
        return out;
    }
    if gens.iter().any(|m| m.is_one()) {
        return out;
    }
    let pairwise_coprime = (0..gens.len()).all(|i| (i + 1..gens.len()).all(|j| gens[i].is_coprime(&gens[j])));
    if pairwise_coprime {
        out.insert(0, 1);
        for m in &gens {
            let d = m.degree();
            let mut next = BTreeMap::new();
            for (e, c) in &out {
                *next.entry(*e).or_insert(0) += c;
                *next.entry(e + d).or_insert(0) -= c;
            }
            out = next;
        }
        out.retain(|_, c| *c != 0);
        return out;
    }
    let n = gens[0].nvars();
    let var = (0..n)
        .max_by_key(|&v| (gens.iter().filter(|m| m.exponents()[v] > 0).count(), std::cmp::Reverse(v)))
        .unwrap();
    let e = gens
        .iter()
        .map(|m| m.exponents()[var])
        .filter(|&x| x > 0)
        .min()
        .unwrap();
    let mut pexp = vec![0u16; n];
    pexp[var] = e;
    let pivot = Monomial::from_exponents(&pexp);
    let colon: Vec<Monomial> = gens.iter().map(|m| pivot.gcd(m).quotient_of(m)).collect();
    gens.push(pivot);
    let a = monomial_quotient_numerator(&gens);
    let b = monomial_quotient_numerator(&colon);
    let mut out = a;
    for (j, c) in b {
        *out.entry(j + e as i32).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn polynomial_ring_in_two_vars() {
        let hs = HilbertSeries::from_map(2, monomial_quotient_numerator(&[]));
        assert_eq!(hs.hf_range(0, 4), vec![1, 2, 3, 4, 5]);
        assert_eq!(hs.dimension(), Some(2));
    }

    #[test]
    fn x2_xy_quotient() {
        let hs = HilbertSeries::from_map(2, monomial_quotient_numerator(&[m(&[2, 0]), m(&[1, 1])]));
        assert_eq!(hs.hf_range(0, 5), vec![1, 2, 1, 1, 1, 1]);
        assert_eq!(hs.dimension(), Some(1));
    }

    #[test]
    fn brute_force_standard_monomial_count() {
        let gens = vec![m(&[2, 1, 0]), m(&[0, 2, 2]), m(&[1, 0, 3]), m(&[1, 1, 1])];
        let hs = HilbertSeries::from_map(3, monomial_quotient_numerator(&gens));
        for d in 0..9 {
            let count = crate::ring::monomials_of_degree(3, d)
                .into_iter()
                .filter(|x| !gens.iter().any(|g| g.divides(x)))
                .count() as i64;
            assert_eq!(hs.hf(d), count, "degree {d}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
