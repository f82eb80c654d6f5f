use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::ring::{mono_compare, Coeff, Monomial, MonomialOrder, PolyRing, Polynomial};

/// Graded free module `⊕ R(-degs[i])`: basis vector `e_i` lives in degree `degs[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FreeModule {
    pub degs: Vec<i32>,
}

impl FreeModule {
    pub fn new(degs: Vec<i32>) -> Self {
        FreeModule { degs }
    }

    pub fn rank(&self) -> usize {
        self.degs.len()
    }

    pub fn ring_itself() -> Self {
        FreeModule { degs: vec![0] }
    }

    /// Direct sum `self ⊕ other`, positions of `other` offset by `self.rank()`.
    pub fn sum(&self, other: &FreeModule) -> FreeModule {
        let mut degs = self.degs.clone();
        degs.extend_from_slice(&other.degs);
        FreeModule { degs }
    }

    /// Graded dual `⊕ R(degs[i])`.
    pub fn dual(&self) -> FreeModule {
        FreeModule {
            degs: self.degs.iter().map(|d| -d).collect(),
        }
    }

    pub fn twisted(&self, shift: i32) -> FreeModule {
        FreeModule {
            degs: self.degs.iter().map(|d| d + shift).collect(),
        }
    }
}

/// One term `coef * mono * e_pos` of a free-module element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: u32,
    pub mono: Monomial,
    pub coef: Coeff,
}

/// Position-over-term: a smaller position index is larger; inside one
/// position the ring's monomial order decides.
#[inline]
pub fn term_cmp(a_pos: u32, a: &Monomial, b_pos: u32, b: &Monomial, order: MonomialOrder) -> Ordering {
    match b_pos.cmp(&a_pos) {
        Ordering::Equal => mono_compare(a, b, order),
        o => o,
    }
}

/// Sparse element of a free module, terms sorted strictly descending in the
/// position-over-term order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeVector {
    terms: Vec<Term>,
}

impl FreeVector {
    pub fn zero() -> Self {
        FreeVector { terms: Vec::new() }
    }

    pub(crate) fn from_sorted(terms: Vec<Term>) -> Self {
        FreeVector { terms }
    }

    pub fn from_terms(ring: &PolyRing, mut terms: Vec<Term>) -> Self {
        let order = ring.order();
        let f = ring.field();
        terms.sort_by(|a, b| term_cmp(b.pos, &b.mono, a.pos, &a.mono, order));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.pos == t.pos && l.mono == t.mono => l.coef = f.add(l.coef, t.coef),
                _ => out.push(t),
            }
        }
        out.retain(|t| t.coef != 0);
        FreeVector { terms: out }
    }

    /// `f * e_pos`.
    pub fn from_poly(f: &Polynomial, pos: usize) -> Self {
        FreeVector {
            terms: f
                .terms()
                .iter()
                .map(|(m, c)| Term {
                    pos: pos as u32,
                    mono: m.clone(),
                    coef: *c,
                })
                .collect(),
        }
    }

    pub fn basis(ring: &PolyRing, pos: usize) -> Self {
        FreeVector::from_poly(&ring.one(), pos)
    }

    /// Builds `Σ comps[i] e_i`.
    pub fn from_components(comps: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (i, f) in comps.iter().enumerate() {
            terms.extend(FreeVector::from_poly(f, i).terms);
        }
        FreeVector { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
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

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Coefficient polynomial at position `pos`.
    pub fn component(&self, pos: usize) -> Polynomial {
        Polynomial::from_sorted_terms(
            self.terms
                .iter()
                .filter(|t| t.pos as usize == pos)
                .map(|t| (t.mono.clone(), t.coef))
                .collect(),
        )
    }

    pub fn components(&self, rank: usize) -> Vec<Polynomial> {
        let mut out: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            out[t.pos as usize].push((t.mono.clone(), t.coef));
        }
        out.into_iter().map(Polynomial::from_sorted_terms).collect()
    }

    /// Largest position index used, plus one.
    pub fn support_len(&self) -> usize {
        self.terms.iter().map(|t| t.pos as usize + 1).max().unwrap_or(0)
    }

    /// Common degree `deg(mono) + degs[pos]` of all terms, if homogeneous.
    pub fn degree(&self, module: &FreeModule) -> Option<i32> {
        let first = self.terms.first()?;
        let d = first.mono.degree() + module.degs[first.pos as usize];
        self.terms
            .iter()
            .all(|t| t.mono.degree() + module.degs[t.pos as usize] == d)
            .then_some(d)
    }

    pub fn is_homogeneous(&self, module: &FreeModule) -> bool {
        self.is_zero() || self.degree(module).is_some()
    }

    pub fn neg(&self, ring: &PolyRing) -> Self {
        let f = ring.field();
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    pos: t.pos,
                    mono: t.mono.clone(),
                    coef: f.neg(t.coef),
                })
                .collect(),
        }
    }

    pub fn scale(&self, ring: &PolyRing, c: Coeff) -> Self {
        self.mul_term(ring, &Monomial::one(ring.nvars()), c)
    }

    pub fn mul_term(&self, ring: &PolyRing, m: &Monomial, c: Coeff) -> Self {
        if c == 0 {
            return Self::zero();
        }
        let f = ring.field();
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    pos: t.pos,
                    mono: t.mono.mul(m),
                    coef: f.mul(t.coef, c),
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, ring: &PolyRing, p: &Polynomial) -> Self {
        let mut acc = FreeVector::zero();
        for (m, c) in p.terms() {
            acc = acc.add_scaled(ring, *c, m, self);
        }
        acc
    }

    pub fn add(&self, ring: &PolyRing, other: &FreeVector) -> Self {
        self.add_scaled(ring, 1, &Monomial::one(ring.nvars()), other)
    }

    pub fn sub(&self, ring: &PolyRing, other: &FreeVector) -> Self {
        let f = ring.field();
        self.add_scaled(ring, f.neg(1), &Monomial::one(ring.nvars()), other)
    }

    /// `self + c * m * other` in a single merge pass.
    pub fn add_scaled(&self, ring: &PolyRing, c: Coeff, m: &Monomial, other: &FreeVector) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        merge_scaled_into(ring, &self.terms, c, m, &other.terms, &mut out);
        FreeVector { terms: out }
    }

    pub fn monic(&self, ring: &PolyRing) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some(t) if t.coef == 1 => self.clone(),
            Some(t) => self.scale(ring, ring.field().inv(t.coef)),
        }
    }

    /// Adds `offset` to every position.
    pub fn shift_positions(&self, offset: i64) -> Self {
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    pos: (t.pos as i64 + offset) as u32,
                    mono: t.mono.clone(),
                    coef: t.coef,
                })
                .collect(),
        }
    }

    /// Keeps terms with `lo <= pos < hi` and renumbers them from zero.
    pub fn restrict(&self, lo: usize, hi: usize) -> Self {
        FreeVector {
            terms: self
                .terms
                .iter()
                .filter(|t| (lo..hi).contains(&(t.pos as usize)))
                .map(|t| Term {
                    pos: t.pos - lo as u32,
                    mono: t.mono.clone(),
                    coef: t.coef,
                })
                .collect(),
        }
    }

    /// Renumbers positions through `map`; terms mapped to `None` are dropped.
    /// The map must be strictly increasing on the kept positions.
    pub fn remap_positions(&self, map: &[Option<usize>]) -> Self {
        FreeVector {
            terms: self
                .terms
                .iter()
                .filter_map(|t| {
                    map[t.pos as usize].map(|p| Term {
                        pos: p as u32,
                        mono: t.mono.clone(),
                        coef: t.coef,
                    })
                })
                .collect(),
        }
    }

    /// True when some entry has a nonzero constant term.
    pub fn has_unit_entry(&self) -> bool {
        self.terms.iter().any(|t| t.mono.is_one())
    }

    /// Concatenation `(self, other)` where `other` lives `offset` positions up.
    /// Requires every position of `self` to be below `offset`.
    pub fn concat(&self, other: &FreeVector, offset: usize) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.shift_positions(offset as i64).terms);
        FreeVector { terms }
    }

    pub fn format(&self, ring: &PolyRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut comps: Vec<(usize, Polynomial)> = Vec::new();
        let n = self.support_len();
        for (i, p) in self.components(n).into_iter().enumerate() {
            if !p.is_zero() {
                comps.push((i, p));
            }
        }
        comps
            .iter()
            .map(|(i, p)| format!("({})*e{}", ring.display(p), i))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub(crate) fn merge_scaled_into(
    ring: &PolyRing,
    a: &[Term],
    c: Coeff,
    m: &Monomial,
    b: &[Term],
    out: &mut Vec<Term>,
) {
    let order = ring.order();
    let f = ring.field();
    if c == 0 {
        out.extend_from_slice(a);
        return;
    }
    let mut bi = b.iter().map(|t| Term {
        pos: t.pos,
        mono: t.mono.mul(m),
        coef: f.mul(t.coef, c),
    });
    let mut ai = a.iter();
    let mut na = ai.next();
    let mut nb = bi.next();
    loop {
        match (na, nb.take()) {
            (None, None) => break,
            (Some(x), None) => {
                out.push(x.clone());
                out.extend(ai.by_ref().cloned());
                break;
            }
            (None, Some(y)) => {
                out.push(y);
                out.extend(bi.by_ref());
                break;
            }
            (Some(x), Some(y)) => match term_cmp(x.pos, &x.mono, y.pos, &y.mono, order) {
                Ordering::Greater => {
                    out.push(x.clone());
                    na = ai.next();
                    nb = Some(y);
                }
                Ordering::Less => {
                    out.push(y);
                    nb = bi.next();
                }
                Ordering::Equal => {
                    let s = f.add(x.coef, y.coef);
                    if s != 0 {
                        out.push(Term {
                            pos: x.pos,
                            mono: x.mono.clone(),
                            coef: s,
                        });
                    }
                    na = ai.next();
                    nb = bi.next();
                }
            },
        }
    }
}

/// A degree-zero homomorphism of graded free modules, stored by columns:
/// `cols[j]` is the image of the `j`-th basis vector of `source`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Matrix {
    pub source: FreeModule,
    pub target: FreeModule,
    pub cols: Vec<FreeVector>,
}

impl Matrix {
    pub fn new(source: FreeModule, target: FreeModule, cols: Vec<FreeVector>) -> Self {
        debug_assert_eq!(source.rank(), cols.len());
        Matrix { source, target, cols }
    }

    pub fn identity(module: &FreeModule, ring: &PolyRing) -> Self {
        Matrix {
            source: module.clone(),
            target: module.clone(),
            cols: (0..module.rank()).map(|i| FreeVector::basis(ring, i)).collect(),
        }
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let cols = vec![FreeVector::zero(); source.rank()];
        Matrix { source, target, cols }
    }

    /// True when every nonzero column has degree equal to its source degree.
    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().zip(&self.source.degs).all(|(c, d)| {
            c.is_zero() || c.degree(&self.target) == Some(*d)
        })
    }

    pub fn apply(&self, ring: &PolyRing, v: &FreeVector) -> FreeVector {
        let mut acc = FreeVector::zero();
        for t in v.terms() {
            acc = acc.add_scaled(ring, t.coef, &t.mono, &self.cols[t.pos as usize]);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &PolyRing, other: &Matrix) -> Matrix {
        Matrix {
            source: other.source.clone(),
            target: self.target.clone(),
            cols: other.cols.iter().map(|c| self.apply(ring, c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn has_unit_entry(&self) -> bool {
        self.cols.iter().any(|c| c.has_unit_entry())
    }

    /// Entry in row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.cols[j].component(i)
    }

    pub fn transpose(&self) -> Matrix {
        let mut rows: Vec<Vec<Term>> = vec![Vec::new(); self.target.rank()];
        for (j, col) in self.cols.iter().enumerate() {
            for t in col.terms() {
                rows[t.pos as usize].push(Term {
                    pos: j as u32,
                    mono: t.mono.clone(),
                    coef: t.coef,
                });
            }
        }
        // Within each row, columns were visited in increasing j and, for a
        // fixed j, in descending monomial order; that is exactly POT order.
        Matrix {
            source: self.target.dual(),
            target: self.source.dual(),
            cols: rows.into_iter().map(FreeVector::from_sorted).collect(),
        }
    }
}
