//! Gröbner bases of homogeneous submodules of graded free modules, and the
//! constructions built directly on them: syzygies, coordinates of vectors
//! in terms of generators, colon ideals and intersections.

mod buchberger;
mod ideal;
mod vector;

pub use buchberger::{set_step_budget, step_budget, GroebnerBasis, DEFAULT_STEP_BUDGET};
pub use ideal::Ideal;
pub use vector::{term_cmp, FreeModule, FreeVector, Matrix, Term};

use crate::error::{Error, Result};
use crate::ring::{PolyRing, Polynomial};

/// Convenience wrapper over [`GroebnerBasis::compute`].
pub fn buchberger(ring: &PolyRing, module: &FreeModule, gens: &[FreeVector]) -> Result<GroebnerBasis> {
    GroebnerBasis::compute(ring, module, gens)
}

pub fn normal_form(ring: &PolyRing, v: &FreeVector, gb: &GroebnerBasis) -> Result<FreeVector> {
    gb.reduce(ring, v)
}

/// Subset of `gens` minimally generating the same submodule, in input order.
pub fn minimal_generators(ring: &PolyRing, module: &FreeModule, gens: &[FreeVector]) -> Result<Vec<FreeVector>> {
    Ok(GroebnerBasis::minimal_subset(ring, module, gens)?
        .iter()
        .map(|&k| gens[k].clone())
        .collect())
}

/// Generators of the kernel of `m`, as a matrix whose target is `m.source`.
pub fn syzygy_generators(ring: &PolyRing, m: &Matrix) -> Result<Matrix> {
    syzygies_modulo(ring, m, &[])
}

/// Generators of `{ c : m c ∈ <kill> }`, as a matrix whose target is
/// `m.source`.
///
/// The vectors `(m e_j, e_j)` and `(k, 0)` in `target ⊕ source` are run
/// through Buchberger on the target part only; every S-vector whose target
/// part reduces to zero leaves a generator in the source part. The `kill`
/// vectors carry no coordinates, so syzygies among them never appear. The
/// result is a generating set, not a minimal one.
pub fn syzygies_modulo(ring: &PolyRing, m: &Matrix, kill: &[FreeVector]) -> Result<Matrix> {
    let r = m.target.rank();
    let ambient = m.target.sum(&m.source);
    for (c, d) in m.cols.iter().zip(&m.source.degs) {
        if !c.is_zero() && c.degree(&m.target) != Some(*d) {
            return Err(Error::NotHomogeneous(c.format(ring)));
        }
    }
    let mut aug: Vec<FreeVector> = m
        .cols
        .iter()
        .enumerate()
        .map(|(j, c)| c.concat(&FreeVector::basis(ring, j), r))
        .collect();
    for k in kill.iter().filter(|k| !k.is_zero()) {
        if k.degree(&m.target).is_none() {
            return Err(Error::NotHomogeneous(k.format(ring)));
        }
        aug.push(k.clone());
    }
    let (_, found) = GroebnerBasis::compute_split(ring, &ambient, &aug, r)?;
    let mut syz = Vec::new();
    let mut degs = Vec::new();
    for v in found {
        degs.push(v.degree(&ambient).unwrap());
        syz.push(v.shift_positions(-(r as i64)));
    }
    Ok(Matrix::new(FreeModule::new(degs), m.source.clone(), syz))
}

/// Minimal generators of the kernel of `m`.
pub fn kernel(ring: &PolyRing, m: &Matrix) -> Result<Matrix> {
    let syz = syzygy_generators(ring, m)?;
    minimize_columns(ring, &syz)
}

/// Drops redundant columns so the columns minimally generate the image.
pub fn minimize_columns(ring: &PolyRing, m: &Matrix) -> Result<Matrix> {
    let keep = GroebnerBasis::minimal_subset(ring, &m.target, &m.cols)?;
    Ok(Matrix::new(
        FreeModule::new(keep.iter().map(|&k| m.source.degs[k]).collect()),
        m.target.clone(),
        keep.iter().map(|&k| m.cols[k].clone()).collect(),
    ))
}

/// Writes vectors as combinations of fixed generators modulo a fixed
/// submodule: solves `v ≡ Σ c_j gens_j (mod kill)`.
pub struct Lifter {
    rank: usize,
    ngens: usize,
    gb: GroebnerBasis,
}

impl Lifter {
    pub fn new(ring: &PolyRing, gens: &Matrix, kill: &[FreeVector]) -> Result<Self> {
        let r = gens.target.rank();
        let ambient = gens.target.sum(&gens.source);
        let mut aug: Vec<FreeVector> = gens
            .cols
            .iter()
            .enumerate()
            .map(|(j, c)| c.concat(&FreeVector::basis(ring, j), r))
            .collect();
        aug.extend(kill.iter().cloned());
        let (gb, _) = GroebnerBasis::compute_split(ring, &ambient, &aug, r)?;
        Ok(Lifter {
            rank: r,
            ngens: gens.source.rank(),
            gb,
        })
    }

    /// Coefficients `c` in the generators' source module, or `None` when `v`
    /// is not in the span.
    pub fn lift(&self, ring: &PolyRing, v: &FreeVector) -> Result<Option<FreeVector>> {
        let nf = self.gb.reduce(ring, v)?;
        if nf.terms().iter().any(|t| (t.pos as usize) < self.rank) {
            return Ok(None);
        }
        Ok(Some(nf.restrict(self.rank, self.rank + self.ngens).neg(ring)))
    }
}

/// `{ r : r v ∈ N }` for a submodule `N` (given by generators) of `module`.
pub fn quotient_by_vector(
    ring: &std::sync::Arc<PolyRing>,
    module: &FreeModule,
    submodule: &[FreeVector],
    v: &FreeVector,
) -> Result<Ideal> {
    let vdeg = if v.is_zero() {
        return Ok(Ideal::unit(ring));
    } else {
        v.degree(module).ok_or_else(|| Error::NotHomogeneous(v.format(ring)))?
    };
    let m = Matrix::new(FreeModule::new(vec![vdeg]), module.clone(), vec![v.clone()]);
    let syz = syzygies_modulo(ring, &m, submodule)?;
    let gens: Vec<Polynomial> = syz
        .cols
        .iter()
        .map(|s| s.component(0))
        .filter(|p| !p.is_zero())
        .collect();
    Ok(Ideal::new(ring, gens)?.minimalized()?)
}

/// `(N : f) = { r : r f ∈ N }` for an ideal `N`.
pub fn colon(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let ring = ideal.ring();
    let module = FreeModule::ring_itself();
    let gens: Vec<FreeVector> = ideal.gens().iter().map(|g| FreeVector::from_poly(g, 0)).collect();
    quotient_by_vector(ring, &module, &gens, &FreeVector::from_poly(f, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;
    use std::sync::Arc;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(32003, vars, MonomialOrder::Grevlex).unwrap()
    }

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::parse(r, gens).unwrap()
    }

    #[test]
    fn basis_of_linear_ideal() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x", "y"]);
        let gb = i.groebner().unwrap();
        let leads: Vec<_> = gb.leading_terms().into_iter().map(|(_, m)| r.format_monomial(&m)).collect();
        assert_eq!(leads, vec!["x", "y"]);
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let r = ring(&["x", "y", "z"]);
        let i = ideal(&r, &["2*x*y - z^2"]);
        let gb = i.groebner().unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb.elements()[0].component(0), r.parse("x*y - 16002*z^2").unwrap());
    }

    #[test]
    fn empty_input_gives_empty_basis() {
        let r = ring(&["x"]);
        let gb = buchberger(&r, &FreeModule::ring_itself(), &[]).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn normal_forms_against_x() {
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x"]);
        let gb = i.groebner().unwrap();
        let x2 = FreeVector::from_poly(&r.parse("x^2").unwrap(), 0);
        let y = FreeVector::from_poly(&r.parse("y").unwrap(), 0);
        assert!(normal_form(&r, &x2, &gb).unwrap().is_zero());
        assert_eq!(normal_form(&r, &y, &gb).unwrap(), y);
    }

    #[test]
    fn koszul_syzygy_of_regular_sequence() {
        let r = ring(&["x", "y"]);
        let m = Matrix::new(
            FreeModule::new(vec![1, 1]),
            FreeModule::ring_itself(),
            vec![
                FreeVector::from_poly(&r.parse("x").unwrap(), 0),
                FreeVector::from_poly(&r.parse("y").unwrap(), 0),
            ],
        );
        let k = kernel(&r, &m).unwrap();
        assert_eq!(k.cols.len(), 1);
        assert_eq!(k.source.degs, vec![2]);
        let s = &k.cols[0];
        let (a, b) = (s.component(0), s.component(1));
        let y = r.parse("y").unwrap();
        let x = r.parse("x").unwrap();
        assert!(
            (a == y && b == x.neg(&r)) || (a == y.neg(&r) && b == x),
            "got {}",
            s.format(&r)
        );
    }

    #[test]
    fn syzygy_of_x2_xy() {
        let r = ring(&["x", "y"]);
        let m = Matrix::new(
            FreeModule::new(vec![2, 2]),
            FreeModule::ring_itself(),
            vec![
                FreeVector::from_poly(&r.parse("x^2").unwrap(), 0),
                FreeVector::from_poly(&r.parse("x*y").unwrap(), 0),
            ],
        );
        let k = kernel(&r, &m).unwrap();
        assert_eq!(k.cols.len(), 1);
        assert_eq!(k.source.degs, vec![3]);
        let s = k.cols[0].monic(&r);
        assert_eq!(s.component(0), r.parse("y").unwrap());
        assert_eq!(s.component(1), r.parse("-x").unwrap());
    }

    #[test]
    fn injective_map_has_no_syzygies() {
        let r = ring(&["x", "y"]);
        let f = FreeModule::new(vec![0, 0, 0]);
        let k = kernel(&r, &Matrix::identity(&f, &r)).unwrap();
        assert!(k.cols.is_empty());
    }

    #[test]
    fn colon_examples() {
        let r = ring(&["x", "y"]);
        let x = r.parse("x").unwrap();
        let y = r.parse("y").unwrap();
        let q = colon(&ideal(&r, &["x^2", "x*y"]), &x).unwrap();
        assert!(q.equals(&ideal(&r, &["x", "y"])).unwrap());
        let i = ideal(&r, &["x^2", "x*y"]);
        assert!(colon(&i, &r.one()).unwrap().equals(&i).unwrap());
        assert!(colon(&ideal(&r, &["x"]), &y).unwrap().equals(&ideal(&r, &["x"])).unwrap());
    }

    #[test]
    fn colon_brute_force_monomials() {
        // r x ∈ (x^2, xy) for a monomial r iff r is divisible by x or y.
        let r = ring(&["x", "y"]);
        let i = ideal(&r, &["x^2", "x*y"]);
        let q = colon(&i, &r.parse("x").unwrap()).unwrap();
        let gb_i = i.groebner().unwrap();
        for a in 0..4u16 {
            for b in 0..4u16 {
                let m = Polynomial::monomial(crate::ring::Monomial::from_exponents(&[a, b]), 1);
                let prod = m.mul(&r, &r.parse("x").unwrap());
                let in_i = gb_i.contains(&r, &FreeVector::from_poly(&prod, 0)).unwrap();
                assert_eq!(q.contains(&m).unwrap(), in_i, "monomial x^{a} y^{b}");
            }
        }
    }

    #[test]
    fn lifting_coordinates() {
        let r = ring(&["x", "y"]);
        let gens = Matrix::new(
            FreeModule::new(vec![1, 1]),
            FreeModule::ring_itself(),
            vec![
                FreeVector::from_poly(&r.parse("x").unwrap(), 0),
                FreeVector::from_poly(&r.parse("y").unwrap(), 0),
            ],
        );
        let lifter = Lifter::new(&r, &gens, &[]).unwrap();
        let v = FreeVector::from_poly(&r.parse("x^2 + 3*x*y - y^2").unwrap(), 0);
        let c = lifter.lift(&r, &v).unwrap().unwrap();
        assert_eq!(gens.apply(&r, &c), v);
        let one = FreeVector::basis(&r, 0);
        assert!(lifter.lift(&r, &one).unwrap().is_none());
    }
}
