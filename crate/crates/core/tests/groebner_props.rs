use std::sync::Arc;

use koszul_core::groebner::{kernel, syzygies_modulo, syzygy_generators, FreeModule, FreeVector, GroebnerBasis, Ideal, Matrix};
use koszul_core::ring::{MonomialOrder, PolyRing, Polynomial};
use proptest::prelude::*;

fn ring3() -> Arc<PolyRing> {
    PolyRing::new(32003, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap()
}

/// Homogeneous polynomial of degree `d` in three variables from raw terms.
fn poly(r: &PolyRing, d: u16, raw: &[(u16, u16, u32)]) -> Polynomial {
    let terms = raw
        .iter()
        .map(|&(a, b, c)| {
            let a = a % (d + 1);
            let b = b % (d - a + 1);
            (koszul_core::ring::Monomial::from_exponents(&[a, b, d - a - b]), c % 32003)
        })
        .collect();
    Polynomial::from_terms(r, terms)
}

fn raw_terms() -> impl Strategy<Value = Vec<(u16, u16, u32)>> {
    prop::collection::vec((0u16..4, 0u16..4, 1u32..32003), 1..4)
}

#[test]
fn lead_terms_of_twisted_pair() {
    let r = ring3();
    let i = Ideal::parse(&r, &["x*y - z^2", "x^2 - y*z"]).unwrap();
    let gb = i.groebner().unwrap();
    let mut leads: Vec<String> = gb.leading_terms().into_iter().map(|(_, m)| r.format_monomial(&m)).collect();
    leads.sort();
    assert_eq!(leads, vec!["x*y", "x^2", "y^2*z"]);
    assert!(gb.verify_s_pairs(&r).unwrap());
    assert!(gb.is_autoreduced());
}

#[test]
fn kill_vectors_restrict_the_kernel() {
    // { c : c x ∈ (x^2, xy) } = (x, y)
    let r = ring3();
    let m = Matrix::new(FreeModule::new(vec![1]), FreeModule::ring_itself(), vec![FreeVector::from_poly(&r.var(0), 0)]);
    let kill: Vec<FreeVector> = ["x^2", "x*y"].iter().map(|s| FreeVector::from_poly(&r.parse(s).unwrap(), 0)).collect();
    let s = syzygies_modulo(&r, &m, &kill).unwrap();
    let got = Ideal::new(&r, s.cols.iter().map(|v| v.component(0)).collect()).unwrap();
    assert!(got.equals(&Ideal::parse(&r, &["x", "y"]).unwrap()).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn basis_is_reduced_and_contains_combinations(
        raws in prop::collection::vec((1u16..4, raw_terms()), 1..4),
        mult in raw_terms(),
    ) {
        let r = ring3();
        let gens: Vec<Polynomial> = raws.iter().map(|(d, t)| poly(&r, *d, t)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let i = Ideal::new(&r, gens.clone()).unwrap();
        let gb = i.groebner().unwrap();
        prop_assert!(gb.verify_s_pairs(&r).unwrap());
        prop_assert!(gb.is_autoreduced());
        let mut combo = Polynomial::zero();
        for (k, g) in gens.iter().enumerate() {
            let c = poly(&r, 1 + (k as u16 % 2), &mult);
            combo = combo.add(&r, &c.mul(&r, g));
        }
        prop_assert!(i.contains(&combo).unwrap());
    }

    #[test]
    fn syzygies_annihilate_and_match_elimination(raws in prop::collection::vec((1u16..3, raw_terms(), raw_terms()), 2..5)) {
        // columns in R^2 with components of degrees d and d + 1
        let r = ring3();
        let target = FreeModule::new(vec![0, -1]);
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for (d, a, b) in &raws {
            let v = FreeVector::from_components(&[poly(&r, *d, a), poly(&r, *d + 1, b)]);
            if !v.is_zero() {
                cols.push(v);
                degs.push(*d as i32);
            }
        }
        prop_assume!(!cols.is_empty());
        let m = Matrix::new(FreeModule::new(degs), target, cols);
        let syz = syzygy_generators(&r, &m).unwrap();
        for s in &syz.cols {
            prop_assert!(m.apply(&r, s).is_zero());
        }
        // reference: full Gröbner basis of (m e_j, e_j), keep elements with no target part
        let ambient = m.target.sum(&m.source);
        let aug: Vec<FreeVector> = m.cols.iter().enumerate()
            .map(|(j, c)| c.concat(&FreeVector::basis(&r, j), 2)).collect();
        let full = GroebnerBasis::compute(&r, &ambient, &aug).unwrap();
        let reference: Vec<FreeVector> = full.elements().iter()
            .filter(|v| v.lead().unwrap().pos >= 2)
            .map(|v| v.shift_positions(-2)).collect();
        let ours = GroebnerBasis::compute(&r, &m.source, &syz.cols).unwrap();
        let theirs = GroebnerBasis::compute(&r, &m.source, &reference).unwrap();
        for v in &reference {
            prop_assert!(ours.contains(&r, v).unwrap());
        }
        for v in &syz.cols {
            prop_assert!(theirs.contains(&r, v).unwrap());
        }
        let k = kernel(&r, &m).unwrap();
        prop_assert!(k.cols.len() <= syz.cols.len());
    }
}
