use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::ring::MonomialOrder;

fn ring(vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(32003, vars, MonomialOrder::Grevlex).unwrap()
}

fn quotient(r: &Arc<PolyRing>, gens: &[&str]) -> GradedModule {
    GradedModule::cyclic(&Ideal::parse(r, gens).unwrap()).unwrap().minimized().unwrap()
}

fn vec_of(r: &Arc<PolyRing>, comps: &[&str]) -> FreeVector {
    let polys: Vec<_> = comps.iter().map(|c| r.parse(c).unwrap()).collect();
    FreeVector::from_components(&polys)
}

fn betti_list(b: &BettiTable) -> Vec<(usize, i32, usize)> {
    b.entries().collect()
}

#[test]
fn unit_presentation_is_zero() {
    let r = ring(&["x", "y"]);
    let m = quotient(&r, &["1"]);
    assert_eq!(m.rank(), 0);
    assert!(m.is_zero().unwrap());
}

#[test]
fn redundant_ideal_generator_is_dropped() {
    let r = ring(&["x", "y"]);
    let i = Ideal::parse(&r, &["x^2", "x*y", "x^2 + x*y"]).unwrap();
    let m = GradedModule::from_ideal(&i).unwrap();
    assert_eq!(m.rank(), 2);
}

#[test]
fn unit_entry_is_pruned() {
    let r = ring(&["x", "y"]);
    let gens = FreeModule::new(vec![0, 1]);
    let rels = vec![vec_of(&r, &["y", "1"]), vec_of(&r, &["x", "0"])];
    let m = GradedModule::new(&r, gens, rels).unwrap();
    let min = m.minimal_presentation().unwrap();
    assert_eq!(min.module.rank(), 1);
    assert_eq!(min.kept, vec![0]);
    assert!(!min.module.presentation().has_unit_entry());
    // e_1 = -y e_0
    assert_eq!(min.substitution[1], vec_of(&r, &["-y"]));
    assert_eq!(min.module.hilbert_series().unwrap().hf_range(0, 3), vec![1, 1, 1, 1]);
}

#[test]
fn resolution_of_regular_sequence() {
    let r = ring(&["x", "y"]);
    let m = quotient(&r, &["x", "y"]);
    assert_eq!(betti_list(&m.betti().unwrap()), vec![(0, 0, 1), (1, 1, 2), (2, 2, 1)]);
}

#[test]
fn resolution_of_x2_xy() {
    let r = ring(&["x", "y"]);
    let m = quotient(&r, &["x^2", "x*y"]);
    assert_eq!(betti_list(&m.betti().unwrap()), vec![(0, 0, 1), (1, 2, 2), (2, 3, 1)]);
    assert_eq!(m.projective_dimension().unwrap(), Some(2));
}

#[test]
fn free_module_resolution_has_length_zero() {
    let r = ring(&["x", "y"]);
    let m = GradedModule::free(&r, vec![0, 3]);
    assert_eq!(m.resolution().unwrap().length(), 0);
    assert_eq!(m.projective_dimension().unwrap(), Some(0));
}

#[test]
fn hilbert_functions() {
    let r = ring(&["x", "y"]);
    let free = GradedModule::free(&r, vec![0]);
    assert_eq!(free.hilbert_series().unwrap().hf_range(0, 4), vec![1, 2, 3, 4, 5]);
    assert_eq!(quotient(&r, &["x", "y"]).hilbert_series().unwrap().hf_range(0, 3), vec![1, 0, 0, 0]);
    assert_eq!(
        quotient(&r, &["x^2", "x*y"]).hilbert_series().unwrap().hf_range(0, 5),
        vec![1, 2, 1, 1, 1, 1]
    );
}

#[test]
fn hom_examples() {
    let r = ring(&["x", "y"]);
    let rx = quotient(&r, &["x"]);
    let h = hom_module(&rx, &rx).unwrap();
    assert_eq!(h.module.hilbert_series().unwrap(), rx.hilbert_series().unwrap());
    assert_eq!(h.module.betti().unwrap(), rx.betti().unwrap());

    let k = quotient(&r, &["x", "y"]);
    let rr = GradedModule::free(&r, vec![0]);
    assert!(hom_module(&k, &rr).unwrap().module.is_zero().unwrap());

    let m = quotient(&r, &["x^2", "x*y"]);
    let h = hom_module(&m, &rx).unwrap();
    assert_eq!(h.module.betti().unwrap(), rx.betti().unwrap());
}

#[test]
fn hom_into_free_module_is_dual() {
    let r = ring(&["x", "y", "z"]);
    let f = GradedModule::free(&r, vec![1, 2]);
    let rr = GradedModule::free(&r, vec![0]);
    let h = hom_module(&f, &rr).unwrap();
    assert_eq!(h.module.gens().degs, vec![-1, -2]);
    assert!(h.module.relations().is_empty());
}

#[test]
fn ext_examples() {
    let r = ring(&["x", "y"]);
    let e = ext_module(2, &quotient(&r, &["x", "y"])).unwrap();
    assert_eq!(e.gens().degs, vec![-2]);
    assert_eq!(e.hilbert_series().unwrap().hf_range(-3, 0), vec![0, 1, 0, 0]);

    let e = ext_module(1, &quotient(&r, &["x"])).unwrap();
    assert_eq!(e.betti().unwrap(), quotient(&r, &["x"]).betti().unwrap().shifted(-1));

    let e = ext_module(2, &quotient(&r, &["x^2", "x*y"])).unwrap();
    assert_eq!(e.gens().degs, vec![-3]);
    assert_eq!(e.hilbert_series().unwrap().hf_range(-4, 0), vec![0, 1, 0, 0, 0]);
    assert!(ext_module(0, &quotient(&r, &["x^2", "x*y"])).unwrap().is_zero().unwrap());
}

#[test]
fn map_examples() {
    let r = ring(&["x", "y"]);
    let m = quotient(&r, &["x^2", "x*y"]);
    let id = ModuleMap::identity(&m);
    assert!(id.is_well_defined().unwrap());
    assert!(id.kernel().unwrap().is_zero().unwrap());
    assert!(id.cokernel().unwrap().is_zero().unwrap());
    assert!(id.is_iso().unwrap());

    let z = ModuleMap::zero(&m, &m);
    assert_eq!(z.kernel().unwrap().betti().unwrap(), m.betti().unwrap());
    assert!(z.image().unwrap().is_zero().unwrap());

    let src = GradedModule::free(&r, vec![1]);
    let tgt = GradedModule::free(&r, vec![0]);
    let mat = Matrix::new(src.gens().clone(), tgt.gens().clone(), vec![vec_of(&r, &["x"])]);
    let f = ModuleMap::new(src, tgt, mat).unwrap();
    assert!(f.kernel().unwrap().is_zero().unwrap());
    assert_eq!(f.cokernel().unwrap().betti().unwrap(), quotient(&r, &["x"]).betti().unwrap());
    assert!(!f.is_iso().unwrap());

    let rx = quotient(&r, &["x"]);
    let surj = ModuleMap::new(m.clone(), rx.clone(), Matrix::identity(m.gens(), &r)).unwrap();
    assert!(surj.is_well_defined().unwrap());
    assert!(!surj.is_iso().unwrap());
    assert!(surj.is_surjective().unwrap() && !surj.is_injective().unwrap());
    assert!(surj.cokernel().unwrap().is_zero().unwrap());
    let back = ModuleMap::new(rx.clone(), m.clone(), Matrix::identity(m.gens(), &r)).unwrap();
    assert!(!back.is_well_defined().unwrap());
}

#[test]
fn annihilators() {
    let r = ring(&["x", "y"]);
    let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
    let ann = GradedModule::cyclic(&i).unwrap().annihilator().unwrap();
    assert!(ann.equals(&i).unwrap());
    let free = GradedModule::free(&r, vec![0, 1]);
    assert!(free.annihilator().unwrap().is_zero());
    assert!(GradedModule::zero(&r).annihilator().unwrap().is_unit().unwrap());
}

#[test]
fn subquotient_examples() {
    let r = ring(&["x", "y"]);
    let amb = FreeModule::new(vec![2, 2]);
    let zc = vec_of(&r, &["y", "-x"]);
    let z = Matrix::new(FreeModule::new(vec![3]), amb.clone(), vec![zc.clone()]);
    let xz = zc.mul_poly(&r, &r.parse("x").unwrap());
    let s = subquotient(&r, &z, &[xz.clone()]).unwrap();
    assert_eq!(s.module.gens().degs, vec![3]);
    assert_eq!(s.module.betti().unwrap(), quotient(&r, &["x"]).betti().unwrap().shifted(3));
    assert_eq!(s.lifts.cols, vec![zc.clone()]);

    let s = subquotient(&r, &z, &[]).unwrap();
    assert!(s.module.relations().is_empty());

    let s = subquotient(&r, &z, &[zc.clone()]).unwrap();
    assert!(s.module.is_zero().unwrap());

    let outside = vec_of(&r, &["x", "0"]).mul_poly(&r, &r.parse("x").unwrap());
    assert_eq!(subquotient(&r, &z, &[outside]).unwrap_err(), Error::ContainmentFailure);
}

#[test]
fn betti_table_serde_round_trip() {
    let r = ring(&["x", "y"]);
    let b = quotient(&r, &["x^2", "x*y"]).betti().unwrap();
    let s = serde_json::to_string(&b).unwrap();
    assert_eq!(s, "[[0,0,1],[1,2,2],[2,3,1]]");
    let back: BettiTable = serde_json::from_str(&s).unwrap();
    assert_eq!(back, b);
}

fn arb_quotient() -> impl Strategy<Value = Vec<String>> {
    let mono = |d: u16| {
        (0..=d, 0..=d).prop_filter_map("degree", move |(a, b)| {
            (a + b <= d).then(|| format!("x^{a}*y^{b}*z^{}", d - a - b))
        })
    };
    let binomial = (2u16..4).prop_flat_map(move |d| (mono(d), mono(d), 0i64..5))
        .prop_map(|(a, b, c)| format!("{a} - {c}*{b}"));
    prop::collection::vec(binomial, 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_routes_and_map_exactness(gens in arb_quotient()) {
        let r = ring(&["x", "y", "z"]);
        let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
        let i = Ideal::parse(&r, &refs).unwrap();
        let m = GradedModule::cyclic(&i).unwrap().minimized().unwrap();
        let hs = m.hilbert_series().unwrap().clone();
        prop_assert_eq!(&hs, &m.initial_hilbert_series().unwrap());
        // multiplication by x on R/I: HF(source) = HF(ker) + HF(im), HF(target) = HF(im) + HF(coker)
        let src = m.shifted(1);
        let mat = Matrix::new(src.gens().clone(), m.gens().clone(), vec![vec_of(&r, &["x"]); m.rank()]);
        let f = ModuleMap::new(src.clone(), m.clone(), mat).unwrap();
        prop_assert!(f.is_well_defined().unwrap());
        let (k, im, ck) = (f.kernel().unwrap(), f.image().unwrap(), f.cokernel().unwrap());
        for d in 0..7 {
            prop_assert_eq!(src.hf(d).unwrap(), k.hf(d).unwrap() + im.hf(d).unwrap());
            prop_assert_eq!(m.hf(d).unwrap(), im.hf(d).unwrap() + ck.hf(d).unwrap());
        }
        prop_assert_eq!(f.is_injective().unwrap(), k.is_zero().unwrap());
        prop_assert_eq!(f.is_surjective().unwrap(), ck.is_zero().unwrap());
    }
}
