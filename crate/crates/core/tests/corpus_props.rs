//! Consequences and consistency properties checked on every corpus ideal.

use std::path::PathBuf;

use koszul_core::analysis::IdealAnalysis;
use koszul_core::corpus::{load_dir, run_file, IdealReport};
use koszul_core::invariants::ext_dims;
use koszul_core::module::GradedModule;
use koszul_core::verify::{run, sliding_h, Params, Status, TheoremId, TheoremReport};

fn corpus() -> Vec<IdealAnalysis> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    load_dir(&dir)
        .unwrap()
        .into_iter()
        .filter(|(_, f)| f.name != "pf5")
        .map(|(_, f)| IdealAnalysis::new(&f.name, &f.ideal().unwrap()).unwrap())
        .collect()
}

#[test]
fn cycles_depth_follows_the_boundary_sequences() {
    for a in corpus() {
        let d = a.nvars() as i64;
        let l = a.len();
        let z: Vec<Option<i64>> = (0..=l).map(|i| a.cycles_depth(i).unwrap().map(|x| x as i64)).collect();
        for i in 0..l {
            let Some(depth) = z[i] else { continue };
            let mut bound = d;
            if let Some(next) = z[i + 1] {
                bound = bound.min(next - 1);
            }
            if let Some(h) = a.depth(i as i64).unwrap() {
                bound = bound.min(h as i64);
            }
            assert!(depth >= bound, "{} Z_{i}: depth {depth} < {bound}", a.name());
        }
    }
}

#[test]
fn cycles_depth_under_sliding_depth() {
    for a in corpus() {
        let (d, l, g) = (a.nvars() as i64, a.len() as i64, a.grade() as i64);
        for h in 0..=l {
            if !a.sliding_depth(h).unwrap().holds {
                continue;
            }
            for i in 1..=a.len() {
                let Some(depth) = a.cycles_depth(i).unwrap() else { continue };
                let i = i as i64;
                let mut bound = d.min(d - l + i + 1);
                for k in i..=(l - g) {
                    bound = bound.min((d - g).min(d - l + k + h) - (k - i));
                }
                assert!(depth as i64 >= bound, "{} h={h} Z_{i}: depth {depth} < {bound}", a.name());
            }
        }
    }
}

#[test]
fn cycles_depth_can_fall_below_the_naive_bound() {
    let a = corpus().into_iter().find(|a| a.name() == "ci3").unwrap();
    assert!(a.sliding_depth(1).unwrap().holds);
    assert_eq!(a.cycles_depth(1).unwrap(), Some(2));
}

#[test]
fn mu_bound_and_sliding_depth_give_s2() {
    for a in corpus() {
        for j in -1..=a.len() as i64 {
            let h = sliding_h(j);
            if !(a.local_mu_bound(j).unwrap().holds && a.sliding_depth(h).unwrap().holds) {
                continue;
            }
            for i in ((j + 1).div_euclid(2) + 1)..=a.top() as i64 {
                assert!(a.satisfies_serre(i, 2).unwrap(), "{} j={j} H_{i}", a.name());
            }
        }
    }
}

#[test]
fn grade_routes_agree() {
    for a in corpus() {
        let n = a.nvars();
        let dim = a.ideal().quotient_dim().unwrap().unwrap();
        assert_eq!(a.grade(), n - dim, "{}", a.name());
        let ext = ext_dims(&GradedModule::cyclic(a.ideal()).unwrap()).unwrap();
        let first = ext.iter().position(|e| e.is_some()).unwrap();
        assert_eq!(a.grade(), first, "{}", a.name());
    }
}

#[test]
fn nonzero_homology_has_the_dimension_of_the_quotient() {
    for a in corpus() {
        for i in 0..=a.len() {
            let p = a.profile(i).unwrap();
            if !a.is_zero(i as i64).unwrap() {
                assert_eq!(p.dim, Some(a.dim()), "{} H_{i}", a.name());
            } else {
                assert!(i > a.top(), "{} H_{i} vanishes inside the range", a.name());
            }
        }
    }
}

#[test]
fn strongly_cm_gives_poincare_duality() {
    for a in corpus() {
        let scm = run(&a, TheoremId::ScmSh, Params::default()).unwrap();
        if scm.status != Status::Verified {
            continue;
        }
        for i in 0..=a.top() {
            assert!(a.phi_is_iso(i).unwrap(), "{} phi_{i}", a.name());
            assert!(a.satisfies_serre(i as i64, 2).unwrap(), "{} H_{i}", a.name());
        }
    }
}

#[test]
fn reports_round_trip_through_json() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    for (_, f) in load_dir(&dir).unwrap().into_iter().filter(|(_, f)| f.name != "pf5") {
        let rep = run_file(&f, &[], Params::default());
        assert!(rep.is_clean(), "{rep:?}");
        let text = serde_json::to_string(&rep).unwrap();
        let back: IdealReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
        for t in &rep.theorems {
            let one: TheoremReport = serde_json::from_str(&serde_json::to_string(t).unwrap()).unwrap();
            assert_eq!(&one, t);
        }
    }
}
