//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so the lines are
//! always printed.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use koszul_core::analysis::IdealAnalysis;
use koszul_core::corpus::{load_dir, run_corpus, IdealFile};
use koszul_core::groebner::Ideal;
use koszul_core::module::{ext_module, GradedModule};
use koszul_core::oracle::homology_hf_table;
use koszul_core::random::{random_ideals, Shape, DEFAULT_SEED};
use koszul_core::ring::{MonomialOrder, PolyRing};
use koszul_core::verify::{run, run_all, Detail, Params, Status, TheoremId};
use koszul_core::Result;

const ORACLE_DEGREE: i32 = 8;
const RANDOM_COUNT: usize = 50;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

struct Corpus {
    files: Vec<IdealFile>,
    analyses: Vec<IdealAnalysis>,
}

impl Corpus {
    fn load() -> Result<Self> {
        let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
        let files: Vec<IdealFile> = load_dir(&dir)?.into_iter().map(|(_, f)| f).collect();
        let analyses = files
            .iter()
            .map(|f| IdealAnalysis::new(&f.name, &f.ideal()?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Corpus { files, analyses })
    }

    fn get(&self, name: &str) -> &IdealAnalysis {
        self.analyses
            .iter()
            .find(|a| a.name() == name)
            .unwrap_or_else(|| panic!("corpus ideal {name} missing"))
    }
}

fn analysis(name: &str, vars: &[&str], gens: &[&str]) -> Result<IdealAnalysis> {
    let r = PolyRing::new(32003, vars, MonomialOrder::Grevlex)?;
    IdealAnalysis::new(name, &Ideal::parse(&r, gens)?)
}

fn acyclicity(_: &Corpus) -> Result<Outcome> {
    let cases = [
        analysis("(x,y)", &["x", "y"], &["x", "y"])?,
        analysis("(x,y,z)", &["x", "y", "z"], &["x", "y", "z"])?,
        analysis("(x^2,y^3)", &["x", "y"], &["x^2", "y^3"])?,
    ];
    let mut bad = Vec::new();
    for a in &cases {
        for i in 1..=a.len() {
            if !a.homology(i)?.is_zero()? {
                bad.push(format!("{} H_{i}", a.name()));
            }
        }
    }
    outcome(bad.is_empty(), format!("3 regular sequences, nonzero higher homology: {bad:?}"))
}

fn top_homology(c: &Corpus) -> Result<Outcome> {
    let mut bad = Vec::new();
    for a in &c.analyses {
        let top = a.homology(a.top())?;
        let ext = ext_module(a.grade(), &GradedModule::cyclic(a.ideal())?)?;
        let d = a.twist();
        let same_hs = *top.hilbert_series()? == ext.hilbert_series()?.shifted(d);
        let same_betti = top.betti()? == ext.betti()?.shifted(d);
        if !(same_hs && same_betti) {
            bad.push(a.name().to_string());
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} ideals, H_top vs Ext^g(R/I,R) twisted by sum of degrees, mismatches: {bad:?}", c.analyses.len()),
    )
}

fn statuses(c: &Corpus, id: TheoremId) -> Result<Vec<(String, Status)>> {
    c.analyses
        .iter()
        .map(|a| Ok((a.name().to_string(), run(a, id, Params::default())?.status)))
        .collect()
}

fn theorem_a(c: &Corpus) -> Result<Outcome> {
    let st = statuses(c, TheoremId::ThmA)?;
    let bad: Vec<_> = st.iter().filter(|(_, s)| *s != Status::Verified).collect();
    outcome(bad.is_empty() && st.len() == 7, format!("{} ideals verified, failures: {bad:?}", st.len() - bad.len()))
}

fn equivalence(a: &IdealAnalysis) -> Result<(bool, bool, Status)> {
    let r = run(a, TheoremId::PdEquiv, Params::default())?;
    let (phi, s2) = r
        .evidence
        .iter()
        .find_map(|e| match &e.detail {
            Detail::Equivalence { all_phi_iso, all_s2, .. } => Some((*all_phi_iso, *all_s2)),
            _ => None,
        })
        .expect("equivalence evidence");
    Ok((phi, s2, r.status))
}

fn poincare_s2(c: &Corpus) -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut non_s2 = 0;
    for a in &c.analyses {
        let (phi, s2, st) = equivalence(a)?;
        non_s2 += usize::from(!s2);
        if phi != s2 || st != Status::Verified {
            bad.push(a.name().to_string());
        }
    }
    let randoms = random_ideals(DEFAULT_SEED, RANDOM_COUNT, Shape::default())?;
    for (name, ideal) in &randoms {
        let a = IdealAnalysis::new(name, ideal)?;
        let (phi, s2, st) = equivalence(&a)?;
        non_s2 += usize::from(!s2);
        if phi != s2 || st != Status::Verified {
            bad.push(format!("{name} {ideal}"));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} corpus + {} random (seed {DEFAULT_SEED}), {non_s2} without S_2, disagreements: {bad:?}",
            c.analyses.len(),
            randoms.len()
        ),
    )
}

fn hand_instance(_: &Corpus) -> Result<Outcome> {
    let a = analysis("x2_xy", &["x", "y"], &["x^2", "x*y"])?;
    let r = a.ring().clone();
    let h1 = a.homology(1)?;
    let rx = GradedModule::cyclic(&Ideal::parse(&r, &["x"])?)?.shifted(3);
    let checks = [
        ("g = 1", a.grade() == 1),
        ("l = 2", a.len() == 2),
        ("H_1 generated in degree 3", h1.gens().degs == vec![3]),
        ("H_1 has the series of R/(x)(-3)", h1.hilbert_series()? == rx.hilbert_series()?),
        ("H_1 has the Betti table of R/(x)(-3)", h1.betti()? == rx.betti()?),
        ("ann H_1 = (x)", a.annihilator(1)?.equals(&Ideal::parse(&r, &["x"])?)?),
        ("phi_0 iso", a.phi_is_iso(0)?),
        ("phi_1 not iso", !a.phi_is_iso(1)?),
        ("SD_0 holds", a.sliding_depth(0)?.holds),
        ("SD_1 fails", !a.sliding_depth(1)?.holds),
    ];
    let bad: Vec<_> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    outcome(bad.is_empty(), format!("{} exact checks, failing: {bad:?}", checks.len()))
}

fn oracle(c: &Corpus) -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut compared = 0;
    for a in &c.analyses {
        let table = homology_hf_table(a.ring(), a.ideal().gens(), ORACLE_DEGREE)?;
        for (i, row) in table.iter().enumerate() {
            let hs = a.homology(i)?.hilbert_series()?;
            for (d, &v) in row.iter().enumerate() {
                compared += 1;
                if hs.hf(d as i32) != v {
                    bad.push(format!("{} H_{i} d={d}: oracle {v}, pipeline {}", a.name(), hs.hf(d as i32)));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{compared} values (d <= {ORACLE_DEGREE}), mismatches: {bad:?}"))
}

fn theorems_b_c(c: &Corpus) -> Result<Outcome> {
    let hold = ["ci2", "ci3", "art0", "hb1", "pf5"];
    let fail = ["nonscm1", "twoplanes"];
    let mut bad = Vec::new();
    for id in [TheoremId::ScmSh, TheoremId::SdhMain] {
        for (name, st) in statuses(c, id)? {
            let want = if hold.contains(&name.as_str()) {
                Status::Verified
            } else if fail.contains(&name.as_str()) {
                Status::HypothesesNotMet
            } else {
                continue;
            };
            if st != want {
                bad.push(format!("{id} {name}: {st}"));
            }
        }
    }
    let mut violations = Vec::new();
    for a in &c.analyses {
        for r in run_all(a, Params::default())? {
            if r.status == Status::Violation {
                violations.push(format!("{} {}", a.name(), r.id));
            }
        }
    }
    outcome(
        bad.is_empty() && violations.is_empty(),
        format!("SCM_S_H and SD_H_MAIN, unexpected: {bad:?}, violations: {violations:?}"),
    )
}

fn herzog_annihilators(c: &Corpus) -> Result<Outcome> {
    let a = c.get("art0");
    let t = a.top() as i64;
    let mut bad = Vec::new();
    for i in 0..=t {
        if !a.annihilator(i)?.equals(&a.annihilator(t - i)?)? {
            bad.push(i);
        }
    }
    outcome(bad.is_empty(), format!("art0, ann H_i = ann H_(top-i) for i = 0..={t}, failing i: {bad:?}"))
}

fn low_dimension(c: &Corpus) -> Result<Outcome> {
    let two = run(c.get("twoplanes"), TheoremId::Lowdim2, Params::default())?.status;
    let three = run(c.get("pf5"), TheoremId::Lowdim3, Params::default())?.status;
    let mut violations = Vec::new();
    for a in &c.analyses {
        for id in [TheoremId::Lowdim2, TheoremId::Lowdim3] {
            if run(a, id, Params::default())?.status == Status::Violation {
                violations.push(format!("{} {id}", a.name()));
            }
        }
    }
    outcome(
        two == Status::Verified && three == Status::Verified && violations.is_empty(),
        format!("twoplanes LOWDIM_2 {two}, pf5 LOWDIM_3 {three}, violations: {violations:?}"),
    )
}

fn determinism(c: &Corpus) -> Result<Outcome> {
    let once = || -> String {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool");
        pool.install(|| run_corpus(&c.files, Params::default()).to_json())
    };
    let (a, b) = (once(), once());
    outcome(a == b, format!("two single-thread corpus runs, {} and {} bytes", a.len(), b.len()))
}

type Criterion = (&'static str, fn(&Corpus) -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Koszul acyclicity", acyclicity),
        ("Top homology vs Ext^g(R/I,R)", top_homology),
        ("THM_A on every corpus ideal", theorem_a),
        ("Poincare duality <=> S_2", poincare_s2),
        ("Hand-checked (x^2, xy)", hand_instance),
        ("Oracle agreement", oracle),
        ("Theorems B and C statuses", theorems_b_c),
        ("Annihilator laws on art0", herzog_annihilators),
        ("Low-dimension propositions", low_dimension),
        ("Deterministic corpus JSON", determinism),
    ];
    let start = Instant::now();
    let corpus = match Corpus::load() {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL corpus could not be loaded: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = match f(&corpus) {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failures += usize::from(!pass);
        println!(
            "{} [{:>2}] {name}: {detail} ({:.2}s)",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        criteria.len() - failures,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
