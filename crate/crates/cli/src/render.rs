use std::fmt::Write;

use koszul_core::corpus::{ComputeReport, CorpusReport};
use koszul_core::verify::{Role, TheoremReport};

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

pub fn compute(r: &ComputeReport, homology: bool, invariants: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ideal  {}", r.ideal);
    let _ = writeln!(s, "ring   {}", r.ring);
    let _ = writeln!(s, "gens   {}", r.generators.join(", "));
    let _ = writeln!(
        s,
        "g = {}  l = {}  mu = {}  dim R/I = {}  twist = {}  strongly CM = {}",
        r.grade, r.length, r.mu, r.dim, r.twist, r.strongly_cohen_macaulay
    );
    for h in &r.homology {
        if h.zero {
            let _ = writeln!(s, "H_{} = 0", h.i);
            continue;
        }
        let _ = writeln!(s, "H_{}", h.i);
        if homology {
            let degs: Vec<String> = h.generator_degrees.iter().map(|d| d.to_string()).collect();
            let hf: Vec<String> = h.hf.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "  generator degrees  {}", degs.join(" "));
            let _ = writeln!(s, "  hilbert series     {}", h.hilbert_series);
            let _ = writeln!(s, "  hf                 {}", hf.join(" "));
            for line in h.betti.to_string().lines() {
                let _ = writeln!(s, "  {line}");
            }
        }
        if invariants {
            let _ = writeln!(
                s,
                "  dim {}  depth {}  CM {}  serre {}",
                opt(h.dim),
                opt(h.depth),
                h.cohen_macaulay,
                h.serre
            );
            let _ = writeln!(s, "  ann {}", h.annihilator);
        }
    }
    s
}

pub fn theorem(t: &TheoremReport) -> String {
    let mut s = String::new();
    let mut params = String::new();
    if let Some(h) = t.h {
        let _ = write!(params, " h={h}");
    }
    if let Some(j) = t.j {
        let _ = write!(params, " j={j}");
    }
    let _ = writeln!(s, "{:<10} {}{}  {}", t.id.name(), t.ideal, params, t.status);
    for role in [Role::Hypothesis, Role::Conclusion] {
        for e in t.failing(role) {
            let at = e.i.map(|i| format!(" i={i}")).unwrap_or_default();
            let detail = serde_json::to_string(&e.detail).unwrap_or_default();
            let _ = writeln!(s, "  failed {role:?}{at}: {detail}");
        }
    }
    s
}

pub fn summary(r: &CorpusReport) -> String {
    let mut s = String::new();
    for row in r.rows() {
        let _ = writeln!(s, "{:<16} {:<10} {}", row.ideal, row.theorem.name(), row.status);
    }
    for i in &r.ideals {
        if let Some(e) = &i.error {
            let _ = writeln!(s, "{:<16} error: {e}", i.ideal);
        }
        for g in &i.regressions {
            let _ = writeln!(
                s,
                "{:<16} regression {}: expected {}, got {}",
                i.ideal, g.key, g.expected, g.actual
            );
        }
    }
    let _ = writeln!(
        s,
        "{} ideals, {} violations, {} regressions, {} errors",
        r.ideals.len(),
        r.violation_count(),
        r.regression_count(),
        r.error_count()
    );
    s
}
