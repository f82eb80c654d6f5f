//! One checker per duality or Cohen-Macaulayness result. Each checker
//! tests its hypotheses, then its conclusion, and returns a report.

mod report;

pub use report::{Detail, Evidence, Role, Status, TheoremId, TheoremReport};

use crate::analysis::IdealAnalysis;
use crate::error::Result;
use crate::groebner::Ideal;
use crate::module::{precomposition, GradedModule};

/// Optional parameters; `None` selects them automatically from the ideal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub h: Option<i64>,
    pub j: Option<i64>,
}

struct Builder {
    evidence: Vec<Evidence>,
}

impl Builder {
    fn new() -> Self {
        Builder { evidence: Vec::new() }
    }

    fn push(&mut self, role: Role, i: Option<i64>, holds: bool, detail: Detail) -> bool {
        self.evidence.push(Evidence { role, i, holds, detail });
        holds
    }

    fn hypotheses_hold(&self) -> bool {
        self.evidence.iter().all(|e| e.role != Role::Hypothesis || e.holds)
    }

    fn finish(self, id: TheoremId, a: &IdealAnalysis, h: Option<i64>, j: Option<i64>) -> TheoremReport {
        let status = if !self.hypotheses_hold() {
            Status::HypothesesNotMet
        } else if self.evidence.iter().any(|e| e.role == Role::Conclusion && !e.holds) {
            Status::Violation
        } else {
            Status::Verified
        };
        TheoremReport {
            id,
            ideal: a.name().to_string(),
            status,
            h,
            j,
            evidence: self.evidence,
        }
    }
}

fn comparison(
    left_name: String,
    left: &GradedModule,
    shift: i32,
    right_name: String,
    right: &GradedModule,
) -> Result<(bool, Detail)> {
    let lh = left.hilbert_series()?.shifted(shift);
    let lb = left.betti()?.shifted(shift);
    let rh = right.hilbert_series()?.clone();
    let rb = right.betti()?;
    let holds = lh == rh && lb == rb;
    Ok((
        holds,
        Detail::Comparison {
            left: left_name,
            right: right_name,
            left_hilbert: lh,
            right_hilbert: rh,
            left_betti: lb,
            right_betti: rb,
        },
    ))
}

fn cm_detail(a: &IdealAnalysis, i: i64) -> Result<Detail> {
    let (depth, dim) = match (i >= 0 && i as usize <= a.len()).then(|| i as usize) {
        Some(k) => {
            let p = a.profile(k)?;
            (p.depth, p.dim)
        }
        None => (None, None),
    };
    Ok(Detail::CohenMacaulay { depth, dim })
}

fn ideal_text(i: &Ideal) -> String {
    if i.is_zero() {
        "(0)".into()
    } else {
        i.to_string()
    }
}

/// `Hom(Hom(H_i, H_top), H_top)` against `Hom(H_{top-i}, H_top)` for every
/// `i`; the dual of `φ_i` is recorded as informational.
pub fn verify_theorem_a(a: &IdealAnalysis) -> Result<TheoremReport> {
    let t = a.top();
    let mut b = Builder::new();
    for i in 0..=t {
        let left = a.double_hom(i)?;
        let right = a.hom_into_top(t - i)?;
        let (holds, detail) = comparison(
            format!("Hom(Hom(H_{i}, H_{t}), H_{t})"),
            &left.module,
            0,
            format!("Hom(H_{}, H_{t})", t - i),
            &right.module,
        )?;
        b.push(Role::Conclusion, Some(i as i64), holds, detail);
        let dual = precomposition(&a.phi(i)?.map, left, right)?;
        let injective = dual.is_injective()?;
        let surjective = dual.is_surjective()?;
        b.push(
            Role::Informational,
            Some(i as i64),
            injective && surjective,
            Detail::MapIso {
                map: format!("Hom(φ_{i}, H_{t})"),
                injective,
                surjective,
            },
        );
    }
    Ok(b.finish(TheoremId::ThmA, a, None, None))
}

/// If `H_0..H_h` are Cohen-Macaulay: `Ext^g(H_i, R) ≅ H_{top-i}` for
/// `i <= h+1`, `H_{top-i}` is Cohen-Macaulay and the annihilators agree
/// for `i <= h`, and `ann H_{h+1} ⊆ ann H_{top-h-1}`.
pub fn verify_herzog(a: &IdealAnalysis, h: i64) -> Result<TheoremReport> {
    let t = a.top() as i64;
    let mut b = Builder::new();
    for i in 0..=h.min(t) {
        let holds = a.is_cm(i)?;
        b.push(Role::Hypothesis, Some(i), holds, cm_detail(a, i)?);
    }
    if b.hypotheses_hold() {
        for i in 0..=(h + 1).min(t) {
            let (holds, detail) = comparison(
                format!("Ext^{}(H_{i}, R)({})", a.grade(), -a.twist()),
                a.ext_g(i as usize)?,
                a.twist(),
                format!("H_{}", t - i),
                a.homology((t - i) as usize)?,
            )?;
            b.push(Role::Conclusion, Some(i), holds, detail);
        }
        for i in 0..=h.min(t) {
            let holds = a.is_cm(t - i)?;
            b.push(Role::Conclusion, Some(t - i), holds, cm_detail(a, t - i)?);
            let (l, r) = (a.annihilator(i)?, a.annihilator(t - i)?);
            let holds = l.equals(&r)?;
            b.push(
                Role::Conclusion,
                Some(i),
                holds,
                Detail::IdealRelation {
                    relation: format!("ann H_{i} = ann H_{}", t - i),
                    left: ideal_text(&l),
                    right: ideal_text(&r),
                },
            );
        }
        if h + 1 <= t {
            let (l, r) = (a.annihilator(h + 1)?, a.annihilator(t - h - 1)?);
            let holds = l.is_subset_of(&r)?;
            b.push(
                Role::Conclusion,
                Some(h + 1),
                holds,
                Detail::IdealRelation {
                    relation: format!("ann H_{} ⊆ ann H_{}", h + 1, t - h - 1),
                    left: ideal_text(&l),
                    right: ideal_text(&r),
                },
            );
        }
    }
    Ok(b.finish(TheoremId::Herzog, a, Some(h), None))
}

/// All `φ_i` are isomorphisms exactly when every `H_i` satisfies `S_2`.
pub fn poincare_status(a: &IdealAnalysis) -> Result<TheoremReport> {
    let t = a.top();
    let mut b = Builder::new();
    let mut phi_failures = Vec::new();
    let mut s2_failures = Vec::new();
    for i in 0..=t {
        let map = &a.phi(i)?.map;
        let iso = a.phi_is_iso(i)?;
        let injective = iso || map.is_injective()?;
        let surjective = iso || map.is_surjective()?;
        if !iso {
            phi_failures.push(i);
        }
        b.push(
            Role::Informational,
            Some(i as i64),
            iso,
            Detail::MapIso {
                map: format!("φ_{i}: H_{} → Hom(H_{i}, H_{t})", t - i),
                injective,
                surjective,
            },
        );
        let s2 = a.satisfies_serre(i as i64, 2)?;
        if !s2 {
            s2_failures.push(i);
        }
        b.push(Role::Informational, Some(i as i64), s2, Detail::Serre { s: 2 });
    }
    let all_phi_iso = phi_failures.is_empty();
    let all_s2 = s2_failures.is_empty();
    b.push(
        Role::Conclusion,
        None,
        all_phi_iso == all_s2,
        Detail::Equivalence {
            all_phi_iso,
            all_s2,
            phi_failures,
            s2_failures,
        },
    );
    Ok(b.finish(TheoremId::PdEquiv, a, None, None))
}

/// `S_h` for all `H_i` with `h = max(2, ⌈dim R/I / 2⌉)` forces every `H_i`
/// to be Cohen-Macaulay.
pub fn verify_scm_criterion(a: &IdealAnalysis) -> Result<TheoremReport> {
    let h = 2.max(a.dim().div_ceil(2));
    let t = a.top() as i64;
    let mut b = Builder::new();
    for i in 0..=t {
        let holds = a.satisfies_serre(i, h)?;
        b.push(Role::Hypothesis, Some(i), holds, Detail::Serre { s: h });
    }
    if b.hypotheses_hold() {
        for i in 0..=t {
            let holds = a.is_cm(i)?;
            b.push(Role::Conclusion, Some(i), holds, cm_detail(a, i)?);
        }
    }
    Ok(b.finish(TheoremId::ScmSh, a, Some(h as i64), None))
}

/// `h = ⌈(j+1)/2⌉`.
pub fn sliding_h(j: i64) -> i64 {
    (j + 2).div_euclid(2)
}

/// Local generator bound at level `j`, `SD_h`, and `S_2` for the indices
/// the variant requires, force strong Cohen-Macaulayness.
pub fn verify_sliding_depth(a: &IdealAnalysis, id: TheoremId, j: i64) -> Result<TheoremReport> {
    let t = a.top() as i64;
    let h = sliding_h(j);
    let s2_indices: Vec<i64> = match id {
        TheoremId::SdhJ0 => vec![0],
        TheoremId::SdhJ1 => vec![0, 1],
        _ => (0..=t).collect(),
    };
    let mut b = Builder::new();
    let mu = a.local_mu_bound(j)?;
    let mu_holds = b.push(Role::Hypothesis, None, mu.holds, Detail::LocalMuBound { j, result: mu });
    let sd = a.sliding_depth(h)?;
    let sd_holds = b.push(Role::Hypothesis, None, sd.holds, Detail::SlidingDepth { h, result: sd });
    for &i in &s2_indices {
        let holds = a.satisfies_serre(i, 2)?;
        b.push(Role::Hypothesis, Some(i), holds, Detail::Serre { s: 2 });
    }
    if mu_holds && sd_holds {
        // (a) and (b) alone already give S_2 from ⌊(j+1)/2⌋ + 1 on.
        for i in ((j + 1).div_euclid(2) + 1)..=t {
            let holds = a.satisfies_serre(i, 2)?;
            b.push(Role::Informational, Some(i), holds, Detail::Serre { s: 2 });
        }
    }
    if b.hypotheses_hold() {
        for i in 0..=t {
            let holds = a.is_cm(i)?;
            b.push(Role::Conclusion, Some(i), holds, cm_detail(a, i)?);
        }
    }
    Ok(b.finish(id, a, Some(h), Some(j)))
}

/// Consequences of the spectral sequence having few rows when
/// `dim R/I` is 2 or 3.
pub fn verify_lowdim(a: &IdealAnalysis, dim: usize) -> Result<TheoremReport> {
    let id = if dim == 2 { TheoremId::Lowdim2 } else { TheoremId::Lowdim3 };
    let mut b = Builder::new();
    let ok = b.push(
        Role::Hypothesis,
        None,
        a.dim() == dim,
        Detail::Dimension {
            dim: a.dim(),
            required: vec![dim],
        },
    );
    if ok {
        let t = a.top() as i64;
        for i in 0..=t {
            let premise = if dim == 2 {
                a.is_cm(t - i - 1)? && (a.has_positive_depth(i)? || a.has_positive_depth(t - i - 2)?)
            } else {
                a.satisfies_serre(t - i - 1, 2)?
                    && a.satisfies_serre(t - i - 2, 2)?
                    && a.has_positive_depth(i)?
                    && a.has_positive_depth(i - 1)?
            };
            if premise {
                let holds = a.is_cm(i)?;
                b.push(Role::Conclusion, Some(i), holds, cm_detail(a, i)?);
            } else {
                b.push(
                    Role::Informational,
                    Some(i),
                    false,
                    Detail::Note {
                        text: format!("premise for H_{i} not met"),
                    },
                );
            }
        }
    }
    Ok(b.finish(id, a, None, None))
}

/// Runs one checker, choosing `h` and `j` automatically when absent: `h`
/// is the largest index with `H_0..H_h` Cohen-Macaulay, and `j` the least
/// level at which the local generator bound holds.
pub fn run(a: &IdealAnalysis, id: TheoremId, params: Params) -> Result<TheoremReport> {
    match id {
        TheoremId::ThmA => verify_theorem_a(a),
        TheoremId::Herzog => {
            let h = match params.h {
                Some(h) => h,
                None => a.cm_prefix()?.map_or(0, |h| h as i64),
            };
            verify_herzog(a, h)
        }
        TheoremId::PdEquiv => poincare_status(a),
        TheoremId::ScmSh => verify_scm_criterion(a),
        TheoremId::SdhMain => {
            let j = match params.j {
                Some(j) => j,
                None => a.minimal_mu_slack()?,
            };
            verify_sliding_depth(a, id, j)
        }
        TheoremId::SdhJ0 => verify_sliding_depth(a, id, 0),
        TheoremId::SdhJ1 => verify_sliding_depth(a, id, 1),
        TheoremId::Lowdim2 => verify_lowdim(a, 2),
        TheoremId::Lowdim3 => verify_lowdim(a, 3),
    }
}

pub fn run_all(a: &IdealAnalysis, params: Params) -> Result<Vec<TheoremReport>> {
    TheoremId::ALL.iter().map(|&id| run(a, id, params)).collect()
}
