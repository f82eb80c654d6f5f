use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::invariants::{LocalMuBound, SlidingDepth};
use crate::module::{BettiTable, HilbertSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "THM_A")]
    ThmA,
    #[serde(rename = "HERZOG")]
    Herzog,
    #[serde(rename = "PD_EQUIV")]
    PdEquiv,
    #[serde(rename = "SCM_S_H")]
    ScmSh,
    #[serde(rename = "SD_H_MAIN")]
    SdhMain,
    #[serde(rename = "SD_H_J0")]
    SdhJ0,
    #[serde(rename = "SD_H_J1")]
    SdhJ1,
    #[serde(rename = "LOWDIM_2")]
    Lowdim2,
    #[serde(rename = "LOWDIM_3")]
    Lowdim3,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::ThmA,
        TheoremId::Herzog,
        TheoremId::PdEquiv,
        TheoremId::ScmSh,
        TheoremId::SdhMain,
        TheoremId::SdhJ0,
        TheoremId::SdhJ1,
        TheoremId::Lowdim2,
        TheoremId::Lowdim3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::ThmA => "THM_A",
            TheoremId::Herzog => "HERZOG",
            TheoremId::PdEquiv => "PD_EQUIV",
            TheoremId::ScmSh => "SCM_S_H",
            TheoremId::SdhMain => "SD_H_MAIN",
            TheoremId::SdhJ0 => "SD_H_J0",
            TheoremId::SdhJ1 => "SD_H_J1",
            TheoremId::Lowdim2 => "LOWDIM_2",
            TheoremId::Lowdim3 => "LOWDIM_3",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theorem id {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "hypotheses_not_met")]
    HypothesesNotMet,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::HypothesesNotMet => "hypotheses_not_met",
            Status::Violation => "VIOLATION",
        })
    }
}

/// One recorded fact. `role` says whether it fed the hypothesis test, the
/// conclusion test, or is informational only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub role: Role,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<i64>,
    pub holds: bool,
    #[serde(flatten)]
    pub detail: Detail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Hypothesis,
    Conclusion,
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Detail {
    /// Isomorphism-invariant comparison of two modules.
    Comparison {
        left: String,
        right: String,
        left_hilbert: HilbertSeries,
        right_hilbert: HilbertSeries,
        left_betti: BettiTable,
        right_betti: BettiTable,
    },
    MapIso {
        map: String,
        injective: bool,
        surjective: bool,
    },
    CohenMacaulay {
        depth: Option<usize>,
        dim: Option<usize>,
    },
    Serre {
        s: usize,
    },
    PositiveDepth {
        depth: Option<usize>,
    },
    IdealRelation {
        relation: String,
        left: String,
        right: String,
    },
    LocalMuBound {
        j: i64,
        result: LocalMuBound,
    },
    SlidingDepth {
        h: i64,
        result: SlidingDepth,
    },
    Equivalence {
        all_phi_iso: bool,
        all_s2: bool,
        phi_failures: Vec<usize>,
        s2_failures: Vec<usize>,
    },
    Dimension {
        dim: usize,
        required: Vec<usize>,
    },
    Note {
        text: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub id: TheoremId,
    pub ideal: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<i64>,
    pub evidence: Vec<Evidence>,
}

impl TheoremReport {
    pub fn failing(&self, role: Role) -> impl Iterator<Item = &Evidence> {
        self.evidence.iter().filter(move |e| e.role == role && !e.holds)
    }
}
