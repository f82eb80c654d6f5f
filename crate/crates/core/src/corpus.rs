//! Line-oriented ideal files, expected-value regression and JSON reports.
//!
//! ```text
//! # comment
//! name nonscm1
//! field 32003
//! vars x y
//! order grevlex
//! gens x^2, x*y
//! expect g=1
//! expect hf.1=0,0,0,1,1,1
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::analysis::IdealAnalysis;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::invariants::SerreLevel;
use crate::module::BettiTable;
use crate::ring::{MonomialOrder, PolyRing, DEFAULT_PRIME};
use crate::verify::{self, Params, Status, TheoremId, TheoremReport};

pub const EXTENSION: &str = "kz";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFile {
    pub name: String,
    pub field: u32,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub gens: Vec<String>,
    pub expected: BTreeMap<String, String>,
    gens_line: usize,
}

fn file_error(line: usize, message: impl Into<String>) -> Error {
    Error::IdealFile {
        line,
        message: message.into(),
    }
}

fn check_expect_key(key: &str) -> bool {
    match key.split_once('.') {
        None => matches!(key, "g" | "l" | "mu" | "dim" | "scm"),
        Some((head, idx)) => matches!(head, "depth" | "hf") && idx.parse::<usize>().is_ok(),
    }
}

impl IdealFile {
    /// Parses the text of a file. `default_name` is used when there is no
    /// `name` line.
    pub fn parse(text: &str, default_name: Option<&str>) -> Result<Self> {
        let mut name = None;
        let mut field = None;
        let mut vars = None;
        let mut order = None;
        let mut gens = None;
        let mut expected = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap().trim();
            if body.is_empty() {
                continue;
            }
            let (key, rest) = match body.split_once(char::is_whitespace) {
                Some((a, b)) => (a, b.trim()),
                None => (body, ""),
            };
            let once = |seen: bool| {
                if seen {
                    Err(file_error(line, format!("duplicate '{key}' line")))
                } else {
                    Ok(())
                }
            };
            match key {
                "name" => {
                    once(name.is_some())?;
                    if rest.is_empty() || rest.contains(char::is_whitespace) {
                        return Err(file_error(line, "name must be a single word"));
                    }
                    name = Some(rest.to_string());
                }
                "field" => {
                    once(field.is_some())?;
                    let p: u32 = rest
                        .parse()
                        .map_err(|_| file_error(line, format!("bad modulus '{rest}'")))?;
                    crate::ring::PrimeField::new(p).map_err(|e| file_error(line, e.to_string()))?;
                    field = Some(p);
                }
                "vars" => {
                    once(vars.is_some())?;
                    let v: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    if v.is_empty() {
                        return Err(file_error(line, "no variables"));
                    }
                    vars = Some(v);
                }
                "order" => {
                    once(order.is_some())?;
                    order = Some(
                        MonomialOrder::parse(rest)
                            .ok_or_else(|| file_error(line, format!("unknown order '{rest}'")))?,
                    );
                }
                "gens" => {
                    once(gens.is_some())?;
                    let g: Vec<String> = rest
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .filter(|s| !s.is_empty())
                        .collect();
                    if g.is_empty() {
                        return Err(file_error(line, "no generators"));
                    }
                    gens = Some((g, line));
                }
                "expect" => {
                    let (k, v) = rest
                        .split_once('=')
                        .ok_or_else(|| file_error(line, "expected 'expect key=value'"))?;
                    let (k, v) = (k.trim(), v.trim());
                    if !check_expect_key(k) {
                        return Err(file_error(line, format!("unknown expectation '{k}'")));
                    }
                    if expected.insert(k.to_string(), v.to_string()).is_some() {
                        return Err(file_error(line, format!("duplicate expectation '{k}'")));
                    }
                }
                other => return Err(file_error(line, format!("unknown directive '{other}'"))),
            }
        }
        let last = text.lines().count().max(1);
        let name = name
            .or_else(|| default_name.map(String::from))
            .ok_or_else(|| file_error(last, "missing 'name' line"))?;
        let (gens, gens_line) = gens.ok_or_else(|| file_error(last, "missing 'gens' line"))?;
        let file = IdealFile {
            name,
            field: field.unwrap_or(DEFAULT_PRIME),
            vars: vars.ok_or_else(|| file_error(last, "missing 'vars' line"))?,
            order: order.unwrap_or(MonomialOrder::Grevlex),
            gens,
            expected,
            gens_line,
        };
        file.ideal()?;
        Ok(file)
    }

    /// Reads a file; the name defaults to the file stem.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| file_error(0, format!("{}: {e}", path.display())))?;
        let stem = path.file_stem().and_then(|s| s.to_str());
        IdealFile::parse(&text, stem)
    }

    pub fn from_ideal(name: &str, ideal: &Ideal) -> Self {
        let ring = ideal.ring();
        IdealFile {
            name: name.to_string(),
            field: ring.field().modulus(),
            vars: ring.var_names().to_vec(),
            order: ring.order(),
            gens: ideal.gens().iter().map(|g| ring.display(g).to_string()).collect(),
            expected: BTreeMap::new(),
            gens_line: 0,
        }
    }

    pub fn ring(&self) -> Result<Arc<PolyRing>> {
        PolyRing::from_names(self.field, self.vars.clone(), self.order)
    }

    pub fn ideal(&self) -> Result<Ideal> {
        let ring = self.ring().map_err(|e| file_error(0, e.to_string()))?;
        let mut polys = Vec::new();
        for g in &self.gens {
            let p = ring
                .parse(g)
                .map_err(|e| file_error(self.gens_line, format!("in '{g}': {e}")))?;
            if p.homogeneous_degree().is_none() && !p.is_zero() {
                return Err(file_error(self.gens_line, format!("'{g}' is not homogeneous")));
            }
            polys.push(p);
        }
        Ideal::new(&ring, polys).map_err(|e| file_error(self.gens_line, e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "name {}", self.name);
        let _ = writeln!(s, "field {}", self.field);
        let _ = writeln!(s, "vars {}", self.vars.join(" "));
        let _ = writeln!(s, "order {}", self.order.name());
        let _ = writeln!(s, "gens {}", self.gens.join(", "));
        for (k, v) in &self.expected {
            let _ = writeln!(s, "expect {k}={v}");
        }
        s
    }
}

/// Every `*.kz` file in `dir`, sorted by name. Names must be unique.
pub fn load_dir(dir: &Path) -> Result<Vec<(PathBuf, IdealFile)>> {
    let entries = std::fs::read_dir(dir).map_err(|e| file_error(0, format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().and_then(|e| e.to_str()) == Some(EXTENSION))
        .collect();
    paths.sort();
    let mut files = Vec::new();
    let mut seen: BTreeMap<String, PathBuf> = BTreeMap::new();
    for p in paths {
        let f = IdealFile::load(&p).map_err(|e| match e {
            Error::IdealFile { line, message } => file_error(line, format!("{}: {message}", p.display())),
            other => other,
        })?;
        if let Some(prev) = seen.insert(f.name.clone(), p.clone()) {
            return Err(file_error(
                0,
                format!("name '{}' used by both {} and {}", f.name, prev.display(), p.display()),
            ));
        }
        files.push((p, f));
    }
    files.sort_by(|a, b| a.1.name.cmp(&b.1.name));
    Ok(files)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyInfo {
    pub i: usize,
    pub zero: bool,
    pub generator_degrees: Vec<i32>,
    pub hilbert_series: String,
    pub hf: Vec<i64>,
    pub betti: BettiTable,
    pub dim: Option<usize>,
    pub depth: Option<usize>,
    pub cohen_macaulay: bool,
    pub serre: SerreLevel,
    pub annihilator: String,
}

/// Everything `compute` reports about one ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeReport {
    pub ideal: String,
    pub ring: String,
    pub generators: Vec<String>,
    pub grade: usize,
    pub length: usize,
    pub mu: usize,
    pub dim: usize,
    pub twist: i32,
    pub strongly_cohen_macaulay: bool,
    pub homology: Vec<HomologyInfo>,
}

pub const HF_DEGREES: i32 = 8;

pub fn compute_report(a: &IdealAnalysis) -> Result<ComputeReport> {
    let ring = a.ring();
    let mut homology = Vec::new();
    for i in 0..=a.len() {
        let m = a.homology(i)?;
        let p = a.profile(i)?;
        homology.push(HomologyInfo {
            i,
            zero: m.is_zero()?,
            generator_degrees: m.gens().degs.clone(),
            hilbert_series: m.hilbert_series()?.format(),
            hf: m.hilbert_series()?.hf_range(0, HF_DEGREES),
            betti: m.betti()?,
            dim: p.dim,
            depth: p.depth,
            cohen_macaulay: p.is_cm,
            serre: p.serre_level,
            annihilator: a.annihilator(i as i64)?.to_string(),
        });
    }
    let scm = homology.iter().all(|h| h.cohen_macaulay);
    Ok(ComputeReport {
        ideal: a.name().to_string(),
        ring: ring.describe(),
        generators: a.ideal().gens().iter().map(|g| ring.display(g).to_string()).collect(),
        grade: a.grade(),
        length: a.len(),
        mu: a.len(),
        dim: a.dim(),
        twist: a.twist(),
        strongly_cohen_macaulay: scm,
        homology,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regression {
    pub key: String,
    pub expected: String,
    pub actual: String,
}

fn list(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Value of an expectation key on the analysed ideal, in file syntax.
pub fn actual_value(a: &IdealAnalysis, key: &str) -> Result<String> {
    Ok(match key.split_once('.') {
        None => match key {
            "g" => a.grade().to_string(),
            "l" | "mu" => a.len().to_string(),
            "dim" => a.dim().to_string(),
            "scm" => (0..=a.len() as i64)
                .map(|i| a.is_cm(i))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .all(|&b| b)
                .to_string(),
            _ => return Err(Error::Internal(format!("unknown key {key}"))),
        },
        Some((head, idx)) => {
            let i: i64 = idx.parse().map_err(|_| Error::Internal(format!("bad key {key}")))?;
            match head {
                "depth" => a.depth(i)?.map_or("none".into(), |d| d.to_string()),
                "hf" => {
                    let m = a.homology_at(i)?;
                    list(&m.hilbert_series()?.hf_range(0, HF_DEGREES))
                }
                _ => return Err(Error::Internal(format!("unknown key {key}"))),
            }
        }
    })
}

/// Compares every `expect` line with the computed value. For `hf.i` the
/// number of listed values decides how many degrees are compared.
pub fn check_expectations(file: &IdealFile, a: &IdealAnalysis) -> Result<Vec<Regression>> {
    let mut out = Vec::new();
    for (key, want) in &file.expected {
        let got = if let Some(idx) = key.strip_prefix("hf.") {
            let i: i64 = idx.parse().unwrap();
            let n = want.split(',').count() as i32;
            let hs = a.homology_at(i)?.hilbert_series()?.clone();
            list(&hs.hf_range(0, n - 1))
        } else {
            actual_value(a, key)?
        };
        let normalized: String = want.split(',').map(str::trim).collect::<Vec<_>>().join(",");
        if got != normalized {
            out.push(Regression {
                key: key.clone(),
                expected: want.clone(),
                actual: got,
            });
        }
    }
    Ok(out)
}

/// JSON report for one ideal: `{ideal, ring, theorems: [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealReport {
    pub ideal: String,
    pub ring: String,
    pub theorems: Vec<TheoremReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regressions: Vec<Regression>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl IdealReport {
    pub fn violations(&self) -> impl Iterator<Item = &TheoremReport> {
        self.theorems.iter().filter(|t| t.status == Status::Violation)
    }

    pub fn is_clean(&self) -> bool {
        self.error.is_none() && self.regressions.is_empty() && self.violations().next().is_none()
    }
}

/// Runs the selected checkers (all when `ids` is empty) and the
/// expectation checks on one file.
pub fn run_file(file: &IdealFile, ids: &[TheoremId], params: Params) -> IdealReport {
    let ring = file.ring().map(|r| r.describe()).unwrap_or_default();
    let attempt = || -> Result<(Vec<TheoremReport>, Vec<Regression>)> {
        let a = IdealAnalysis::new(&file.name, &file.ideal()?)?;
        let ids: Vec<TheoremId> = if ids.is_empty() { TheoremId::ALL.to_vec() } else { ids.to_vec() };
        let reports = ids
            .iter()
            .map(|&id| verify::run(&a, id, params))
            .collect::<Result<Vec<_>>>()?;
        Ok((reports, check_expectations(file, &a)?))
    };
    match attempt() {
        Ok((theorems, regressions)) => IdealReport {
            ideal: file.name.clone(),
            ring,
            theorems,
            regressions,
            error: None,
        },
        Err(e) => IdealReport {
            ideal: file.name.clone(),
            ring,
            theorems: Vec::new(),
            regressions: Vec::new(),
            error: Some(e.to_string()),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub ideal: String,
    pub theorem: TheoremId,
    pub status: Status,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub ideals: Vec<IdealReport>,
}

impl CorpusReport {
    pub fn rows(&self) -> Vec<SummaryRow> {
        let mut rows: Vec<SummaryRow> = self
            .ideals
            .iter()
            .flat_map(|r| {
                r.theorems.iter().map(move |t| SummaryRow {
                    ideal: r.ideal.clone(),
                    theorem: t.id,
                    status: t.status,
                })
            })
            .collect();
        rows.sort_by(|a, b| (&a.ideal, a.theorem).cmp(&(&b.ideal, b.theorem)));
        rows
    }

    pub fn violation_count(&self) -> usize {
        self.ideals.iter().map(|r| r.violations().count()).sum()
    }

    pub fn regression_count(&self) -> usize {
        self.ideals.iter().map(|r| r.regressions.len()).sum()
    }

    pub fn error_count(&self) -> usize {
        self.ideals.iter().filter(|r| r.error.is_some()).count()
    }

    pub fn is_clean(&self) -> bool {
        self.ideals.iter().all(IdealReport::is_clean)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Internal(format!("bad report JSON: {e}")))
    }
}

/// Runs every file, in parallel when the feature is on. The result is
/// sorted by ideal name regardless of scheduling.
pub fn run_corpus(files: &[IdealFile], params: Params) -> CorpusReport {
    let mut ideals = crate::par::map(files, |f| Ok(run_file(f, &[], params))).expect("run_file never fails");
    ideals.sort_by(|a, b| a.ideal.cmp(&b.ideal));
    CorpusReport { ideals }
}

/// Everything needed to replay a violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationBundle {
    pub ideal_file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub report: TheoremReport,
}

impl ViolationBundle {
    pub fn new(file: &IdealFile, seed: Option<u64>, report: &TheoremReport) -> Self {
        ViolationBundle {
            ideal_file: file.to_text(),
            seed,
            report: report.clone(),
        }
    }

    pub fn file_name(&self) -> String {
        format!("{}.{}.violation.json", self.report.ideal, self.report.id)
    }
}

/// Names appearing more than once.
pub fn duplicate_names(files: &[IdealFile]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut dup = BTreeSet::new();
    for f in files {
        if !seen.insert(f.name.as_str()) {
            dup.insert(f.name.clone());
        }
    }
    dup.into_iter().collect()
}
