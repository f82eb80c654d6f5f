//! Dimension, depth, grade, Serre's conditions, Fitting ideals, the local
//! generator bound and sliding depth.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::module::{ext_module, GradedModule};
use crate::ring::Polynomial;

/// Krull dimension via the initial ideal of the annihilator. `None` stands
/// for the zero module (dimension −∞).
pub fn krull_dim(m: &GradedModule) -> Result<Option<usize>> {
    if m.is_zero()? {
        return Ok(None);
    }
    m.annihilator()?.quotient_dim()
}

/// Krull dimension read off the Hilbert series (order of the pole at 1).
pub fn hilbert_dim(m: &GradedModule) -> Result<Option<usize>> {
    Ok(m.hilbert_series()?.dimension())
}

/// `n - pd M` by Auslander–Buchsbaum.
pub fn depth(m: &GradedModule) -> Result<usize> {
    let pd = m.projective_dimension()?.ok_or(Error::ZeroModule)?;
    Ok(m.ring().nvars() - pd)
}

/// Zero modules count as Cohen-Macaulay.
pub fn is_cm(m: &GradedModule) -> Result<bool> {
    match hilbert_dim(m)? {
        None => Ok(true),
        Some(d) => Ok(depth(m)? == d),
    }
}

/// Dimensions of `Ext^q(M, R)` for `q = 0..=pd M`.
pub fn ext_dims(m: &GradedModule) -> Result<Vec<Option<usize>>> {
    let pd = match m.projective_dimension()? {
        None => return Ok(Vec::new()),
        Some(p) => p,
    };
    (0..=pd).map(|q| hilbert_dim(&ext_module(q, m)?)).collect()
}

/// `S_s` from precomputed Ext dimensions: for every `q > n - dim M`,
/// `dim Ext^q(M, R) <= n - q - s`.
pub fn serre_from_ext_dims(n: usize, dim: Option<usize>, ext: &[Option<usize>], s: usize) -> bool {
    let Some(dim) = dim else { return true };
    ext.iter().enumerate().skip(n - dim + 1).all(|(q, e)| match e {
        None => true,
        Some(e) => (*e as i64) <= n as i64 - q as i64 - s as i64,
    })
}

pub fn serre_condition(m: &GradedModule, s: usize) -> Result<bool> {
    let n = m.ring().nvars();
    Ok(serre_from_ext_dims(n, hilbert_dim(m)?, &ext_dims(m)?, s))
}

/// Largest `s` for which `S_s` holds, or `All` when it holds for every `s`
/// (exactly the Cohen-Macaulay case). Serializes as a number or `"all"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SerreLevel {
    Upto(usize),
    All,
}

impl Serialize for SerreLevel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SerreLevel::Upto(k) => s.serialize_u64(*k as u64),
            SerreLevel::All => s.serialize_str("all"),
        }
    }
}

impl<'de> Deserialize<'de> for SerreLevel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "all" => Ok(SerreLevel::All),
            serde_json::Value::Number(k) if k.is_u64() => Ok(SerreLevel::Upto(k.as_u64().unwrap() as usize)),
            other => Err(serde::de::Error::custom(format!("invalid Serre level {other}"))),
        }
    }
}

impl fmt::Display for SerreLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SerreLevel::Upto(s) => write!(f, "S_{s}"),
            SerreLevel::All => write!(f, "all"),
        }
    }
}

pub fn serre_level_from_ext_dims(n: usize, dim: Option<usize>, ext: &[Option<usize>]) -> SerreLevel {
    if serre_from_ext_dims(n, dim, ext, n + 1) {
        return SerreLevel::All;
    }
    let mut s = 0;
    while s < n && serre_from_ext_dims(n, dim, ext, s + 1) {
        s += 1;
    }
    SerreLevel::Upto(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub dim: Option<usize>,
    pub depth: Option<usize>,
    pub is_cm: bool,
    pub serre_level: SerreLevel,
}

pub fn profile(m: &GradedModule) -> Result<InvariantProfile> {
    let n = m.ring().nvars();
    let dim = hilbert_dim(m)?;
    let depth = match dim {
        None => None,
        Some(_) => Some(depth(m)?),
    };
    let ext = ext_dims(m)?;
    Ok(InvariantProfile {
        dim,
        depth,
        is_cm: depth == dim,
        serre_level: serre_level_from_ext_dims(n, dim, &ext),
    })
}

/// `n - dim R/I`, cross-checked against the first nonvanishing
/// `Ext^q(R/I, R)`.
pub fn grade_ideal(i: &Ideal) -> Result<usize> {
    let n = i.ring().nvars();
    let dim = i.quotient_dim()?.ok_or(Error::UnitIdeal)?;
    let g = n - dim;
    let quotient = GradedModule::cyclic(i)?.minimized()?;
    let first = ext_dims(&quotient)?.iter().position(|e| e.is_some());
    if first != Some(g) {
        return Err(Error::Internal(format!(
            "grade mismatch: codimension {g}, first nonzero Ext at {first:?}"
        )));
    }
    Ok(g)
}

pub fn mu(i: &Ideal) -> Result<usize> {
    i.mu()
}

/// Ideal of `(ℓ - r)`-minors of the minimal presentation of `I`.
pub fn fitting_ideal(i: &Ideal, r: i64) -> Result<Ideal> {
    let ring = i.ring();
    let pres = GradedModule::from_ideal(i)?.presentation();
    let l = pres.target.rank() as i64;
    if r >= l {
        return Ok(Ideal::unit(ring));
    }
    if r < 0 {
        return Ok(Ideal::zero(ring));
    }
    let k = (l - r) as usize;
    let m = pres.cols.len();
    if k > m {
        return Ok(Ideal::zero(ring));
    }
    if m > 63 || l > 63 {
        return Err(Error::Internal("presentation too large for minors".into()));
    }
    let entries: Vec<Vec<Polynomial>> = (0..l as usize)
        .map(|row| (0..m).map(|c| pres.entry(row, c)).collect())
        .collect();
    let mut memo: HashMap<(u64, u64), Polynomial> = HashMap::new();
    let mut gens = Vec::new();
    for rows in crate::koszul::subsets(l as usize, k) {
        for cols in crate::koszul::subsets(m, k) {
            let d = minor(ring, &entries, rows, cols, &mut memo);
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    Ideal::new(ring, gens)?.minimalized()
}

fn minor(
    ring: &crate::ring::PolyRing,
    a: &[Vec<Polynomial>],
    rows: u64,
    cols: u64,
    memo: &mut HashMap<(u64, u64), Polynomial>,
) -> Polynomial {
    if rows == 0 {
        return ring.one();
    }
    if let Some(p) = memo.get(&(rows, cols)) {
        return p.clone();
    }
    let r = rows.trailing_zeros() as usize;
    let mut acc = Polynomial::zero();
    let mut sign_neg = false;
    let mut rest = cols;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let e = &a[r][c];
        if !e.is_zero() {
            let sub = minor(ring, a, rows & (rows - 1), cols & !(1u64 << c), memo);
            let term = e.mul(ring, &sub);
            acc = if sign_neg { acc.sub(ring, &term) } else { acc.add(ring, &term) };
        }
        sign_neg = !sign_neg;
    }
    memo.insert((rows, cols), acc.clone());
    acc
}

/// First `r` at which `ht(I + Fitt_r) >= r + 1 - j` fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuWitness {
    pub r: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalMuBound {
    pub holds: bool,
    pub witness: Option<MuWitness>,
}

/// Decides `μ(I_p) <= ht p + j` for all primes `p ⊇ I` through the heights
/// of `I + Fitt_r(I)` for `g <= r < ℓ`.
pub fn check_local_mu_bound(i: &Ideal, j: i64) -> Result<LocalMuBound> {
    let n = i.ring().nvars();
    let g = grade_ideal(i)?;
    let l = i.mu()?;
    for r in g..l {
        let sum = i.sum(&fitting_ideal(i, r as i64)?)?;
        let Some(dim) = sum.quotient_dim()? else { continue };
        let height = (n - dim) as i64;
        if height < r as i64 + 1 - j {
            return Ok(LocalMuBound {
                holds: false,
                witness: Some(MuWitness { r, dim }),
            });
        }
    }
    Ok(LocalMuBound {
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlidingDepth {
    pub holds: bool,
    /// `depth H_i - min(d - g, d - ℓ + i + h)` for `i = 0..=ℓ-g`; `None`
    /// for zero modules.
    pub margins: Vec<Option<i64>>,
}

/// `SD_h` from the depths of `H_0..H_{ℓ-g}` (`None` marks a zero module).
pub fn sliding_depth_from_depths(n: usize, g: usize, l: usize, depths: &[Option<usize>], h: i64) -> SlidingDepth {
    let d = n as i64;
    let margins: Vec<Option<i64>> = depths
        .iter()
        .enumerate()
        .map(|(i, dp)| {
            dp.map(|dp| {
                let bound = (d - g as i64).min(d - l as i64 + i as i64 + h);
                dp as i64 - bound
            })
        })
        .collect();
    SlidingDepth {
        holds: margins.iter().flatten().all(|m| *m >= 0),
        margins,
    }
}
