use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::HilbertSeries;
use crate::error::{Error, Result};
use crate::groebner::{kernel, FreeModule, Matrix};
use crate::ring::PolyRing;

/// Minimal graded free resolution `... -> F_2 -> F_1 -> F_0`.
/// `maps[k]` is the differential `F_{k+1} -> F_k`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub f0: FreeModule,
    pub maps: Vec<Matrix>,
}

impl Resolution {
    /// Resolves `coker(presentation)`. The presentation must be minimal.
    pub fn compute(ring: &Arc<PolyRing>, presentation: &Matrix) -> Result<Self> {
        let mut maps = Vec::new();
        if !presentation.cols.is_empty() {
            maps.push(presentation.clone());
        }
        while let Some(last) = maps.last() {
            let k = kernel(ring, last)?;
            if k.cols.is_empty() {
                break;
            }
            maps.push(k);
            if maps.len() > ring.nvars() + 1 {
                return Err(Error::Internal("resolution longer than the number of variables".into()));
            }
        }
        let res = Resolution {
            f0: presentation.target.clone(),
            maps,
        };
        res.check(ring)?;
        Ok(res)
    }

    fn check(&self, ring: &PolyRing) -> Result<()> {
        for w in self.maps.windows(2) {
            if !w[0].compose(ring, &w[1]).is_zero() {
                return Err(Error::Internal("resolution is not a complex".into()));
            }
        }
        if self.maps.iter().any(|m| m.has_unit_entry()) {
            return Err(Error::Internal("resolution is not minimal".into()));
        }
        if self.length() > ring.nvars() {
            return Err(Error::Internal("resolution longer than the number of variables".into()));
        }
        Ok(())
    }

    /// Number of nonzero differentials.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `F_0, F_1, ...` up to the last nonzero module.
    pub fn modules(&self) -> Vec<FreeModule> {
        let mut out = vec![self.f0.clone()];
        out.extend(self.maps.iter().map(|m| m.source.clone()));
        out
    }

    /// The differential `F_k -> F_{k-1}` for `k >= 1`, zero past the end.
    pub fn differential(&self, k: usize) -> Matrix {
        assert!(k >= 1);
        match self.maps.get(k - 1) {
            Some(m) => m.clone(),
            None => {
                let mods = self.modules();
                let target = mods.get(k - 1).cloned().unwrap_or_default();
                Matrix::zero(FreeModule::default(), target)
            }
        }
    }

    pub fn truncated(&self, max_len: usize) -> Resolution {
        Resolution {
            f0: self.f0.clone(),
            maps: self.maps.iter().take(max_len).cloned().collect(),
        }
    }

    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for (i, f) in self.modules().iter().enumerate() {
            for &d in &f.degs {
                t.add(i, d, 1);
            }
        }
        t
    }
}

/// Graded Betti numbers `β_{i,j}`: the number of copies of `R(-j)` in `F_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<[i64; 3]>", try_from = "Vec<[i64; 3]>")]
pub struct BettiTable {
    entries: BTreeMap<(usize, i32), usize>,
}

impl BettiTable {
    pub fn add(&mut self, i: usize, j: i32, count: usize) {
        if count > 0 {
            *self.entries.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, i32, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// `Σ_j β_{i,j}`.
    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((k, _), _)| *k == i).map(|(_, b)| b).sum()
    }

    /// Largest `i` with a nonzero entry; `None` when empty.
    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|(i, _)| *i).max()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn shifted(&self, delta: i32) -> BettiTable {
        BettiTable {
            entries: self.entries.iter().map(|(&(i, j), &b)| ((i, j + delta), b)).collect(),
        }
    }

    pub fn hilbert_series(&self, nvars: usize) -> HilbertSeries {
        let mut num: BTreeMap<i32, i64> = BTreeMap::new();
        for (&(i, j), &b) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            *num.entry(j).or_insert(0) += sign * b as i64;
        }
        HilbertSeries::from_map(nvars, num)
    }
}

impl From<BettiTable> for Vec<[i64; 3]> {
    fn from(t: BettiTable) -> Self {
        t.entries().map(|(i, j, b)| [i as i64, j as i64, b as i64]).collect()
    }
}

impl TryFrom<Vec<[i64; 3]>> for BettiTable {
    type Error = String;

    fn try_from(v: Vec<[i64; 3]>) -> std::result::Result<Self, String> {
        let mut t = BettiTable::default();
        for [i, j, b] in v {
            if i < 0 || b < 0 {
                return Err(format!("negative Betti entry ({i}, {j}, {b})"));
            }
            t.add(i as usize, j as i32, b as usize);
        }
        Ok(t)
    }
}

/// Rows indexed by `j - i`, columns by `i`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "       0\ntotal: 0");
        }
        let len = self.length().unwrap();
        let rows: Vec<i32> = {
            let mut r: Vec<i32> = self.entries.keys().map(|&(i, j)| j - i as i32).collect();
            r.sort();
            r.dedup();
            (r[0]..=*r.last().unwrap()).collect()
        };
        write!(f, "      ")?;
        for i in 0..=len {
            write!(f, "{i:>5}")?;
        }
        writeln!(f)?;
        write!(f, "total:")?;
        for i in 0..=len {
            write!(f, "{:>5}", self.total(i))?;
        }
        for r in rows {
            writeln!(f)?;
            write!(f, "{:>5}:", r)?;
            for i in 0..=len {
                match self.get(i, r + i as i32) {
                    0 => write!(f, "{:>5}", ".")?,
                    b => write!(f, "{b:>5}")?,
                }
            }
        }
        Ok(())
    }
}
