//! Everything computed about one ideal, each piece at most once.

use std::sync::Arc;

use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::invariants::{
    self, check_local_mu_bound, ext_dims, serre_from_ext_dims, serre_level_from_ext_dims, InvariantProfile,
    LocalMuBound, SerreLevel, SlidingDepth,
};
use crate::koszul::{DualityMap, KoszulComplex};
use crate::module::{ext_module, hom_module, GradedModule, HomModule};
use crate::ring::PolyRing;

fn cells<T>(k: usize) -> Vec<OnceCell<T>> {
    (0..k).map(|_| OnceCell::new()).collect()
}

pub struct IdealAnalysis {
    name: String,
    ideal: Ideal,
    complex: KoszulComplex,
    grade: usize,
    dim: usize,
    ext_dims: Vec<OnceCell<Vec<Option<usize>>>>,
    profiles: Vec<OnceCell<InvariantProfile>>,
    phis: Vec<OnceCell<DualityMap>>,
    phi_iso: Vec<OnceCell<bool>>,
    annihilators: Vec<OnceCell<Ideal>>,
    ext_g: Vec<OnceCell<GradedModule>>,
    double_homs: Vec<OnceCell<HomModule>>,
}

impl IdealAnalysis {
    /// Minimalizes the generators and builds the Koszul complex.
    pub fn new(name: &str, ideal: &Ideal) -> Result<Self> {
        let ideal = ideal.minimalized()?;
        if ideal.is_unit()? {
            return Err(Error::UnitIdeal);
        }
        let grade = invariants::grade_ideal(&ideal)?;
        let n = ideal.ring().nvars();
        let complex = KoszulComplex::new(ideal.ring(), ideal.gens().to_vec())?;
        let l = complex.len();
        Ok(IdealAnalysis {
            name: name.to_string(),
            dim: n - grade,
            ext_dims: cells(l + 1),
            profiles: cells(l + 1),
            phis: cells(l + 1),
            phi_iso: cells(l + 1),
            annihilators: cells(l + 1),
            ext_g: cells(l + 1),
            double_homs: cells(l + 1),
            ideal,
            complex,
            grade,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }

    pub fn complex(&self) -> &KoszulComplex {
        &self.complex
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    /// `g`.
    pub fn grade(&self) -> usize {
        self.grade
    }

    /// `ℓ`.
    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    /// `dim R/I`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `ℓ - g`, the index of the top nonvanishing homology.
    pub fn top(&self) -> usize {
        self.len() - self.grade
    }

    /// `Σ deg f_j`: generators of `Ext^g(H_i, R)` in degree `e` correspond
    /// to generators of `H_{ℓ-g-i}` in degree `e + Σ deg f_j`.
    pub fn twist(&self) -> i32 {
        self.complex.total_degree()
    }

    pub fn homology(&self, i: usize) -> Result<&GradedModule> {
        Ok(&self.complex.homology(i)?.module)
    }

    /// `H_i`, or the zero module for indices outside `0..=ℓ`.
    pub fn homology_at(&self, i: i64) -> Result<GradedModule> {
        self.complex.homology_module(i)
    }

    fn in_range(&self, i: i64) -> Option<usize> {
        (i >= 0 && i as usize <= self.len()).then_some(i as usize)
    }

    pub fn ext_dims(&self, i: usize) -> Result<&[Option<usize>]> {
        self.ext_dims[i]
            .get_or_try_init(|| ext_dims(self.homology(i)?))
            .map(|v| v.as_slice())
    }

    pub fn profile(&self, i: usize) -> Result<&InvariantProfile> {
        self.profiles[i].get_or_try_init(|| {
            let h = self.homology(i)?;
            let n = self.nvars();
            let dim = invariants::hilbert_dim(h)?;
            let depth = match dim {
                None => None,
                Some(_) => Some(invariants::depth(h)?),
            };
            Ok(InvariantProfile {
                dim,
                depth,
                is_cm: depth == dim,
                serre_level: serre_level_from_ext_dims(n, dim, self.ext_dims(i)?),
            })
        })
    }

    pub fn is_zero(&self, i: i64) -> Result<bool> {
        match self.in_range(i) {
            None => Ok(true),
            Some(i) => Ok(self.profile(i)?.dim.is_none()),
        }
    }

    /// Zero modules, including out-of-range indices, count as CM.
    pub fn is_cm(&self, i: i64) -> Result<bool> {
        match self.in_range(i) {
            None => Ok(true),
            Some(i) => Ok(self.profile(i)?.is_cm),
        }
    }

    /// Depth of `H_i`; `None` means the zero module (depth +∞).
    pub fn depth(&self, i: i64) -> Result<Option<usize>> {
        match self.in_range(i) {
            None => Ok(None),
            Some(i) => Ok(self.profile(i)?.depth),
        }
    }

    pub fn has_positive_depth(&self, i: i64) -> Result<bool> {
        Ok(self.depth(i)?.map_or(true, |d| d > 0))
    }

    pub fn satisfies_serre(&self, i: i64, s: usize) -> Result<bool> {
        match self.in_range(i) {
            None => Ok(true),
            Some(i) => {
                let dim = self.profile(i)?.dim;
                Ok(serre_from_ext_dims(self.nvars(), dim, self.ext_dims(i)?, s))
            }
        }
    }

    pub fn serre_level(&self, i: usize) -> Result<SerreLevel> {
        Ok(self.profile(i)?.serre_level)
    }

    /// `φ_i: H_{ℓ-g-i} -> Hom(H_i, H_{ℓ-g})` for `0 <= i <= ℓ-g`.
    pub fn phi(&self, i: usize) -> Result<&DualityMap> {
        self.phis[i].get_or_try_init(|| self.complex.duality_map_phi(i, self.grade))
    }

    pub fn phi_is_iso(&self, i: usize) -> Result<bool> {
        self.phi_iso[i].get_or_try_init(|| {
            let phi = self.phi(i)?;
            let iso = phi.map.is_iso()?;
            if iso {
                let (s, t) = (&phi.map.source, &phi.map.target);
                if s.hilbert_series()? != t.hilbert_series()? {
                    return Err(Error::Internal(format!("φ_{i} is bijective but Hilbert series differ")));
                }
            }
            Ok(iso)
        })
        .copied()
    }

    /// `Hom(H_i, H_{ℓ-g})`.
    pub fn hom_into_top(&self, i: usize) -> Result<&HomModule> {
        Ok(&self.phi(i)?.hom)
    }

    /// `Hom(Hom(H_i, H_{ℓ-g}), H_{ℓ-g})`.
    pub fn double_hom(&self, i: usize) -> Result<&HomModule> {
        self.double_homs[i].get_or_try_init(|| {
            hom_module(&self.hom_into_top(i)?.module, self.homology(self.top())?)
        })
    }

    pub fn annihilator(&self, i: i64) -> Result<Ideal> {
        match self.in_range(i) {
            None => Ok(Ideal::unit(self.ring())),
            Some(i) => self.annihilators[i]
                .get_or_try_init(|| self.homology(i)?.annihilator())
                .cloned(),
        }
    }

    /// `Ext^g(H_i, R)`.
    pub fn ext_g(&self, i: usize) -> Result<&GradedModule> {
        self.ext_g[i].get_or_try_init(|| ext_module(self.grade, self.homology(i)?))
    }

    pub fn local_mu_bound(&self, j: i64) -> Result<LocalMuBound> {
        check_local_mu_bound(&self.ideal, j)
    }

    pub fn sliding_depth(&self, h: i64) -> Result<SlidingDepth> {
        let depths = (0..=self.top() as i64)
            .map(|i| self.depth(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(invariants::sliding_depth_from_depths(
            self.nvars(),
            self.grade,
            self.len(),
            &depths,
            h,
        ))
    }

    /// Depth of the cycle module `Z_i ⊆ K_i`; `None` when `Z_i = 0`.
    pub fn cycles_depth(&self, i: usize) -> Result<Option<usize>> {
        let z = self.complex.cycles_module(i)?;
        if z.is_zero()? {
            return Ok(None);
        }
        Ok(Some(invariants::depth(&z)?))
    }

    /// Largest `h` with `H_0, ..., H_h` all Cohen-Macaulay, if any.
    pub fn cm_prefix(&self) -> Result<Option<usize>> {
        let mut h = None;
        for i in 0..=self.top() {
            if !self.is_cm(i as i64)? {
                break;
            }
            h = Some(i);
        }
        Ok(h)
    }

    /// Smallest `j >= -1` for which the local generator bound holds.
    pub fn minimal_mu_slack(&self) -> Result<i64> {
        let mut j = -1;
        while !self.local_mu_bound(j)?.holds {
            j += 1;
        }
        Ok(j)
    }
}
