//! The Koszul complex of a sequence of homogeneous polynomials, its homology
//! modules with cycle representatives, the exterior product, and the
//! multiplication maps `H_{ℓ-g-i} -> Hom(H_i, H_{ℓ-g})`.

use std::collections::HashMap;
use std::sync::Arc;

use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::groebner::{FreeModule, FreeVector, Ideal, Lifter, Matrix, Term};
use crate::module::{hom_module, image_modulo, GradedModule, HomModule, ModuleMap, Subquotient};
use crate::ring::{PolyRing, Polynomial};

/// Subsets of `{0..l-1}` of size `k` as bitmasks, in increasing numeric
/// order (colexicographic order on subsets).
pub fn subsets(l: usize, k: usize) -> Vec<u64> {
    if k > l {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut s: u64 = (1u64 << k) - 1;
    let limit: u64 = if l == 64 { u64::MAX } else { 1u64 << l };
    while s < limit {
        out.push(s);
        let c = s & s.wrapping_neg();
        let r = s + c;
        if r == 0 {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

/// Sign of `e_S ∧ e_T` relative to `e_{S ∪ T}`; `None` when `S ∩ T ≠ ∅`.
pub fn wedge_sign(s: u64, t: u64) -> Option<bool> {
    if s & t != 0 {
        return None;
    }
    // count pairs (a in S, b in T) with a > b
    let mut inversions = 0u32;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        let above = if b == 63 { 0 } else { s >> (b + 1) };
        inversions += above.count_ones();
        rest &= rest - 1;
    }
    Some(inversions % 2 == 1)
}

/// Homology module `H_i` with a cycle in `K_i` for each generator.
#[derive(Clone, Debug)]
pub struct HomologyRecord {
    pub index: usize,
    pub module: GradedModule,
    /// Column `j` is a cycle representing generator `j`.
    pub cycle_reps: Matrix,
}

#[derive(Debug)]
pub struct KoszulComplex {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    degrees: Vec<i32>,
    bases: Vec<Vec<u64>>,
    lookup: Vec<HashMap<u64, usize>>,
    terms: Vec<FreeModule>,
    diffs: Vec<Matrix>,
    homology: Vec<OnceCell<HomologyRecord>>,
    cycles: Vec<OnceCell<Matrix>>,
}

impl KoszulComplex {
    /// Koszul complex on exactly the given sequence. Zero and
    /// non-homogeneous entries are rejected.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let l = gens.len();
        if l > 24 {
            return Err(Error::InvalidRing(format!("Koszul complex on {l} elements is too large")));
        }
        let mut degrees = Vec::with_capacity(l);
        for g in &gens {
            match g.homogeneous_degree() {
                Some(d) if !g.is_zero() => degrees.push(d),
                _ => return Err(Error::NotHomogeneous(ring.display(g).to_string())),
            }
        }
        let bases: Vec<Vec<u64>> = (0..=l).map(|k| subsets(l, k)).collect();
        let lookup = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, &s)| (s, i)).collect())
            .collect();
        let shift = |s: u64| -> i32 { (0..l).filter(|j| s >> j & 1 == 1).map(|j| degrees[j]).sum() };
        let terms: Vec<FreeModule> = bases
            .iter()
            .map(|b| FreeModule::new(b.iter().map(|&s| shift(s)).collect()))
            .collect();
        let mut k = KoszulComplex {
            ring: ring.clone(),
            gens,
            degrees,
            bases,
            lookup,
            terms,
            diffs: Vec::new(),
            homology: (0..=l).map(|_| OnceCell::new()).collect(),
            cycles: (0..=l).map(|_| OnceCell::new()).collect(),
        };
        k.diffs = (1..=l).map(|i| k.build_differential(i)).collect();
        for i in 1..l {
            if !k.diffs[i - 1].compose(ring, &k.diffs[i]).is_zero() {
                return Err(Error::Internal(format!("∂_{i} ∘ ∂_{} ≠ 0", i + 1)));
            }
        }
        Ok(k)
    }

    /// Koszul complex on a minimal generating set of `ideal`.
    pub fn on_minimal_generators(ideal: &Ideal) -> Result<Self> {
        let min = ideal.minimalized()?;
        if min.gens().iter().any(|g| g.is_unit()) {
            return Err(Error::UnitIdeal);
        }
        KoszulComplex::new(ideal.ring(), min.gens().to_vec())
    }

    fn build_differential(&self, i: usize) -> Matrix {
        let ring = &self.ring;
        let field = ring.field();
        let cols = self.bases[i]
            .iter()
            .map(|&s| {
                let mut acc = FreeVector::zero();
                for (p, j) in (0..self.len()).filter(|j| s >> j & 1 == 1).enumerate() {
                    let target = self.lookup[i - 1][&(s & !(1u64 << j))];
                    let mut f = FreeVector::from_poly(&self.gens[j], target);
                    if p % 2 == 1 {
                        f = f.scale(ring, field.neg(1));
                    }
                    acc = acc.add(ring, &f);
                }
                acc
            })
            .collect();
        Matrix::new(self.terms[i].clone(), self.terms[i - 1].clone(), cols)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// `ℓ`, the length of the sequence.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// `Σ deg f_j`, the shift of the top exterior power.
    pub fn total_degree(&self) -> i32 {
        self.degrees.iter().sum()
    }

    /// Exterior basis of `K_i` as bitmasks.
    pub fn basis(&self, i: usize) -> &[u64] {
        &self.bases[i]
    }

    pub fn term(&self, i: usize) -> &FreeModule {
        &self.terms[i]
    }

    /// `∂_i: K_i -> K_{i-1}` for `1 <= i <= ℓ`.
    pub fn differential(&self, i: usize) -> &Matrix {
        &self.diffs[i - 1]
    }

    /// Applies `∂` to an element of `K_i`; zero for `i = 0` and `i > ℓ`.
    pub fn boundary(&self, i: usize, v: &FreeVector) -> FreeVector {
        if i == 0 || i > self.len() {
            return FreeVector::zero();
        }
        self.diffs[i - 1].apply(&self.ring, v)
    }

    /// Exterior product of `u ∈ K_a` and `v ∈ K_b`.
    pub fn wedge(&self, a: usize, u: &FreeVector, b: usize, v: &FreeVector) -> FreeVector {
        let ring = &self.ring;
        let field = ring.field();
        if a + b > self.len() {
            return FreeVector::zero();
        }
        let mut terms: Vec<Term> = Vec::new();
        for tu in u.terms() {
            let s = self.bases[a][tu.pos as usize];
            for tv in v.terms() {
                let t = self.bases[b][tv.pos as usize];
                if let Some(neg) = wedge_sign(s, t) {
                    let c = field.mul(tu.coef, tv.coef);
                    terms.push(Term {
                        pos: self.lookup[a + b][&(s | t)] as u32,
                        mono: tu.mono.mul(&tv.mono),
                        coef: if neg { field.neg(c) } else { c },
                    });
                }
            }
        }
        FreeVector::from_terms(ring, terms)
    }

    /// `Z_i = ker ∂_i` as generators in `K_i`.
    pub fn cycles(&self, i: usize) -> Result<&Matrix> {
        self.cycles[i].get_or_try_init(|| {
            if i == 0 {
                Ok(Matrix::identity(&self.terms[0], &self.ring))
            } else {
                crate::groebner::kernel(&self.ring, &self.diffs[i - 1])
            }
        })
    }

    /// `Z_i` as a module in its own right.
    pub fn cycles_module(&self, i: usize) -> Result<GradedModule> {
        Ok(image_modulo(&self.ring, self.cycles(i)?, &[])?.module)
    }

    /// `H_i = Z_i / B_i`, presented on cycle representatives.
    pub fn homology(&self, i: usize) -> Result<&HomologyRecord> {
        if i > self.len() {
            return Err(Error::Internal(format!("homological index {i} exceeds {}", self.len())));
        }
        self.homology[i].get_or_try_init(|| {
            let z = self.cycles(i)?;
            let b: &[FreeVector] = if i < self.len() { &self.diffs[i].cols } else { &[] };
            // B_i ⊆ Z_i because ∂∂ = 0 was checked at construction.
            let Subquotient { module, lifts } = image_modulo(&self.ring, z, b)?;
            Ok(HomologyRecord {
                index: i,
                module,
                cycle_reps: lifts,
            })
        })
    }

    /// Homology module, or the zero module outside `0..=ℓ`.
    pub fn homology_module(&self, i: i64) -> Result<GradedModule> {
        if i < 0 || i as usize > self.len() {
            return Ok(GradedModule::zero(&self.ring));
        }
        Ok(self.homology(i as usize)?.module.clone())
    }

    /// Hilbert function of `K_i` in degree `d`.
    pub fn term_hf(&self, i: usize, d: i32) -> i64 {
        let n = self.ring.nvars() as i64;
        self.terms[i]
            .degs
            .iter()
            .map(|&s| crate::module::binomial(d as i64 - s as i64 + n - 1, n - 1))
            .sum()
    }

    /// `φ_i: H_{t-i} -> Hom(H_i, H_t)` with `t = ℓ - g`, sending the class of
    /// `z` to `w ↦ [z ∧ w]`.
    pub fn duality_map_phi(&self, i: usize, g: usize) -> Result<DualityMap> {
        let ring = &self.ring;
        let t = self
            .len()
            .checked_sub(g)
            .ok_or_else(|| Error::Internal("grade exceeds the number of generators".into()))?;
        if i > t {
            return Err(Error::Internal(format!("φ_{i} undefined for top index {t}")));
        }
        let top = self.homology(t)?;
        let hi = self.homology(i)?;
        let src = self.homology(t - i)?;
        let hom = hom_module(&hi.module, &top.module)?;
        let top_lifter = Lifter::new(ring, &top.cycle_reps, self.boundaries(t))?;
        let hom_lifter = hom.lifter(ring)?;
        let mut cols = Vec::with_capacity(src.cycle_reps.cols.len());
        for z in &src.cycle_reps.cols {
            let mut images = Vec::with_capacity(hi.cycle_reps.cols.len());
            for w in &hi.cycle_reps.cols {
                let p = self.wedge(t - i, z, i, w);
                let c = top_lifter
                    .lift(ring, &p)?
                    .ok_or_else(|| Error::Internal("product of cycles is not a cycle".into()))?;
                images.push(c);
            }
            let m = Matrix::new(hi.module.gens().clone(), top.module.gens().clone(), images);
            let v = hom.vector_of_matrix(&m);
            let c = hom_lifter
                .lift(ring, &v)?
                .ok_or_else(|| Error::Internal("multiplication is not a homomorphism".into()))?;
            cols.push(c);
        }
        let matrix = Matrix::new(src.module.gens().clone(), hom.module.gens().clone(), cols);
        let map = ModuleMap::new(src.module.clone(), hom.module.clone(), matrix)?;
        if !map.is_well_defined()? {
            return Err(Error::Internal(format!("φ_{i} does not respect relations")));
        }
        Ok(DualityMap { index: i, map, hom })
    }

    fn boundaries(&self, i: usize) -> &[FreeVector] {
        if i < self.len() {
            &self.diffs[i].cols
        } else {
            &[]
        }
    }
}

/// `φ_i` together with the Hom module it lands in.
#[derive(Clone, Debug)]
pub struct DualityMap {
    pub index: usize,
    pub map: ModuleMap,
    pub hom: HomModule,
}

pub fn build_koszul(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<KoszulComplex> {
    KoszulComplex::new(ring, gens)
}

pub fn koszul_homology(k: &KoszulComplex, i: usize) -> Result<&HomologyRecord> {
    k.homology(i)
}
