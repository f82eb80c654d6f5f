//! Finitely presented graded modules `coker(F_1 -> F_0)` over the ambient
//! polynomial ring, degree-0 maps between them, and the standard
//! constructions (Hom, Ext, kernels, subquotients, resolutions).

mod hilbert;
mod hom;
mod map;
mod resolution;

pub use hilbert::{binomial, monomial_quotient_numerator, HilbertSeries};
pub use hom::{ext_module, hom_module, precomposition, HomModule};
pub use map::ModuleMap;
pub use resolution::{BettiTable, Resolution};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::groebner::{syzygies_modulo, syzygy_generators, FreeModule, FreeVector, GroebnerBasis, Ideal, Matrix};
use crate::ring::{Monomial, PolyRing};

/// `F_0 / <relations>`, where `F_0 = ⊕ R(-gens.degs[i])`.
#[derive(Clone)]
pub struct GradedModule {
    ring: Arc<PolyRing>,
    gens: FreeModule,
    relations: Vec<FreeVector>,
    minimal: bool,
    rel_gb: OnceCell<GroebnerBasis>,
    resolution: OnceCell<Resolution>,
    hilbert: OnceCell<HilbertSeries>,
}

impl fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedModule")
            .field("gens", &self.gens.degs)
            .field("relations", &self.relations.len())
            .field("minimal", &self.minimal)
            .finish()
    }
}

/// Result of [`GradedModule::minimal_presentation`]. `substitution[k]` is
/// the image of the old generator `k` in the new generators; `kept[i]` is
/// the old index of new generator `i`.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub module: GradedModule,
    pub kept: Vec<usize>,
    pub substitution: Vec<FreeVector>,
}

/// A module given as the image of `lifts` in an ambient free module modulo
/// a fixed submodule. Column `i` of `lifts` represents generator `i`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: GradedModule,
    pub lifts: Matrix,
}

impl GradedModule {
    pub fn new(ring: &Arc<PolyRing>, gens: FreeModule, relations: Vec<FreeVector>) -> Result<Self> {
        let mut rels = Vec::with_capacity(relations.len());
        for r in relations {
            if r.is_zero() {
                continue;
            }
            if r.terms().iter().any(|t| t.pos as usize >= gens.rank()) || !r.is_homogeneous(&gens) {
                return Err(Error::NotHomogeneous(r.format(ring)));
            }
            rels.push(r);
        }
        Ok(Self::raw(ring, gens, rels, false))
    }

    fn raw(ring: &Arc<PolyRing>, gens: FreeModule, relations: Vec<FreeVector>, minimal: bool) -> Self {
        GradedModule {
            ring: ring.clone(),
            gens,
            relations,
            minimal,
            rel_gb: OnceCell::new(),
            resolution: OnceCell::new(),
            hilbert: OnceCell::new(),
        }
    }

    pub fn free(ring: &Arc<PolyRing>, degs: Vec<i32>) -> Self {
        Self::raw(ring, FreeModule::new(degs), Vec::new(), true)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::free(ring, Vec::new())
    }

    /// `R/I`.
    pub fn cyclic(ideal: &Ideal) -> Result<Self> {
        let rels = ideal.gens().iter().map(|g| FreeVector::from_poly(g, 0)).collect();
        GradedModule::new(ideal.ring(), FreeModule::ring_itself(), rels)
    }

    /// The ideal itself as a module, presented by the syzygies of a minimal
    /// generating set.
    pub fn from_ideal(ideal: &Ideal) -> Result<Self> {
        let ring = ideal.ring();
        let min = ideal.minimalized()?;
        let m = Matrix::new(
            FreeModule::new(min.degrees()),
            FreeModule::ring_itself(),
            min.as_vectors(),
        );
        let syz = syzygy_generators(ring, &m)?;
        GradedModule::new(ring, m.source, syz.cols)?.minimized()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &FreeModule {
        &self.gens
    }

    pub fn rank(&self) -> usize {
        self.gens.rank()
    }

    pub fn relations(&self) -> &[FreeVector] {
        &self.relations
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// The presentation matrix `F_1 -> F_0`.
    pub fn presentation(&self) -> Matrix {
        let degs = self.relations.iter().map(|r| r.degree(&self.gens).unwrap()).collect();
        Matrix::new(FreeModule::new(degs), self.gens.clone(), self.relations.clone())
    }

    /// The same module with every generator degree raised by `delta`.
    pub fn shifted(&self, delta: i32) -> Self {
        Self::raw(&self.ring, self.gens.twisted(delta), self.relations.clone(), self.minimal)
    }

    pub fn relation_gb(&self) -> Result<&GroebnerBasis> {
        self.rel_gb
            .get_or_try_init(|| GroebnerBasis::compute(&self.ring, &self.gens, &self.relations))
    }

    /// Normal form of an element of `F_0` modulo the relations.
    pub fn reduce(&self, v: &FreeVector) -> Result<FreeVector> {
        self.relation_gb()?.reduce(&self.ring, v)
    }

    /// True when `v ∈ F_0` represents zero in the module.
    pub fn represents_zero(&self, v: &FreeVector) -> Result<bool> {
        self.relation_gb()?.contains(&self.ring, v)
    }

    pub fn is_zero(&self) -> Result<bool> {
        if self.minimal {
            return Ok(self.rank() == 0);
        }
        Ok(self.relation_gb()?.is_everything())
    }

    /// Isomorphic module whose presentation has no unit entries, on a
    /// minimal set of generators with a minimal set of relations.
    pub fn minimal_presentation(&self) -> Result<Minimized> {
        let ring = &self.ring;
        let field = ring.field();
        let rank = self.rank();
        let mut rels: Vec<FreeVector> = self.relations.clone();
        let mut subst: Vec<Option<FreeVector>> = vec![None; rank];
        loop {
            let found = rels.iter().enumerate().find_map(|(ri, r)| {
                r.terms()
                    .iter()
                    .rev()
                    .find(|t| t.mono.is_one())
                    .map(|t| (ri, t.pos as usize, t.coef))
            });
            let Some((ri, k, c)) = found else { break };
            let r = rels.remove(ri);
            let cinv = field.inv(c);
            let eliminate = |v: &FreeVector| -> FreeVector {
                let p = v.component(k);
                if p.is_zero() {
                    return v.clone();
                }
                let factor = p.scale(ring, field.neg(cinv));
                v.add(ring, &r.mul_poly(ring, &factor))
            };
            for v in rels.iter_mut() {
                *v = eliminate(v);
            }
            for s in subst.iter_mut().flatten() {
                *s = eliminate(s);
            }
            // e_k = e_k - (1/c) r
            subst[k] = Some(eliminate(&FreeVector::basis(ring, k)));
            rels.retain(|v| !v.is_zero());
        }
        let kept: Vec<usize> = (0..rank).filter(|&k| subst[k].is_none()).collect();
        let mut map = vec![None; rank];
        for (new, &old) in kept.iter().enumerate() {
            map[old] = Some(new);
        }
        let gens = FreeModule::new(kept.iter().map(|&k| self.gens.degs[k]).collect());
        let rels: Vec<FreeVector> = rels.iter().map(|v| v.remap_positions(&map)).collect();
        let keep = GroebnerBasis::minimal_subset(ring, &gens, &rels)?;
        let rels: Vec<FreeVector> = keep.iter().map(|&i| rels[i].clone()).collect();
        let substitution = (0..rank)
            .map(|k| match &subst[k] {
                Some(s) => s.remap_positions(&map),
                None => FreeVector::basis(ring, map[k].unwrap()),
            })
            .collect();
        let module = GradedModule {
            rel_gb: OnceCell::new(),
            ..Self::raw(ring, gens, rels, true)
        };
        Ok(Minimized {
            module,
            kept,
            substitution,
        })
    }

    /// The minimal presentation alone; a clone when already minimal.
    pub fn minimized(&self) -> Result<Self> {
        if self.minimal {
            return Ok(self.clone());
        }
        Ok(self.minimal_presentation()?.module)
    }

    /// Minimal free resolution of the minimized module, computed once.
    pub fn resolution(&self) -> Result<&Resolution> {
        self.resolution.get_or_try_init(|| {
            if self.minimal {
                Resolution::compute(&self.ring, &self.presentation())
            } else {
                let m = self.minimized()?;
                Resolution::compute(&self.ring, &m.presentation())
            }
        })
    }

    /// Resolution truncated after `max_len` maps.
    pub fn free_resolution(&self, max_len: usize) -> Result<Resolution> {
        Ok(self.resolution()?.truncated(max_len))
    }

    pub fn betti(&self) -> Result<BettiTable> {
        Ok(self.resolution()?.betti())
    }

    /// Projective dimension; `None` for the zero module.
    pub fn projective_dimension(&self) -> Result<Option<usize>> {
        let res = self.resolution()?;
        if res.modules()[0].rank() == 0 {
            return Ok(None);
        }
        Ok(Some(res.length()))
    }

    /// Hilbert series from the Betti table, cross-checked against the
    /// initial module of the relations.
    pub fn hilbert_series(&self) -> Result<&HilbertSeries> {
        self.hilbert.get_or_try_init(|| {
            let n = self.ring.nvars();
            let from_betti = self.betti()?.hilbert_series(n);
            let from_initial = self.initial_hilbert_series()?;
            if from_betti != from_initial {
                return Err(Error::Internal(format!(
                    "Hilbert series mismatch: {} vs {}",
                    from_betti.format(),
                    from_initial.format()
                )));
            }
            Ok(from_betti)
        })
    }

    /// Hilbert series of `F_0 / in(relations)`.
    pub fn initial_hilbert_series(&self) -> Result<HilbertSeries> {
        let gb = self.relation_gb()?;
        let mut per_pos: Vec<Vec<Monomial>> = vec![Vec::new(); self.rank()];
        for (pos, m) in gb.leading_terms() {
            per_pos[pos].push(m);
        }
        let mut total: BTreeMap<i32, i64> = BTreeMap::new();
        for (pos, monos) in per_pos.iter().enumerate() {
            for (j, c) in monomial_quotient_numerator(monos) {
                *total.entry(j + self.gens.degs[pos]).or_insert(0) += c;
            }
        }
        Ok(HilbertSeries::from_map(self.ring.nvars(), total))
    }

    pub fn hf(&self, d: i32) -> Result<i64> {
        Ok(self.hilbert_series()?.hf(d))
    }

    /// `{ r : r M = 0 }`, as the intersection of the colon ideals
    /// `(relations : e_i)`. The zero module has the unit ideal.
    pub fn annihilator(&self) -> Result<Ideal> {
        let mut parts = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            parts.push(crate::groebner::quotient_by_vector(
                &self.ring,
                &self.gens,
                &self.relations,
                &FreeVector::basis(&self.ring, i),
            )?);
        }
        let ann = Ideal::intersect_all(&self.ring, &parts)?;
        Ideal::new(&self.ring, ann.gens().iter().map(|g| g.monic(&self.ring)).collect())
    }

    /// Generators of the module as polynomial vectors, for display.
    pub fn format(&self) -> String {
        let rows: Vec<String> = self.relations.iter().map(|r| r.format(&self.ring)).collect();
        format!("coker gens {:?} relations [{}]", self.gens.degs, rows.join("; "))
    }
}

/// `(Z + B) / B` inside the common ambient free module of `z.target`,
/// generated by the images of the columns of `z`.
pub fn image_modulo(ring: &Arc<PolyRing>, z: &Matrix, b: &[FreeVector]) -> Result<Subquotient> {
    let ambient = &z.target;
    let keep: Vec<usize> = (0..z.cols.len()).filter(|&j| !z.cols[j].is_zero()).collect();
    let zc: Vec<FreeVector> = keep.iter().map(|&j| z.cols[j].clone()).collect();
    let zdegs: Vec<i32> = keep.iter().map(|&j| z.source.degs[j]).collect();
    let m = Matrix::new(FreeModule::new(zdegs.clone()), ambient.clone(), zc.clone());
    let rels = syzygies_modulo(ring, &m, b)?.cols;
    let module = GradedModule::new(ring, FreeModule::new(zdegs), rels)?;
    let min = module.minimal_presentation()?;
    let lifts = Matrix::new(
        min.module.gens.clone(),
        ambient.clone(),
        min.kept.iter().map(|&i| zc[i].clone()).collect(),
    );
    Ok(Subquotient {
        module: min.module,
        lifts,
    })
}

/// `Z / B` for `B ⊆ Z`, presented on the images of the columns of `z`.
pub fn subquotient(ring: &Arc<PolyRing>, z: &Matrix, b: &[FreeVector]) -> Result<Subquotient> {
    let gb = GroebnerBasis::compute(ring, &z.target, &z.cols)?;
    for v in b {
        if !gb.contains(ring, v)? {
            return Err(Error::ContainmentFailure);
        }
    }
    image_modulo(ring, z, b)
}

#[cfg(test)]
mod tests;
