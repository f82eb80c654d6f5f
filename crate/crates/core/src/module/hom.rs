use std::sync::Arc;

use super::{image_modulo, GradedModule, Subquotient};
use crate::error::Result;
use crate::groebner::{syzygies_modulo, syzygy_generators, FreeModule, FreeVector, Lifter, Matrix, Term};
use crate::ring::PolyRing;

/// `Hom(M, N)` presented on homomorphisms `F_0(M) -> F_0(N)`.
///
/// An element of `Hom(F_0(M), F_0(N))` is flattened to a vector whose
/// coordinate `i * rank N + k` is the `k`-th component of the image of the
/// `i`-th generator of `M`; that coordinate has degree `b_k - a_i`.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: GradedModule,
    /// Column `g` is generator `g` as a flattened homomorphism.
    pub lifts: Matrix,
    pub source_gens: FreeModule,
    pub target_gens: FreeModule,
    /// Homomorphisms landing in the relations of `N`; these represent zero.
    pub kill: Vec<FreeVector>,
}

fn hom_free(a: &FreeModule, b: &FreeModule) -> FreeModule {
    let mut degs = Vec::with_capacity(a.rank() * b.rank());
    for &ai in &a.degs {
        for &bk in &b.degs {
            degs.push(bk - ai);
        }
    }
    FreeModule::new(degs)
}

impl HomModule {
    pub fn ambient(&self) -> FreeModule {
        hom_free(&self.source_gens, &self.target_gens)
    }

    /// Flattens a matrix `F_0(M) -> F_0(N)`.
    pub fn vector_of_matrix(&self, m: &Matrix) -> FreeVector {
        let s0 = self.target_gens.rank() as i64;
        let mut terms: Vec<Term> = Vec::new();
        for (i, c) in m.cols.iter().enumerate() {
            terms.extend(c.shift_positions(i as i64 * s0).terms().iter().cloned());
        }
        // blocks are visited in increasing position order, so already sorted
        FreeVector::from_sorted(terms)
    }

    pub fn matrix_of_vector(&self, v: &FreeVector) -> Matrix {
        let s0 = self.target_gens.rank();
        let cols = (0..self.source_gens.rank())
            .map(|i| v.restrict(i * s0, (i + 1) * s0))
            .collect();
        Matrix::new(self.source_gens.clone(), self.target_gens.clone(), cols)
    }

    /// Expresses flattened homomorphisms in the generators of the module.
    pub fn lifter(&self, ring: &PolyRing) -> Result<Lifter> {
        Lifter::new(ring, &self.lifts, &self.kill)
    }
}

/// `Hom_R(M, N)` as the kernel of `Hom(F_0(M), N) -> Hom(F_1(M), N)`.
pub fn hom_module(m: &GradedModule, n: &GradedModule) -> Result<HomModule> {
    let ring = m.ring();
    let a = m.presentation();
    let b = n.presentation();
    let f0 = m.gens().clone();
    let g0 = n.gens().clone();
    let (r0, s0) = (f0.rank(), g0.rank());
    let hom00 = hom_free(&f0, &g0);
    let hom10 = hom_free(&a.source, &g0);

    // Images of the basis E_{ik} under precomposition with A.
    let mut pre: Vec<Vec<Term>> = vec![Vec::new(); r0 * s0];
    for (c, col) in a.cols.iter().enumerate() {
        for t in col.terms() {
            let i = t.pos as usize;
            for k in 0..s0 {
                pre[i * s0 + k].push(Term {
                    pos: (c * s0 + k) as u32,
                    mono: t.mono.clone(),
                    coef: t.coef,
                });
            }
        }
    }
    let z = if a.cols.is_empty() {
        Matrix::identity(&hom00, ring)
    } else {
        let cols: Vec<FreeVector> = pre.into_iter().map(|t| FreeVector::from_terms(ring, t)).collect();
        let mut kill = Vec::new();
        for c in 0..a.source.rank() {
            for mcol in &b.cols {
                kill.push(mcol.shift_positions((c * s0) as i64));
            }
        }
        syzygies_modulo(ring, &Matrix::new(hom00.clone(), hom10, cols), &kill)?
    };
    let mut kill = Vec::new();
    for i in 0..r0 {
        for mcol in &b.cols {
            kill.push(mcol.shift_positions((i * s0) as i64));
        }
    }
    let Subquotient { module, lifts } = image_modulo(ring, &z, &kill)?;
    Ok(HomModule {
        module,
        lifts,
        source_gens: f0,
        target_gens: g0,
        kill,
    })
}

/// `Ext^q_R(M, R)`: cohomology of the dual of the minimal resolution.
pub fn ext_module(q: usize, m: &GradedModule) -> Result<GradedModule> {
    ext_with_lifts(q, m).map(|s| s.module)
}

pub(crate) fn ext_with_lifts(q: usize, m: &GradedModule) -> Result<Subquotient> {
    let ring: &Arc<PolyRing> = m.ring();
    let res = m.resolution()?;
    let mods = res.modules();
    if q >= mods.len() {
        return Ok(Subquotient {
            module: GradedModule::zero(ring),
            lifts: Matrix::zero(FreeModule::default(), FreeModule::default()),
        });
    }
    let fq_dual = mods[q].dual();
    let z = if q < res.length() {
        syzygy_generators(ring, &res.maps[q].transpose())?
    } else {
        Matrix::identity(&fq_dual, ring)
    };
    let b: Vec<FreeVector> = if q >= 1 { res.maps[q - 1].transpose().cols } else { Vec::new() };
    image_modulo(ring, &z, &b)
}

/// `Hom(f, N): Hom(T, N) -> Hom(S, N)` for `f: S -> T`, given the two Hom
/// modules already computed.
pub fn precomposition(
    f: &super::ModuleMap,
    hom_target: &HomModule,
    hom_source: &HomModule,
) -> Result<super::ModuleMap> {
    let ring = f.source.ring();
    let lifter = hom_source.lifter(ring)?;
    let mut cols = Vec::with_capacity(hom_target.lifts.cols.len());
    for h in &hom_target.lifts.cols {
        let composed = hom_target.matrix_of_vector(h).compose(ring, &f.matrix);
        let v = hom_source.vector_of_matrix(&composed);
        let c = lifter
            .lift(ring, &v)?
            .ok_or_else(|| crate::Error::Internal("precomposed map is not a homomorphism".into()))?;
        cols.push(c);
    }
    let matrix = Matrix::new(
        hom_target.module.gens().clone(),
        hom_source.module.gens().clone(),
        cols,
    );
    super::ModuleMap::new(hom_target.module.clone(), hom_source.module.clone(), matrix)
}
