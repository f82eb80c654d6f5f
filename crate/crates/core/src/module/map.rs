use super::{image_modulo, GradedModule, Subquotient};
use crate::error::{Error, Result};
use crate::groebner::{syzygies_modulo, Matrix};

/// A degree-0 map `M -> N` induced by `matrix: F_0(M) -> F_0(N)`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: GradedModule,
    pub target: GradedModule,
    pub matrix: Matrix,
}

impl ModuleMap {
    pub fn new(source: GradedModule, target: GradedModule, matrix: Matrix) -> Result<Self> {
        if &matrix.source != source.gens() || &matrix.target != target.gens() {
            return Err(Error::Internal("map matrix does not match the modules' generators".into()));
        }
        if !matrix.is_homogeneous() {
            return Err(Error::NotHomogeneous("map matrix is not of degree 0".into()));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn identity(m: &GradedModule) -> Self {
        let matrix = Matrix::identity(m.gens(), m.ring());
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix,
        }
    }

    pub fn zero(source: &GradedModule, target: &GradedModule) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zero(source.gens().clone(), target.gens().clone()),
        }
    }

    /// Every relation of the source maps into the relations of the target.
    pub fn is_well_defined(&self) -> Result<bool> {
        let ring = self.source.ring();
        for r in self.source.relations() {
            if !self.target.represents_zero(&self.matrix.apply(ring, r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Kernel, presented on elements of `F_0(source)`.
    pub fn kernel_with_lifts(&self) -> Result<Subquotient> {
        let ring = self.source.ring();
        let m = Matrix::new(
            self.matrix.source.clone(),
            self.target.gens().clone(),
            self.matrix.cols.clone(),
        );
        let syz = syzygies_modulo(ring, &m, self.target.relations())?;
        let z = Matrix::new(syz.source, self.source.gens().clone(), syz.cols);
        image_modulo(ring, &z, self.source.relations())
    }

    pub fn kernel(&self) -> Result<GradedModule> {
        Ok(self.kernel_with_lifts()?.module)
    }

    /// Image, presented on the images of the source generators.
    pub fn image(&self) -> Result<GradedModule> {
        let ring = self.source.ring();
        Ok(image_modulo(ring, &self.matrix, self.target.relations())?.module)
    }

    pub fn cokernel(&self) -> Result<GradedModule> {
        let ring = self.source.ring();
        let mut rels = self.target.relations().to_vec();
        rels.extend(self.matrix.cols.iter().cloned());
        GradedModule::new(ring, self.target.gens().clone(), rels)?.minimized()
    }

    fn cokernel_unminimized(&self) -> Result<GradedModule> {
        let ring = self.source.ring();
        let mut rels = self.target.relations().to_vec();
        rels.extend(self.matrix.cols.iter().cloned());
        GradedModule::new(ring, self.target.gens().clone(), rels)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        self.cokernel_unminimized()?.is_zero()
    }

    /// Decided from Hilbert series: the kernel has series
    /// `HS(source) - HS(target) + HS(coker)`, and a graded module is zero
    /// exactly when its series is.
    pub fn is_injective(&self) -> Result<bool> {
        let coker = self.cokernel_unminimized()?.initial_hilbert_series()?;
        let ker = self
            .source
            .hilbert_series()?
            .combine(-1, self.target.hilbert_series()?)
            .combine(1, &coker);
        Ok(ker.is_zero())
    }

    pub fn is_iso(&self) -> Result<bool> {
        Ok(self.is_surjective()? && self.is_injective()?)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ModuleMap) -> Result<ModuleMap> {
        let ring = self.source.ring();
        ModuleMap::new(self.source.clone(), g.target.clone(), g.matrix.compose(ring, &self.matrix))
    }
}
