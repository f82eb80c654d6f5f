use std::fmt;
use std::sync::Arc;

use once_cell::sync::OnceCell;

use super::{syzygies_modulo, FreeModule, FreeVector, GroebnerBasis, Matrix};
use crate::error::{Error, Result};
use crate::ring::{Monomial, PolyRing, Polynomial};

/// A homogeneous ideal given by generators. The Gröbner basis is computed
/// on first use and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceCell<GroebnerBasis>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| self.ring.display(g).to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Ideal {
    /// Zero generators are dropped; every other generator must be homogeneous.
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.is_zero() {
                continue;
            }
            if g.homogeneous_degree().is_none() {
                return Err(Error::NotHomogeneous(ring.display(&g).to_string()));
            }
            kept.push(g);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            gb: OnceCell::new(),
        })
    }

    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: vec![ring.one()],
            gb: OnceCell::new(),
        }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            gb: OnceCell::new(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.gens.iter().map(|g| g.homogeneous_degree().unwrap()).collect()
    }

    pub fn as_vectors(&self) -> Vec<FreeVector> {
        self.gens.iter().map(|g| FreeVector::from_poly(g, 0)).collect()
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        self.gb
            .get_or_try_init(|| GroebnerBasis::compute(&self.ring, &FreeModule::ring_itself(), &self.as_vectors()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.groebner()?.contains(&self.ring, &FreeVector::from_poly(f, 0))
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by double containment.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.contains_basis_vector(0))
    }

    /// A minimal generating subset, in the original order.
    pub fn minimalized(&self) -> Result<Ideal> {
        let gb = self.groebner()?;
        let gens = gb
            .minimal_generator_indices()
            .iter()
            .map(|&k| self.gens[k].clone())
            .collect();
        Ok(Ideal {
            ring: self.ring.clone(),
            gens,
            gb: OnceCell::with_value(gb.clone()),
        })
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> Result<usize> {
        Ok(self.groebner()?.minimal_generator_indices().len())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// Intersection of several ideals, as the first coordinate of the
    /// syzygies of `(1, ..., 1)` together with `I_t e_t` in `R^k`.
    pub fn intersect_all(ring: &Arc<PolyRing>, ideals: &[Ideal]) -> Result<Ideal> {
        if ideals.is_empty() {
            return Ok(Ideal::unit(ring));
        }
        let k = ideals.len();
        let target = FreeModule::new(vec![0; k]);
        let ones: Vec<Polynomial> = vec![ring.one(); k];
        let mut kill = Vec::new();
        for (t, id) in ideals.iter().enumerate() {
            kill.extend(id.gens.iter().map(|g| FreeVector::from_poly(g, t)));
        }
        let m = Matrix::new(FreeModule::new(vec![0]), target, vec![FreeVector::from_components(&ones)]);
        let syz = syzygies_modulo(ring, &m, &kill)?;
        let gens = syz.cols.iter().map(|s| s.component(0)).collect();
        Ideal::new(ring, gens)?.minimalized()
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        Ideal::intersect_all(&self.ring, &[self.clone(), other.clone()])
    }

    /// Lead monomials of the Gröbner basis.
    pub fn initial_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self.groebner()?.leading_terms().into_iter().map(|(_, m)| m).collect())
    }

    /// Krull dimension of `R/I`: the largest set of variables containing the
    /// support of no initial monomial. `None` for the unit ideal.
    pub fn quotient_dim(&self) -> Result<Option<usize>> {
        Ok(monomial_ideal_dim(self.ring.nvars(), &self.initial_monomials()?))
    }

    /// `n - dim R/I`; `None` for the unit ideal.
    pub fn height(&self) -> Result<Option<usize>> {
        Ok(self.quotient_dim()?.map(|d| self.ring.nvars() - d))
    }
}

/// Dimension of `R/J` for a monomial ideal `J` with the given generators.
pub fn monomial_ideal_dim(n: usize, gens: &[Monomial]) -> Option<usize> {
    if gens.iter().any(|m| m.is_one()) {
        return None;
    }
    let masks: Vec<u64> = gens.iter().map(|m| m.support_mask()).collect();
    let mut best = 0usize;
    // Search subsets from the largest size down; n is small.
    for size in (0..=n).rev() {
        if size <= best {
            break;
        }
        if subset_of_size_exists(n, size, &masks) {
            best = size;
            break;
        }
    }
    Some(best)
}

fn subset_of_size_exists(n: usize, size: usize, masks: &[u64]) -> bool {
    // enumerate complements: S independent iff no generator support ⊆ S
    fn rec(start: usize, n: usize, left: usize, cur: u64, masks: &[u64]) -> bool {
        if left == 0 {
            return masks.iter().all(|&m| m & !cur != 0);
        }
        for v in start..n {
            if n - v < left {
                break;
            }
            if rec(v + 1, n, left - 1, cur | (1u64 << v), masks) {
                return true;
            }
        }
        false
    }
    rec(0, n, size, 0, masks)
}
