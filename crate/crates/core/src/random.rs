//! Seeded pseudo-random homogeneous ideals.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::groebner::Ideal;
use crate::ring::{monomials_of_degree, MonomialOrder, PolyRing, Polynomial, DEFAULT_PRIME};

pub const DEFAULT_SEED: u64 = 20_260_101;

const VARS: [&str; 4] = ["x", "y", "z", "w"];

/// Bounds on the shape of generated ideals.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_vars: usize,
    pub max_degree: i32,
    pub max_gens: usize,
    pub max_terms: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_vars: 4,
            max_degree: 3,
            max_gens: 4,
            max_terms: 3,
        }
    }
}

/// Sparse generators with few terms, so that non-Cohen-Macaulay and
/// non-S_2 homology shows up often.
pub fn random_ideal(rng: &mut ChaCha8Rng, shape: Shape) -> Result<Ideal> {
    let n = rng.gen_range(2..=shape.max_vars.min(VARS.len()));
    let ring = PolyRing::new(DEFAULT_PRIME, &VARS[..n], MonomialOrder::Grevlex)?;
    loop {
        let k = rng.gen_range(1..=shape.max_gens);
        let gens: Vec<Polynomial> = (0..k).map(|_| random_form(rng, &ring, shape)).collect();
        let ideal = Ideal::new(&ring, gens)?;
        if !ideal.is_zero() {
            return Ok(ideal);
        }
    }
}

fn random_form(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, shape: Shape) -> Polynomial {
    let d = rng.gen_range(1..=shape.max_degree);
    let monos = monomials_of_degree(ring.nvars(), d);
    let t = rng.gen_range(1..=shape.max_terms);
    let p = ring.field().modulus();
    let terms = (0..t)
        .map(|_| (monos[rng.gen_range(0..monos.len())].clone(), rng.gen_range(1..p)))
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// `count` ideals from one seed, named `rand00`, `rand01`, ...
pub fn random_ideals(seed: u64, count: usize, shape: Shape) -> Result<Vec<(String, Ideal)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| Ok((format!("rand{k:02}"), random_ideal(&mut rng, shape)?)))
        .collect()
}
