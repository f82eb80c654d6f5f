//! Hilbert functions of Koszul homology by linear algebra on degree slices,
//! with no Gröbner bases involved.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::koszul::subsets;
use crate::ring::{monomials_of_degree, Monomial, PolyRing, Polynomial, PrimeField};

/// Largest slice (rows times columns) the oracle will eliminate.
pub const DEFAULT_SLICE_LIMIT: usize = 50_000_000;

/// Basis of `K_i` in one internal degree: pairs of an exterior basis
/// element and a monomial.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    pub degree: i32,
    pub elements: Vec<(u64, Monomial)>,
}

impl SliceBasis {
    pub fn new(n: usize, degrees: &[i32], i: usize, d: i32) -> Self {
        let mut elements = Vec::new();
        for s in subsets(degrees.len(), i) {
            let shift: i32 = (0..degrees.len()).filter(|j| s >> j & 1 == 1).map(|j| degrees[j]).sum();
            if d >= shift {
                for m in monomials_of_degree(n, d - shift) {
                    elements.push((s, m));
                }
            }
        }
        SliceBasis { degree: d, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Rank over `F_p` of a sparse matrix given by its columns, each a list of
/// `(row, value)` entries with nonzero values. Row echelon elimination.
pub fn sparse_rank(field: PrimeField, cols: Vec<Vec<(u32, u32)>>) -> usize {
    let mut pivots: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
    for mut v in cols {
        v.sort_unstable_by_key(|e| e.0);
        loop {
            let Some(&(lead, c)) = v.first() else { break };
            let Some(p) = pivots.get(&lead) else {
                // normalize so the pivot entry is 1
                let inv = field.inv(c);
                for e in v.iter_mut() {
                    e.1 = field.mul(e.1, inv);
                }
                pivots.insert(lead, v);
                break;
            };
            v = axpy(field, &v, field.neg(c), p);
        }
    }
    pivots.len()
}

/// `v + a * p` on sorted sparse vectors.
fn axpy(field: PrimeField, v: &[(u32, u32)], a: u32, p: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        if j == p.len() || (i < v.len() && v[i].0 < p[j].0) {
            out.push(v[i]);
            i += 1;
        } else if i == v.len() || p[j].0 < v[i].0 {
            out.push((p[j].0, field.mul(a, p[j].1)));
            j += 1;
        } else {
            let c = field.add(v[i].1, field.mul(a, p[j].1));
            if c != 0 {
                out.push((v[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of `∂_i: (K_i)_d -> (K_{i-1})_d`.
fn differential_rank(ring: &PolyRing, gens: &[Polynomial], degrees: &[i32], i: usize, d: i32, limit: usize) -> Result<usize> {
    if i == 0 || i > gens.len() {
        return Ok(0);
    }
    let n = ring.nvars();
    let field = ring.field();
    let src = SliceBasis::new(n, degrees, i, d);
    let tgt = SliceBasis::new(n, degrees, i - 1, d);
    if src.is_empty() || tgt.is_empty() {
        return Ok(0);
    }
    if src.len().saturating_mul(tgt.len()) > limit {
        return Err(Error::SliceTooLarge {
            rows: tgt.len(),
            cols: src.len(),
        });
    }
    let index: HashMap<(u64, &Monomial), u32> = tgt
        .elements
        .iter()
        .enumerate()
        .map(|(k, (s, m))| ((*s, m), k as u32))
        .collect();
    let cols = src
        .elements
        .iter()
        .map(|(s, m)| {
            let mut col = Vec::new();
            for (p, j) in (0..gens.len()).filter(|j| s >> j & 1 == 1).enumerate() {
                let rest = s & !(1u64 << j);
                for (gm, gc) in gens[j].terms() {
                    let row = index[&(rest, &m.mul(gm))];
                    let c = if p % 2 == 1 { field.neg(*gc) } else { *gc };
                    col.push((row, c));
                }
            }
            // distinct (rest, monomial) pairs never collide within one column
            col
        })
        .collect();
    Ok(sparse_rank(field, cols))
}

/// `dim (H_i)_d` for `d = 0..=max_deg` on the Koszul complex of `gens`.
pub fn truncated_homology_hf(ring: &PolyRing, gens: &[Polynomial], i: usize, max_deg: i32) -> Result<Vec<i64>> {
    truncated_homology_hf_with_limit(ring, gens, i, max_deg, DEFAULT_SLICE_LIMIT)
}

pub fn truncated_homology_hf_with_limit(
    ring: &PolyRing,
    gens: &[Polynomial],
    i: usize,
    max_deg: i32,
    limit: usize,
) -> Result<Vec<i64>> {
    let degrees = homogeneous_degrees(ring, gens)?;
    let one = |d: i32| -> Result<i64> { slice_homology(ring, gens, &degrees, i, d, limit) };
    crate::par::map_range(0..=max_deg, one)
}

/// Every homology index at once, degree by degree: `table[i][d]`.
pub fn homology_hf_table(ring: &PolyRing, gens: &[Polynomial], max_deg: i32) -> Result<Vec<Vec<i64>>> {
    let degrees = homogeneous_degrees(ring, gens)?;
    let l = gens.len();
    let per_degree = crate::par::map_range(0..=max_deg, |d| -> Result<Vec<i64>> {
        let ranks = (0..=l + 1)
            .map(|i| differential_rank(ring, gens, &degrees, i, d, DEFAULT_SLICE_LIMIT))
            .collect::<Result<Vec<_>>>()?;
        Ok((0..=l)
            .map(|i| {
                let dim = SliceBasis::new(ring.nvars(), &degrees, i, d).len() as i64;
                dim - ranks[i] as i64 - ranks[i + 1] as i64
            })
            .collect())
    })?;
    Ok((0..=l).map(|i| per_degree.iter().map(|row| row[i]).collect()).collect())
}

fn slice_homology(ring: &PolyRing, gens: &[Polynomial], degrees: &[i32], i: usize, d: i32, limit: usize) -> Result<i64> {
    let dim = SliceBasis::new(ring.nvars(), degrees, i, d).len() as i64;
    let out = differential_rank(ring, gens, degrees, i, d, limit)? as i64;
    let inc = differential_rank(ring, gens, degrees, i + 1, d, limit)? as i64;
    Ok(dim - out - inc)
}

fn homogeneous_degrees(ring: &PolyRing, gens: &[Polynomial]) -> Result<Vec<i32>> {
    if gens.len() > 63 {
        return Err(Error::Internal("too many generators for the oracle".into()));
    }
    gens.iter()
        .map(|g| match g.homogeneous_degree() {
            Some(d) if !g.is_zero() => Ok(d),
            _ => Err(Error::NotHomogeneous(ring.display(g).to_string())),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    fn gens(r: &PolyRing, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|g| r.parse(g).unwrap()).collect()
    }

    #[test]
    fn regular_sequence_is_exact() {
        let r = PolyRing::new(32003, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(truncated_homology_hf(&r, &gens(&r, &["x", "y"]), 1, 6).unwrap(), vec![0; 7]);
    }

    #[test]
    fn x2_xy_first_homology() {
        let r = PolyRing::new(32003, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let g = gens(&r, &["x^2", "x*y"]);
        assert_eq!(truncated_homology_hf(&r, &g, 1, 5).unwrap(), vec![0, 0, 0, 1, 1, 1]);
        assert_eq!(truncated_homology_hf(&r, &g, 0, 5).unwrap(), vec![1, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn slice_dimensions() {
        // K_1 for degrees (1, 2) in two variables at d = 3: R_2 + R_1
        let b = SliceBasis::new(2, &[1, 2], 1, 3);
        assert_eq!(b.len(), 3 + 2);
    }

    #[test]
    fn sparse_rank_basics() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(sparse_rank(f, vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)], vec![(1, 3)]]), 2);
        assert_eq!(sparse_rank(f, vec![]), 0);
    }

    #[test]
    fn slice_limit_is_enforced() {
        let r = PolyRing::new(32003, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let g = gens(&r, &["x", "y", "z"]);
        let e = truncated_homology_hf_with_limit(&r, &g, 1, 6, 10).unwrap_err();
        assert!(matches!(e, Error::SliceTooLarge { .. }));
    }
}
