use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use super::vector::{merge_scaled_into, FreeModule, FreeVector, Term};
use crate::error::{Error, Result};
use crate::ring::{Monomial, PolyRing};

/// Default number of reduction steps a single basis computation may take.
pub const DEFAULT_STEP_BUDGET: u64 = 20_000_000;

static BUDGET_OVERRIDE: AtomicU64 = AtomicU64::new(0);

/// Overrides the step budget process-wide (`0` restores the default/env value).
pub fn set_step_budget(budget: u64) {
    BUDGET_OVERRIDE.store(budget, AtomicOrdering::Relaxed);
}

/// Current step budget: explicit override, then `KOSZUL_STEP_BUDGET`, then the default.
pub fn step_budget() -> u64 {
    let o = BUDGET_OVERRIDE.load(AtomicOrdering::Relaxed);
    if o > 0 {
        return o;
    }
    std::env::var("KOSZUL_STEP_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_STEP_BUDGET)
}

pub(crate) struct Budget {
    left: u64,
    total: u64,
}

impl Budget {
    pub(crate) fn new() -> Self {
        let total = step_budget();
        Budget { left: total, total }
    }

    #[inline]
    pub(crate) fn step(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::BudgetExceeded { budget: self.total });
        }
        self.left -= 1;
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Lead {
    pos: u32,
    mono: Monomial,
    mask: u64,
}

impl Lead {
    fn of(v: &FreeVector) -> Lead {
        let t = v.lead().expect("lead of zero vector");
        Lead {
            pos: t.pos,
            mono: t.mono.clone(),
            mask: t.mono.support_mask(),
        }
    }

    #[inline]
    fn divides(&self, pos: u32, mono: &Monomial, mask: u64) -> bool {
        self.pos == pos && self.mask & !mask == 0 && self.mono.divides(mono)
    }
}

/// A reduced Gröbner basis of a homogeneous submodule of a graded free
/// module, for the position-over-term order on top of the ring order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    module: FreeModule,
    elems: Vec<FreeVector>,
    leads: Vec<Lead>,
    min_gens: Vec<usize>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: u32,
    deg: i32,
    id: u64,
}

impl GroebnerBasis {
    /// Buchberger's algorithm, normal selection strategy, Gebauer–Möller
    /// pair pruning. Inputs must be homogeneous with respect to `module`.
    pub fn compute(ring: &PolyRing, module: &FreeModule, gens: &[FreeVector]) -> Result<Self> {
        Ok(Self::compute_impl(ring, module, gens, None, None)?.0)
    }

    /// Indices of a minimal generating subset of `gens`, in input order.
    /// Only S-pairs up to the largest input degree matter for this.
    pub fn minimal_subset(ring: &PolyRing, module: &FreeModule, gens: &[FreeVector]) -> Result<Vec<usize>> {
        let top = gens.iter().filter_map(|g| g.degree(module)).max();
        let (gb, _) = Self::compute_impl(ring, module, gens, Some(top.unwrap_or(0)), None)?;
        Ok(gb.min_gens)
    }

    /// Basis of the part of the submodule led in positions below `split`,
    /// together with every vector that reduced into positions `>= split`
    /// along the way. Those vectors are not inserted into the basis; when
    /// positions below `split` carry the image of tracked coordinates they
    /// generate the syzygies.
    pub(crate) fn compute_split(
        ring: &PolyRing,
        module: &FreeModule,
        gens: &[FreeVector],
        split: usize,
    ) -> Result<(Self, Vec<FreeVector>)> {
        Self::compute_impl(ring, module, gens, None, Some(split))
    }

    fn compute_impl(
        ring: &PolyRing,
        module: &FreeModule,
        gens: &[FreeVector],
        max_deg: Option<i32>,
        split: Option<usize>,
    ) -> Result<(Self, Vec<FreeVector>)> {
        let mut budget = Budget::new();
        let mut inputs: Vec<(i32, usize)> = Vec::new();
        for (k, g) in gens.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let d = g
                .degree(module)
                .ok_or_else(|| Error::NotHomogeneous(g.format(ring)))?;
            inputs.push((d, k));
        }
        inputs.sort_by_key(|&(d, k)| (d, k));

        let rank_one = module.rank() == 1;
        let mut gb = GroebnerBasis {
            module: module.clone(),
            elems: Vec::new(),
            leads: Vec::new(),
            min_gens: Vec::new(),
        };
        let mut pairs: Vec<Pair> = Vec::new();
        let mut collected = Vec::new();
        let mut next_id = 0u64;
        let mut next_input = 0usize;

        loop {
            let best_pair = pairs
                .iter()
                .enumerate()
                .min_by_key(|(_, p)| (p.deg, p.id))
                .map(|(k, p)| (k, p.deg));
            let input_deg = inputs.get(next_input).map(|x| x.0);
            let take_pair = match (best_pair, input_deg) {
                (None, None) => break,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some((_, pd)), Some(id)) => pd <= id,
            };
            let (candidate, from_input) = if take_pair {
                let (k, _) = best_pair.unwrap();
                let p = pairs.swap_remove(k);
                (gb.s_vector(ring, &p), None)
            } else {
                let (_, k) = inputs[next_input];
                next_input += 1;
                (gens[k].clone(), Some(k))
            };
            let h = gb.top_reduce(ring, candidate, &mut budget)?;
            if h.is_zero() {
                continue;
            }
            if split.is_some_and(|r| h.lead().unwrap().pos as usize >= r) {
                collected.push(h);
                continue;
            }
            if let Some(k) = from_input {
                gb.min_gens.push(k);
            }
            let h = h.monic(ring);
            gb.update_pairs(&mut pairs, &h, rank_one, &mut next_id);
            if let Some(top) = max_deg {
                pairs.retain(|p| p.deg <= top);
            }
            gb.leads.push(Lead::of(&h));
            gb.elems.push(h);
        }
        gb.min_gens.sort_unstable();
        if max_deg.is_none() {
            gb.interreduce(ring, &mut budget)?;
        }
        Ok((gb, collected))
    }

    fn s_vector(&self, ring: &PolyRing, p: &Pair) -> FreeVector {
        let (a, b) = (&self.elems[p.i], &self.elems[p.j]);
        let qa = self.leads[p.i].mono.quotient_of(&p.lcm);
        let qb = self.leads[p.j].mono.quotient_of(&p.lcm);
        let f = ring.field();
        a.mul_term(ring, &qa, 1).add_scaled(ring, f.neg(1), &qb, b)
    }

    fn update_pairs(&self, pairs: &mut Vec<Pair>, h: &FreeVector, rank_one: bool, next_id: &mut u64) {
        let hl = Lead::of(h);
        let hidx = self.elems.len();
        let deg_shift = self.module.degs[hl.pos as usize];
        // candidate pairs (g, h) with the same lead position
        let cands: Vec<(usize, Monomial, bool)> = self
            .leads
            .iter()
            .enumerate()
            .filter(|(_, l)| l.pos == hl.pos)
            .map(|(g, l)| {
                let coprime = rank_one && l.mono.is_coprime(&hl.mono);
                (g, l.mono.lcm(&hl.mono), coprime)
            })
            .collect();
        let mut keep = vec![false; cands.len()];
        for a in 0..cands.len() {
            let (_, ref la, coprime) = cands[a];
            if coprime {
                keep[a] = true;
                continue;
            }
            let dominated = (0..cands.len()).any(|b| {
                b != a
                    && (b > a || keep[b])
                    && cands[b].1.divides(la)
                    && (cands[b].1 != *la || b > a || keep[b])
            });
            keep[a] = !dominated;
        }
        // chain criterion on old pairs
        pairs.retain(|p| {
            if p.pos != hl.pos || !hl.mono.divides(&p.lcm) {
                return true;
            }
            let li = self.leads[p.i].mono.lcm(&hl.mono);
            let lj = self.leads[p.j].mono.lcm(&hl.mono);
            li == p.lcm || lj == p.lcm
        });
        for (a, (g, lcm, coprime)) in cands.into_iter().enumerate() {
            if !keep[a] || coprime {
                continue;
            }
            let deg = lcm.degree() + deg_shift;
            pairs.push(Pair {
                i: g,
                j: hidx,
                lcm,
                pos: hl.pos,
                deg,
                id: *next_id,
            });
            *next_id += 1;
        }
    }

    fn find_divisor(&self, t: &Term, mask: u64) -> Option<usize> {
        self.leads.iter().position(|l| l.divides(t.pos, &t.mono, mask))
    }

    fn top_reduce(&self, ring: &PolyRing, mut f: FreeVector, budget: &mut Budget) -> Result<FreeVector> {
        let field = ring.field();
        let mut buf = Vec::new();
        loop {
            let Some(t) = f.lead() else { return Ok(f) };
            let Some(k) = self.find_divisor(t, t.mono.support_mask()) else {
                return Ok(f);
            };
            budget.step()?;
            let q = self.leads[k].mono.quotient_of(&t.mono);
            let c = field.neg(t.coef);
            buf.clear();
            merge_scaled_into(ring, &f.terms()[1..], c, &q, &self.elems[k].terms()[1..], &mut buf);
            f = FreeVector::from_sorted(std::mem::take(&mut buf));
        }
    }

    /// Full normal form: no term of the result is divisible by a lead term.
    fn reduce_with(&self, ring: &PolyRing, f: &FreeVector, skip: Option<usize>, budget: &mut Budget) -> Result<FreeVector> {
        let field = ring.field();
        let mut terms: Vec<Term> = f.terms().to_vec();
        let mut k = 0;
        let mut buf = Vec::new();
        while k < terms.len() {
            let t = &terms[k];
            let mask = t.mono.support_mask();
            let div = self
                .leads
                .iter()
                .enumerate()
                .position(|(i, l)| Some(i) != skip && l.divides(t.pos, &t.mono, mask));
            match div {
                None => k += 1,
                Some(i) => {
                    budget.step()?;
                    let q = self.leads[i].mono.quotient_of(&t.mono);
                    let c = field.neg(t.coef);
                    buf.clear();
                    buf.extend_from_slice(&terms[..k]);
                    merge_scaled_into(ring, &terms[k + 1..], c, &q, &self.elems[i].terms()[1..], &mut buf);
                    std::mem::swap(&mut terms, &mut buf);
                }
            }
        }
        Ok(FreeVector::from_sorted(terms))
    }

    fn interreduce(&mut self, ring: &PolyRing, budget: &mut Budget) -> Result<()> {
        for k in 0..self.elems.len() {
            let lead = self.elems[k].lead().unwrap().clone();
            let tail = FreeVector::from_sorted(self.elems[k].terms()[1..].to_vec());
            let tail = self.reduce_with(ring, &tail, Some(k), budget)?;
            let mut terms = vec![lead];
            terms.extend_from_slice(tail.terms());
            self.elems[k] = FreeVector::from_sorted(terms);
        }
        Ok(())
    }

    /// Normal form of `v` modulo the submodule.
    pub fn reduce(&self, ring: &PolyRing, v: &FreeVector) -> Result<FreeVector> {
        let mut budget = Budget::new();
        self.reduce_with(ring, v, None, &mut budget)
    }

    pub fn contains(&self, ring: &PolyRing, v: &FreeVector) -> Result<bool> {
        Ok(self.reduce(ring, v)?.is_zero())
    }

    pub fn elements(&self) -> &[FreeVector] {
        &self.elems
    }

    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Indices (into the input list) of a minimal homogeneous generating set.
    pub fn minimal_generator_indices(&self) -> &[usize] {
        &self.min_gens
    }

    /// Lead terms `(position, monomial)` of the basis.
    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.leads.iter().map(|l| (l.pos as usize, l.mono.clone())).collect()
    }

    /// True when `e_pos` itself lies in the submodule.
    pub fn contains_basis_vector(&self, pos: usize) -> bool {
        self.leads.iter().any(|l| l.pos as usize == pos && l.mono.is_one())
    }

    /// Every position's basis vector is in the submodule.
    pub fn is_everything(&self) -> bool {
        (0..self.module.rank()).all(|p| self.contains_basis_vector(p))
    }

    /// Re-checks Buchberger's criterion: every S-vector reduces to zero.
    pub fn verify_s_pairs(&self, ring: &PolyRing) -> Result<bool> {
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                if self.leads[i].pos != self.leads[j].pos {
                    continue;
                }
                let lcm = self.leads[i].mono.lcm(&self.leads[j].mono);
                let p = Pair {
                    i,
                    j,
                    pos: self.leads[i].pos,
                    deg: 0,
                    lcm,
                    id: 0,
                };
                if !self.reduce(ring, &self.s_vector(ring, &p))?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// No lead term divides another.
    pub fn is_autoreduced(&self) -> bool {
        for (i, a) in self.leads.iter().enumerate() {
            for (j, b) in self.leads.iter().enumerate() {
                if i != j && a.divides(b.pos, &b.mono, b.mask) {
                    return false;
                }
            }
        }
        true
    }
}
