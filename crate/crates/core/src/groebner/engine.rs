//! Buchberger's algorithm over free modules, with optional cofactor
//! tracking (every basis element as a combination of the inputs) and
//! syzygy recording (one syzygy of the inputs per S-pair that reduces
//! to zero).
//!
//! Pair selection follows the normal strategy: smallest lcm degree first,
//! ties broken lexicographically, so runs are deterministic. The chain and
//! product criteria are applied only when syzygies are not requested; with
//! syzygies on, every same-position pair is reduced, which by Schreyer's
//! construction makes the recorded syzygies a generating set of the syzygy
//! module of the inputs.

use std::collections::{BTreeSet, HashSet};

use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::ModuleOrder;
use crate::poly::RingRef;

use super::vector::{OrdCtx, VecElem};

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct EngineOptions {
    pub track_cofactors: bool,
    pub record_syzygies: bool,
    /// Allow pair-skipping criteria (forced off when recording syzygies).
    pub use_criteria: bool,
}

type PairKey = (u32, u16, u16, usize, usize);

/// (basis index, monomial factor, coefficient factor) per division step.
pub(crate) type DivisionSteps<K> = Vec<(usize, Monomial, <K as Field>::Elem)>;

pub(crate) struct GbEngine<K: Field> {
    pub ring: RingRef<K>,
    pub ctx: OrdCtx,
    pub cof_ctx: OrdCtx,
    opts: EngineOptions,
    rank_one: bool,
    pub elems: Vec<VecElem<K>>,
    leads: Vec<(usize, Monomial)>,
    pub cofs: Vec<VecElem<K>>,
    pub n_inputs: usize,
    queue: BTreeSet<PairKey>,
    processed: HashSet<(usize, usize)>,
    pub syzygies: Vec<VecElem<K>>,
}

impl<K: Field> GbEngine<K> {
    /// Start an engine over an ambient free module of the given rank.
    pub fn new(
        ring: &RingRef<K>,
        ambient_rank: usize,
        module_order: ModuleOrder,
        opts: EngineOptions,
    ) -> Self {
        let ctx = OrdCtx::new(ring.order, ring.num_x, module_order);
        let cof_ctx = OrdCtx::new(ring.order, ring.num_x, ModuleOrder::PosOverTerm);
        let use_criteria = opts.use_criteria && !opts.record_syzygies;
        GbEngine {
            ring: ring.clone(),
            ctx,
            cof_ctx,
            opts: EngineOptions {
                use_criteria,
                ..opts
            },
            rank_one: ambient_rank == 1,
            elems: Vec::new(),
            leads: Vec::new(),
            cofs: Vec::new(),
            n_inputs: 0,
            queue: BTreeSet::new(),
            processed: HashSet::new(),
            syzygies: Vec::new(),
        }
    }

    /// Feed the input generators. Zero inputs contribute a unit syzygy and
    /// are not inserted; all nonzero inputs stay in the basis, which makes
    /// the recorded syzygies land directly in input coordinates.
    pub fn add_inputs(&mut self, inputs: Vec<VecElem<K>>) {
        self.n_inputs = inputs.len();
        // Refine the cofactor order to the Schreyer order induced by the
        // input lead terms when they are all nonzero.
        if inputs.iter().all(|v| !v.is_zero()) && !inputs.is_empty() {
            let anchors: Vec<(Monomial, usize)> = inputs
                .iter()
                .map(|v| {
                    let (p, m, _) = v.lead().unwrap();
                    (m.clone(), p)
                })
                .collect();
            self.cof_ctx = OrdCtx::new(
                self.ring.order,
                self.ring.num_x,
                ModuleOrder::schreyer(anchors, self.ctx.module_order.clone()),
            );
        }
        for (i, v) in inputs.into_iter().enumerate() {
            if v.is_zero() {
                if self.opts.record_syzygies {
                    self.syzygies.push(VecElem::unit(&self.ring, i));
                }
                continue;
            }
            let cof = VecElem::unit(&self.ring, i);
            self.insert_element(v, cof);
        }
    }

    /// Add one generator after construction (incremental use; no syzygy
    /// or cofactor semantics attached).
    pub fn push_generator(&mut self, v: VecElem<K>) {
        if !v.is_zero() {
            let cof = VecElem::zero();
            self.insert_element(v, cof);
        }
    }

    fn insert_element(&mut self, v: VecElem<K>, cof: VecElem<K>) {
        let f = &self.ring.field;
        let (_, _, lc) = v.lead().expect("nonzero element");
        let inv = f.inv(lc);
        let v = v.scale(&self.ring, &inv);
        let cof = cof.scale(&self.ring, &inv);
        let (pos, mon, _) = v.lead().unwrap();
        let t = self.elems.len();
        let lead = (pos, mon.clone());
        for k in 0..t {
            if self.leads[k].0 == pos {
                let lcm = self.leads[k].1.lcm(&lead.1, self.ring.num_x);
                self.queue
                    .insert((lcm.total_deg(), lcm.xdeg(), lcm.ydeg(), k, t));
            }
        }
        self.elems.push(v);
        self.leads.push(lead);
        self.cofs.push(cof);
    }

    fn find_reducer(&self, pos: usize, mon: &Monomial) -> Option<usize> {
        (0..self.elems.len()).find(|&k| self.leads[k].0 == pos && self.leads[k].1.divides(mon))
    }

    /// Fully reduce `work`; returns the normal form and the division steps
    /// (basis index, monomial factor, coefficient factor).
    pub fn reduce_full(&self, mut work: VecElem<K>) -> (VecElem<K>, DivisionSteps<K>) {
        let ring = self.ring.clone();
        let mut remainder: Vec<(usize, Monomial, K::Elem)> = Vec::new();
        let mut quots: DivisionSteps<K> = Vec::new();
        while let Some((pos, mon, c)) = work.lead().map(|(p, m, c)| (p, m.clone(), c.clone())) {
            match self.find_reducer(pos, &mon) {
                Some(k) => {
                    let factor = mon.checked_div(&self.leads[k].1).unwrap();
                    // basis is monic, so the coefficient factor is just c
                    let sub = self.elems[k].mul_term(&ring, &factor, &c);
                    work = work.sub(&ring, &self.ctx, &sub);
                    quots.push((k, factor, c));
                }
                None => {
                    remainder.push((pos, mon, c));
                    work.terms.remove(0);
                }
            }
        }
        (VecElem { terms: remainder }, quots)
    }

    pub fn normal_form(&self, v: &VecElem<K>) -> VecElem<K> {
        self.reduce_full(v.clone()).0
    }

    /// Combine division steps against the cofactor table.
    fn combine_cofactors(&self, quots: &[(usize, Monomial, <K as Field>::Elem)]) -> VecElem<K> {
        let mut acc = VecElem::zero();
        for (k, mon, c) in quots {
            let piece = self.cofs[*k].mul_term(&self.ring, mon, c);
            acc = acc.add(&self.ring, &self.cof_ctx, &piece);
        }
        acc
    }

    fn chain_criterion_applies(&self, i: usize, j: usize, lcm: &Monomial) -> bool {
        let pos = self.leads[i].0;
        (0..self.elems.len()).any(|k| {
            k != i
                && k != j
                && self.leads[k].0 == pos
                && self.leads[k].1.divides(lcm)
                && self.processed.contains(&key(i, k))
                && self.processed.contains(&key(j, k))
        })
    }

    /// Run Buchberger to completion.
    pub fn complete(&mut self) {
        let ring = self.ring.clone();
        let f = ring.field.clone();
        while let Some(&pk) = self.queue.iter().next() {
            self.queue.remove(&pk);
            let (_, _, _, i, j) = pk;
            self.processed.insert(key(i, j));
            let lm_i = &self.leads[i].1;
            let lm_j = &self.leads[j].1;
            let lcm = lm_i.lcm(lm_j, ring.num_x);
            if self.opts.use_criteria {
                // product criterion is a statement about ring elements only
                if self.rank_one && lm_i.is_coprime(lm_j) {
                    continue;
                }
                if self.chain_criterion_applies(i, j, &lcm) {
                    continue;
                }
            }
            let u_i = lcm.checked_div(lm_i).unwrap();
            let u_j = lcm.checked_div(lm_j).unwrap();
            let one = f.one();
            let lhs = self.elems[i].mul_term(&ring, &u_i, &one);
            let rhs = self.elems[j].mul_term(&ring, &u_j, &one);
            let spoly = lhs.sub(&ring, &self.ctx, &rhs);
            let (nf, quots) = self.reduce_full(spoly);
            let need_combo = self.opts.track_cofactors || self.opts.record_syzygies;
            let combo = if need_combo {
                let a = self.cofs[i].mul_term(&ring, &u_i, &one);
                let b = self.cofs[j].mul_term(&ring, &u_j, &one);
                let q = self.combine_cofactors(&quots);
                Some(a.sub(&ring, &self.cof_ctx, &b).sub(&ring, &self.cof_ctx, &q))
            } else {
                None
            };
            if nf.is_zero() {
                if self.opts.record_syzygies {
                    let s = combo.expect("combo tracked");
                    if !s.is_zero() {
                        self.syzygies.push(s);
                    }
                }
            } else {
                let cof = combo.unwrap_or_else(VecElem::zero);
                self.insert_element(nf, cof);
            }
        }
    }

    /// Express `v` over the inputs: returns u with inputs . u = v, or None
    /// when v is not in the submodule. Requires cofactor tracking.
    pub fn lift(&self, v: &VecElem<K>) -> Option<VecElem<K>> {
        debug_assert!(self.opts.track_cofactors);
        let (nf, quots) = self.reduce_full(v.clone());
        if !nf.is_zero() {
            return None;
        }
        Some(self.combine_cofactors(&quots))
    }
}

fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}
