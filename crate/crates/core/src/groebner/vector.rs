//! Sparse elements of free modules, ordered by a module term order.

use std::cmp::Ordering;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::{ModuleOrder, TermOrder};
use crate::poly::{Polynomial, RingRef};

/// Comparison context: the ring order plus the ambient module order.
#[derive(Clone, Debug)]
pub struct OrdCtx {
    pub order: TermOrder,
    pub num_x: usize,
    pub module_order: ModuleOrder,
}

impl OrdCtx {
    pub fn new(order: TermOrder, num_x: usize, module_order: ModuleOrder) -> Self {
        OrdCtx {
            order,
            num_x,
            module_order,
        }
    }

    pub fn cmp_terms(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        self.module_order.cmp(self.order, self.num_x, a, b)
    }
}

/// A sparse module element: terms (position, monomial, coefficient),
/// sorted strictly descending under the ambient module order.
#[derive(Clone, Debug, PartialEq)]
pub struct VecElem<K: Field> {
    pub terms: Vec<(usize, Monomial, K::Elem)>,
}

impl<K: Field> VecElem<K> {
    pub fn zero() -> Self {
        VecElem { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(usize, &Monomial, &K::Elem)> {
        self.terms.first().map(|(p, m, c)| (*p, m, c))
    }

    /// Standard basis vector e_pos.
    pub fn unit(ring: &RingRef<K>, pos: usize) -> Self {
        VecElem {
            terms: vec![(pos, Monomial::one(ring.num_vars()), ring.field.one())],
        }
    }

    pub fn from_terms(ring: &RingRef<K>, ctx: &OrdCtx, mut terms: Vec<(usize, Monomial, K::Elem)>) -> Self {
        // Descending under the module order.
        terms.sort_by(|a, b| ctx.cmp_terms((&b.1, b.0), (&a.1, a.0)));
        let mut out: Vec<(usize, Monomial, K::Elem)> = Vec::with_capacity(terms.len());
        for (p, m, c) in terms {
            match out.last_mut() {
                Some((lp, lm, lc)) if *lp == p && *lm == m => {
                    *lc = ring.field.add(lc, &c);
                    if ring.field.is_zero(lc) {
                        out.pop();
                    }
                }
                _ => {
                    if !ring.field.is_zero(&c) {
                        out.push((p, m, c));
                    }
                }
            }
        }
        VecElem { terms: out }
    }

    /// Column of polynomials -> sparse vector.
    pub fn from_column(ring: &RingRef<K>, ctx: &OrdCtx, col: &[Polynomial<K>]) -> Self {
        let mut terms = Vec::new();
        for (pos, p) in col.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((pos, m.clone(), c.clone()));
            }
        }
        Self::from_terms(ring, ctx, terms)
    }

    /// Sparse vector -> column of polynomials of the given rank.
    pub fn to_column(&self, ring: &RingRef<K>, rank: usize) -> Vec<Polynomial<K>> {
        let mut buckets: Vec<Vec<(Monomial, K::Elem)>> = vec![Vec::new(); rank];
        for (p, m, c) in &self.terms {
            buckets[*p].push((m.clone(), c.clone()));
        }
        buckets
            .into_iter()
            .map(|terms| Polynomial::from_terms(ring, terms))
            .collect()
    }

    pub fn neg(&self, ring: &RingRef<K>) -> Self {
        VecElem {
            terms: self
                .terms
                .iter()
                .map(|(p, m, c)| (*p, m.clone(), ring.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, ring: &RingRef<K>, c: &K::Elem) -> Self {
        if ring.field.is_zero(c) {
            return Self::zero();
        }
        VecElem {
            terms: self
                .terms
                .iter()
                .map(|(p, m, a)| (*p, m.clone(), ring.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, ring: &RingRef<K>, mon: &Monomial, c: &K::Elem) -> Self {
        if ring.field.is_zero(c) {
            return Self::zero();
        }
        // Multiplying by a monomial preserves the relative order of terms
        // for every global module order in use here.
        VecElem {
            terms: self
                .terms
                .iter()
                .map(|(p, m, a)| (*p, m.mul(mon), ring.field.mul(a, c)))
                .collect(),
        }
    }

    /// self + other, merged under the context order.
    pub fn add(&self, ring: &RingRef<K>, ctx: &OrdCtx, other: &Self) -> Self {
        let f = &ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (pa, ma, ca) = &self.terms[i];
            let (pb, mb, cb) = &other.terms[j];
            match ctx.cmp_terms((ma, *pa), (mb, *pb)) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(ca, cb);
                    if !f.is_zero(&c) {
                        out.push((*pa, ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        VecElem { terms: out }
    }

    pub fn sub(&self, ring: &RingRef<K>, ctx: &OrdCtx, other: &Self) -> Self {
        self.add(ring, ctx, &other.neg(ring))
    }

    /// Deterministic total order on distinct elements, used only to make
    /// generator lists reproducible. Compares term lists lexicographically.
    pub fn canonical_cmp(&self, ctx: &OrdCtx, other: &Self) -> Ordering {
        for ((pa, ma, ca), (pb, mb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            match ctx.cmp_terms((ma, *pa), (mb, *pb)) {
                Ordering::Equal => {}
                c => return c.reverse(),
            }
            match ca.cmp(cb) {
                Ordering::Equal => {}
                c => return c,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}
