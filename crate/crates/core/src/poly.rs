//! Sparse exact polynomials over R = k[x_0..x_n] and S = R[y_0..y_n].
//!
//! Term lists are kept sorted strictly descending in the ring's active
//! order with no zero coefficients, so equality is structural and the
//! lead term is always `terms[0]`.

use std::fmt;
use std::sync::Arc;

use crate::bidegree::BiDegree;
use crate::error::AlgebraError;
use crate::field::Field;
use crate::monomial::Monomial;
use crate::order::TermOrder;

/// Ring descriptor shared by all values computed over it.
#[derive(Clone, Debug, PartialEq)]
pub struct Ring<K: Field> {
    pub field: K,
    pub num_x: usize,
    pub num_y: usize,
    pub order: TermOrder,
}

pub type RingRef<K> = Arc<Ring<K>>;

impl<K: Field> Ring<K> {
    /// R = k[x_0..x_{num_x-1}].
    pub fn polynomial_ring(field: K, num_x: usize, order: TermOrder) -> RingRef<K> {
        Arc::new(Ring {
            field,
            num_x,
            num_y: 0,
            order,
        })
    }

    /// S = k\[x_0..\]\[y_0..\] with matching variable counts.
    pub fn bigraded_ring(field: K, num_x: usize, num_y: usize, order: TermOrder) -> RingRef<K> {
        Arc::new(Ring {
            field,
            num_x,
            num_y,
            order,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_x + self.num_y
    }

    pub fn var_name(&self, var: usize) -> String {
        if var < self.num_x {
            format!("x{var}")
        } else {
            format!("y{}", var - self.num_x)
        }
    }

    pub fn same_ring(&self, other: &Ring<K>) -> bool {
        self == other
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial<K: Field> {
    ring: RingRef<K>,
    /// (monomial, coefficient), sorted strictly descending, no zeros.
    terms: Vec<(Monomial, K::Elem)>,
}

impl<K: Field> PartialEq for Polynomial<K> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.terms == other.terms
    }
}

impl<K: Field> Polynomial<K> {
    pub fn zero(ring: &RingRef<K>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef<K>) -> Self {
        Self::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &RingRef<K>, c: K::Elem) -> Self {
        if ring.field.is_zero(&c) {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.num_vars()), c)],
        }
    }

    pub fn variable(ring: &RingRef<K>, var: usize) -> Self {
        assert!(var < ring.num_vars(), "variable index out of range");
        Polynomial {
            ring: ring.clone(),
            terms: vec![(
                Monomial::variable(ring.num_vars(), ring.num_x, var),
                ring.field.one(),
            )],
        }
    }

    pub fn x_var(ring: &RingRef<K>, i: usize) -> Self {
        assert!(i < ring.num_x);
        Self::variable(ring, i)
    }

    pub fn y_var(ring: &RingRef<K>, i: usize) -> Self {
        assert!(i < ring.num_y);
        Self::variable(ring, ring.num_x + i)
    }

    pub fn term(ring: &RingRef<K>, mon: Monomial, c: K::Elem) -> Self {
        if ring.field.is_zero(&c) {
            return Self::zero(ring);
        }
        debug_assert_eq!(mon.num_vars(), ring.num_vars());
        Polynomial {
            ring: ring.clone(),
            terms: vec![(mon, c)],
        }
    }

    /// Canonicalize an arbitrary term list: sort, merge, drop zeros.
    pub fn from_terms(ring: &RingRef<K>, mut terms: Vec<(Monomial, K::Elem)>) -> Self {
        terms.sort_by(|a, b| ring.order.cmp(ring.num_x, &b.0, &a.0));
        let mut out: Vec<(Monomial, K::Elem)> = Vec::with_capacity(terms.len());
        for (mon, c) in terms {
            match out.last_mut() {
                Some((m, acc)) if *m == mon => {
                    *acc = ring.field.add(acc, &c);
                    if ring.field.is_zero(acc) {
                        out.pop();
                    }
                }
                _ => {
                    if !ring.field.is_zero(&c) {
                        out.push((mon, c));
                    }
                }
            }
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &RingRef<K> {
        &self.ring
    }

    pub fn field(&self) -> &K {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, K::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn lead_term(&self) -> Option<(&Monomial, &K::Elem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// A nonzero constant, i.e. a unit of the graded ring.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_bihomogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.bidegree();
                self.terms.iter().all(|(m, _)| m.bidegree() == d)
            }
        }
    }

    /// Bidegree of a nonzero bihomogeneous polynomial.
    pub fn bidegree(&self) -> Option<BiDegree> {
        let (m0, _) = self.terms.first()?;
        let d = m0.bidegree();
        if self.terms.iter().all(|(m, _)| m.bidegree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn neg(&self) -> Self {
        let f = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate_rhs: bool) -> Self {
        debug_assert!(self.ring.same_ring(&other.ring), "ring mismatch");
        let ring = &self.ring;
        let f = &ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ring.order.cmp(ring.num_x, ma, mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate_rhs { f.neg(cb) } else { cb.clone() };
                    out.push((mb.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate_rhs { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        for (m, c) in &self.terms[i..] {
            out.push((m.clone(), c.clone()));
        }
        for (m, c) in &other.terms[j..] {
            let c = if negate_rhs { f.neg(c) } else { c.clone() };
            out.push((m.clone(), c));
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Multiply by a single term. The workhorse of division loops.
    pub fn mul_term(&self, mon: &Monomial, c: &K::Elem) -> Self {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mon), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        let one = Monomial::one(self.ring.num_vars());
        self.mul_term(&one, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.ring.same_ring(&other.ring), "ring mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        // Accumulate into a term list and canonicalize once; inputs here
        // are small enough that heap-based merging would not pay off.
        let f = &self.ring.field;
        let mut acc: Vec<(Monomial, K::Elem)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.push((ma.mul(mb), f.mul(ca, cb)));
            }
        }
        Self::from_terms(&self.ring, acc)
    }

    /// Move a polynomial into a ring with the same x-block and a possibly
    /// larger y-block (e.g. R into S), re-sorting under the target order.
    pub fn into_ring(&self, target: &RingRef<K>) -> Self {
        assert_eq!(self.ring.num_x, target.num_x, "x-block mismatch");
        assert!(self.ring.num_y <= target.num_y, "cannot drop y variables");
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                exps.resize(target.num_vars(), 0);
                (Monomial::from_exps(&exps, target.num_x), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Evaluate at a point, substituting values for every variable.
    pub fn eval(&self, point: &[K::Elem]) -> K::Elem {
        assert_eq!(point.len(), self.ring.num_vars());
        let f = &self.ring.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (var, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = f.mul(&t, &point[var]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn max_y_degree(&self) -> u16 {
        self.terms.iter().map(|(m, _)| m.ydeg()).max().unwrap_or(0)
    }
}

/// Binary arithmetic with the ring-mismatch check surfaced as an error.
pub fn poly_arith<K: Field>(
    p: &Polynomial<K>,
    q: &Polynomial<K>,
    op: ArithOp,
) -> Result<Polynomial<K>, AlgebraError> {
    if !p.ring().same_ring(q.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => p.add(q),
        ArithOp::Sub => p.sub(q),
        ArithOp::Mul => p.mul(q),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let field = &self.ring.field;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let cs = field.fmt_elem(c);
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (var, &e) in m.exps().iter().enumerate() {
                if e == 1 {
                    factors.push(self.ring.var_name(var));
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ring.var_name(var), e));
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
