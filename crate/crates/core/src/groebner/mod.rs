//! Groebner bases for submodules of graded free modules, and the derived
//! operations the rest of the library is built on: normal forms, syzygy
//! generators, membership lifts, colon ideals, and Krull dimension.

mod engine;
pub mod hilbert;
mod vector;

use crate::bidegree::BiDegree;
use crate::error::AlgebraError;
use crate::field::Field;
use crate::matrix::{GradedFreeModule, PolyMatrix};
use crate::monomial::Monomial;
use crate::order::ModuleOrder;
use crate::poly::{Polynomial, RingRef};

use engine::{EngineOptions, GbEngine};
pub(crate) use vector::{OrdCtx, VecElem};

/// A reduced Groebner basis of a submodule of a graded free module.
///
/// Elements are monic, tail-reduced against each other, and sorted by
/// descending lead term, so the basis is canonical for its order: two
/// generating sets of the same submodule produce identical bases.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<K: Field> {
    ring: RingRef<K>,
    pub ambient: GradedFreeModule,
    elements: Vec<VecElem<K>>,
    ctx: OrdCtx,
    pub reduced: bool,
}

impl<K: Field> GroebnerBasis<K> {
    /// Reduced basis of the submodule generated by the given columns.
    pub fn of_module(
        ring: &RingRef<K>,
        ambient: &GradedFreeModule,
        columns: &[Vec<Polynomial<K>>],
    ) -> Result<Self, AlgebraError> {
        let ctx = OrdCtx::new(ring.order, ring.num_x, ModuleOrder::PosOverTerm);
        let inputs: Vec<VecElem<K>> = columns
            .iter()
            .map(|c| {
                if c.len() != ambient.rank() {
                    return Err(AlgebraError::ShapeMismatch(format!(
                        "generator has {} entries, ambient rank is {}",
                        c.len(),
                        ambient.rank()
                    )));
                }
                Ok(VecElem::from_column(ring, &ctx, c))
            })
            .collect::<Result<_, _>>()?;
        let mut eng = GbEngine::new(
            ring,
            ambient.rank(),
            ModuleOrder::PosOverTerm,
            EngineOptions {
                use_criteria: true,
                ..Default::default()
            },
        );
        eng.add_inputs(inputs);
        eng.complete();
        let elements = reduce_basis(ring, &ctx, eng.elems);
        Ok(GroebnerBasis {
            ring: ring.clone(),
            ambient: ambient.clone(),
            elements,
            ctx,
            reduced: true,
        })
    }

    /// Reduced basis of an ideal (rank-1 ambient).
    pub fn of_ideal(ring: &RingRef<K>, gens: &[Polynomial<K>]) -> Result<Self, AlgebraError> {
        let cols: Vec<Vec<Polynomial<K>>> = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::of_module(ring, &GradedFreeModule::unit(), &cols)
    }

    pub fn ring(&self) -> &RingRef<K> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements_as_columns(&self) -> Vec<Vec<Polynomial<K>>> {
        self.elements
            .iter()
            .map(|v| v.to_column(&self.ring, self.ambient.rank()))
            .collect()
    }

    /// For an ideal basis, the elements as plain polynomials.
    pub fn ideal_generators(&self) -> Vec<Polynomial<K>> {
        assert_eq!(self.ambient.rank(), 1, "ideal view of a module basis");
        self.elements
            .iter()
            .map(|v| v.to_column(&self.ring, 1).pop().unwrap())
            .collect()
    }

    pub fn lead_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements
            .iter()
            .map(|v| {
                let (p, m, _) = v.lead().expect("basis elements are nonzero");
                (p, m.clone())
            })
            .collect()
    }

    /// Lead monomials of an ideal basis.
    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.lead_terms().into_iter().map(|(_, m)| m).collect()
    }

    pub fn normal_form(&self, column: &[Polynomial<K>]) -> Result<Vec<Polynomial<K>>, AlgebraError> {
        if column.len() != self.ambient.rank() {
            return Err(AlgebraError::ShapeMismatch(
                "normal form of an element outside the ambient module".into(),
            ));
        }
        let v = VecElem::from_column(&self.ring, &self.ctx, column);
        Ok(self.nf_vec(&v).to_column(&self.ring, self.ambient.rank()))
    }

    pub fn normal_form_poly(&self, f: &Polynomial<K>) -> Polynomial<K> {
        assert_eq!(self.ambient.rank(), 1);
        self.normal_form(std::slice::from_ref(f)).unwrap().pop().unwrap()
    }

    pub fn contains(&self, column: &[Polynomial<K>]) -> Result<bool, AlgebraError> {
        Ok(self.normal_form(column)?.iter().all(|p| p.is_zero()))
    }

    pub fn contains_poly(&self, f: &Polynomial<K>) -> bool {
        self.normal_form_poly(f).is_zero()
    }

    fn nf_vec(&self, v: &VecElem<K>) -> VecElem<K> {
        let mut work = v.clone();
        let mut remainder = Vec::new();
        while let Some((pos, mon, c)) = work.lead().map(|(p, m, c)| (p, m.clone(), c.clone())) {
            let reducer = self.elements.iter().position(|g| {
                let (gp, gm, _) = g.lead().unwrap();
                gp == pos && gm.divides(&mon)
            });
            match reducer {
                Some(k) => {
                    let g = &self.elements[k];
                    let (_, gm, _) = g.lead().unwrap();
                    let factor = mon.checked_div(gm).unwrap();
                    let sub = g.mul_term(&self.ring, &factor, &c);
                    work = work.sub(&self.ring, &self.ctx, &sub);
                }
                None => {
                    remainder.push((pos, mon, c));
                    work.terms.remove(0);
                }
            }
        }
        VecElem { terms: remainder }
    }

    /// Buchberger's criterion, asserted directly: every S-pair of basis
    /// elements with a common lead position reduces to zero.
    pub fn all_spairs_reduce_to_zero(&self) -> bool {
        let one = self.ring.field.one();
        for i in 0..self.elements.len() {
            for j in (i + 1)..self.elements.len() {
                let (pi, mi, _) = self.elements[i].lead().unwrap();
                let (pj, mj, _) = self.elements[j].lead().unwrap();
                if pi != pj {
                    continue;
                }
                let lcm = mi.lcm(mj, self.ring.num_x);
                let ui = lcm.checked_div(mi).unwrap();
                let uj = lcm.checked_div(mj).unwrap();
                let s = self.elements[i]
                    .mul_term(&self.ring, &ui, &one)
                    .sub(&self.ring, &self.ctx, &self.elements[j].mul_term(&self.ring, &uj, &one));
                if !self.nf_vec(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Two submodules are equal iff each basis reduces to zero in the other.
    pub fn same_submodule(&self, other: &GroebnerBasis<K>) -> Result<bool, AlgebraError> {
        for col in self.elements_as_columns() {
            if !other.contains(&col)? {
                return Ok(false);
            }
        }
        for col in other.elements_as_columns() {
            if !self.contains(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Inter-reduce a completed basis into the canonical reduced form.
fn reduce_basis<K: Field>(
    ring: &RingRef<K>,
    ctx: &OrdCtx,
    elems: Vec<VecElem<K>>,
) -> Vec<VecElem<K>> {
    // keep only elements whose lead is not divisible by another kept lead;
    // scanning by ascending lead ensures divisors are seen first
    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, ma, _) = elems[a].lead().unwrap();
        let (pb, mb, _) = elems[b].lead().unwrap();
        ctx.cmp_terms((ma, pa), (mb, pb))
    });
    let mut kept: Vec<usize> = Vec::new();
    for &k in &order {
        let (p, m, _) = elems[k].lead().unwrap();
        let dominated = kept.iter().any(|&j| {
            let (jp, jm, _) = elems[j].lead().unwrap();
            jp == p && jm.divides(m)
        });
        if !dominated {
            kept.push(k);
        }
    }
    // tail-reduce each kept element against the others
    let kept_elems: Vec<VecElem<K>> = kept.iter().map(|&k| elems[k].clone()).collect();
    let mut out = Vec::with_capacity(kept_elems.len());
    for (idx, g) in kept_elems.iter().enumerate() {
        let mut work = g.clone();
        let mut reduced_terms: Vec<(usize, Monomial, K::Elem)> = Vec::new();
        while let Some((pos, mon, c)) = work.lead().map(|(p, m, c)| (p, m.clone(), c.clone())) {
            let reducer = kept_elems.iter().enumerate().position(|(j, h)| {
                if j == idx {
                    return false;
                }
                let (hp, hm, _) = h.lead().unwrap();
                hp == pos && hm.divides(&mon)
            });
            match reducer {
                Some(j) => {
                    let h = &kept_elems[j];
                    let (_, hm, _) = h.lead().unwrap();
                    let factor = mon.checked_div(hm).unwrap();
                    work = work.sub(ring, ctx, &h.mul_term(ring, &factor, &c));
                }
                None => {
                    reduced_terms.push((pos, mon, c));
                    work.terms.remove(0);
                }
            }
        }
        out.push(VecElem {
            terms: reduced_terms,
        });
    }
    // canonical presentation: descending lead terms
    out.sort_by(|a, b| {
        let (pa, ma, _) = a.lead().unwrap();
        let (pb, mb, _) = b.lead().unwrap();
        ctx.cmp_terms((mb, pb), (ma, pa))
    });
    out
}

/// Generators of the syzygy module of the columns of `m`: a matrix Z with
/// m . Z = 0 whose columns generate ker(m), already trimmed to a minimal
/// generating set and deterministically ordered.
pub fn syzygy_matrix<K: Field>(m: &PolyMatrix<K>) -> Result<PolyMatrix<K>, AlgebraError> {
    m.validate()?;
    let ring = m.ring().clone();
    let cols = syzygy_generators(m)?;
    if cols.is_empty() {
        return Ok(PolyMatrix::zero(
            &ring,
            m.source.clone(),
            GradedFreeModule::new(vec![]),
        ));
    }
    PolyMatrix::from_columns(&ring, &m.source, &cols)
}

/// Raw syzygy generators of the columns of `m`, in source coordinates.
pub fn syzygy_generators<K: Field>(
    m: &PolyMatrix<K>,
) -> Result<Vec<Vec<Polynomial<K>>>, AlgebraError> {
    let ring = m.ring().clone();
    let ctx = OrdCtx::new(ring.order, ring.num_x, ModuleOrder::PosOverTerm);
    let inputs: Vec<VecElem<K>> = m
        .columns()
        .iter()
        .map(|c| VecElem::from_column(&ring, &ctx, c))
        .collect();
    let mut eng = GbEngine::new(
        &ring,
        m.rows(),
        ModuleOrder::PosOverTerm,
        EngineOptions {
            track_cofactors: true,
            record_syzygies: true,
            use_criteria: false,
        },
    );
    eng.add_inputs(inputs);
    eng.complete();
    let raw: Vec<Vec<Polynomial<K>>> = eng
        .syzygies
        .iter()
        .map(|s| s.to_column(&ring, m.cols()))
        .collect();
    minimalize_columns(&ring, &m.source, raw)
}

/// Trim a set of homogeneous columns to a minimal generating set of the
/// submodule they span. Candidates are taken in ascending degree, so by
/// graded Nakayama the kept set is minimal.
pub fn minimalize_columns<K: Field>(
    ring: &RingRef<K>,
    ambient: &GradedFreeModule,
    cols: Vec<Vec<Polynomial<K>>>,
) -> Result<Vec<Vec<Polynomial<K>>>, AlgebraError> {
    let ctx = OrdCtx::new(ring.order, ring.num_x, ModuleOrder::PosOverTerm);
    let mut items: Vec<(BiDegree, VecElem<K>)> = Vec::new();
    for col in &cols {
        let v = VecElem::from_column(ring, &ctx, col);
        if v.is_zero() {
            continue;
        }
        let d = column_shift(ambient, col)?;
        items.push((d, v));
    }
    items.sort_by(|(da, va), (db, vb)| {
        let ka = (da.x + da.y, da.x, da.y);
        let kb = (db.x + db.y, db.x, db.y);
        ka.cmp(&kb).then_with(|| va.canonical_cmp(&ctx, vb))
    });
    let mut eng = GbEngine::new(
        ring,
        ambient.rank(),
        ModuleOrder::PosOverTerm,
        EngineOptions {
            use_criteria: true,
            ..Default::default()
        },
    );
    let mut kept: Vec<Vec<Polynomial<K>>> = Vec::new();
    for (_, v) in items {
        if eng.normal_form(&v).is_zero() {
            continue;
        }
        kept.push(v.to_column(ring, ambient.rank()));
        eng.push_generator(v);
        eng.complete();
    }
    Ok(kept)
}

/// The bidegree shift of a homogeneous column relative to its ambient.
pub fn column_shift<K: Field>(
    ambient: &GradedFreeModule,
    col: &[Polynomial<K>],
) -> Result<BiDegree, AlgebraError> {
    let mut shift: Option<BiDegree> = None;
    for (r, p) in col.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let d = p.bidegree().ok_or(AlgebraError::NotHomogeneous {
            row: r,
            col: 0,
            expected: "a single bidegree".into(),
        })? + ambient.shifts[r];
        match shift {
            None => shift = Some(d),
            Some(prev) if prev == d => {}
            Some(prev) => {
                return Err(AlgebraError::NotHomogeneous {
                    row: r,
                    col: 0,
                    expected: format!("{prev}"),
                })
            }
        }
    }
    shift.ok_or_else(|| AlgebraError::ShapeMismatch("zero column has no shift".into()))
}

/// Membership lifts through a fixed matrix: solves m . u = v exactly.
pub struct Lifter<K: Field> {
    ring: RingRef<K>,
    ambient_rank: usize,
    source: GradedFreeModule,
    ctx: OrdCtx,
    eng: GbEngine<K>,
}

impl<K: Field> Lifter<K> {
    pub fn new(m: &PolyMatrix<K>) -> Self {
        let ring = m.ring().clone();
        let ctx = OrdCtx::new(ring.order, ring.num_x, ModuleOrder::PosOverTerm);
        let inputs: Vec<VecElem<K>> = m
            .columns()
            .iter()
            .map(|c| VecElem::from_column(&ring, &ctx, c))
            .collect();
        let mut eng = GbEngine::new(
            &ring,
            m.rows(),
            ModuleOrder::PosOverTerm,
            EngineOptions {
                track_cofactors: true,
                record_syzygies: false,
                use_criteria: false,
            },
        );
        eng.add_inputs(inputs);
        eng.complete();
        Lifter {
            ring,
            ambient_rank: m.rows(),
            source: m.source.clone(),
            ctx,
            eng,
        }
    }

    pub fn lift_column(&self, v: &[Polynomial<K>]) -> Option<Vec<Polynomial<K>>> {
        assert_eq!(v.len(), self.ambient_rank);
        let vv = VecElem::from_column(&self.ring, &self.ctx, v);
        self.eng
            .lift(&vv)
            .map(|u| u.to_column(&self.ring, self.source.rank()))
    }

    /// Lift every column of `b`, producing u with m . u = b.
    pub fn lift_matrix(&self, b: &PolyMatrix<K>) -> Result<PolyMatrix<K>, AlgebraError> {
        let mut out = PolyMatrix::zero(&self.ring, self.source.clone(), b.source.clone());
        for c in 0..b.cols() {
            let col = b.column(c);
            if col.iter().all(|p| p.is_zero()) {
                continue;
            }
            let u = self.lift_column(&col).ok_or_else(|| {
                AlgebraError::LiftFailed(format!("column {c} is not in the image"))
            })?;
            for (r, p) in u.into_iter().enumerate() {
                out.set(r, c, p);
            }
        }
        out.validate()?;
        Ok(out)
    }
}

/// The colon ideal (I : J) = { s : s J is contained in I }, returned as a
/// reduced Groebner basis. Computed as the intersection of the (I : f)
/// over the generators f of J, each via syzygies, so the computation never
/// leaves the ambient ring.
pub fn colon_ideal<K: Field>(
    ring: &RingRef<K>,
    gens_i: &[Polynomial<K>],
    gens_j: &[Polynomial<K>],
) -> Result<GroebnerBasis<K>, AlgebraError> {
    let live_j: Vec<&Polynomial<K>> = gens_j.iter().filter(|g| !g.is_zero()).collect();
    if live_j.is_empty() {
        return Err(AlgebraError::ColonByZero);
    }
    let mut acc: Option<Vec<Polynomial<K>>> = None;
    for f in live_j {
        let quot = colon_by_element(ring, gens_i, f)?;
        acc = Some(match acc {
            None => quot,
            Some(prev) => intersect_ideals(ring, &prev, &quot)?,
        });
    }
    GroebnerBasis::of_ideal(ring, &acc.unwrap())
}

/// (I : f) via syzygies of the row [f, gens of I].
fn colon_by_element<K: Field>(
    ring: &RingRef<K>,
    gens_i: &[Polynomial<K>],
    f: &Polynomial<K>,
) -> Result<Vec<Polynomial<K>>, AlgebraError> {
    let mut all = vec![f.clone()];
    all.extend(gens_i.iter().filter(|g| !g.is_zero()).cloned());
    let row = PolyMatrix::generator_row(ring, &all)?;
    let syz = syzygy_matrix(&row)?;
    let mut out = Vec::new();
    for c in 0..syz.cols() {
        let first = syz.entry(0, c);
        if !first.is_zero() {
            out.push(first.clone());
        }
    }
    Ok(out)
}

/// Generators of I meet J via syzygies of [I | -J].
pub fn intersect_ideals<K: Field>(
    ring: &RingRef<K>,
    gens_i: &[Polynomial<K>],
    gens_j: &[Polynomial<K>],
) -> Result<Vec<Polynomial<K>>, AlgebraError> {
    let gi: Vec<Polynomial<K>> = gens_i.iter().filter(|g| !g.is_zero()).cloned().collect();
    let gj: Vec<Polynomial<K>> = gens_j.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gi.is_empty() || gj.is_empty() {
        return Ok(Vec::new());
    }
    let mut all: Vec<Polynomial<K>> = gi.clone();
    all.extend(gj.iter().map(|g| g.neg()));
    let row = PolyMatrix::generator_row(ring, &all)?;
    let syz = syzygy_matrix(&row)?;
    let mut out = Vec::new();
    for c in 0..syz.cols() {
        let mut acc = Polynomial::zero(ring);
        for (k, g) in gi.iter().enumerate() {
            let u = syz.entry(k, c);
            if !u.is_zero() {
                acc = acc.add(&u.mul(g));
            }
        }
        if !acc.is_zero() {
            out.push(acc);
        }
    }
    Ok(out)
}

/// Krull dimension of R/I, computed combinatorially from the lead-term
/// ideal: the largest set of variables not containing the support of any
/// lead monomial. The unit ideal yields -1 by convention.
pub fn krull_dimension<K: Field>(gb: &GroebnerBasis<K>) -> i64 {
    assert_eq!(gb.ambient.rank(), 1, "dimension of an ideal");
    let ring = gb.ring().clone();
    let nvars = ring.num_vars();
    let leads = gb.lead_monomials();
    if leads.iter().any(|m| m.is_one()) {
        return -1;
    }
    let supports: Vec<u64> = leads
        .iter()
        .map(|m| {
            m.exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1 << i))
        })
        .collect();
    let mut best = 0i64;
    for mask in 0u64..(1 << nvars) {
        let size = mask.count_ones() as i64;
        if size <= best {
            continue;
        }
        // independent iff no lead monomial is supported inside the set
        if supports.iter().all(|s| s & !mask != 0) {
            best = size;
        }
    }
    best
}

#[cfg(test)]
mod tests;
