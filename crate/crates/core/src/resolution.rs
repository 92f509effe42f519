//! Free resolutions: construction by iterated syzygies, minimization by
//! unit-entry cancellation, Betti tables, projective dimension, the
//! Cohen-Macaulay test, and canonical module presentations.

use crate::bidegree::BiDegree;
use crate::complex::{BettiTable, ChainComplex};
use crate::error::AlgebraError;
use crate::field::Field;
use crate::groebner::hilbert::{numerator_of_complex, HilbertSeries};
use crate::groebner::{krull_dimension, syzygy_matrix, GroebnerBasis};
use crate::matrix::{GradedFreeModule, PolyMatrix};
use crate::poly::{Polynomial, RingRef};

/// A resolution together with its invariants.
#[derive(Clone, Debug)]
pub struct ResolutionReport<K: Field> {
    pub complex: ChainComplex<K>,
    pub betti: BettiTable,
    pub minimal: bool,
    pub length: usize,
}

/// Hilbert syzygy bound used as the default truncation length.
pub fn default_max_length<K: Field>(ring: &RingRef<K>) -> usize {
    if ring.num_y == 0 {
        ring.num_x + 1
    } else {
        ring.num_x + ring.num_y
    }
}

/// Resolve the cokernel of `first` by iterated syzygies: the returned
/// complex has d_1 = first and is exact at every interior position by
/// construction. It need not be minimal.
pub fn free_resolution<K: Field>(
    first: &PolyMatrix<K>,
    max_length: usize,
) -> Result<ChainComplex<K>, AlgebraError> {
    first.validate()?;
    let ring = first.ring().clone();
    let mut modules = vec![first.target.clone(), first.source.clone()];
    let mut diffs = vec![first.clone()];
    let mut complete = false;
    while diffs.len() < max_length {
        let z = syzygy_matrix(diffs.last().unwrap())?;
        if z.cols() == 0 {
            complete = true;
            break;
        }
        modules.push(z.source.clone());
        diffs.push(z);
    }
    // a cap below the true length is a resource limit, not an answer
    if !complete && syzygy_matrix(diffs.last().unwrap())?.cols() > 0 {
        return Err(AlgebraError::ResourceLimit(format!(
            "resolution truncated at max_length {max_length} before reaching a kernel-free step"
        )));
    }
    Ok(ChainComplex::new(&ring, modules, diffs))
}

/// Resolution of an ideal: F_0 = S, d_1 = the row of generators.
pub fn resolve_ideal<K: Field>(
    ring: &RingRef<K>,
    gens: &[Polynomial<K>],
    max_length: usize,
) -> Result<ChainComplex<K>, AlgebraError> {
    let live: Vec<Polynomial<K>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if live.is_empty() {
        return Ok(ChainComplex::trivial(ring, GradedFreeModule::unit()));
    }
    let row = PolyMatrix::generator_row(ring, &live)?;
    free_resolution(&row, max_length)
}

/// Gaussian cancellation of one unit entry of d = diffs[i] at (r, c):
/// basis element c of the source and r of the target split off as a
/// trivial complex; remaining entries pick up the Schur correction.
fn schur_eliminate<K: Field>(d: &PolyMatrix<K>, r: usize, c: usize) -> PolyMatrix<K> {
    let ring = d.ring().clone();
    let u = d.entry(r, c);
    let u_coeff = u.lead_term().expect("unit entry").1.clone();
    let u_inv = ring.field.inv(&u_coeff);
    let mut out = d.clone();
    for rr in 0..d.rows() {
        if rr == r {
            continue;
        }
        let a = d.entry(rr, c);
        if a.is_zero() {
            continue;
        }
        let a_scaled = a.scale(&ring.field.neg(&u_inv));
        for cc in 0..d.cols() {
            if cc == c {
                continue;
            }
            let b = d.entry(r, cc);
            if b.is_zero() {
                continue;
            }
            let corrected = out.entry(rr, cc).add(&a_scaled.mul(b));
            out.set(rr, cc, corrected);
        }
    }
    out.delete_row(r).delete_col(c)
}

/// Iteratively cancel unit (bidegree-(0,0)) entries, rightmost homological
/// degree first, until none remain. Homology is preserved at every step.
pub fn minimize<K: Field>(complex: &ChainComplex<K>) -> ChainComplex<K> {
    let ring = complex.ring().clone();
    let mut diffs = complex.diffs.clone();
    'outer: loop {
        for i in (0..diffs.len()).rev() {
            let d = &diffs[i];
            for c in 0..d.cols() {
                for r in 0..d.rows() {
                    let e = d.entry(r, c);
                    if !e.is_unit_constant() {
                        continue;
                    }
                    debug_assert_eq!(d.source.shifts[c], d.target.shifts[r]);
                    let reduced = schur_eliminate(d, r, c);
                    diffs[i] = reduced;
                    if i + 1 < diffs.len() {
                        diffs[i + 1] = diffs[i + 1].delete_row(c);
                    }
                    if i > 0 {
                        diffs[i - 1] = diffs[i - 1].delete_col(r);
                    }
                    continue 'outer;
                }
            }
        }
        break;
    }
    let mut modules = Vec::with_capacity(diffs.len() + 1);
    if diffs.is_empty() {
        return complex.clone();
    }
    modules.push(diffs[0].target.clone());
    for d in &diffs {
        modules.push(d.source.clone());
    }
    ChainComplex::new(&ring, modules, diffs).trimmed()
}

/// Resolve, minimize, and report.
pub fn minimal_resolution_of_ideal<K: Field>(
    ring: &RingRef<K>,
    gens: &[Polynomial<K>],
    max_length: usize,
) -> Result<ResolutionReport<K>, AlgebraError> {
    let complex = resolve_ideal(ring, gens, max_length)?;
    let minimal = minimize(&complex);
    let betti = minimal.betti_table();
    let length = minimal.length();
    let is_min = minimal.has_no_unit_entries();
    Ok(ResolutionReport {
        complex: minimal,
        betti,
        minimal: is_min,
        length,
    })
}

/// Length of the minimal free resolution of R/I.
pub fn projective_dimension<K: Field>(
    ring: &RingRef<K>,
    gens: &[Polynomial<K>],
) -> Result<usize, AlgebraError> {
    let report = minimal_resolution_of_ideal(ring, gens, default_max_length(ring))?;
    Ok(report.length)
}

/// dim R/I = 1 and depth 1, tested via Auslander-Buchsbaum as
/// pd(R/I) = (number of variables) - 1.
pub fn is_cm_dim1<K: Field>(
    ring: &RingRef<K>,
    gens: &[Polynomial<K>],
) -> Result<bool, AlgebraError> {
    let gb = GroebnerBasis::of_ideal(ring, gens)?;
    if krull_dimension(&gb) != 1 {
        return Ok(false);
    }
    Ok(projective_dimension(ring, gens)? == ring.num_x - 1)
}

/// Presentation of the canonical module of R/I as the twisted cokernel of
/// the dual of the last differential of a minimal resolution of R/I.
///
/// Requires R/I to be Cohen-Macaulay, i.e. pd(R/I) equal to the
/// codimension; the twist is (number of variables, 0), the graded
/// normalization omega = Ext^c(R/I, R(-n-1)).
pub fn canonical_module<K: Field>(
    ring: &RingRef<K>,
    resolution_of_quotient: &ChainComplex<K>,
) -> Result<PolyMatrix<K>, AlgebraError> {
    let c = resolution_of_quotient.length();
    if c == 0 {
        return Err(AlgebraError::HypothesesNotSatisfied(
            "quotient is free; no canonical presentation taken".into(),
        ));
    }
    let gens_row = resolution_of_quotient.differential(1);
    let gb = GroebnerBasis::of_ideal(ring, &gens_row.column_row_polys())?;
    let dim = krull_dimension(&gb);
    let codim = ring.num_vars() as i64 - dim;
    if codim != c as i64 {
        return Err(AlgebraError::HypothesesNotSatisfied(format!(
            "not Cohen-Macaulay: codimension {codim}, projective dimension {c}"
        )));
    }
    let last = resolution_of_quotient.differential(c);
    let twist = BiDegree::new(ring.num_x as i32, ring.num_y as i32);
    let dual = last.dualize_shifted(twist);
    dual.validate()?;
    Ok(dual)
}

/// Hilbert series of the cokernel of a presentation, via a free resolution
/// and the alternating sum of its shifts.
pub fn hilbert_series_of_cokernel<K: Field>(
    presentation: &PolyMatrix<K>,
) -> Result<HilbertSeries, AlgebraError> {
    let ring = presentation.ring().clone();
    let complex = free_resolution(presentation, default_max_length(&ring))?;
    Ok(HilbertSeries {
        numerator: numerator_of_complex(&complex, true),
        x_denom: ring.num_x,
        y_denom: ring.num_y,
    })
}

/// Hilbert series of S/I.
pub fn hilbert_series_of_quotient<K: Field>(
    ring: &RingRef<K>,
    gens: &[Polynomial<K>],
) -> Result<HilbertSeries, AlgebraError> {
    let complex = resolve_ideal(ring, gens, default_max_length(ring))?;
    Ok(HilbertSeries {
        numerator: numerator_of_complex(&complex, true),
        x_denom: ring.num_x,
        y_denom: ring.num_y,
    })
}

/// Hilbert series of the ideal I itself (the image of its generator row).
pub fn hilbert_series_of_ideal<K: Field>(
    ring: &RingRef<K>,
    gens: &[Polynomial<K>],
) -> Result<HilbertSeries, AlgebraError> {
    let complex = resolve_ideal(ring, gens, default_max_length(ring))?;
    Ok(HilbertSeries {
        numerator: numerator_of_complex(&complex, false),
        x_denom: ring.num_x,
        y_denom: ring.num_y,
    })
}

impl<K: Field> PolyMatrix<K> {
    /// The entries of a one-row matrix as plain polynomials.
    pub fn column_row_polys(&self) -> Vec<Polynomial<K>> {
        assert_eq!(self.rows(), 1, "row matrix expected");
        (0..self.cols()).map(|c| self.entry(0, c).clone()).collect()
    }
}
