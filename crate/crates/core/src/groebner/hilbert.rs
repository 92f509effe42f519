//! Bigraded Hilbert series and graded piece dimensions.
//!
//! Series are represented exactly: an integer Laurent numerator N(s,t)
//! over the fixed denominator (1-s)^a (1-t)^b of the ambient ring. The
//! numerator route goes through a free resolution (alternating sum of
//! shift contributions); the piece route counts standard monomials under
//! a lead-term ideal. The two are independent and are cross-checked in
//! the acceptance suite.

use std::collections::BTreeMap;

use crate::bidegree::BiDegree;
use crate::error::AlgebraError;
use crate::field::Field;
use crate::matrix::{GradedFreeModule, PolyMatrix};
use crate::monomial::Monomial;
use crate::poly::RingRef;

use super::GroebnerBasis;

/// A Laurent polynomial in two variables s, t with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiLaurent {
    pub coeffs: BTreeMap<(i32, i32), i64>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        BiLaurent::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, 1)
    }

    pub fn monomial(a: i32, b: i32, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert((a, b), c);
        }
        BiLaurent { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, a: i32, b: i32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry((a, b)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&(a, b));
        }
    }

    pub fn add(&self, other: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (&(a, b), &c) in &other.coeffs {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn sub(&self, other: &BiLaurent) -> BiLaurent {
        let mut out = self.clone();
        for (&(a, b), &c) in &other.coeffs {
            out.add_term(a, b, -c);
        }
        out
    }

    pub fn mul(&self, other: &BiLaurent) -> BiLaurent {
        let mut out = BiLaurent::zero();
        for (&(a1, b1), &c1) in &self.coeffs {
            for (&(a2, b2), &c2) in &other.coeffs {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn coeff(&self, a: i32, b: i32) -> i64 {
        *self.coeffs.get(&(a, b)).unwrap_or(&0)
    }

    /// Render like `1 - 3*s^2 + 2*s^3` with t powers when present.
    pub fn to_string_st(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (&(a, b), &c) in &self.coeffs {
            let mut body = String::new();
            if a != 0 {
                body.push_str(&if a == 1 { "s".into() } else { format!("s^{a}") });
            }
            if b != 0 {
                if !body.is_empty() {
                    body.push('*');
                }
                body.push_str(&if b == 1 { "t".into() } else { format!("t^{b}") });
            }
            let mag = c.unsigned_abs();
            let coeff_part = if body.is_empty() {
                format!("{mag}")
            } else if mag == 1 {
                body
            } else {
                format!("{mag}*{body}")
            };
            if parts.is_empty() {
                parts.push(if c < 0 {
                    format!("-{coeff_part}")
                } else {
                    coeff_part
                });
            } else {
                parts.push(format!("{} {}", if c < 0 { "-" } else { "+" }, coeff_part));
            }
        }
        parts.join(" ")
    }
}

/// N(s,t) / ((1-s)^x_denom (1-t)^y_denom), exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertSeries {
    pub numerator: BiLaurent,
    pub x_denom: usize,
    pub y_denom: usize,
}

impl HilbertSeries {
    /// Coefficient of s^d t^e in the expansion.
    pub fn value_at(&self, d: i32, e: i32) -> i64 {
        let mut acc = 0i64;
        for (&(a, b), &c) in &self.numerator.coeffs {
            acc += c * expand_coeff(d - a, self.x_denom) * expand_coeff(e - b, self.y_denom);
        }
        acc
    }

    /// Shift the series: the series of M(a,b) is s^-a t^-b times that of M.
    pub fn shifted(&self, shift: BiDegree) -> HilbertSeries {
        HilbertSeries {
            numerator: self
                .numerator
                .mul(&BiLaurent::monomial(-shift.x, -shift.y, 1)),
            x_denom: self.x_denom,
            y_denom: self.y_denom,
        }
    }
}

/// Coefficient of u^k in 1/(1-u)^denom.
fn expand_coeff(k: i32, denom: usize) -> i64 {
    if k < 0 {
        return 0;
    }
    if denom == 0 {
        return if k == 0 { 1 } else { 0 };
    }
    binomial(k as i64 + denom as i64 - 1, denom as i64 - 1)
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Alternating sum of shift contributions of a resolved complex.
///
/// With `include_f0` the result is the numerator of the cokernel of d_1
/// (e.g. S/I for an ideal resolution); without it, the numerator of the
/// image of d_1 (e.g. the ideal itself).
pub fn numerator_of_complex<K: Field>(
    complex: &crate::complex::ChainComplex<K>,
    include_f0: bool,
) -> BiLaurent {
    let mut out = BiLaurent::zero();
    for (i, module) in complex.modules.iter().enumerate() {
        if i == 0 && !include_f0 {
            continue;
        }
        let sign = if include_f0 {
            if i % 2 == 0 { 1 } else { -1 }
        } else {
            // contributions of F_1, F_2, ... with alternating signs + - ...
            if i % 2 == 1 { 1 } else { -1 }
        };
        for s in &module.shifts {
            out.add_term(s.x, s.y, sign);
        }
    }
    out
}

/// Dimension over k of the bidegree-d piece of coker(F_1 -> F_0), where
/// the submodule is handed over as its Groebner basis in F_0.
pub fn quotient_piece_dim<K: Field>(
    ring: &RingRef<K>,
    ambient: &GradedFreeModule,
    gb: &GroebnerBasis<K>,
    d: BiDegree,
) -> usize {
    let mut leads_by_pos: Vec<Vec<Monomial>> = vec![Vec::new(); ambient.rank()];
    for (pos, mon) in gb.lead_terms() {
        leads_by_pos[pos].push(mon);
    }
    let mut total = 0usize;
    for (pos, shift) in ambient.shifts.iter().enumerate() {
        let local = d - *shift;
        if local.x < 0 || local.y < 0 {
            continue;
        }
        total += count_standard_monomials(ring, &leads_by_pos[pos], local);
    }
    total
}

/// Monomials of the exact bidegree not divisible by any of the leads.
fn count_standard_monomials<K: Field>(
    ring: &RingRef<K>,
    leads: &[Monomial],
    d: BiDegree,
) -> usize {
    let mut count = 0usize;
    let xs = monomial_exponents(ring.num_x, d.x as u16);
    let ys = monomial_exponents(ring.num_y, d.y as u16);
    for xe in &xs {
        for ye in &ys {
            let mut exps = xe.clone();
            exps.extend_from_slice(ye);
            let m = Monomial::from_exps(&exps, ring.num_x);
            if !leads.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
        }
    }
    count
}

/// All monomials of an exact bidegree in the ambient ring.
pub fn monomials_of_bidegree<K: Field>(ring: &RingRef<K>, d: BiDegree) -> Vec<Monomial> {
    if d.x < 0 || d.y < 0 {
        return Vec::new();
    }
    let xs = monomial_exponents(ring.num_x, d.x as u16);
    let ys = monomial_exponents(ring.num_y, d.y as u16);
    let mut out = Vec::new();
    for xe in &xs {
        for ye in &ys {
            let mut exps = xe.clone();
            exps.extend_from_slice(ye);
            out.push(Monomial::from_exps(&exps, ring.num_x));
        }
    }
    out
}

/// All exponent vectors of the given total degree in `n` variables.
fn monomial_exponents(n: usize, deg: u16) -> Vec<Vec<u16>> {
    if n == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut current = vec![0u16; n];
    fill(&mut out, &mut current, 0, deg);
    out
}

fn fill(out: &mut Vec<Vec<u16>>, current: &mut Vec<u16>, var: usize, remaining: u16) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(current.clone());
        current[var] = 0;
        return;
    }
    for e in 0..=remaining {
        current[var] = e;
        fill(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// Dimension of the degree-d piece of the ambient free module itself.
pub fn free_module_piece_dim<K: Field>(
    ring: &RingRef<K>,
    ambient: &GradedFreeModule,
    d: BiDegree,
) -> usize {
    ambient
        .shifts
        .iter()
        .map(|&s| {
            let local = d - s;
            if local.x < 0 || local.y < 0 {
                0
            } else {
                count_all(ring.num_x, local.x as i64) * count_all(ring.num_y, local.y as i64)
            }
        })
        .sum()
}

fn count_all(nvars: usize, deg: i64) -> usize {
    if nvars == 0 {
        return if deg == 0 { 1 } else { 0 };
    }
    binomial(deg + nvars as i64 - 1, nvars as i64 - 1) as usize
}

/// dim_k of the bidegree-d piece of the submodule generated by the columns
/// (the image of the presentation), via ambient minus quotient.
pub fn submodule_piece_dim<K: Field>(
    ring: &RingRef<K>,
    ambient: &GradedFreeModule,
    gb: &GroebnerBasis<K>,
    d: BiDegree,
) -> usize {
    free_module_piece_dim(ring, ambient, d) - quotient_piece_dim(ring, ambient, gb, d)
}

/// Piece dimension of the cokernel of a presentation matrix.
pub fn presentation_piece_dim<K: Field>(
    presentation: &PolyMatrix<K>,
    d: BiDegree,
) -> Result<usize, AlgebraError> {
    let ring = presentation.ring().clone();
    let gb = GroebnerBasis::of_module(&ring, &presentation.target, &presentation.columns())?;
    Ok(quotient_piece_dim(&ring, &presentation.target, &gb, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::order::TermOrder;
    use crate::poly::{Polynomial, Ring};

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }

    #[test]
    fn monomial_counts() {
        // degree-2 monomials in 3 variables: C(4,2) = 6
        assert_eq!(monomial_exponents(3, 2).len(), 6);
        assert_eq!(count_all(3, 2), 6);
        // no variables: only degree 0
        assert_eq!(monomial_exponents(0, 0).len(), 1);
        assert_eq!(monomial_exponents(0, 1).len(), 0);
    }

    #[test]
    fn coordinate_points_pieces() {
        let r = Ring::polynomial_ring(PrimeField::new(32003), 3, TermOrder::GrevlexAll);
        let x0 = Polynomial::x_var(&r, 0);
        let x1 = Polynomial::x_var(&r, 1);
        let x2 = Polynomial::x_var(&r, 2);
        let gens = vec![x0.mul(&x1), x0.mul(&x2), x1.mul(&x2)];
        let gb = GroebnerBasis::of_ideal(&r, &gens).unwrap();
        let ambient = GradedFreeModule::unit();
        // HF of R/I = 1, 3, 3, 3, ...
        let hf: Vec<usize> = (0..5)
            .map(|d| quotient_piece_dim(&r, &ambient, &gb, BiDegree::new(d, 0)))
            .collect();
        assert_eq!(hf, vec![1, 3, 3, 3, 3]);
        // the ideal picks up the rest: dim (I_Z)_2 = 3
        assert_eq!(submodule_piece_dim(&r, &ambient, &gb, BiDegree::new(2, 0)), 3);
    }

    #[test]
    fn laurent_arithmetic() {
        let a = BiLaurent::monomial(1, 0, 2).add(&BiLaurent::one());
        let b = BiLaurent::monomial(0, 1, 1).sub(&BiLaurent::one());
        let prod = a.mul(&b);
        // (1 + 2s)(t - 1) = t + 2st - 1 - 2s
        assert_eq!(prod.coeff(0, 1), 1);
        assert_eq!(prod.coeff(1, 1), 2);
        assert_eq!(prod.coeff(0, 0), -1);
        assert_eq!(prod.coeff(1, 0), -2);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn series_expansion() {
        // S = k[x0,x1]: HS = 1/(1-s)^2, HF = 1, 2, 3, ...
        let hs = HilbertSeries {
            numerator: BiLaurent::one(),
            x_denom: 2,
            y_denom: 0,
        };
        assert_eq!(hs.value_at(0, 0), 1);
        assert_eq!(hs.value_at(3, 0), 4);
        assert_eq!(hs.value_at(3, 1), 0);
    }
}
