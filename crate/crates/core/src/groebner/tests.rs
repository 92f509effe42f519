use super::*;
use crate::field::PrimeField;
use crate::order::TermOrder;
use crate::poly::{Polynomial, Ring};

type P = Polynomial<PrimeField>;

fn ring3(p: u64) -> RingRef<PrimeField> {
    Ring::polynomial_ring(PrimeField::new(p), 3, TermOrder::GrevlexAll)
}

fn coord_points(ring: &RingRef<PrimeField>) -> Vec<P> {
    let x0 = Polynomial::x_var(ring, 0);
    let x1 = Polynomial::x_var(ring, 1);
    let x2 = Polynomial::x_var(ring, 2);
    vec![x0.mul(&x1), x0.mul(&x2), x1.mul(&x2)]
}

#[test]
fn monomial_ideal_is_its_own_basis() {
    let r = ring3(32003);
    let gens = coord_points(&r);
    let gb = GroebnerBasis::of_ideal(&r, &gens).unwrap();
    assert_eq!(gb.len(), 3);
    let basis = gb.ideal_generators();
    for g in &gens {
        assert!(basis.contains(g));
    }
    assert!(gb.all_spairs_reduce_to_zero());
}

#[test]
fn basis_gains_x1_cubed() {
    // hand S-pair: x1(x0^2 + x1^2) - x0(x0 x1) = x1^3
    let r = Ring::polynomial_ring(PrimeField::new(101), 2, TermOrder::GrevlexAll);
    let x0 = Polynomial::x_var(&r, 0);
    let x1 = Polynomial::x_var(&r, 1);
    let f = x0.mul(&x0).add(&x1.mul(&x1));
    let g = x0.mul(&x1);
    let gb = GroebnerBasis::of_ideal(&r, &[f.clone(), g.clone()]).unwrap();
    let x1cubed = x1.mul(&x1).mul(&x1);
    assert!(gb.ideal_generators().contains(&x1cubed));
    assert_eq!(gb.len(), 3);
    assert!(gb.contains_poly(&f));
    assert!(gb.contains_poly(&g));
}

#[test]
fn two_variables_stay_put() {
    let r = Ring::polynomial_ring(PrimeField::new(32003), 2, TermOrder::GrevlexAll);
    let x0 = Polynomial::x_var(&r, 0);
    let x1 = Polynomial::x_var(&r, 1);
    let gb = GroebnerBasis::of_ideal(&r, &[x0.clone(), x1.clone()]).unwrap();
    let gens = gb.ideal_generators();
    assert_eq!(gens.len(), 2);
    assert!(gens.contains(&x0) && gens.contains(&x1));
}

#[test]
fn normal_form_of_generators_vanishes() {
    let r = ring3(32003);
    let gens = coord_points(&r);
    let gb = GroebnerBasis::of_ideal(&r, &gens).unwrap();
    for g in &gens {
        assert!(gb.normal_form_poly(g).is_zero());
    }
}

#[test]
fn normal_form_leaves_irreducible_alone() {
    let r = ring3(32003);
    let gb = GroebnerBasis::of_ideal(&r, &coord_points(&r)).unwrap();
    let x0 = Polynomial::x_var(&r, 0);
    let x0cubed = x0.mul(&x0).mul(&x0);
    assert_eq!(gb.normal_form_poly(&x0cubed), x0cubed);
}

#[test]
fn normal_form_is_idempotent_and_linear() {
    let r = ring3(101);
    let gb = GroebnerBasis::of_ideal(&r, &coord_points(&r)).unwrap();
    let x0 = Polynomial::x_var(&r, 0);
    let x1 = Polynomial::x_var(&r, 1);
    let f = x0.mul(&x0).mul(&x1).add(&x1.mul(&x1)); // x0^2 x1 + x1^2
    let nf = gb.normal_form_poly(&f);
    assert_eq!(gb.normal_form_poly(&nf), nf);
    // linearity: nf(f + c g) = nf(f) + c nf(g)
    let g = x0.mul(&x1).add(&x0);
    let c = 17u64;
    let lhs = gb.normal_form_poly(&f.add(&g.scale(&c)));
    let rhs = nf.add(&gb.normal_form_poly(&g).scale(&c));
    assert_eq!(lhs, rhs);
}

#[test]
fn koszul_syzygy_of_two_variables() {
    let r = Ring::polynomial_ring(PrimeField::new(32003), 2, TermOrder::GrevlexAll);
    let x0 = Polynomial::x_var(&r, 0);
    let x1 = Polynomial::x_var(&r, 1);
    let row = PolyMatrix::generator_row(&r, &[x0.clone(), x1.clone()]).unwrap();
    let syz = syzygy_matrix(&row).unwrap();
    assert_eq!(syz.cols(), 1);
    assert_eq!(syz.entry(0, 0), &x1);
    assert_eq!(syz.entry(1, 0), &x0.neg());
    assert!(row.compose(&syz).unwrap().is_zero());
}

#[test]
fn coordinate_points_have_two_syzygies() {
    let r = ring3(32003);
    let gens = coord_points(&r);
    let row = PolyMatrix::generator_row(&r, &gens).unwrap();
    let syz = syzygy_matrix(&row).unwrap();
    assert_eq!(syz.cols(), 2);
    assert!(row.compose(&syz).unwrap().is_zero());
    syz.validate().unwrap();

    // the syzygy module equals <(x2,-x1,0), (x2,0,-x0)>
    let x0 = Polynomial::x_var(&r, 0);
    let x1 = Polynomial::x_var(&r, 1);
    let x2 = Polynomial::x_var(&r, 2);
    let z = Polynomial::zero(&r);
    let expected = [
        vec![x2.clone(), x1.neg(), z.clone()],
        vec![x2.clone(), z.clone(), x0.neg()],
    ];
    let computed = GroebnerBasis::of_module(&r, &syz.target, &syz.columns()).unwrap();
    let reference = GroebnerBasis::of_module(&r, &syz.target, &expected).unwrap();
    assert!(computed.same_submodule(&reference).unwrap());
}

#[test]
fn injective_column_has_no_syzygies() {
    let r = Ring::polynomial_ring(PrimeField::new(32003), 2, TermOrder::GrevlexAll);
    let x0 = Polynomial::x_var(&r, 0);
    let x1 = Polynomial::x_var(&r, 1);
    let col = PolyMatrix::from_columns(
        &r,
        &GradedFreeModule::free(BiDegree::zero(), 2),
        &[vec![x0, x1]],
    )
    .unwrap();
    let syz = syzygy_matrix(&col).unwrap();
    assert_eq!(syz.cols(), 0);
}

#[test]
fn colon_of_ideal_by_itself_is_unit() {
    let r = ring3(32003);
    let gens = coord_points(&r);
    let colon = colon_ideal(&r, &gens, &gens).unwrap();
    assert!(colon.contains_poly(&Polynomial::one(&r)));
}

#[test]
fn colon_of_square_by_generator() {
    let r = Ring::polynomial_ring(PrimeField::new(32003), 2, TermOrder::GrevlexAll);
    let x0 = Polynomial::x_var(&r, 0);
    let sq = x0.mul(&x0);
    let colon = colon_ideal(&r, &[sq], std::slice::from_ref(&x0)).unwrap();
    let gens = colon.ideal_generators();
    assert_eq!(gens, vec![x0]);
}

#[test]
fn colon_by_zero_rejected() {
    let r = ring3(32003);
    let gens = coord_points(&r);
    assert!(matches!(
        colon_ideal(&r, &gens, &[Polynomial::zero(&r)]),
        Err(AlgebraError::ColonByZero)
    ));
}

#[test]
fn krull_dimensions() {
    let r = ring3(32003);
    // three coordinate axes: dimension 1
    let gb = GroebnerBasis::of_ideal(&r, &coord_points(&r)).unwrap();
    assert_eq!(krull_dimension(&gb), 1);
    // the irrelevant ideal: dimension 0
    let vars: Vec<P> = (0..3).map(|i| Polynomial::x_var(&r, i)).collect();
    let gb = GroebnerBasis::of_ideal(&r, &vars).unwrap();
    assert_eq!(krull_dimension(&gb), 0);
    // unit ideal: -1 by convention
    let gb = GroebnerBasis::of_ideal(&r, &[Polynomial::one(&r)]).unwrap();
    assert_eq!(krull_dimension(&gb), -1);
    // zero ideal: the whole ring
    let gb = GroebnerBasis::of_ideal(&r, &[]).unwrap();
    assert_eq!(krull_dimension(&gb), 3);
}

#[test]
fn dimension_is_order_independent() {
    for order in [TermOrder::GrevlexAll, TermOrder::BlockYX] {
        let r = Ring::polynomial_ring(PrimeField::new(32003), 3, order);
        let gb = GroebnerBasis::of_ideal(&r, &coord_points(&r)).unwrap();
        assert_eq!(krull_dimension(&gb), 1);
    }
}

#[test]
fn reduced_basis_is_canonical() {
    // same ideal from different generator orderings gives identical bases
    let r = ring3(101);
    let gens = coord_points(&r);
    let mut rev = gens.clone();
    rev.reverse();
    let a = GroebnerBasis::of_ideal(&r, &gens).unwrap();
    let b = GroebnerBasis::of_ideal(&r, &rev).unwrap();
    assert_eq!(a.ideal_generators(), b.ideal_generators());
}

#[test]
fn lifter_solves_membership() {
    let r = ring3(32003);
    let gens = coord_points(&r);
    let row = PolyMatrix::generator_row(&r, &gens).unwrap();
    let lifter = Lifter::new(&row);
    // x0 x1 x2 = x2 * (x0 x1)
    let x0 = Polynomial::x_var(&r, 0);
    let x1 = Polynomial::x_var(&r, 1);
    let x2 = Polynomial::x_var(&r, 2);
    let target = x0.mul(&x1).mul(&x2);
    let u = lifter.lift_column(std::slice::from_ref(&target)).unwrap();
    let mut acc = Polynomial::zero(&r);
    for (g, ui) in gens.iter().zip(u.iter()) {
        acc = acc.add(&g.mul(ui));
    }
    assert_eq!(acc, target);
    // x0^2 is not in the ideal
    assert!(lifter.lift_column(&[x0.mul(&x0)]).is_none());
}
