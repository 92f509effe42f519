//! Exact coefficient fields: prime fields F_p (p < 2^31) and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::RngCore;

/// A coefficient field with exact arithmetic.
///
/// The field itself is a lightweight context value (it carries the modulus
/// for `PrimeField`); elements are plain data and only make sense relative
/// to the field that produced them.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    /// `Ord` is required only to make generator orderings deterministic.
    type Elem: Clone + Eq + Ord + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse. Panics on zero; callers guard.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Uniform-ish sample, used by the randomized batteries.
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Short display form of an element, e.g. `17` or `-2/3`.
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    /// Field label for reports, e.g. `F_32003` or `QQ`.
    fn label(&self) -> String;
}

/// F_p for a prime p < 2^31. Elements are canonical representatives in [0, p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 31)).contains(&p), "modulus must satisfy 2 <= p < 2^31");
        assert!(is_prime(p), "modulus {p} is not prime");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        // p < 2^31 keeps the product below 2^62.
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        pow_mod(*a, self.p - 2, self.p)
    }

    fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }

    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.next_u64() % self.p
    }

    fn fmt_elem(&self, a: &u64) -> String {
        // Print small negatives as such; easier on the eyes for p = 32003.
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            format!("{a}")
        }
    }

    fn label(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// The rational numbers with arbitrary-precision arithmetic.
///
/// `BigRational` keeps values in lowest terms with positive denominator,
/// which is exactly the canonical form we need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in QQ");
        a.recip()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn sample(&self, rng: &mut dyn RngCore) -> BigRational {
        // Small numerators keep Groebner runs over QQ tractable.
        let num = (rng.next_u64() % 19) as i64 - 9;
        BigRational::from_integer(BigInt::from(num))
    }

    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            format!("{}", a.numer())
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn label(&self) -> String {
        "QQ".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(5);
        assert_eq!(f.mul(&f.from_i64(2), &f.from_i64(3)), 1); // 6 = 1 mod 5
        assert_eq!(f.add(&4, &4), 3);
        assert_eq!(f.sub(&1, &4), 2);
        assert_eq!(f.neg(&2), 3);
        for a in 1..5u64 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 4);
    }

    #[test]
    #[should_panic]
    fn rejects_composite_modulus() {
        PrimeField::new(32004);
    }

    #[test]
    fn rational_arithmetic() {
        let q = Rationals;
        let half = q.div(&q.one(), &q.from_i64(2));
        let third = q.div(&q.one(), &q.from_i64(3));
        let sum = q.add(&half, &third);
        assert_eq!(q.fmt_elem(&sum), "5/6");
        assert!(q.is_zero(&q.sub(&sum, &sum)));
    }

    #[test]
    fn accepts_default_prime() {
        let f = PrimeField::new(32003);
        assert_eq!(f.label(), "F_32003");
    }
}
