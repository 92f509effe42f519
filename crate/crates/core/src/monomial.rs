//! Monomials of the bigraded ring S = k\[x_0..x_n\]\[y_0..y_n\].
//!
//! Exponents are stored as one flat vector, x-block first, with the two
//! block totals cached so order comparisons never rescan the vector for
//! degrees. A ring with no y variables simply has an empty y-block.

use smallvec::SmallVec;

use crate::bidegree::BiDegree;

type Exps = SmallVec<[u16; 8]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exps,
    xdeg: u16,
    ydeg: u16,
}

impl Monomial {
    /// The monomial 1.
    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: std::iter::repeat_n(0, num_vars).collect(),
            xdeg: 0,
            ydeg: 0,
        }
    }

    /// Build from a full exponent vector; `num_x` marks the block split.
    pub fn from_exps(exps: &[u16], num_x: usize) -> Self {
        let xdeg: u16 = exps[..num_x].iter().sum();
        let ydeg: u16 = exps[num_x..].iter().sum();
        Monomial {
            exps: SmallVec::from_slice(exps),
            xdeg,
            ydeg,
        }
    }

    /// The single variable with index `var` (flat index across both blocks).
    pub fn variable(num_vars: usize, num_x: usize, var: usize) -> Self {
        let mut exps: Exps = std::iter::repeat_n(0, num_vars).collect();
        exps[var] = 1;
        let (xdeg, ydeg) = if var < num_x { (1, 0) } else { (0, 1) };
        Monomial { exps, xdeg, ydeg }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn xdeg(&self) -> u16 {
        self.xdeg
    }

    pub fn ydeg(&self) -> u16 {
        self.ydeg
    }

    pub fn total_deg(&self) -> u32 {
        self.xdeg as u32 + self.ydeg as u32
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.xdeg as i32, self.ydeg as i32)
    }

    pub fn is_one(&self) -> bool {
        self.xdeg == 0 && self.ydeg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps: Exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            xdeg: self.xdeg + other.xdeg,
            ydeg: self.ydeg + other.ydeg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.xdeg > other.xdeg || self.ydeg > other.ydeg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// self / other, or None when not divisible.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps: Exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            exps,
            xdeg: self.xdeg - other.xdeg,
            ydeg: self.ydeg - other.ydeg,
        })
    }

    pub fn lcm(&self, other: &Monomial, num_x: usize) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(&exps, num_x)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}
