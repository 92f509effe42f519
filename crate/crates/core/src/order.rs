//! Monomial and module term orders.
//!
//! Two global ring orders are supported: graded reverse lexicographic on
//! all variables, and a block order with the y block in front (grevlex
//! inside each block). Variables compare x0 > x1 > ... within a block.
//!
//! Free-module terms are compared position-over-term by default; syzygy
//! steps refine this with Schreyer's induced order, which compares the
//! images of terms under the map the module resolves and breaks ties by
//! position. Schreyer orders nest, one level per resolution step.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::monomial::Monomial;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum TermOrder {
    /// Grevlex on the concatenated exponent vector.
    GrevlexAll,
    /// y-block first (grevlex among y), ties by grevlex among x.
    BlockYX,
}

/// Grevlex comparison on one exponent block: higher total degree wins,
/// ties go to the vector whose last differing exponent is smaller.
fn grevlex_block(a: &[u16], b: &[u16], deg_a: u32, deg_b: u32) -> Ordering {
    match deg_a.cmp(&deg_b) {
        Ordering::Equal => {}
        c => return c,
    }
    for (ea, eb) in a.iter().zip(b.iter()).rev() {
        match ea.cmp(eb) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl TermOrder {
    pub fn cmp(&self, num_x: usize, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::GrevlexAll => grevlex_block(
                a.exps(),
                b.exps(),
                a.total_deg(),
                b.total_deg(),
            ),
            TermOrder::BlockYX => {
                let c = grevlex_block(
                    &a.exps()[num_x..],
                    &b.exps()[num_x..],
                    a.ydeg() as u32,
                    b.ydeg() as u32,
                );
                if c != Ordering::Equal {
                    return c;
                }
                grevlex_block(
                    &a.exps()[..num_x],
                    &b.exps()[..num_x],
                    a.xdeg() as u32,
                    b.xdeg() as u32,
                )
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TermOrder::GrevlexAll => "grevlex",
            TermOrder::BlockYX => "block",
        }
    }
}

/// Order on terms m*e_pos of a free module.
#[derive(Clone, Debug)]
pub enum ModuleOrder {
    /// Position dominates (e_0 > e_1 > ...), ties by the ring order.
    PosOverTerm,
    /// Schreyer order induced by the lead terms of the module's images.
    Schreyer(Arc<SchreyerOrder>),
}

#[derive(Debug)]
pub struct SchreyerOrder {
    /// Lead term (monomial, position) in the target for each basis element.
    pub anchors: Vec<(Monomial, usize)>,
    /// Order of the target module the anchors live in.
    pub target: ModuleOrder,
}

impl ModuleOrder {
    pub fn schreyer(anchors: Vec<(Monomial, usize)>, target: ModuleOrder) -> Self {
        ModuleOrder::Schreyer(Arc::new(SchreyerOrder { anchors, target }))
    }

    pub fn cmp(
        &self,
        order: TermOrder,
        num_x: usize,
        a: (&Monomial, usize),
        b: (&Monomial, usize),
    ) -> Ordering {
        match self {
            ModuleOrder::PosOverTerm => match b.1.cmp(&a.1) {
                Ordering::Equal => order.cmp(num_x, a.0, b.0),
                c => c,
            },
            ModuleOrder::Schreyer(s) => {
                let (mon_a, pos_a) = (a.0.mul(&s.anchors[a.1].0), s.anchors[a.1].1);
                let (mon_b, pos_b) = (b.0.mul(&s.anchors[b.1].0), s.anchors[b.1].1);
                match s.target.cmp(order, num_x, (&mon_a, pos_a), (&mon_b, pos_b)) {
                    Ordering::Equal => b.1.cmp(&a.1),
                    c => c,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u16], nx: usize) -> Monomial {
        Monomial::from_exps(exps, nx)
    }

    #[test]
    fn grevlex_two_vars() {
        // x0 > x1: x0^2 > x0 x1 > x1^2
        let nx = 2;
        let o = TermOrder::GrevlexAll;
        assert_eq!(o.cmp(nx, &m(&[2, 0], nx), &m(&[1, 1], nx)), Ordering::Greater);
        assert_eq!(o.cmp(nx, &m(&[1, 1], nx), &m(&[0, 2], nx)), Ordering::Greater);
        assert_eq!(o.cmp(nx, &m(&[0, 3], nx), &m(&[2, 0], nx)), Ordering::Greater);
    }

    #[test]
    fn block_order_puts_y_first() {
        // ring k[x0][y0]: y0 > x0^5 under the block order, not under grevlex-all
        let nx = 1;
        let y = m(&[0, 1], nx);
        let x5 = m(&[5, 0], nx);
        assert_eq!(TermOrder::BlockYX.cmp(nx, &y, &x5), Ordering::Greater);
        assert_eq!(TermOrder::GrevlexAll.cmp(nx, &y, &x5), Ordering::Less);
    }

    #[test]
    fn grevlex_classic_triple() {
        // standard check: x y^2 z vs x^2 z^2 in k[x,y,z], both degree 4
        let nx = 3;
        let a = m(&[1, 2, 1], nx);
        let b = m(&[2, 0, 2], nx);
        // last differing exponent: z: 1 < 2 so a > b
        assert_eq!(TermOrder::GrevlexAll.cmp(nx, &a, &b), Ordering::Greater);
    }

    #[test]
    fn pot_module_order() {
        let nx = 2;
        let o = ModuleOrder::PosOverTerm;
        let small = m(&[0, 1], nx);
        let big = m(&[3, 0], nx);
        // position dominates
        assert_eq!(
            o.cmp(TermOrder::GrevlexAll, nx, (&small, 0), (&big, 1)),
            Ordering::Greater
        );
        assert_eq!(
            o.cmp(TermOrder::GrevlexAll, nx, (&small, 1), (&big, 1)),
            Ordering::Less
        );
    }

    #[test]
    fn schreyer_order_compares_images() {
        let nx = 2;
        // anchors: e0 -> x1*E0, e1 -> x0*E0 in a rank-1 target
        let anchors = vec![(m(&[0, 1], nx), 0), (m(&[1, 0], nx), 0)];
        let o = ModuleOrder::schreyer(anchors, ModuleOrder::PosOverTerm);
        let one = m(&[0, 0], nx);
        // images: x1 vs x0 -> x0 bigger, so e1 > e0 here despite position
        assert_eq!(
            o.cmp(TermOrder::GrevlexAll, nx, (&one, 0), (&one, 1)),
            Ordering::Less
        );
        // equal images x0*x1 fall back to position: e0 wins
        let x0 = m(&[1, 0], nx);
        let x1 = m(&[0, 1], nx);
        assert_eq!(
            o.cmp(TermOrder::GrevlexAll, nx, (&x0, 0), (&x1, 1)),
            Ordering::Greater
        );
    }
}
