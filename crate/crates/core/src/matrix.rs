//! Graded free modules and degree-0 homogeneous matrices between them.
//!
//! A `GradedFreeModule` with shifts [(a_1,b_1), ...] denotes ⊕_k S(-a_k,-b_k);
//! shifts are recorded positively. A `PolyMatrix` A: source -> target is a
//! degree-0 map, so every nonzero entry A\[r\]\[c\] must be bihomogeneous of
//! bidegree source.shift\[c\] - target.shift\[r\].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bidegree::BiDegree;
use crate::error::AlgebraError;
use crate::field::Field;
use crate::poly::{Polynomial, RingRef};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GradedFreeModule {
    pub shifts: Vec<BiDegree>,
}

impl GradedFreeModule {
    pub fn new(shifts: Vec<BiDegree>) -> Self {
        GradedFreeModule { shifts }
    }

    /// The rank-1 module S itself.
    pub fn unit() -> Self {
        GradedFreeModule {
            shifts: vec![BiDegree::zero()],
        }
    }

    pub fn free(shift: BiDegree, rank: usize) -> Self {
        GradedFreeModule {
            shifts: vec![shift; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_zero(&self) -> bool {
        self.shifts.is_empty()
    }

    /// Shifts of the dual twisted by `twist`: S(-a)^v (x) S(-twist) has
    /// shift twist - a in the positive-recording convention.
    pub fn dual_twisted(&self, twist: BiDegree) -> Self {
        GradedFreeModule {
            shifts: self.shifts.iter().map(|&a| twist - a).collect(),
        }
    }

    pub fn concat(&self, other: &GradedFreeModule) -> Self {
        let mut shifts = self.shifts.clone();
        shifts.extend_from_slice(&other.shifts);
        GradedFreeModule { shifts }
    }
}

impl fmt::Display for GradedFreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shifts.is_empty() {
            return write!(f, "0");
        }
        // Group equal shifts: S(-1,-1)^2 + S(-2,-2)
        let mut groups: Vec<(BiDegree, usize)> = Vec::new();
        let mut sorted = self.shifts.clone();
        sorted.sort();
        for s in sorted {
            match groups.last_mut() {
                Some((d, m)) if *d == s => *m += 1,
                _ => groups.push((s, 1)),
            }
        }
        let parts: Vec<String> = groups
            .iter()
            .map(|(d, m)| {
                let base = format!("S({},{})", -d.x, -d.y);
                if *m == 1 {
                    base
                } else {
                    format!("{base}^{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A degree-0 homogeneous map between graded free modules, stored densely.
#[derive(Clone, Debug)]
pub struct PolyMatrix<K: Field> {
    pub source: GradedFreeModule,
    pub target: GradedFreeModule,
    ring: RingRef<K>,
    /// Row-major: entries[r * cols + c].
    entries: Vec<Polynomial<K>>,
}

impl<K: Field> PartialEq for PolyMatrix<K> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.entries == other.entries
    }
}

impl<K: Field> PolyMatrix<K> {
    pub fn zero(ring: &RingRef<K>, target: GradedFreeModule, source: GradedFreeModule) -> Self {
        let entries = vec![Polynomial::zero(ring); target.rank() * source.rank()];
        PolyMatrix {
            source,
            target,
            ring: ring.clone(),
            entries,
        }
    }

    pub fn identity(ring: &RingRef<K>, module: GradedFreeModule) -> Self {
        let mut m = Self::zero(ring, module.clone(), module);
        for i in 0..m.target.rank() {
            m.set(i, i, Polynomial::one(ring));
        }
        m
    }

    pub fn ring(&self) -> &RingRef<K> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial<K> {
        &self.entries[r * self.cols() + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial<K>) {
        let cols = self.cols();
        self.entries[r * cols + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial<K>> {
        (0..self.rows()).map(|r| self.entry(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial<K>>> {
        (0..self.cols()).map(|c| self.column(c)).collect()
    }

    /// Build a matrix from columns into `target`, inferring each source
    /// shift from the column's entries. Errors if a column is not
    /// homogeneous as a degree-0 map or is zero (no shift derivable).
    pub fn from_columns(
        ring: &RingRef<K>,
        target: &GradedFreeModule,
        cols: &[Vec<Polynomial<K>>],
    ) -> Result<Self, AlgebraError> {
        let mut shifts = Vec::with_capacity(cols.len());
        for (c, col) in cols.iter().enumerate() {
            if col.len() != target.rank() {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "column {c} has {} entries, target rank is {}",
                    col.len(),
                    target.rank()
                )));
            }
            let mut shift: Option<BiDegree> = None;
            for (r, p) in col.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let d = p.bidegree().ok_or(AlgebraError::NotHomogeneous {
                    row: r,
                    col: c,
                    expected: "a single bidegree".into(),
                })?;
                let s = d + target.shifts[r];
                match shift {
                    None => shift = Some(s),
                    Some(prev) if prev == s => {}
                    Some(prev) => {
                        return Err(AlgebraError::NotHomogeneous {
                            row: r,
                            col: c,
                            expected: format!("{}", prev - target.shifts[r]),
                        })
                    }
                }
            }
            shifts.push(shift.ok_or_else(|| {
                AlgebraError::ShapeMismatch(format!("column {c} is zero; shift not derivable"))
            })?);
        }
        let source = GradedFreeModule::new(shifts);
        let mut m = Self::zero(ring, target.clone(), source);
        for (c, col) in cols.iter().enumerate() {
            for (r, p) in col.iter().enumerate() {
                m.set(r, c, p.clone());
            }
        }
        Ok(m)
    }

    /// Row matrix of an ideal's generators: S^{shifts} -> S.
    pub fn generator_row(
        ring: &RingRef<K>,
        gens: &[Polynomial<K>],
    ) -> Result<Self, AlgebraError> {
        let cols: Vec<Vec<Polynomial<K>>> = gens.iter().map(|g| vec![g.clone()]).collect();
        Self::from_columns(ring, &GradedFreeModule::unit(), &cols)
    }

    /// Check the degree-0 homogeneity invariant entry by entry.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                let p = self.entry(r, c);
                if p.is_zero() {
                    continue;
                }
                let expected = self.source.shifts[c] - self.target.shifts[r];
                match p.bidegree() {
                    Some(d) if d == expected => {}
                    _ => {
                        return Err(AlgebraError::NotHomogeneous {
                            row: r,
                            col: c,
                            expected: format!("{expected}"),
                        })
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix product self . other (apply `other` first).
    pub fn compose(&self, other: &PolyMatrix<K>) -> Result<PolyMatrix<K>, AlgebraError> {
        if self.source != other.target {
            return Err(AlgebraError::ShapeMismatch(format!(
                "compose: inner modules differ ({} vs {})",
                self.source, other.target
            )));
        }
        let mut out = Self::zero(&self.ring, self.target.clone(), other.source.clone());
        for r in 0..self.rows() {
            for c in 0..other.cols() {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols() {
                    let a = self.entry(r, k);
                    let b = other.entry(k, c);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Transpose with source/target dualized and twisted: the dual of
    /// A: F -> G becomes A^T: G^v(-twist) -> F^v(-twist).
    pub fn dualize_shifted(&self, twist: BiDegree) -> PolyMatrix<K> {
        let source = self.target.dual_twisted(twist);
        let target = self.source.dual_twisted(twist);
        let mut out = Self::zero(&self.ring, target, source);
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.set(c, r, self.entry(r, c).clone());
            }
        }
        out
    }

    /// Apply a y-degree-1 row vector (y_0 .. y_{n-1}) to the rows, i.e.
    /// compute the 1 x cols product y . self. Kept here because both the
    /// symmetric-algebra ideal and the Koszul hull are built this way.
    pub fn y_row_product(&self) -> Result<Vec<Polynomial<K>>, AlgebraError> {
        if self.rows() != self.ring.num_y {
            return Err(AlgebraError::ShapeMismatch(format!(
                "y-row product needs {} rows, matrix has {}",
                self.ring.num_y,
                self.rows()
            )));
        }
        let mut out = Vec::with_capacity(self.cols());
        for c in 0..self.cols() {
            let mut acc = Polynomial::zero(&self.ring);
            for r in 0..self.rows() {
                let e = self.entry(r, c);
                if e.is_zero() {
                    continue;
                }
                acc = acc.add(&Polynomial::y_var(&self.ring, r).mul(e));
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn delete_row(&self, row: usize) -> PolyMatrix<K> {
        let mut target = self.target.clone();
        target.shifts.remove(row);
        let mut out = Self::zero(&self.ring, target, self.source.clone());
        for r in 0..self.rows() {
            if r == row {
                continue;
            }
            let nr = if r < row { r } else { r - 1 };
            for c in 0..self.cols() {
                out.set(nr, c, self.entry(r, c).clone());
            }
        }
        out
    }

    pub fn delete_col(&self, col: usize) -> PolyMatrix<K> {
        let mut source = self.source.clone();
        source.shifts.remove(col);
        let mut out = Self::zero(&self.ring, self.target.clone(), source);
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                if c == col {
                    continue;
                }
                let nc = if c < col { c } else { c - 1 };
                out.set(r, nc, self.entry(r, c).clone());
            }
        }
        out
    }

    /// Block matrix [[a, b], [c, d]]; any block may be absent (zero).
    pub fn block_2x2(
        ring: &RingRef<K>,
        a: &PolyMatrix<K>,
        b: &PolyMatrix<K>,
        c: &PolyMatrix<K>,
        d: &PolyMatrix<K>,
    ) -> Result<PolyMatrix<K>, AlgebraError> {
        if a.target != b.target || c.target != d.target || a.source != c.source || b.source != d.source
        {
            return Err(AlgebraError::ShapeMismatch(
                "block_2x2: inconsistent block shapes".into(),
            ));
        }
        let target = a.target.concat(&c.target);
        let source = a.source.concat(&b.source);
        let mut out = Self::zero(ring, target, source);
        let (tr, sc) = (a.rows(), a.cols());
        for r in 0..a.rows() {
            for cc in 0..a.cols() {
                out.set(r, cc, a.entry(r, cc).clone());
            }
            for cc in 0..b.cols() {
                out.set(r, sc + cc, b.entry(r, cc).clone());
            }
        }
        for r in 0..c.rows() {
            for cc in 0..c.cols() {
                out.set(tr + r, cc, c.entry(r, cc).clone());
            }
            for cc in 0..d.cols() {
                out.set(tr + r, sc + cc, d.entry(r, cc).clone());
            }
        }
        Ok(out)
    }

    /// Largest y-degree over all nonzero entries.
    pub fn max_entry_y_degree(&self) -> u16 {
        self.entries.iter().map(|p| p.max_y_degree()).max().unwrap_or(0)
    }

    /// Horizontal concatenation [self | other]; targets must agree.
    pub fn hstack(&self, other: &PolyMatrix<K>) -> Result<PolyMatrix<K>, AlgebraError> {
        if self.target != other.target {
            return Err(AlgebraError::ShapeMismatch(
                "hstack: targets differ".into(),
            ));
        }
        let source = self.source.concat(&other.source);
        let mut out = Self::zero(&self.ring, self.target.clone(), source);
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.set(r, c, self.entry(r, c).clone());
            }
            for c in 0..other.cols() {
                out.set(r, self.cols() + c, other.entry(r, c).clone());
            }
        }
        Ok(out)
    }

    /// Entry-wise negation.
    pub fn negated(&self) -> PolyMatrix<K> {
        let mut out = self.clone();
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                out.set(r, c, self.entry(r, c).neg());
            }
        }
        out
    }

    /// Evaluate every entry at a point of the coefficient field.
    pub fn eval_at(&self, point: &[K::Elem]) -> Vec<Vec<K::Elem>> {
        (0..self.rows())
            .map(|r| (0..self.cols()).map(|c| self.entry(r, c).eval(point)).collect())
            .collect()
    }
}

impl<K: Field> fmt::Display for PolyMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "matrix {}x{}: {} <- {}",
            self.rows(),
            self.cols(),
            self.target,
            self.source
        )?;
        for r in 0..self.rows() {
            let row: Vec<String> = (0..self.cols())
                .map(|c| format!("{}", self.entry(r, c)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
