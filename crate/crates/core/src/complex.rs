//! Chain complexes of graded free modules and their Betti tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bidegree::BiDegree;
use crate::error::AlgebraError;
use crate::field::Field;
use crate::matrix::{GradedFreeModule, PolyMatrix};
use crate::poly::RingRef;

/// A complex F_0 <- F_1 <- ... <- F_L with differentials d_i: F_i -> F_{i-1}.
///
/// For a resolution of an ideal, F_0 is the rank-1 free module and d_1 is
/// the row of generators; for a module presented by a matrix, F_0 is the
/// presentation target.
#[derive(Clone, Debug)]
pub struct ChainComplex<K: Field> {
    pub modules: Vec<GradedFreeModule>,
    pub diffs: Vec<PolyMatrix<K>>,
    ring: RingRef<K>,
}

impl<K: Field> ChainComplex<K> {
    pub fn new(
        ring: &RingRef<K>,
        modules: Vec<GradedFreeModule>,
        diffs: Vec<PolyMatrix<K>>,
    ) -> Self {
        debug_assert_eq!(modules.len(), diffs.len() + 1);
        ChainComplex {
            modules,
            diffs,
            ring: ring.clone(),
        }
    }

    /// A complex with only F_0 and no differentials.
    pub fn trivial(ring: &RingRef<K>, f0: GradedFreeModule) -> Self {
        ChainComplex {
            modules: vec![f0],
            diffs: Vec::new(),
            ring: ring.clone(),
        }
    }

    pub fn ring(&self) -> &RingRef<K> {
        &self.ring
    }

    /// Homological length (index of the last module slot).
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    /// d_i: F_i -> F_{i-1}, for 1 <= i <= length.
    pub fn differential(&self, i: usize) -> &PolyMatrix<K> {
        &self.diffs[i - 1]
    }

    /// Shape consistency, homogeneity of every differential, and d.d = 0.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        for (i, d) in self.diffs.iter().enumerate() {
            if d.source != self.modules[i + 1] || d.target != self.modules[i] {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "differential {} does not match its modules",
                    i + 1
                )));
            }
            d.validate()?;
        }
        for i in 0..self.diffs.len().saturating_sub(1) {
            let prod = self.diffs[i].compose(&self.diffs[i + 1])?;
            if !prod.is_zero() {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "d_{} . d_{} != 0",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(())
    }

    /// Shift multisets per homological position, positions 1..length.
    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, module) in self.modules.iter().enumerate().skip(1) {
            for &s in &module.shifts {
                *entries.entry((i, s)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    /// True when every differential entry has y-degree <= 1; otherwise the
    /// first violation as (homological index, row, col).
    pub fn subregular_witness(&self) -> Option<(usize, usize, usize)> {
        for (k, d) in self.diffs.iter().enumerate() {
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    if d.entry(r, c).max_y_degree() > 1 {
                        return Some((k + 1, r, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_subregular(&self) -> bool {
        self.subregular_witness().is_none()
    }

    /// Drop trailing zero modules (and their zero differentials).
    pub fn trimmed(mut self) -> Self {
        while self.modules.len() > 1 && self.modules.last().unwrap().is_zero() {
            self.modules.pop();
            self.diffs.pop();
        }
        self
    }

    /// No differential entry is a nonzero constant.
    pub fn has_no_unit_entries(&self) -> bool {
        self.diffs.iter().all(|d| {
            (0..d.rows()).all(|r| (0..d.cols()).all(|c| !d.entry(r, c).is_unit_constant()))
        })
    }
}

/// Multiset of shifts per homological position; shifts recorded positively,
/// so S(-a,-b) at position i appears as ((i, (a,b)) -> multiplicity).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, BiDegree), usize>,
}

impl BettiTable {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&mut self, position: usize, shift: BiDegree, mult: usize) {
        if mult > 0 {
            *self.entries.entry((position, shift)).or_insert(0) += mult;
        }
    }

    pub fn positions(&self) -> Vec<usize> {
        let mut ps: Vec<usize> = self.entries.keys().map(|(i, _)| *i).collect();
        ps.dedup();
        ps
    }

    pub fn total_rank(&self) -> usize {
        self.entries.values().sum()
    }

    /// `1: S(-1,-1)^2 ; 2: S(-2,-2)^1`
    pub fn to_pretty(&self) -> String {
        if self.entries.is_empty() {
            return "(empty)".to_string();
        }
        let mut by_pos: BTreeMap<usize, Vec<(BiDegree, usize)>> = BTreeMap::new();
        for (&(i, d), &m) in &self.entries {
            by_pos.entry(i).or_default().push((d, m));
        }
        let parts: Vec<String> = by_pos
            .iter()
            .map(|(i, shifts)| {
                let inner: Vec<String> = shifts
                    .iter()
                    .map(|(d, m)| format!("S({},{})^{}", -d.x, -d.y, m))
                    .collect();
                format!("{}: {}", i, inner.join(" + "))
            })
            .collect();
        parts.join(" ; ")
    }

    /// Parse the `to_pretty` format back. Whitespace-tolerant.
    pub fn parse_pretty(text: &str) -> Result<BettiTable, String> {
        let mut table = BettiTable::default();
        let text = text.trim();
        if text.is_empty() || text == "(empty)" {
            return Ok(table);
        }
        for part in text.split(';') {
            let (pos_str, rest) = part
                .split_once(':')
                .ok_or_else(|| format!("missing ':' in '{part}'"))?;
            let pos: usize = pos_str
                .trim()
                .parse()
                .map_err(|_| format!("bad position '{pos_str}'"))?;
            for summand in rest.split('+') {
                let s = summand.trim();
                let body = s
                    .strip_prefix("S(")
                    .ok_or_else(|| format!("expected S(..) in '{s}'"))?;
                let (inside, tail) = body
                    .split_once(')')
                    .ok_or_else(|| format!("unclosed S( in '{s}'"))?;
                let mut nums = inside.split(',');
                let a: i32 = nums
                    .next()
                    .and_then(|v| v.trim().parse().ok())
                    .ok_or_else(|| format!("bad shift in '{s}'"))?;
                let b: i32 = nums
                    .next()
                    .and_then(|v| v.trim().parse().ok())
                    .ok_or_else(|| format!("bad shift in '{s}'"))?;
                let mult: usize = match tail.trim().strip_prefix('^') {
                    Some(m) => m.trim().parse().map_err(|_| format!("bad multiplicity in '{s}'"))?,
                    None if tail.trim().is_empty() => 1,
                    _ => return Err(format!("trailing junk in '{s}'")),
                };
                table.add(pos, BiDegree::new(-a, -b), mult);
            }
        }
        Ok(table)
    }

    pub fn to_json(&self, module_name: &str) -> BettiTableJson {
        let mut by_pos: BTreeMap<usize, Vec<ShiftJson>> = BTreeMap::new();
        for (&(i, d), &m) in &self.entries {
            by_pos.entry(i).or_default().push(ShiftJson {
                x: d.x,
                y: d.y,
                mult: m,
            });
        }
        BettiTableJson {
            module: module_name.to_string(),
            positions: by_pos
                .into_iter()
                .map(|(i, shifts)| PositionJson { i, shifts })
                .collect(),
        }
    }

    pub fn from_json(json: &BettiTableJson) -> BettiTable {
        let mut table = BettiTable::default();
        for pos in &json.positions {
            for s in &pos.shifts {
                table.add(pos.i, BiDegree::new(s.x, s.y), s.mult);
            }
        }
        table
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pretty())
    }
}

/// JSON schema: shifts recorded positively, matching the table convention.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BettiTableJson {
    pub module: String,
    pub positions: Vec<PositionJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PositionJson {
    pub i: usize,
    pub shifts: Vec<ShiftJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ShiftJson {
    pub x: i32,
    pub y: i32,
    pub mult: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pretty_round_trip() {
        let mut t = BettiTable::default();
        t.add(1, BiDegree::new(1, 1), 2);
        t.add(2, BiDegree::new(2, 2), 1);
        t.add(2, BiDegree::new(3, 1), 4);
        let s = t.to_pretty();
        assert_eq!(s, "1: S(-1,-1)^2 ; 2: S(-2,-2)^1 + S(-3,-1)^4");
        let back = BettiTable::parse_pretty(&s).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn json_round_trip() {
        let mut t = BettiTable::default();
        t.add(1, BiDegree::new(2, 1), 1);
        let j = t.to_json("ix");
        let s = serde_json::to_string(&j).unwrap();
        let j2: BettiTableJson = serde_json::from_str(&s).unwrap();
        assert_eq!(BettiTable::from_json(&j2), t);
    }

    #[test]
    fn empty_table() {
        let t = BettiTable::default();
        assert!(t.is_empty());
        assert_eq!(BettiTable::parse_pretty(&t.to_pretty()).unwrap(), t);
    }
}
