//! Triangular arrays `x_{ij}`, `1 <= i <= j <= n`, affine constraint systems
//! over them, and integer-point enumeration.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coord {
    pub row: usize,
    pub col: usize,
}

impl Coord {
    pub const fn new(row: usize, col: usize) -> Self {
        Coord { row, col }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.row, self.col)
    }
}

/// Number of entries in a triangle of size `n`.
pub const fn triangle_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Inverse of [`triangle_len`].
pub fn triangle_size(len: usize) -> Result<usize> {
    let mut n = 0;
    while triangle_len(n) < len {
        n += 1;
    }
    if triangle_len(n) == len {
        Ok(n)
    } else {
        Err(Error::NotTriangular { arity: len })
    }
}

/// Row-major position of `x_{ij}`.
pub fn flat_index(n: usize, c: Coord) -> usize {
    debug_assert!(1 <= c.row && c.row <= c.col && c.col <= n);
    let before: usize = (1..c.row).map(|r| n + 1 - r).sum();
    before + c.col - c.row
}

pub fn coords(n: usize) -> impl Iterator<Item = Coord> {
    (1..=n).flat_map(move |i| (i..=n).map(move |j| Coord::new(i, j)))
}

pub fn in_triangle(n: usize, c: Coord) -> bool {
    1 <= c.row && c.row <= c.col && c.col <= n
}

/// A point of the triangle, entries stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrianglePoint {
    size: usize,
    entries: Vec<i64>,
}

impl TrianglePoint {
    pub fn zero(size: usize) -> Self {
        TrianglePoint {
            size,
            entries: vec![0; triangle_len(size)],
        }
    }

    pub fn from_entries(size: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != triangle_len(size) {
            return Err(Error::SizeMismatch {
                expected: triangle_len(size),
                got: entries.len(),
            });
        }
        Ok(TrianglePoint { size, entries })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// `x_{ij}`; zero outside the triangle.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        let c = Coord::new(i, j);
        if in_triangle(self.size, c) {
            self.entries[flat_index(self.size, c)]
        } else {
            0
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        let idx = flat_index(self.size, Coord::new(i, j));
        self.entries[idx] = v;
    }

    /// `Σ_j x_{ij}`.
    pub fn row_sum(&self, i: usize) -> i64 {
        (i..=self.size).map(|j| self.get(i, j)).sum()
    }

    pub fn add(&self, other: &TrianglePoint) -> TrianglePoint {
        assert_eq!(self.size, other.size, "triangle size mismatch");
        TrianglePoint {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for TrianglePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.size {
            let row: Vec<String> = (i..=self.size).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}{}", "  ".repeat(i - 1), row.join("   "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

/// `Σ coeff·x (= | >=) rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraint {
    pub terms: Vec<(Coord, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    /// Merges repeated coordinates and drops zero coefficients.
    pub fn new(terms: impl IntoIterator<Item = (Coord, i64)>, sense: Sense, rhs: i64) -> Self {
        let mut merged: std::collections::BTreeMap<Coord, i64> = Default::default();
        for (c, k) in terms {
            *merged.entry(c).or_default() += k;
        }
        Constraint {
            terms: merged.into_iter().filter(|&(_, k)| k != 0).collect(),
            sense,
            rhs,
        }
    }

    pub fn ge(terms: impl IntoIterator<Item = (Coord, i64)>, rhs: i64) -> Self {
        Self::new(terms, Sense::Ge, rhs)
    }

    pub fn eq(terms: impl IntoIterator<Item = (Coord, i64)>, rhs: i64) -> Self {
        Self::new(terms, Sense::Eq, rhs)
    }

    pub fn lhs(&self, p: &TrianglePoint) -> i64 {
        self.terms.iter().map(|&(c, k)| k * p.get(c.row, c.col)).sum()
    }

    pub fn holds(&self, p: &TrianglePoint) -> bool {
        let v = self.lhs(p);
        match self.sense {
            Sense::Eq => v == self.rhs,
            Sense::Ge => v >= self.rhs,
        }
    }

    pub fn involves(&self, c: Coord) -> bool {
        self.terms.iter().any(|&(t, _)| t == c)
    }

    pub fn coeff(&self, c: Coord) -> i64 {
        self.terms
            .iter()
            .find(|&&(t, _)| t == c)
            .map_or(0, |&(_, k)| k)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (idx, &(c, k)) in self.terms.iter().enumerate() {
            let sign = if k < 0 { "-" } else { "+" };
            match (idx, k.abs()) {
                (0, 1) if k < 0 => write!(f, "-{c}")?,
                (0, 1) => write!(f, "{c}")?,
                (0, m) if k < 0 => write!(f, "-{m}{c}")?,
                (0, m) => write!(f, "{m}{c}")?,
                (_, 1) => write!(f, " {sign} {c}")?,
                (_, m) => write!(f, " {sign} {m}{c}")?,
            }
        }
        let op = match self.sense {
            Sense::Eq => "=",
            Sense::Ge => ">=",
        };
        write!(f, " {op} {}", self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalitySystem {
    size: usize,
    constraints: Vec<Constraint>,
}

impl InequalitySystem {
    pub fn new(size: usize) -> Self {
        InequalitySystem {
            size,
            constraints: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn push(&mut self, c: Constraint) -> Result<()> {
        if let Some(&(coord, _)) = c.terms.iter().find(|(t, _)| !in_triangle(self.size, *t)) {
            return Err(Error::CoordOutOfRange {
                coord,
                size: self.size,
            });
        }
        self.constraints.push(c);
        Ok(())
    }

    /// Keeps only the constraints for which `keep` is true.
    pub fn retain(&mut self, keep: impl FnMut(&Constraint) -> bool) {
        self.constraints.retain(keep);
    }

    pub fn contains(&self, p: &TrianglePoint) -> bool {
        p.size() == self.size && self.constraints.iter().all(|c| c.holds(p))
    }

    pub fn first_violation(&self, p: &TrianglePoint) -> Option<&Constraint> {
        self.constraints.iter().find(|c| !c.holds(p))
    }

    /// Whether `c` (or a positive multiple of it) is one of the constraints.
    pub fn has_constraint(&self, c: &Constraint) -> bool {
        self.constraints.iter().any(|d| same_halfspace(c, d))
    }

    /// All integer points, in lexicographic row-major order.
    ///
    /// Variables are scanned row by row. A constraint bounds the last variable
    /// of its support once the earlier ones are fixed, so every variable needs
    /// such a lower and upper bound; otherwise the system is reported as
    /// unbounded.
    pub fn enumerate(&self) -> Result<LatticePointSet> {
        let n = self.size;
        let len = triangle_len(n);
        let mut out = LatticePointSet::new(n);
        let mut by_last: Vec<Vec<Bound>> = vec![Vec::new(); len];
        for c in &self.constraints {
            let Some(last) = c.terms.iter().map(|&(t, _)| flat_index(n, t)).max() else {
                let ok = match c.sense {
                    Sense::Eq => c.rhs == 0,
                    Sense::Ge => 0 >= c.rhs,
                };
                if !ok {
                    return Ok(out);
                }
                continue;
            };
            let mut coeff = 0;
            let mut others = Vec::new();
            for &(t, k) in &c.terms {
                let idx = flat_index(n, t);
                if idx == last {
                    coeff = k;
                } else {
                    others.push((idx, k));
                }
            }
            by_last[last].push(Bound {
                coeff,
                others,
                sense: c.sense,
                rhs: c.rhs,
            });
        }
        for (idx, coord) in coords(n).enumerate() {
            let bounds = &by_last[idx];
            let has_lower = bounds
                .iter()
                .any(|b| b.sense == Sense::Eq || b.coeff > 0);
            let has_upper = bounds
                .iter()
                .any(|b| b.sense == Sense::Eq || b.coeff < 0);
            if !has_lower {
                return Err(Error::Unbounded { coord, side: "lower" });
            }
            if !has_upper {
                return Err(Error::Unbounded { coord, side: "upper" });
            }
        }
        let mut values = vec![0i64; len];
        scan(0, &by_last, &mut values, &mut |v| {
            out.points.insert(TrianglePoint {
                size: n,
                entries: v.to_vec(),
            });
        });
        Ok(out)
    }
}

fn same_halfspace(a: &Constraint, b: &Constraint) -> bool {
    if a.sense != b.sense || a.terms.len() != b.terms.len() {
        return false;
    }
    if a.terms.is_empty() {
        return a.rhs == b.rhs;
    }
    let (ka, kb) = (a.terms[0].1, b.terms[0].1);
    let scale_ok = match a.sense {
        Sense::Ge => ka.signum() == kb.signum(),
        Sense::Eq => true,
    };
    scale_ok
        && a.rhs * kb == b.rhs * ka
        && a
            .terms
            .iter()
            .zip(&b.terms)
            .all(|(&(ca, xa), &(cb, xb))| ca == cb && xa * kb == xb * ka)
}

#[derive(Debug, Clone)]
struct Bound {
    coeff: i64,
    others: Vec<(usize, i64)>,
    sense: Sense,
    rhs: i64,
}

fn scan(idx: usize, by_last: &[Vec<Bound>], values: &mut Vec<i64>, emit: &mut impl FnMut(&[i64])) {
    if idx == values.len() {
        emit(values);
        return;
    }
    let mut lo = i64::MIN;
    let mut hi = i64::MAX;
    for b in &by_last[idx] {
        let partial: i64 = b.others.iter().map(|&(j, k)| k * values[j]).sum();
        let target = b.rhs - partial;
        match b.sense {
            Sense::Eq => {
                if target % b.coeff != 0 {
                    return;
                }
                let v = target / b.coeff;
                lo = lo.max(v);
                hi = hi.min(v);
            }
            Sense::Ge if b.coeff > 0 => lo = lo.max(Integer::div_ceil(&target, &b.coeff)),
            Sense::Ge => hi = hi.min(Integer::div_floor(&target, &b.coeff)),
        }
    }
    for v in lo..=hi {
        values[idx] = v;
        scan(idx + 1, by_last, values, emit);
    }
}

/// A finite set of integer points of a fixed triangle, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePointSet {
    size: usize,
    points: BTreeSet<TrianglePoint>,
}

impl LatticePointSet {
    pub fn new(size: usize) -> Self {
        LatticePointSet {
            size,
            points: BTreeSet::new(),
        }
    }

    pub fn singleton(p: TrianglePoint) -> Self {
        let mut s = Self::new(p.size());
        s.points.insert(p);
        s
    }

    pub fn from_points(size: usize, points: impl IntoIterator<Item = TrianglePoint>) -> Result<Self> {
        let mut s = Self::new(size);
        for p in points {
            if p.size() != size {
                return Err(Error::SizeMismatch {
                    expected: size,
                    got: p.size(),
                });
            }
            s.points.insert(p);
        }
        Ok(s)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &TrianglePoint) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &TrianglePoint> {
        self.points.iter()
    }

    pub fn insert(&mut self, p: TrianglePoint) {
        assert_eq!(p.size(), self.size);
        self.points.insert(p);
    }

    /// `{a + b : a ∈ self, b ∈ other}`.
    pub fn sumset(&self, other: &LatticePointSet) -> LatticePointSet {
        assert_eq!(self.size, other.size, "triangle size mismatch");
        let mut out = LatticePointSet::new(self.size);
        for a in &self.points {
            for b in &other.points {
                out.points.insert(a.add(b));
            }
        }
        out
    }
}

impl<'a> IntoIterator for &'a LatticePointSet {
    type Item = &'a TrianglePoint;
    type IntoIter = std::collections::btree_set::Iter<'a, TrianglePoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing() {
        let n = 4;
        let all: Vec<_> = coords(n).collect();
        assert_eq!(all.len(), triangle_len(n));
        for (k, c) in all.iter().enumerate() {
            assert_eq!(flat_index(n, *c), k);
        }
        assert_eq!(triangle_size(10).unwrap(), 4);
        assert_eq!(triangle_size(0).unwrap(), 0);
        assert!(triangle_size(7).is_err());
    }

    #[test]
    fn infeasible_system_is_empty() {
        let mut s = InequalitySystem::new(1);
        let x11 = Coord::new(1, 1);
        s.push(Constraint::eq([(x11, 1)], 0)).unwrap();
        s.push(Constraint::ge([(x11, 1)], 1)).unwrap();
        assert!(s.enumerate().unwrap().is_empty());
    }

    #[test]
    fn unbounded_system_is_rejected() {
        let mut s = InequalitySystem::new(2);
        s.push(Constraint::ge([(Coord::new(1, 1), 1)], 0)).unwrap();
        assert!(matches!(
            s.enumerate(),
            Err(Error::Unbounded { side: "upper", .. })
        ));
    }

    #[test]
    fn out_of_range_coordinate_is_rejected() {
        let mut s = InequalitySystem::new(2);
        assert!(s.push(Constraint::ge([(Coord::new(2, 1), 1)], 0)).is_err());
    }

    #[test]
    fn box_with_diagonal_cut() {
        // 0 <= x11, x12, x22 <= 2 and x11 + x22 >= 3
        let mut s = InequalitySystem::new(2);
        for c in coords(2) {
            s.push(Constraint::ge([(c, 1)], 0)).unwrap();
            s.push(Constraint::ge([(c, -1)], -2)).unwrap();
        }
        s.push(Constraint::ge([(Coord::new(1, 1), 1), (Coord::new(2, 2), 1)], 3))
            .unwrap();
        let pts = s.enumerate().unwrap();
        // brute force over the 27-point box
        let mut expected = 0;
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    let p = TrianglePoint::from_entries(2, vec![a, b, c]).unwrap();
                    if s.contains(&p) {
                        expected += 1;
                        assert!(pts.contains(&p));
                    }
                }
            }
        }
        assert_eq!(pts.len(), expected);
        assert_eq!(expected, 9);
    }

    #[test]
    fn equality_with_non_unit_coefficient() {
        let mut s = InequalitySystem::new(1);
        s.push(Constraint::eq([(Coord::new(1, 1), 2)], 3)).unwrap();
        assert!(s.enumerate().unwrap().is_empty());
        let mut s = InequalitySystem::new(1);
        s.push(Constraint::eq([(Coord::new(1, 1), -2)], -4)).unwrap();
        let pts = s.enumerate().unwrap();
        assert_eq!(pts.iter().next().unwrap().get(1, 1), 2);
    }

    #[test]
    fn constraint_display_and_scaling() {
        let c = Constraint::ge(
            [(Coord::new(1, 2), 1), (Coord::new(2, 3), -1), (Coord::new(3, 3), 1)],
            2,
        );
        assert_eq!(c.to_string(), "x12 - x23 + x33 >= 2");
        let doubled = Constraint::ge(c.terms.iter().map(|&(t, k)| (t, 2 * k)), 4);
        assert!(same_halfspace(&c, &doubled));
        let flipped = Constraint::ge(c.terms.iter().map(|&(t, k)| (t, -k)), -2);
        assert!(!same_halfspace(&c, &flipped));
    }

    #[test]
    fn sumset_identity() {
        let zero = LatticePointSet::singleton(TrianglePoint::zero(2));
        let s = LatticePointSet::from_points(
            2,
            [
                TrianglePoint::from_entries(2, vec![1, 0, 0]).unwrap(),
                TrianglePoint::from_entries(2, vec![1, 0, 1]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(zero.sumset(&s), s);
        assert_eq!(s.sumset(&zero), s);
        assert_eq!(s.sumset(&s).len(), 3);
    }
}
