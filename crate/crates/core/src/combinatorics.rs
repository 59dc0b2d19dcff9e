//! Permutations, partitions and diagrams.
//!
//! Everything here is 1-based: a permutation of `{1..n}` is stored in one-line
//! notation, and a box `(i, j)` sits in row `i`, column `j`, with `(1, 1)` the
//! top-left corner.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    word: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(word: Vec<usize>) -> Result<Self> {
        Permutation::new(word)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(w: Permutation) -> Self {
        w.word
    }
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation { word, len: n });
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The longest element `w0(i) = n - i + 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    /// All permutations of `{1..n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut word: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation { word: word.clone() });
            if !next_permutation(&mut word) {
                break;
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    /// `w * s_i`: swaps the entries in positions `i` and `i + 1`.
    pub fn times_simple(&self, i: usize) -> Permutation {
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Permutation { word }
    }

    pub fn inversions(&self) -> usize {
        let w = &self.word;
        (0..w.len())
            .map(|a| (a + 1..w.len()).filter(|&b| w[a] > w[b]).count())
            .sum()
    }

    /// Positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| self.at(i) > self.at(i + 1))
            .collect()
    }

    /// First ascent `w(i) < w(i+1)`, if any.
    pub fn first_ascent(&self) -> Option<usize> {
        (1..self.len()).find(|&i| self.at(i) < self.at(i + 1))
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v == i + 1)
    }
}

fn next_permutation(word: &mut [usize]) -> bool {
    if word.len() < 2 {
        return false;
    }
    let mut i = word.len() - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = word.len() - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.iter().all(|&v| v < 10) {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `256413` (single digits) or `2,5,6,4,1,3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_err = || Error::Parse {
            what: "permutation",
            token: s.to_string(),
        };
        let word: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| parse_err()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(parse_err))
                .collect::<Result<_>>()?
        };
        if word.is_empty() {
            return Err(parse_err());
        }
        Permutation::new(word)
    }
}

/// Where a forbidden pattern occurs inside a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternOccurrence {
    pub pattern: &'static str,
    pub positions: [usize; 4],
}

impl From<PatternOccurrence> for Error {
    fn from(p: PatternOccurrence) -> Self {
        Error::PatternContained {
            pattern: p.pattern,
            positions: p.positions,
        }
    }
}

/// Finds the first occurrence of 3142 or 4132 in `w`.
pub fn find_forbidden_pattern(w: &Permutation) -> Option<PatternOccurrence> {
    let v = w.word();
    let n = v.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let (pa, pb, pc, pd) = (v[a], v[b], v[c], v[d]);
                    let pattern = if pb < pd && pd < pa && pa < pc {
                        "3142"
                    } else if pb < pd && pd < pc && pc < pa {
                        "4132"
                    } else {
                        continue;
                    };
                    return Some(PatternOccurrence {
                        pattern,
                        positions: [a + 1, b + 1, c + 1, d + 1],
                    });
                }
            }
        }
    }
    None
}

pub fn avoids_patterns(w: &Permutation) -> bool {
    find_forbidden_pattern(w).is_none()
}

/// A weakly decreasing sequence of nonnegative integers with a declared
/// length; trailing zeros are significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition {
    parts: Vec<i64>,
}

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<i64>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing || parts.last().is_some_and(|&p| p < 0) {
            return Err(Error::InvalidPartition { parts });
        }
        Ok(Partition { parts })
    }

    pub fn zero(len: usize) -> Self {
        Partition {
            parts: vec![0; len],
        }
    }

    /// `1^k 0^(n-k)`.
    pub fn column(k: usize, n: usize) -> Self {
        let mut parts = vec![1; k.min(n)];
        parts.resize(n, 0);
        Partition { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// `λ_i` for 1-based `i`; zero past the declared length.
    pub fn part(&self, i: usize) -> i64 {
        if i == 0 {
            panic!("partition parts are 1-based");
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    pub fn scaled(&self, t: i64) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| p * t).collect(),
        }
    }

    pub fn add(&self, other: &Partition) -> Result<Partition> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Partition {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect(),
        })
    }

    /// Column lengths of the Young diagram.
    pub fn conjugate_heights(&self) -> Vec<usize> {
        let width = self.part(1).max(0);
        (1..=width)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect()
    }

    /// Every partition of length `len` with parts at most `max_part`, in
    /// lexicographic order.
    pub fn all_in_box(len: usize, max_part: i64) -> Vec<Partition> {
        fn rec(len: usize, cap: i64, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if prefix.len() == len {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            for p in 0..=cap {
                prefix.push(p);
                rec(len, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(len, max_part, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse {
                what: "partition",
                token: s.to_string(),
            });
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim().parse::<i64>().map_err(|_| Error::Parse {
                    what: "partition part",
                    token: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A finite set of boxes in the grid, with an explicit row count.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramJson", into = "DiagramJson")]
pub struct Diagram {
    rows: usize,
    boxes: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    rows: usize,
    boxes: Vec<[usize; 2]>,
}

impl TryFrom<DiagramJson> for Diagram {
    type Error = Error;

    fn try_from(d: DiagramJson) -> Result<Self> {
        Diagram::new(d.rows, d.boxes.into_iter().map(|[i, j]| (i, j)))
    }
}

impl From<Diagram> for DiagramJson {
    fn from(d: Diagram) -> Self {
        DiagramJson {
            rows: d.rows,
            boxes: d.boxes.into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl Diagram {
    pub fn new(rows: usize, boxes: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let boxes: BTreeSet<_> = boxes.into_iter().collect();
        if let Some(&(row, col)) = boxes
            .iter()
            .find(|&&(i, j)| i == 0 || j == 0 || i > rows)
        {
            return Err(Error::BoxOutOfRange { row, col, rows });
        }
        Ok(Diagram { rows, boxes })
    }

    pub fn empty(rows: usize) -> Self {
        Diagram {
            rows,
            boxes: BTreeSet::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn boxes(&self) -> &BTreeSet<(usize, usize)> {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.boxes.contains(&(i, j))
    }

    /// Occupied rows of each nonempty column, ascending.
    pub fn columns(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut cols: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(i, j) in &self.boxes {
            cols.entry(j).or_default().push(i);
        }
        for rows in cols.values_mut() {
            rows.sort_unstable();
        }
        cols
    }

    pub fn check_column_convex(&self) -> Result<()> {
        for (column, rows) in self.columns() {
            let contiguous = rows.windows(2).all(|w| w[1] == w[0] + 1);
            if !contiguous {
                return Err(Error::NotColumnConvex { column, rows });
            }
        }
        Ok(())
    }

    pub fn is_column_convex(&self) -> bool {
        self.check_column_convex().is_ok()
    }

    pub fn has_first_row_boxes(&self) -> bool {
        self.boxes.iter().any(|&(i, _)| i == 1)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.boxes.iter().map(|&(_, j)| j).max().unwrap_or(0);
        for i in 1..=self.rows {
            let line: String = (1..=width)
                .map(|j| if self.contains(i, j) { '#' } else { '.' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// `{(i, j) : w(i) > j and w^{-1}(j) > i}`.
pub fn rothe_diagram(w: &Permutation) -> Diagram {
    let n = w.len();
    let inv = w.inverse();
    let boxes = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| w.at(i) > j && inv.at(j) > i);
    Diagram {
        rows: n,
        boxes: boxes.collect(),
    }
}

/// The family `λ^(1), …, λ^(n)` of a column-convex diagram; `λ^(i)` has
/// exactly `i` parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Partition>", into = "Vec<Partition>")]
pub struct ParFamily {
    shapes: Vec<Partition>,
}

impl TryFrom<Vec<Partition>> for ParFamily {
    type Error = Error;

    fn try_from(shapes: Vec<Partition>) -> Result<Self> {
        ParFamily::new(shapes)
    }
}

impl From<ParFamily> for Vec<Partition> {
    fn from(f: ParFamily) -> Self {
        f.shapes
    }
}

impl ParFamily {
    pub fn new(shapes: Vec<Partition>) -> Result<Self> {
        for (idx, shape) in shapes.iter().enumerate() {
            if shape.len() != idx + 1 {
                return Err(Error::FamilyShape {
                    index: idx + 1,
                    got: shape.len(),
                });
            }
        }
        Ok(ParFamily { shapes })
    }

    pub fn zero(n: usize) -> Self {
        ParFamily {
            shapes: (1..=n).map(Partition::zero).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.shapes.len()
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    /// `λ^(i)`, 1-based.
    pub fn shape(&self, i: usize) -> &Partition {
        &self.shapes[i - 1]
    }

    /// `λ^(i)_j`, zero when `j > i`.
    pub fn part(&self, i: usize, j: usize) -> i64 {
        self.shape(i).part(j)
    }

    /// A diagram realising this family: the columns of `λ^(i)` are placed
    /// left to right with their lowest box in row `i`.
    pub fn to_diagram(&self) -> Diagram {
        let mut boxes = BTreeSet::new();
        let mut col = 0;
        for i in 1..=self.n() {
            for h in self.shape(i).conjugate_heights() {
                col += 1;
                for r in (i + 1 - h)..=i {
                    boxes.insert((r, col));
                }
            }
        }
        Diagram {
            rows: self.n(),
            boxes,
        }
    }

    /// Every family with `n` rows whose parts are at most `max_part`.
    pub fn all(n: usize, max_part: i64) -> Vec<ParFamily> {
        let mut families = vec![Vec::new()];
        for i in 1..=n {
            let choices = Partition::all_in_box(i, max_part);
            families = families
                .into_iter()
                .flat_map(|prefix: Vec<Partition>| {
                    choices.iter().map(move |p| {
                        let mut next = prefix.clone();
                        next.push(p.clone());
                        next
                    })
                })
                .collect();
        }
        families
            .into_iter()
            .map(|shapes| ParFamily { shapes })
            .collect()
    }
}

impl fmt::Display for ParFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.shapes.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl FromStr for ParFamily {
    type Err = Error;

    /// Partitions separated by `;`, shortest first: `0;1,0;2,1,0`.
    fn from_str(s: &str) -> Result<Self> {
        let shapes = s
            .trim()
            .split(';')
            .map(str::parse)
            .collect::<Result<Vec<Partition>>>()?;
        ParFamily::new(shapes)
    }
}

/// Groups the columns of `d` by their lowest row and reads each group off as a
/// bottom-justified partition.
pub fn par_family(d: &Diagram) -> Result<ParFamily> {
    d.check_column_convex()?;
    let n = d.rows();
    let mut heights: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for rows in d.columns().values() {
        let lowest = *rows.last().expect("columns are nonempty");
        heights[lowest].push(rows.len());
    }
    let shapes = (1..=n)
        .map(|i| {
            let mut hs = std::mem::take(&mut heights[i]);
            hs.sort_unstable_by(|a, b| b.cmp(a));
            let parts = (1..=i)
                .map(|r| hs.iter().filter(|&&h| h >= r).count() as i64)
                .collect();
            Partition { parts }
        })
        .collect();
    Ok(ParFamily { shapes })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedDiagram {
    pub tilde: Diagram,
    pub mu: Partition,
}

/// Drops every column meeting the first row and shifts the rest up one row;
/// `mu` records the dropped columns.
pub fn reduce_diagram(d: &Diagram) -> Result<ReducedDiagram> {
    let fam = par_family(d)?;
    let n = d.rows();
    if n == 0 {
        return Err(Error::InvalidParameters {
            reason: "cannot reduce a diagram with no rows".into(),
        });
    }
    let cols = d.columns();
    let boxes = cols
        .iter()
        .filter(|(_, rows)| rows[0] != 1)
        .flat_map(|(&j, rows)| rows.iter().map(move |&i| (i - 1, j)))
        .collect();
    let tilde = Diagram {
        rows: n - 1,
        boxes,
    };
    let mut mu = vec![0i64; n];
    let mut acc = 0;
    for k in (1..=n).rev() {
        acc += fam.part(k, k);
        mu[k - 1] = acc;
    }
    Ok(ReducedDiagram {
        tilde,
        mu: Partition { parts: mu },
    })
}

/// Shape attached to a permutation with at most one descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannianShape {
    /// The descent position `k`; `None` for the identity.
    pub descent: Option<usize>,
    /// `(w(k) - k, …, w(1) - 1)`; all zeros of length `n` for the identity.
    pub shape: Partition,
}

pub fn grassmannian_shape(w: &Permutation) -> Option<GrassmannianShape> {
    match w.descents().as_slice() {
        [] => Some(GrassmannianShape {
            descent: None,
            shape: Partition::zero(w.len()),
        }),
        &[k] => {
            let parts = (1..=k)
                .map(|i| (w.at(k + 1 - i) - (k + 1 - i)) as i64)
                .collect();
            Some(GrassmannianShape {
                descent: Some(k),
                shape: Partition { parts },
            })
        }
        _ => None,
    }
}
