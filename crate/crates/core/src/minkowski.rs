//! The polytope `P_D = GT(λ^(1)) + … + GT(λ^(n))` of a column-convex diagram.
//!
//! A summand of size `k` sits in the triangle of size `n` through
//! `y_{ij} ↦ x_{i, j+n-k}`. The inequality description uses one constraint per
//! strictly interleaved sequence `i_k < … < i_1 < j_1 < … < j_k`.

use std::time::Instant;

use serde::Serialize;

use crate::combinatorics::{
    find_forbidden_pattern, par_family, reduce_diagram, rothe_diagram, Diagram, ParFamily,
    Permutation,
};
use crate::error::{Error, Result};
use crate::gt::{gt_points, integer_point_transform, specialize};
use crate::poly::{demazure, flagged_character, LaurentPolynomial, SchubertCache};
use crate::triangle::{
    Constraint, Coord, InequalitySystem, LatticePointSet, Sense, TrianglePoint,
};

/// `y_{ij} ↦ x_{i, j+n-k}`; every other coordinate is zero.
pub fn embed(n: usize, p: &TrianglePoint) -> Result<TrianglePoint> {
    let k = p.size();
    if k > n {
        return Err(Error::SizeMismatch { expected: n, got: k });
    }
    let mut out = TrianglePoint::zero(n);
    for i in 1..=k {
        for j in i..=k {
            out.set(i, j + n - k, p.get(i, j));
        }
    }
    Ok(out)
}

pub fn embed_set(n: usize, set: &LatticePointSet) -> Result<LatticePointSet> {
    LatticePointSet::from_points(n, set.iter().map(|p| embed(n, p)).collect::<Result<Vec<_>>>()?)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ZigzagSequence {
    /// `i_1 > i_2 > … > i_k`.
    lower: Vec<usize>,
    /// `j_1 < j_2 < … < j_k`.
    upper: Vec<usize>,
}

impl ZigzagSequence {
    pub fn new(lower: Vec<usize>, upper: Vec<usize>, n: usize) -> Result<Self> {
        let k = lower.len();
        let ok = k >= 1
            && upper.len() == k
            && lower.windows(2).all(|w| w[0] > w[1])
            && upper.windows(2).all(|w| w[0] < w[1])
            && lower[0] < upper[0]
            && upper[k - 1] <= n;
        if !ok {
            return Err(Error::InvalidParameters {
                reason: format!("not an interleaved sequence: i={lower:?} j={upper:?}"),
            });
        }
        Ok(ZigzagSequence { lower, upper })
    }

    pub fn k(&self) -> usize {
        self.lower.len()
    }

    /// `i_s`, 1-based.
    pub fn i(&self, s: usize) -> usize {
        self.lower[s - 1]
    }

    /// `j_s`, 1-based.
    pub fn j(&self, s: usize) -> usize {
        self.upper[s - 1]
    }

    pub fn is_equality(&self) -> bool {
        self.k() == 1 && self.j(1) == self.i(1) + 1
    }

    pub fn constraint(&self, fam: &ParFamily) -> Constraint {
        let mut c = zigzag_constraint(fam, &self.lower, &self.upper);
        if self.is_equality() {
            c.sense = Sense::Eq;
        }
        c
    }
}

/// `Σ_s x_{j_s-i_s, j_s} - Σ_s x_{j_{s+1}-i_s, j_{s+1}} >= Σ_{s=0}^{i_k} λ^{(n-s)}_{j_1-s}`
/// for any (not necessarily strict) sequence.
pub(crate) fn zigzag_constraint(fam: &ParFamily, lower: &[usize], upper: &[usize]) -> Constraint {
    let n = fam.n();
    let k = lower.len();
    let plus = (0..k).map(|s| (Coord::new(upper[s] - lower[s], upper[s]), 1));
    let minus = (0..k - 1).map(|s| (Coord::new(upper[s + 1] - lower[s], upper[s + 1]), -1));
    let rhs = (0..=lower[k - 1])
        .map(|s| fam.part(n - s, upper[0] - s))
        .sum();
    Constraint::ge(plus.chain(minus), rhs)
}

/// Every strictly interleaved sequence in `{0, …, n}`, ordered by length then
/// lexicographically.
pub fn zigzag_sequences(n: usize) -> Vec<ZigzagSequence> {
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << (n + 1)) {
        let values: Vec<usize> = (0..=n).filter(|&v| mask >> v & 1 == 1).collect();
        if !values.len().is_multiple_of(2) {
            continue;
        }
        let k = values.len() / 2;
        let lower: Vec<usize> = values[..k].iter().rev().copied().collect();
        let upper = values[k..].to_vec();
        out.push(ZigzagSequence { lower, upper });
    }
    out.sort_by(|a, b| (a.k(), &a.lower, &a.upper).cmp(&(b.k(), &b.lower, &b.upper)));
    out
}

/// The inequality description of `P_D` from its family.
pub fn q_system(fam: &ParFamily) -> InequalitySystem {
    let n = fam.n();
    let mut sys = InequalitySystem::new(n);
    for i in 2..=n {
        for j in i..=n {
            sys.push(Constraint::ge(
                [(Coord::new(i - 1, j - 1), 1), (Coord::new(i, j), -1)],
                0,
            ))
            .expect("in range");
        }
    }
    for seq in zigzag_sequences(n) {
        sys.push(seq.constraint(fam)).expect("in range");
    }
    sys
}

/// Lattice sumset of several point sets in the same triangle.
pub fn sumset(sets: &[LatticePointSet]) -> Result<LatticePointSet> {
    let Some(first) = sets.first() else {
        return Err(Error::InvalidParameters {
            reason: "sumset of no sets".into(),
        });
    };
    let mut acc = first.clone();
    for s in &sets[1..] {
        if s.size() != acc.size() {
            return Err(Error::SizeMismatch {
                expected: acc.size(),
                got: s.size(),
            });
        }
        acc = acc.sumset(s);
    }
    Ok(acc)
}

/// `GT(λ^(k))` lattice sets, embedded in the size-`n` triangle.
pub fn embedded_summands(fam: &ParFamily) -> Vec<LatticePointSet> {
    let n = fam.n();
    fam.shapes()
        .iter()
        .map(|shape| embed_set(n, &gt_points(shape)).expect("k <= n"))
        .collect()
}

/// Lattice points of `P_D` computed directly as a sumset of the summands.
pub fn minkowski_points(fam: &ParFamily) -> LatticePointSet {
    if fam.n() == 0 {
        return LatticePointSet::singleton(TrianglePoint::zero(0));
    }
    sumset(&embedded_summands(fam)).expect("summands share a triangle")
}

fn has_first_row_boxes(fam: &ParFamily) -> bool {
    (1..=fam.n()).any(|k| fam.part(k, k) != 0)
}

/// `P_D ∩ {x_{1n} = … = x_{mn} = 0}`: the constraints of [`q_system`] not
/// touching those coordinates, plus the coordinates pinned to zero.
pub fn slice_system_for_family(fam: &ParFamily, m: usize) -> Result<InequalitySystem> {
    let n = fam.n();
    if has_first_row_boxes(fam) {
        return Err(Error::FirstRowBoxes);
    }
    if m < 1 || m > n {
        return Err(Error::InvalidParameters {
            reason: format!("slice index {m} outside 1..={n}"),
        });
    }
    let pinned: Vec<Coord> = (1..=m).map(|i| Coord::new(i, n)).collect();
    let mut sys = q_system(fam);
    sys.retain(|c| !pinned.iter().any(|&p| c.involves(p)));
    for p in pinned {
        sys.push(Constraint::eq([(p, 1)], 0))?;
    }
    Ok(sys)
}

pub fn slice_system(d: &Diagram, m: usize) -> Result<InequalitySystem> {
    let fam = par_family(d)?;
    slice_system_for_family(&fam, m)
}

type Coupled = (Vec<(usize, i64)>, Sense, i64);

/// The coordinate box `Π_j [μ_j, ν_j]`, `j = row..=n`, of one fiber.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parallelepiped {
    pub row: usize,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

impl Parallelepiped {
    pub fn mu(&self, j: usize) -> i64 {
        self.lower[j - self.row]
    }

    pub fn nu(&self, j: usize) -> i64 {
        self.upper[j - self.row]
    }

    pub fn count(&self) -> u64 {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(a, b)| (b - a + 1) as u64)
            .product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fiber {
    Empty,
    Box(Parallelepiped),
}

impl Fiber {
    pub fn into_box(self) -> Option<Parallelepiped> {
        match self {
            Fiber::Box(b) => Some(b),
            Fiber::Empty => None,
        }
    }
}

/// Fiber of the projection forgetting row `row`, over the values `fixed`
/// takes on every other row (its row-`row` entries are ignored).
///
/// The lattice points of the fiber must form a coordinate box; anything else
/// is reported as [`Error::FiberNotBox`].
pub fn fiber_box(sys: &InequalitySystem, row: usize, fixed: &TrianglePoint) -> Result<Fiber> {
    let n = sys.size();
    if fixed.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: fixed.size(),
        });
    }
    if row < 1 || row > n {
        return Err(Error::IncompleteFiber { row });
    }
    let width = n + 1 - row;
    let mut lo = vec![i64::MIN; width];
    let mut hi = vec![i64::MAX; width];
    // (row-k coefficients, sense, adjusted rhs) of multi-variable constraints
    let mut coupled: Vec<Coupled> = Vec::new();
    for c in sys.constraints() {
        let mut free = Vec::new();
        let mut fixed_part = 0;
        for &(t, k) in &c.terms {
            if t.row == row {
                free.push((t.col - row, k));
            } else {
                fixed_part += k * fixed.get(t.row, t.col);
            }
        }
        let target = c.rhs - fixed_part;
        match free.as_slice() {
            [] => {
                let ok = match c.sense {
                    Sense::Eq => target == 0,
                    Sense::Ge => 0 >= target,
                };
                if !ok {
                    return Ok(Fiber::Empty);
                }
            }
            &[(idx, k)] => {
                use num_integer::Integer;
                match c.sense {
                    Sense::Eq => {
                        if target % k != 0 {
                            return Ok(Fiber::Empty);
                        }
                        lo[idx] = lo[idx].max(target / k);
                        hi[idx] = hi[idx].min(target / k);
                    }
                    Sense::Ge if k > 0 => lo[idx] = lo[idx].max(Integer::div_ceil(&target, &k)),
                    Sense::Ge => hi[idx] = hi[idx].min(Integer::div_floor(&target, &k)),
                }
            }
            _ => coupled.push((free, c.sense, target)),
        }
    }
    for idx in 0..width {
        let coord = Coord::new(row, row + idx);
        if lo[idx] == i64::MIN {
            return Err(Error::Unbounded { coord, side: "lower" });
        }
        if hi[idx] == i64::MAX {
            return Err(Error::Unbounded { coord, side: "upper" });
        }
    }
    if lo.iter().zip(&hi).any(|(a, b)| a > b) {
        return Ok(Fiber::Empty);
    }
    let full = Parallelepiped {
        row,
        lower: lo.clone(),
        upper: hi.clone(),
    };
    if coupled.is_empty() {
        return Ok(Fiber::Box(full));
    }
    // Walk the box and keep the points meeting the coupled constraints.
    let mut kept = 0u64;
    let mut bb_lo = vec![i64::MAX; width];
    let mut bb_hi = vec![i64::MIN; width];
    let mut cur = lo.clone();
    loop {
        let ok = coupled.iter().all(|(terms, sense, target)| {
            let v: i64 = terms.iter().map(|&(idx, k)| k * cur[idx]).sum();
            match sense {
                Sense::Eq => v == *target,
                Sense::Ge => v >= *target,
            }
        });
        if ok {
            kept += 1;
            for idx in 0..width {
                bb_lo[idx] = bb_lo[idx].min(cur[idx]);
                bb_hi[idx] = bb_hi[idx].max(cur[idx]);
            }
        }
        let mut idx = 0;
        loop {
            if idx == width {
                let fiber = if kept == 0 {
                    Fiber::Empty
                } else {
                    let bb = Parallelepiped {
                        row,
                        lower: bb_lo,
                        upper: bb_hi,
                    };
                    if bb.count() != kept {
                        return Err(Error::FiberNotBox { row });
                    }
                    Fiber::Box(bb)
                };
                return Ok(fiber);
            }
            if cur[idx] < hi[idx] {
                cur[idx] += 1;
                break;
            }
            cur[idx] = lo[idx];
            idx += 1;
        }
    }
}

/// `s_P`: the specialized integer point transform of a lattice set.
pub fn specialized_transform(points: &LatticePointSet) -> LaurentPolynomial {
    specialize(&integer_point_transform(points)).expect("lattice sets live in a triangle")
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Theorem1Report {
    pub w: Permutation,
    pub column_convex: bool,
    pub lattice_count: usize,
    pub equal_schubert: bool,
    pub equal_character: bool,
    #[serde(skip)]
    pub polytope: LaurentPolynomial,
    #[serde(skip)]
    pub schubert: LaurentPolynomial,
    #[serde(skip)]
    pub character: LaurentPolynomial,
    #[serde(skip)]
    pub millis: u128,
}

impl Theorem1Report {
    pub fn ok(&self) -> bool {
        self.equal_schubert && self.equal_character
    }
}

pub fn verify_theorem1(w: &Permutation) -> Result<Theorem1Report> {
    verify_theorem1_with(w, &mut SchubertCache::new())
}

/// Enumerates `P_{D(w)}` from its inequalities and compares the specialized
/// transform with both `S_w` and the flagged Schur character of `D(w)`.
pub fn verify_theorem1_with(w: &Permutation, cache: &mut SchubertCache) -> Result<Theorem1Report> {
    let start = Instant::now();
    if let Some(p) = find_forbidden_pattern(w) {
        return Err(p.into());
    }
    let d = rothe_diagram(w);
    let fam = par_family(&d)?;
    let points = q_system(&fam).enumerate()?;
    let polytope = specialized_transform(&points);
    let schubert = cache.get(w);
    let character = flagged_character(&d)?;
    Ok(Theorem1Report {
        w: w.clone(),
        column_convex: true,
        lattice_count: points.len(),
        equal_schubert: polytope == schubert,
        equal_character: polytope == character,
        polytope,
        schubert,
        character,
        millis: start.elapsed().as_millis(),
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DemazureChainReport {
    pub family: ParFamily,
    /// `s_{P^(m-1)} = π_{m-1} s_{P^(m)}` for `m = 2..=n`.
    pub steps: Vec<bool>,
    /// `s_{P^(n)}` equals the character of the shifted diagram.
    pub top_matches: bool,
    /// `s_{P^(1)}` equals the character of the diagram.
    pub bottom_matches: bool,
    pub fibers_checked: usize,
    pub fiber_failures: Vec<String>,
}

impl DemazureChainReport {
    pub fn ok(&self) -> bool {
        self.steps.iter().all(|&b| b)
            && self.top_matches
            && self.bottom_matches
            && self.fiber_failures.is_empty()
    }
}

/// Walks the slices `P^(n) ⊂ … ⊂ P^(1) = P_D` of a family without first-row
/// boxes, checking each Demazure step and the shape of every row-`m` fiber.
pub fn check_demazure_chain(fam: &ParFamily) -> Result<DemazureChainReport> {
    let n = fam.n();
    if has_first_row_boxes(fam) {
        return Err(Error::FirstRowBoxes);
    }
    let systems: Vec<InequalitySystem> = (1..=n)
        .map(|m| slice_system_for_family(fam, m))
        .collect::<Result<_>>()?;
    let points: Vec<LatticePointSet> = systems
        .iter()
        .map(|s| s.enumerate())
        .collect::<Result<_>>()?;
    let chars: Vec<LaurentPolynomial> = points.iter().map(specialized_transform).collect();
    // index m-1 holds slice m
    let steps = (2..=n)
        .map(|m| demazure(&chars[m - 1], m - 1) == chars[m - 2])
        .collect();

    let d = fam.to_diagram();
    let tilde = reduce_diagram(&d)?.tilde;
    let top_matches = flagged_character(&tilde)?.with_arity(n) == chars[n - 1];
    let bottom_matches = flagged_character(&d)? == chars[0];

    let mut fibers_checked = 0;
    let mut fiber_failures = Vec::new();
    for m in 2..=n {
        let (wide, narrow) = (&systems[m - 2], &systems[m - 1]);
        let mut seen = std::collections::BTreeSet::new();
        for p in &points[m - 2] {
            let mut base = p.clone();
            for j in m..=n {
                base.set(m, j, 0);
            }
            if !seen.insert(base.clone()) {
                continue;
            }
            fibers_checked += 1;
            let mut fail = |why: String| fiber_failures.push(format!("m={m} over {:?}: {why}", base.entries()));
            let wide_box = match fiber_box(wide, m, &base)? {
                Fiber::Box(b) => b,
                Fiber::Empty => {
                    fail("empty fiber above a lattice point".into());
                    continue;
                }
            };
            let expected_nu = (m - 1..=n).map(|j| base.get(m - 1, j)).sum::<i64>()
                + (m + 1..=n).map(|j| base.get(m + 1, j)).sum::<i64>()
                - (m..n).map(|j| wide_box.mu(j) + wide_box.nu(j)).sum::<i64>();
            if wide_box.mu(n) != 0 {
                fail(format!("μ_n = {}", wide_box.mu(n)));
            }
            if wide_box.nu(n) != expected_nu {
                fail(format!("ν_n = {} but formula gives {expected_nu}", wide_box.nu(n)));
            }
            match fiber_box(narrow, m, &base)? {
                Fiber::Box(b) => {
                    let mut want = wide_box.clone();
                    *want.lower.last_mut().unwrap() = 0;
                    *want.upper.last_mut().unwrap() = 0;
                    if b != want {
                        fail(format!("narrow fiber {b:?} != {want:?}"));
                    }
                }
                Fiber::Empty => fail("narrow fiber empty".into()),
            }
        }
    }
    Ok(DemazureChainReport {
        family: fam.clone(),
        steps,
        top_matches,
        bottom_matches,
        fibers_checked,
        fiber_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Partition;
    use crate::gt::gt_system;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn fam(shapes: &[&str]) -> ParFamily {
        ParFamily::new(shapes.iter().map(|s| part(s)).collect()).unwrap()
    }

    fn x(i: usize, j: usize) -> Coord {
        Coord::new(i, j)
    }

    #[test]
    fn embedding() {
        let p = TrianglePoint::from_entries(2, vec![3, 1, 2]).unwrap();
        assert_eq!(embed(2, &p).unwrap(), p);
        let single = TrianglePoint::from_entries(1, vec![5]).unwrap();
        let e = embed(3, &single).unwrap();
        assert_eq!(e.get(1, 3), 5);
        assert_eq!(e.entries().iter().sum::<i64>(), 5);
        assert_eq!(embed(4, &TrianglePoint::zero(2)).unwrap(), TrianglePoint::zero(4));
        assert!(embed(1, &p).is_err());
    }

    #[test]
    fn zigzag_listing() {
        let one = zigzag_sequences(1);
        assert_eq!(one.len(), 1);
        assert_eq!((one[0].i(1), one[0].j(1)), (0, 1));
        for n in 1..=6 {
            let all = zigzag_sequences(n);
            assert_eq!(all.len(), (1 << n) - 1);
            for s in &all {
                assert!(ZigzagSequence::new(s.lower.clone(), s.upper.clone(), n).is_ok());
            }
        }
        assert!(ZigzagSequence::new(vec![1, 1], vec![2, 3], 3).is_err());
    }

    #[test]
    fn three_row_system_contains_displayed_constraints() {
        let f = fam(&["5", "7,2", "11,3,1"]);
        let sys = q_system(&f);
        let l = |i: usize, j: usize| f.part(i, j);
        let expected = [
            Constraint::ge([(x(1, 1), 1), (x(2, 2), -1)], 0),
            Constraint::ge([(x(2, 2), 1), (x(3, 3), -1)], 0),
            Constraint::ge([(x(1, 2), 1), (x(2, 3), -1)], 0),
            Constraint::eq([(x(1, 1), 1)], l(3, 1)),
            Constraint::eq([(x(1, 2), 1)], l(2, 1) + l(3, 2)),
            Constraint::eq([(x(1, 3), 1)], l(1, 1) + l(2, 2) + l(3, 3)),
            Constraint::ge([(x(2, 2), 1)], l(3, 2)),
            Constraint::ge([(x(2, 3), 1)], l(2, 2) + l(3, 3)),
            Constraint::ge([(x(3, 3), 1)], l(3, 3)),
            Constraint::ge([(x(1, 2), 1), (x(2, 3), -1), (x(3, 3), 1)], l(3, 2)),
        ];
        for c in &expected {
            assert!(sys.has_constraint(c), "missing {c}");
        }
        assert_eq!(sys.constraints().len(), expected.len());
    }

    #[test]
    fn zero_family_is_origin() {
        for n in 1..=4 {
            let pts = q_system(&ParFamily::zero(n)).enumerate().unwrap();
            assert_eq!(pts.len(), 1);
            assert_eq!(pts.iter().next().unwrap(), &TrianglePoint::zero(n));
        }
    }

    #[test]
    fn inequalities_match_sumset_small() {
        for f in ParFamily::all(3, 2) {
            let q = q_system(&f).enumerate().unwrap();
            assert_eq!(q, minkowski_points(&f), "{f}");
        }
    }

    #[test]
    fn sumset_laws() {
        let f = fam(&["1", "1,0", "2,1,0"]);
        let sets = embedded_summands(&f);
        let zero = LatticePointSet::singleton(TrianglePoint::zero(3));
        assert_eq!(sumset(&[zero, sets[2].clone()]).unwrap(), sets[2]);
        let abc = sumset(&sets).unwrap();
        let cba = sumset(&[sets[2].clone(), sets[1].clone(), sets[0].clone()]).unwrap();
        assert_eq!(abc, cba);
        let ab_c = sets[0].sumset(&sets[1]).sumset(&sets[2]);
        let a_bc = sets[0].sumset(&sets[1].sumset(&sets[2]));
        assert_eq!(ab_c, a_bc);
        assert!(sumset(&[]).is_err());
    }

    fn reduce_weak(mut lower: Vec<usize>, mut upper: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
        loop {
            let k = lower.len();
            if let Some(s) = (0..k - 1).find(|&s| lower[s] == lower[s + 1]) {
                lower.remove(s + 1);
                upper.remove(s + 1);
            } else if let Some(s) = (0..k - 1).find(|&s| upper[s] == upper[s + 1]) {
                lower.remove(s);
                upper.remove(s);
            } else {
                return (lower, upper);
            }
        }
    }

    fn weak_sequences(n: usize, k: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
        fn nondecreasing(len: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
            if len == 0 {
                return vec![vec![]];
            }
            (lo..=hi)
                .flat_map(|v| {
                    nondecreasing(len - 1, v, hi).into_iter().map(move |mut rest| {
                        rest.insert(0, v);
                        rest
                    })
                })
                .collect()
        }
        let mut out = Vec::new();
        for lows in nondecreasing(k, 0, n) {
            // lows = i_k <= … <= i_1
            let i1 = lows[k - 1];
            for ups in nondecreasing(k, i1 + 1, n) {
                let lower: Vec<usize> = lows.iter().rev().copied().collect();
                out.push((lower, ups));
            }
        }
        out
    }

    #[test]
    fn weak_sequences_reduce_to_strict_ones() {
        let f = fam(&["2", "3,1", "3,2,1", "4,2,2,0"]);
        for k in 1..=3 {
            for (lower, upper) in weak_sequences(4, k) {
                let weak = zigzag_constraint(&f, &lower, &upper);
                let (rl, ru) = reduce_weak(lower.clone(), upper.clone());
                let strict = zigzag_constraint(&f, &rl, &ru);
                assert_eq!(weak, strict, "i={lower:?} j={upper:?}");
            }
        }
    }

    #[test]
    fn weak_inequalities_do_not_change_lattice_set() {
        let f = fam(&["1", "2,0", "2,1,0", "2,1,1,0"]);
        let base = q_system(&f);
        let mut extended = base.clone();
        for k in 1..=3 {
            for (lower, upper) in weak_sequences(4, k) {
                extended.push(zigzag_constraint(&f, &lower, &upper)).unwrap();
            }
        }
        assert_eq!(base.enumerate().unwrap(), extended.enumerate().unwrap());
    }

    #[test]
    fn gt_fibers_are_boxes() {
        let lambda = part("3,2,1,0");
        let sys = gt_system(&lambda);
        for p in &gt_points(&lambda) {
            for row in 1..=4 {
                let b = fiber_box(&sys, row, p).unwrap().into_box().unwrap();
                for j in row..=4 {
                    assert!(b.mu(j) <= p.get(row, j) && p.get(row, j) <= b.nu(j));
                }
            }
        }
    }

    #[test]
    fn fiber_probes() {
        // x11 = 1, x12 = 1, x22 + ... with a coupled cut inside row 2
        let mut sys = InequalitySystem::new(2);
        sys.push(Constraint::eq([(x(1, 1), 1)], 1)).unwrap();
        sys.push(Constraint::eq([(x(1, 2), 1)], 1)).unwrap();
        sys.push(Constraint::ge([(x(2, 2), 1)], 0)).unwrap();
        sys.push(Constraint::ge([(x(2, 2), -1)], -1)).unwrap();
        let base = TrianglePoint::from_entries(2, vec![1, 1, 0]).unwrap();
        assert!(matches!(fiber_box(&sys, 2, &base).unwrap(), Fiber::Box(_)));
        let off = TrianglePoint::from_entries(2, vec![0, 1, 0]).unwrap();
        assert_eq!(fiber_box(&sys, 2, &off).unwrap(), Fiber::Empty);

        // row 1 of a 2-triangle: x11 + x12 <= 1 over [0,1]^2 is not a box
        let mut tri = InequalitySystem::new(2);
        for c in [x(1, 1), x(1, 2)] {
            tri.push(Constraint::ge([(c, 1)], 0)).unwrap();
            tri.push(Constraint::ge([(c, -1)], -1)).unwrap();
        }
        tri.push(Constraint::ge([(x(1, 1), -1), (x(1, 2), -1)], -1)).unwrap();
        let z = TrianglePoint::zero(2);
        assert_eq!(fiber_box(&tri, 1, &z), Err(Error::FiberNotBox { row: 1 }));

        // x11 + x12 >= 2 over [0,1]^2 cuts down to the single point (1,1)
        let mut corner = tri.clone();
        corner.retain(|c| c.terms.len() == 1);
        corner.push(Constraint::ge([(x(1, 1), 1), (x(1, 2), 1)], 2)).unwrap();
        let b = fiber_box(&corner, 1, &z).unwrap().into_box().unwrap();
        assert_eq!((b.lower.clone(), b.upper.clone()), (vec![1, 1], vec![1, 1]));
    }

    #[test]
    fn slice_rejects_first_row_boxes() {
        let d = Diagram::new(3, [(1, 1), (2, 1)]).unwrap();
        assert_eq!(slice_system(&d, 1), Err(Error::FirstRowBoxes));
        let ok = Diagram::new(3, [(2, 1)]).unwrap();
        assert!(slice_system(&ok, 4).is_err());
        assert!(slice_system(&ok, 2).is_ok());
    }

    #[test]
    fn theorem1_identity_and_rejection() {
        let r = verify_theorem1(&Permutation::identity(4)).unwrap();
        assert!(r.ok());
        assert_eq!(r.lattice_count, 1);
        assert_eq!(r.polytope, LaurentPolynomial::one(4));
        assert_eq!(
            verify_theorem1(&"3142".parse().unwrap()).unwrap_err(),
            Error::PatternContained {
                pattern: "3142",
                positions: [1, 2, 3, 4]
            }
        );
    }

    #[test]
    fn demazure_chain_small() {
        let f = fam(&["0", "1,0", "2,1,0"]);
        let r = check_demazure_chain(&f).unwrap();
        assert!(r.ok(), "{r:?}");
        assert!(r.fibers_checked > 0);
    }
}
