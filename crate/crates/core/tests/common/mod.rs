//! Reference computations that share no code with the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::ToPrimitive;
use schubert_lab::poly::LaurentPolynomial;

pub type Poly = BTreeMap<Vec<i64>, i64>;

pub fn add_term(p: &mut Poly, e: Vec<i64>, c: i64) {
    let slot = p.entry(e.clone()).or_insert(0);
    *slot += c;
    if *slot == 0 {
        p.remove(&e);
    }
}

pub fn from_lib(p: &LaurentPolynomial) -> Poly {
    p.terms()
        .iter()
        .map(|(e, c)| (e.clone(), c.to_i64().expect("small coefficient")))
        .collect()
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_term(&mut out, ea.iter().zip(eb).map(|(x, y)| x + y).collect(), ca * cb);
        }
    }
    out
}

pub fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        add_term(&mut out, e.clone(), -c);
    }
    out
}

pub fn swap(p: &Poly, i: usize) -> Poly {
    p.iter()
        .map(|(e, c)| {
            let mut e = e.clone();
            e.swap(i - 1, i);
            (e, *c)
        })
        .collect()
}

/// `π_i` term by term: `x_i^a x_{i+1}^b` goes to the complete homogeneous
/// sum between the two exponents, negated when `a < b - 1`.
pub fn demazure(p: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p {
        let (a, b) = (e[i - 1], e[i]);
        let mut put = |t: i64, sign: i64| {
            let mut f = e.clone();
            f[i - 1] = t;
            f[i] = a + b - t;
            add_term(&mut out, f, sign * c);
        };
        if a >= b {
            for t in b..=a {
                put(t, 1);
            }
        } else {
            for t in a + 1..b {
                put(t, -1);
            }
        }
    }
    out
}

/// Schubert polynomials of every permutation of size `n`, summed over
/// reduced pipe dreams in the staircase `i + j <= n`.
pub fn schubert_table(n: usize) -> HashMap<Vec<usize>, Poly> {
    let mut cells = Vec::new();
    for i in 1..n {
        for j in (1..=n - i).rev() {
            cells.push((i, j));
        }
    }
    let mut table: HashMap<Vec<usize>, Poly> = HashMap::new();
    for mask in 0u64..1 << cells.len() {
        let mut w: Vec<usize> = (1..=n).collect();
        let mut exp = vec![0i64; n];
        let mut crosses = 0;
        // rows top to bottom, each row right to left
        for (k, &(i, j)) in cells.iter().enumerate() {
            if mask >> k & 1 == 1 {
                let s = i + j - 1;
                w.swap(s - 1, s);
                exp[i - 1] += 1;
                crosses += 1;
            }
        }
        let inversions = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| w[a] > w[b])
            .count();
        if inversions == crosses {
            add_term(table.entry(w).or_default(), exp, 1);
        }
    }
    table
}

/// Gelfand-Tsetlin patterns with first row `lambda`, flattened row by row.
pub fn gt_patterns(lambda: &[i64]) -> BTreeSet<Vec<i64>> {
    fn grow(prev: &[i64], acc: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
        if prev.len() <= 1 {
            out.insert(acc.clone());
            return;
        }
        let m = prev.len() - 1;
        let mut row = vec![0i64; m];
        fn fill(t: usize, prev: &[i64], row: &mut Vec<i64>, acc: &mut Vec<i64>, out: &mut BTreeSet<Vec<i64>>) {
            if t == row.len() {
                let start = acc.len();
                acc.extend_from_slice(row);
                let next = row.clone();
                grow(&next, acc, out);
                acc.truncate(start);
                return;
            }
            for v in prev[t + 1]..=prev[t] {
                row[t] = v;
                fill(t + 1, prev, row, acc, out);
            }
        }
        fill(0, prev, &mut row, acc, out);
    }
    let mut out = BTreeSet::new();
    let mut acc = lambda.to_vec();
    grow(lambda, &mut acc, &mut out);
    out
}

/// Row-major position of `x_{ij}` in a triangle of size `n`.
pub fn index(n: usize, i: usize, j: usize) -> usize {
    (1..i).map(|r| n - r + 1).sum::<usize>() + (j - i)
}

/// Places a size-`k` pattern in the size-`n` triangle by `y_{ij} ↦ x_{i, j+n-k}`.
pub fn embed(k: usize, n: usize, y: &[i64]) -> Vec<i64> {
    let mut x = vec![0; n * (n + 1) / 2];
    for i in 1..=k {
        for j in i..=k {
            x[index(n, i, j + n - k)] = y[index(k, i, j)];
        }
    }
    x
}

pub fn sumset(a: &BTreeSet<Vec<i64>>, b: &BTreeSet<Vec<i64>>) -> BTreeSet<Vec<i64>> {
    a.iter()
        .flat_map(|p| b.iter().map(move |q| p.iter().zip(q).map(|(x, y)| x + y).collect()))
        .collect()
}

/// Lattice points of `GT(λ^(1)) + … + GT(λ^(n))`, summands embedded.
pub fn minkowski_sum(shapes: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let n = shapes.len();
    let mut acc: BTreeSet<Vec<i64>> = [vec![0; n * (n + 1) / 2]].into();
    for (k0, shape) in shapes.iter().enumerate() {
        let k = k0 + 1;
        let embedded = gt_patterns(shape).iter().map(|y| embed(k, n, y)).collect();
        acc = sumset(&acc, &embedded);
    }
    acc
}

/// Exponent of `x_i` is the `i`-th row sum minus the next one.
pub fn specialize(n: usize, x: &[i64]) -> Vec<i64> {
    let rows: Vec<i64> = (1..=n)
        .map(|i| (i..=n).map(|j| x[index(n, i, j)]).sum())
        .collect();
    (0..n)
        .map(|i| rows[i] - rows.get(i + 1).copied().unwrap_or(0))
        .collect()
}

pub fn specialized_sum<'a>(n: usize, points: impl IntoIterator<Item = &'a Vec<i64>>) -> Poly {
    let mut p = Poly::new();
    for x in points {
        add_term(&mut p, specialize(n, x), 1);
    }
    p
}

/// Weakly decreasing vectors of length `len` with entries in `0..=max`.
pub fn partitions(len: usize, max: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (0..=max).rev() {
        for mut rest in partitions(len - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Permutations containing neither 3142 nor 4132, by brute force over
/// position quadruples.
pub fn column_convex(w: &[usize]) -> bool {
    let n = w.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let (p, q, r, s) = (w[a], w[b], w[c], w[d]);
                    if q < s && s < p && p < r {
                        return false;
                    }
                    if q < s && s < r && r < p {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n);
            out.push(q);
        }
    }
    out.sort();
    out
}
