//! Gelfand-Tsetlin polytopes.
//!
//! `GT(λ)` is the set of triangular arrays with first row `x_{1j} = λ_j`,
//! interlacing `x_{i-1,j-1} >= x_{ij} >= x_{i-1,j}` and nonnegative entries.

use crate::combinatorics::Partition;
use crate::error::{Error, Result};
use crate::poly::LaurentPolynomial;
use crate::triangle::{
    coords, flat_index, triangle_len, triangle_size, Constraint, Coord, InequalitySystem,
    LatticePointSet, TrianglePoint,
};

pub fn gt_system(lambda: &Partition) -> InequalitySystem {
    let n = lambda.len();
    let mut sys = InequalitySystem::new(n);
    let x = Coord::new;
    let mut push = |c| sys.push(c).expect("coordinates are in range");
    for j in 1..=n {
        push(Constraint::eq([(x(1, j), 1)], lambda.part(j)));
    }
    for i in 2..=n {
        for j in i..=n {
            push(Constraint::ge([(x(i - 1, j - 1), 1), (x(i, j), -1)], 0));
            push(Constraint::ge([(x(i, j), 1), (x(i - 1, j), -1)], 0));
        }
    }
    for c in coords(n) {
        push(Constraint::ge([(c, 1)], 0));
    }
    sys
}

/// Lattice points of `GT(λ)`.
pub fn gt_points(lambda: &Partition) -> LatticePointSet {
    gt_system(lambda)
        .enumerate()
        .expect("GT systems are bounded")
}

/// `σ_P = Σ_{c ∈ P ∩ Z} Π x_{ij}^{c_{ij}}`, variables in row-major order.
pub fn integer_point_transform(points: &LatticePointSet) -> LaurentPolynomial {
    let mut sigma = LaurentPolynomial::zero(triangle_len(points.size()));
    for p in points {
        sigma.add_term(p.entries().to_vec(), 1.into());
    }
    sigma
}

/// Sends `x_{1j} ↦ x_1` and `x_{ij} ↦ x_{i-1}^{-1} x_i`: the exponent of `x_i`
/// becomes `C_i - C_{i+1}` where `C_i` is the `i`-th row sum.
pub fn specialize(sigma: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    let n = triangle_size(sigma.arity())?;
    let rows: Vec<Vec<usize>> = (1..=n)
        .map(|i| (i..=n).map(|j| flat_index(n, Coord::new(i, j))).collect())
        .collect();
    Ok(sigma.map_exponents(n, |e| {
        let sums: Vec<i64> = rows
            .iter()
            .map(|r| r.iter().map(|&k| e[k]).sum())
            .collect();
        (0..n)
            .map(|i| sums[i] - sums.get(i + 1).copied().unwrap_or(0))
            .collect()
    }))
}

/// `wt_i = Σ_{j>=i} x_{ij} - Σ_{j>i} x_{i+1,j}`.
pub fn weight(p: &TrianglePoint) -> Vec<i64> {
    let n = p.size();
    (1..=n)
        .map(|i| {
            let upper: i64 = (i..=n).map(|j| p.get(i, j)).sum();
            let lower: i64 = (i + 1..=n).map(|j| p.get(i + 1, j)).sum();
            upper - lower
        })
        .collect()
}

/// `s_λ(x_1, …, x_n) = Σ_{P ∈ GT(λ)} x^{wt(P)}`.
pub fn schur(lambda: &Partition) -> LaurentPolynomial {
    let mut s = LaurentPolynomial::zero(lambda.len());
    for p in &gt_points(lambda) {
        s.add_term(weight(p), 1.into());
    }
    s
}

/// Lattice form of `GT(λ) = Σ_k (λ_k - λ_{k+1}) GT(1^k 0^{n-k})`.
pub fn check_gt_minkowski(lambda: &Partition) -> bool {
    let n = lambda.len();
    let mut acc = LatticePointSet::singleton(TrianglePoint::zero(n));
    for k in 1..=n {
        let copies = lambda.part(k) - lambda.part(k + 1);
        let unit = gt_points(&Partition::column(k, n));
        for _ in 0..copies {
            acc = acc.sumset(&unit);
        }
    }
    acc == gt_points(lambda)
}

/// Lattice form of `GT(λ) + GT(μ) = GT(λ + μ)`.
pub fn check_gt_additivity(lambda: &Partition, mu: &Partition) -> Result<bool> {
    if lambda.len() != mu.len() {
        return Err(Error::SizeMismatch {
            expected: lambda.len(),
            got: mu.len(),
        });
    }
    let sum = gt_points(lambda).sumset(&gt_points(mu));
    Ok(sum == gt_points(&lambda.add(mu)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn x(arity: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::variable(arity, i)
    }

    #[test]
    fn zero_partition_has_only_origin() {
        for n in 1..5 {
            let pts = gt_points(&Partition::zero(n));
            assert_eq!(pts.len(), 1);
            assert_eq!(pts.iter().next().unwrap(), &TrianglePoint::zero(n));
        }
    }

    #[test]
    fn small_counts() {
        let pts = gt_points(&part("1,0"));
        let listed: Vec<_> = pts.iter().map(|p| p.entries().to_vec()).collect();
        assert_eq!(listed, vec![vec![1, 0, 0], vec![1, 0, 1]]);
        assert_eq!(gt_points(&part("2,1,0")).len(), 8);
    }

    #[test]
    fn transform_of_small_sets() {
        assert!(integer_point_transform(&LatticePointSet::new(2)).is_zero());
        let origin = LatticePointSet::singleton(TrianglePoint::zero(2));
        assert_eq!(integer_point_transform(&origin), LaurentPolynomial::one(3));

        // x11 + x11·x22 in variables (x11, x12, x22)
        let sigma = integer_point_transform(&gt_points(&part("1,0")));
        let expected = &x(3, 1) + &LaurentPolynomial::monomial(vec![1, 0, 1], 1);
        assert_eq!(sigma, expected);
        assert_eq!(specialize(&sigma).unwrap(), &x(2, 1) + &x(2, 2));
    }

    #[test]
    fn specialize_constant() {
        assert_eq!(
            specialize(&LaurentPolynomial::one(6)).unwrap(),
            LaurentPolynomial::one(3)
        );
        assert!(specialize(&LaurentPolynomial::one(4)).is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&TrianglePoint::zero(3)), vec![0, 0, 0]);
        let pts: Vec<_> = gt_points(&part("1,0")).iter().map(weight).collect();
        assert_eq!(pts, vec![vec![1, 0], vec![0, 1]]);
        for p in &gt_points(&part("3,1,1,0")) {
            assert_eq!(weight(p).iter().sum::<i64>(), 5);
        }
    }

    #[test]
    fn schur_examples() {
        let s = schur(&part("1,0,0"));
        assert_eq!(s, &(&x(3, 1) + &x(3, 2)) + &x(3, 3));
        assert_eq!(schur(&Partition::zero(3)), LaurentPolynomial::one(3));
        let s21 = schur(&part("2,1"));
        let expected = &LaurentPolynomial::monomial(vec![2, 1], 1)
            + &LaurentPolynomial::monomial(vec![1, 2], 1);
        assert_eq!(s21, expected);
    }

    #[test]
    fn entries_stay_within_first_part() {
        let lambda = part("3,2,0,0");
        for p in &gt_points(&lambda) {
            assert!(p.entries().iter().all(|&v| (0..=3).contains(&v)));
        }
    }

    #[test]
    fn minkowski_identities() {
        assert!(check_gt_minkowski(&part("1,0,0")));
        assert!(check_gt_minkowski(&part("2,1,0")));
        assert!(check_gt_additivity(&part("1,0"), &Partition::zero(2)).unwrap());
        assert!(check_gt_additivity(&part("1,0"), &part("1,0")).unwrap());
        assert!(check_gt_additivity(&part("1,0"), &part("1,0,0")).is_err());
    }
}
