use super::LaurentPolynomial;

/// `∂_i f = (f - s_i f) / (x_i - x_{i+1})`.
///
/// Computed term by term: for `x_i^a x_{i+1}^b` the quotient is the
/// geometric sum `x_i^b x_{i+1}^b (x_i^{a-b} - x_{i+1}^{a-b}) / (x_i - x_{i+1})`,
/// negated when `a < b` and zero when `a = b`. Negative exponents are fine.
///
/// Panics unless `1 <= i < arity`.
pub fn divided_difference(f: &LaurentPolynomial, i: usize) -> LaurentPolynomial {
    assert!(
        i >= 1 && i < f.arity(),
        "∂_{i} undefined for arity {}",
        f.arity()
    );
    let (p, q) = (i - 1, i);
    let mut out = LaurentPolynomial::zero(f.arity());
    for (exp, c) in f.terms() {
        let (a, b) = (exp[p], exp[q]);
        if a == b {
            continue;
        }
        let (lo, hi, coeff) = if a > b {
            (b, a, c.clone())
        } else {
            (a, b, -c)
        };
        // x_i^{lo+t} x_{i+1}^{hi-1-t}, t = 0..hi-lo
        for t in 0..hi - lo {
            let mut e = exp.clone();
            e[p] = lo + t;
            e[q] = hi - 1 - t;
            out.add_term(e, coeff.clone());
        }
    }
    out
}

/// `π_i f = ∂_i(x_i f)`.
pub fn demazure(f: &LaurentPolynomial, i: usize) -> LaurentPolynomial {
    let mut shift = vec![0; f.arity()];
    shift[i - 1] = 1;
    divided_difference(&f.mul_monomial(&shift), i)
}

/// Applies a word of operators, rightmost first.
pub fn apply_word(
    f: &LaurentPolynomial,
    word: &[usize],
    op: fn(&LaurentPolynomial, usize) -> LaurentPolynomial,
) -> LaurentPolynomial {
    word.iter().rev().fold(f.clone(), |acc, &i| op(&acc, i))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn x(arity: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::variable(arity, i)
    }

    fn mono(exp: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::monomial(exp.to_vec(), 1)
    }

    /// Long division of `g` by `x_i - x_{i+1}`, peeling off the highest power
    /// of `x_i` each round. Returns `None` when the division is not exact.
    pub(crate) fn divide_by_difference(g: &LaurentPolynomial, i: usize) -> Option<LaurentPolynomial> {
        let p = i - 1;
        let divisor = &x(g.arity(), i) - &x(g.arity(), i + 1);
        let mut rem = g.clone();
        let mut quot = LaurentPolynomial::zero(g.arity());
        let floor = g.terms().keys().map(|e| e[p]).min().unwrap_or(0);
        while !rem.is_zero() {
            let top = rem.terms().keys().map(|e| e[p]).max().unwrap();
            if top < floor {
                return None;
            }
            let mut step = LaurentPolynomial::zero(g.arity());
            for (e, c) in rem.terms() {
                if e[p] == top {
                    let mut e2 = e.clone();
                    e2[p] -= 1;
                    step.add_term(e2, c.clone());
                }
            }
            rem = &rem - &(&step * &divisor);
            quot += &step;
        }
        Some(quot)
    }

    #[test]
    fn unit_examples() {
        assert_eq!(divided_difference(&x(2, 1), 1), LaurentPolynomial::one(2));
        assert_eq!(divided_difference(&mono(&[2, 1]), 1), mono(&[1, 1]));
        let sym = &(&x(3, 1) * &x(3, 2)) + &mono(&[0, 0, 4]);
        assert!(divided_difference(&sym, 1).is_zero());
    }

    #[test]
    fn demazure_examples() {
        assert_eq!(demazure(&LaurentPolynomial::one(2), 1), LaurentPolynomial::one(2));
        assert_eq!(demazure(&x(2, 1), 1), &x(2, 1) + &x(2, 2));
        // x_1 x_2 is symmetric, so ∂_1 kills it.
        assert!(demazure(&x(2, 2), 1).is_zero());
    }

    #[test]
    fn matches_explicit_division_on_examples() {
        let f = &(&mono(&[3, 0, 1]) - &mono(&[0, 2, 0])) + &mono(&[-2, 1, 5]);
        for i in 1..3 {
            let numer = &f - &f.swap_variables(i);
            assert_eq!(divide_by_difference(&numer, i).unwrap(), divided_difference(&f, i));
        }
    }

    #[test]
    fn division_oracle_rejects_inexact() {
        assert!(divide_by_difference(&x(2, 1), 1).is_none());
    }

    #[test]
    #[should_panic]
    fn index_out_of_range_panics() {
        divided_difference(&x(2, 1), 2);
    }

    fn small_poly(arity: usize) -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec(
            (prop::collection::vec(-2i64..5, arity), -3i64..4),
            0..6,
        )
        .prop_map(move |terms| {
            let mut p = LaurentPolynomial::zero(arity);
            for (e, c) in terms {
                p.add_term(e, BigInt::from(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn monomial_rule_agrees_with_division(f in small_poly(3), i in 1usize..3) {
            let numer = &f - &f.swap_variables(i);
            let q = divide_by_difference(&numer, i).expect("numerator is divisible");
            prop_assert_eq!(q, divided_difference(&f, i));
        }

        #[test]
        fn nilpotent_and_idempotent(f in small_poly(3), i in 1usize..3) {
            prop_assert!(divided_difference(&divided_difference(&f, i), i).is_zero());
            let once = demazure(&f, i);
            prop_assert_eq!(demazure(&once, i), once.clone());
            prop_assert!(once.is_symmetric_in(i));
        }

        #[test]
        fn braid_relation(f in small_poly(3)) {
            let lhs = apply_word(&f, &[1, 2, 1], divided_difference);
            let rhs = apply_word(&f, &[2, 1, 2], divided_difference);
            prop_assert_eq!(lhs, rhs);
            let lhs = apply_word(&f, &[1, 2, 1], demazure);
            let rhs = apply_word(&f, &[2, 1, 2], demazure);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn leibniz_rule(f in small_poly(3), g in small_poly(3)) {
            // ∂(fg) = ∂(f) g + s(f) ∂(g)
            let lhs = divided_difference(&(&f * &g), 1);
            let rhs = &(&divided_difference(&f, 1) * &g) + &(&f.swap_variables(1) * &divided_difference(&g, 1));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn zero_stays_zero() {
        let z = LaurentPolynomial::zero(4);
        assert!(divided_difference(&z, 3).is_zero());
        assert!(demazure(&z, 1).is_zero());
    }
}
