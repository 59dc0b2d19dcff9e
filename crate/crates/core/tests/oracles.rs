//! Hand-checked values for the reference computations in `common`, and the
//! library against them on inputs the acceptance run does not cover.

mod common;

use common::Poly;
use schubert_lab::combinatorics::{Partition, Permutation};
use schubert_lab::gt::schur;
use schubert_lab::poly::schubert;

fn poly(terms: &[(&[i64], i64)]) -> Poly {
    let mut p = Poly::new();
    for (e, c) in terms {
        common::add_term(&mut p, e.to_vec(), *c);
    }
    p
}

#[test]
fn pipe_dreams_small_cases() {
    let t = common::schubert_table(3);
    assert_eq!(t.len(), 6);
    assert_eq!(t[&vec![1, 2, 3]], poly(&[(&[0, 0, 0], 1)]));
    assert_eq!(t[&vec![1, 3, 2]], poly(&[(&[1, 0, 0], 1), (&[0, 1, 0], 1)]));
    assert_eq!(t[&vec![2, 1, 3]], poly(&[(&[1, 0, 0], 1)]));
    assert_eq!(t[&vec![2, 3, 1]], poly(&[(&[1, 1, 0], 1)]));
    assert_eq!(t[&vec![3, 1, 2]], poly(&[(&[2, 0, 0], 1)]));
    assert_eq!(t[&vec![3, 2, 1]], poly(&[(&[2, 1, 0], 1)]));
    assert_eq!(common::schubert_table(4).len(), 24);
}

#[test]
fn pipe_dreams_count_for_1432() {
    // 𝔖_{1432}(1,1,1,1) = 5
    let t = common::schubert_table(4);
    assert_eq!(t[&vec![1, 4, 3, 2]].values().sum::<i64>(), 5);
}

#[test]
fn reference_demazure() {
    assert_eq!(
        common::demazure(&poly(&[(&[1, 0], 1)]), 1),
        poly(&[(&[1, 0], 1), (&[0, 1], 1)])
    );
    assert!(common::demazure(&poly(&[(&[0, 1], 1)]), 1).is_empty());
    assert_eq!(common::demazure(&poly(&[(&[0, 2], 1)]), 1), poly(&[(&[1, 1], -1)]));
}

#[test]
fn reference_gt_counts_match_weyl_dimension() {
    for lambda in common::partitions(4, 3) {
        let mut num = 1i64;
        let mut den = 1i64;
        for i in 0..4 {
            for j in i + 1..4 {
                num *= lambda[i] - lambda[j] + (j - i) as i64;
                den *= (j - i) as i64;
            }
        }
        assert_eq!(common::gt_patterns(&lambda).len() as i64, num / den, "{lambda:?}");
    }
}

#[test]
fn reference_column_convex_counts() {
    let counts: Vec<usize> = (1..=6)
        .map(|n| common::permutations(n).iter().filter(|w| common::column_convex(w)).count())
        .collect();
    assert_eq!(counts, vec![1, 2, 6, 22, 90, 394]);
}

#[test]
fn schubert_matches_pipe_dreams_in_s5() {
    for (word, p) in common::schubert_table(5) {
        let w = Permutation::new(word).unwrap();
        assert_eq!(common::from_lib(&schubert(&w).with_arity(5)), p, "w={w}");
    }
}

#[test]
fn schur_is_specialized_gt_sum() {
    for len in 1..=4 {
        for lambda in common::partitions(len, 3) {
            let expected = common::specialized_sum(len, common::gt_patterns(&lambda).iter());
            let got = common::from_lib(&schur(&Partition::new(lambda.clone()).unwrap()));
            assert_eq!(got, expected, "{lambda:?}");
        }
    }
}
