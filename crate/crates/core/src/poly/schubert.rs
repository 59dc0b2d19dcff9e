use std::collections::HashMap;

use rand::Rng;

use super::operators::{demazure, divided_difference};
use super::LaurentPolynomial;
use crate::combinatorics::{reduce_diagram, Diagram, Permutation};
use crate::error::{Error, Result};

/// Memo table for Schubert polynomials, keyed by permutation.
#[derive(Debug, Default, Clone)]
pub struct SchubertCache {
    table: HashMap<Permutation, LaurentPolynomial>,
}

impl SchubertCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `S_{w0} = x_1^{n-1} … x_{n-1}`, and `S_w = ∂_i S_{w s_i}` at the first
    /// ascent `i` of `w`.
    pub fn get(&mut self, w: &Permutation) -> LaurentPolynomial {
        if let Some(p) = self.table.get(w) {
            return p.clone();
        }
        let n = w.len();
        let p = match w.first_ascent() {
            None => {
                let exp = (0..n).map(|i| (n - 1 - i) as i64).collect();
                LaurentPolynomial::monomial(exp, 1)
            }
            Some(i) => {
                let up = self.get(&w.times_simple(i));
                divided_difference(&up, i)
            }
        };
        self.table.insert(w.clone(), p.clone());
        p
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// The Schubert polynomial of `w`, in `n = |w|` variables.
pub fn schubert(w: &Permutation) -> LaurentPolynomial {
    SchubertCache::new().get(w)
}

/// Character of the flagged Schur module of a column-convex diagram, by
/// peeling off the columns that meet the first row:
/// `s_D = x^μ π_1 π_2 ⋯ π_{n-1} s_{D̃}`.
pub fn flagged_character(d: &Diagram) -> Result<LaurentPolynomial> {
    let n = d.rows();
    if n == 0 {
        d.check_column_convex()?;
        return Ok(LaurentPolynomial::one(0));
    }
    let reduced = reduce_diagram(d)?;
    let mut f = flagged_character(&reduced.tilde)?.with_arity(n);
    for i in (1..n).rev() {
        f = demazure(&f, i);
    }
    Ok(f.mul_monomial(reduced.mu.parts()))
}

/// Inputs of the two-variable Demazure identity: nonnegative `N1`, `N2` and
/// intervals `[μ_i, ν_i]` with `Σ(μ_i + ν_i) <= N1 + N2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemazureParams {
    pub n1: i64,
    pub n2: i64,
    pub bounds: Vec<(i64, i64)>,
}

impl DemazureParams {
    pub fn new(n1: i64, n2: i64, bounds: Vec<(i64, i64)>) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidParameters {
            reason: reason.to_string(),
        };
        if n1 < 0 || n2 < 0 {
            return Err(bad("N1 and N2 must be nonnegative"));
        }
        if bounds.iter().any(|&(lo, hi)| lo < 0 || lo > hi) {
            return Err(bad("each interval needs 0 <= μ_i <= ν_i"));
        }
        let p = DemazureParams { n1, n2, bounds };
        if p.slack() < 0 {
            return Err(bad("Σ(μ_i + ν_i) exceeds N1 + N2"));
        }
        Ok(p)
    }

    /// `ν_{k+1} = N1 + N2 - Σ(μ_i + ν_i)`.
    pub fn slack(&self) -> i64 {
        self.n1 + self.n2 - self.bounds.iter().map(|(a, b)| a + b).sum::<i64>()
    }

    /// Rejection-samples a valid parameter set.
    pub fn random<R: Rng>(rng: &mut R, max_n: i64, max_k: usize) -> Self {
        loop {
            let n1 = rng.gen_range(0..=max_n);
            let n2 = rng.gen_range(0..=max_n);
            let k = rng.gen_range(0..=max_k);
            let bounds = (0..k)
                .map(|_| {
                    let lo = rng.gen_range(0..=max_n);
                    let hi = rng.gen_range(lo..=max_n);
                    (lo, hi)
                })
                .collect();
            if let Ok(p) = DemazureParams::new(n1, n2, bounds) {
                return p;
            }
        }
    }

    fn box_sums(&self, extra: Option<i64>) -> Vec<i64> {
        let mut sums = vec![0i64];
        let ranges = self
            .bounds
            .iter()
            .copied()
            .chain(extra.map(|hi| (0, hi)));
        for (lo, hi) in ranges {
            sums = sums
                .iter()
                .flat_map(|&s| (lo..=hi).map(move |c| s + c))
                .collect();
        }
        sums
    }

    fn sum_poly(&self, extra: Option<i64>) -> LaurentPolynomial {
        let mut f = LaurentPolynomial::zero(2);
        for s in self.box_sums(extra) {
            f.add_term(vec![self.n1 - s, s - self.n2], 1.into());
        }
        f
    }

    /// `f = Σ_{c in box} x_1^{N1 - Σc} x_2^{Σc - N2}`.
    pub fn left(&self) -> LaurentPolynomial {
        self.sum_poly(None)
    }

    /// The same sum with one more index `c_{k+1}` running over `0..=ν_{k+1}`.
    pub fn right(&self) -> LaurentPolynomial {
        self.sum_poly(Some(self.slack()))
    }
}

/// Checks `π_1 f` against the extended box sum.
pub fn verify_lemma_di(p: &DemazureParams) -> bool {
    demazure(&p.left(), 1) == p.right()
}
