//! Sparse Laurent polynomials with arbitrary-precision integer coefficients,
//! together with the operators built on them.

mod operators;
mod schubert;

pub use operators::{apply_word, demazure, divided_difference};
pub use schubert::{flagged_character, schubert, verify_lemma_di, DemazureParams, SchubertCache};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Exponent = Vec<i64>;

/// `Σ c_e x^e` over exponent vectors of a fixed arity. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    arity: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(arity: usize) -> Self {
        LaurentPolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(vec![0; arity], 1)
    }

    pub fn monomial(exp: Exponent, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, coeff.into());
        p
    }

    /// The variable `x_i`, 1-based.
    pub fn variable(arity: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= arity, "x_{i} out of range for arity {arity}");
        let mut exp = vec![0; arity];
        exp[i - 1] = 1;
        Self::monomial(exp, 1)
    }

    pub fn from_terms(
        arity: usize,
        terms: impl IntoIterator<Item = (Exponent, BigInt)>,
    ) -> Result<Self> {
        let mut p = Self::zero(arity);
        for (exp, c) in terms {
            if exp.len() != arity {
                return Err(Error::SizeMismatch {
                    expected: arity,
                    got: exp.len(),
                });
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Exponent, coeff: BigInt) {
        debug_assert_eq!(exp.len(), self.arity);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Applies `f` to every exponent vector, summing collisions.
    pub fn map_exponents(&self, arity: usize, mut f: impl FnMut(&[i64]) -> Exponent) -> Self {
        let mut out = Self::zero(arity);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Pads with trailing variables that do not occur.
    pub fn with_arity(&self, arity: usize) -> Self {
        assert!(arity >= self.arity);
        self.map_exponents(arity, |e| {
            let mut v = e.to_vec();
            v.resize(arity, 0);
            v
        })
    }

    /// `s_i f`: exchanges `x_i` and `x_{i+1}`.
    pub fn swap_variables(&self, i: usize) -> Self {
        self.map_exponents(self.arity, |e| {
            let mut v = e.to_vec();
            v.swap(i - 1, i);
            v
        })
    }

    pub fn is_symmetric_in(&self, i: usize) -> bool {
        *self == self.swap_variables(i)
    }

    pub fn mul_monomial(&self, exp: &[i64]) -> Self {
        self.map_exponents(self.arity, |e| e.iter().zip(exp).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.arity);
        for (e, k) in &self.terms {
            out.add_term(e.clone(), k * c);
        }
        out
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Value at `x_1 = … = x_m = 1`.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Terms in descending lexicographic exponent order, the order used for
    /// serialization.
    pub fn canonical_terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson::from(self)).expect("polynomial serializes")
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = LaurentPolynomial::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.canonical_terms().enumerate() {
            let constant = e.iter().all(|&x| x == 0);
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if constant || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            let mut first = constant || !mag.is_one();
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if first {
                    write!(f, "*")?;
                }
                first = true;
                if x == 1 {
                    write!(f, "x{}", i + 1)?;
                } else {
                    write!(f, "x{}^{}", i + 1, x)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i64>,
    coeff: serde_json::Value,
}

#[derive(Debug, Serialize, Deserialize)]
struct PolyJson {
    arity: usize,
    terms: Vec<TermJson>,
}

impl From<&LaurentPolynomial> for PolyJson {
    fn from(p: &LaurentPolynomial) -> Self {
        let terms = p
            .canonical_terms()
            .map(|(e, c)| TermJson {
                exp: e.clone(),
                // Exact: small coefficients as numbers, large ones as strings.
                coeff: match c.to_i64() {
                    Some(v) => v.into(),
                    None => c.to_string().into(),
                },
            })
            .collect();
        PolyJson {
            arity: p.arity,
            terms,
        }
    }
}

impl TryFrom<PolyJson> for LaurentPolynomial {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        let terms = j
            .terms
            .into_iter()
            .map(|t| {
                let c: BigInt = match &t.coeff {
                    serde_json::Value::Number(n) => n.to_string().parse().ok(),
                    serde_json::Value::String(s) => s.parse().ok(),
                    _ => None,
                }
                .ok_or_else(|| Error::Parse {
                    what: "coefficient",
                    token: t.coeff.to_string(),
                })?;
                Ok((t.exp, c))
            })
            .collect::<Result<Vec<_>>>()?;
        LaurentPolynomial::from_terms(j.arity, terms)
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        LaurentPolynomial::try_from(j).map_err(serde::de::Error::custom)
    }
}
