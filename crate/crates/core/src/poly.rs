//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`ExponentVector`], whose ordering is
//! graded lex with `x > y > z`. Canonical iteration is *descending* in that
//! order, so `x^12` comes before `x^10 y^2` and the JSON form is stable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponents of a monomial, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exps: Vec<u32>) -> Self {
        ExponentVector(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    /// The exponent vector of the single variable `var`.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        ExponentVector(e)
    }

    /// `(d - A - B, A, B)`, the 3-line convention.
    pub fn trivariate(d: u32, a_exp: u32, b_exp: u32) -> Self {
        ExponentVector(vec![d - a_exp - b_exp, a_exp, b_exp])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn mul(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent of `other` is at most the matching
    /// one here.
    fn checked_div(&self, other: &ExponentVector) -> Option<ExponentVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(ExponentVector)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Packs `(A, B)` into the single exponent `A + base * B`.
///
/// Injective on `A < base`; with `base = d + 1` this covers every monomial of a
/// degree-`d` form in three variables once `x` is normalised to 1.
pub fn kronecker_pack(a_exp: u64, b_exp: u64, base: u64) -> u64 {
    debug_assert!(a_exp < base, "kronecker base must exceed every A");
    a_exp + base * b_exp
}

pub fn kronecker_unpack(packed: u64, base: u64) -> (u64, u64) {
    (packed % base, packed / base)
}

/// Sparse polynomial over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    nvars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exps: Vec<u32>,
    coeff: String,
}

#[allow(clippy::should_implement_trait)]
impl IntPolynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars > 0, "a polynomial needs at least one variable");
        IntPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExponentVector::zero(nvars), c.into());
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExponentVector::unit(nvars, var), BigInt::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::Arity {
                    expected: nvars,
                    found: exps.len(),
                });
            }
            p.add_term(ExponentVector(exps), c.into());
        }
        Ok(p)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: ExponentVector, c: BigInt) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .next_back()
            .map_or(-1, |m| m.degree() as i64)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(ExponentVector::degree);
        match degs.next() {
            None => true,
            Some(first) => degs.all(|d| d == first),
        }
    }

    /// Terms in canonical (descending graded lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys().rev()
    }

    /// Coefficient of the monomial with the given exponents (zero if absent).
    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&ExponentVector(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&ExponentVector, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn check_arity(&self, other: &IntPolynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> IntPolynomial {
        self.map_coeffs(|c| -c)
    }

    pub fn mul(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        self.check_arity(other)?;
        let mut out = IntPolynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Applies `f` to each coefficient, dropping any that become zero.
    pub fn map_coeffs(&self, mut f: impl FnMut(&BigInt) -> BigInt) -> IntPolynomial {
        let mut out = IntPolynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Termwise absolute value.
    pub fn abs_coeffs(&self) -> IntPolynomial {
        self.map_coeffs(|c| c.abs())
    }

    /// Returns `r` with `divisor * r == self`, or a divisibility error.
    ///
    /// Plain leading-term division in graded lex order. When the division is
    /// exact every step succeeds, so the first monomial or integer mismatch
    /// proves `divisor` does not divide `self`.
    pub fn exact_divide(&self, divisor: &IntPolynomial) -> Result<IntPolynomial> {
        self.check_arity(divisor)?;
        let (lead_m, lead_c) = divisor
            .leading_term()
            .ok_or_else(|| Error::Divisibility("division by the zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut quot = IntPolynomial::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.checked_div(lead_m).ok_or_else(|| {
                Error::Divisibility(format!(
                    "leading monomial {:?} of the remainder is not a multiple of {:?}",
                    m.as_slice(),
                    lead_m.as_slice()
                ))
            })?;
            let (qc, r) = c.div_rem(lead_c);
            if !r.is_zero() {
                return Err(Error::Divisibility(format!(
                    "coefficient {c} is not a multiple of {lead_c}"
                )));
            }
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.as_slice()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Canonical JSON: an array of `{"exps": [...], "coeff": "<decimal>"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let records: Vec<TermRecord> = self
            .terms()
            .map(|(m, c)| TermRecord {
                exps: m.as_slice().to_vec(),
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_value(records).expect("term records always serialize")
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    /// Parses the canonical JSON form. `nvars` is needed for the empty
    /// (zero) polynomial and is checked against every term otherwise.
    pub fn from_json_str(s: &str, nvars: usize) -> Result<IntPolynomial> {
        let records: Vec<TermRecord> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            let c: BigInt = r
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", r.coeff)))?;
            terms.push((r.exps, c));
        }
        IntPolynomial::from_terms(nvars, terms)
    }

    /// The 3-variable view `(A, B) -> coefficient` of a form in `x, y, z`.
    pub fn trivariate_coeffs(&self) -> BTreeMap<(u32, u32), BigInt> {
        assert_eq!(self.nvars, 3);
        self.terms
            .iter()
            .map(|(m, c)| ((m.0[1], m.0[2]), c.clone()))
            .collect()
    }
}

fn var_name(nvars: usize, i: usize) -> String {
    const SMALL: [&str; 3] = ["x", "y", "z"];
    if nvars <= 3 {
        SMALL[i].to_string()
    } else {
        format!("x{i}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.as_slice().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(var_name(self.nvars, i)),
                    _ => factors.push(format!("{}^{}", var_name(self.nvars, i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
