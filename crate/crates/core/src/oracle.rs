//! Closed-form coefficient rules for `det Circ(d; 0, a, b)` when
//! `gcd(a, b, d) = 1`.
//!
//! Nonzeroness and sign are arithmetic tests. The magnitude is a count of
//! permutations built from `k = gcd(A, B, l)` cycles of identical shape, found
//! by canonical cycle-by-cycle backtracking: each cycle is grown from its
//! smallest element and cycles are produced in increasing order of that
//! element, so every permutation is counted once. That count costs time
//! proportional to the answer; [`MagnitudeMethod::Interpolate`] reads the
//! value off the interpolated determinant instead.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fastperm;

pub fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    a.gcd(&b).gcd(&c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MagnitudeMethod {
    #[default]
    Count,
    Interpolate,
}

/// Range checks shared by every oracle entry point, without the gcd test.
pub fn check_triple(d: u64, a: u64, b: u64) -> Result<()> {
    if d < 3 || !(1 <= a && a < b && b < d) {
        return Err(Error::Contract(format!(
            "need d >= 3 and 1 <= a < b <= d-1, got d={d}, a={a}, b={b}"
        )));
    }
    Ok(())
}

/// Range checks plus `gcd(a, b, d) = 1`.
pub fn check_hypothesis(d: u64, a: u64, b: u64) -> Result<()> {
    check_triple(d, a, b)?;
    let g = gcd3(a, b, d);
    if g != 1 {
        return Err(Error::Hypothesis { d, a, b, gcd: g });
    }
    Ok(())
}

fn check_exponents(d: u64, a_exp: u64, b_exp: u64) -> Result<()> {
    if a_exp + b_exp > d {
        return Err(Error::Contract(format!(
            "A + B = {} exceeds d = {d}",
            a_exp + b_exp
        )));
    }
    Ok(())
}

fn winding(d: u64, a: u64, b: u64, a_exp: u64, b_exp: u64) -> Option<u64> {
    let s = a * a_exp + b * b_exp;
    s.is_multiple_of(d).then_some(s / d)
}

pub fn coeff_nonzero(d: u64, a: u64, b: u64, a_exp: u64, b_exp: u64) -> Result<bool> {
    check_hypothesis(d, a, b)?;
    check_exponents(d, a_exp, b_exp)?;
    Ok(winding(d, a, b, a_exp, b_exp).is_some())
}

fn require_winding(d: u64, a: u64, b: u64, a_exp: u64, b_exp: u64) -> Result<u64> {
    check_hypothesis(d, a, b)?;
    check_exponents(d, a_exp, b_exp)?;
    winding(d, a, b, a_exp, b_exp).ok_or_else(|| {
        Error::Contract(format!(
            "d={d} does not divide aA + bB = {}",
            a * a_exp + b * b_exp
        ))
    })
}

/// `+` iff `k = gcd(A, B, l)` is even or `A + B - 1` is even. With
/// `gcd(0, 0, 0) = 0` the constant-term case `(0, 0)` comes out `+`.
pub fn coeff_sign(d: u64, a: u64, b: u64, a_exp: u64, b_exp: u64) -> Result<Sign> {
    let ell = require_winding(d, a, b, a_exp, b_exp)?;
    Ok(sign_rule(a_exp, b_exp, ell))
}

fn sign_rule(a_exp: u64, b_exp: u64, ell: u64) -> Sign {
    let k = gcd3(a_exp, b_exp, ell);
    if k.is_multiple_of(2) || (a_exp + b_exp) % 2 == 1 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

pub fn coeff_magnitude(d: u64, a: u64, b: u64, a_exp: u64, b_exp: u64) -> Result<BigInt> {
    let ell = require_winding(d, a, b, a_exp, b_exp)?;
    count_cycle_permutations(d, a, b, a_exp, b_exp, ell)
}

/// Permutations of `0..d` made of `k` disjoint cycles, each of length
/// `(A + B) / k` using `A / k` steps of `+a` and `B / k` steps of `+b`.
fn count_cycle_permutations(
    d: u64,
    a: u64,
    b: u64,
    a_exp: u64,
    b_exp: u64,
    ell: u64,
) -> Result<BigInt> {
    let k = gcd3(a_exp, b_exp, ell);
    if k == 0 {
        return Ok(BigInt::from(1));
    }
    if d as usize > crate::circulant::MAX_STEP_ORDER {
        return Err(Error::ResourceLimit {
            what: "order for cycle counting",
            requested: d as usize,
            limit: crate::circulant::MAX_STEP_ORDER,
        });
    }
    let counter = CycleCounter {
        d: d as usize,
        a: a as usize,
        b: b as usize,
        per_a: (a_exp / k) as usize,
        per_b: (b_exp / k) as usize,
    };
    Ok(BigInt::from(counter.count(0, k as usize, 0)))
}

struct CycleCounter {
    d: usize,
    a: usize,
    b: usize,
    per_a: usize,
    per_b: usize,
}

impl CycleCounter {
    fn count(&self, covered: u128, cycles_left: usize, min_start: usize) -> u128 {
        if cycles_left == 0 {
            return 1;
        }
        let mut total = 0;
        for start in min_start..self.d {
            if covered >> start & 1 == 1 {
                continue;
            }
            let mut closed = Vec::new();
            self.grow(
                start,
                start,
                covered | 1 << start,
                self.per_a,
                self.per_b,
                &mut closed,
            );
            for now_covered in closed {
                total += self.count(now_covered, cycles_left - 1, start + 1);
            }
        }
        total
    }

    /// Extends the path ending at `pos` through elements not yet in `mask`;
    /// every way of closing it back to `start` pushes the final mask.
    fn grow(
        &self,
        start: usize,
        pos: usize,
        mask: u128,
        ra: usize,
        rb: usize,
        out: &mut Vec<u128>,
    ) {
        for use_a in [true, false] {
            let (step, na, nb) = match (use_a, ra, rb) {
                (true, 0, _) | (false, _, 0) => continue,
                (true, _, _) => (self.a, ra - 1, rb),
                (false, _, _) => (self.b, ra, rb - 1),
            };
            let next = (pos + step) % self.d;
            if na == 0 && nb == 0 {
                if next == start {
                    out.push(mask);
                }
            } else if next > start && mask >> next & 1 == 0 {
                self.grow(start, next, mask | 1 << next, na, nb, out);
            }
        }
    }
}

/// Everything the oracle knows about one coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientReport {
    pub d: u64,
    pub a: u64,
    pub b: u64,
    pub a_exp: u64,
    pub b_exp: u64,
    pub nonzero: bool,
    pub sign: Option<Sign>,
    pub magnitude: BigInt,
    pub value: BigInt,
    pub k: Option<u64>,
    pub ell: Option<u64>,
    pub magnitude_method: MagnitudeMethod,
    /// Set when `(A, B) = (0, 0)`, where the sign comes from the
    /// `gcd(0, 0, 0) = 0` convention rather than the general rule.
    pub constant_term_convention: bool,
}

impl CoefficientReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "d": self.d,
            "a": self.a,
            "b": self.b,
            "A": self.a_exp,
            "B": self.b_exp,
            "nonzero": self.nonzero,
            "sign": self.sign.map(|s| s.to_string()),
            "magnitude": self.magnitude.to_string(),
            "value": self.value.to_string(),
            "k": self.k,
            "ell": self.ell,
            "rules": {
                "nonzero": "d | (aA + bB)",
                "sign": if self.nonzero {
                    if self.constant_term_convention {
                        "constant term: gcd(0,0,0) = 0 is even, sign +"
                    } else {
                        "+ iff gcd(A, B, l) or A + B - 1 is even"
                    }
                } else {
                    "not applicable (zero coefficient)"
                },
                "magnitude": match (self.nonzero, self.magnitude_method) {
                    (false, _) => "zero coefficient",
                    (true, MagnitudeMethod::Count) => "count of permutations with k cycles of equal step profile",
                    (true, MagnitudeMethod::Interpolate) => "absolute value of the interpolated determinant coefficient",
                },
            },
        })
    }
}

pub fn full_coefficient(
    d: u64,
    a: u64,
    b: u64,
    a_exp: u64,
    b_exp: u64,
) -> Result<CoefficientReport> {
    full_coefficient_with(d, a, b, a_exp, b_exp, MagnitudeMethod::Count)
}

pub fn full_coefficient_with(
    d: u64,
    a: u64,
    b: u64,
    a_exp: u64,
    b_exp: u64,
    method: MagnitudeMethod,
) -> Result<CoefficientReport> {
    let nonzero = coeff_nonzero(d, a, b, a_exp, b_exp)?;
    let convention = a_exp == 0 && b_exp == 0;
    if !nonzero {
        return Ok(CoefficientReport {
            d,
            a,
            b,
            a_exp,
            b_exp,
            nonzero,
            sign: None,
            magnitude: BigInt::zero(),
            value: BigInt::zero(),
            k: None,
            ell: None,
            magnitude_method: method,
            constant_term_convention: false,
        });
    }
    let ell = winding(d, a, b, a_exp, b_exp).expect("nonzero implies divisibility");
    let sign = sign_rule(a_exp, b_exp, ell);
    let magnitude = match method {
        MagnitudeMethod::Count => count_cycle_permutations(d, a, b, a_exp, b_exp, ell)?,
        MagnitudeMethod::Interpolate => {
            let det = fastperm::det_poly_interpolate(d as usize, a as usize, b as usize)?;
            det.coeff(&[(d - a_exp - b_exp) as u32, a_exp as u32, b_exp as u32])
                .abs()
        }
    };
    let value = match sign {
        Sign::Plus => magnitude.clone(),
        Sign::Minus => -magnitude.clone(),
    };
    Ok(CoefficientReport {
        d,
        a,
        b,
        a_exp,
        b_exp,
        nonzero,
        sign: Some(sign),
        magnitude,
        value,
        k: Some(gcd3(a_exp, b_exp, ell)),
        ell: Some(ell),
        magnitude_method: method,
        constant_term_convention: convention,
    })
}

/// `D = P`, counted as the pairs `(A, B)` with `A + B <= d` and
/// `d | aA + bB`.
pub fn oracle_support_count(d: u64, a: u64, b: u64) -> Result<(usize, usize)> {
    check_hypothesis(d, a, b)?;
    let n = (0..=d)
        .flat_map(|ae| (0..=d - ae).map(move |be| (ae, be)))
        .filter(|&(ae, be)| (a * ae + b * be).is_multiple_of(d))
        .count();
    Ok((n, n))
}
