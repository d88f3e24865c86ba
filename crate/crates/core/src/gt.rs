//! GT-systems in three variables.
//!
//! `I = I^d_{0,a,b}` is generated by the degree-`d` monomials
//! `x^alpha y^beta z^gamma` with `a*beta + b*gamma = 0 (mod d)`. Its Reynolds
//! form is reached as the circulant determinant, so no roots of unity are ever
//! built.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fastperm::det_poly_interpolate;
use crate::linalg::bareiss_rank;
use crate::oracle::{check_hypothesis, check_triple, gcd3};
use crate::poly::IntPolynomial;

pub type Triple = [u32; 3];

/// All degree-`n` exponent triples, lexicographically descending.
fn monomials_of_degree(n: u32) -> Vec<Triple> {
    let mut out = Vec::new();
    for alpha in (0..=n).rev() {
        for beta in (0..=n - alpha).rev() {
            out.push([alpha, beta, n - alpha - beta]);
        }
    }
    out
}

fn is_invariant(d: u64, a: u64, b: u64, m: &Triple) -> bool {
    (a * m[1] as u64 + b * m[2] as u64).is_multiple_of(d)
}

/// Minimal generators of `I^d_{0,a,b}`, lexicographically descending.
pub fn invariant_monomials(d: u64, a: u64, b: u64) -> Result<Vec<Triple>> {
    check_triple(d, a, b)?;
    Ok(monomials_of_degree(d as u32)
        .into_iter()
        .filter(|m| is_invariant(d, a, b, m))
        .collect())
}

/// `mu(I) <= d + 1`.
pub fn check_generator_bound(d: u64, a: u64, b: u64) -> Result<bool> {
    check_hypothesis(d, a, b)?;
    Ok(invariant_monomials(d, a, b)?.len() as u64 <= d + 1)
}

/// The Reynolds form `C_{d;a,b}`, equal to `det Circ(d; 0, a, b)`.
pub fn reynolds_form(d: u64, a: u64, b: u64) -> Result<IntPolynomial> {
    det_poly_interpolate(d as usize, a as usize, b as usize)
}

pub fn linear_form() -> IntPolynomial {
    IntPolynomial::from_terms(
        3,
        [(vec![1, 0, 0], 1), (vec![0, 1, 0], 1), (vec![0, 0, 1], 1)],
    )
    .expect("three variables")
}

/// `F_{d-1} = C_{d;a,b} / (x + y + z)`.
pub fn quotient_form(d: u64, a: u64, b: u64) -> Result<IntPolynomial> {
    reynolds_form(d, a, b)?.exact_divide(&linear_form())
}

/// `dim ker(x + y + z : R_{d-1} -> (R/I)_d)`.
pub fn wlp_kernel_dim(d: u64, a: u64, b: u64) -> Result<usize> {
    check_hypothesis(d, a, b)?;
    Ok(kernel_dim_unchecked(d, a, b))
}

fn kernel_dim_unchecked(d: u64, a: u64, b: u64) -> usize {
    let source = monomials_of_degree(d as u32 - 1);
    let target: Vec<Triple> = monomials_of_degree(d as u32)
        .into_iter()
        .filter(|m| !is_invariant(d, a, b, m))
        .collect();
    let index: std::collections::HashMap<Triple, usize> =
        target.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut mat = vec![vec![BigInt::zero(); source.len()]; target.len()];
    for (col, m) in source.iter().enumerate() {
        for var in 0..3 {
            let mut image = *m;
            image[var] += 1;
            if let Some(&row) = index.get(&image) {
                mat[row][col] = BigInt::from(1);
            }
        }
    }
    source.len() - bareiss_rank(&mat)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateMode {
    /// `gcd(a, b, d) = 1`: a genuine GT-system.
    GtSystem,
    /// `gcd(a, b, d) != 1`: raw support comparison only.
    SupportCoverage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GtSystemReport {
    pub d: u64,
    pub a: u64,
    pub b: u64,
    pub mode: CertificateMode,
    pub generators: Vec<Triple>,
    pub mu: usize,
    pub togliatti_bound_ok: bool,
    pub kernel_dim: usize,
    pub minimal: bool,
    pub missing_witnesses: Vec<Triple>,
}

impl GtSystemReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "d": self.d,
            "a": self.a,
            "b": self.b,
            "mode": match self.mode {
                CertificateMode::GtSystem => "GT-system",
                CertificateMode::SupportCoverage => "support coverage check",
            },
            "generators": self.generators,
            "mu": self.mu,
            "togliatti_bound_ok": self.togliatti_bound_ok,
            "kernel_dim": self.kernel_dim,
            "minimal": self.minimal,
            "missing_witnesses": self.missing_witnesses,
        })
    }
}

/// Checks that every invariant monomial occurs in the Reynolds form.
pub fn minimality_certificate(d: u64, a: u64, b: u64) -> Result<GtSystemReport> {
    check_triple(d, a, b)?;
    let mode = if gcd3(a, b, d) == 1 {
        CertificateMode::GtSystem
    } else {
        CertificateMode::SupportCoverage
    };
    let generators = invariant_monomials(d, a, b)?;
    let form = reynolds_form(d, a, b)?;
    if let Some(m) = form.support().find(|m| {
        !is_invariant(
            d,
            a,
            b,
            &[m.as_slice()[0], m.as_slice()[1], m.as_slice()[2]],
        )
    }) {
        return Err(Error::Internal(format!(
            "determinant monomial {:?} is not invariant",
            m.as_slice()
        )));
    }
    let missing: Vec<Triple> = generators
        .iter()
        .filter(|m| form.coeff(&m[..]).is_zero())
        .copied()
        .collect();
    let mu = generators.len();
    Ok(GtSystemReport {
        d,
        a,
        b,
        mode,
        mu,
        togliatti_bound_ok: mu as u64 <= d + 1,
        kernel_dim: kernel_dim_unchecked(d, a, b),
        minimal: missing.is_empty(),
        missing_witnesses: missing,
        generators,
    })
}
