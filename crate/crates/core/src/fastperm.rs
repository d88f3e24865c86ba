//! Polynomial-time determinant recovery for 3-line circulants and the
//! permanent values it yields, plus Ryser's exponential baseline.
//!
//! The determinant `det Circ(d; 0, a, b)` is homogeneous of degree `d`, so it
//! is determined by its values at `x = 1`. Substituting `y = t` and
//! `z = t^(d+1)` packs each monomial `x^(d-A-B) y^A z^B` into the single power
//! `t^(A + (d+1)B)`, at most `t^(d^2+d)`, so `d^2 + d + 1` nodes
//! `t = 0, 1, ..., d^2 + d` determine it.
//!
//! Two routes share that plan:
//!
//! * [`Route::Exact`] evaluates each node with [`bareiss_det`] over the
//!   integers and runs Newton divided differences over the rationals, then
//!   checks integrality. Simple, but the node values grow to `O(d^3 log d)`
//!   bits, which limits it to small orders.
//! * [`Route::Modular`] (the default) runs the same plan modulo word-sized
//!   primes, evaluating each node as the resultant `Res(s^d - 1, f(s))` in
//!   `O(d^2)`, and lifts by CRT once the modulus product exceeds twice the
//!   bound `6^(d/3)` on every coefficient (Bregman's bound on the permanent of
//!   a 0/1 matrix with three ones per row). An extra prime re-checks the
//!   lifted polynomial at off-plan points.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::circulant::CirculantSpec;
use crate::error::{Error, Result};
use crate::linalg::bareiss_det;
use crate::modular::{circulant_det_mod, crt_symmetric, large_primes, Field};
use crate::oracle::{check_hypothesis, check_triple};
use crate::poly::{kronecker_pack, kronecker_unpack, ExponentVector, IntPolynomial};

pub const DEFAULT_RYSER_BOUND: usize = 20;

/// Kronecker node plan for one `(d, a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationPlan {
    pub d: usize,
    pub a: usize,
    pub b: usize,
    pub base: u64,
    pub degree_bound: u64,
}

impl EvaluationPlan {
    pub fn new(d: usize, a: usize, b: usize) -> Self {
        let d64 = d as u64;
        EvaluationPlan {
            d,
            a,
            b,
            base: d64 + 1,
            degree_bound: d64 * d64 + d64,
        }
    }

    pub fn node_count(&self) -> usize {
        self.degree_bound as usize + 1
    }

    /// `(A, B)` packed to a univariate exponent.
    pub fn pack(&self, a_exp: u64, b_exp: u64) -> u64 {
        kronecker_pack(a_exp, b_exp, self.base)
    }

    /// Inverse of [`EvaluationPlan::pack`]; `None` outside `A + B <= d`.
    pub fn unpack(&self, e: u64) -> Option<(u64, u64)> {
        let (a_exp, b_exp) = kronecker_unpack(e, self.base);
        (a_exp + b_exp <= self.d as u64).then_some((a_exp, b_exp))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "d": self.d,
            "a": self.a,
            "b": self.b,
            "substitution": format!("x=1, y=t, z=t^{}", self.base),
            "nodes": format!("t = 0..={}", self.degree_bound),
            "node_count": self.node_count(),
            "degree_bound": self.degree_bound,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Route {
    #[default]
    Modular,
    Exact,
}

/// An interpolated determinant with the plan and moduli that produced it.
#[derive(Clone, Debug)]
pub struct Interpolation {
    pub plan: EvaluationPlan,
    pub route: Route,
    pub primes: Vec<u64>,
    pub poly: IntPolynomial,
}

impl Interpolation {
    pub fn metadata(&self) -> serde_json::Value {
        let mut m = self.plan.to_json();
        m["route"] = match self.route {
            Route::Modular => "modular".into(),
            Route::Exact => "exact".into(),
        };
        m["primes"] = self
            .primes
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .into();
        m
    }
}

/// `det Circ(d; 0, a, b)` as a polynomial in `x, y, z`.
pub fn det_poly_interpolate(d: usize, a: usize, b: usize) -> Result<IntPolynomial> {
    Ok(det_poly_interpolate_with(d, a, b, Route::Modular)?.poly)
}

pub fn det_poly_interpolate_with(
    d: usize,
    a: usize,
    b: usize,
    route: Route,
) -> Result<Interpolation> {
    check_triple(d as u64, a as u64, b as u64)?;
    let plan = EvaluationPlan::new(d, a, b);
    match route {
        Route::Exact => {
            let poly = interpolate_exact(&plan)?;
            Ok(Interpolation {
                plan,
                route,
                primes: Vec::new(),
                poly,
            })
        }
        Route::Modular => {
            let (poly, primes) = interpolate_modular(&plan)?;
            Ok(Interpolation {
                plan,
                route,
                primes,
                poly,
            })
        }
    }
}

fn rehomogenize(plan: &EvaluationPlan, e: u64) -> Result<ExponentVector> {
    let (a_exp, b_exp) = plan.unpack(e).ok_or_else(|| {
        Error::Internal(format!(
            "nonzero coefficient at packed exponent {e}, outside A + B <= {}",
            plan.d
        ))
    })?;
    Ok(ExponentVector::trivariate(
        plan.d as u32,
        a_exp as u32,
        b_exp as u32,
    ))
}

fn interpolate_exact(plan: &EvaluationPlan) -> Result<IntPolynomial> {
    let spec = CirculantSpec::three_line(plan.d, plan.a, plan.b)?;
    let n = plan.node_count();
    let values: Vec<BigRational> = (0..n as u64)
        .into_par_iter()
        .map(|t| {
            let t = BigInt::from(t);
            let z = num_traits::pow(t.clone(), plan.base as usize);
            let m = spec
                .numeric_matrix(&[BigInt::one(), t, z])
                .expect("three values for three shifts");
            BigRational::from_integer(bareiss_det(&m))
        })
        .collect();
    let coeffs = newton_consecutive_rational(values);
    let mut poly = IntPolynomial::zero(3);
    for (e, c) in coeffs.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_integer() {
            return Err(Error::Internal(format!(
                "non-integer coefficient {c} at packed exponent {e}"
            )));
        }
        poly.add_term(rehomogenize(plan, e as u64)?, c.to_integer());
    }
    Ok(poly)
}

/// Newton divided differences on nodes `0, 1, ..., n-1`, converted to
/// monomial coefficients (lowest degree first).
fn newton_consecutive_rational(mut c: Vec<BigRational>) -> Vec<BigRational> {
    let n = c.len();
    for j in 1..n {
        let denom = BigRational::from_integer(BigInt::from(j));
        for i in (j..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / &denom;
        }
    }
    let mut poly = vec![BigRational::zero(); n];
    poly[0] = c[n - 1].clone();
    for (deg, i) in (0..n - 1).rev().enumerate() {
        let node = BigRational::from_integer(BigInt::from(i));
        poly[deg + 1] = poly[deg].clone();
        for k in (1..=deg).rev() {
            poly[k] = &poly[k - 1] - &node * &poly[k];
        }
        poly[0] = &c[i] - &node * &poly[0];
    }
    poly
}

fn newton_consecutive_mod(field: &Field, mut c: Vec<u64>) -> Vec<u64> {
    let n = c.len();
    let inv = field.inverses_upto(n);
    for j in 1..n {
        let ij = inv[j];
        for i in (j..n).rev() {
            c[i] = field.mul(field.sub(c[i], c[i - 1]), ij);
        }
    }
    let mut poly = vec![0u64; n];
    poly[0] = c[n - 1];
    for (deg, i) in (0..n - 1).rev().enumerate() {
        let node = field.enter(i as u64);
        poly[deg + 1] = poly[deg];
        for k in (1..=deg).rev() {
            poly[k] = field.sub(poly[k - 1], field.mul(node, poly[k]));
        }
        poly[0] = field.sub(c[i], field.mul(node, poly[0]));
    }
    poly
}

/// Residues of the packed univariate determinant modulo one prime.
fn packed_residues(plan: &EvaluationPlan, field: &Field) -> Vec<u64> {
    let shifts = [0, plan.a, plan.b];
    let one = field.one();
    let values: Vec<u64> = (0..plan.node_count() as u64)
        .into_par_iter()
        .map(|t| {
            let y = field.enter(t % field.modulus());
            let z = field.pow(y, plan.base);
            circulant_det_mod(field, plan.d, &shifts, &[one, y, z])
        })
        .collect();
    newton_consecutive_mod(field, values)
        .into_iter()
        .map(|c| field.leave(c))
        .collect()
}

/// Primes whose product `M` satisfies `M^3 > 8 * 6^d`, i.e. `M > 2 * 6^(d/3)`.
fn primes_for_order(d: usize) -> Vec<u64> {
    let target = BigInt::from(8) * num_traits::pow(BigInt::from(6), d);
    let mut primes = Vec::new();
    let mut m = BigInt::one();
    for p in large_primes() {
        if &m * &m * &m > target {
            break;
        }
        primes.push(p);
        m *= p;
    }
    primes
}

fn interpolate_modular(plan: &EvaluationPlan) -> Result<(IntPolynomial, Vec<u64>)> {
    let mut all = primes_for_order(plan.d);
    let check_prime = large_primes()
        .nth(all.len())
        .expect("infinitely many primes");
    let residues: Vec<Vec<u64>> = all
        .par_iter()
        .map(|&p| packed_residues(plan, &Field::new(p)))
        .collect();
    let mut poly = IntPolynomial::zero(3);
    let mut column = vec![0u64; all.len()];
    for e in 0..plan.node_count() {
        for (slot, r) in column.iter_mut().zip(&residues) {
            *slot = r[e];
        }
        if column.iter().all(|&r| r == 0) {
            continue;
        }
        let c = crt_symmetric(&column, &all);
        poly.add_term(rehomogenize(plan, e as u64)?, c);
    }
    verify_mod(plan, &poly, check_prime)?;
    all.push(check_prime);
    Ok((poly, all))
}

/// Compares `poly` with direct circulant evaluation at off-plan points modulo
/// a prime that took no part in the reconstruction.
fn verify_mod(plan: &EvaluationPlan, poly: &IntPolynomial, p: u64) -> Result<()> {
    let field = Field::new(p);
    let shifts = [0, plan.a, plan.b];
    for point in [[2i64, 3, 5], [-7, 11, 13], [17, -1, 4]] {
        let big: Vec<BigInt> = point.iter().map(|&v| BigInt::from(v)).collect();
        let lhs = field.enter_bigint(&poly.eval(&big)?);
        let vals: Vec<u64> = point.iter().map(|&v| field.enter_i64(v)).collect();
        let rhs = circulant_det_mod(&field, plan.d, &shifts, &vals);
        if lhs != rhs {
            return Err(Error::Internal(format!(
                "interpolated determinant disagrees with direct evaluation at {point:?} mod {p}"
            )));
        }
    }
    Ok(())
}

/// Permanent of `Circ(d; 0, a, b)` as the termwise absolute value of the
/// determinant; valid only when `gcd(a, b, d) = 1`.
pub fn per_poly_from_det(d: usize, a: usize, b: usize) -> Result<IntPolynomial> {
    check_hypothesis(d as u64, a as u64, b as u64)?;
    Ok(det_poly_interpolate(d, a, b)?.abs_coeffs())
}

pub fn ryser_permanent(m: &[Vec<BigInt>]) -> Result<BigInt> {
    ryser_permanent_bounded(m, DEFAULT_RYSER_BOUND)
}

/// Ryser's inclusion-exclusion formula, visiting column subsets in Gray-code
/// order so each step updates the row sums by one column.
pub fn ryser_permanent_bounded(m: &[Vec<BigInt>], bound: usize) -> Result<BigInt> {
    let n = m.len();
    if n > bound {
        return Err(Error::ResourceLimit {
            what: "order for Ryser permanent",
            requested: n,
            limit: bound,
        });
    }
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Contract("matrix must be square".into()));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut row_sums = vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    let mut gray: u64 = 0;
    for k in 1u64..(1 << n) {
        let j = k.trailing_zeros() as usize;
        gray ^= 1 << j;
        let adding = gray >> j & 1 == 1;
        for (s, row) in row_sums.iter_mut().zip(m) {
            if adding {
                *s += &row[j];
            } else {
                *s -= &row[j];
            }
        }
        if row_sums.iter().any(Zero::is_zero) {
            continue;
        }
        let prod = row_sums.iter().fold(BigInt::one(), |acc, s| acc * s);
        if gray.count_ones() % 2 == 1 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    Ok(if n % 2 == 1 { -total } else { total })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerMethod {
    Ryser,
    Interp,
}

impl PerMethod {
    pub fn name(self) -> &'static str {
        match self {
            PerMethod::Ryser => "ryser",
            PerMethod::Interp => "interp",
        }
    }
}

/// Permanent of the numeric specialisation `Circ(d; 0, a, b)` at `point`.
pub fn per_eval(
    d: usize,
    a: usize,
    b: usize,
    point: &[BigInt; 3],
    method: PerMethod,
) -> Result<BigInt> {
    Ok(per_eval_many(d, a, b, std::slice::from_ref(point), method)?.remove(0))
}

/// [`per_eval`] at several points, sharing the expensive setup.
pub fn per_eval_many(
    d: usize,
    a: usize,
    b: usize,
    points: &[[BigInt; 3]],
    method: PerMethod,
) -> Result<Vec<BigInt>> {
    match method {
        PerMethod::Ryser => {
            check_triple(d as u64, a as u64, b as u64)?;
            if d > DEFAULT_RYSER_BOUND {
                return Err(Error::ResourceLimit {
                    what: "order for Ryser permanent",
                    requested: d,
                    limit: DEFAULT_RYSER_BOUND,
                });
            }
            let spec = CirculantSpec::three_line(d, a, b)?;
            points
                .iter()
                .map(|pt| ryser_permanent(&spec.numeric_matrix(pt)?))
                .collect()
        }
        PerMethod::Interp => {
            let per = per_poly_from_det(d, a, b)?;
            points.iter().map(|pt| per.eval(pt)).collect()
        }
    }
}

/// One row of a benchmark table.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub d: usize,
    pub a: usize,
    pub b: usize,
    pub method: PerMethod,
    /// `None` when the cell was skipped.
    pub wall_ms: Option<f64>,
    pub value: Option<BigInt>,
    /// Cross-method verdict, present only when another method also ran.
    pub agrees: Option<bool>,
    pub skip_reason: Option<String>,
}

impl BenchRow {
    pub fn is_skipped(&self) -> bool {
        self.wall_ms.is_none()
    }
}

/// Times every method on every `(d, a, b)` cell at `point`. Cells a method
/// cannot handle (Ryser above its bound, interpolation without the gcd
/// hypothesis) are marked skipped.
pub fn bench_matrix(
    cells: &[(usize, usize, usize)],
    methods: &[PerMethod],
    point: &[BigInt; 3],
) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &(d, a, b) in cells {
        let start = rows.len();
        for &method in methods {
            let t0 = Instant::now();
            let res = per_eval(d, a, b, point, method);
            let elapsed = t0.elapsed().as_secs_f64() * 1e3;
            rows.push(match res {
                Ok(v) => BenchRow {
                    d,
                    a,
                    b,
                    method,
                    wall_ms: Some(elapsed),
                    value: Some(v),
                    agrees: None,
                    skip_reason: None,
                },
                Err(e) => BenchRow {
                    d,
                    a,
                    b,
                    method,
                    wall_ms: None,
                    value: None,
                    agrees: None,
                    skip_reason: Some(e.to_string()),
                },
            });
        }
        let ran: Vec<&BigInt> = rows[start..]
            .iter()
            .filter_map(|r| r.value.as_ref())
            .collect();
        if ran.len() >= 2 {
            let verdict = ran.windows(2).all(|w| w[0] == w[1]);
            for r in rows[start..].iter_mut().filter(|r| r.value.is_some()) {
                r.agrees = Some(verdict);
            }
        }
    }
    rows
}

pub const BENCH_CSV_HEADER: &str = "d,a,b,method,wall_ms,agrees";

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(BENCH_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let wall = r.wall_ms.map_or(String::new(), |ms| format!("{ms:.3}"));
        let agrees = match (r.is_skipped(), r.agrees) {
            (true, _) => "skipped".to_string(),
            (false, Some(v)) => v.to_string(),
            (false, None) => String::new(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.d,
            r.a,
            r.b,
            r.method.name(),
            wall,
            agrees
        ));
    }
    out
}
