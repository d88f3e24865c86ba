//! r-line circulant matrices and their exhaustive expansions.
//!
//! Variable `t` of every polynomial produced here belongs to the diagonal at
//! `shifts[t]`: entry `(i, j)` of the matrix is that variable exactly when
//! `(j - i) mod d == shifts[t]`. For the 3-line case `(d; 0, a, b)` this means
//! `x` sits on the main diagonal, `y` on shift `a` and `z` on shift `b`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{ExponentVector, IntPolynomial};

/// Default order up to which the full symmetric group is iterated.
pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 9;

/// Largest order the bitmask backtracking supports.
pub const MAX_STEP_ORDER: usize = 128;

/// Order `d` plus the sorted nonzero diagonals of a circulant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct CirculantSpec {
    d: usize,
    shifts: Vec<usize>,
}

#[derive(Deserialize)]
struct RawSpec {
    d: usize,
    shifts: Vec<usize>,
}

impl TryFrom<RawSpec> for CirculantSpec {
    type Error = Error;
    fn try_from(r: RawSpec) -> Result<Self> {
        CirculantSpec::new(r.d, r.shifts)
    }
}

impl CirculantSpec {
    pub fn new(d: usize, shifts: Vec<usize>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Contract("matrix order must be positive".into()));
        }
        if shifts.is_empty() || shifts.len() > d {
            return Err(Error::Contract(format!(
                "need between 1 and {d} shifts, got {}",
                shifts.len()
            )));
        }
        if shifts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Contract(format!(
                "shifts must be strictly increasing: {shifts:?}"
            )));
        }
        if let Some(&s) = shifts.iter().find(|&&s| s >= d) {
            return Err(Error::Contract(format!("shift {s} outside [0, {d})")));
        }
        Ok(CirculantSpec { d, shifts })
    }

    /// `(d; 0, a, b)`.
    pub fn three_line(d: usize, a: usize, b: usize) -> Result<Self> {
        if !(1 <= a && a < b && b < d) {
            return Err(Error::Contract(format!(
                "3-line circulant needs 1 <= a < b <= d-1, got d={d}, a={a}, b={b}"
            )));
        }
        Self::new(d, vec![0, a, b])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn shifts(&self) -> &[usize] {
        &self.shifts
    }

    pub fn nvars(&self) -> usize {
        self.shifts.len()
    }

    /// `index[k] = Some(t)` when `shifts[t] == k`.
    fn shift_index(&self) -> Vec<Option<usize>> {
        let mut idx = vec![None; self.d];
        for (t, &s) in self.shifts.iter().enumerate() {
            idx[s] = Some(t);
        }
        idx
    }

    /// The `d x d` grid: `Some(t)` for variable `t`, `None` for a structural zero.
    pub fn build_matrix(&self) -> Vec<Vec<Option<usize>>> {
        let idx = self.shift_index();
        (0..self.d)
            .map(|i| {
                (0..self.d)
                    .map(|j| idx[(j + self.d - i) % self.d])
                    .collect()
            })
            .collect()
    }

    /// The numeric specialisation with `values[t]` on diagonal `shifts[t]`.
    pub fn numeric_matrix(&self, values: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
        if values.len() != self.nvars() {
            return Err(Error::Arity {
                expected: self.nvars(),
                found: values.len(),
            });
        }
        Ok(self
            .build_matrix()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| e.map_or_else(BigInt::default, |t| values[t].clone()))
                    .collect()
            })
            .collect())
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.shifts.iter().map(|s| s.to_string()).collect();
        write!(f, "({}; {})", self.d, s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Det,
    Per,
}

/// Expands the determinant or permanent by iterating all of `S_d`.
pub fn leibniz_expand(spec: &CirculantSpec, mode: Mode) -> Result<IntPolynomial> {
    leibniz_expand_bounded(spec, mode, DEFAULT_BRUTE_FORCE_BOUND)
}

pub fn leibniz_expand_bounded(
    spec: &CirculantSpec,
    mode: Mode,
    bound: usize,
) -> Result<IntPolynomial> {
    let d = spec.d();
    if d > bound {
        return Err(Error::ResourceLimit {
            what: "order for full permutation iteration",
            requested: d,
            limit: bound,
        });
    }
    let idx = spec.shift_index();
    let r = spec.nvars();
    let mut acc: HashMap<Vec<u32>, i64> = HashMap::new();
    let mut visit = |perm: &[usize], sign: i64| {
        let mut exps = vec![0u32; r];
        for (i, &j) in perm.iter().enumerate() {
            match idx[(j + d - i) % d] {
                Some(t) => exps[t] += 1,
                None => return,
            }
        }
        let contrib = match mode {
            Mode::Det => sign,
            Mode::Per => 1,
        };
        *acc.entry(exps).or_insert(0) += contrib;
    };

    // Heap's algorithm; every swap is a transposition so the sign flips.
    let mut perm: Vec<usize> = (0..d).collect();
    let mut c = vec![0usize; d];
    let mut sign = 1i64;
    visit(&perm, sign);
    let mut i = 1;
    while i < d {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign = -sign;
            visit(&perm, sign);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    IntPolynomial::from_terms(r, acc)
}

/// Statistics of one cycle of a [`StepPermutation`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStats {
    pub elements: Vec<usize>,
    /// How often each shift (by index into the spec's shift list) is used.
    pub step_counts: Vec<usize>,
    /// Sum of the steps along the cycle divided by `d`.
    pub winding: usize,
}

/// A permutation of `0..d` in which `i` moves forward by `steps[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepPermutation {
    d: usize,
    steps: Vec<usize>,
    cycles: Vec<Vec<usize>>,
}

impl StepPermutation {
    pub fn new(d: usize, steps: Vec<usize>) -> Result<Self> {
        if steps.len() != d {
            return Err(Error::Contract(format!(
                "need {d} steps, got {}",
                steps.len()
            )));
        }
        let mut hit = vec![false; d];
        for (i, &s) in steps.iter().enumerate() {
            if s >= d {
                return Err(Error::Contract(format!("step {s} outside [0, {d})")));
            }
            let j = (i + s) % d;
            if hit[j] {
                return Err(Error::Contract(format!(
                    "steps {steps:?} do not define a bijection"
                )));
            }
            hit[j] = true;
        }
        let mut seen = vec![false; d];
        let mut cycles = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = (i + steps[i]) % d;
            }
            cycles.push(cyc);
        }
        Ok(StepPermutation { d, steps, cycles })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn image(&self, i: usize) -> usize {
        (i + self.steps[i]) % self.d
    }

    /// All cycles, fixed points included, each listed from its smallest
    /// element.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles.iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Per-cycle shift usage and winding numbers, relative to `shifts`.
    pub fn cycle_stats(&self, shifts: &[usize]) -> Vec<CycleStats> {
        self.cycles
            .iter()
            .map(|cyc| {
                let mut counts = vec![0; shifts.len()];
                let mut total = 0;
                for &i in cyc {
                    let s = self.steps[i];
                    total += s;
                    if let Some(t) = shifts.iter().position(|&x| x == s) {
                        counts[t] += 1;
                    }
                }
                debug_assert_eq!(total % self.d, 0);
                CycleStats {
                    elements: cyc.clone(),
                    step_counts: counts,
                    winding: total / self.d,
                }
            })
            .collect()
    }

    /// One line of the witness dump: comma-separated steps.
    pub fn to_line(&self) -> String {
        let s: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        s.join(",")
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let steps = line
            .trim()
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad step {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(steps.len(), steps)
    }
}

/// `(A_i, B_i, l_i)` of a nontrivial cycle in a 3-line step permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CycleTriple {
    pub a_count: usize,
    pub b_count: usize,
    pub winding: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleProfile {
    pub cycles: Vec<CycleTriple>,
    pub k: usize,
}

/// Nontrivial-cycle statistics of `sp` with respect to steps `a` and `b`.
/// Fixed points are left out.
pub fn cycle_profile(sp: &StepPermutation, a: usize, b: usize) -> CycleProfile {
    let cycles: Vec<CycleTriple> = sp
        .cycle_stats(&[a, b])
        .into_iter()
        .filter(|c| c.elements.len() > 1)
        .map(|c| CycleTriple {
            a_count: c.step_counts[0],
            b_count: c.step_counts[1],
            winding: c.winding,
        })
        .collect();
    let k = cycles.len();
    CycleProfile { cycles, k }
}

/// Result of counting the step permutations behind one monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCount {
    pub det_coeff: BigInt,
    pub per_coeff: BigInt,
    pub witnesses: Option<Vec<StepPermutation>>,
}

struct Backtrack<'a> {
    d: usize,
    shifts: &'a [usize],
    steps: Vec<usize>,
    used: u128,
}

impl Backtrack<'_> {
    fn new(spec: &CirculantSpec) -> Result<Backtrack<'_>> {
        if spec.d() > MAX_STEP_ORDER {
            return Err(Error::ResourceLimit {
                what: "order for step enumeration",
                requested: spec.d(),
                limit: MAX_STEP_ORDER,
            });
        }
        Ok(Backtrack {
            d: spec.d(),
            shifts: spec.shifts(),
            steps: Vec::with_capacity(spec.d()),
            used: 0,
        })
    }

    fn sign(&self) -> i32 {
        let mut seen: u128 = 0;
        let mut transpositions = 0usize;
        for start in 0..self.d {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut i = start;
            let mut len = 0;
            while seen >> i & 1 == 0 {
                seen |= 1 << i;
                i = (i + self.steps[i]) % self.d;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Visits every bijective step assignment. With `remaining` set, shift
    /// `t` must be used exactly `remaining[t]` times.
    fn run(&mut self, remaining: &mut Option<Vec<usize>>, leaf: &mut dyn FnMut(&Self)) {
        let row = self.steps.len();
        if row == self.d {
            leaf(self);
            return;
        }
        for t in 0..self.shifts.len() {
            if let Some(rem) = remaining.as_ref() {
                if rem[t] == 0 {
                    continue;
                }
            }
            let s = self.shifts[t];
            let col = (row + s) % self.d;
            if self.used >> col & 1 == 1 {
                continue;
            }
            if let Some(rem) = remaining.as_mut() {
                rem[t] -= 1;
            }
            self.used |= 1 << col;
            self.steps.push(s);
            self.run(remaining, leaf);
            self.steps.pop();
            self.used &= !(1 << col);
            if let Some(rem) = remaining.as_mut() {
                rem[t] += 1;
            }
        }
    }
}

/// Signed and unsigned counts of the step assignments whose multiset of
/// shifts is `target` (shift `t` used `target[t]` times).
pub fn step_enumerate(
    spec: &CirculantSpec,
    target: &[u32],
    keep_witnesses: bool,
) -> Result<StepCount> {
    if target.len() != spec.nvars() {
        return Err(Error::Arity {
            expected: spec.nvars(),
            found: target.len(),
        });
    }
    let total: u64 = target.iter().map(|&e| e as u64).sum();
    if total != spec.d() as u64 {
        return Err(Error::Contract(format!(
            "target exponents sum to {total}, expected {}",
            spec.d()
        )));
    }
    let mut bt = Backtrack::new(spec)?;
    let mut det: i128 = 0;
    let mut per: u128 = 0;
    let mut witnesses = keep_witnesses.then(Vec::new);
    let d = spec.d();
    let mut remaining = Some(target.iter().map(|&e| e as usize).collect());
    bt.run(&mut remaining, &mut |b| {
        det += b.sign() as i128;
        per += 1;
        if let Some(w) = witnesses.as_mut() {
            w.push(
                StepPermutation::new(d, b.steps.clone()).expect("backtracking yields bijections"),
            );
        }
    });
    Ok(StepCount {
        det_coeff: det.into(),
        per_coeff: per.into(),
        witnesses,
    })
}

/// Determinant and permanent expanded by enumerating every bijective step
/// assignment once. Cost is proportional to the permanent at all-ones.
pub fn step_expand(spec: &CirculantSpec) -> Result<(IntPolynomial, IntPolynomial)> {
    let mut bt = Backtrack::new(spec)?;
    let r = spec.nvars();
    let shifts = spec.shifts().to_vec();
    let mut acc: HashMap<Vec<u32>, (i128, u128)> = HashMap::new();
    bt.run(&mut None, &mut |b| {
        let mut exps = vec![0u32; r];
        for &s in &b.steps {
            let t = shifts
                .iter()
                .position(|&x| x == s)
                .expect("step is a shift");
            exps[t] += 1;
        }
        let e = acc.entry(exps).or_insert((0, 0));
        e.0 += b.sign() as i128;
        e.1 += 1;
    });
    let det =
        IntPolynomial::from_terms(r, acc.iter().map(|(m, c)| (m.clone(), BigInt::from(c.0))))?;
    let per = IntPolynomial::from_terms(r, acc.into_iter().map(|(m, c)| (m, BigInt::from(c.1))))?;
    Ok((det, per))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpandMethod {
    Leibniz,
    Step,
}

/// `(D, P)`: the number of monomials in the determinant and the permanent.
pub fn support_counts(spec: &CirculantSpec, method: ExpandMethod) -> Result<(usize, usize)> {
    let (det, per) = match method {
        ExpandMethod::Leibniz => (
            leibniz_expand(spec, Mode::Det)?,
            leibniz_expand(spec, Mode::Per)?,
        ),
        ExpandMethod::Step => step_expand(spec)?,
    };
    Ok((det.num_terms(), per.num_terms()))
}

/// Closed form of `det Circ(d; 0, a)` for `a | d`, in variables `(x, y)`.
pub fn two_lines_det(d: usize, a: usize) -> Result<IntPolynomial> {
    if a == 0 || a >= d || !d.is_multiple_of(a) {
        return Err(Error::Contract(format!(
            "two-line formula needs 0 < a < d and a | d, got d={d}, a={a}"
        )));
    }
    let q = d / a;
    let mut p = IntPolynomial::zero(2);
    for s in 0..=a {
        let mut c = binomial(BigInt::from(a), BigInt::from(s));
        if ((a - s) * (q - 1)) % 2 == 1 {
            c = -c;
        }
        p.add_term(
            ExponentVector::new(vec![(q * s) as u32, (q * (a - s)) as u32]),
            c,
        );
    }
    Ok(p)
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|i| i * i <= n)
            .all(|i| !n.is_multiple_of(i))
}

/// The monomial of the full order-`pq` circulant whose determinant
/// coefficient vanishes while its permanent coefficient does not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingMonomial {
    pub p: u64,
    pub q: u64,
    pub d: usize,
    pub lambda: u64,
    pub mu: u64,
    /// `exponents[j]` is the exponent of the variable on diagonal `j`.
    pub exponents: Vec<u32>,
}

impl VanishingMonomial {
    /// The same monomial over the circulant restricted to the diagonals it
    /// actually uses (the other variables appear with exponent zero).
    pub fn restricted(&self) -> (CirculantSpec, Vec<u32>) {
        let shifts: Vec<usize> = (0..self.d).filter(|&j| self.exponents[j] > 0).collect();
        let target = shifts.iter().map(|&j| self.exponents[j]).collect();
        let spec = CirculantSpec::new(self.d, shifts).expect("support lies in [0, d)");
        (spec, target)
    }
}

/// Builds the exponent vector from the Bezout relation `lambda q = 1 + mu p`,
/// taking the smallest admissible `lambda`.
pub fn construct_vanishing_monomial(p: u64, q: u64) -> Result<VanishingMonomial> {
    if !is_prime(p) || !is_prime(q) || p >= q {
        return Err(Error::Contract(format!(
            "need primes p < q, got p={p}, q={q}"
        )));
    }
    let d = p * q;
    let lambda = (1..p)
        .find(|l| (l * q) % p == 1)
        .ok_or_else(|| Error::Internal(format!("no inverse of {q} mod {p}")))?;
    let mu = (lambda * q - 1) / p;
    if mu < 1 || lambda * q >= d {
        return Err(Error::Contract(format!(
            "Bezout pair lambda={lambda}, mu={mu} violates 1 <= lambda, mu and lambda*q < d"
        )));
    }
    let mp = mu * p;
    if mp + 2 > d || mp < 1 || mu * lambda > mp + 1 {
        return Err(Error::Contract(format!(
            "index bounds fail for lambda={lambda}, mu={mu}"
        )));
    }
    let positions = [d - mp, mp - mu * lambda + 1, d - mp + lambda * mu];
    let mut seen = vec![0usize, 1];
    for &pos in &positions {
        if pos >= d || seen.contains(&(pos as usize)) {
            return Err(Error::Contract(format!(
                "diagonal positions {positions:?} collide or leave [2, {d})"
            )));
        }
        seen.push(pos as usize);
    }
    let mut exponents = vec![0u32; d as usize];
    exponents[0] = (d - mp - 2) as u32;
    exponents[1] = (mp - 1) as u32;
    for &pos in &positions {
        exponents[pos as usize] = 1;
    }
    let sum: u64 = exponents.iter().map(|&e| e as u64).sum();
    let weighted: u64 = exponents
        .iter()
        .enumerate()
        .map(|(j, &e)| j as u64 * e as u64)
        .sum();
    if sum != d || !weighted.is_multiple_of(d) {
        return Err(Error::Internal(format!(
            "constructed exponents fail sum/weight checks: sum={sum}, weighted={weighted}"
        )));
    }
    Ok(VanishingMonomial {
        p,
        q,
        d: d as usize,
        lambda,
        mu,
        exponents,
    })
}

/// The order-6 four-line witness: `x z^2 u v^2` in `Circ(x,0,z,0,u,v)`.
pub fn four_line_witness() -> (CirculantSpec, Vec<u32>) {
    (
        CirculantSpec::new(6, vec![0, 2, 4, 5]).expect("valid spec"),
        vec![1, 2, 1, 2],
    )
}
