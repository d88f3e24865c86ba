//! Word-sized prime field arithmetic and Chinese remaindering.
//!
//! Used by the multi-modular interpolation route: every residue computed here
//! is lifted back to an exact integer by [`crt_symmetric`] only after the
//! modulus product provably exceeds twice the coefficient bound.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Odd prime below 2^62 with precomputed Montgomery constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Field {
    p: u64,
    /// `-p^{-1} mod 2^64`
    neg_inv: u64,
    /// `2^128 mod p`
    r2: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        assert!(
            p % 2 == 1 && p < 1 << 62,
            "modulus must be odd and below 2^62"
        );
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = (u64::MAX % p + 1) as u128 % p as u128;
        let r2 = (r * r % p as u128) as u64;
        Field {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    /// Plain residue into Montgomery form.
    #[inline]
    pub fn enter(&self, x: u64) -> u64 {
        self.reduce(x as u128 * self.r2 as u128)
    }

    /// Montgomery form back to a plain residue in `[0, p)`.
    #[inline]
    pub fn leave(&self, x: u64) -> u64 {
        self.reduce(x as u128)
    }

    pub fn enter_i64(&self, x: i64) -> u64 {
        let r = x.rem_euclid(self.p as i64) as u64;
        self.enter(r)
    }

    pub fn enter_bigint(&self, x: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((x % &m) + &m) % &m;
        self.enter(u64::try_from(r).expect("residue below p"))
    }

    #[inline]
    pub fn one(&self) -> u64 {
        self.enter(1)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    /// Montgomery forms of `1^{-1}, ..., n^{-1}` at indices `1..=n`.
    pub fn inverses_upto(&self, n: usize) -> Vec<u64> {
        // inv[i] = -(p / i) * inv[p mod i], on plain residues
        let mut plain = vec![0u64; n + 1];
        if n >= 1 {
            plain[1] = 1;
        }
        for i in 2..=n {
            let q = self.p / i as u64;
            let r = (self.p % i as u64) as usize;
            let v = (q as u128 * plain[r] as u128 % self.p as u128) as u64;
            plain[i] = (self.p - v) % self.p;
        }
        plain.into_iter().map(|x| self.enter(x)).collect()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^62 in decreasing order.
pub fn large_primes() -> impl Iterator<Item = u64> {
    let top = (1u64 << 62) - 1;
    (0..).map(move |i| top - 2 * i).filter(|&n| is_prime_u64(n))
}

/// Lifts residues `r_i mod p_i` to the unique integer in
/// `(-M/2, M/2]` with `M = prod p_i` (Garner's mixed radix).
pub fn crt_symmetric(residues: &[u64], primes: &[u64]) -> BigInt {
    assert_eq!(residues.len(), primes.len());
    let mut x = BigUint::zero();
    let mut m = BigUint::one();
    for (&r, &p) in residues.iter().zip(primes) {
        let pb = BigUint::from(p);
        let x_mod = (&x % &pb).to_u64_digits().first().copied().unwrap_or(0);
        let m_mod = (&m % &pb).to_u64_digits().first().copied().unwrap_or(0);
        let diff = (r + p - x_mod % p) % p;
        let t = mul_mod(diff, pow_mod(m_mod, p - 2, p), p);
        x += &m * BigUint::from(t);
        m *= pb;
    }
    let x = BigInt::from(x);
    let m = BigInt::from(m);
    if &x * 2 > m {
        x - m
    } else {
        x
    }
}

/// `det Circ(d; shifts)` with numeric diagonal values, reduced mod `p`,
/// computed as the resultant `Res(s^d - 1, f(s))` with
/// `f(s) = sum_t values[t] s^{shifts[t]}`. Inputs and output are in
/// Montgomery form.
pub fn circulant_det_mod(field: &Field, d: usize, shifts: &[usize], values: &[u64]) -> u64 {
    let deg_f = *shifts.iter().max().expect("at least one shift");
    let mut f = vec![0u64; deg_f + 1];
    for (&s, &v) in shifts.iter().zip(values) {
        f[s] = field.add(f[s], v);
    }
    trim(&mut f);
    if f.is_empty() {
        return 0;
    }
    let one = field.one();
    // g = s^d - 1 reduced mod f, using that f is sparse.
    let mut g = vec![0u64; d + 1];
    g[0] = field.neg(one);
    g[d] = one;
    let mut acc = one;
    let (m, n) = (d, f.len() - 1);
    if n == 0 {
        return field.pow(f[0], m as u64);
    }
    let sparse: Vec<(usize, u64)> = f
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(i, &c)| (i, c))
        .collect();
    let lc_inv = field.inv(f[n]);
    for i in (n..=m).rev() {
        if g[i] == 0 {
            continue;
        }
        let q = field.mul(g[i], lc_inv);
        for &(j, c) in &sparse {
            let k = i - n + j;
            g[k] = field.sub(g[k], field.mul(q, c));
        }
    }
    g.truncate(n);
    trim(&mut g);
    // Res(s^d - 1, f) = (-1)^{mn} Res(f, s^d - 1)
    //                 = (-1)^{mn} lc(f)^{m - deg r} Res(f, r)
    if g.is_empty() {
        return 0;
    }
    if (m * n) % 2 == 1 {
        acc = field.neg(acc);
    }
    acc = field.mul(acc, field.pow(f[n], (m - (g.len() - 1)) as u64));
    acc = field.mul(acc, resultant_dense(field, f, g));
    acc
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Resultant of two nonzero dense polynomials by the Euclidean algorithm.
fn resultant_dense(field: &Field, mut a: Vec<u64>, mut b: Vec<u64>) -> u64 {
    let mut acc = field.one();
    loop {
        let m = a.len() - 1;
        let n = b.len() - 1;
        if n == 0 {
            return field.mul(acc, field.pow(b[0], m as u64));
        }
        let lc_inv = field.inv(b[n]);
        // a <- a mod b
        for i in (n..=m).rev() {
            if a[i] == 0 {
                continue;
            }
            let q = field.mul(a[i], lc_inv);
            for j in 0..n {
                let k = i - n + j;
                a[k] = field.sub(a[k], field.mul(q, b[j]));
            }
            a[i] = 0;
        }
        a.truncate(n);
        trim(&mut a);
        if a.is_empty() {
            return 0;
        }
        let r = a.len() - 1;
        if (m * n) % 2 == 1 {
            acc = field.neg(acc);
        }
        acc = field.mul(acc, field.pow(b[n], (m - r) as u64));
        std::mem::swap(&mut a, &mut b);
    }
}
