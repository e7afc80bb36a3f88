//! Primes in arithmetic progressions and the Chebyshev function.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Deterministic primality for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    // these bases are a proven witness set below 3.3 · 10^24
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// All primes `≤ n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Least prime `p ≡ 1 (mod n)` with `p ∤ m`, searching `p ≤ bound`.
pub fn smallest_valid_prime(m: &BigInt, n: u64, bound: u64) -> Result<u64> {
    if !m.is_positive() || n == 0 {
        return Err(Error::Invalid(format!(
            "smallest_valid_prime needs m ≥ 1 and n ≥ 1, got m = {m}, n = {n}"
        )));
    }
    primes_one_mod(n, bound)
        .find(|&p| !(m % p).is_zero())
        .ok_or(Error::SearchBoundExceeded(bound))
}

/// The `count` smallest primes `≡ 1 (mod n)` below `bound`.
pub fn first_primes_one_mod(n: u64, count: usize, bound: u64) -> Result<Vec<u64>> {
    let found: Vec<u64> = primes_one_mod(n, bound).take(count).collect();
    if found.len() < count {
        return Err(Error::PrimeSearchFailed(bound));
    }
    Ok(found)
}

/// Primes `≡ 1 (mod n)` in increasing order up to `bound`.
pub fn primes_one_mod(n: u64, bound: u64) -> impl Iterator<Item = u64> {
    let n = n.max(1);
    let start = if n == 1 { 2 } else { n + 1 };
    let step = if n == 1 { 1 } else { n };
    (0..)
        .map(move |i: u64| start + i * step)
        .take_while(move |&q| q <= bound)
        .filter(|&q| is_prime(q))
}

/// `lcm(1, …, s)`.
pub fn lcm_upto(s: u64) -> BigInt {
    let mut l = BigInt::one();
    for p in primes_up_to(s) {
        let mut q = p;
        while q.checked_mul(p).is_some_and(|x| x <= s) {
            q *= p;
        }
        l *= q;
    }
    l
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().expect("64-bit").ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ψ(s) = log lcm(1, …, s)`.
pub fn chebyshev_psi(s: u64) -> f64 {
    ln_big(&lcm_upto(s))
}

/// Empirical envelope `p(s) ≤ a · log lcm(1..s) + b` for the least prime
/// `p ≡ 1 (mod n)` not dividing `lcm(1..s)`.
#[derive(Clone, Debug)]
pub struct PrimeBoundFit {
    pub a: f64,
    pub b: f64,
    /// Largest positive deviation of a sample above the least-squares line;
    /// `b` already includes it, so every sample satisfies the envelope.
    pub max_residual: f64,
    /// `(s, log lcm(1..s), p)`.
    pub samples: Vec<(u64, f64, u64)>,
}

impl PrimeBoundFit {
    pub fn bound(&self, log_m: f64) -> f64 {
        self.a * log_m + self.b
    }

    pub fn holds(&self) -> bool {
        self.samples.iter().all(|&(_, lm, p)| p as f64 <= self.bound(lm) + 1e-9)
    }
}

pub fn fit_prime_bound(s_max: u64, n: u64, search_bound: u64) -> Result<PrimeBoundFit> {
    if s_max < 2 {
        return Err(Error::InsufficientData("need s_max ≥ 2".into()));
    }
    let mut samples = Vec::new();
    let mut lcm = BigInt::one();
    for s in 1..=s_max {
        lcm = lcm.lcm(&BigInt::from(s));
        let p = smallest_valid_prime(&lcm, n, search_bound)?;
        samples.push((s, ln_big(&lcm), p));
    }
    let len = samples.len() as f64;
    let mx = samples.iter().map(|t| t.1).sum::<f64>() / len;
    let my = samples.iter().map(|t| t.2 as f64).sum::<f64>() / len;
    let sxx: f64 = samples.iter().map(|t| (t.1 - mx).powi(2)).sum();
    let sxy: f64 = samples.iter().map(|t| (t.1 - mx) * (t.2 as f64 - my)).sum();
    let a = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let b0 = my - a * mx;
    let max_residual = samples
        .iter()
        .map(|t| t.2 as f64 - (a * t.1 + b0))
        .fold(0.0f64, f64::max);
    Ok(PrimeBoundFit {
        a,
        b: b0 + max_residual,
        max_residual,
        samples,
    })
}
