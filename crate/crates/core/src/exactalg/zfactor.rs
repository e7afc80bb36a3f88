//! Factorization in `Z[X]`: square-free decomposition, factorization modulo a
//! small prime, quadratic Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, PrimeField};
use super::fppoly::{factor_over_prime_field, FpPoly};
use super::poly::IntPoly;
use crate::error::{Error, Result};
use crate::rfgrowth::primes::is_prime;

/// `unit · ∏ factor^multiplicity`, where `unit` is the signed content and
/// each factor is primitive, irreducible over `Q`, with positive leading
/// coefficient. Factors are sorted by degree, then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntFactorization {
    pub unit: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl IntFactorization {
    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.unit.clone()), |acc, (g, e)| acc.mul(&g.pow(*e)))
    }

    /// True when the input was a single irreducible (up to its content).
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor_over_integers(f: &IntPoly) -> Result<IntFactorization> {
    if f.is_zero() {
        return Err(Error::Degenerate);
    }
    let mut unit = f.content();
    if f.leading().is_negative() {
        unit = -unit;
    }
    let mut factors = Vec::new();
    for (part, mult) in f.primitive_part().squarefree_decomposition() {
        for g in zassenhaus(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
    Ok(IntFactorization { unit, factors })
}

/// Irreducible factors of a primitive square-free polynomial.
fn zassenhaus(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.leading();
    let (field, modular) = choose_prime(f);
    let p = BigInt::from(field.modulus());
    let fac = factor_over_prime_field(&modular).expect("nonzero modular image");
    let locals: Vec<FpPoly> = fac.factors.into_iter().map(|(g, _)| g).collect();
    if locals.len() == 1 {
        return vec![f.clone()];
    }

    let max_coeff = f.coeffs().iter().map(|c| c.abs()).max().unwrap();
    let bound = (BigInt::one() << n) * BigInt::from(n + 1) * max_coeff * lc.abs();
    let mut modulus = p.clone();
    let mut exponent = 1u32;
    while modulus <= &bound * 2 {
        modulus *= &p;
        exponent += 1;
    }
    let lifted = hensel_lift(f, &locals, &p, exponent);
    recombine(f, lifted, &modulus)
}

fn choose_prime(f: &IntPoly) -> (PrimeField, FpPoly) {
    let lc = f.leading();
    let mut candidate = 3u64;
    loop {
        if is_prime(candidate) && !(&lc % candidate).is_zero() {
            let field = PrimeField::new(candidate);
            let g = FpPoly::from_int_poly(field, f);
            if g.gcd(&g.derivative()).is_one() {
                return (field, g);
            }
        }
        candidate += 2;
    }
}

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::from_coeffs(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1;
    IntPoly::from_coeffs(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Lift `f ≡ lc(f) · ∏ locals (mod p)` to monic factors modulo `p^exponent`.
fn hensel_lift(f: &IntPoly, locals: &[FpPoly], p: &BigInt, exponent: u32) -> Vec<IntPoly> {
    let q = p.pow(exponent);
    let field = locals[0].field();
    if locals.len() == 1 {
        let lc = f.leading().mod_floor(&q);
        let inv = lc.modinv(&q).expect("leading coefficient invertible modulo p");
        return vec![reduce(&f.scale(&inv), &q)];
    }
    let k = locals.len() / 2;
    let lc_p = field.from_int(&f.leading());
    let g0 = locals[..k]
        .iter()
        .fold(FpPoly::new(field, vec![lc_p]), |acc, u| acc.mul(u));
    let h0 = locals[k..].iter().fold(FpPoly::one(field), |acc, u| acc.mul(u));
    let (one, s0, _) = g0.xgcd(&h0);
    debug_assert!(one.is_one(), "local factors must be coprime");
    let s0 = s0.rem(&h0);
    let t0 = FpPoly::one(field).sub(&s0.mul(&g0)).div(&h0);

    let (mut g, mut h, mut s, mut t) = (g0.lift(), h0.lift(), s0.lift(), t0.lift());
    let mut m = p.clone();
    while m < q {
        let m2 = (&m * &m).min(q.clone());
        let e = reduce(&f.sub(&g.mul(&h)), &m2);
        let (qq, r) = reduce(&s.mul(&e), &m2).divrem_monic(&h);
        let g_new = reduce(&g.add(&t.mul(&e)).add(&qq.mul(&g)), &m2);
        let h_new = reduce(&h.add(&r), &m2);
        let b = reduce(
            &s.mul(&g_new).add(&t.mul(&h_new)).sub(&IntPoly::constant(BigInt::one())),
            &m2,
        );
        let (c, d) = reduce(&s.mul(&b), &m2).divrem_monic(&h_new);
        s = reduce(&s.sub(&d), &m2);
        t = reduce(&t.sub(&t.mul(&b)).sub(&c.mul(&g_new)), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    let mut out = hensel_lift(&g, &locals[..k], p, exponent);
    out.extend(hensel_lift(&h, &locals[k..], p, exponent));
    out
}

fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, q: &BigInt) -> Vec<IntPoly> {
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        for subset in Combinations::new(lifted.len(), size) {
            let lc = rest.leading();
            let candidate = subset
                .iter()
                .fold(IntPoly::constant(lc.clone()), |acc, &i| acc.mul(&lifted[i]));
            let candidate = symmetric(&candidate, q).primitive_part();
            if let Some(quot) = rest.div_exact(&candidate) {
                out.push(candidate);
                rest = quot;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    if rest.degree() > 0 {
        out.push(rest.primitive_part());
    }
    out
}

/// Index subsets of `0..n` of a fixed size, in lexicographic order.
struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.clone()?;
        let k = cur.len();
        let mut next = cur.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(cur)
    }
}
