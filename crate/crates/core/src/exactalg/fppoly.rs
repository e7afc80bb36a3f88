//! Polynomials over a prime field and their factorization by square-free
//! decomposition, distinct-degree splitting and Cantor–Zassenhaus.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, PrimeField};
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Polynomial over `F_p`, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let p = field.modulus();
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { field, coeffs }
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.reduce_i64(c)).collect())
    }

    pub fn from_int_poly(field: PrimeField, f: &IntPoly) -> Self {
        Self::new(field, f.coeffs().iter().map(|c| field.from_int(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        FpPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Self::new(field, vec![1])
    }

    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Symmetric integer lift of each coefficient.
    pub fn lift(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|&c| BigInt::from(self.field.lift(c))).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.leading());
        self.scale(inv)
    }

    pub fn scale(&self, s: u64) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|c| f.mul(c, &s)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.add(&self.c(i), &other.c(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(f, (0..n).map(|i| f.sub(&self.c(i), &other.c(i))).collect())
    }

    fn c(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let f = self.field;
        let d = divisor.degree();
        if self.coeffs.len() <= d {
            return (Self::zero(f), self.clone());
        }
        let inv = f.inv(&divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i] == 0 {
                continue;
            }
            let q = f.mul(&rem[i], &inv);
            quot[i - d] = q;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] = f.sub(&rem[i - d + j], &f.mul(&q, dc));
            }
        }
        rem.truncate(d);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    pub fn div(&self, divisor: &Self) -> Self {
        self.divrem(divisor).0
    }

    /// Monic gcd; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let fld = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(fld), Self::zero(fld));
        let (mut t0, mut t1) = (Self::zero(fld), Self::one(fld));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = fld.inv(&r0.leading());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        Self::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| f.mul(c, &(i as u64 % f.modulus())))
                .collect(),
        )
    }

    /// `self^exp mod modulus`.
    pub fn powmod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let mut acc = Self::one(self.field).rem(modulus);
        let base = self.rem(modulus);
        for i in (0..exp.bits()).rev() {
            acc = acc.mul(&acc).rem(modulus);
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        self.coeffs.iter().rev().fold(0, |acc, c| f.add(&f.mul(&acc, &x), c))
    }

    /// For `self = g(X^p)`, returns `g` (Frobenius is the identity on `F_p`).
    fn pth_root(&self) -> Self {
        let p = self.field.modulus() as usize;
        Self::new(self.field, self.coeffs.iter().step_by(p).copied().collect())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.field.modulus())
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 || *c != 1 {
                write!(f, "{c}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Factorization over `F_p`: `leading · ∏ factor^multiplicity` with monic
/// irreducible factors sorted by degree, then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpFactorization {
    pub leading: u64,
    pub factors: Vec<(FpPoly, usize)>,
}

impl FpFactorization {
    pub fn expand(&self, field: PrimeField) -> FpPoly {
        self.factors
            .iter()
            .fold(FpPoly::new(field, vec![self.leading]), |acc, (g, e)| {
                (0..*e).fold(acc, |a, _| a.mul(g))
            })
    }

    /// Roots of the linear factors, with multiplicity.
    pub fn roots(&self) -> Vec<(u64, usize)> {
        self.factors
            .iter()
            .filter(|(g, _)| g.degree() == 1)
            .map(|(g, e)| (g.field.neg(&g.coeffs[0]), *e))
            .collect()
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> usize {
        self.factors.iter().map(|(_, e)| e).sum()
    }
}

pub fn factor_over_prime_field(f: &FpPoly) -> Result<FpFactorization> {
    if f.is_zero() {
        return Err(Error::Degenerate);
    }
    let field = f.field;
    let leading = f.leading();
    let mut rng = ChaCha8Rng::seed_from_u64(field.modulus() ^ ((f.degree() as u64) << 40));
    let mut factors: Vec<(FpPoly, usize)> = Vec::new();
    for (sqf, mult) in squarefree(&f.monic()) {
        for (block, d) in distinct_degree(&sqf) {
            let mut pieces = Vec::new();
            equal_degree(&block, d, &mut rng, &mut pieces);
            factors.extend(pieces.into_iter().map(|g| (g, mult)));
        }
    }
    // merge duplicates that arose from different square-free layers
    factors.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
    let mut merged: Vec<(FpPoly, usize)> = Vec::new();
    for (g, e) in factors {
        match merged.last_mut() {
            Some((h, m)) if *h == g => *m += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(FpFactorization {
        leading,
        factors: merged,
    })
}

fn squarefree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    if f.degree() == 0 {
        return out;
    }
    let p = f.field.modulus() as usize;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div(&y);
        if fac.degree() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.div(&w);
        i += 1;
    }
    if c.degree() > 0 {
        for (g, j) in squarefree(&c.pth_root().monic()) {
            out.push((g, j * p));
        }
    }
    out
}

/// Split a monic square-free polynomial into products of irreducibles of a
/// common degree.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let field = f.field;
    let p = BigUint::from(field.modulus());
    let x = FpPoly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree() >= 2 * d {
        h = h.powmod(&p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree() > 0 {
        let deg = rest.degree();
        out.push((rest, deg));
    }
    out
}

fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    if f.degree() == d {
        out.push(f.monic());
        return;
    }
    let field = f.field;
    let p = field.modulus();
    let n = f.degree();
    loop {
        let a = FpPoly::new(field, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree() == 0 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + … + a^(2^(d−1))
            let mut term = a.rem(f);
            let mut acc = term.clone();
            for _ in 1..d {
                term = term.mul(&term).rem(f);
                acc = acc.add(&term);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
            a.powmod(&e, f).sub(&FpPoly::one(field))
        };
        let g = f.gcd(&b);
        if g.degree() > 0 && g.degree() < n {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.div(&g), d, rng, out);
            return;
        }
    }
}

/// True when `f` has no nontrivial factorization over `F_p`.
pub fn is_irreducible(f: &FpPoly) -> bool {
    f.degree() >= 1 && factor_over_prime_field(f).map(|fac| fac.count() == 1).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn x2_plus_1_mod_5_splits() {
        let f = PrimeField::new(5);
        let fac = factor_over_prime_field(&FpPoly::from_i64(f, &[1, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(FpPoly::from_i64(f, &[2, 1]), 1), (FpPoly::from_i64(f, &[3, 1]), 1)]
        );
        let mut roots: Vec<u64> = fac.roots().into_iter().map(|r| r.0).collect();
        roots.sort();
        assert_eq!(roots, vec![2, 3]);
    }

    #[test]
    fn x2_plus_1_mod_7_irreducible() {
        let f = PrimeField::new(7);
        assert!(is_irreducible(&FpPoly::from_i64(f, &[1, 0, 1])));
    }

    #[test]
    fn x_squared_mod_3() {
        let f = PrimeField::new(3);
        let fac = factor_over_prime_field(&FpPoly::from_i64(f, &[0, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(FpPoly::x(f), 2)]);
    }

    #[test]
    fn inseparable_power_mod_2() {
        // (X^2 + X + 1)^2 = X^4 + X^2 + 1 over F_2 has zero derivative.
        let f = PrimeField::new(2);
        let g = FpPoly::from_i64(f, &[1, 1, 1]);
        let fac = factor_over_prime_field(&g.mul(&g)).unwrap();
        assert_eq!(fac.factors, vec![(g, 2)]);
    }

    #[test]
    fn zero_rejected() {
        let f = PrimeField::new(3);
        assert!(factor_over_prime_field(&FpPoly::zero(f)).is_err());
    }

    /// Irreducibility oracle by trial division with every monic polynomial of
    /// degree at most half.
    fn irreducible_by_search(g: &FpPoly) -> bool {
        let field = g.field();
        let p = field.modulus();
        let n = g.degree();
        for d in 1..=n / 2 {
            let total = p.pow(d as u32);
            for code in 0..total {
                let mut c = Vec::with_capacity(d + 1);
                let mut k = code;
                for _ in 0..d {
                    c.push(k % p);
                    k /= p;
                }
                c.push(1);
                if g.rem(&FpPoly::new(field, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    proptest! {
        #[test]
        fn factors_multiply_back_and_are_irreducible(
            p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
            coeffs in proptest::collection::vec(0u64..11, 2..8),
        ) {
            let field = PrimeField::new(p);
            let f = FpPoly::new(field, coeffs);
            prop_assume!(f.degree() >= 1);
            let fac = factor_over_prime_field(&f).unwrap();
            prop_assert_eq!(fac.expand(field), f);
            for (g, _) in &fac.factors {
                prop_assert!(irreducible_by_search(g));
            }
        }
    }
}
