use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial with integer coefficients in ascending degree order.
///
/// The coefficient vector never has trailing zeros. The zero polynomial is
/// representable (an empty vector) because arithmetic produces it, but the
/// public constructor [`IntPoly::new`] refuses it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let p = Self::from_coeffs(coeffs);
        if p.is_zero() {
            Err(Error::Degenerate)
        } else {
            Ok(p)
        }
    }

    pub(crate) fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `X − a`.
    pub fn linear_root(a: &BigInt) -> Self {
        Self::from_coeffs(vec![-a, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(BigInt::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// `self / content`, normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(&self, divisor: &Self) -> Self {
        self.divrem_monic(divisor).1
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.degree();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            quot[i - d] = c.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] -= &c * dc;
            }
        }
        rem.truncate(d);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Exact division over `Z`; `None` if `divisor` does not divide `self`
    /// with an integral quotient.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero());
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let lc = divisor.leading();
        let d = divisor.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - d + j] -= &q * dc;
            }
            quot[i - d] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::from_coeffs(quot))
    }

    /// A nonzero constant multiple of the remainder of `self` by `b`.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let mut r = self.clone();
        let lc = b.leading();
        let db = b.degree();
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.leading();
            let mut shifted = vec![BigInt::zero(); shift];
            shifted.extend(b.coeffs.iter().map(|c| c * &lr));
            r = r.scale(&lc).sub(&Self::from_coeffs(shifted));
        }
        r
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Square-free decomposition of a primitive polynomial: pairs `(a_i, i)`
    /// with `self = ∏ a_i^i` up to sign, each `a_i` square-free and primitive.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let f = self.primitive_part();
        let mut out = Vec::new();
        if f.degree() == 0 {
            return out;
        }
        let df = f.derivative();
        let b = f.gcd(&df);
        let mut c = f.div_exact(&b).expect("gcd divides f");
        let mut d = df.div_exact(&b).expect("gcd divides f'").sub(&c.derivative());
        let mut i = 1;
        while c.degree() > 0 {
            let a = c.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            c = c.div_exact(&a).expect("gcd divides c");
            d = d.div_exact(&a).expect("gcd divides d").sub(&c.derivative());
            i += 1;
        }
        out
    }

    /// Monic `g` with `g^k = self`.
    pub fn kth_root(&self, k: usize) -> Result<IntPoly> {
        if k == 0 || self.is_zero() || !self.is_monic() || !self.degree().is_multiple_of(k) {
            return Err(Error::NotAPower(k));
        }
        let n = self.degree() / k;
        let nk = self.degree();
        let kk = BigInt::from(k);
        let mut g = vec![BigInt::zero(); n + 1];
        g[n] = BigInt::one();
        for j in 1..=n {
            let partial = IntPoly::from_coeffs(g.clone()).pow(k);
            let diff = self.coeff(nk - j) - partial.coeff(nk - j);
            let (q, r) = diff.div_rem(&kk);
            if !r.is_zero() {
                return Err(Error::NotAPower(k));
            }
            g[n - j] = q;
        }
        let root = IntPoly::from_coeffs(g);
        if root.pow(k) == *self {
            Ok(root)
        } else {
            Err(Error::NotAPower(k))
        }
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
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
