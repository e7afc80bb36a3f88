//! Dense matrices over an exact field: the rationals or a prime field.
//!
//! Both fields share one Gaussian-elimination code path through the
//! [`Field`] trait. The field value is carried by every matrix so that
//! prime-field matrices know their modulus.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::intmatrix::IntMatrix;

pub trait Field: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, a: &BigInt) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, a: i64) -> Self::Elem {
        self.from_int(&BigInt::from(a))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_int(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
}

/// The field `Z/pZ`. Arithmetic goes through `u128` so any `p < 2^64` works.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Panics unless `p` is prime.
    pub fn new(p: u64) -> Self {
        assert!(crate::rfgrowth::primes::is_prime(p), "{p} is not prime");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64 % self.p;
        let mut b = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            exp >>= 1;
        }
        acc
    }

    /// Symmetric lift of a residue into `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(!(*a).is_multiple_of(self.p), "inverse of zero");
        let (g, x, _) = egcd(*a as i128, self.p as i128);
        debug_assert_eq!(g, 1);
        x.rem_euclid(self.p as i128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        (*a).is_multiple_of(self.p)
    }
    fn from_int(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq)]
pub struct FieldMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

pub type RatMatrix = FieldMatrix<Rationals>;
pub type FpMatrix = FieldMatrix<PrimeField>;

impl<F: Field> fmt::Debug for FieldMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl<F: Field> FieldMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        FieldMatrix {
            data: vec![z; rows * cols],
            field,
            rows,
            cols,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_vec(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FieldMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: F, rows: &[Vec<F::Elem>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data: Vec<_> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols);
                r.iter().cloned()
            })
            .collect();
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: F, n: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_int_matrix(field: F, m: &IntMatrix) -> Self {
        let data = m.entries().iter().map(|x| field.from_int(x)).collect();
        Self::from_vec(field, m.rows(), m.cols(), data)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> Vec<F::Elem> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }
    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = f.mul(a, other.get(k, j));
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &prod);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(self.get(i, k), &v[k]))))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| op(&self.field, a, b))
            .collect();
        Self::from_vec(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Self::from_vec(self.field.clone(), self.rows, self.cols, data)
    }

    /// `self - λ·I`.
    pub fn shift(&self, lambda: &F::Elem) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = self.field.sub(out.get(i, i), lambda);
            out.set(i, i, v);
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut acc = Self::identity(self.field.clone(), self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Evaluate a polynomial (ascending coefficients) at this matrix.
    pub fn eval_poly(&self, coeffs: &[F::Elem]) -> Self {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut acc = Self::zeros(self.field.clone(), n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : self·x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(self.field.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(self.field.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Solve `self · X = rhs`; `None` when inconsistent. When the solution is
    /// not unique, free variables are set to zero.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let f = &self.field;
        let (n, k) = (self.cols, rhs.cols);
        let mut aug = Self::zeros(f.clone(), self.rows, n + k);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..k {
                aug.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Self::zeros(f.clone(), n, k);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..k {
                x.set(pc, j, r.get(row, n + j).clone());
            }
        }
        Some(x)
    }

    /// Minimal polynomial (monic, ascending coefficients): the first linear
    /// dependency among `I, M, M², …`.
    pub fn minpoly(&self) -> Vec<F::Elem> {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let n = self.rows;
        let mut powers = vec![Self::identity(f.clone(), n)];
        loop {
            let next = powers.last().unwrap().mul(self);
            powers.push(next);
            let d = powers.len() - 1;
            let cols: Vec<Vec<F::Elem>> = powers.iter().map(|p| p.data.clone()).collect();
            let system = Self::from_columns(f.clone(), n * n, &cols);
            let kernel = system.kernel();
            if let Some(v) = kernel.iter().find(|v| !f.is_zero(&v[d])) {
                let inv = f.inv(&v[d]);
                return v.iter().map(|x| f.mul(x, &inv)).collect();
            }
        }
    }
}

impl RatMatrix {
    /// Convert back to integers; `None` if some entry is not integral.
    pub fn to_int_matrix(&self) -> Option<IntMatrix> {
        let entries: Option<Vec<BigInt>> = self
            .data
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect();
        entries.map(|e| IntMatrix::from_entries(self.rows, self.cols, e))
    }

    /// Smallest positive integer clearing every denominator.
    pub fn common_denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom())).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, rows: &[&[i64]]) -> FpMatrix {
        let f = PrimeField::new(p);
        let rows: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| f.reduce_i64(x)).collect())
            .collect();
        FpMatrix::from_rows(f, &rows)
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let m = fp(5, &[&[0, 0], &[0, 0]]);
        assert_eq!(m.kernel().len(), 2);
    }

    #[test]
    fn kernel_of_identity_over_q_is_empty() {
        let m = RatMatrix::identity(Rationals, 3);
        assert!(m.kernel().is_empty());
    }

    #[test]
    fn eigenvector_of_rotation_mod_5() {
        // 2^2 = -1 mod 5, so 2 is an eigenvalue of the quarter turn.
        let m = fp(5, &[&[0, -1], &[1, 0]]);
        let k = m.shift(&2).kernel();
        assert_eq!(k.len(), 1);
        // span{(1, 3)}: (1,3) is a multiple of the computed vector
        let v = &k[0];
        let f = PrimeField::new(5);
        let scale = f.inv(&v[0]);
        assert_eq!(vec![f.mul(&v[0], &scale), f.mul(&v[1], &scale)], vec![1, 3]);
    }

    #[test]
    fn inverse_and_solve_agree() {
        let f = Rationals;
        let m = RatMatrix::from_int_matrix(f, &IntMatrix::from_i64(&[&[2, 1], &[1, 1]]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(f, 2));
        let x = m.solve(&RatMatrix::identity(f, 2)).unwrap();
        assert_eq!(x, inv);
        let singular = RatMatrix::from_int_matrix(f, &IntMatrix::from_i64(&[&[1, 1], &[1, 1]]));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn minpoly_of_rotation_mod_7() {
        let m = fp(7, &[&[0, -1], &[1, 0]]);
        assert_eq!(m.minpoly(), vec![1, 0, 1]);
    }
}
