use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{FieldMatrix, FpMatrix, PrimeField, RatMatrix, Rationals};
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Exact integer matrix, row-major. Never empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|x| x.to_string().len()).max().unwrap_or(1);
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.get(r, c).to_string())?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl IntMatrix {
    /// Build from row-major entries. Rejects empty shapes.
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Degenerate);
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub(crate) fn from_entries(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert!(rows > 0 && cols > 0 && data.len() == rows * cols);
        IntMatrix { rows, cols, data }
    }

    /// Convenience constructor from nested `i64` rows. Panics on ragged or
    /// empty input, so it is meant for literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows[0].len();
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&x| BigInt::from(x))
            })
            .collect();
        Self::from_entries(rows.len(), cols, data)
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged matrix".into()));
        }
        Self::new(rows.len(), cols, rows.iter().flatten().cloned().collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, BigInt::one())
    }

    pub fn scalar(n: usize, s: BigInt) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_entries(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn diag(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            m.data[i * n + i] = BigInt::from(e);
        }
        m
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut m = Self::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    /// Entries as `i64` rows, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self::from_entries(self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Self::from_entries(self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let data = self.data.iter().map(|a| a * s).collect();
        Self::from_entries(self.rows, self.cols, data)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
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

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// `Σ coeffs[i] · M^i`.
    pub fn eval_poly(&self, poly: &IntPoly) -> Self {
        let mut acc = Self::zeros(self.rows, self.cols);
        for c in poly.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::scalar(self.rows, c.clone()));
        }
        acc
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Characteristic polynomial `det(X·I − M)` and the adjugate, both from
    /// one Faddeev–LeVerrier sweep. Every division in the sweep is exact.
    fn faddeev_leverrier(&self) -> (IntPoly, IntMatrix) {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut mk = Self::identity(n);
        let mut last = mk.clone();
        for k in 1..=n {
            if k > 1 {
                mk = self.mul(&last).add(&Self::scalar(n, coeffs[n - k + 1].clone()));
            }
            let tr = self.mul(&mk).trace();
            let (q, r) = tr.div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero(), "inexact Faddeev-LeVerrier step");
            coeffs[n - k] = -q;
            last = mk.clone();
        }
        let adj = if n % 2 == 1 {
            last
        } else {
            last.scale(&BigInt::from(-1))
        };
        (IntPoly::from_coeffs(coeffs), adj)
    }

    pub fn charpoly(&self) -> IntPoly {
        self.faddeev_leverrier().0
    }

    /// `adj(M)` with `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> IntMatrix {
        self.faddeev_leverrier().1
    }

    /// Monic minimal polynomial.
    pub fn minpoly(&self) -> IntPoly {
        let q = RatMatrix::from_int_matrix(Rationals, self);
        let coeffs = q.minpoly();
        IntPoly::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| {
                    // monic divisor of an integral monic polynomial
                    assert!(c.is_integer(), "minimal polynomial with fractional coefficient");
                    c.to_integer()
                })
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_int_matrix(Rationals, self)
    }

    pub fn reduce_mod(&self, field: PrimeField) -> FpMatrix {
        FieldMatrix::from_int_matrix(field, self)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn quaternion_b() -> IntMatrix {
        IntMatrix::from_i64(&[&[1, -1, -2, 0], &[1, 1, 0, 2], &[2, 0, 1, -1], &[0, -2, 1, 1]])
    }

    /// Cofactor expansion along the first row.
    fn det_by_cofactors(m: &[Vec<BigInt>]) -> BigInt {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * det_by_cofactors(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn adjugate_by_cofactors(m: &IntMatrix) -> IntMatrix {
        let n = m.rows();
        if n == 1 {
            return IntMatrix::identity(1);
        }
        let mut adj = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<BigInt>> = (0..n)
                    .filter(|&r| r != i)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| m.get(r, c).clone()).collect())
                    .collect();
                let mut c = det_by_cofactors(&minor);
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                adj.set(j, i, c);
            }
        }
        adj
    }

    #[test]
    fn det_examples() {
        assert_eq!(IntMatrix::identity(4).det(), BigInt::one());
        assert_eq!(IntMatrix::from_i64(&[&[1, 1], &[1, 1]]).det(), BigInt::zero());
        assert_eq!(quaternion_b().det(), BigInt::from(36));
        assert_eq!(det_by_cofactors(&quaternion_b().row_vecs()), BigInt::from(36));
    }

    #[test]
    fn adjugate_examples() {
        let m = IntMatrix::from_i64(&[&[3, 5], &[7, 11]]);
        assert_eq!(m.adjugate(), IntMatrix::from_i64(&[&[11, -5], &[-7, 3]]));
        assert_eq!(IntMatrix::identity(3).adjugate(), IntMatrix::identity(3));
        let b = quaternion_b();
        let expected = b.scale(&BigInt::from(-6)).add(&IntMatrix::scalar(4, BigInt::from(12)));
        assert_eq!(b.adjugate(), expected);
        assert_eq!(adjugate_by_cofactors(&b), expected);
    }

    #[test]
    fn charpoly_examples() {
        let rot = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(rot.charpoly(), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(IntMatrix::identity(2).charpoly(), IntPoly::from_i64(&[1, -2, 1]));
        // (X^2 - 2X + 6)^2
        assert_eq!(quaternion_b().charpoly(), IntPoly::from_i64(&[36, -24, 16, -4, 1]));
    }

    #[test]
    fn charpoly_agrees_with_det_of_shifted_matrix() {
        // det(t·I − B) at integer points t is an independent route.
        let b = quaternion_b();
        let cp = b.charpoly();
        for t in -3i64..=3 {
            let shifted = IntMatrix::scalar(4, BigInt::from(t)).sub(&b);
            assert_eq!(cp.eval(&BigInt::from(t)), shifted.det());
        }
    }

    #[test]
    fn minpoly_examples() {
        assert_eq!(IntMatrix::identity(3).minpoly(), IntPoly::from_i64(&[-1, 1]));
        let rot = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert_eq!(rot.minpoly(), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(quaternion_b().minpoly(), IntPoly::from_i64(&[6, -2, 1]));
    }

    #[test]
    fn rejects_empty() {
        assert!(matches!(IntMatrix::new(0, 0, vec![]), Err(Error::Degenerate)));
    }

    fn small_matrix(max_n: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(-4i64..=4, n * n)
                .prop_map(move |v| IntMatrix::from_entries(n, n, v.into_iter().map(BigInt::from).collect()))
        })
    }

    proptest! {
        #[test]
        fn adjugate_identity(m in small_matrix(6)) {
            let n = m.rows();
            let d = m.det();
            prop_assert_eq!(m.mul(&m.adjugate()), IntMatrix::scalar(n, d.clone()));
            prop_assert_eq!(m.adjugate().mul(&m), IntMatrix::scalar(n, d));
        }

        #[test]
        fn det_matches_cofactors(m in small_matrix(5)) {
            prop_assert_eq!(m.det(), det_by_cofactors(&m.row_vecs()));
        }

        #[test]
        fn minpoly_divides_charpoly_and_both_annihilate(m in small_matrix(4)) {
            let cp = m.charpoly();
            let mp = m.minpoly();
            prop_assert!(m.eval_poly(&cp).is_zero());
            prop_assert!(m.eval_poly(&mp).is_zero());
            prop_assert!(cp.rem_monic(&mp).is_zero());
        }
    }
}
