//! Hermite and Smith normal forms and the canonical [`Lattice`] type.
//!
//! Lattices are stored row-style: the rows of the basis generate the lattice
//! and the basis is upper triangular with positive diagonal and every entry
//! above a pivot reduced into `[0, pivot)`. This form is unique, so two
//! lattices are equal exactly when their bases are equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{RatMatrix, Rationals};
use super::intmatrix::IntMatrix;
use crate::error::{Error, Result};

/// Full-rank sublattice of `Z^m` in row Hermite normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    basis: IntMatrix,
    index: BigInt,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice(index {}, basis {:?})", self.index, self.basis)
    }
}

impl Lattice {
    /// Trust the caller that `basis` is already in canonical form.
    pub(crate) fn from_hnf_unchecked(basis: IntMatrix) -> Self {
        debug_assert!(is_row_hnf(&basis));
        let index = (0..basis.rows()).map(|i| basis.get(i, i).clone()).product();
        Lattice { basis, index }
    }

    /// `Z^m` itself.
    pub fn full(m: usize) -> Self {
        Self::from_hnf_unchecked(IntMatrix::identity(m))
    }

    /// `s · Z^m`.
    pub fn scalar(m: usize, s: &BigInt) -> Self {
        assert!(s.is_positive());
        Self::from_hnf_unchecked(IntMatrix::scalar(m, s.clone()))
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn index(&self) -> &BigInt {
        &self.index
    }

    /// Index as a machine integer, saturating at `u64::MAX`.
    pub fn index_u64(&self) -> u64 {
        self.index.to_u64().unwrap_or(u64::MAX)
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.dim()).map(|i| self.basis.get(i, i).clone()).collect()
    }

    /// Membership by back-substitution against the triangular basis.
    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        let m = self.dim();
        if v.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: v.len(),
            });
        }
        let mut rest = v.to_vec();
        for i in 0..m {
            let (q, r) = rest[i].div_mod_floor(self.basis.get(i, i));
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for (j, r) in rest.iter_mut().enumerate().skip(i + 1) {
                    *r -= &q * self.basis.get(i, j);
                }
            }
        }
        Ok(true)
    }

    /// Membership for `i64` vectors.
    pub fn contains_i64(&self, v: &[i64]) -> Result<bool> {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&v)
    }

    /// True when `other ⊆ self`.
    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)).unwrap_or(false))
    }
}

fn is_row_hnf(b: &IntMatrix) -> bool {
    let m = b.rows();
    if b.cols() != m {
        return false;
    }
    for i in 0..m {
        if !b.get(i, i).is_positive() {
            return false;
        }
        for j in 0..i {
            if !b.get(i, j).is_zero() {
                return false;
            }
        }
        for j in i + 1..m {
            let x = b.get(i, j);
            if x.is_negative() || x >= b.get(j, j) {
                return false;
            }
        }
    }
    true
}

/// Row echelon Hermite form of an arbitrary integer matrix: returns the
/// nonzero rows `H` and a unimodular `U` (rows × rows of the input) with
/// `U · M = [H; 0]`.
pub fn hnf_with_transform(m: &IntMatrix) -> (Vec<Vec<BigInt>>, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.row_vecs();
    let mut u = IntMatrix::identity(rows).row_vecs();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        for i in pivot_row + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            if a[pivot_row][c].is_zero() {
                a.swap(pivot_row, i);
                u.swap(pivot_row, i);
                continue;
            }
            // unimodular 2×2 combination zeroing a[i][c]
            let x = a[pivot_row][c].clone();
            let y = a[i][c].clone();
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (xg, yg) = (&x / &g, &y / &g);
            combine_rows(&mut a, pivot_row, i, &s, &t, &xg, &yg);
            combine_rows(&mut u, pivot_row, i, &s, &t, &xg, &yg);
        }
        if a[pivot_row][c].is_zero() {
            continue;
        }
        if a[pivot_row][c].is_negative() {
            negate_row(&mut a[pivot_row]);
            negate_row(&mut u[pivot_row]);
        }
        let p = a[pivot_row][c].clone();
        for i in 0..pivot_row {
            let q = a[i][c].div_floor(&p);
            if !q.is_zero() {
                sub_row_multiple(&mut a, i, pivot_row, &q);
                sub_row_multiple(&mut u, i, pivot_row, &q);
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    a.truncate(pivot_row);
    let u = IntMatrix::from_rows(&u).expect("nonempty transform");
    (a, u)
}

fn combine_rows(a: &mut [Vec<BigInt>], top: usize, bottom: usize, s: &BigInt, t: &BigInt, xg: &BigInt, yg: &BigInt) {
    // [s t; −y/g x/g] has determinant 1
    for k in 0..a[top].len() {
        let r1 = &a[top][k];
        let r2 = &a[bottom][k];
        let new_top = s * r1 + t * r2;
        let new_bottom = xg * r2 - yg * r1;
        a[top][k] = new_top;
        a[bottom][k] = new_bottom;
    }
}

fn negate_row(r: &mut [BigInt]) {
    for x in r.iter_mut() {
        *x = -&*x;
    }
}

fn sub_row_multiple(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    for k in 0..a[target].len() {
        let d = q * &a[source][k];
        a[target][k] -= d;
    }
}

/// Canonical basis of the row lattice of a nonsingular square matrix.
pub fn hnf(m: &IntMatrix) -> Result<Lattice> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    lattice_from_generators(m)
}

/// Canonical basis of the lattice generated by the rows of `m`; the rows
/// must span a full-rank lattice (any number of rows ≥ the column count).
pub fn lattice_from_generators(m: &IntMatrix) -> Result<Lattice> {
    let (h, _) = hnf_with_transform(m);
    if h.len() < m.cols() {
        return Err(Error::SingularMatrix);
    }
    Ok(Lattice::from_hnf_unchecked(
        IntMatrix::from_rows(&h).expect("nonempty hnf"),
    ))
}

/// Invariant factors `d_1 | d_2 | … | d_m` of a nonsingular square matrix.
pub fn snf(m: &IntMatrix) -> Result<Vec<BigInt>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.row_vecs();
    for k in 0..n {
        // bring a nonzero entry of smallest magnitude to (k, k) and clear its
        // row and column; repeat until the pivot divides the whole block
        loop {
            let Some((pi, pj)) = smallest_nonzero(&a, k) else {
                return Err(Error::SingularMatrix);
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let mut dirty = false;
            for i in k + 1..n {
                let q = a[i][k].div_floor(&a[k][k]);
                if !q.is_zero() {
                    sub_row_multiple(&mut a, i, k, &q);
                }
                dirty |= !a[i][k].is_zero();
            }
            for j in k + 1..n {
                let q = a[k][j].div_floor(&a[k][k]);
                if !q.is_zero() {
                    for row in a.iter_mut() {
                        let d = &q * &row[k];
                        row[j] -= d;
                    }
                }
                dirty |= !a[k][j].is_zero();
            }
            if dirty {
                continue;
            }
            let pivot = a[k][k].clone();
            let offender = (k + 1..n)
                .flat_map(|i| (k + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &pivot).is_zero());
            match offender {
                Some((i, _)) => {
                    // fold the offending row into row k and restart
                    let row = a[i].clone();
                    for (x, v) in a[k].iter_mut().zip(row).skip(k) {
                        *x += v;
                    }
                }
                None => break,
            }
        }
    }
    Ok((0..n).map(|i| a[i][i].abs()).collect())
}

fn smallest_nonzero(a: &[Vec<BigInt>], k: usize) -> Option<(usize, usize)> {
    let n = a.len();
    let mut best: Option<(usize, usize)> = None;
    for i in k..n {
        for j in k..n {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Z-basis (rows, canonical echelon form) of `span_Q(vectors) ∩ Z^n`.
pub fn saturate(vectors: &[Vec<BigRational>]) -> Result<IntMatrix> {
    let n = vectors.first().map_or(0, Vec::len);
    if n == 0 || vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Invalid("saturate needs equal-length nonempty vectors".into()));
    }
    let cleared: Vec<Vec<BigInt>> = vectors.iter().map(|v| clear_denominators(v)).collect();
    let (independent, _) = hnf_with_transform(&IntMatrix::from_rows(&cleared)?);
    if independent.is_empty() {
        return Err(Error::Degenerate);
    }
    let a = IntMatrix::from_rows(&independent)?;
    let d = a.rows();
    // U · Aᵀ = [T'; 0]  ⇒  A · Uᵀ = [T | 0] with T = T'ᵀ, and the saturation
    // is T⁻¹ · A.
    let (h, _) = hnf_with_transform(&a.transpose());
    debug_assert_eq!(h.len(), d);
    let t_prime = IntMatrix::from_rows(&h)?;
    let t = RatMatrix::from_int_matrix(Rationals, &t_prime.transpose());
    let t_inv = t.inverse().ok_or(Error::SingularMatrix)?;
    let sat = t_inv.mul(&a.to_rational());
    let sat = sat
        .to_int_matrix()
        .expect("saturation of an integer lattice is integral");
    let (canon, _) = hnf_with_transform(&sat);
    IntMatrix::from_rows(&canon)
}

/// Rows of a canonical Z-basis of the Z-span of rational vectors. The result
/// is returned as rational vectors because the span may be fractional.
pub fn zspan_basis(vectors: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = vectors.first().map_or(0, Vec::len);
    if n == 0 {
        return Err(Error::Degenerate);
    }
    let den = vectors
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| (x * &den).to_integer()).collect())
        .collect();
    let (h, _) = hnf_with_transform(&IntMatrix::from_rows(&scaled)?);
    Ok(h.into_iter()
        .map(|r| r.into_iter().map(|x| BigRational::new(x, den.clone())).collect())
        .collect())
}

fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| (x * &den).to_integer()).collect()
}
