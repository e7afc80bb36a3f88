use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::exactalg::{IntMatrix, Lattice};

/// A sublattice in Hermite normal form with machine-word entries, for the
/// hot loops of family scans.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmallLattice {
    m: usize,
    /// Row-major upper triangular basis.
    basis: Vec<i64>,
    index: u64,
}

impl SmallLattice {
    pub fn from_lattice(l: &Lattice) -> Option<SmallLattice> {
        let rows = l.basis().to_i64_rows()?;
        Some(SmallLattice {
            m: l.dim(),
            basis: rows.concat(),
            index: u64::try_from(l.index()).ok()?,
        })
    }

    pub(crate) fn from_parts(m: usize, basis: Vec<i64>, index: u64) -> SmallLattice {
        SmallLattice { m, basis, index }
    }

    pub fn to_lattice(&self) -> Lattice {
        let data = self.basis.iter().map(|&x| BigInt::from(x)).collect();
        Lattice::from_hnf_unchecked(IntMatrix::from_entries(self.m, self.m, data))
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn entries(&self) -> &[i64] {
        &self.basis
    }

    pub fn contains_i64(&self, v: &[i64]) -> bool {
        let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        reduces_to_zero(self.m, &self.basis, &mut w)
    }

    /// `g·b ∈ L` for each generator `g` and basis row `b`.
    pub fn is_invariant_i64(&self, gens: &[Vec<Vec<i64>>]) -> bool {
        hnf_is_invariant(self.m, &self.basis, gens)
    }
}

fn reduces_to_zero(m: usize, basis: &[i64], w: &mut [i128]) -> bool {
    for i in 0..m {
        let d = basis[i * m + i] as i128;
        if w[i] % d != 0 {
            return false;
        }
        let q = w[i] / d;
        if q != 0 {
            for j in i + 1..m {
                w[j] -= q * basis[i * m + j] as i128;
            }
        }
    }
    true
}

pub(crate) fn hnf_is_invariant(m: usize, basis: &[i64], gens: &[Vec<Vec<i64>>]) -> bool {
    let mut w = [0i128; 16];
    let w = &mut w[..m];
    gens.iter().all(|g| {
        (0..m).all(|r| {
            let b = &basis[r * m..(r + 1) * m];
            for (i, wi) in w.iter_mut().enumerate() {
                *wi = g[i].iter().zip(b).map(|(&a, &x)| a as i128 * x as i128).sum();
            }
            reduces_to_zero(m, basis, w)
        })
    })
}

/// Order used by every enumeration: index, then row-major basis entries.
pub(crate) fn lattice_order(a: &Lattice, b: &Lattice) -> Ordering {
    a.index()
        .cmp(b.index())
        .then_with(|| a.basis().entries().cmp(b.basis().entries()))
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All Hermite forms of index exactly `n` in dimension `m`, sorted by their
/// row-major entries.
pub(crate) fn sublattices_small(m: usize, n: u64) -> Vec<SmallLattice> {
    sublattices_filtered(m, n, |_| true)
}

/// Hermite forms of index `n` whose row-major entries pass `keep`, sorted.
/// Rejected forms are never allocated.
pub(crate) fn sublattices_filtered(m: usize, n: u64, mut keep: impl FnMut(&[i64]) -> bool) -> Vec<SmallLattice> {
    let mut diagonals = Vec::new();
    diagonal_tuples(m, n, &mut Vec::with_capacity(m), &mut diagonals);
    let slots: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut basis = vec![0i64; m * m];
    for diag in diagonals {
        basis.iter_mut().for_each(|x| *x = 0);
        for (i, &d) in diag.iter().enumerate() {
            basis[i * m + i] = d as i64;
        }
        fill(&slots, 0, &diag, &mut basis, &mut |b| {
            if keep(b) {
                out.push(SmallLattice {
                    m,
                    basis: b.to_vec(),
                    index: n,
                });
            }
        });
    }
    out.sort_by(|a, b| a.basis.cmp(&b.basis));
    out
}

fn diagonal_tuples(m: usize, n: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if m == 0 {
        return;
    }
    if prefix.len() + 1 == m {
        prefix.push(n);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for d in divisors(n) {
        prefix.push(d);
        diagonal_tuples(m, n / d, prefix, out);
        prefix.pop();
    }
}

fn fill(slots: &[(usize, usize)], k: usize, diag: &[u64], basis: &mut [i64], visit: &mut dyn FnMut(&[i64])) {
    let m = diag.len();
    if k == slots.len() {
        visit(basis);
        return;
    }
    let (i, j) = slots[k];
    for a in 0..diag[j] as i64 {
        basis[i * m + j] = a;
        fill(slots, k + 1, diag, basis, visit);
    }
    basis[i * m + j] = 0;
}

/// Sublattices of index exactly `n`.
pub fn sublattices_of_index(m: usize, n: u64) -> Vec<Lattice> {
    sublattices_small(m, n).iter().map(SmallLattice::to_lattice).collect()
}

pub(crate) fn enumerate_small(m: usize, max_index: u64) -> impl Iterator<Item = SmallLattice> {
    (1..=max_index).flat_map(move |n| sublattices_small(m, n))
}

/// Every sublattice of `Z^m` with index at most `max_index`, ordered by
/// index and then by the row-major entries of the Hermite basis.
pub fn enumerate_sublattices(m: usize, max_index: u64) -> impl Iterator<Item = Lattice> {
    enumerate_small(m, max_index).map(|l| l.to_lattice())
}
