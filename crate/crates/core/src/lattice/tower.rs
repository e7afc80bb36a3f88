use std::collections::HashSet;

use num_traits::ToPrimitive;

use super::enumerate::SmallLattice;
use crate::exactalg::{lattice_from_generators, Field, FpMatrix, IntMatrix, PrimeField};

type Vector = Vec<u64>;

/// Invariant sublattices of `p`-power index for one prime, built level by
/// level.
///
/// An invariant `L` of index `p^a` with `p^e·Z^m ⊆ L` minimal has the
/// invariant parent `P = L + p^{e-1}·Z^m`, and `pP ⊆ L ⊊ P`. So level `a`
/// consists of the preimages of the invariant subspaces of `P/pP` of
/// codimension `c`, over all `P` on level `a - c`.
pub(crate) struct PrimaryTower {
    p: u64,
    m: usize,
    /// Eigenvalue candidates mod `p` for each generator.
    roots: Vec<Vec<u64>>,
    levels: Vec<Vec<SmallLattice>>,
}

impl PrimaryTower {
    pub fn new(p: u64, gens: &[Vec<Vec<i64>>], charpolys: &[Vec<i64>]) -> PrimaryTower {
        let m = gens.first().map_or(0, Vec::len);
        let roots = charpolys.iter().map(|c| roots_mod_p(c, p)).collect();
        PrimaryTower {
            p,
            m,
            roots,
            levels: vec![vec![SmallLattice::identity(m)]],
        }
    }

    /// Invariant lattices of index `p^a`, sorted by basis.
    pub fn level(&mut self, a: usize, gens: &[Vec<Vec<i64>>]) -> &[SmallLattice] {
        while self.levels.len() <= a {
            let next = self.levels.len();
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for c in 1..=next.min(self.m) {
                for parent in &self.levels[next - c] {
                    for child in self.children(parent, c, gens) {
                        if seen.insert(child.entries().to_vec()) {
                            out.push(child);
                        }
                    }
                }
            }
            out.sort_by(|a, b| a.entries().cmp(b.entries()));
            self.levels.push(out);
        }
        &self.levels[a]
    }

    fn children(&self, parent: &SmallLattice, c: usize, gens: &[Vec<Vec<i64>>]) -> Vec<SmallLattice> {
        let p = self.p;
        let m = self.m;
        let mats: Vec<Vec<Vec<u64>>> = gens.iter().map(|g| action_mod_p(parent, g, p)).collect();
        let duals = if c == m {
            vec![identity_rows(m)]
        } else if c == 1 {
            eigenlines(&mats, &self.roots, p)
        } else {
            invariant_subspaces(&mats, c, p)
        };
        duals
            .into_iter()
            .map(|t| preimage(parent, &annihilator(&t, m, p), p))
            .collect()
    }
}

impl SmallLattice {
    pub(crate) fn identity(m: usize) -> SmallLattice {
        let mut basis = vec![0; m * m];
        for i in 0..m {
            basis[i * m + i] = 1;
        }
        SmallLattice::from_parts(m, basis, 1)
    }
}

/// Matrix `C mod p` with `g·b_i = Σ_j C[i][j]·b_j` for the basis rows `b_i`
/// of an invariant lattice. Invariant subspaces of `P/pP` in row coordinates
/// are annihilators of `C`-invariant column subspaces.
fn action_mod_p(l: &SmallLattice, g: &[Vec<i64>], p: u64) -> Vec<Vec<u64>> {
    let m = l.dim();
    let b = l.entries();
    let mut c = vec![vec![0u64; m]; m];
    for (i, ci) in c.iter_mut().enumerate() {
        let mut w: Vec<i128> = (0..m)
            .map(|r| (0..m).map(|s| g[r][s] as i128 * b[i * m + s] as i128).sum())
            .collect();
        for j in 0..m {
            let d = b[j * m + j] as i128;
            debug_assert_eq!(w[j] % d, 0, "lattice is not invariant");
            let q = w[j] / d;
            ci[j] = q.rem_euclid(p as i128) as u64;
            for k in j..m {
                w[k] -= q * b[j * m + k] as i128;
            }
        }
    }
    c
}

fn mat_vec(a: &[Vec<u64>], v: &[u64], p: u64) -> Vector {
    a.iter()
        .map(|row| (row.iter().zip(v).map(|(&x, &y)| x as u128 * y as u128).sum::<u128>() % p as u128) as u64)
        .collect()
}

fn roots_mod_p(coeffs: &[i64], p: u64) -> Vec<u64> {
    let c: Vec<u64> = coeffs.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
    (0..p)
        .filter(|&x| {
            c.iter()
                .rev()
                .fold(0u128, |acc, &a| (acc * x as u128 + a as u128) % p as u128)
                == 0
        })
        .collect()
}

fn identity_rows(m: usize) -> Vec<Vector> {
    (0..m).map(|i| (0..m).map(|j| u64::from(i == j)).collect()).collect()
}

/// Lines spanned by common eigenvectors of all `mats`.
fn eigenlines(mats: &[Vec<Vec<u64>>], roots: &[Vec<u64>], p: u64) -> Vec<Vec<Vector>> {
    let f = PrimeField::new(p);
    let m = mats.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut choice = vec![0usize; mats.len()];
    if roots.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let mut rows = Vec::new();
        for (g, a) in mats.iter().enumerate() {
            let lambda = roots[g][choice[g]];
            for (i, row) in a.iter().enumerate() {
                let mut r = row.clone();
                r[i] = f.sub(&r[i], &lambda);
                rows.push(r);
            }
        }
        let kernel = if rows.is_empty() {
            identity_rows(m)
        } else {
            FpMatrix::from_rows(f, &rows).kernel()
        };
        for v in projective_points(&kernel, p) {
            out.push(vec![v]);
        }
        let mut g = 0;
        loop {
            if g == choice.len() {
                return out;
            }
            choice[g] += 1;
            if choice[g] < roots[g].len() {
                break;
            }
            choice[g] = 0;
            g += 1;
        }
    }
}

/// Every nonzero vector of the span of `basis`, one per line, normalized so
/// the first nonzero coordinate is 1.
fn projective_points(basis: &[Vector], p: u64) -> Vec<Vector> {
    let d = basis.len();
    let m = basis.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        let count = p.checked_pow(free as u32).expect("projective point count fits in u64");
        for code in 0..count {
            let mut coeffs = vec![0u64; d];
            coeffs[lead] = 1;
            let mut r = code;
            for c in coeffs.iter_mut().skip(lead + 1) {
                *c = r % p;
                r /= p;
            }
            let mut v = vec![0u64; m];
            for (k, &a) in coeffs.iter().enumerate() {
                if a != 0 {
                    for (x, &b) in v.iter_mut().zip(&basis[k]) {
                        *x = ((*x as u128 + a as u128 * b as u128) % p as u128) as u64;
                    }
                }
            }
            out.push(normalize(v, p));
        }
    }
    out
}

fn normalize(mut v: Vector, p: u64) -> Vector {
    let f = PrimeField::new(p);
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        let inv = f.inv(&lead);
        for x in v.iter_mut() {
            *x = f.mul(&*x, &inv);
        }
    }
    v
}

/// Reduced echelon basis of a subspace, as a canonical key.
fn echelon(rows: &[Vector], p: u64) -> Vec<Vector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = FpMatrix::from_rows(PrimeField::new(p), rows).rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

fn in_span(echelon_rows: &[Vector], v: &[u64], p: u64) -> bool {
    let f = PrimeField::new(p);
    let mut w = v.to_vec();
    for row in echelon_rows {
        let lead = row.iter().position(|&x| x != 0).expect("echelon rows are nonzero");
        let a = w[lead];
        if a != 0 {
            for (x, &b) in w.iter_mut().zip(row) {
                *x = f.sub(&*x, &f.mul(&a, &b));
            }
        }
    }
    w.iter().all(|&x| x == 0)
}

/// Smallest invariant subspace containing `t` and `x`, if its dimension is
/// at most `cap`.
fn spin(mats: &[Vec<Vec<u64>>], t: &[Vector], x: &[u64], cap: usize, p: u64) -> Option<Vec<Vector>> {
    let mut basis = t.to_vec();
    let mut queue = vec![x.to_vec()];
    let mut span = echelon(&basis, p);
    while let Some(v) = queue.pop() {
        if in_span(&span, &v, p) {
            continue;
        }
        basis.push(v.clone());
        span = echelon(&basis, p);
        if span.len() > cap {
            return None;
        }
        queue.extend(mats.iter().map(|a| mat_vec(a, &v, p)));
    }
    Some(span)
}

/// All invariant subspaces of dimension exactly `c`, each the sum of cyclic
/// submodules grown from the zero space.
fn invariant_subspaces(mats: &[Vec<Vec<u64>>], c: usize, p: u64) -> Vec<Vec<Vector>> {
    let m = mats.first().map_or(0, Vec::len);
    let points = projective_points(&identity_rows(m), p);
    let mut seen: HashSet<Vec<Vector>> = HashSet::new();
    let mut frontier: Vec<Vec<Vector>> = vec![Vec::new()];
    let mut out = Vec::new();
    while let Some(t) = frontier.pop() {
        for x in &points {
            if in_span(&t, x, p) {
                continue;
            }
            let Some(s) = spin(mats, &t, x, c, p) else { continue };
            if !seen.insert(s.clone()) {
                continue;
            }
            if s.len() == c {
                out.push(s);
            } else {
                frontier.push(s);
            }
        }
    }
    out
}

/// `{u : u·t = 0 for every t}`.
fn annihilator(t: &[Vector], m: usize, p: u64) -> Vec<Vector> {
    if t.is_empty() {
        return identity_rows(m);
    }
    FpMatrix::from_rows(PrimeField::new(p), t).kernel()
}

/// The lattice `{Σ u_i·b_i : u mod p ∈ U} = span(U·B) + pP`.
fn preimage(parent: &SmallLattice, u: &[Vector], p: u64) -> SmallLattice {
    let m = parent.dim();
    let b = parent.entries();
    let mut rows: Vec<Vec<i64>> = u
        .iter()
        .map(|coeffs| {
            (0..m)
                .map(|j| {
                    let s: i128 = (0..m).map(|i| coeffs[i] as i128 * b[i * m + j] as i128).sum();
                    i64::try_from(s).expect("preimage entry fits in i64")
                })
                .collect()
        })
        .collect();
    rows.extend((0..m).map(|i| (0..m).map(|j| b[i * m + j] * p as i64).collect()));
    let gens = IntMatrix::from_i64_rows(&rows).expect("rectangular generators");
    let lattice = lattice_from_generators(&gens).expect("preimage has full rank");
    let small = SmallLattice::from_lattice(&lattice).expect("preimage fits in i64");
    debug_assert_eq!(small.index(), parent.index() * p.pow((m - u.len()) as u32));
    small
}

/// Integer characteristic polynomial coefficients, constant term first.
pub(crate) fn charpoly_i64(g: &[Vec<i64>]) -> Vec<i64> {
    let m = IntMatrix::from_i64_rows(g).expect("square generator");
    m.charpoly()
        .coeffs()
        .iter()
        .map(|c| c.to_i64().expect("characteristic polynomial of a finite-order matrix"))
        .collect()
}
