//! Finite-index sublattices of `Z^m`: enumeration, invariance and the
//! families over which divisibility is minimized.
//!
//! `Im B` always means the span of the columns of `B`; it is stored through
//! the row Hermite form of `Bᵀ`.

mod enumerate;
mod tower;
mod witness;

pub use enumerate::{enumerate_sublattices, sublattices_of_index, SmallLattice};
pub use witness::{upper_bound_witness, Witness};

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactalg::{hnf, IntMatrix, Lattice};
use crate::grouprep::Rep;
use crate::repdecomp::{commutant_basis, FieldTag};

/// `Im B = B(Z^m)`, the span of the columns.
pub fn lattice_from_matrix(b: &IntMatrix) -> Result<Lattice> {
    hnf(&b.transpose())
}

pub fn contains(l: &Lattice, v: &[BigInt]) -> Result<bool> {
    l.contains(v)
}

/// True iff `φ(g)·b ∈ L` for every basis row `b` and generator `g`; this
/// suffices because each `φ(g)` has finite order and determinant ±1.
pub fn is_invariant_lattice(l: &Lattice, rep: &Rep) -> Result<bool> {
    if l.dim() != rep.degree() {
        return Err(Error::DimensionMismatch {
            expected: rep.degree(),
            got: l.dim(),
        });
    }
    for g in rep.generators() {
        for r in 0..l.dim() {
            if !l.contains(&g.mul_vec(l.basis().row(r)))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which sublattices a divisibility minimum ranges over.
#[derive(Clone, Debug)]
pub enum FamilySpec {
    /// Every finite-index sublattice.
    AllFiniteIndex,
    /// Sublattices mapped onto themselves by every `φ(h)`.
    Invariant(Rep),
    /// Images `Im B` of integer matrices commuting with `φ`, for `B` ranging
    /// over integer combinations of the commutant basis with coefficients in
    /// `[-coefficient_box, coefficient_box]`. Not exhaustive.
    CommutantImages { rep: Rep, coefficient_box: i64 },
}

impl FamilySpec {
    pub fn label(&self) -> String {
        match self {
            FamilySpec::AllFiniteIndex => "nu".into(),
            FamilySpec::Invariant(r) => format!("inv({})", r.name()),
            FamilySpec::CommutantImages { rep, coefficient_box } => {
                format!("com({}, box {coefficient_box})", rep.name())
            }
        }
    }

    /// False when the enumeration may miss members of the family.
    pub fn is_exhaustive(&self) -> bool {
        !matches!(self, FamilySpec::CommutantImages { .. })
    }

    pub fn rep(&self) -> Option<&Rep> {
        match self {
            FamilySpec::AllFiniteIndex => None,
            FamilySpec::Invariant(r) => Some(r),
            FamilySpec::CommutantImages { rep, .. } => Some(rep),
        }
    }

    fn check_degree(&self, m: usize) -> Result<()> {
        match self.rep() {
            Some(r) if r.degree() != m => Err(Error::DimensionMismatch {
                expected: r.degree(),
                got: m,
            }),
            _ => Ok(()),
        }
    }
}

/// Lattices of a family in index order, with a flag recording whether the
/// list is complete up to the requested index.
pub struct Family<'a> {
    pub exhaustive: bool,
    iter: Box<dyn Iterator<Item = Lattice> + 'a>,
}

impl Iterator for Family<'_> {
    type Item = Lattice;

    fn next(&mut self) -> Option<Lattice> {
        self.iter.next()
    }
}

/// Members of the family with index at most `max_index`, ordered by index
/// and then by the row-major entries of the basis.
pub fn enumerate_family<'a>(spec: &'a FamilySpec, m: usize, max_index: u64) -> Result<Family<'a>> {
    spec.check_degree(m)?;
    let iter: Box<dyn Iterator<Item = Lattice> + 'a> = match spec {
        FamilySpec::AllFiniteIndex => Box::new(enumerate_sublattices(m, max_index)),
        FamilySpec::Invariant(rep) => {
            let gens = rep.generators_i64();
            Box::new(
                enumerate::enumerate_small(m, max_index)
                    .filter(move |l| match &gens {
                        Some(g) => l.is_invariant_i64(g),
                        None => is_invariant_lattice(&l.to_lattice(), rep).unwrap_or(false),
                    })
                    .map(|l| l.to_lattice()),
            )
        }
        FamilySpec::CommutantImages { rep, coefficient_box } => {
            Box::new(commutant_images(rep, *coefficient_box, max_index)?.into_iter())
        }
    };
    Ok(Family {
        exhaustive: spec.is_exhaustive(),
        iter,
    })
}

/// HNF-distinct images `Im(Σ c_i E_i)` with `0 < |det| ≤ max_index`.
pub fn commutant_images(rep: &Rep, coefficient_box: i64, max_index: u64) -> Result<Vec<Lattice>> {
    let basis = commutant_basis(rep, FieldTag::Rationals)?;
    let dim = basis.dimension();
    let width = (2 * coefficient_box + 1) as u64;
    let total = width.checked_pow(dim as u32).ok_or_else(|| {
        Error::Invalid(format!(
            "coefficient box {coefficient_box} is too large for a {dim}-dimensional commutant"
        ))
    })?;
    let mut seen = std::collections::HashSet::new();
    let mut coeffs = vec![0i64; dim];
    for mut code in 0..total {
        for c in coeffs.iter_mut() {
            *c = (code % width) as i64 - coefficient_box;
            code /= width;
        }
        let b = basis.combination(&coeffs);
        let det = b.det();
        if num_traits::Zero::is_zero(&det) || det.magnitude() > &num_bigint::BigUint::from(max_index) {
            continue;
        }
        seen.insert(lattice_from_matrix(&b)?);
    }
    let mut out: Vec<Lattice> = seen.into_iter().collect();
    out.sort_by(enumerate::lattice_order);
    Ok(out)
}

/// A family list extended on demand, in index order, for repeated
/// divisibility queries.
///
/// For `ν` and `Inv` only members of prime-power index are kept. If `L`
/// omits `v` then so does `L + p^a·Z^m` for some prime power `p^a` exactly
/// dividing the index, and that lattice lies in the same family with no
/// larger index, so the least omitting index is always found among them.
/// Commutant families are listed in full.
pub struct FamilyCache {
    spec: FamilySpec,
    m: usize,
    gens: Option<Vec<Vec<Vec<i64>>>>,
    reached: u64,
    lattices: Vec<SmallLattice>,
    charpolys: Vec<Vec<i64>>,
    towers: HashMap<u64, tower::PrimaryTower>,
}

impl FamilyCache {
    pub fn new(spec: FamilySpec, m: usize, config: &Config) -> Result<Self> {
        spec.check_degree(m)?;
        let gens = spec.rep().and_then(Rep::generators_i64);
        let mut cache = FamilyCache {
            spec,
            m,
            gens,
            reached: 1,
            lattices: Vec::new(),
            charpolys: Vec::new(),
            towers: HashMap::new(),
        };
        if let Some(g) = &cache.gens {
            cache.charpolys = g.iter().map(|g| tower::charpoly_i64(g)).collect();
        }
        if let FamilySpec::CommutantImages { rep, coefficient_box } = &cache.spec {
            let all = commutant_images(rep, *coefficient_box, config.index_budget)?;
            cache.lattices = all.iter().filter_map(SmallLattice::from_lattice).collect();
            cache.reached = config.index_budget;
        }
        Ok(cache)
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// Members found so far, in index order (index at most [`Self::reached`]).
    pub fn lattices(&self) -> &[SmallLattice] {
        &self.lattices
    }

    pub fn reached(&self) -> u64 {
        self.reached
    }

    /// Make the list complete up to index `bound`.
    pub fn extend_to(&mut self, bound: u64) {
        while self.reached < bound {
            self.extend_once();
        }
    }

    fn extend_once(&mut self) {
        let n = self.reached + 1;
        self.reached = n;
        if matches!(self.spec, FamilySpec::CommutantImages { .. }) || !is_prime_power(n) {
            return;
        }
        let m = self.m;
        let found = match (&self.spec, &self.gens) {
            (FamilySpec::AllFiniteIndex, _) => sublattices_small(m, n),
            (_, Some(g)) => {
                let (p, a) = prime_power(n);
                let polys = &self.charpolys;
                let tower = self
                    .towers
                    .entry(p)
                    .or_insert_with(|| tower::PrimaryTower::new(p, g, polys));
                tower.level(a, g).to_vec()
            }
            (spec, None) => {
                let rep = spec.rep().expect("invariant family has a representation");
                sublattices_small(m, n)
                    .into_iter()
                    .filter(|l| is_invariant_lattice(&l.to_lattice(), rep).unwrap_or(false))
                    .collect()
            }
        };
        self.lattices.extend(found);
    }

    /// Smallest index of a family member omitting `v`, scanning no further
    /// than `index_budget`.
    pub fn divisibility(&mut self, v: &[i64], index_budget: u64) -> Result<u64> {
        if v.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: v.len(),
            });
        }
        if v.iter().all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        let mut scanned = 0;
        loop {
            for l in &self.lattices[scanned..] {
                if l.index() > index_budget {
                    return Err(self.budget_error(v));
                }
                if !l.contains_i64(v) {
                    return Ok(l.index());
                }
                scanned += 1;
            }
            if self.reached >= index_budget {
                return Err(self.budget_error(v));
            }
            self.extend_once();
        }
    }

    fn budget_error(&self, v: &[i64]) -> Error {
        Error::BudgetExceeded {
            best: scalar_upper_bound(v, self.m),
        }
    }
}

/// `q^m` for the least `q ≥ 2` not dividing `gcd(v)`: `qZ^m` omits `v` and
/// lies in every family considered here.
pub fn scalar_upper_bound(v: &[i64], m: usize) -> BigInt {
    let g = v.iter().fold(0u64, |acc, &x| num_integer::gcd(acc, x.unsigned_abs()));
    let q = (2u64..).find(|q| g % q != 0).expect("some q does not divide g");
    num_traits::pow(BigInt::from(q), m)
}

/// `D(v)`: the least index of a family member omitting `v`.
pub fn divisibility(v: &[i64], spec: &FamilySpec, config: &Config) -> Result<u64> {
    let mut cache = FamilyCache::new(spec.clone(), v.len(), config)?;
    cache.divisibility(v, config.index_budget)
}

pub(crate) use enumerate::sublattices_small;

/// `(p, a)` with `n = p^a·r` and `p` the least prime factor of `n ≥ 2`.
fn prime_power(n: u64) -> (u64, usize) {
    let p = (2..).find(|p| n.is_multiple_of(*p)).expect("n ≥ 2 has a prime factor");
    let (mut r, mut a) = (n, 0);
    while r % p == 0 {
        r /= p;
        a += 1;
    }
    (p, a)
}

fn is_prime_power(n: u64) -> bool {
    n >= 2 && {
        let (p, a) = prime_power(n);
        p.pow(a as u32) == n
    }
}
