use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactalg::{lattice_from_generators, FieldMatrix, IntMatrix, Lattice, PrimeField};
use crate::grouprep::Rep;
use crate::repdecomp::split_mod_p;
use crate::rfgrowth::primes::smallest_valid_prime;

/// An invariant sublattice of index `p^d` that omits a given vector.
#[derive(Clone, Debug)]
pub struct Witness {
    pub lattice: Lattice,
    pub prime: u64,
    /// Dimension of the irreducible summand that `v` projects onto.
    pub dimension: usize,
    /// Largest constituent dimension at this prime.
    pub k: usize,
    /// First nonzero entry of `v`; `p` was chosen not to divide it.
    pub pivot_entry: BigInt,
}

impl Witness {
    pub fn index(&self) -> &BigInt {
        self.lattice.index()
    }

    /// `p^k`, the bound the index never exceeds.
    pub fn bound(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.prime), self.k)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p = {}", self.prime)?;
        writeln!(f, "summand dimension d = {} (k = {})", self.dimension, self.k)?;
        writeln!(f, "index = {} = {}^{}", self.index(), self.prime, self.dimension)?;
        write!(f, "basis:\n{}", self.lattice.basis())
    }
}

/// Build an invariant sublattice omitting `v` of index `p^d ≤ p^k`, where
/// `p` is the least prime `≡ 1 (mod |H|)` not dividing the first nonzero
/// entry of `v`.
///
/// Reducing mod `p` keeps `v` nonzero. Of the irreducible summands of
/// `F_p^m` on which `v` has a nonzero component, one of least dimension `d`
/// is dropped and the preimage of the remaining summands is returned.
pub fn upper_bound_witness(rep: &Rep, v: &[BigInt], config: &Config) -> Result<Witness> {
    let m = rep.degree();
    if v.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: v.len(),
        });
    }
    let a = v.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?.clone();
    let p = smallest_valid_prime(&a.abs(), rep.order() as u64, config.prime_search_bound).map_err(|e| match e {
        Error::SearchBoundExceeded(b) => Error::PrimeSearchFailed(b),
        other => other,
    })?;
    let split = split_mod_p(rep, p, config)?;
    let field = PrimeField::new(p);
    let summands: Vec<&Vec<Vec<u64>>> = split.summands().collect();
    let all: Vec<Vec<u64>> = summands.iter().flat_map(|s| s.iter().cloned()).collect();
    let t = FieldMatrix::from_columns(field, m, &all);
    let psi: Vec<u64> = v.iter().map(|x| residue(x, p)).collect();
    let rhs = FieldMatrix::from_columns(field, m, &[psi]);
    let coords = t
        .solve(&rhs)
        .ok_or_else(|| Error::InconsistentSplit("summands do not span".into()))?;
    let mut offset = 0;
    let mut chosen: Option<(usize, usize)> = None;
    for (i, s) in summands.iter().enumerate() {
        let nonzero = (offset..offset + s.len()).any(|r| *coords.get(r, 0) != 0);
        if nonzero && chosen.is_none_or(|(_, d)| s.len() < d) {
            chosen = Some((i, s.len()));
        }
        offset += s.len();
    }
    let (drop, d) = chosen.expect("v is nonzero mod p");
    let mut gens: Vec<Vec<BigInt>> = summands
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != drop)
        .flat_map(|(_, s)| s.iter().map(|b| b.iter().map(|&x| BigInt::from(x)).collect()))
        .collect();
    for i in 0..m {
        let mut e = vec![BigInt::zero(); m];
        e[i] = BigInt::from(p);
        gens.push(e);
    }
    let lattice = lattice_from_generators(&IntMatrix::from_rows(&gens)?)?;
    let witness = Witness {
        lattice,
        prime: p,
        dimension: d,
        k: split.max_dimension(),
        pivot_entry: a,
    };
    if witness.lattice.contains(v)? || witness.index() != &num_traits::pow(BigInt::from(p), d) {
        return Err(Error::InconsistentSplit(format!(
            "witness at p = {p} failed its own checks"
        )));
    }
    Ok(witness)
}

fn residue(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    u64::try_from(&r).expect("residue below p")
}
