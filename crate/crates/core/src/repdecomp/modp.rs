use std::fmt;

use rand::Rng;

use super::module::{commutant, intertwiners, is_invariant, maschke_complement, try_split, Attempt, Factors, Module};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactalg::{factor_over_prime_field, FieldMatrix, FpMatrix, FpPoly, PrimeField};
use crate::grouprep::Rep;
use crate::rfgrowth::primes::first_primes_one_mod;

/// Which field a decomposition or commutant lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldTag {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// One isomorphism type of irreducible summand over `F_p`.
#[derive(Clone, Debug)]
pub struct Constituent {
    pub dimension: usize,
    pub multiplicity: usize,
    /// One basis (list of vectors in `F_p^m`) per copy.
    pub copies: Vec<Vec<Vec<u64>>>,
}

/// Decomposition of `F_p^m` into irreducible invariant subspaces.
#[derive(Clone, Debug)]
pub struct Constituents {
    pub field: FieldTag,
    pub prime: u64,
    pub parts: Vec<Constituent>,
    /// Dimension of the commutant of the whole representation over `F_p`.
    pub commutant_dimension: usize,
}

impl Constituents {
    /// Dimension of each constituent repeated by multiplicity, sorted.
    pub fn dimension_multiset(&self) -> Vec<usize> {
        let mut dims: Vec<usize> = self
            .parts
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.dimension, c.multiplicity))
            .collect();
        dims.sort_unstable();
        dims
    }

    pub fn max_dimension(&self) -> usize {
        self.parts.iter().map(|c| c.dimension).max().unwrap_or(0)
    }

    /// Every irreducible summand with its dimension.
    pub fn summands(&self) -> impl Iterator<Item = &Vec<Vec<u64>>> {
        self.parts.iter().flat_map(|c| c.copies.iter())
    }
}

impl fmt::Display for Constituents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|c| format!("{} (x{})", c.dimension, c.multiplicity))
            .collect();
        write!(f, "p = {}: dims {{{}}}", self.prime, parts.join(", "))
    }
}

/// Generators reduced modulo `p`.
pub(crate) fn reduced_generators(rep: &Rep, field: PrimeField) -> Vec<FpMatrix> {
    rep.generators().iter().map(|g| g.reduce_mod(field)).collect()
}

fn factor_fp(field: PrimeField) -> impl Fn(&[u64]) -> Result<Factors<u64>> {
    move |coeffs: &[u64]| {
        let f = FpPoly::new(field, coeffs.to_vec());
        let fact = factor_over_prime_field(&f)?;
        Ok(fact
            .factors
            .into_iter()
            .map(|(g, e)| (g.coeffs().to_vec(), e))
            .collect())
    }
}

/// Split `F_p^m` into absolutely irreducible constituents. Requires
/// `p ≡ 1 (mod |H|)`, which makes `F_p` a splitting field with `p ∤ |H|`.
pub fn split_mod_p(rep: &Rep, p: u64, config: &Config) -> Result<Constituents> {
    if !crate::rfgrowth::primes::is_prime(p) || !(p - 1).is_multiple_of(rep.order() as u64) {
        return Err(Error::BadPrime { p, order: rep.order() });
    }
    let field = PrimeField::new(p);
    let m = rep.degree();
    let whole = Module {
        basis: FieldMatrix::identity(field, m),
        gens: reduced_generators(rep, field),
    };
    let elements: Vec<FpMatrix> = rep.elements().iter().map(|g| g.reduce_mod(field)).collect();
    let mut rng = config.rng();
    let mut irreducible = Vec::new();
    let mut pending = vec![whole];
    let factor = factor_fp(field);
    while let Some(module) = pending.pop() {
        let comm = commutant(&module.gens);
        if comm.len() == 1 {
            irreducible.push(module);
            continue;
        }
        let mut split = None;
        for _ in 0..config.split_attempts {
            let z = random_combination(&comm, field, &mut rng);
            match try_split(&z, &factor)? {
                Attempt::Split(parts) => {
                    split = Some(parts);
                    break;
                }
                Attempt::Primary(u) => {
                    let local: Vec<FpMatrix> = elements
                        .iter()
                        .map(|g| module.basis.solve(&g.mul(&module.basis)).expect("invariant"))
                        .collect();
                    let c = maschke_complement(&local, &u);
                    split = Some(vec![u, c]);
                    break;
                }
                Attempt::Irreducible => {}
            }
        }
        let parts = split.ok_or(Error::InconclusiveSplit)?;
        for w in parts.iter().rev() {
            pending.push(module.submodule(w));
        }
    }
    irreducible.reverse();
    let commutant_dimension = commutant(&reduced_generators(rep, field)).len();
    let out = group_isomorphic(irreducible, p, commutant_dimension);
    check_constituents(rep, &out, field)?;
    Ok(out)
}

fn random_combination<R: Rng>(basis: &[FpMatrix], field: PrimeField, rng: &mut R) -> FpMatrix {
    let p = field.modulus();
    let mut z = FieldMatrix::zeros(field, basis[0].rows(), basis[0].cols());
    for b in basis {
        z = z.add(&b.scale(&rng.gen_range(0..p)));
    }
    z
}

fn group_isomorphic(summands: Vec<Module<PrimeField>>, p: u64, commutant_dimension: usize) -> Constituents {
    let mut types: Vec<(Module<PrimeField>, Constituent)> = Vec::new();
    for s in summands {
        let copy = s.basis.columns();
        let found = types
            .iter_mut()
            .find(|(t, _)| t.dim() == s.dim() && !intertwiners(&t.gens, &s.gens).is_empty());
        match found {
            Some((_, c)) => {
                c.multiplicity += 1;
                c.copies.push(copy);
            }
            None => {
                let c = Constituent {
                    dimension: s.dim(),
                    multiplicity: 1,
                    copies: vec![copy],
                };
                types.push((s, c));
            }
        }
    }
    Constituents {
        field: FieldTag::Prime(p),
        prime: p,
        parts: types.into_iter().map(|(_, c)| c).collect(),
        commutant_dimension,
    }
}

fn check_constituents(rep: &Rep, c: &Constituents, field: PrimeField) -> Result<()> {
    let m = rep.degree();
    let total: usize = c.parts.iter().map(|x| x.dimension * x.multiplicity).sum();
    let squares: usize = c.parts.iter().map(|x| x.multiplicity * x.multiplicity).sum();
    let gens = reduced_generators(rep, field);
    let all: Vec<Vec<u64>> = c.summands().flatten().cloned().collect();
    let spans = FieldMatrix::from_columns(field, m, &all).rank() == m;
    let invariant = c
        .summands()
        .all(|b| is_invariant(&gens, &FieldMatrix::from_columns(field, m, b)));
    if total != m || squares != c.commutant_dimension || !spans || !invariant {
        return Err(Error::InconsistentSplit(format!(
            "p = {}: Σ dim·mult = {total} (m = {m}), Σ mult² = {squares} (commutant {}), spans {spans}, invariant {invariant}",
            c.prime, c.commutant_dimension
        )));
    }
    Ok(())
}

/// `k` together with the splittings that determined it.
#[derive(Clone, Debug)]
pub struct ExponentReport {
    pub k: usize,
    pub splits: Vec<Constituents>,
}

impl fmt::Display for ExponentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k = {}", self.k)?;
        for s in &self.splits {
            writeln!(f, "  p = {}: constituent dims {:?}", s.prime, s.dimension_multiset())?;
        }
        Ok(())
    }
}

/// The three smallest primes `≡ 1 (mod |H|)` used for splitting.
pub fn splitting_primes(rep: &Rep, config: &Config) -> Result<Vec<u64>> {
    first_primes_one_mod(rep.order() as u64, 3, config.prime_search_bound)
}

/// Largest dimension of an absolutely irreducible constituent, computed at
/// three primes which must agree.
pub fn exponent_k_report(rep: &Rep, config: &Config) -> Result<ExponentReport> {
    let splits = splitting_primes(rep, config)?
        .into_iter()
        .map(|p| split_mod_p(rep, p, config))
        .collect::<Result<Vec<_>>>()?;
    let first = splits[0].dimension_multiset();
    if let Some(bad) = splits.iter().find(|s| s.dimension_multiset() != first) {
        return Err(Error::InconsistentSplit(format!(
            "p = {} gives {:?} but p = {} gives {:?}",
            splits[0].prime,
            first,
            bad.prime,
            bad.dimension_multiset()
        )));
    }
    Ok(ExponentReport {
        k: splits[0].max_dimension(),
        splits,
    })
}

pub fn exponent_k(rep: &Rep, config: &Config) -> Result<usize> {
    exponent_k_report(rep, config).map(|r| r.k)
}
