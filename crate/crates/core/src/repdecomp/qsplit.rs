use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use super::module::{commutant, maschke_complement, try_split, Attempt, Factors, Module};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactalg::{
    factor_over_integers, zspan_basis, Field, FieldMatrix, IntMatrix, IntPoly, RatMatrix, Rationals,
};
use crate::grouprep::Rep;

/// A rationally irreducible constituent: the lattice `K_i = P_i(Z^m)` and
/// the representation `φ_i` on it.
#[derive(Clone, Debug)]
pub struct QConstituent {
    /// Z-basis of `K_i` as rational vectors in `Q^m`.
    pub lattice_basis: Vec<Vec<BigRational>>,
    /// Action on `K_i` in that basis.
    pub rep: Rep,
    /// Dimension of the commutant of `φ_i` over Q.
    pub commutant_dimension: usize,
}

impl QConstituent {
    pub fn degree(&self) -> usize {
        self.rep.degree()
    }
}

/// Splitting of `Q^m` into rationally irreducible invariant subspaces.
#[derive(Clone, Debug)]
pub struct QSplit {
    pub constituents: Vec<QConstituent>,
}

impl QSplit {
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.constituents.iter().map(QConstituent::degree).collect();
        d.sort_unstable();
        d
    }

    pub fn is_irreducible(&self) -> bool {
        self.constituents.len() == 1
    }
}

impl fmt::Display for QSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} rational constituent(s)", self.constituents.len())?;
        for (i, c) in self.constituents.iter().enumerate() {
            writeln!(
                f,
                "  K_{}: degree {}, commutant dimension {}, order {}",
                i + 1,
                c.degree(),
                c.commutant_dimension,
                c.rep.order()
            )?;
            for (j, g) in c.rep.generators().iter().enumerate() {
                writeln!(f, "    generator {}:", j + 1)?;
                write!(f, "{}", indent(&g.to_string()))?;
            }
        }
        Ok(())
    }
}

fn indent(s: &str) -> String {
    s.lines().map(|l| format!("    {l}\n")).collect()
}

fn factor_q(coeffs: &[BigRational]) -> Result<Factors<BigRational>> {
    let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &den).to_integer()).collect();
    let f = IntPoly::new(ints)?;
    let fact = factor_over_integers(&f)?;
    Ok(fact
        .factors
        .into_iter()
        .map(|(g, e)| {
            let lc = BigRational::from_integer(g.leading());
            (
                g.coeffs()
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()) / &lc)
                    .collect(),
                e,
            )
        })
        .collect())
}

/// Decompose `Q^m` into rationally irreducible invariant subspaces.
///
/// Splitting elements are found among the commutant basis and then among
/// seeded random small combinations of it. A subspace is accepted as
/// irreducible once `config.irreducibility_rounds` consecutive commutant
/// elements all have irreducible minimal polynomials (and its commutant
/// dimension divides its dimension, as it must for a division algebra).
pub fn q_split(rep: &Rep, config: &Config) -> Result<QSplit> {
    let m = rep.degree();
    let to_q = |g: &IntMatrix| FieldMatrix::from_int_matrix(Rationals, g);
    let whole = Module {
        basis: FieldMatrix::identity(Rationals, m),
        gens: rep.generators().iter().map(to_q).collect(),
    };
    let elements: Vec<RatMatrix> = rep.elements().iter().map(to_q).collect();
    let mut rng = config.rng();
    let mut irreducible = Vec::new();
    let mut pending = vec![whole];
    while let Some(module) = pending.pop() {
        let comm = commutant(&module.gens);
        if comm.len() == 1 {
            irreducible.push((module, 1));
            continue;
        }
        let mut streak = 0;
        let mut split = None;
        for attempt in 0..config.split_attempts.max(config.irreducibility_rounds) {
            let z = if attempt < comm.len() {
                comm[attempt].clone()
            } else {
                random_combination(&comm, &mut rng)
            };
            match try_split(&z, &factor_q)? {
                Attempt::Split(parts) => {
                    split = Some(parts);
                    break;
                }
                Attempt::Primary(u) => {
                    let local: Vec<RatMatrix> = elements
                        .iter()
                        .map(|g| module.basis.solve(&g.mul(&module.basis)).expect("invariant"))
                        .collect();
                    let c = maschke_complement(&local, &u);
                    split = Some(vec![u, c]);
                    break;
                }
                Attempt::Irreducible => {
                    streak += 1;
                    if streak >= config.irreducibility_rounds {
                        break;
                    }
                }
            }
        }
        match split {
            Some(parts) => {
                for w in parts.iter().rev() {
                    pending.push(module.submodule(w));
                }
            }
            None if streak >= config.irreducibility_rounds && module.dim() % comm.len() == 0 => {
                let c = comm.len();
                irreducible.push((module, c));
            }
            None => return Err(Error::InconclusiveSplit),
        }
    }
    irreducible.reverse();
    build_constituents(rep, irreducible, config)
}

fn random_combination<R: Rng>(basis: &[RatMatrix], rng: &mut R) -> RatMatrix {
    let mut z = FieldMatrix::zeros(Rationals, basis[0].rows(), basis[0].cols());
    for b in basis {
        let c = BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3)));
        z = z.add(&b.scale(&c));
    }
    z
}

/// `K_i = P_i(Z^m)` from the subspace bases: `P_i = T E_i T⁻¹` with `T` the
/// concatenated bases.
fn build_constituents(rep: &Rep, parts: Vec<(Module<Rationals>, usize)>, config: &Config) -> Result<QSplit> {
    let m = rep.degree();
    let all_cols: Vec<Vec<BigRational>> = parts.iter().flat_map(|(p, _)| p.basis.columns()).collect();
    let t = FieldMatrix::from_columns(Rationals, m, &all_cols);
    let t_inv = t
        .inverse()
        .ok_or_else(|| Error::InconsistentSplit("subspaces are not independent".into()))?;
    let mut out = Vec::new();
    let mut offset = 0;
    for (i, (module, cdim)) in parts.iter().enumerate() {
        let d = module.dim();
        let mut e = FieldMatrix::zeros(Rationals, m, m);
        for j in offset..offset + d {
            e.set(j, j, Rationals.one());
        }
        offset += d;
        let proj = t.mul(&e).mul(&t_inv);
        let basis = zspan_basis(&proj.columns())?;
        if basis.len() != d {
            return Err(Error::InconsistentSplit("projection has the wrong rank".into()));
        }
        let k = FieldMatrix::from_columns(Rationals, m, &basis);
        let gens = rep
            .generators()
            .iter()
            .map(|g| {
                let gq = FieldMatrix::from_int_matrix(Rationals, g);
                k.solve(&gq.mul(&k))
                    .and_then(|a| a.to_int_matrix())
                    .ok_or_else(|| Error::InconsistentSplit("K_i is not invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let sub = Rep::with_config(format!("{}[K_{}]", rep.name(), i + 1), gens, config)?;
        out.push(QConstituent {
            lattice_basis: basis,
            rep: sub,
            commutant_dimension: *cdim,
        });
    }
    Ok(QSplit { constituents: out })
}
