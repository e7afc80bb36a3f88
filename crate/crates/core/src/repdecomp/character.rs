use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grouprep::{character_of_rep, ClassFunction, ConjClasses, Rep};

/// Integer-valued character table. Columns are named by generator words so
/// the table does not depend on the order in which classes are discovered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub class_reps: Vec<Vec<usize>>,
    pub class_sizes: Vec<usize>,
    pub characters: Vec<Vec<i64>>,
}

/// Result of decomposing `χ_φ` against a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterDecomposition {
    /// `χ_φ` listed in table column order.
    pub chi: Vec<i64>,
    /// `⟨χ_φ, χ_i⟩` for every row of the table.
    pub multiplicities: Vec<u64>,
    /// Largest degree `χ_i(e)` with nonzero multiplicity.
    pub k: usize,
}

impl CharacterTable {
    /// Build a table, checking shape and orthonormality of the rows.
    pub fn new(class_reps: Vec<Vec<usize>>, class_sizes: Vec<usize>, characters: Vec<Vec<i64>>) -> Result<Self> {
        let t = CharacterTable {
            class_reps,
            class_sizes,
            characters,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn group_order(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    /// Degrees `χ_i(e)`, read from the identity column.
    pub fn degrees(&self) -> Vec<i64> {
        let e = self.identity_column().unwrap_or(0);
        self.characters.iter().map(|row| row[e]).collect()
    }

    fn identity_column(&self) -> Option<usize> {
        self.class_reps.iter().position(Vec::is_empty)
    }

    /// Inner product of two class functions given in table column order.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Result<BigRational> {
        weighted_inner(a, b, &self.class_sizes)
    }

    pub fn validate(&self) -> Result<()> {
        let c = self.class_sizes.len();
        if self.class_reps.len() != c {
            return Err(Error::LengthMismatch {
                expected: c,
                got: self.class_reps.len(),
            });
        }
        if self.characters.len() != c {
            return Err(Error::NotOrthonormal(format!(
                "{} rows for {} classes",
                self.characters.len(),
                c
            )));
        }
        if let Some(row) = self.characters.iter().find(|r| r.len() != c) {
            return Err(Error::LengthMismatch {
                expected: c,
                got: row.len(),
            });
        }
        if self.class_sizes.contains(&0) {
            return Err(Error::Invalid("class sizes must be positive".into()));
        }
        if self.identity_column().is_none() {
            return Err(Error::Invalid("no column for the identity class (empty word)".into()));
        }
        for i in 0..c {
            for j in i..c {
                let ip = self.inner(&self.characters[i], &self.characters[j])?;
                let want = if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                if ip != want {
                    return Err(Error::NotOrthonormal(format!("⟨χ{}, χ{}⟩ = {ip}", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    /// For every table column, the index of the matching class of `rep`.
    pub fn align(&self, rep: &Rep) -> Result<Vec<usize>> {
        let classes = rep.classes();
        if self.class_count() != classes.len() || self.group_order() != rep.order() {
            return Err(Error::LengthMismatch {
                expected: classes.len(),
                got: self.class_count(),
            });
        }
        let mut used = vec![false; classes.len()];
        let mut out = Vec::with_capacity(self.class_count());
        for (word, &size) in self.class_reps.iter().zip(&self.class_sizes) {
            let c = classes.class_of(rep.resolve_word(word)?);
            if used[c] || classes.classes()[c].size() != size {
                return Err(Error::UnresolvedClassWord(word.clone()));
            }
            used[c] = true;
            out.push(c);
        }
        Ok(out)
    }
}

fn weighted_inner(a: &[i64], b: &[i64], sizes: &[usize]) -> Result<BigRational> {
    for v in [a, b] {
        if v.len() != sizes.len() {
            return Err(Error::LengthMismatch {
                expected: sizes.len(),
                got: v.len(),
            });
        }
    }
    let order: usize = sizes.iter().sum();
    let sum: BigInt = a
        .iter()
        .zip(b)
        .zip(sizes)
        .map(|((&x, &y), &s)| BigInt::from(x) * y * s)
        .sum();
    Ok(BigRational::new(sum, BigInt::from(order)))
}

/// `⟨z1, z2⟩ = (1/|H|) Σ |C| z1(C) z2(C)` over the classes of a group.
/// Values are integers, so complex conjugation is the identity.
pub fn inner_product(z1: &ClassFunction, z2: &ClassFunction, classes: &ConjClasses) -> Result<BigRational> {
    weighted_inner(z1.values(), z2.values(), &classes.sizes())
}

/// `k = max{χ_i(e) : ⟨χ_φ, χ_i⟩ ≠ 0}` together with all multiplicities.
pub fn k_from_character_table(rep: &Rep, table: &CharacterTable) -> Result<CharacterDecomposition> {
    table.validate()?;
    let columns = table.align(rep)?;
    let chi_rep = character_of_rep(rep)?;
    let chi: Vec<i64> = columns.iter().map(|&c| chi_rep.values()[c]).collect();
    let degrees = table.degrees();
    let mut multiplicities = Vec::with_capacity(table.characters.len());
    let mut k = 0;
    for (row, &deg) in table.characters.iter().zip(&degrees) {
        let ip = table.inner(&chi, row)?;
        let mult = if ip.is_integer() {
            ip.to_integer().to_u64()
        } else {
            None
        };
        let mult =
            mult.ok_or_else(|| Error::NotOrthonormal(format!("multiplicity {ip} is not a nonnegative integer")))?;
        if mult > 0 {
            k = k.max(deg as usize);
        }
        multiplicities.push(mult);
    }
    let total: i64 = multiplicities.iter().zip(&degrees).map(|(&m, &d)| m as i64 * d).sum();
    if total != rep.degree() as i64 {
        return Err(Error::NotOrthonormal(format!(
            "constituent degrees sum to {total}, not {}",
            rep.degree()
        )));
    }
    Ok(CharacterDecomposition { chi, multiplicities, k })
}
