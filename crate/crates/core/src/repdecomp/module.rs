//! Modules over a field given by generator matrices, and the splitting step
//! shared by the rational and prime-field decompositions.

use crate::error::Result;
use crate::exactalg::{Field, FieldMatrix};

/// A subspace of `F^m` (columns of `basis`) together with the action of each
/// generator in that basis.
#[derive(Clone, Debug)]
pub(crate) struct Module<F: Field> {
    pub basis: FieldMatrix<F>,
    pub gens: Vec<FieldMatrix<F>>,
}

impl<F: Field> Module<F> {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Submodule spanned by the columns of `w` (given in module coordinates).
    pub fn submodule(&self, w: &FieldMatrix<F>) -> Module<F> {
        Module {
            basis: self.basis.mul(w),
            gens: restrict(&self.gens, w),
        }
    }
}

/// Matrices `X` (b-dim × a-dim) with `X · A_g = B_g · X` for every generator.
pub(crate) fn intertwiners<F: Field>(a: &[FieldMatrix<F>], b: &[FieldMatrix<F>]) -> Vec<FieldMatrix<F>> {
    let field = a[0].field().clone();
    let (da, db) = (a[0].rows(), b[0].rows());
    let unknowns = da * db;
    let mut rows = Vec::with_capacity(a.len() * unknowns);
    for (ag, bg) in a.iter().zip(b) {
        for i in 0..db {
            for j in 0..da {
                let mut eq = vec![field.zero(); unknowns];
                // (X A)_{ij} = Σ_c x_{ic} A_{cj}
                for c in 0..da {
                    let k = i * da + c;
                    eq[k] = field.add(&eq[k], ag.get(c, j));
                }
                // (B X)_{ij} = Σ_c B_{ic} x_{cj}
                for c in 0..db {
                    let k = c * da + j;
                    eq[k] = field.sub(&eq[k], bg.get(i, c));
                }
                rows.push(eq);
            }
        }
    }
    let system = FieldMatrix::from_rows(field.clone(), &rows);
    system
        .kernel()
        .into_iter()
        .map(|v| FieldMatrix::from_vec(field.clone(), db, da, v))
        .collect()
}

pub(crate) fn commutant<F: Field>(gens: &[FieldMatrix<F>]) -> Vec<FieldMatrix<F>> {
    intertwiners(gens, gens)
}

/// Action on the invariant subspace spanned by the columns of `w`.
pub(crate) fn restrict<F: Field>(gens: &[FieldMatrix<F>], w: &FieldMatrix<F>) -> Vec<FieldMatrix<F>> {
    gens.iter()
        .map(|g| w.solve(&g.mul(w)).expect("subspace is invariant"))
        .collect()
}

pub(crate) fn is_invariant<F: Field>(gens: &[FieldMatrix<F>], w: &FieldMatrix<F>) -> bool {
    gens.iter().all(|g| w.solve(&g.mul(w)).is_some())
}

/// Invariant complement of the invariant subspace `u` by averaging a
/// projection over the whole group (`elements`, in module coordinates).
/// Requires the group order to be invertible in the field.
pub(crate) fn maschke_complement<F: Field>(elements: &[FieldMatrix<F>], u: &FieldMatrix<F>) -> FieldMatrix<F> {
    let field = u.field().clone();
    let d = u.rows();
    // extend u by standard vectors to a basis T, then P0 = T diag(I, 0) T⁻¹
    let mut cols = u.columns();
    for i in 0..d {
        let mut e = vec![field.zero(); d];
        e[i] = field.one();
        let mut trial = cols.clone();
        trial.push(e);
        if FieldMatrix::from_columns(field.clone(), d, &trial).rank() == trial.len() {
            cols = trial;
        }
    }
    let t = FieldMatrix::from_columns(field.clone(), d, &cols);
    let mut keep = FieldMatrix::zeros(field.clone(), d, d);
    for i in 0..u.cols() {
        keep.set(i, i, field.one());
    }
    let p0 = t.mul(&keep).mul(&t.inverse().expect("basis"));
    let mut p = FieldMatrix::zeros(field.clone(), d, d);
    for g in elements {
        let gi = g.inverse().expect("group element");
        p = p.add(&g.mul(&p0).mul(&gi));
    }
    FieldMatrix::from_columns(field, d, &p.kernel())
}

/// Outcome of trying one commutant element.
pub(crate) enum Attempt<F: Field> {
    /// Proper invariant decomposition, as bases in module coordinates.
    Split(Vec<FieldMatrix<F>>),
    /// The minimal polynomial is irreducible.
    Irreducible,
    /// The minimal polynomial is a power of one irreducible; the kernel of
    /// that irreducible is a proper submodule but needs a complement.
    Primary(FieldMatrix<F>),
}

/// Monic irreducible factors with multiplicities, low degree first.
pub(crate) type Factors<E> = Vec<(Vec<E>, usize)>;

pub(crate) type Factorizer<'a, E> = &'a dyn Fn(&[E]) -> Result<Factors<E>>;

/// Factor the minimal polynomial of a commutant element `z` and split the
/// module along the kernels of its primary components.
pub(crate) fn try_split<F: Field>(z: &FieldMatrix<F>, factor: Factorizer<'_, F::Elem>) -> Result<Attempt<F>> {
    let field = z.field().clone();
    let d = z.rows();
    let minpoly = z.minpoly();
    let factors = factor(&minpoly)?;
    if factors.len() == 1 {
        let (f, e) = &factors[0];
        if *e == 1 {
            return Ok(Attempt::Irreducible);
        }
        let k = z.eval_poly(f).kernel();
        return Ok(Attempt::Primary(FieldMatrix::from_columns(field, d, &k)));
    }
    let parts = factors
        .iter()
        .map(|(f, e)| {
            let k = z.eval_poly(f).pow(*e as u64).kernel();
            FieldMatrix::from_columns(field.clone(), d, &k)
        })
        .collect();
    Ok(Attempt::Split(parts))
}
