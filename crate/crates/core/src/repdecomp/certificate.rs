use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::modp::{exponent_k, FieldTag};
use super::module::commutant;
use super::qsplit::q_split;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactalg::{saturate, snf, FieldMatrix, IntMatrix, IntPoly, PrimeField, Rationals};
use crate::grouprep::Rep;
use crate::lattice::lattice_from_matrix;

/// Basis of `{B : Bφ(g) = φ(g)B}`. Over Q the matrices form a Z-basis of the
/// integer matrices in the commutant; over `F_p` entries are residues.
#[derive(Clone, Debug)]
pub struct CommutantBasis {
    pub field: FieldTag,
    pub matrices: Vec<IntMatrix>,
}

impl CommutantBasis {
    pub fn dimension(&self) -> usize {
        self.matrices.len()
    }

    /// `Σ c_i E_i` for integer coefficients.
    pub fn combination(&self, coeffs: &[i64]) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.matrices[0].rows(), self.matrices[0].cols());
        for (e, &c) in self.matrices.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(&e.scale(&BigInt::from(c)));
            }
        }
        acc
    }
}

pub fn commutant_basis(rep: &Rep, field: FieldTag) -> Result<CommutantBasis> {
    let m = rep.degree();
    let matrices = match field {
        FieldTag::Rationals => {
            let gens: Vec<_> = rep
                .generators()
                .iter()
                .map(|g| FieldMatrix::from_int_matrix(Rationals, g))
                .collect();
            let flat: Vec<Vec<BigRational>> = commutant(&gens).into_iter().map(|b| b.entries().to_vec()).collect();
            let z = saturate(&flat)?;
            (0..z.rows())
                .map(|r| IntMatrix::new(m, m, z.row(r).to_vec()))
                .collect::<Result<Vec<_>>>()?
        }
        FieldTag::Prime(p) => {
            if !crate::rfgrowth::primes::is_prime(p) {
                return Err(Error::Invalid(format!("{p} is not prime")));
            }
            let f = PrimeField::new(p);
            let gens: Vec<_> = rep.generators().iter().map(|g| g.reduce_mod(f)).collect();
            commutant(&gens)
                .into_iter()
                .map(|b| IntMatrix::new(m, m, b.entries().iter().map(|&x| BigInt::from(x)).collect()))
                .collect::<Result<Vec<_>>>()?
        }
    };
    for (i, b) in matrices.iter().enumerate() {
        let commutes = match field {
            FieldTag::Rationals => rep.generators().iter().all(|g| g.commutes_with(b)),
            FieldTag::Prime(p) => {
                let f = PrimeField::new(p);
                let bp = b.reduce_mod(f);
                rep.generators()
                    .iter()
                    .all(|g| g.reduce_mod(f).mul(&bp) == bp.mul(&g.reduce_mod(f)))
            }
        };
        if !commutes {
            return Err(Error::NotCommuting(i));
        }
    }
    Ok(CommutantBasis { field, matrices })
}

/// True iff the image `φ(H)` is abelian. Checking the generators pairwise is
/// equivalent to checking every pair of elements.
pub fn is_abelian_image(rep: &Rep) -> bool {
    rep.is_abelian()
}

/// `φ̄(h) = B⁻¹ φ(h) B`, integral exactly when `Im B` is invariant.
pub fn conjugate_rep(b: &IntMatrix, rep: &Rep, config: &Config) -> Result<Rep> {
    if !b.is_square() || b.rows() != rep.degree() {
        return Err(Error::DimensionMismatch {
            expected: rep.degree(),
            got: b.rows(),
        });
    }
    let bq = FieldMatrix::from_int_matrix(Rationals, b);
    let b_inv = bq.inverse().ok_or(Error::SingularMatrix)?;
    let gens = rep
        .generators()
        .iter()
        .map(|g| {
            b_inv
                .mul(&FieldMatrix::from_int_matrix(Rationals, g))
                .mul(&bq)
                .to_int_matrix()
                .ok_or(Error::NotInvariant)
        })
        .collect::<Result<Vec<_>>>()?;
    Rep::with_config(format!("{}^B", rep.name()), gens, config)
}

/// Integer-level facts about a matrix commuting with a rationally
/// irreducible representation.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub f: IntPoly,
    pub n: usize,
    pub k: usize,
    pub x: BigInt,
    pub det: BigInt,
    pub invariant_factors: Vec<BigInt>,
    /// Named checks and whether each passed.
    pub checks: Vec<(&'static str, bool)>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "f = {}  (n = {}, k = {})", self.f, self.n, self.k)?;
        writeln!(f, "x = {}, det B = {}", self.x, self.det)?;
        let d: Vec<String> = self.invariant_factors.iter().map(ToString::to_string).collect();
        writeln!(f, "invariant factors ({})", d.join(", "))?;
        for (name, ok) in &self.checks {
            writeln!(f, "  [{}] {name}", if *ok { "pass" } else { "FAIL" })?;
        }
        Ok(())
    }
}

/// Precomputed irreducibility verdict and `k`, reusable across many
/// matrices.
#[derive(Clone, Debug)]
pub struct CertificateContext {
    rep: Rep,
    k: usize,
}

impl CertificateContext {
    pub fn new(rep: &Rep, config: &Config) -> Result<Self> {
        if !q_split(rep, config)?.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        Ok(CertificateContext {
            rep: rep.clone(),
            k: exponent_k(rep, config)?,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    /// Run every check on `b`; fails with `CertificateFailed` if any fails.
    pub fn certify(&self, b: &IntMatrix) -> Result<Certificate> {
        let cert = self.evaluate(b)?;
        if !cert.passed() {
            let failed: Vec<&str> = cert.checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
            return Err(Error::CertificateFailed(failed.join(", ")));
        }
        Ok(cert)
    }

    /// Compute the certificate without turning failed checks into errors.
    pub fn evaluate(&self, b: &IntMatrix) -> Result<Certificate> {
        let m = self.rep.degree();
        if !b.is_square() || b.rows() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: b.rows(),
            });
        }
        if let Some(i) = self.rep.generators().iter().position(|g| !g.commutes_with(b)) {
            return Err(Error::NotCommuting(i));
        }
        let det = b.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let k = self.k;
        let charpoly = b.charpoly();
        let f = charpoly
            .kth_root(k)
            .map_err(|_| Error::CertificateFailed(format!("charpoly {charpoly} is not a {k}-th power")))?;
        let n = f.degree();
        let sign = |e: usize| {
            if e.is_multiple_of(2) {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        };
        let x = sign(n) * f.coeff(0);
        // M = Σ_{i=1}^{n} a_i B^{i−1}, so f(B) = a_0 + B·M
        let mut mm = IntMatrix::zeros(m, m);
        let mut power = IntMatrix::identity(m);
        for i in 1..=n {
            mm = mm.add(&power.scale(&f.coeff(i)));
            power = power.mul(b);
        }
        let x_pow = |e: usize| num_traits::pow(x.clone(), e);
        let image = lattice_from_matrix(b)?;
        let scaled_basis_inside = (0..m).all(|j| {
            let mut v = vec![BigInt::zero(); m];
            v[j] = x.clone();
            image.contains(&v).unwrap_or(false)
        });
        let bm_expected = IntMatrix::scalar(m, sign(n + 1) * &x);
        let adj_expected = mm.scale(&(sign(n + 1) * x_pow(k - 1)));
        let checks = vec![
            ("charpoly(B) = f^k", f.pow(k) == charpoly),
            ("x = (-1)^n f(0) is nonzero", !x.is_zero()),
            ("det B = x^k", det == x_pow(k)),
            ("x Z^m ⊆ Im B", scaled_basis_inside),
            ("B M = (-1)^(n+1) x I", b.mul(&mm) == bm_expected),
            ("adj B = (-1)^(n+1) x^(k-1) M", b.adjugate() == adj_expected),
        ];
        Ok(Certificate {
            invariant_factors: snf(b)?,
            f,
            n,
            k,
            x,
            det,
            checks,
        })
    }
}

/// Certificate for a single matrix commuting with a rationally irreducible
/// representation.
pub fn commutant_certificate(b: &IntMatrix, rep: &Rep, config: &Config) -> Result<Certificate> {
    if let Some(i) = rep.generators().iter().position(|g| !g.commutes_with(b)) {
        return Err(Error::NotCommuting(i));
    }
    CertificateContext::new(rep, config)?.certify(b)
}

/// Random nonsingular combinations `Σ c_i E_i` of the integer commutant
/// basis with `c_i ∈ [-bound, bound]`.
pub fn sample_commutant<R: Rng>(basis: &CommutantBasis, bound: i64, count: usize, rng: &mut R) -> Vec<IntMatrix> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let coeffs: Vec<i64> = (0..basis.dimension()).map(|_| rng.gen_range(-bound..=bound)).collect();
        let b = basis.combination(&coeffs);
        if !b.det().is_zero() {
            out.push(b);
        }
    }
    out
}

/// True when `n` is a perfect square.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::catalog::{catalog_entry, catalog_rep, quaternion_commutant};

    fn quaternion() -> Rep {
        catalog_rep("quaternion_paper", 100).unwrap()
    }

    #[test]
    fn quaternion_certificate() {
        let c = Config::default();
        let cert = commutant_certificate(&quaternion_commutant(), &quaternion(), &c).unwrap();
        assert_eq!(cert.f, IntPoly::from_i64(&[6, -2, 1]));
        assert_eq!(cert.x, BigInt::from(6));
        assert_eq!(cert.det, BigInt::from(36));
        assert_eq!(cert.k, 2);
        let to = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cert.invariant_factors, to(&[1, 1, 6, 6]));
        assert!(cert.passed());
    }

    #[test]
    fn scalar_certificates() {
        let c = Config::default();
        let cert = commutant_certificate(&IntMatrix::scalar(4, 3.into()), &quaternion(), &c).unwrap();
        assert_eq!(cert.f, IntPoly::from_i64(&[-3, 1]).pow(2));
        assert_eq!(cert.x, BigInt::from(9));
        assert_eq!(cert.det, BigInt::from(81));
        for name in ["quaternion_paper", "std_sym(3)", "rot(4)", "trivial(1)"] {
            let rep = catalog_rep(name, 100).unwrap();
            let cert = commutant_certificate(&IntMatrix::identity(rep.degree()), &rep, &c).unwrap();
            assert_eq!(
                (cert.x.clone(), cert.det.clone()),
                (BigInt::one(), BigInt::one()),
                "{name}"
            );
        }
        // odd n: f = X − 3, B M = x I rather than −x I
        let cert = commutant_certificate(
            &IntMatrix::scalar(1, 3.into()),
            &catalog_rep("trivial(1)", 10).unwrap(),
            &c,
        )
        .unwrap();
        assert_eq!(cert.n, 1);
        assert!(cert.passed());
    }

    #[test]
    fn rejections() {
        let c = Config::default();
        assert!(matches!(
            commutant_certificate(&IntMatrix::diag(&[1, 2, 3, 4]), &quaternion(), &c),
            Err(Error::NotCommuting(_))
        ));
        let d4 = catalog_rep("d4_paper", 100).unwrap();
        assert!(matches!(
            commutant_certificate(&IntMatrix::identity(3), &d4, &c),
            Err(Error::NotIrreducible)
        ));
        assert!(matches!(
            commutant_certificate(&IntMatrix::zeros(4, 4), &quaternion(), &c),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn random_commutant_samples_certify() {
        let c = Config::default();
        let rep = quaternion();
        let basis = commutant_basis(&rep, FieldTag::Rationals).unwrap();
        assert_eq!(basis.dimension(), 4);
        let ctx = CertificateContext::new(&rep, &c).unwrap();
        let mut rng = c.rng();
        for b in sample_commutant(&basis, 3, 40, &mut rng) {
            let cert = ctx.certify(&b).unwrap();
            assert!(is_perfect_square(&cert.det));
        }
        for name in ["rot(4)", "std_sym(4)", "rot(3)"] {
            let rep = catalog_rep(name, 100).unwrap();
            let basis = commutant_basis(&rep, FieldTag::Rationals).unwrap();
            let ctx = CertificateContext::new(&rep, &c).unwrap();
            for b in sample_commutant(&basis, 4, 20, &mut rng) {
                ctx.certify(&b).unwrap();
            }
        }
    }

    #[test]
    fn commutant_dimensions() {
        let q = |name: &str| {
            commutant_basis(&catalog_rep(name, 100).unwrap(), FieldTag::Rationals)
                .unwrap()
                .dimension()
        };
        assert_eq!(q("quaternion_paper"), 4);
        assert_eq!(q("trivial(3)"), 9);
        assert_eq!(q("d4_paper"), 2);
        let fp = commutant_basis(&quaternion(), FieldTag::Prime(17)).unwrap();
        assert_eq!(fp.dimension(), 4);
        // the quaternion matrix lies in the Z-span of the rational basis
        let basis = commutant_basis(&quaternion(), FieldTag::Rationals).unwrap();
        let flat: Vec<Vec<BigInt>> = basis.matrices.iter().map(|b| b.entries().to_vec()).collect();
        let target = quaternion_commutant().entries().to_vec();
        let span = crate::exactalg::lattice_from_generators(
            &IntMatrix::from_rows(&[flat.clone(), vec![target.clone()]].concat()).unwrap(),
        );
        // the rows live in a rank-4 subspace of Z^16, so compare echelon forms instead
        assert!(span.is_err());
        let (h1, _) = crate::exactalg::hnf_with_transform(&IntMatrix::from_rows(&flat).unwrap());
        let (h2, _) =
            crate::exactalg::hnf_with_transform(&IntMatrix::from_rows(&[flat, vec![target]].concat()).unwrap());
        assert_eq!(h1, h2);
    }

    #[test]
    fn conjugation() {
        let c = Config::default();
        let rep = quaternion();
        let same = conjugate_rep(&IntMatrix::scalar(4, 2.into()), &rep, &c).unwrap();
        assert_eq!(same.generators(), rep.generators());
        let bar = conjugate_rep(&quaternion_commutant(), &rep, &c).unwrap();
        assert_eq!(bar.order(), rep.order());
        assert_eq!(exponent_k(&bar, &c).unwrap(), exponent_k(&rep, &c).unwrap());
        let entry = catalog_entry("invariant_det2_lattice", 100).unwrap();
        let bar = conjugate_rep(&entry.invariant_examples[0], &entry.rep, &c).unwrap();
        assert_eq!(bar.order(), 8);
        assert!(matches!(
            conjugate_rep(&IntMatrix::diag(&[1, 2]), &catalog_rep("rot(4)", 10).unwrap(), &c),
            Err(Error::NotInvariant)
        ));
        assert!(matches!(
            conjugate_rep(&IntMatrix::zeros(4, 4), &rep, &c),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn abelian_images() {
        assert!(is_abelian_image(&catalog_rep("rot(4)", 10).unwrap()));
        assert!(!is_abelian_image(&catalog_rep("d4_paper", 10).unwrap()));
        assert!(is_abelian_image(&catalog_rep("trivial(5)", 10).unwrap()));
        // pairwise oracle over all elements
        for name in ["perm_sym(3)", "product(rot(4),rot(3))", "quaternion_paper"] {
            let r = catalog_rep(name, 100).unwrap();
            let all = r
                .elements()
                .iter()
                .all(|a| r.elements().iter().all(|b| a.commutes_with(b)));
            assert_eq!(is_abelian_image(&r), all, "{name}");
        }
    }

    #[test]
    fn perfect_squares() {
        assert!(is_perfect_square(&BigInt::from(36)));
        assert!(!is_perfect_square(&BigInt::from(2)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
        assert!(is_perfect_square(&BigInt::zero()));
    }
}
