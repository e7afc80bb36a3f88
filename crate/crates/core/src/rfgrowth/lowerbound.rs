use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::primes::lcm_upto;
use crate::config::Config;
use crate::error::Result;
use crate::grouprep::Rep;
use crate::lattice::{commutant_images, lattice_from_matrix, SmallLattice};
use crate::repdecomp::{commutant_basis, sample_commutant, CertificateContext, FieldTag};

/// Verdicts for one `s` of the lower-bound argument at `v_s = lcm(1..s)·e_1`.
#[derive(Clone, Debug)]
pub struct LowerBoundStep {
    pub s: u64,
    pub lcm: BigInt,
    /// Every `x ≤ s` divides `lcm(1..s)`, so `v_s ∈ x·Z^m`.
    pub lcm_divisible: bool,
    pub certificates: usize,
    pub certificates_passed: usize,
    /// Sampled `B` with `v_s ∉ Im B` all have `|det B| ≥ s^k`.
    pub sampled_images_ok: bool,
    /// Box-enumerated commutant images considered.
    pub com_lattices: usize,
    /// Of those, how many omit `v_s`.
    pub com_omitting: usize,
    pub min_omitting_index: Option<u64>,
    /// Every enumerated image omitting `v_s` has index `≥ s^k`.
    pub com_bound_ok: bool,
}

impl LowerBoundStep {
    pub fn passed(&self) -> bool {
        self.lcm_divisible
            && self.certificates_passed == self.certificates
            && self.sampled_images_ok
            && self.com_bound_ok
    }
}

#[derive(Clone, Debug)]
pub struct LowerBoundReport {
    pub rep: String,
    pub k: usize,
    pub samples: usize,
    pub coefficient_box: i64,
    pub index_budget: u64,
    pub steps: Vec<LowerBoundStep>,
}

impl LowerBoundReport {
    pub fn passed(&self) -> bool {
        self.steps.iter().all(LowerBoundStep::passed)
    }
}

impl fmt::Display for LowerBoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "lower bound for {} (k = {}, {} samples, box ±{}, index ≤ {})",
            self.rep, self.k, self.samples, self.coefficient_box, self.index_budget
        )?;
        for st in &self.steps {
            let min = st.min_omitting_index.map_or("-".to_string(), |i| i.to_string());
            writeln!(
                f,
                "  s = {}: lcm {} [{}], certificates {}/{} [{}], com images omitting v_s {}/{} min index {} ≥ {} [{}]",
                st.s,
                st.lcm,
                verdict(st.lcm_divisible),
                st.certificates_passed,
                st.certificates,
                verdict(st.certificates_passed == st.certificates && st.sampled_images_ok),
                st.com_omitting,
                st.com_lattices,
                min,
                st.s.pow(self.k as u32),
                verdict(st.com_bound_ok),
            )?;
        }
        write!(f, "overall: {}", verdict(self.passed()))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// Check `D_{Com}(v_s) ≥ s^k` for `s ≤ s_max` on a rationally irreducible
/// representation, three ways: the divisibility of `lcm(1..s)`, integer
/// certificates for `samples` random commutant matrices (coefficients in
/// `[-coefficient_box, coefficient_box]`), and the box-enumerated images
/// with index up to `config.index_budget`.
pub fn lower_bound_certificate(
    rep: &Rep,
    s_max: u64,
    samples: usize,
    coefficient_box: i64,
    config: &Config,
) -> Result<LowerBoundReport> {
    let ctx = CertificateContext::new(rep, config)?;
    let k = ctx.k();
    let m = rep.degree();
    let basis = commutant_basis(rep, FieldTag::Rationals)?;
    let images: Vec<SmallLattice> = commutant_images(rep, coefficient_box, config.index_budget)?
        .iter()
        .filter_map(SmallLattice::from_lattice)
        .collect();
    let mut rng = config.rng();
    let mut steps = Vec::new();
    for s in 1..=s_max {
        let lcm = lcm_upto(s);
        let lcm_divisible = (1..=s).all(|x| (&lcm % BigInt::from(x)).is_zero());
        let mut v = vec![BigInt::zero(); m];
        v[0] = lcm.clone();
        let bound = num_traits::pow(BigInt::from(s), k);

        let mut passed = 0;
        let mut sampled_images_ok = true;
        for b in sample_commutant(&basis, coefficient_box.max(1), samples, &mut rng) {
            let Ok(cert) = ctx.certify(&b) else { continue };
            passed += 1;
            if !lattice_from_matrix(&b)?.contains(&v)? && cert.det.abs() < bound {
                sampled_images_ok = false;
            }
        }

        let v_small: Option<Vec<i64>> = v.iter().map(|x| i64::try_from(x).ok()).collect();
        let omitting: Vec<u64> = images
            .iter()
            .filter(|l| match &v_small {
                Some(vs) => !l.contains_i64(vs),
                None => !l.to_lattice().contains(&v).unwrap_or(true),
            })
            .map(SmallLattice::index)
            .collect();
        let min_omitting_index = omitting.iter().copied().min();
        let s_k = s.pow(k as u32);
        steps.push(LowerBoundStep {
            s,
            lcm,
            lcm_divisible,
            certificates: samples,
            certificates_passed: passed,
            sampled_images_ok,
            com_lattices: images.len(),
            com_omitting: omitting.len(),
            min_omitting_index,
            com_bound_ok: omitting.iter().all(|&i| i >= s_k),
        });
    }
    Ok(LowerBoundReport {
        rep: rep.name().to_string(),
        k,
        samples,
        coefficient_box,
        index_budget: config.index_budget,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::grouprep::catalog::catalog_rep;

    #[test]
    fn quaternion_small_s() {
        let rep = catalog_rep("quaternion_paper", 100).unwrap();
        let c = Config {
            index_budget: 400,
            ..Config::default()
        };
        let r = lower_bound_certificate(&rep, 3, 20, 2, &c).unwrap();
        assert_eq!(r.k, 2);
        assert!(r.passed(), "{r}");
        // 2·Z^4 omits v_1 = e_1 and has index 16 ≥ 1
        assert!(r.steps[0].com_omitting > 0);
        assert_eq!(r.steps[2].lcm, BigInt::from(6));
    }

    #[test]
    fn reducible_rep_is_rejected() {
        let rep = catalog_rep("d4_paper", 100).unwrap();
        assert!(matches!(
            lower_bound_certificate(&rep, 2, 5, 2, &Config::default()),
            Err(Error::NotIrreducible)
        ));
    }
}
