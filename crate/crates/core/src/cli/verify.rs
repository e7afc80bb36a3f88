use std::fmt;

use num_bigint::BigInt;
use rand::Rng;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::grouprep::CatalogEntry;
use crate::lattice::{is_invariant_lattice, lattice_from_matrix, upper_bound_witness, FamilyCache, FamilySpec};
use crate::repdecomp::{
    conjugate_rep, exponent_k_report, is_abelian_image, k_from_character_table, q_split, CertificateContext,
};

/// One named check of the `lemmas` suite.
#[derive(Clone, Debug)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for LemmaCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "pass" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> LemmaCheck {
    LemmaCheck {
        name,
        passed,
        detail: detail.into(),
    }
}

/// Finite consequences of the structure results for one representation:
/// agreement of the three routes to `k`, witness soundness and the
/// divisibility inequalities on seeded random vectors, and the integer
/// certificates for any supplied commuting or invariant matrices.
pub fn verify_lemmas(entry: &CatalogEntry, config: &Config) -> Result<Vec<LemmaCheck>> {
    let rep = &entry.rep;
    let m = rep.degree();
    let mut out = Vec::new();

    let report = exponent_k_report(rep, config);
    let k = match &report {
        Ok(r) => {
            let primes: Vec<String> = r.splits.iter().map(|s| s.prime.to_string()).collect();
            out.push(check(
                "prime stability",
                true,
                format!("k = {} at p = {}", r.k, primes.join(", ")),
            ));
            r.k
        }
        Err(Error::InconsistentSplit(msg)) => {
            out.push(check("prime stability", false, msg.clone()));
            return Ok(out);
        }
        Err(_) => return report.map(|_| out),
    };

    out.push(check(
        "abelian iff k = 1",
        is_abelian_image(rep) == (k == 1),
        format!("abelian {}, k = {k}", is_abelian_image(rep)),
    ));

    let split = q_split(rep, config)?;
    let mut k_parts = 0;
    for c in &split.constituents {
        k_parts = k_parts.max(exponent_k_report(&c.rep, config)?.k);
    }
    out.push(check(
        "rational constituents",
        split.degrees().iter().sum::<usize>() == m && k_parts == k,
        format!("degrees {:?}, largest constituent exponent {k_parts}", split.degrees()),
    ));

    if let Some(table) = &entry.table {
        let d = k_from_character_table(rep, table)?;
        out.push(check(
            "character table",
            d.k == k,
            format!("multiplicities {:?}, k = {}", d.multiplicities, d.k),
        ));
    }

    let mut rng = config.rng();
    let mut cache = FamilyCache::new(FamilySpec::Invariant(rep.clone()), m, config)?;
    let (mut sound, mut inequality, mut symmetric, mut realized, mut tried) = (true, true, true, 0, 0);
    let elements = rep.elements_i64();
    for _ in 0..20 {
        let v: Vec<i64> = (0..m).map(|_| rng.gen_range(-12i64..=12)).collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        tried += 1;
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let w = upper_bound_witness(rep, &big, config)?;
        sound &= !w.lattice.contains(&big)? && is_invariant_lattice(&w.lattice, rep)? && w.index() <= &w.bound();
        let Ok(windex) = u64::try_from(w.index()) else { continue };
        match cache.divisibility(&v, windex.min(config.index_budget)) {
            Ok(d) => {
                realized += 1;
                inequality &= d <= windex;
                let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                symmetric &= cache.divisibility(&neg, d)? == d;
                if let Some(els) = &elements {
                    let g = &els[rng.gen_range(0..els.len())];
                    let gv: Vec<i64> = g
                        .iter()
                        .map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum())
                        .collect();
                    symmetric &= cache.divisibility(&gv, d)? == d;
                }
            }
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    out.push(check(
        "witness soundness",
        sound,
        format!("{tried} random vectors: omitted, invariant, index ≤ p^k"),
    ));
    out.push(check(
        "surjection inequality",
        inequality,
        format!("D_inv(v) ≤ witness index on {realized}/{tried} vectors within budget"),
    ));
    out.push(check("symmetry", symmetric, "D(v) = D(-v) = D(φ(h)v)".to_string()));

    if !entry.commutant_examples.is_empty() {
        let commute = entry
            .commutant_examples
            .iter()
            .all(|b| rep.generators().iter().all(|g| g.commutes_with(b)));
        out.push(check(
            "commutant examples commute",
            commute,
            format!("{} matrices", entry.commutant_examples.len()),
        ));
        if split.is_irreducible() {
            let ctx = CertificateContext::new(rep, config)?;
            for b in &entry.commutant_examples {
                let cert = ctx.evaluate(b)?;
                out.push(check(
                    "commutant certificate",
                    cert.passed(),
                    format!("f = {}, x = {}, det = {}", cert.f, cert.x, cert.det),
                ));
            }
        }
    }
    for b in &entry.invariant_examples {
        let image = lattice_from_matrix(b)?;
        let invariant = is_invariant_lattice(&image, rep)?;
        let integral = conjugate_rep(b, rep, config).is_ok();
        out.push(check(
            "invariant image",
            invariant && integral,
            format!(
                "index {}, conjugated representation integral: {integral}",
                image.index()
            ),
        ));
    }
    Ok(out)
}
