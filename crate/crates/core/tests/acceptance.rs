//! Acceptance criteria, one line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vabgrowth::exactalg::{hnf, snf, IntMatrix, IntPoly, Lattice};
use vabgrowth::grouprep::{catalog_entry, catalog_rep, random_monomial_rep, standard_catalog, Rep};
use vabgrowth::lattice::{is_invariant_lattice, lattice_from_matrix, upper_bound_witness, FamilySpec};
use vabgrowth::repdecomp::{
    commutant_certificate, exponent_k, exponent_k_report, is_abelian_image, is_perfect_square, k_from_character_table,
    split_mod_p, splitting_primes,
};
use vabgrowth::rfgrowth::{chebyshev_psi, fit_prime_bound, lower_bound_certificate, rf_profile, FamilyCache};
use vabgrowth::{Config, Error};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T>(r: vabgrowth::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn random_vector(rng: &mut ChaCha8Rng, m: usize, r: i64) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..m).map(|_| rng.gen_range(-r..=r)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

fn d4_example() -> Outcome {
    let c = Config::default();
    let entry = ok(catalog_entry("d4_paper", c.element_bound))?;
    let k = ok(exponent_k(&entry.rep, &c))?;
    ensure(k == 2, format!("exponent_k = {k}"))?;
    let table = entry.table.as_ref().ok_or("d4_paper has no character table")?;
    let d = ok(k_from_character_table(&entry.rep, table))?;
    ensure(d.chi == vec![3, 1, -1, 1, 1], format!("χ_φ = {:?}", d.chi))?;
    ensure(
        d.multiplicities == vec![1, 0, 0, 0, 1],
        format!("multiplicities {:?}", d.multiplicities),
    )?;
    ensure(d.k == 2, format!("table k = {}", d.k))?;
    Ok(format!(
        "k = 2 both ways, χ_φ = {:?}, multiplicities {:?}",
        d.chi, d.multiplicities
    ))
}

fn quaternion_example() -> Outcome {
    let c = Config::default();
    let entry = ok(catalog_entry("quaternion_paper", c.element_bound))?;
    let rep = &entry.rep;
    let k = ok(exponent_k(rep, &c))?;
    ensure(k == 2, format!("exponent_k = {k}"))?;
    let b = entry.commutant_examples.first().ok_or("no commutant example")?;
    ensure(rep.generators().len() == 3, "three generators expected")?;
    ensure(
        rep.generators().iter().all(|g| g.commutes_with(b)),
        "B does not commute",
    )?;
    let cert = ok(commutant_certificate(b, rep, &c))?;
    ensure(cert.passed(), format!("certificate checks {:?}", cert.checks))?;
    ensure(cert.f == IntPoly::from_i64(&[6, -2, 1]), format!("f = {}", cert.f))?;
    ensure(cert.x == BigInt::from(6), format!("x = {}", cert.x))?;
    ensure(cert.det == BigInt::from(36), format!("det = {}", cert.det))?;
    ensure(
        cert.invariant_factors == big(&[1, 1, 6, 6]),
        format!("SNF {:?}", cert.invariant_factors),
    )?;
    let image = ok(lattice_from_matrix(b))?;
    ensure(
        image.contains_lattice(&Lattice::scalar(4, &BigInt::from(6))),
        "6Z^4 ⊄ Im B",
    )?;
    Ok(format!("f = {}, x = 6, det 36, SNF (1,1,6,6), 6Z^4 ⊆ Im B", cert.f))
}

fn invariant_not_commutant() -> Outcome {
    let c = Config::default();
    let entry = ok(catalog_entry("invariant_det2_lattice", c.element_bound))?;
    let m = entry.invariant_examples.first().ok_or("no invariant example")?;
    let image = ok(lattice_from_matrix(m))?;
    ensure(ok(is_invariant_lattice(&image, &entry.rep))?, "image not invariant")?;
    ensure(m.det().abs() == BigInt::from(2), format!("det = {}", m.det()))?;
    ensure(!is_perfect_square(&BigInt::from(2)), "2 reported as a square")?;
    let k = ok(exponent_k(&entry.rep, &c))?;
    ensure(k == 2, format!("k = {k}"))?;
    let commutes = entry.rep.generators().iter().all(|g| g.commutes_with(m));
    ensure(!commutes, "det-2 matrix commutes")?;
    Ok(format!(
        "invariant image of index {}, |det| = 2 is not x^{k} for any integer x",
        image.index()
    ))
}

fn symmetric_groups() -> Outcome {
    let c = Config::default();
    let mut parts = Vec::new();
    for n in 3..=5usize {
        let perm = ok(catalog_rep(&format!("perm_sym({n})"), c.element_bound))?;
        for p in ok(splitting_primes(&perm, &c))? {
            let split = ok(split_mod_p(&perm, p, &c))?;
            ensure(
                split.dimension_multiset() == vec![1, n - 1],
                format!("perm_sym({n}) mod {p}: {:?}", split.dimension_multiset()),
            )?;
        }
        let k = ok(exponent_k(
            &ok(catalog_rep(&format!("std_sym({n})"), c.element_bound))?,
            &c,
        ))?;
        ensure(k == n - 1, format!("k(std_sym({n})) = {k}"))?;
        parts.push(format!("n = {n}: {{1, {}}}, k = {k}", n - 1));
    }
    Ok(parts.join("; "))
}

fn prime_stability() -> Outcome {
    let c = Config::default();
    let names = standard_catalog();
    for name in &names {
        let rep = ok(catalog_rep(name, c.element_bound))?;
        let report = ok(exponent_k_report(&rep, &c))?;
        ensure(
            report.splits.len() == 3,
            format!("{name}: {} primes", report.splits.len()),
        )?;
        let first = report.splits[0].dimension_multiset();
        for s in &report.splits {
            ensure(
                (s.prime - 1) % rep.order() as u64 == 0,
                format!("{name}: prime {} is not 1 mod {}", s.prime, rep.order()),
            )?;
            ensure(
                s.dimension_multiset() == first,
                format!("{name}: p = {} gives {:?}", s.prime, s.dimension_multiset()),
            )?;
        }
    }
    Ok(format!("{} representations, three primes each", names.len()))
}

fn abelian_corollary() -> Outcome {
    let c = Config::default();
    let mut reps: Vec<Rep> = standard_catalog()
        .into_iter()
        .map(|n| ok(catalog_rep(n, c.element_bound)))
        .collect::<Result<_, _>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let m = rng.gen_range(1..=4);
        let gens = rng.gen_range(1..=3);
        reps.push(ok(random_monomial_rep(&mut rng, m, gens, c.element_bound))?);
    }
    let mut abelian = 0;
    for rep in &reps {
        let k = ok(exponent_k(rep, &c))?;
        let ab = is_abelian_image(rep);
        abelian += usize::from(ab);
        ensure(ab == (k == 1), format!("{}: abelian {ab}, k = {k}", rep.name()))?;
    }
    Ok(format!("{} representations, {abelian} abelian", reps.len()))
}

fn witness_soundness() -> Outcome {
    let c = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut total, mut realized) = (0, 0);
    for name in standard_catalog() {
        let rep = ok(catalog_rep(name, c.element_bound))?;
        let m = rep.degree();
        let k = ok(exponent_k(&rep, &c))?;
        let mut cache = ok(FamilyCache::new(FamilySpec::Invariant(rep.clone()), m, &c))?;
        for _ in 0..100 {
            let v = random_vector(&mut rng, m, 20);
            let w = ok(upper_bound_witness(&rep, &big(&v), &c))?;
            total += 1;
            let tag = format!("{name} {v:?}");
            ensure(
                (w.prime - 1) % rep.order() as u64 == 0,
                format!("{tag}: p = {}", w.prime),
            )?;
            ensure(!ok(w.lattice.contains(&big(&v)))?, format!("{tag}: witness contains v"))?;
            ensure(
                ok(is_invariant_lattice(&w.lattice, &rep))?,
                format!("{tag}: witness not invariant"),
            )?;
            ensure(
                w.index() == &num_traits::pow(BigInt::from(w.prime), w.dimension),
                format!("{tag}: index {} is not p^d", w.index()),
            )?;
            ensure(w.dimension <= k, format!("{tag}: d = {} > k = {k}", w.dimension))?;
            let windex = u64::try_from(w.index()).unwrap_or(u64::MAX);
            match cache.divisibility(&v, windex.min(c.index_budget)) {
                Ok(d) => {
                    realized += 1;
                    ensure(d <= windex, format!("{tag}: D = {d} > witness index {windex}"))?;
                }
                Err(Error::BudgetExceeded { .. }) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(format!(
        "{total} vectors sound; D(v) ≤ witness index on {realized}/{total} within budget"
    ))
}

fn smallest_non_divisor(n: u64) -> u64 {
    (2..).find(|q| !n.is_multiple_of(*q)).unwrap()
}

fn z_oracle() -> Outcome {
    let c = Config::default();
    let mut cache = ok(FamilyCache::new(FamilySpec::AllFiniteIndex, 1, &c))?;
    for n in 1..=10_000i64 {
        let d = ok(cache.divisibility(&[n], c.index_budget))?;
        let want = smallest_non_divisor(n as u64);
        ensure(d == want, format!("D({n}) = {d}, expected {want}"))?;
    }
    let profile = ok(rf_profile(&FamilySpec::AllFiniteIndex, 1, 6, c.index_budget))?;
    let rf6 = profile.rf(6);
    ensure(rf6 == Some(4), format!("RF(6) = {rf6:?}"))?;
    Ok("D((n)) matches the least non-divisor for n ≤ 10^4, RF(6) = 4".into())
}

fn quaternion_lower_bound() -> Outcome {
    let c = Config::default();
    let rep = ok(catalog_rep("quaternion_paper", c.element_bound))?;
    let r = ok(lower_bound_certificate(&rep, 4, 200, 2, &c))?;
    ensure(r.k == 2, format!("k = {}", r.k))?;
    for st in &r.steps {
        ensure(
            st.certificates_passed == 200 && st.sampled_images_ok,
            format!("s = {}: {}/200 certificates", st.s, st.certificates_passed),
        )?;
        ensure(
            st.com_bound_ok,
            format!(
                "s = {}: omitting image of index {:?} < s^2",
                st.s, st.min_omitting_index
            ),
        )?;
        ensure(st.lcm_divisible, format!("s = {}: lcm check", st.s))?;
    }
    let last = r.steps.last().ok_or("no steps")?;
    Ok(format!(
        "s ≤ 4: 200/200 certificates each, {} box images, least omitting index at s = 4: {:?}",
        last.com_lattices, last.min_omitting_index
    ))
}

fn number_theory() -> Outcome {
    let c = Config::default();
    let mut ratios = Vec::new();
    for s in [500u64, 1000, 2000, 5000] {
        let r = chebyshev_psi(s) / s as f64;
        ensure((0.85..=1.25).contains(&r), format!("ψ({s})/{s} = {r:.4}"))?;
        ratios.push(format!("{r:.4}"));
    }
    let fit = ok(fit_prime_bound(300, 8, c.prime_search_bound))?;
    ensure(fit.holds(), "fitted envelope violated")?;
    ensure(fit.samples.len() == 300, "expected 300 samples")?;
    Ok(format!(
        "ψ(s)/s = {}; p ≤ {:.3}·log lcm + {:.3} (max residual {:.3}) for s ≤ 300",
        ratios.join(", "),
        fit.a,
        fit.b,
        fit.max_residual
    ))
}

fn random_nonsingular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let m = IntMatrix::from_i64_rows(&rows).unwrap();
        if !m.det().is_zero() {
            return m;
        }
    }
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut e = IntMatrix::identity(n);
        if i == j {
            e.set(i, i, BigInt::from(-1));
        } else {
            e.set(i, j, BigInt::from(rng.gen_range(-3..=3)));
        }
        u = e.mul(&u);
    }
    u
}

fn block_reps() -> Vec<(&'static str, &'static str, &'static str)> {
    vec![
        ("product(rot(4),trivial(1))", "rot(4)", "trivial(1)"),
        ("product(std_sym(3),trivial(2))", "std_sym(3)", "trivial(2)"),
        ("product(rot(4),rot(3))", "rot(4)", "rot(3)"),
        ("product(d4_paper,rot(2))", "d4_paper", "rot(2)"),
    ]
}

fn structural_suites() -> Outcome {
    let c = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let m = random_nonsingular(&mut rng, n);
        let u = random_unimodular(&mut rng, n);
        ensure(
            ok(hnf(&u.mul(&m)))? == ok(hnf(&m))?,
            format!("HNF not canonical for {m:?}"),
        )?;
        let det = m.det();
        ensure(
            m.mul(&m.adjugate()) == IntMatrix::scalar(n, det.clone()),
            format!("adjugate identity fails for {m:?}"),
        )?;
        let d = ok(snf(&m))?;
        ensure(
            d.windows(2).all(|w| w[1].is_multiple_of(&w[0])),
            format!("SNF chain {d:?}"),
        )?;
        ensure(
            d.iter().product::<BigInt>() == det.abs(),
            format!("SNF product {d:?} vs det {det}"),
        )?;
    }

    let entry = ok(catalog_entry("d4_paper", c.element_bound))?;
    let table = entry.table.ok_or("no table")?;
    let order: i64 = table.class_sizes.iter().map(|&s| s as i64).sum();
    for (i, a) in table.characters.iter().enumerate() {
        for (j, b) in table.characters.iter().enumerate() {
            // real-valued characters, so no conjugation is needed
            let s: i64 = (0..a.len()).map(|t| table.class_sizes[t] as i64 * a[t] * b[t]).sum();
            ensure(
                s == if i == j { order } else { 0 },
                format!("⟨χ_{i}, χ_{j}⟩ = {s}/{order}"),
            )?;
        }
    }

    let (mut checked, mut skipped) = (0, 0);
    for (whole, left, right) in block_reps() {
        let rep = ok(catalog_rep(whole, c.element_bound))?;
        let r1 = ok(catalog_rep(left, c.element_bound))?;
        let r2 = ok(catalog_rep(right, c.element_bound))?;
        let (m1, m2) = (r1.degree(), r2.degree());
        let mut whole_cache = ok(FamilyCache::new(FamilySpec::Invariant(rep.clone()), m1 + m2, &c))?;
        let mut c1 = ok(FamilyCache::new(FamilySpec::Invariant(r1), m1, &c))?;
        let mut c2 = ok(FamilyCache::new(FamilySpec::Invariant(r2), m2, &c))?;
        for _ in 0..40 {
            let v1 = random_vector(&mut rng, m1, 12);
            let v2 = random_vector(&mut rng, m2, 12);
            let v: Vec<i64> = v1.iter().chain(&v2).copied().collect();
            let budget = 2000;
            let (Ok(d), Ok(d1), Ok(d2)) = (
                whole_cache.divisibility(&v, budget),
                c1.divisibility(&v1, budget),
                c2.divisibility(&v2, budget),
            ) else {
                skipped += 1;
                continue;
            };
            checked += 1;
            // the block projections are equivariant surjections, so this is
            // also the surjection inequality for each of them
            ensure(d <= d1.min(d2), format!("{whole} {v:?}: D = {d} > min({d1}, {d2})"))?;
            let w = ok(upper_bound_witness(&rep, &big(&v), &c))?;
            ensure(
                BigInt::from(d) <= *w.index(),
                format!("{whole} {v:?}: D = {d} > witness index {}", w.index()),
            )?;
        }
    }
    ensure(checked > 0, "no block example realized within budget")?;
    Ok(format!(
        "HNF, adjugate and SNF on 100 matrices; D4 table orthonormal; block inequalities on {checked} vectors ({skipped} beyond budget)"
    ))
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "D4 worked example",
            limit: secs(1),
            run: d4_example,
        },
        Criterion {
            id: 2,
            name: "quaternion commutant certificate",
            limit: secs(1),
            run: quaternion_example,
        },
        Criterion {
            id: 3,
            name: "invariant but not a commutant image",
            limit: None,
            run: invariant_not_commutant,
        },
        Criterion {
            id: 4,
            name: "symmetric group construction",
            limit: None,
            run: symmetric_groups,
        },
        Criterion {
            id: 5,
            name: "prime stability",
            limit: None,
            run: prime_stability,
        },
        Criterion {
            id: 6,
            name: "abelian iff k = 1",
            limit: None,
            run: abelian_corollary,
        },
        Criterion {
            id: 7,
            name: "witness soundness",
            limit: secs(30),
            run: witness_soundness,
        },
        Criterion {
            id: 8,
            name: "divisibility oracle on Z",
            limit: secs(5),
            run: z_oracle,
        },
        Criterion {
            id: 9,
            name: "quaternion lower bound",
            limit: secs(60),
            run: quaternion_lower_bound,
        },
        Criterion {
            id: 10,
            name: "number-theory window",
            limit: secs(30),
            run: number_theory,
        },
        Criterion {
            id: 11,
            name: "structural property suites",
            limit: None,
            run: structural_suites,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut result = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&result, c.limit) {
            if elapsed > limit {
                result = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] criterion {:>2} {}: {detail} ({elapsed:.2?})", c.id, c.name);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
