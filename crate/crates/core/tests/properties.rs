use num_bigint::BigInt;
use proptest::prelude::*;

use vabgrowth::exactalg::Lattice;
use vabgrowth::grouprep::{catalog_rep, standard_catalog, Rep};
use vabgrowth::lattice::{enumerate_family, is_invariant_lattice, FamilySpec};
use vabgrowth::rfgrowth::{chebyshev_psi, divisibility, rf_profile, sphere, FamilyCache};
use vabgrowth::{Config, Error};

const REPS: [&str; 5] = ["d4_paper", "rot(4)", "rot(3)", "quaternion_paper", "std_sym(3)"];

fn rep(i: usize) -> Rep {
    catalog_rep(REPS[i], 1000).unwrap()
}

fn vector(m: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-15i64..=15, m).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

fn rep_and_vector() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..REPS.len()).prop_flat_map(|i| (Just(i), vector(rep(i).degree())))
}

fn act(g: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    g.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn families_are_nested((i, v) in rep_and_vector()) {
        let c = Config::default();
        let r = rep(i);
        let nu = divisibility(&v, &FamilySpec::AllFiniteIndex, &c).unwrap();
        let inv = divisibility(&v, &FamilySpec::Invariant(r.clone()), &c).unwrap();
        prop_assert!(nu <= inv, "ν {} > Inv {}", nu, inv);
        let com_spec = FamilySpec::CommutantImages { rep: r, coefficient_box: 1 };
        let small = Config { index_budget: 400, ..c };
        match divisibility(&v, &com_spec, &small) {
            Ok(com) => prop_assert!(inv <= com, "Inv {} > Com {}", inv, com),
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn divisibility_is_symmetric((i, v) in rep_and_vector()) {
        let c = Config::default();
        let r = rep(i);
        let mut cache = FamilyCache::new(FamilySpec::Invariant(r.clone()), r.degree(), &c).unwrap();
        let d = cache.divisibility(&v, c.index_budget).unwrap();
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        prop_assert_eq!(cache.divisibility(&neg, c.index_budget).unwrap(), d);
        for h in r.elements_i64().unwrap() {
            prop_assert_eq!(cache.divisibility(&act(&h, &v), c.index_budget).unwrap(), d);
        }
        let mut nu = FamilyCache::new(FamilySpec::AllFiniteIndex, r.degree(), &c).unwrap();
        let dn = nu.divisibility(&v, c.index_budget).unwrap();
        prop_assert_eq!(nu.divisibility(&neg, c.index_budget).unwrap(), dn);
    }

    #[test]
    fn scalar_lattice_omission_bounds_divisibility((i, v) in rep_and_vector()) {
        // q·Z^m omits v exactly when q ∤ gcd(v)
        let c = Config::default();
        let r = rep(i);
        let m = r.degree();
        let g = v.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
        let q = (2..).find(|q| g % q != 0).unwrap();
        let d = divisibility(&v, &FamilySpec::Invariant(r), &c).unwrap();
        prop_assert!(d <= q.pow(m as u32) as u64);
    }
}

#[test]
fn scalar_lattices_lie_in_every_family() {
    for i in 0..REPS.len() {
        let r = rep(i);
        let m = r.degree();
        let top = if m >= 4 { 2 } else { 3 };
        let max = (top as u64).pow(m as u32);
        let specs = [
            FamilySpec::AllFiniteIndex,
            FamilySpec::Invariant(r.clone()),
            FamilySpec::CommutantImages {
                rep: r.clone(),
                coefficient_box: 3,
            },
        ];
        for spec in &specs {
            let family: Vec<Lattice> = enumerate_family(spec, m, max).unwrap().collect();
            for x in 1..=top {
                let scalar = Lattice::scalar(m, &BigInt::from(x));
                assert!(family.contains(&scalar), "{} lacks {x}Z^{m}", spec.label());
            }
        }
    }
}

#[test]
fn commutant_images_are_invariant() {
    for i in 0..REPS.len() {
        let r = rep(i);
        let spec = FamilySpec::CommutantImages {
            rep: r.clone(),
            coefficient_box: 2,
        };
        let mut count = 0;
        for l in enumerate_family(&spec, r.degree(), 200).unwrap() {
            assert!(is_invariant_lattice(&l, &r).unwrap());
            count += 1;
        }
        assert!(count > 0);
    }
}

#[test]
fn profiles_dominate_each_vector() {
    for i in [0usize, 1, 3] {
        let r = rep(i);
        let m = r.degree();
        let spec = FamilySpec::Invariant(r);
        let profile = rf_profile(&spec, m, 6, 10_000).unwrap();
        let mut cache = FamilyCache::new(spec, m, &Config::default()).unwrap();
        let mut best = 0;
        for radius in 1..=6u64 {
            for v in sphere(m, radius) {
                best = best.max(cache.divisibility(&v, 10_000).unwrap());
            }
            let rf = profile.rf(radius).unwrap();
            assert_eq!(rf, best, "{} r = {radius}", REPS[i]);
            if radius > 1 {
                assert!(rf >= profile.rf(radius - 1).unwrap());
            }
        }
    }
}

#[test]
fn psi_window_holds_throughout() {
    for s in 500..=5000 {
        let ratio = chebyshev_psi(s) / s as f64;
        assert!((0.85..=1.25).contains(&ratio), "ψ({s})/{s} = {ratio}");
    }
}

#[test]
fn catalog_group_invariants() {
    for name in standard_catalog() {
        let r = catalog_rep(name, 20_000).unwrap();
        for e in r.elements() {
            let d = e.det();
            assert!(d == BigInt::from(1) || d == BigInt::from(-1), "{name}");
        }
        for class in r.classes().classes() {
            let traces: Vec<BigInt> = class.members.iter().map(|&e| r.elements()[e].trace()).collect();
            assert!(traces.windows(2).all(|w| w[0] == w[1]), "{name}");
        }
    }
    for n in 2..=5usize {
        let r = catalog_rep(&format!("perm_sym({n})"), 20_000).unwrap();
        assert_eq!(r.order(), (1..=n).product::<usize>());
    }
}
