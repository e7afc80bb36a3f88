//! Named representations: the dihedral and quaternion examples, symmetric
//! groups, rotations, trivial representations and block products.
//!
//! Names may nest: `product(std_sym(3),trivial(2))`.

use rand::seq::SliceRandom;
use rand::Rng;

use super::rep::Rep;
use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;
use crate::repdecomp::CharacterTable;

/// A catalog representation with whatever companion data is known for it.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub rep: Rep,
    pub table: Option<CharacterTable>,
    /// Integer matrices known to commute with the representation.
    pub commutant_examples: Vec<IntMatrix>,
    /// Matrices with invariant image that need not commute.
    pub invariant_examples: Vec<IntMatrix>,
}

/// Name patterns accepted by [`catalog_entry`], with a one-line description.
pub const CATALOG_NAMES: &[(&str, &str)] = &[
    ("d4_paper", "dihedral group of order 8 on Z^3"),
    (
        "quaternion_paper",
        "quaternion group Q8 on Z^4, with a commuting matrix",
    ),
    (
        "invariant_det2_lattice",
        "Q8 on Z^4 with an invariant, non-commuting det-2 matrix",
    ),
    ("perm_sym(n)", "S_n permuting coordinates of Z^n, n ≥ 2"),
    ("std_sym(n)", "S_n on the sum-zero sublattice, basis e_i - e_(i+1)"),
    ("rot(n)", "cyclic rotation of order n on Z^2, n in {1, 2, 3, 4, 6}"),
    ("trivial(m)", "trivial group on Z^m"),
    ("product(A,B)", "block diagonal direct product of two entries"),
];

/// Entries swept by consistency checks: every worked example plus small
/// members of each parametrized family.
pub fn standard_catalog() -> Vec<&'static str> {
    vec![
        "d4_paper",
        "quaternion_paper",
        "perm_sym(2)",
        "perm_sym(3)",
        "perm_sym(4)",
        "perm_sym(5)",
        "std_sym(3)",
        "std_sym(4)",
        "std_sym(5)",
        "rot(2)",
        "rot(3)",
        "rot(4)",
        "rot(6)",
        "trivial(1)",
        "trivial(2)",
        "trivial(3)",
        "product(rot(4),trivial(1))",
        "product(std_sym(3),trivial(2))",
        "product(rot(4),rot(3))",
    ]
}

pub fn catalog_rep(name: &str, element_bound: usize) -> Result<Rep> {
    catalog_entry(name, element_bound).map(|e| e.rep)
}

pub fn catalog_entry(name: &str, element_bound: usize) -> Result<CatalogEntry> {
    let (head, args) = parse_name(name)?;
    let unknown = || Error::UnknownName(name.to_string());
    let int_arg = |args: &[String]| -> Result<usize> {
        match args {
            [a] => a.trim().parse::<usize>().map_err(|_| unknown()),
            _ => Err(unknown()),
        }
    };
    let entry = match (head.as_str(), args.is_empty()) {
        ("d4_paper", true) => CatalogEntry {
            rep: Rep::new(name, d4_generators(), element_bound)?,
            table: Some(d4_table()),
            commutant_examples: vec![],
            invariant_examples: vec![],
        },
        ("quaternion_paper", true) => CatalogEntry {
            rep: Rep::new(name, quaternion_generators(), element_bound)?,
            table: Some(q8_table()),
            commutant_examples: vec![quaternion_commutant()],
            invariant_examples: vec![],
        },
        ("invariant_det2_lattice", true) => CatalogEntry {
            rep: Rep::new(name, quaternion_generators(), element_bound)?,
            table: Some(q8_table()),
            commutant_examples: vec![quaternion_commutant()],
            invariant_examples: vec![invariant_det2()],
        },
        ("perm_sym", false) | ("std_sym", false) => {
            let n = int_arg(&args)?;
            if n < 2 {
                return Err(unknown());
            }
            let perms = sym_generators(n);
            let gens = if head == "perm_sym" {
                perms.iter().map(|p| perm_matrix(p)).collect()
            } else {
                perms.iter().map(|p| std_matrix(p)).collect()
            };
            let rep = Rep::new(name, gens, element_bound)?;
            CatalogEntry {
                table: sym_table(n, element_bound)?,
                rep,
                commutant_examples: vec![],
                invariant_examples: vec![],
            }
        }
        ("rot", false) => {
            let n = int_arg(&args)?;
            let g: &[&[i64]] = match n {
                1 => &[&[1, 0], &[0, 1]],
                2 => &[&[-1, 0], &[0, -1]],
                3 => &[&[0, -1], &[1, -1]],
                4 => &[&[0, -1], &[1, 0]],
                6 => &[&[1, -1], &[1, 0]],
                _ => return Err(unknown()),
            };
            let table = match n {
                1 => Some(trivial_table()),
                2 => Some(CharacterTable {
                    class_reps: vec![vec![], vec![0]],
                    class_sizes: vec![1, 1],
                    characters: vec![vec![1, 1], vec![1, -1]],
                }),
                _ => None,
            };
            CatalogEntry {
                rep: Rep::new(name, vec![IntMatrix::from_i64(g)], element_bound)?,
                table,
                commutant_examples: vec![],
                invariant_examples: vec![],
            }
        }
        ("trivial", false) => {
            let m = int_arg(&args)?;
            if m == 0 {
                return Err(unknown());
            }
            CatalogEntry {
                rep: Rep::new(name, vec![IntMatrix::identity(m)], element_bound)?,
                table: Some(trivial_table()),
                commutant_examples: vec![],
                invariant_examples: vec![],
            }
        }
        ("product", false) => {
            let [a, b] = args.as_slice() else {
                return Err(unknown());
            };
            product(
                name,
                &catalog_entry(a, element_bound)?,
                &catalog_entry(b, element_bound)?,
                element_bound,
            )?
        }
        _ => return Err(unknown()),
    };
    Ok(entry)
}

/// Split `head(arg, arg, …)` at top-level commas.
fn parse_name(name: &str) -> Result<(String, Vec<String>)> {
    let name = name.trim();
    let Some(open) = name.find('(') else {
        return Ok((name.to_string(), vec![]));
    };
    if !name.ends_with(')') {
        return Err(Error::UnknownName(name.to_string()));
    }
    let inner = &name[open + 1..name.len() - 1];
    let mut args = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(inner[start..i].trim().to_string());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::UnknownName(name.to_string()));
        }
    }
    if depth != 0 {
        return Err(Error::UnknownName(name.to_string()));
    }
    args.push(inner[start..].trim().to_string());
    if args.iter().any(String::is_empty) {
        return Err(Error::UnknownName(name.to_string()));
    }
    Ok((name[..open].trim().to_string(), args))
}

fn product(name: &str, a: &CatalogEntry, b: &CatalogEntry, element_bound: usize) -> Result<CatalogEntry> {
    let (ma, mb) = (a.rep.degree(), b.rep.degree());
    let mut gens: Vec<IntMatrix> = a
        .rep
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| g.direct_sum(&IntMatrix::identity(mb)))
        .collect();
    let kept_all_of_a = gens.len() == a.rep.generators().len();
    gens.extend(
        b.rep
            .generators()
            .iter()
            .filter(|h| !h.is_identity())
            .map(|h| IntMatrix::identity(ma).direct_sum(h)),
    );
    if gens.is_empty() {
        gens.push(IntMatrix::identity(ma + mb));
    }
    let rep = Rep::new(name, gens, element_bound)?;
    // φ ⊕ Id: the group and its generator words are those of the first factor
    let table = if b.rep.order() == 1 && kept_all_of_a {
        a.table.clone()
    } else {
        None
    };
    Ok(CatalogEntry {
        rep,
        table,
        commutant_examples: vec![],
        invariant_examples: vec![],
    })
}

pub fn d4_generators() -> Vec<IntMatrix> {
    vec![
        IntMatrix::from_i64(&[&[-1, 1, -1], &[-2, 0, -1], &[2, -1, 2]]),
        IntMatrix::from_i64(&[&[-3, 0, -2], &[0, 1, 0], &[4, 0, 3]]),
    ]
}

pub fn quaternion_generators() -> Vec<IntMatrix> {
    vec![
        IntMatrix::from_i64(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]),
        IntMatrix::from_i64(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 0, 0], &[0, -1, 0, 0]]),
        IntMatrix::from_i64(&[&[0, 0, 0, 1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]]),
    ]
}

/// Matrix commuting with the quaternion representation; charpoly `(X²−2X+6)²`.
pub fn quaternion_commutant() -> IntMatrix {
    IntMatrix::from_i64(&[&[1, -1, -2, 0], &[1, 1, 0, 2], &[2, 0, 1, -1], &[0, -2, 1, 1]])
}

/// Determinant 2, image invariant under the quaternion representation.
pub fn invariant_det2() -> IntMatrix {
    IntMatrix::from_i64(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 1, 2]])
}

/// Classes {1}, {a,a³}, {a²}, {ab,a³b}, {b,a²b} with a, b the two generators.
fn d4_table() -> CharacterTable {
    CharacterTable {
        class_reps: vec![vec![], vec![0], vec![0, 0], vec![0, 1], vec![1]],
        class_sizes: vec![1, 2, 1, 2, 2],
        characters: vec![
            vec![1, 1, 1, 1, 1],
            vec![1, -1, 1, -1, 1],
            vec![1, 1, 1, -1, -1],
            vec![1, -1, 1, 1, -1],
            vec![2, 0, -2, 0, 0],
        ],
    }
}

/// Classes 1, −1, ±i, ±j, ±k with i, j, k the three generators.
fn q8_table() -> CharacterTable {
    CharacterTable {
        class_reps: vec![vec![], vec![0, 0], vec![0], vec![1], vec![2]],
        class_sizes: vec![1, 1, 2, 2, 2],
        characters: vec![
            vec![1, 1, 1, 1, 1],
            vec![1, 1, 1, -1, -1],
            vec![1, 1, -1, 1, -1],
            vec![1, 1, -1, -1, 1],
            vec![2, -2, 0, 0, 0],
        ],
    }
}

fn trivial_table() -> CharacterTable {
    CharacterTable {
        class_reps: vec![vec![]],
        class_sizes: vec![1],
        characters: vec![vec![1]],
    }
}

/// `(1 2)` and `(1 2 … n)` as images of `0..n`.
fn sym_generators(n: usize) -> Vec<Vec<usize>> {
    let mut s: Vec<usize> = (0..n).collect();
    s.swap(0, 1);
    let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    if n == 2 {
        vec![s]
    } else {
        vec![s, c]
    }
}

/// Matrix sending `e_i` to `e_{σ(i)}`.
fn perm_matrix(sigma: &[usize]) -> IntMatrix {
    let n = sigma.len();
    let mut rows = vec![vec![0i64; n]; n];
    for (i, &j) in sigma.iter().enumerate() {
        rows[j][i] = 1;
    }
    IntMatrix::from_i64_rows(&rows).expect("nonempty")
}

/// Action of `σ` on the basis `f_i = e_i − e_{i+1}` of the sum-zero lattice.
fn std_matrix(sigma: &[usize]) -> IntMatrix {
    let d = sigma.len() - 1;
    let mut rows = vec![vec![0i64; d]; d];
    for i in 0..d {
        let (a, b) = (sigma[i], sigma[i + 1]);
        // e_a − e_b = ±(f_min + … + f_{max−1})
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        for row in rows.iter_mut().take(hi).skip(lo) {
            row[i] = sign;
        }
    }
    IntMatrix::from_i64_rows(&rows).expect("nonempty")
}

fn cycle_type(m: &IntMatrix) -> Vec<usize> {
    let n = m.rows();
    let sigma: Vec<usize> = (0..n)
        .map(|i| {
            (0..n)
                .find(|&j| !num_traits::Zero::is_zero(m.get(j, i)))
                .expect("permutation")
        })
        .collect();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for i in 0..n {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = sigma[j];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Character table of S_n for n ≤ 5, keyed by cycle type. Class words are
/// read off the closure of the permutation generators, which is shared by
/// `perm_sym(n)` and `std_sym(n)`.
fn sym_table(n: usize, element_bound: usize) -> Result<Option<CharacterTable>> {
    let rows: Vec<(Vec<usize>, Vec<i64>)> = match n {
        2 => vec![(vec![1, 1], vec![1, 1]), (vec![2], vec![1, -1])],
        3 => vec![
            (vec![1, 1, 1], vec![1, 1, 2]),
            (vec![2, 1], vec![1, -1, 0]),
            (vec![3], vec![1, 1, -1]),
        ],
        4 => vec![
            (vec![1, 1, 1, 1], vec![1, 1, 3, 3, 2]),
            (vec![2, 1, 1], vec![1, -1, 1, -1, 0]),
            (vec![2, 2], vec![1, 1, -1, -1, 2]),
            (vec![3, 1], vec![1, 1, 0, 0, -1]),
            (vec![4], vec![1, -1, -1, 1, 0]),
        ],
        5 => vec![
            (vec![1, 1, 1, 1, 1], vec![1, 1, 4, 4, 5, 5, 6]),
            (vec![2, 1, 1, 1], vec![1, -1, 2, -2, 1, -1, 0]),
            (vec![2, 2, 1], vec![1, 1, 0, 0, 1, 1, -2]),
            (vec![3, 1, 1], vec![1, 1, 1, 1, -1, -1, 0]),
            (vec![3, 2], vec![1, -1, -1, 1, 1, -1, 0]),
            (vec![4, 1], vec![1, -1, 0, 0, -1, 1, 0]),
            (vec![5], vec![1, 1, -1, -1, 0, 0, 1]),
        ],
        _ => return Ok(None),
    };
    // rows above are columns (one per cycle type); transpose into characters
    let perm = Rep::new(
        "perm",
        sym_generators(n).iter().map(|p| perm_matrix(p)).collect(),
        element_bound,
    )?;
    let mut class_reps = Vec::new();
    let mut class_sizes = Vec::new();
    for (ty, _) in &rows {
        let class = perm
            .classes()
            .classes()
            .iter()
            .find(|c| &cycle_type(&perm.elements()[c.representative]) == ty)
            .expect("every cycle type occurs");
        class_reps.push(perm.word(class.representative).to_vec());
        class_sizes.push(class.size());
    }
    let characters = (0..rows.len())
        .map(|i| rows.iter().map(|(_, col)| col[i]).collect())
        .collect();
    Ok(Some(CharacterTable {
        class_reps,
        class_sizes,
        characters,
    }))
}

/// Random signed permutation matrices of degree `m`; the generated group is
/// always finite.
pub fn random_monomial_rep<R: Rng>(rng: &mut R, m: usize, generator_count: usize, element_bound: usize) -> Result<Rep> {
    let gens = (0..generator_count.max(1))
        .map(|_| {
            let mut sigma: Vec<usize> = (0..m).collect();
            sigma.shuffle(rng);
            let mut rows = vec![vec![0i64; m]; m];
            for (i, &j) in sigma.iter().enumerate() {
                rows[j][i] = if rng.gen_bool(0.5) { 1 } else { -1 };
            }
            IntMatrix::from_i64_rows(&rows).expect("nonempty")
        })
        .collect();
    Rep::new(format!("monomial({m})"), gens, element_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::character_of_rep;
    use rand::SeedableRng;

    #[test]
    fn worked_example_entries() {
        let d4 = catalog_rep("d4_paper", 100).unwrap();
        assert_eq!(d4.degree(), 3);
        assert_eq!(d4.generators(), d4_generators().as_slice());
        assert_eq!(d4.order(), 8);
        let q = catalog_entry("quaternion_paper", 100).unwrap();
        assert_eq!(q.rep.order(), 8);
        for g in q.rep.generators() {
            assert!(g.commutes_with(&q.commutant_examples[0]));
        }
        let inv = catalog_entry("invariant_det2_lattice", 100).unwrap();
        assert_eq!(inv.invariant_examples[0].det(), 2.into());
    }

    #[test]
    fn parametrized_entries() {
        let fact = [1, 1, 2, 6, 24, 120];
        for (n, &order) in fact.iter().enumerate().skip(2) {
            let p = catalog_rep(&format!("perm_sym({n})"), 1000).unwrap();
            assert_eq!(p.order(), order);
            assert_eq!(character_of_rep(&p).unwrap().values()[0], n as i64);
            let s = catalog_rep(&format!("std_sym({n})"), 1000).unwrap();
            assert_eq!(s.order(), order);
            assert_eq!(s.degree(), n - 1);
        }
        let t = catalog_rep("trivial(2)", 10).unwrap();
        assert_eq!(t.order(), 1);
        assert!(t.generators().iter().all(IntMatrix::is_identity));
        for (n, ord) in [(1, 1), (2, 2), (3, 3), (4, 4), (6, 6)] {
            assert_eq!(catalog_rep(&format!("rot({n})"), 10).unwrap().order(), ord);
        }
    }

    #[test]
    fn std_sym_is_sum_zero_restriction() {
        // perm_sym(n) restricted to span{e_i − e_{i+1}} has character χ_perm − 1
        for n in 3..=5 {
            let p = catalog_rep(&format!("perm_sym({n})"), 1000).unwrap();
            let s = catalog_rep(&format!("std_sym({n})"), 1000).unwrap();
            for (x, y) in p.elements().iter().zip(s.elements()) {
                assert_eq!(x.trace() - 1, y.trace());
            }
        }
    }

    #[test]
    fn products_and_parsing() {
        let e = catalog_entry("product(std_sym(3),trivial(2))", 100).unwrap();
        assert_eq!(e.rep.degree(), 4);
        assert_eq!(e.rep.order(), 6);
        assert!(e.table.is_some());
        let e = catalog_entry("product(rot(4), rot(3))", 100).unwrap();
        assert_eq!(e.rep.order(), 12);
        for bad in [
            "nope",
            "rot(5)",
            "perm_sym(x)",
            "product(rot(4))",
            "trivial(0)",
            "rot(4",
            "perm_sym(1)",
        ] {
            assert!(matches!(catalog_entry(bad, 100), Err(Error::UnknownName(_))), "{bad}");
        }
    }

    #[test]
    fn every_standard_entry_builds() {
        for name in standard_catalog() {
            let e = catalog_entry(name, 1000).unwrap();
            character_of_rep(&e.rep).unwrap();
            if let Some(t) = &e.table {
                t.validate().unwrap();
                t.align(&e.rep).unwrap();
            }
        }
    }

    #[test]
    fn monomial_reps_are_finite() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let r = random_monomial_rep(&mut rng, 3, 2, 1000).unwrap();
            assert!(r.order() <= 48);
        }
    }
}
