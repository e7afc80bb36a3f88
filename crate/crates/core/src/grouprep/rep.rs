use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::exactalg::IntMatrix;

/// A finite matrix group `φ(H) ≤ GL(m, Z)` given by generator images, with
/// its elements enumerated once at construction.
///
/// Elements are listed in breadth-first order from the identity, extending
/// by right multiplication with the generators in their given order, so the
/// element list (and everything derived from it) is reproducible.
#[derive(Clone)]
pub struct Rep {
    name: String,
    generators: Vec<IntMatrix>,
    elements: Vec<IntMatrix>,
    words: Vec<Vec<usize>>,
    lookup: HashMap<IntMatrix, usize>,
    classes: ConjClasses,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.elements == other.elements
    }
}

impl Eq for Rep {}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rep")
            .field("name", &self.name)
            .field("degree", &self.degree())
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Conjugacy classes in order of their first member in the element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClasses {
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    /// Index of the first-discovered member.
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl ConjClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ConjClass::size).collect()
    }

    /// Class containing element `e`.
    pub fn class_of(&self, e: usize) -> usize {
        self.class_of[e]
    }

    pub fn group_order(&self) -> usize {
        self.class_of.len()
    }
}

/// One integer value per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction(pub Vec<i64>);

impl ClassFunction {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Summary produced by [`validate_rep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepReport {
    pub name: String,
    pub degree: usize,
    pub order: usize,
    pub class_count: usize,
    pub class_sizes: Vec<usize>,
    pub abelian: bool,
}

impl fmt::Display for RepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name: {}", self.name)?;
        writeln!(f, "degree: {}", self.degree)?;
        writeln!(f, "order: {}", self.order)?;
        writeln!(f, "classes: {} {:?}", self.class_count, self.class_sizes)?;
        write!(f, "abelian: {}", self.abelian)
    }
}

/// Enumerate the group generated by `generators`.
pub fn close_group(generators: &[IntMatrix], element_bound: usize) -> Result<Rep> {
    Rep::new("unnamed", generators.to_vec(), element_bound)
}

impl Rep {
    pub fn new(name: impl Into<String>, generators: Vec<IntMatrix>, element_bound: usize) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::Invalid("a representation needs at least one generator".into()))?;
        let m = first.rows();
        for g in &generators {
            if !g.is_square() || g.rows() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: if g.rows() != m { g.rows() } else { g.cols() },
                });
            }
        }
        for (i, g) in generators.iter().enumerate() {
            let d = g.det();
            if d != BigInt::one() && d != -BigInt::one() {
                return Err(Error::NotInvertible(i));
            }
        }
        let (elements, words, lookup) = bfs_closure(&generators, element_bound)?;
        let inverses: Vec<IntMatrix> = generators.iter().map(inverse_unimodular).collect();
        let classes = compute_classes(&elements, &lookup, &generators, &inverses);
        Ok(Rep {
            name: name.into(),
            generators,
            elements,
            words,
            lookup,
            classes,
        })
    }

    pub fn with_config(name: impl Into<String>, generators: Vec<IntMatrix>, config: &Config) -> Result<Self> {
        Self::new(name, generators, config.element_bound)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn degree(&self) -> usize {
        self.generators[0].rows()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    /// All group elements in breadth-first order; index 0 is the identity.
    pub fn elements(&self) -> &[IntMatrix] {
        &self.elements
    }

    /// Generator word reaching element `e` in the breadth-first tree.
    pub fn word(&self, e: usize) -> &[usize] {
        &self.words[e]
    }

    pub fn index_of(&self, m: &IntMatrix) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    pub fn classes(&self) -> &ConjClasses {
        &self.classes
    }

    /// Element `g_{w_0} g_{w_1} ⋯` for a word over generator indices.
    pub fn resolve_word(&self, word: &[usize]) -> Result<usize> {
        let mut acc = IntMatrix::identity(self.degree());
        for &i in word {
            let g = self
                .generators
                .get(i)
                .ok_or_else(|| Error::UnresolvedClassWord(word.to_vec()))?;
            acc = acc.mul(g);
        }
        self.index_of(&acc)
            .ok_or_else(|| Error::UnresolvedClassWord(word.to_vec()))
    }

    /// True when the generators pairwise commute (equivalently, the image is
    /// abelian).
    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    /// Generators as `i64` rows, when every entry fits.
    pub fn generators_i64(&self) -> Option<Vec<Vec<Vec<i64>>>> {
        self.generators.iter().map(IntMatrix::to_i64_rows).collect()
    }

    /// Elements as `i64` rows, when every entry fits.
    pub fn elements_i64(&self) -> Option<Vec<Vec<Vec<i64>>>> {
        self.elements.iter().map(IntMatrix::to_i64_rows).collect()
    }
}

type Closure = (Vec<IntMatrix>, Vec<Vec<usize>>, HashMap<IntMatrix, usize>);

fn bfs_closure(generators: &[IntMatrix], bound: usize) -> Result<Closure> {
    let id = IntMatrix::identity(generators[0].rows());
    let mut elements = vec![id.clone()];
    let mut words = vec![Vec::new()];
    let mut lookup = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (gi, g) in generators.iter().enumerate() {
            let y = elements[x].mul(g);
            if lookup.contains_key(&y) {
                continue;
            }
            if elements.len() == bound {
                return Err(Error::NotFinite(bound));
            }
            let mut w = words[x].clone();
            w.push(gi);
            lookup.insert(y.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(y);
            words.push(w);
        }
    }
    Ok((elements, words, lookup))
}

/// Inverse of a matrix with determinant ±1.
fn inverse_unimodular(g: &IntMatrix) -> IntMatrix {
    let d = g.det();
    g.adjugate().scale(&d)
}

fn compute_classes(
    elements: &[IntMatrix],
    lookup: &HashMap<IntMatrix, usize>,
    generators: &[IntMatrix],
    inverses: &[IntMatrix],
) -> ConjClasses {
    let n = elements.len();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let x = &elements[members[i]];
            for (g, gi) in generators.iter().zip(inverses) {
                let y = gi.mul(x).mul(g);
                let yi = lookup[&y];
                if class_of[yi] == usize::MAX {
                    class_of[yi] = id;
                    members.push(yi);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        classes.push(ConjClass {
            representative: start,
            members,
        });
    }
    ConjClasses { classes, class_of }
}

/// `χ_φ`, the trace of each class.
pub fn character_of_rep(rep: &Rep) -> Result<ClassFunction> {
    let mut values = Vec::with_capacity(rep.classes.len());
    for c in rep.classes.classes() {
        let t = rep.elements[c.representative].trace();
        if c.members.iter().any(|&e| rep.elements[e].trace() != t) {
            return Err(Error::Invalid("trace is not constant on a conjugacy class".into()));
        }
        values.push(
            t.to_i64()
                .ok_or_else(|| Error::Invalid("trace does not fit in 64 bits".into()))?,
        );
    }
    Ok(ClassFunction(values))
}

pub fn conjugacy_classes(rep: &Rep) -> &ConjClasses {
    rep.classes()
}

pub fn validate_rep(rep: &Rep) -> RepReport {
    RepReport {
        name: rep.name.clone(),
        degree: rep.degree(),
        order: rep.order(),
        class_count: rep.classes.len(),
        class_sizes: rep.classes.sizes(),
        abelian: rep.is_abelian(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouprep::catalog::catalog_rep;

    fn rot4() -> IntMatrix {
        IntMatrix::from_i64(&[&[0, -1], &[1, 0]])
    }

    #[test]
    fn identity_group() {
        let r = close_group(&[IntMatrix::identity(3)], 100).unwrap();
        assert_eq!(r.order(), 1);
        assert_eq!(r.classes().len(), 1);
        assert_eq!(character_of_rep(&r).unwrap().values(), &[3]);
    }

    #[test]
    fn rejects_bad_generators() {
        let two = IntMatrix::diag(&[1, 2]);
        assert!(matches!(close_group(&[rot4(), two], 100), Err(Error::NotInvertible(1))));
        let shear = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert!(matches!(close_group(&[shear], 50), Err(Error::NotFinite(50))));
        let mixed = [rot4(), IntMatrix::identity(3)];
        assert!(matches!(close_group(&mixed, 50), Err(Error::DimensionMismatch { .. })));
        assert!(close_group(&[], 50).is_err());
    }

    #[test]
    fn rotation_group() {
        let r = close_group(&[rot4()], 100).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.classes().sizes(), vec![1, 1, 1, 1]);
        assert_eq!(character_of_rep(&r).unwrap().values(), &[2, 0, -2, 0]);
        let report = validate_rep(&r);
        assert!(report.abelian);
        assert_eq!(report.class_count, 4);
    }

    #[test]
    fn closure_is_deterministic() {
        let a = catalog_rep("d4_paper", 100).unwrap();
        let b = catalog_rep("d4_paper", 100).unwrap();
        assert_eq!(a.elements(), b.elements());
        for (e, x) in a.elements().iter().enumerate() {
            assert_eq!(a.resolve_word(a.word(e)).unwrap(), e);
            assert!(x.det() == BigInt::one() || x.det() == -BigInt::one());
        }
    }

    /// Orbit oracle: conjugate by every element, not just generators.
    fn brute_classes(rep: &Rep) -> Vec<Vec<usize>> {
        let els = rep.elements();
        let inv = |x: &IntMatrix| els.iter().find(|y| x.mul(y).is_identity()).unwrap().clone();
        let mut seen = vec![false; els.len()];
        let mut out = Vec::new();
        for i in 0..els.len() {
            if seen[i] {
                continue;
            }
            let mut cls: Vec<usize> = els
                .iter()
                .map(|g| rep.index_of(&inv(g).mul(&els[i]).mul(g)).unwrap())
                .collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                seen[c] = true;
            }
            out.push(cls);
        }
        out
    }

    #[test]
    fn classes_match_full_conjugation() {
        for name in ["d4_paper", "quaternion_paper", "perm_sym(4)", "std_sym(3)", "rot(4)"] {
            let r = catalog_rep(name, 1000).unwrap();
            let ours: Vec<Vec<usize>> = r.classes().classes().iter().map(|c| c.members.clone()).collect();
            assert_eq!(ours, brute_classes(&r), "{name}");
            let sizes = r.classes().sizes();
            assert_eq!(sizes.iter().sum::<usize>(), r.order());
            assert!(sizes.iter().all(|s| r.order().is_multiple_of(*s)));
        }
    }

    #[test]
    fn d4_and_quaternion() {
        let d4 = catalog_rep("d4_paper", 100).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.classes().len(), 5);
        let mut sizes = d4.classes().sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert!(!validate_rep(&d4).abelian);

        let q = catalog_rep("quaternion_paper", 100).unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(q.classes().len(), 5);
        let mut chi = character_of_rep(&q).unwrap().0;
        chi.sort_unstable();
        assert_eq!(chi, vec![-4, 0, 0, 0, 4]);
    }

    #[test]
    fn d4_character_in_table_order() {
        // class words taken from the D4 table: {1}, {a,a³}, {a²}, {ab,a³b}, {b,a²b}
        let d4 = catalog_rep("d4_paper", 100).unwrap();
        let chi = character_of_rep(&d4).unwrap();
        let words: [&[usize]; 5] = [&[], &[0], &[0, 0], &[0, 1], &[1]];
        let aligned: Vec<i64> = words
            .iter()
            .map(|w| chi.0[d4.classes().class_of(d4.resolve_word(w).unwrap())])
            .collect();
        assert_eq!(aligned, vec![3, 1, -1, 1, 1]);
        let sizes: Vec<usize> = words
            .iter()
            .map(|w| d4.classes().classes()[d4.classes().class_of(d4.resolve_word(w).unwrap())].size())
            .collect();
        assert_eq!(sizes, vec![1, 2, 1, 2, 2]);
    }
}
