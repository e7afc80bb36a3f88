use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{FamilyCache, FamilySpec};
use crate::Config;

/// One radius of a residual finiteness profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RFEntry {
    pub r: u64,
    /// Maximum of `D(v)` over determined vectors with `0 < ‖v‖₁ ≤ r`.
    pub rf: u64,
    /// A vector attaining `rf`.
    pub witness_vector: Vec<i64>,
    /// Index of the smallest family member omitting the witness vector.
    pub witness_index: u64,
    /// Some vector within this radius exceeded the index budget, so `rf` is
    /// only a lower bound.
    pub partial: bool,
}

/// `RF(r)` for `r = 1..=r_max`.
#[derive(Clone, Debug)]
pub struct RFProfile {
    pub family: String,
    pub m: usize,
    pub index_budget: u64,
    pub entries: Vec<RFEntry>,
}

impl RFProfile {
    /// Radius of the first budget hit, if any.
    pub fn partial_from(&self) -> Option<u64> {
        self.entries.iter().find(|e| e.partial).map(|e| e.r)
    }

    pub fn is_partial(&self) -> bool {
        self.partial_from().is_some()
    }

    pub fn rf(&self, r: u64) -> Option<u64> {
        self.entries.get(r.checked_sub(1)? as usize).map(|e| e.rf)
    }

    /// A profile built from explicit `(r, RF(r))` values, for fitting.
    pub fn from_values(family: impl Into<String>, values: &[(u64, u64)]) -> RFProfile {
        RFProfile {
            family: family.into(),
            m: 0,
            index_budget: 0,
            entries: values
                .iter()
                .map(|&(r, rf)| RFEntry {
                    r,
                    rf,
                    witness_vector: vec![],
                    witness_index: rf,
                    partial: false,
                })
                .collect(),
        }
    }
}

impl fmt::Display for RFProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RF profile on Z^{} over {}", self.m, self.family)?;
        for e in &self.entries {
            write!(f, "  r = {:>4}  RF = {:>6}  at {:?}", e.r, e.rf, e.witness_vector)?;
            if e.partial {
                write!(f, "  (partial)")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Vectors of `Z^m` with `‖v‖₁ = r`, in lexicographic order.
pub fn sphere(m: usize, r: u64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    sphere_rec(m, r as i64, &mut cur, &mut out);
    out
}

fn sphere_rec(m: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() + 1 == m {
        for x in [-left, left] {
            cur.push(x);
            out.push(cur.clone());
            cur.pop();
            if left == 0 {
                break;
            }
        }
        return;
    }
    for x in -left..=left {
        cur.push(x);
        sphere_rec(m, left - x.abs(), cur, out);
        cur.pop();
    }
}

/// Key shared by all vectors with provably equal divisibility.
struct Symmetry {
    kind: SymmetryKind,
}

enum SymmetryKind {
    /// `D` over all finite-index sublattices depends only on `gcd(v)`; the
    /// key keeps the coordinate multiset of absolute values.
    SignedPermutations,
    /// `D(±φ(h)v) = D(v)`.
    Group(Vec<Vec<Vec<i64>>>),
    None,
}

impl Symmetry {
    fn for_family(spec: &FamilySpec) -> Symmetry {
        let kind = match spec.rep() {
            None => SymmetryKind::SignedPermutations,
            Some(rep) => match rep.elements_i64() {
                Some(els) => SymmetryKind::Group(els),
                None => SymmetryKind::None,
            },
        };
        Symmetry { kind }
    }

    fn key(&self, v: &[i64]) -> Vec<i64> {
        match &self.kind {
            SymmetryKind::SignedPermutations => {
                let mut k: Vec<i64> = v.iter().map(|x| x.abs()).collect();
                k.sort_unstable();
                k
            }
            SymmetryKind::Group(els) => {
                let mut best: Option<Vec<i64>> = None;
                for g in els {
                    let w: Vec<i64> = g
                        .iter()
                        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                        .collect();
                    let neg: Vec<i64> = w.iter().map(|x| -x).collect();
                    for c in [w, neg] {
                        if best.as_ref().is_none_or(|b| c < *b) {
                            best = Some(c);
                        }
                    }
                }
                best.expect("group has an identity")
            }
            SymmetryKind::None => v.to_vec(),
        }
    }
}

/// Exact `RF(r) = max{D(v) : 0 < ‖v‖₁ ≤ r}` for every `r ≤ r_max`.
///
/// Vectors related by a symmetry of the family share one divisibility scan.
/// When a scan exceeds `index_budget` the profile is still returned, with
/// that radius and every later one flagged partial.
pub fn rf_profile(spec: &FamilySpec, m: usize, r_max: u64, index_budget: u64) -> Result<RFProfile> {
    if r_max == 0 || m == 0 {
        return Err(Error::Invalid("r_max and m must be positive".into()));
    }
    let config = Config {
        index_budget,
        ..Config::default()
    };
    let mut cache = FamilyCache::new(spec.clone(), m, &config)?;
    let symmetry = Symmetry::for_family(spec);
    let mut memo: HashMap<Vec<i64>, Option<u64>> = HashMap::new();
    let mut entries = Vec::with_capacity(r_max as usize);
    let mut best: Option<(u64, Vec<i64>)> = None;
    let mut partial = false;
    for r in 1..=r_max {
        for v in sphere(m, r) {
            let key = symmetry.key(&v);
            let d = match memo.get(&key) {
                Some(d) => *d,
                None => {
                    let d = match cache.divisibility(&v, index_budget) {
                        Ok(d) => Some(d),
                        Err(Error::BudgetExceeded { .. }) => None,
                        Err(e) => return Err(e),
                    };
                    memo.insert(key, d);
                    d
                }
            };
            match d {
                Some(d) if best.as_ref().is_none_or(|(b, _)| d > *b) => best = Some((d, v)),
                Some(_) => {}
                None => partial = true,
            }
        }
        let (rf, witness_vector) = best.clone().unwrap_or((0, vec![]));
        entries.push(RFEntry {
            r,
            rf,
            witness_vector,
            witness_index: rf,
            partial,
        });
    }
    Ok(RFProfile {
        family: spec.label(),
        m,
        index_budget,
        entries,
    })
}

/// Least-squares slope of `log RF(r)` against `log log r`. Diagnostic only:
/// finitely many values never decide an asymptotic class.
#[derive(Clone, Debug)]
pub struct ExponentFit {
    pub k_hat: f64,
    pub intercept: f64,
    /// Root mean square of the fit residuals.
    pub residual: f64,
    /// The `(r, RF(r))` pairs used.
    pub points: Vec<(u64, u64)>,
}

impl fmt::Display for ExponentFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "diagnostic fit: log RF ≈ {:.3} log log r + {:.3} (rms residual {:.3}, {} points)",
            self.k_hat,
            self.intercept,
            self.residual,
            self.points.len()
        )
    }
}

/// Smallest radius used by [`exponent_fit`]; below it `log log r` is
/// negative or near zero and dominates the slope.
pub const FIT_MIN_RADIUS: u64 = 10;

/// Fit over radii spaced geometrically (ratio 1.25) from
/// [`FIT_MIN_RADIUS`], skipping partial entries.
pub fn exponent_fit(profile: &RFProfile) -> Result<ExponentFit> {
    let usable: Vec<&RFEntry> = profile
        .entries
        .iter()
        .filter(|e| !e.partial && e.r >= FIT_MIN_RADIUS && e.rf > 0)
        .collect();
    let mut points = Vec::new();
    let mut next = FIT_MIN_RADIUS as f64;
    for e in usable {
        if e.r as f64 >= next {
            points.push((e.r, e.rf));
            next = e.r as f64 * 1.25;
        }
    }
    if points.len() < 5 {
        return Err(Error::InsufficientData(format!(
            "{} usable radii at or above {FIT_MIN_RADIUS}, need 5",
            points.len()
        )));
    }
    let (lo, hi) = (points[0].0, points[points.len() - 1].0);
    if hi < 10 * lo {
        return Err(Error::InsufficientData(format!(
            "radii {lo}..{hi} span less than a factor of 10"
        )));
    }
    let xs: Vec<f64> = points.iter().map(|&(r, _)| (r as f64).ln().ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, rf)| (rf as f64).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let k_hat = sxy / sxx;
    let intercept = my - k_hat * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - k_hat * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(ExponentFit {
        k_hat,
        intercept,
        residual,
        points,
    })
}
