//! Exhaustive finite-rank sweeps of the multiplicity-freeness conjectures
//! for products indexed by inverse Grassmannian permutations, with
//! counterexample capture.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::perm::Permutation;
use crate::schubert::{product_expansion, structure_coeff, Expansion, PolyCache};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConjectureError {
    #[error("{0} is not inverse Grassmannian")]
    NotInverseGrassmannian(Permutation),
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Conjecture {
    /// Products of two inverse Grassmannian Schubert polynomials expand with
    /// all coefficients in {0, 1}.
    MultFree,
    /// Lowering either factor through its unique left descent keeps every
    /// coefficient in {0, 1}.
    Covers,
}

impl Conjecture {
    pub fn token(&self) -> &'static str {
        match self {
            Conjecture::MultFree => "multfree",
            Conjecture::Covers => "covers",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "multfree" => Some(Conjecture::MultFree),
            "covers" => Some(Conjecture::Covers),
            _ => None,
        }
    }
}

/// A coefficient exceeding the conjectured bound, with the full expansion it
/// came from for offline audit.
#[derive(Clone, Debug)]
pub struct Violation {
    pub u: Permutation,
    pub v: Permutation,
    pub w: Permutation,
    pub coeff: BigInt,
    pub expansion: Vec<(Permutation, BigInt)>,
}

impl Violation {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "u": self.u.to_string(),
            "v": self.v.to_string(),
            "w": self.w.to_string(),
            "coeff": self.coeff.to_string(),
            "expansion": self.expansion.iter().map(|(w, c)| {
                json!({"w": w.to_string(), "coeff": c.to_string()})
            }).collect::<Vec<_>>(),
        })
    }
}

/// Result of checking one (ordered) pair.
#[derive(Clone, Debug)]
pub struct PairOutcome {
    pub u: Permutation,
    pub v: Permutation,
    pub max_coeff: BigInt,
    pub violations: Vec<Violation>,
}

/// Aggregate of a conjecture sweep at one rank.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub conjecture: Conjecture,
    pub rank: usize,
    /// Ordered pair count `m^2`; commutativity halves the work actually done.
    pub pairs_examined: u64,
    pub max_coeff: BigInt,
    pub violations: Vec<Violation>,
    pub wall_time: Duration,
}

impl SweepReport {
    /// Canonical JSON. Wall time is deliberately left out so that repeated
    /// runs (serial/parallel, cold/warm cache) are byte-identical; callers
    /// report timing separately.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "conjecture": self.conjecture.token(),
            "rank": self.rank,
            "pairs_examined": self.pairs_examined,
            "max_coefficient": self.max_coeff.to_string(),
            "violations": self.violations.iter().map(|v| v.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// All `w` in `S_n` with exactly one left descent, sorted canonically.
pub fn enumerate_inverse_grassmannian(n: usize) -> Result<Vec<Permutation>, ConjectureError> {
    if n < 2 {
        return Err(ConjectureError::RankTooSmall(n));
    }
    Ok(Permutation::all(n)
        .into_iter()
        .filter(|w| w.is_inverse_grassmannian())
        .collect())
}

fn scan_expansion(
    u: &Permutation,
    v: &Permutation,
    expansion: &Expansion<BigInt>,
) -> (BigInt, Vec<Violation>) {
    let one = BigInt::from(1);
    let mut max = BigInt::from(0);
    let mut violations = Vec::new();
    for (w, c) in expansion.iter() {
        if *c > max {
            max = c.clone();
        }
        if *c > one {
            violations.push(Violation {
                u: u.clone(),
                v: v.clone(),
                w: w.clone(),
                coeff: c.clone(),
                expansion: expansion
                    .iter()
                    .map(|(w, c)| (w.clone(), c.clone()))
                    .collect(),
            });
        }
    }
    (max, violations)
}

/// Expands `S_u * S_v` for inverse Grassmannian `u`, `v` and records any
/// coefficient exceeding 1.
pub fn check_multfree(
    cache: &PolyCache,
    u: &Permutation,
    v: &Permutation,
) -> Result<PairOutcome, ConjectureError> {
    for p in [u, v] {
        if !p.is_inverse_grassmannian() {
            return Err(ConjectureError::NotInverseGrassmannian(p.clone()));
        }
    }
    let e = product_expansion(cache, u, v);
    let (max_coeff, violations) = scan_expansion(u, v, &e);
    Ok(PairOutcome {
        u: u.clone(),
        v: v.clone(),
        max_coeff,
        violations,
    })
}

/// Expands `S_{s_i u} * S_v` and `S_u * S_{s_j v}` where `i`, `j` are the
/// unique left descents, and records any coefficient exceeding 1.
pub fn check_covers(
    cache: &PolyCache,
    u: &Permutation,
    v: &Permutation,
) -> Result<PairOutcome, ConjectureError> {
    for p in [u, v] {
        if !p.is_inverse_grassmannian() {
            return Err(ConjectureError::NotInverseGrassmannian(p.clone()));
        }
    }
    let i = u.left_descents()[0];
    let j = v.left_descents()[0];
    let mut max_coeff = BigInt::from(0);
    let mut violations = Vec::new();
    for (a, b) in [(u.left_s(i), v.clone()), (u.clone(), v.left_s(j))] {
        let e = product_expansion(cache, &a, &b);
        let (m, viol) = scan_expansion(&a, &b, &e);
        if m > max_coeff {
            max_coeff = m;
        }
        violations.extend(viol);
    }
    Ok(PairOutcome {
        u: u.clone(),
        v: v.clone(),
        max_coeff,
        violations,
    })
}

/// Runs the chosen check over all pairs from the rank-`n` inverse
/// Grassmannian list. Unordered pairs suffice by commutativity; the ordered
/// count is reported for cross-checking. Violations never abort the sweep.
pub fn sweep(
    cache: &PolyCache,
    conjecture: Conjecture,
    n: usize,
    parallel: bool,
) -> Result<SweepReport, ConjectureError> {
    let start = Instant::now();
    let elements = enumerate_inverse_grassmannian(n)?;
    let m = elements.len() as u64;

    let mut pairs = Vec::new();
    for a in 0..elements.len() {
        for b in a..elements.len() {
            pairs.push((a, b));
        }
    }
    assert_eq!(pairs.len() as u64, m * (m + 1) / 2);

    let run = |&(a, b): &(usize, usize)| -> PairOutcome {
        let (u, v) = (&elements[a], &elements[b]);
        match conjecture {
            Conjecture::MultFree => check_multfree(cache, u, v),
            Conjecture::Covers => check_covers(cache, u, v),
        }
        .expect("enumerated elements are inverse Grassmannian")
    };

    let outcomes: Vec<PairOutcome> = if parallel {
        pairs.par_iter().map(run).collect()
    } else {
        pairs.iter().map(run).collect()
    };

    let mut max_coeff = BigInt::from(0);
    let mut violations = Vec::new();
    for o in outcomes {
        if o.max_coeff > max_coeff {
            max_coeff = o.max_coeff.clone();
        }
        violations.extend(o.violations);
    }

    // Any violation must persist under the shift embedding one rank up.
    for viol in &violations {
        let shifted = structure_coeff(
            cache,
            &viol.u.one_times(),
            &viol.v.one_times(),
            &viol.w.one_times(),
        );
        assert_eq!(
            shifted, viol.coeff,
            "violation does not persist under the shift embedding"
        );
    }

    Ok(SweepReport {
        conjecture,
        rank: n,
        pairs_examined: m * m,
        max_coeff,
        violations,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_inverse_grassmannian(2).unwrap(),
            vec![p("21")]
        );
        assert!(enumerate_inverse_grassmannian(1).is_err());

        // Inverses of the unique-descent elements, cross-checked directly.
        let ig3 = enumerate_inverse_grassmannian(3).unwrap();
        let mut from_inverses: Vec<Permutation> = Permutation::all(3)
            .into_iter()
            .filter(|w| w.is_grassmannian())
            .map(|w| w.inverse())
            .collect();
        from_inverses.sort();
        assert_eq!(ig3, from_inverses);

        // 2^n - n - 1 of them in S_n.
        assert_eq!(enumerate_inverse_grassmannian(5).unwrap().len(), 26);
    }

    #[test]
    fn multfree_worked_example() {
        let cache = PolyCache::new();
        let out = check_multfree(&cache, &p("1562374"), &p("4516273")).unwrap();
        assert_eq!(out.max_coeff, int(1));
        assert!(out.violations.is_empty());
        let e = product_expansion(&cache, &p("1562374"), &p("4516273"));
        assert_eq!(e.len(), 12);
    }

    #[test]
    fn grassmannian_negative_control_sees_multiplicity() {
        // The inverses of the pair above are Grassmannian, not inverse
        // Grassmannian; their product has coefficients 2 and 3.
        let cache = PolyCache::new();
        let u = p("1457236");
        let v = p("3571246");
        assert!(check_multfree(&cache, &u, &v).is_err());
        let e = product_expansion(&cache, &u, &v);
        assert_eq!(e.coeff(&p("5,7,9,2,1,3,4,6,8")), int(3));
        assert_eq!(e.coeff(&p("479312568")), int(2));
        assert_eq!(e.coeff(&p("569312478")), int(2));
        assert_eq!(e.coeff(&p("57831246")), int(2));
    }

    #[test]
    fn multfree_pieri_sized_instance() {
        let cache = PolyCache::new();
        let out = check_multfree(&cache, &p("21"), &p("21")).unwrap();
        assert_eq!(out.max_coeff, int(1));
        let e = product_expansion(&cache, &p("21"), &p("21"));
        assert_eq!(e.len(), 1);
        assert_eq!(e.coeff(&p("312")), int(1));
    }

    #[test]
    fn covers_worked_example() {
        let cache = PolyCache::new();
        let u = p("3142567");
        let v = p("1627345");
        assert_eq!(u.left_descents(), vec![2]);
        assert_eq!(v.left_descents(), vec![5]);
        assert_eq!(v.left_s(5), p("1527346"));
        let out = check_covers(&cache, &u, &v).unwrap();
        assert_eq!(out.max_coeff, int(1));
        assert!(out.violations.is_empty());

        let e = product_expansion(&cache, &u, &p("1527346"));
        let expect = [
            "3527146", "3571246", "3617245", "3715246", "5237146", "5271346",
            "5712346", "6137245", "6172345", "7135246", "7152346",
        ];
        assert_eq!(e.len(), expect.len());
        for w in expect {
            assert_eq!(e.coeff(&p(w)), int(1), "w={w}");
        }
    }

    #[test]
    fn covers_tiny_instance() {
        let cache = PolyCache::new();
        let out = check_covers(&cache, &p("21"), &p("21")).unwrap();
        assert_eq!(out.max_coeff, int(1));
        assert!(out.violations.is_empty());
    }

    #[test]
    fn sweeps_small_ranks_are_clean() {
        let cache = PolyCache::new();
        for n in [2, 3, 4] {
            let r = sweep(&cache, Conjecture::MultFree, n, false).unwrap();
            assert!(r.violations.is_empty(), "multfree violations at rank {n}");
            assert_eq!(r.max_coeff, int(1));
            let m = enumerate_inverse_grassmannian(n).unwrap().len() as u64;
            assert_eq!(r.pairs_examined, m * m);

            let r = sweep(&cache, Conjecture::Covers, n, false).unwrap();
            assert!(r.violations.is_empty(), "covers violations at rank {n}");
        }
    }

    #[test]
    fn serial_and_parallel_sweeps_agree() {
        let cache = PolyCache::new();
        let a = sweep(&cache, Conjecture::MultFree, 4, false).unwrap();
        let b = sweep(&cache, Conjecture::MultFree, 4, true).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn pieri_pairs_never_violate() {
        // A unique left descent at 1 makes the product a Pieri computation;
        // those must never show up in a violation list.
        let cache = PolyCache::new();
        let ig = enumerate_inverse_grassmannian(5).unwrap();
        for u in ig.iter().filter(|u| u.left_descents() == vec![1]) {
            for v in &ig {
                let out = check_multfree(&cache, u, v).unwrap();
                assert!(out.violations.is_empty(), "u={u} v={v}");
            }
        }
    }

    #[test]
    fn sweep_report_json_is_stable() {
        let cache = PolyCache::new();
        let r = sweep(&cache, Conjecture::MultFree, 3, false).unwrap();
        let j = r.to_json();
        assert_eq!(j["conjecture"], "multfree");
        assert_eq!(j["rank"], 3);
        assert_eq!(j["violations"].as_array().unwrap().len(), 0);
        assert_eq!(j["max_coefficient"], "1");
        assert!(j.get("wall_time").is_none());
    }
}
