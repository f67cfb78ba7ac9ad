//! Brute-force verifiers, independent of the diagram and labeling machinery: Tate
//! cohomology of finite modules by exhaustion, and the Borel–Serre count
//! `#H¹(ℝ, G) = #(T⁽²⁾/W)` for compact `G`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::gmod::{sign, tate, GammaModule};
use crate::kac::h1;
use crate::linalg::{IMat, Int};
use crate::rootdata::catalog::{self, Entry};
use crate::rootdata::{fundamental_group, GroupSpec};

/// Modules larger than this are refused.
pub const MAX_BRUTE_ORDER: Int = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("module is infinite")]
    NotFinite,
    #[error("module has {order} elements, more than the limit")]
    TooLarge { order: Int },
    #[error("spec is not compact")]
    NotCompact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteTate {
    pub cocycles: usize,
    pub coboundaries: usize,
    pub order: usize,
    /// every class has order ≤ 2
    pub exponent_two: bool,
}

/// `Ĥᵏ(M)` by listing `ker dᵏ` and `im dᵏ⁻¹` element by element.
pub fn tate_bruteforce(m: &GammaModule, k: i64) -> Result<BruteTate, OracleError> {
    if !m.is_finite() {
        return Err(OracleError::NotFinite);
    }
    let g = m.underlying_group();
    let order = g.order().ok_or(OracleError::NotFinite)?;
    if order > MAX_BRUTE_ORDER {
        return Err(OracleError::TooLarge { order });
    }
    let elems = g.elements();
    let d = |c: &[Int], k: i64| -> Vec<Int> {
        let v = g.element(c);
        let gv = m.action().mul_vec(&v);
        let s = sign(k + 1);
        let w: Vec<Int> = gv.iter().zip(&v).map(|(a, b)| a + s * b).collect();
        g.coords(&w).expect("element of the module")
    };
    let zero = g.zero();
    let cocycles: BTreeSet<Vec<Int>> = elems.iter().filter(|c| d(c, k) == zero).cloned().collect();
    let coboundaries: BTreeSet<Vec<Int>> = elems.iter().map(|c| d(c, k - 1)).collect();
    let exponent_two = cocycles.iter().all(|c| coboundaries.contains(&g.scale(2, c)));
    Ok(BruteTate {
        cocycles: cocycles.len(),
        coboundaries: coboundaries.len(),
        order: cocycles.len() / coboundaries.len(),
        exponent_two,
    })
}

/// `#(X∨/2X∨)/W` with `W` generated by the simple reflections acting mod 2.
pub fn borel_serre_count(spec: &GroupSpec) -> Result<usize, OracleError> {
    if !spec.is_compact() {
        return Err(OracleError::NotCompact);
    }
    let brd = spec.brd();
    let n = brd.rank();
    let reduce = |v: Vec<Int>| -> Vec<Int> { v.into_iter().map(|x| x.rem_euclid(2)).collect() };
    let all: Vec<Vec<Int>> = (0..1u64 << n).map(|b| (0..n).map(|i| ((b >> i) & 1) as Int).collect()).collect();
    let mut seen: BTreeSet<Vec<Int>> = BTreeSet::new();
    let mut orbits = 0;
    for v in all {
        if seen.contains(&v) {
            continue;
        }
        orbits += 1;
        let mut stack = vec![v.clone()];
        seen.insert(v);
        while let Some(x) = stack.pop() {
            for i in 0..brd.semisimple_rank() {
                let y = reduce(brd.reflect_cochar(i, &x));
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
    }
    Ok(orbits)
}

/// One paired comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub name: String,
    pub check: String,
    /// `None` if the pipeline failed
    pub pipeline: Option<i128>,
    pub oracle: i128,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.pipeline == Some(self.oracle)
    }
}

fn report(name: &str, check: &str, pipeline: Option<i128>, oracle: i128) -> OracleReport {
    OracleReport { name: name.to_string(), check: check.to_string(), pipeline, oracle }
}

/// `L/2L` for a Γ-lattice `L`.
fn mod_two(l: &GammaModule) -> GammaModule {
    GammaModule::new(IMat::scalar(l.n(), 2), l.action().clone()).expect("2L is γ-stable")
}

/// All checks applicable to one spec:
/// - compact: `#H¹` against Borel–Serre;
/// - torus: `#π₀·#H¹ = #Ĥ⁰(X∨/2X∨)`, from `0 → Ĥ⁰X∨ → Ĥ⁰(X∨/2) → Ĥ¹X∨ → 0`;
/// - finite `π₁`: `#Ĥᵏπ₁` for `k = 0, 1` by exhaustion.
pub fn crosscheck(name: &str, spec: &GroupSpec) -> Vec<OracleReport> {
    let mut out = Vec::new();
    let count = h1(spec).ok().map(|h| h.len() as i128);
    if spec.is_compact() {
        if let Ok(bs) = borel_serre_count(spec) {
            out.push(report(name, "borel-serre", count, bs as i128));
        }
    }
    if spec.brd().semisimple_rank() == 0 {
        let x = GammaModule::free(spec.gamma_cochar()).expect("Γ-lattice");
        if let Ok(b) = tate_bruteforce(&mod_two(&x), 0) {
            let pi0 = tate(&x, 0).order();
            out.push(report(name, "torus-mod-2", count.zip(pi0).map(|(a, b)| a * b), b.order as i128));
        }
    }
    let pi1 = fundamental_group(spec);
    if pi1.is_finite() {
        for k in [0, 1] {
            if let Ok(b) = tate_bruteforce(&pi1, k) {
                out.push(report(name, &format!("tate-pi1-k{k}"), tate(&pi1, k).order(), b.order as i128));
            }
        }
    }
    out
}

/// `crosscheck` over a list of entries, in order.
pub fn crosscheck_all(entries: &[Entry]) -> Vec<OracleReport> {
    entries.iter().flat_map(|e| crosscheck(&e.name, &e.spec)).collect()
}

/// The catalog entries `crosscheck_all` is normally run on.
pub fn default_entries() -> Vec<Entry> {
    catalog::entries()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::cartan::SimpleType;

    #[test]
    fn brute_examples() {
        let z4 = GammaModule::cyclic(4, -1).unwrap();
        assert_eq!(tate_bruteforce(&z4, 0).unwrap().order, 2);
        // (ℤ/2)² with the swap is induced: all Tate groups vanish
        let swap = GammaModule::new(IMat::scalar(2, 2), IMat::from_rows(&[[0, 1], [1, 0]])).unwrap();
        for k in [0, 1] {
            assert_eq!(tate_bruteforce(&swap, k).unwrap().order, 1);
            assert_eq!(tate(&swap, k).order(), Some(1));
        }
        assert_eq!(tate_bruteforce(&GammaModule::trivial(0), 1).unwrap().order, 1);
        assert_eq!(tate_bruteforce(&GammaModule::trivial(1), 0), Err(OracleError::NotFinite));
    }

    #[test]
    fn borel_serre_examples() {
        assert_eq!(borel_serre_count(&catalog::su2()).unwrap(), 2);
        let b2 = catalog::compact_sc(SimpleType::parse("B2").unwrap());
        assert_eq!(borel_serre_count(&b2).unwrap(), h1(&b2).unwrap().len());
        assert_eq!(borel_serre_count(&catalog::torus_compact(3)).unwrap(), 8);
        assert_eq!(borel_serre_count(&catalog::gsq(6, 0, 0)), Err(OracleError::NotCompact));
    }

    #[test]
    fn small_catalog_agrees() {
        let entries: Vec<Entry> = ["su2", "pgl2", "torus-split", "torus-compact", "torus-weil", "compact-G2"]
            .iter()
            .map(|n| Entry { name: n.to_string(), spec: catalog::lookup(n).unwrap() })
            .collect();
        let r = crosscheck_all(&entries);
        assert!(!r.is_empty());
        assert!(r.iter().all(OracleReport::passed), "{r:?}");
        assert!(crosscheck_all(&[]).is_empty());
    }

    #[test]
    fn corrupted_marks_detected() {
        let s = catalog::compact_sc(SimpleType::parse("C3").unwrap());
        let marks = s.diagram().factors()[0].marks.iter().map(|_| 1).collect();
        let bad = s.with_corrupted_marks(0, marks);
        let r = crosscheck("C3-corrupted", &bad);
        assert!(r.iter().any(|x| x.check == "borel-serre" && !x.passed()));
    }
}
