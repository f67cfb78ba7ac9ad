//! Independent checks: brute-force Tate cohomology and the catalog cross-check.

use realcoh::gmod::{tate, GammaModule};
use realcoh::linalg::IMat;
use realcoh::oracle::{crosscheck_all, default_entries, tate_bruteforce};

fn main() {
    let m = GammaModule::new(IMat::scalar(2, 6), IMat::from_rows(&[[0, 1], [1, 0]])).unwrap();
    for k in 0..2 {
        let b = tate_bruteforce(&m, k).unwrap();
        println!("(Z/6)² swap, k = {k}: linear algebra {} vs exhaustion {:?}", tate(&m, k), b);
    }
    let reports = crosscheck_all(&default_entries());
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    println!("{} catalog checks, {} failed", reports.len(), failed.len());
    for r in failed {
        println!("  {} {}: pipeline {:?}, oracle {}", r.name, r.check, r.pipeline, r.oracle);
    }
}
