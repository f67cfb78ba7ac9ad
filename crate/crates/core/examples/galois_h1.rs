//! `H¹(ℝ, G)` by Kac labelings: class counts for catalog groups, then the classes of `SU(2)` in detail.

use realcoh::kac::h1;
use realcoh::oracle::borel_serre_count;
use realcoh::rootdata::catalog;

fn main() {
    for name in ["su2", "pgl2", "compact-E8", "compact-D4", "Gsq-l8", "Gcq-l8"] {
        let spec = catalog::lookup(name).unwrap();
        let n = h1(&spec).unwrap().len();
        let oracle = if spec.is_compact() { format!(" (Borel–Serre: {})", borel_serre_count(&spec).unwrap()) } else { String::new() };
        println!("{name:12} #H¹ = {n}{oracle}");
    }
    let su2 = catalog::su2();
    let h = h1(&su2).unwrap();
    for (i, c) in h.classes.iter().enumerate() {
        let tag = if i == h.neutral { " (neutral)" } else { "" };
        println!("[{i}] p = {:?} ν = {:?} orbit size {}{tag}", c.rep.labeling.p, c.rep.nu, c.orbit.len());
    }
}
