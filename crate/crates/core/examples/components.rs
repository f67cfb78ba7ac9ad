//! Component groups `π₀ G(ℝ)` across the `D̃_ℓ` family of inner forms.

use realcoh::kac::enumerate_labelings;
use realcoh::pi0::pi0;
use realcoh::rootdata::catalog::{self, gcq_with, gsq, gsq_with};

fn main() {
    for name in ["su2", "pgl2", "torus-split", "torus-compact"] {
        println!("{name:14} π₀ = {}", pi0(&catalog::lookup(name).unwrap()).unwrap());
    }
    let l = 8;
    for q in enumerate_labelings(gsq(l, 0, 0).diagram()) {
        let s = pi0(&gsq_with(l, q.clone())).unwrap();
        let c = pi0(&gcq_with(l, q.clone())).unwrap();
        println!("q = {q:?}  π₀ G_s,q = {s:6}  π₀ G_c,q = {c}");
    }
}
