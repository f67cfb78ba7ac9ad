//! Tate cohomology of small Γ-modules, and the long exact sequence of `0 → ℤ → ℤ → ℤ/2 → 0`.

use realcoh::gmod::{connecting, les_window_exact, tate, GammaMap, GammaModule, ShortExact};
use realcoh::linalg::IMat;

fn main() {
    let modules = [
        ("Z trivial", GammaModule::trivial(1)),
        ("Z sign", GammaModule::sign(1)),
        ("Z[Γ]", GammaModule::regular()),
        ("Z/4, γ = -1", GammaModule::cyclic(4, -1).unwrap()),
    ];
    for (name, m) in &modules {
        println!("{name:12} Ĥ⁰ = {:8} Ĥ¹ = {}", tate(m, 0).to_string(), tate(m, 1));
    }

    let z = GammaModule::trivial(1);
    let z2 = GammaModule::cyclic(2, 1).unwrap();
    let i = GammaMap::equivariant(z.clone(), z.clone(), IMat::from_rows(&[[2]])).unwrap();
    let j = GammaMap::equivariant(z, z2, IMat::identity(1)).unwrap();
    let seq = ShortExact::new(i, j).unwrap();
    for k in 0..2 {
        let d = connecting(&seq, k);
        println!("δ^{k} injective: {}, exact at each joint: {:?}", d.is_injective(), les_window_exact(&seq, k));
    }
}
