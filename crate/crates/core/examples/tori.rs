//! The three indecomposable real tori and a quasi-torus `T → T`, `t ↦ t²`.

use realcoh::linalg::IMat;
use realcoh::torus::{pi0_torus, quasitorus_tate, torus_tate, QuasiTorusSpec, TorusSpec};

fn main() {
    for (name, t) in [("split", TorusSpec::split(1)), ("compact", TorusSpec::compact(1)), ("Weil", TorusSpec::weil())] {
        let h1 = torus_tate(&t, 1);
        let nus: Vec<_> = h1.reps.iter().map(|c| c.nu.clone()).collect();
        println!("{name:8} H¹ = {:6} reps ν = {nus:?}  π₀ = {}", h1.group.to_string(), pi0_torus(&t));
    }
    for (name, t) in [("split", TorusSpec::split(1)), ("compact", TorusSpec::compact(1))] {
        let sq = QuasiTorusSpec::new(t.clone(), t, IMat::from_rows(&[[2]])).unwrap();
        let h = quasitorus_tate(&sq, 1);
        println!("squaring on {name}: Ĥ¹ of the two-term complex = {}", h.group);
    }
}
