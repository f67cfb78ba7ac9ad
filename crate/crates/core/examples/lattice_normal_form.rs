//! Recover the block type `ℤᵃ ⊕ ℤ(−1)ᵇ ⊕ ℤ[Γ]ᶜ` of a disguised Γ-lattice.

use realcoh::glattice::{lattice_tate, normal_form, GammaLattice};
use realcoh::linalg::IMat;

fn main() {
    let p = IMat::from_rows(&[[1, 2, 0, 1], [0, 1, 1, 0], [1, 3, 2, 1], [0, 0, 1, 1]]);
    let l = GammaLattice::model(1, 1, 1).conjugate(&p);
    println!("involution:\n{:?}", l.involution());
    let nf = normal_form(&l);
    println!("(a, b, c) = ({}, {}, {}), basis verified: {}", nf.a, nf.b, nf.c, nf.verify(&l));
    println!("Ĥ⁰ = {}, Ĥ¹ = {}", lattice_tate(&l, 0), lattice_tate(&l, 1));
}
