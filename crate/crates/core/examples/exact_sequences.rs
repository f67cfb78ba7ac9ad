//! Exactness of cohomology sequences for isogenies `SU(2) → PGL(2)` and `t ↦ t²` on tori.

use realcoh::kac::h1;
use realcoh::linalg::IMat;
use realcoh::rootdata::catalog;
use realcoh::structure::{exactness_report_central, exactness_report_torus, CentralSequence};
use realcoh::torus::{QuasiTorusSpec, TorusSpec};

fn main() {
    let seq = CentralSequence::new(catalog::su2(), catalog::pgl2_compact(), IMat::from_rows(&[[2]])).unwrap();
    println!("ker(SU(2) → PGL(2)) on H¹: {}", seq.h1_kernel());
    let (h2, h3) = (h1(seq.g2()).unwrap(), h1(seq.g3()).unwrap());
    for c in 0..h2.len() {
        println!("j*[{c}] = [{}]", seq.j_star(&h2, &h3, c).unwrap());
    }
    let report = exactness_report_central(&seq).unwrap();
    for j in &report.joints {
        println!("{:24} exact {} (image {}, kernel {})", j.name, j.exact, j.image_size, j.kernel_size);
    }
    println!("central sequence passed: {}", report.passed());

    let sq = QuasiTorusSpec::new(TorusSpec::weil(), TorusSpec::weil(), IMat::scalar(2, 2)).unwrap();
    println!("Weil torus squaring sequence passed: {}", exactness_report_torus(&sq).passed());
}
