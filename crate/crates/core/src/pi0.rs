//! `π₀G(ℝ) ≅ (Ĥ⁰π₁G)₁`, the stabilizer of `q` under the action of `Ĥ⁰π₁G` on the
//! affine diagram through `Ad*: Ĥ⁰π₁G → Ĥ⁰C` and `C → C₀`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::gmod::{tate, FinAbGroup};
use crate::kac::{diagram_action, KacError, KacLabeling};
use crate::linalg::{int_vec_to_rat, Int, Rat};
use crate::rootdata::{fundamental_group, GroupSpec};

/// `π₀G(ℝ)` as a subgroup of `Ĥ⁰π₁G`.
#[derive(Clone, Debug)]
pub struct Pi0Result {
    /// `Ĥ⁰π₁G`
    pub ambient: FinAbGroup,
    /// stabilizer elements, as coordinates in `ambient`
    pub elements: Vec<Vec<Int>>,
    /// a basis of the stabilizer (it is elementary abelian)
    pub generators: Vec<Vec<Int>>,
    /// `ν ∈ X∨` representing each generator
    pub witnesses: Vec<Vec<Int>>,
}

impl Pi0Result {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// `d` with `π₀ ≅ (ℤ/2)^d`.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn invariants(&self) -> Vec<Int> {
        vec![2; self.rank()]
    }

    /// The stabilizer is closed under addition.
    pub fn is_subgroup(&self) -> bool {
        let set: BTreeSet<&Vec<Int>> = self.elements.iter().collect();
        self.elements.iter().all(|a| self.elements.iter().all(|b| set.contains(&self.ambient.add(a, b))))
    }

    pub fn is_elementary_2(&self) -> bool {
        self.elements.iter().all(|a| self.ambient.is_zero(&self.ambient.scale(2, a)))
    }
}

impl std::fmt::Display for Pi0Result {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            write!(f, "trivial")
        } else {
            let parts: Vec<&str> = (0..self.rank()).map(|_| "Z/2").collect();
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `ν₀ = π(proj_der ν) ∈ P̃₀∨` for `ν ∈ X∨`.
pub fn adjoint_restricted(spec: &GroupSpec, nu: &[Int]) -> Vec<Rat> {
    let chain = spec.lattice_chain();
    let ad = chain.proj_der.mul_vec(&int_vec_to_rat(nu));
    chain.avg_c.mul_vec(&ad)
}

/// One entry of the composite `φ: Ĥ⁰π₁G → Ĥ¹G^sc`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelMapEntry {
    pub class: Vec<Int>,
    pub witness: Vec<Int>,
    /// image of `q` under the diagram action: the labeling of `φ(class)`
    pub image: KacLabeling,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelMap {
    pub entries: Vec<KernelMapEntry>,
    pub kernel: Vec<Vec<Int>>,
}

/// `φ` on every class of `Ĥ⁰π₁G`, and its kernel.
pub fn pi0_kernel_map(spec: &GroupSpec) -> Result<KernelMap, KacError> {
    let h0 = tate(&fundamental_group(spec), 0);
    let mut entries = Vec::new();
    let mut kernel = Vec::new();
    for c in h0.elements() {
        let witness = h0.element(&c);
        let image = diagram_action(spec, &adjoint_restricted(spec, &witness), spec.q())?;
        if image == spec.q() {
            kernel.push(c.clone());
        }
        entries.push(KernelMapEntry { class: c, witness, image });
    }
    Ok(KernelMap { entries, kernel })
}

pub fn pi0(spec: &GroupSpec) -> Result<Pi0Result, KacError> {
    let ambient = tate(&fundamental_group(spec), 0);
    let map = pi0_kernel_map(spec)?;
    let elements = map.kernel;
    let mut generators: Vec<Vec<Int>> = Vec::new();
    let mut span = ambient.span(&[]);
    for e in &elements {
        if !span.contains(e) {
            generators.push(e.clone());
            span = ambient.span(&generators);
        }
    }
    let witnesses = generators.iter().map(|g| ambient.element(g)).collect();
    Ok(Pi0Result { ambient, elements, generators, witnesses })
}
