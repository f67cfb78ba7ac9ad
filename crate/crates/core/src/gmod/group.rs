use std::collections::BTreeSet;
use std::fmt;

use crate::linalg::{int_vec_to_rat, rat_vec_to_int, Int, Lattice, Subquotient};

/// A finitely generated abelian group `⊕ ℤ/dᵢ` realised as a subquotient of some `ℤⁿ`.
///
/// `invariants` form a divisibility chain (0 marks a free factor); `generators[i]`
/// is an integer representative of the `i`-th cyclic factor.
#[derive(Clone, Debug)]
pub struct FinAbGroup {
    invariants: Vec<Int>,
    generators: Vec<Vec<Int>>,
    sq: Subquotient,
}

impl FinAbGroup {
    pub(crate) fn from_subquotient(sq: Subquotient) -> Self {
        let generators = sq
            .generators()
            .iter()
            .map(|g| rat_vec_to_int(g).expect("integral subquotient generator"))
            .collect();
        FinAbGroup { invariants: sq.invariants().to_vec(), generators, sq }
    }

    /// `num / den` for integer lattices `den ⊆ num ⊆ ℤⁿ`.
    pub fn quotient(num: &Lattice, den: &Lattice) -> Option<Self> {
        Subquotient::new(num, den).map(Self::from_subquotient)
    }

    /// The trivial group inside `ℤⁿ`.
    pub fn trivial(n: usize) -> Self {
        let z = Lattice::zero(n);
        Self::quotient(&z, &z).expect("zero quotient")
    }

    pub fn invariants(&self) -> &[Int] {
        &self.invariants
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.sq.numerator().dim()
    }

    pub fn ngens(&self) -> usize {
        self.invariants.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.sq.is_finite()
    }

    pub fn order(&self) -> Option<Int> {
        self.sq.order()
    }

    /// True when every nonzero element has order 2.
    pub fn is_elementary_2(&self) -> bool {
        self.invariants.iter().all(|&d| d == 2)
    }

    /// Smith coordinates of an ambient element, or `None` if it is not in the numerator.
    pub fn coords(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.sq.coords(&int_vec_to_rat(v))
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        self.coords(v).is_some()
    }

    pub fn normalize(&self, c: &[Int]) -> Vec<Int> {
        self.sq.normalize(c)
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![0; self.ngens()]
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&s)
    }

    pub fn scale(&self, c: Int, a: &[Int]) -> Vec<Int> {
        let s: Vec<Int> = a.iter().map(|x| c * x).collect();
        self.normalize(&s)
    }

    pub fn is_zero(&self, c: &[Int]) -> bool {
        self.normalize(c).iter().all(|&x| x == 0)
    }

    /// Ambient representative of the element with the given coordinates.
    pub fn element(&self, c: &[Int]) -> Vec<Int> {
        rat_vec_to_int(&self.sq.element(c)).expect("integral element")
    }

    /// All elements (finite groups only).
    pub fn elements(&self) -> Vec<Vec<Int>> {
        self.sq.elements()
    }

    /// Subgroup generated by the given elements, as a set of coordinate vectors.
    pub fn span(&self, gens: &[Vec<Int>]) -> BTreeSet<Vec<Int>> {
        let mut set = BTreeSet::new();
        set.insert(self.zero());
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        set
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariants
            .iter()
            .map(|&d| if d == 0 { "Z".to_string() } else { format!("Z/{d}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A homomorphism between two `FinAbGroup`s, stored as the images of source generators.
#[derive(Clone, Debug)]
pub struct AbHom {
    pub source: FinAbGroup,
    pub target: FinAbGroup,
    images: Vec<Vec<Int>>,
}

impl AbHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, images: Vec<Vec<Int>>) -> Self {
        assert_eq!(images.len(), source.ngens(), "one image per generator");
        let images = images.iter().map(|c| target.normalize(c)).collect();
        AbHom { source, target, images }
    }

    /// Builds the map induced on representatives by `f`; `f` must send representatives
    /// of source classes into the numerator of the target.
    pub fn from_reps<F>(source: FinAbGroup, target: FinAbGroup, f: F) -> Result<Self, Vec<Int>>
    where
        F: Fn(&[Int]) -> Vec<Int>,
    {
        let mut images = Vec::new();
        for g in source.generators() {
            let img = f(g);
            match target.coords(&img) {
                Some(c) => images.push(c),
                None => return Err(img),
            }
        }
        Ok(AbHom::new(source, target, images))
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Self {
        let images = vec![target.zero(); source.ngens()];
        AbHom::new(source, target, images)
    }

    pub fn images(&self) -> &[Vec<Int>] {
        &self.images
    }

    pub fn apply(&self, c: &[Int]) -> Vec<Int> {
        let mut out = self.target.zero();
        for (k, &ck) in c.iter().enumerate() {
            if ck != 0 {
                out = self.target.add(&out, &self.target.scale(ck, &self.images[k]));
            }
        }
        out
    }

    pub fn compose(&self, after: &AbHom) -> AbHom {
        let images = self.images.iter().map(|c| after.apply(c)).collect();
        AbHom::new(self.source.clone(), after.target.clone(), images)
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|c| self.target.is_zero(c))
    }

    pub fn image(&self) -> BTreeSet<Vec<Int>> {
        self.target.span(&self.images)
    }

    pub fn kernel(&self) -> BTreeSet<Vec<Int>> {
        self.source
            .elements()
            .into_iter()
            .filter(|c| self.target.is_zero(&self.apply(c)))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        Some(self.image().len() as Int) == self.target.order()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// `image(f) == kernel(g)` for composable maps of finite groups.
pub fn exact_at(f: &AbHom, g: &AbHom) -> bool {
    f.image() == g.kernel()
}
