//! Finite-type Cartan matrices in Bourbaki numbering, their affine marks, the special
//! automorphisms of the untwisted affine diagrams, and Weyl group orders.
//!
//! Convention: `a[i][j] = ⟨α_i∨, α_j⟩`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{IMat, Int};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn from_char(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// An irreducible finite type `X_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Option<SimpleType> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        ok.then_some(SimpleType { family, rank })
    }

    /// Parses names such as `A3`, `e8`, `D12`.
    pub fn parse(s: &str) -> Option<SimpleType> {
        let mut chars = s.chars();
        let family = Family::from_char(chars.next()?)?;
        let rank = chars.as_str().parse().ok()?;
        SimpleType::new(family, rank)
    }

    /// Every type of rank `1..=max_rank`, in a fixed order.
    pub fn all_up_to(max_rank: usize) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
            for rank in 1..=max_rank {
                if let Some(t) = SimpleType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Bourbaki Cartan matrix (0-based indices: Bourbaki `α_{i+1}` is index `i`).
pub fn cartan_matrix(t: SimpleType) -> IMat {
    let n = t.rank;
    let mut a = IMat::scalar(n, 2);
    let mut link = |i: usize, j: usize, aij: Int, aji: Int| {
        a[(i, j)] = aij;
        a[(j, i)] = aji;
    };
    match t.family {
        Family::A => {
            for i in 0..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        Family::B => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // α_n short
            link(n - 2, n - 1, -1, -2);
        }
        Family::C => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // α_n long
            link(n - 2, n - 1, -2, -1);
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Family::G => {
            // α_1 short
            link(0, 1, -3, -1);
        }
    }
    a
}

/// Marks of the untwisted affine diagram: index 0 is the affine vertex (mark 1), index
/// `i ≥ 1` is the coefficient of `α_i` in the highest root.
pub fn bourbaki_marks(t: SimpleType) -> Vec<Int> {
    let n = t.rank;
    let mut m = vec![1];
    match t.family {
        Family::A => m.extend(std::iter::repeat(1).take(n)),
        Family::B => {
            m.push(1);
            m.extend(std::iter::repeat(2).take(n - 1));
        }
        Family::C => {
            m.extend(std::iter::repeat(2).take(n - 1));
            m.push(1);
        }
        Family::D => {
            m.push(1);
            m.extend(std::iter::repeat(2).take(n - 3));
            m.extend([1, 1]);
        }
        Family::E => m.extend(match n {
            6 => vec![1, 2, 2, 3, 2, 1],
            7 => vec![2, 2, 3, 4, 3, 2, 1],
            _ => vec![2, 3, 4, 6, 5, 4, 3, 2],
        }),
        Family::F => m.extend([2, 3, 4, 2]),
        Family::G => m.extend([3, 2]),
    }
    m
}

/// The automorphisms of the untwisted affine diagram induced by the nonzero classes of
/// the coweight lattice modulo the coroot lattice. Each entry is `(j, σ)` with `σ` a
/// permutation of `0..=n` (affine vertex 0) and `σ(0) = j`.
pub fn special_automorphisms(t: SimpleType) -> Vec<(usize, Vec<usize>)> {
    let n = t.rank;
    let id: Vec<usize> = (0..=n).collect();
    let mut out = Vec::new();
    match t.family {
        Family::A => {
            for j in 1..=n {
                out.push((j, (0..=n).map(|i| (i + j) % (n + 1)).collect()));
            }
        }
        Family::B => {
            let mut s = id.clone();
            s.swap(0, 1);
            out.push((1, s));
        }
        Family::C => out.push((n, (0..=n).map(|i| n - i).collect())),
        Family::D => {
            let mut s1 = id.clone();
            s1.swap(0, 1);
            s1.swap(n - 1, n);
            out.push((1, s1));
            let mid = |i: usize| if (2..=n - 2).contains(&i) { Some(n - i) } else { None };
            let mut sn = vec![0; n + 1];
            let mut sn1 = vec![0; n + 1];
            for i in 0..=n {
                if let Some(k) = mid(i) {
                    sn[i] = k;
                    sn1[i] = k;
                }
            }
            if n % 2 == 0 {
                for (a, b) in [(0, n), (1, n - 1)] {
                    sn[a] = b;
                    sn[b] = a;
                }
                for (a, b) in [(0, n - 1), (1, n)] {
                    sn1[a] = b;
                    sn1[b] = a;
                }
            } else {
                // 0 → n → 1 → n−1 → 0 and its inverse
                for (a, b) in [(0, n), (n, 1), (1, n - 1), (n - 1, 0)] {
                    sn[a] = b;
                    sn1[b] = a;
                }
            }
            out.push((n - 1, sn1));
            out.push((n, sn));
        }
        Family::E if n == 6 => {
            let cyc = |c: &[&[usize]]| {
                let mut s: Vec<usize> = (0..=6).collect();
                for cycle in c {
                    for k in 0..cycle.len() {
                        s[cycle[k]] = cycle[(k + 1) % cycle.len()];
                    }
                }
                s
            };
            out.push((1, cyc(&[&[0, 1, 6], &[2, 3, 5]])));
            out.push((6, cyc(&[&[0, 6, 1], &[2, 5, 3]])));
        }
        Family::E if n == 7 => {
            let mut s = id.clone();
            for (a, b) in [(0, 7), (1, 6), (3, 5)] {
                s.swap(a, b);
            }
            out.push((7, s));
        }
        _ => {}
    }
    out.sort();
    out
}

/// Connected components of the Dynkin graph of a Cartan matrix, each sorted.
pub fn components(a: &IMat) -> Vec<Vec<usize>> {
    let n = a.rows();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(i) = queue.pop_front() {
            comp.push(i);
            for j in 0..n {
                if !seen[j] && a[(i, j)] != 0 {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Identifies a connected finite-type Cartan matrix. Returns the type and `perm` with
/// `perm[b] =` the index (in `a`) of Bourbaki vertex `b + 1`.
pub fn identify(a: &IMat) -> Option<(SimpleType, Vec<usize>)> {
    let n = a.rows();
    if n == 0 || components(a).len() != 1 {
        return None;
    }
    for t in SimpleType::all_up_to(n).into_iter().filter(|t| t.rank == n) {
        let b = cartan_matrix(t);
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if match_from(0, &b, a, &mut perm, &mut used) {
            return Some((t, perm));
        }
    }
    None
}

fn match_from(k: usize, b: &IMat, a: &IMat, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
    let n = b.rows();
    if k == n {
        return true;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let ok = (0..k).all(|j| a[(cand, perm[j])] == b[(k, j)] && a[(perm[j], cand)] == b[(j, k)]);
        if ok {
            perm[k] = cand;
            used[cand] = true;
            if match_from(k + 1, b, a, perm, used) {
                return true;
            }
            used[cand] = false;
        }
    }
    false
}

/// `|W|` for a finite-type Cartan matrix, via the orbit–stabilizer chain on fundamental
/// weights (the stabilizer of a dominant `ω_k` is the parabolic subgroup without `s_k`).
pub fn weyl_order(a: &IMat) -> Int {
    let mut total: Int = 1;
    for comp in components(a) {
        total *= weyl_order_connected(&restrict(a, &comp));
    }
    total
}

fn restrict(a: &IMat, idx: &[usize]) -> IMat {
    let rows: Vec<Vec<Int>> = idx.iter().map(|&i| idx.iter().map(|&j| a[(i, j)]).collect()).collect();
    IMat::from_rows(&rows)
}

fn weyl_order_connected(a: &IMat) -> Int {
    let n = a.rows();
    if n == 0 {
        return 1;
    }
    let degree = |i: usize| (0..n).filter(|&j| j != i && a[(i, j)] != 0).count();
    let k = (0..n).find(|&i| degree(i) <= 1).unwrap_or(0);
    let mut start = vec![0 as Int; n];
    start[k] = 1;
    let mut orbit = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for i in 0..n {
            if c[i] == 0 {
                continue;
            }
            let d: Vec<Int> = (0..n).map(|j| c[j] - c[i] * a[(j, i)]).collect();
            if orbit.insert(d.clone()) {
                queue.push_back(d);
            }
        }
    }
    let rest: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    orbit.len() as Int * weyl_order(&restrict(a, &rest))
}
