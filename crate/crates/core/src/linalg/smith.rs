use num_integer::Integer;

use super::mat::round_div;
use super::{IMat, Int};

/// Smith normal form `U·A·V = D` with unimodular `U`, `V` and their inverses.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IMat,
    pub u_inv: IMat,
    pub v: IMat,
    pub v_inv: IMat,
    /// Diagonal of `D`, length `min(rows, cols)`, nonnegative, each dividing the next
    /// (zeros at the end).
    pub diag: Vec<Int>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|&&d| d != 0).count()
    }
}

struct Work {
    d: IMat,
    u: IMat,
    u_inv: IMat,
    v: IMat,
    v_inv: IMat,
}

impl Work {
    fn row_add(&mut self, dst: usize, src: usize, c: Int) {
        self.d.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, -c);
    }

    fn col_add(&mut self, dst: usize, src: usize, c: Int) {
        self.d.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, -c);
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn row_neg(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

pub fn smith(a: &IMat) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        u: IMat::identity(m),
        u_inv: IMat::identity(m),
        v: IMat::identity(n),
        v_inv: IMat::identity(n),
    };
    let r = m.min(n);
    let mut t = 0;
    while t < r {
        // smallest nonzero entry of the trailing block as pivot
        let mut best: Option<(usize, usize, Int)> = None;
        for i in t..m {
            for j in t..n {
                let x = w.d[(i, j)].abs();
                if x != 0 && best.map_or(true, |b| x < b.2) {
                    best = Some((i, j, x));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if w.d[(i, t)] != 0 {
                    let q = round_div(w.d[(i, t)], w.d[(t, t)]);
                    w.row_add(i, t, -q);
                    if w.d[(i, t)] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if w.d[(t, j)] != 0 {
                    let q = round_div(w.d[(t, j)], w.d[(t, t)]);
                    w.col_add(j, t, -q);
                    if w.d[(t, j)] != 0 {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest remaining entry of row/column t into the pivot
                let mut bi = (t, t, w.d[(t, t)].abs());
                for i in t + 1..m {
                    let x = w.d[(i, t)].abs();
                    if x != 0 && x < bi.2 {
                        bi = (i, t, x);
                    }
                }
                for j in t + 1..n {
                    let x = w.d[(t, j)].abs();
                    if x != 0 && x < bi.2 {
                        bi = (t, j, x);
                    }
                }
                if bi.0 != t {
                    w.row_swap(t, bi.0);
                }
                if bi.1 != t {
                    w.col_swap(t, bi.1);
                }
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = w.d[(t, t)];
            let mut bad = None;
            'outer: for i in t + 1..m {
                for j in t + 1..n {
                    if w.d[(i, j)] % p != 0 {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => w.row_add(t, i, 1),
                None => break,
            }
        }
        if w.d[(t, t)] < 0 {
            w.row_neg(t);
        }
        t += 1;
    }
    let diag = (0..r).map(|i| w.d[(i, i)]).collect();
    Smith { u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv, diag }
}

/// Saturated basis (as columns) of the integer kernel `{x : A x = 0}`.
pub fn kernel(a: &IMat) -> IMat {
    let s = smith(a);
    let rk = s.rank();
    let idx: Vec<usize> = (rk..a.cols()).collect();
    s.v.select_cols(&idx)
}

/// An integer solution of `A x = b`, if any.
pub fn solve_int(a: &IMat, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), b.len());
    let s = smith(a);
    let ub = s.u.mul_vec(b);
    let mut y = vec![0; a.cols()];
    for (i, &c) in ub.iter().enumerate() {
        let d = if i < s.diag.len() { s.diag[i] } else { 0 };
        if d == 0 {
            if c != 0 {
                return None;
            }
        } else {
            if c % d != 0 {
                return None;
            }
            y[i] = c / d;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Column Hermite normal form of the lattice spanned by the columns of `g`.
///
/// Returns `(H, pivots)`: `H` has full column rank, the pivot row of column `k` is
/// `pivots[k]` (strictly increasing), pivots are positive and entries of earlier
/// columns in a pivot row lie in `[0, pivot)`.
pub fn column_hnf(g: &IMat) -> (IMat, Vec<usize>) {
    let (n, m) = (g.rows(), g.cols());
    let mut a = g.clone();
    let mut pc = 0;
    let mut pivots = Vec::new();
    for row in 0..n {
        if pc == m {
            break;
        }
        loop {
            let mut best: Option<(usize, Int)> = None;
            for k in pc..m {
                let x = a[(row, k)].abs();
                if x != 0 && best.map_or(true, |b| x < b.1) {
                    best = Some((k, x));
                }
            }
            let Some((k, _)) = best else { break };
            a.swap_cols(pc, k);
            let p = a[(row, pc)];
            let mut done = true;
            for k in pc + 1..m {
                if a[(row, k)] != 0 {
                    let q = Integer::div_floor(&a[(row, k)], &p);
                    a.add_col_multiple(k, pc, -q);
                    if a[(row, k)] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[(row, pc)] == 0 {
            continue;
        }
        if a[(row, pc)] < 0 {
            a.negate_col(pc);
        }
        let p = a[(row, pc)];
        for k in 0..pc {
            let q = Integer::div_floor(&a[(row, k)], &p);
            a.add_col_multiple(k, pc, -q);
        }
        pivots.push(row);
        pc += 1;
    }
    let idx: Vec<usize> = (0..pc).collect();
    (a.select_cols(&idx), pivots)
}

/// Extends a primitive vector to a unimodular matrix whose first column is `v`.
pub fn extend_to_basis(v: &[Int]) -> Option<IMat> {
    let n = v.len();
    let col = IMat::from_cols(n, &[v.to_vec()]);
    let s = smith(&col);
    if s.diag.first() != Some(&1) {
        return None;
    }
    // U v = e1, so U^{-1} e1 = v; V is ±1 (1×1)
    let mut b = s.u_inv.clone();
    if s.v[(0, 0)] == -1 {
        b.negate_col(0);
    }
    Some(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IMat) {
        let s = smith(a);
        let d = s.u.mul(a).mul(&s.v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let want = if i == j { s.diag[i] } else { 0 };
                assert_eq!(d[(i, j)], want, "{a:?}");
            }
        }
        assert!(s.u.mul(&s.u_inv).is_identity());
        assert!(s.v.mul(&s.v_inv).is_identity());
        for w in s.diag.windows(2) {
            assert!(w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0), "{:?}", s.diag);
        }
    }

    #[test]
    fn smith_small() {
        check(&IMat::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]));
        check(&IMat::from_rows(&[[0, 0], [0, 0]]));
        check(&IMat::from_rows(&[[4, 6]]));
        check(&IMat::from_rows(&[[2, 0], [0, 3]]));
        let s = smith(&IMat::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.diag, vec![1, 6]);
        let s = smith(&IMat::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]));
        assert_eq!(s.diag, vec![2, 6, 12]);
    }

    #[test]
    fn kernel_and_solve() {
        let a = IMat::from_rows(&[[1, 2, 3], [2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        assert!(solve_int(&IMat::from_rows(&[[2]]), &[3]).is_none());
        assert_eq!(solve_int(&IMat::from_rows(&[[2, 3]]), &[1]).map(|x| 2 * x[0] + 3 * x[1]), Some(1));
    }

    #[test]
    fn hnf_canonical() {
        let g1 = IMat::from_rows(&[[2, 0, 4], [1, 3, 5]]);
        let g2 = IMat::from_rows(&[[4, 2, 0], [5, 1, 3]]);
        assert_eq!(column_hnf(&g1).0, column_hnf(&g2).0);
        let (h, piv) = column_hnf(&IMat::from_rows(&[[0, 0], [2, 4]]));
        assert_eq!(piv, vec![1]);
        assert_eq!(h, IMat::from_rows(&[[0], [2]]));
    }

    #[test]
    fn extend_basis() {
        let b = extend_to_basis(&[3, 5, 7]).unwrap();
        assert_eq!(b.col(0), vec![3, 5, 7]);
        assert_eq!(b.det().abs(), 1);
        assert!(extend_to_basis(&[2, 4]).is_none());
    }
}
