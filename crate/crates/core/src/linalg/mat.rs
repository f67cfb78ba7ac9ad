use std::fmt;
use std::ops::{Index, IndexMut};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Int, Rat};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: Int) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    /// Builds a matrix from rows; an empty slice gives a 0×0 matrix.
    pub fn from_rows<R: AsRef<[Int]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend_from_slice(row.as_ref());
        }
        IMat { rows: r, cols: c, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let rows: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&x| x as Int).collect()).collect();
        Self::from_rows(&rows)
    }

    /// Builds a `rows × cols.len()` matrix whose columns are the given vectors.
    pub fn from_cols<C: AsRef<[Int]>>(rows: usize, cols: &[C]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in 0..rows {
                m[(i, j)] = c[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: Int) -> IMat {
        IMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> IMat {
        self.scale(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == IMat::identity(self.rows)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &IMat) -> IMat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = IMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IMat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &IMat) -> IMat {
        let mut m = IMat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> IMat {
        let mut m = IMat::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> IMat {
        let cols: Vec<Vec<Int>> = idx.iter().map(|&j| self.col(j)).collect();
        IMat::from_cols(self.rows, &cols)
    }

    pub fn to_qmat(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| Rat::from_integer(x)).collect(),
        }
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Int {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a = self.clone();
        let mut sign = 1;
        let mut prev = 1;
        for k in 0..n {
            if a[(k, k)] == 0 {
                let Some(p) = (k + 1..n).find(|&i| a[(i, k)] != 0) else {
                    return 0;
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[(i, j)] = (a[(i, j)] * a[(k, k)] - a[(i, k)] * a[(k, j)]) / prev;
                }
                a[(i, k)] = 0;
            }
            prev = a[(k, k)];
        }
        sign * a[(n - 1, n - 1)]
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<IMat> {
        let inv = self.to_qmat().inverse()?;
        inv.to_imat()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs() == 1
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: Int) {
        if c == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += c * v;
        }
    }

    /// col[dst] += c * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: Int) {
        if c == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += c * v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            self[(i, j)] = -self[(i, j)];
        }
    }

    pub fn max_abs(&self) -> Int {
        self.data.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl Index<(usize, usize)> for IMat {
    type Output = Int;
    fn index(&self, (i, j): (usize, usize)) -> &Int {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Int {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[Rat]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend_from_slice(row.as_ref());
        }
        QMat { rows: r, cols: c, data }
    }

    pub fn from_cols<C: AsRef<[Rat]>>(rows: usize, cols: &[C]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in 0..rows {
                m[(i, j)] = c[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<Rat> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() && !self[(i, j)].is_zero() {
                        s += self[(i, j)] * v[j];
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: Rat) -> QMat {
        QMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn hstack(&self, other: &QMat) -> QMat {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = QMat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Integer matrix if every entry is integral.
    pub fn to_imat(&self) -> Option<IMat> {
        if self.data.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(IMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.to_integer()).collect() })
    }

    /// Least common multiple of all denominators.
    pub fn denominator(&self) -> Int {
        self.data.iter().fold(1, |acc: Int, x| acc.lcm(x.denom()))
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a[(r, c)].recip();
            for j in 0..a.cols {
                a[(r, j)] *= inv;
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)];
                    for j in 0..a.cols {
                        let v = a[(r, j)];
                        a[(i, j)] -= f * v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<QMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&QMat::identity(n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)];
            }
        }
        Some(inv)
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let bcol = QMat::from_cols(self.rows, &[b.to_vec()]);
        let (r, piv) = self.hstack(&bcol).rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &c) in piv.iter().enumerate() {
            x[c] = r[(i, self.cols)];
        }
        Some(x)
    }

    /// Basis of the rational null space.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, piv) = self.rref();
        let mut out = Vec::new();
        for free in 0..self.cols {
            if piv.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (i, &c) in piv.iter().enumerate() {
                v[c] = -r[(i, free)];
            }
            out.push(v);
        }
        out
    }
}

impl Index<(usize, usize)> for QMat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", r.join(" "))?;
        }
        write!(f, "]")
    }
}

pub fn rat(n: Int, d: Int) -> Rat {
    Rat::new(n, d)
}

pub fn int_vec_to_rat(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x)).collect()
}

/// Integral vector, if every entry is an integer.
pub fn rat_vec_to_int(v: &[Rat]) -> Option<Vec<Int>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

pub fn dot_q(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |s, (x, y)| s + x * y)
}

pub fn dot_i(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add_q(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_q(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_q(c: Rat, a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| c * x).collect()
}

pub fn add_i(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_i(a: &[Int], b: &[Int]) -> Vec<Int> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_i(c: Int, a: &[Int]) -> Vec<Int> {
    a.iter().map(|x| c * x).collect()
}

/// Denominator lcm of a rational vector.
pub fn vec_denominator(v: &[Rat]) -> Int {
    v.iter().fold(1, |acc: Int, x| acc.lcm(x.denom()))
}

/// gcd of a nonempty set of rationals: the positive generator of the group they span.
pub fn rat_gcd(v: &[Rat]) -> Rat {
    let den = vec_denominator(v);
    let g = v.iter().fold(0 as Int, |g, x| g.gcd(&(x * Rat::from_integer(den)).to_integer()));
    Rat::new(g, den)
}

pub fn is_zero_q(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Rounds `a / b` to a nearest integer quotient (b != 0).
pub(crate) fn round_div(a: Int, b: Int) -> Int {
    let (q, r) = a.div_mod_floor(&b);
    if 2 * r.abs() > b.abs() {
        q + 1
    } else {
        q
    }
}
