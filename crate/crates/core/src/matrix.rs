//! Dense matrices over a prime field F_p with exact Gaussian elimination.
//!
//! Pivoting is deterministic: columns are scanned left to right and the pivot
//! is the first row (lowest index) at or below the current row with a nonzero
//! entry. Kernels and column spaces are therefore reproducible bases.

use std::fmt;

/// Multiplicative inverse of a nonzero element of F_p.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    let mut b = base as u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    base = acc as u32;
    base
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    ///
    /// `cols` is needed to give an empty row list a definite shape.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix literal");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x.rem_euclid(p as i64) as u32);
            }
        }
        m
    }

    /// A single column vector.
    pub fn column(p: u32, entries: &[u32]) -> Self {
        let mut m = Self::zeros(p, entries.len(), 1);
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, 0, x % p);
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.p;
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.p, rhs.p, "field mismatch");
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let p = self.p as u64;
        let mut out = Matrix::zeros(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * rhs.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in sum");
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&rhs.data) {
            *x = (*x + y) % self.p;
        }
        out
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = (self.p - *x) % self.p;
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let mut out = self.clone();
        let p = self.p as u64;
        for x in out.data.iter_mut() {
            *x = ((*x as u64 * c as u64) % p) as u32;
        }
        out
    }

    /// Horizontal concatenation. All blocks must share a row count.
    pub fn hstack(p: u32, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for i in 0..rows {
                for j in 0..b.cols {
                    out.set(i, off + j, b.get(i, j));
                }
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation. All blocks must share a column count.
    pub fn vstack(p: u32, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            for i in 0..b.rows {
                for j in 0..cols {
                    out.set(off + i, j, b.get(i, j));
                }
            }
            off += b.rows;
        }
        out
    }

    pub fn block_diag(p: u32, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Writes `block` into `self` with its top-left corner at (r0, c0).
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, self.rows, cols.len());
        for (jj, &j) in cols.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.p, rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), self.p) as u64;
            for j in 0..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = ((m.data[idx] as u64 * inv) % p) as u32;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let sub = (f * m.get(r, j) as u64) % p;
                    let idx = i * m.cols + j;
                    m.data[idx] = ((m.data[idx] as u64 + p - sub) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one basis vector per column.
    ///
    /// The vector attached to free column `f` has a 1 in position `f`, zeros in
    /// the other free positions, and is ordered by increasing `f`.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.p, self.cols, free.len());
        for (jj, &f) in free.iter().enumerate() {
            k.set(f, jj, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                let v = r.get(row, f);
                if v != 0 {
                    k.set(pc, jj, self.p - v);
                }
            }
        }
        k
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn column_space(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Solves `self * X = rhs`, returning one solution if any exists.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "shape mismatch in solve");
        let aug = Matrix::hstack(self.p, self.rows, &[self, rhs]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.p, self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(row, self.cols + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.p, self.rows))?;
        (self.mul(&x) == Matrix::identity(self.p, self.rows)).then_some(x)
    }

    /// Standard basis vectors extending the column span of `basis` to all of
    /// F_p^rows, chosen greedily in index order.
    pub fn complement_columns(&self) -> Matrix {
        let mut current = self.column_space();
        let mut chosen = Vec::new();
        let mut r = current.cols;
        for i in 0..self.rows {
            let mut e = Matrix::zeros(self.p, self.rows, 1);
            e.set(i, 0, 1);
            let trial = Matrix::hstack(self.p, self.rows, &[&current, &e]);
            if trial.rank() > r {
                current = trial;
                r += 1;
                chosen.push(i);
            }
        }
        let mut out = Matrix::zeros(self.p, self.rows, chosen.len());
        for (jj, &i) in chosen.iter().enumerate() {
            out.set(i, jj, 1);
        }
        out
    }

    /// True when every column of `other` lies in the column span of `self`.
    pub fn spans(&self, other: &Matrix) -> bool {
        let r = self.rank();
        Matrix::hstack(self.p, self.rows, &[self, other]).rank() == r
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

/// All subspaces of F_p^d, each given by a basis in column-reduced form.
///
/// Enumerated by dimension, then by pivot pattern, then by free entries, so
/// the order is deterministic.
pub fn all_subspaces(p: u32, d: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for k in 0..=d {
        for pivots in combinations(d, k) {
            // free slots: in row-echelon row i (pivot c_i), the entries at
            // non-pivot columns greater than c_i
            let mut slots = Vec::new();
            for (i, &c) in pivots.iter().enumerate() {
                for col in c + 1..d {
                    if !pivots.contains(&col) {
                        slots.push((i, col));
                    }
                }
            }
            let total = (p as u64).pow(slots.len() as u32);
            for code in 0..total {
                let mut rowform = Matrix::zeros(p, k, d);
                for (i, &c) in pivots.iter().enumerate() {
                    rowform.set(i, c, 1);
                }
                let mut rest = code;
                for &(i, col) in &slots {
                    rowform.set(i, col, (rest % p as u64) as u32);
                    rest /= p as u64;
                }
                out.push(rowform.transpose());
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
