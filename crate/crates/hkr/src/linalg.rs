//! Dense and sparse exact linear algebra over Q.

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::rational::{fmt_q, Q};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| fmt_q(self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn scalar(n: usize, c: &Q) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Mat {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Q>]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Mat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::rational::q(x)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: &Q) {
        if !v.is_zero() {
            let x = &mut self.data[i * self.cols + j];
            *x += v;
        }
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Q]) {
        for (i, x) in v.iter().enumerate() {
            self.set(i, j, x.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let p = a * b;
                        out.data[i * other.cols + j] += p;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Q::zero(); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, k);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        self.scale(&-Q::one())
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zeros(self.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut m = Mat::zeros(self.rows + other.rows, self.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, 0, other);
        m
    }

    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let x = block.get(i, j);
                if !x.is_zero() {
                    self.set(r0 + i, c0 + j, x.clone());
                }
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = self.get(r0 + i, c0 + j);
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(idx.len(), self.cols);
        for (a, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m.set(a, j, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (b, &j) in idx.iter().enumerate() {
                m.set(i, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zeros(r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            m.paste(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            let nz: Vec<usize> = (col..m.cols).filter(|&j| !m.get(row, j).is_zero()).collect();
            for &j in &nz {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row {
                    continue;
                }
                let f = m.get(i, col).clone();
                if f.is_zero() {
                    continue;
                }
                for &j in &nz {
                    let delta = &f * m.get(row, j);
                    let x = &mut m.data[i * m.cols + j];
                    *x -= delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows < self.cols {
            return self.transpose().rref().1.len();
        }
        self.rref().1.len()
    }

    /// Columns form a basis of the kernel.
    pub fn kernel(&self) -> Mat {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut k = Mat::zeros(self.cols, free.len());
        for (b, &f) in free.iter().enumerate() {
            k.set(f, b, Q::one());
            for (pi, &pc) in piv.iter().enumerate() {
                let x = r.get(pi, f);
                if !x.is_zero() {
                    k.set(pc, b, -x.clone());
                }
            }
        }
        k
    }

    /// Independent columns spanning the image (a subset of the original columns).
    pub fn image_basis(&self) -> Mat {
        let (_, piv) = self.rref();
        self.select_cols(&piv)
    }

    /// Solves `self * X = B`; free variables are zero.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let (r, piv) = aug.rref();
        if piv.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, b.cols);
        for (pi, &pc) in piv.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(pi, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, b: &[Q]) -> Option<Vec<Q>> {
        let bm = Mat::from_cols(b.len(), &[b.to_vec()]);
        self.solve(&bm).map(|x| x.col(0))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Mat::identity(self.rows))?;
        if self.mul(&x) == Mat::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn det(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut d = Q::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                return Q::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                d = -d;
            }
            let piv = m.get(col, col).clone();
            d *= &piv;
            for i in col + 1..m.rows {
                let f = m.get(i, col) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let delta = &f * m.get(col, j);
                    m.data[i * m.cols + j] -= delta;
                }
            }
        }
        d
    }

    /// `L` with `L * self = I`, for full column rank; the rows of `L` vanish
    /// on a fixed complement of the column span.
    pub fn left_inverse(&self) -> Option<Mat> {
        let n = self.rows;
        let k = self.cols;
        let (_, piv) = self.hstack(&Mat::identity(n)).rref();
        if piv.len() < n || piv.iter().take(k).enumerate().any(|(a, &b)| a != b) {
            return None;
        }
        let extra: Vec<usize> = piv[k..].iter().map(|p| p - k).collect();
        let mut full = self.clone();
        let id = Mat::identity(n);
        full = full.hstack(&id.select_cols(&extra));
        let inv = full.inverse()?;
        Some(inv.block(0, 0, k, n))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| fmt_q(self.get(i, j))).collect())
            .collect()
    }
}

/// Sparse linear system `sum_j a_ij x_j = b_i`, reduced by Gaussian
/// elimination with shortest-row pivoting.
#[derive(Default, Clone)]
pub struct SparseSystem {
    pub ncols: usize,
    rows: Vec<(BTreeMap<usize, Q>, Q)>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: BTreeMap<usize, Q>, rhs: Q) {
        let coeffs: BTreeMap<usize, Q> = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if coeffs.is_empty() && rhs.is_zero() {
            return;
        }
        self.rows.push((coeffs, rhs));
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Returns one solution (free variables zero), or `None` if inconsistent.
    pub fn solve(&self) -> Option<Vec<Q>> {
        let mut pending: Vec<(BTreeMap<usize, Q>, Q)> = self.rows.clone();
        // pivot column -> normalized row
        let mut done: Vec<(usize, BTreeMap<usize, Q>, Q)> = Vec::new();
        let mut by_col: BTreeMap<usize, usize> = BTreeMap::new();
        while !pending.is_empty() {
            // reduce every pending row against the eliminated pivots lazily:
            // pick the shortest pending row, fully reduce it, then pivot.
            let (idx, _) = pending
                .iter()
                .enumerate()
                .min_by_key(|(_, r)| r.0.len())
                .unwrap();
            let (mut row, mut rhs) = pending.swap_remove(idx);
            loop {
                let hit = row.keys().find(|c| by_col.contains_key(c)).copied();
                let Some(c) = hit else { break };
                let f = row.remove(&c).unwrap();
                let (_, prow, prhs) = &done[by_col[&c]];
                for (k, v) in prow {
                    if *k == c {
                        continue;
                    }
                    let e = row.entry(*k).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
                rhs -= &f * prhs;
            }
            let Some((&pc, pv)) = row.iter().next() else {
                if rhs.is_zero() {
                    continue;
                }
                return None;
            };
            let inv = pv.recip();
            let row: BTreeMap<usize, Q> = row.into_iter().map(|(k, v)| (k, v * &inv)).collect();
            let rhs = rhs * &inv;
            by_col.insert(pc, done.len());
            done.push((pc, row, rhs));
        }
        // back substitution in reverse pivot order
        let mut x = vec![Q::zero(); self.ncols];
        for (pc, row, rhs) in done.iter().rev() {
            let mut v = rhs.clone();
            for (k, a) in row {
                if k != pc {
                    v -= a * &x[*k];
                }
            }
            x[*pc] = v;
        }
        Some(x)
    }
}

pub fn vec_is_zero(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn rank_and_kernel_of_small_matrix() {
        let m = Mat::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.cols, 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Mat::from_i64(&[&[4, -1], &[-7, 2]]));
        assert_eq!(m.det(), q(1));
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(Mat::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn left_inverse_of_tall_matrix() {
        let m = Mat::from_i64(&[&[1, 0], &[1, 1], &[0, 3]]);
        let l = m.left_inverse().unwrap();
        assert_eq!(l.mul(&m), Mat::identity(2));
    }

    #[test]
    fn sparse_solver_agrees_with_dense() {
        let a = Mat::from_i64(&[&[1, 1, 0, 2], &[0, 1, 1, 0], &[1, 2, 1, 2], &[3, 0, 0, 1]]);
        let b = vec![q(3), q(1), q(4), q(2)];
        let mut s = SparseSystem::new(4);
        for i in 0..4 {
            let mut row = BTreeMap::new();
            for j in 0..4 {
                row.insert(j, a.get(i, j).clone());
            }
            s.push(row, b[i].clone());
        }
        let x = s.solve().unwrap();
        assert_eq!(a.apply(&x), b);
    }

    #[test]
    fn sparse_solver_detects_inconsistency() {
        let mut s = SparseSystem::new(1);
        s.push([(0, q(1))].into_iter().collect(), q(1));
        s.push([(0, q(2))].into_iter().collect(), q(3));
        assert!(s.solve().is_none());
    }
}
