//! Bounded cochain complexes of finite-dimensional Q-vector spaces.
//!
//! Cohomological indexing: `d` raises degree by one.

use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Mat, SparseSystem};
use crate::rational::{sign, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub lo: i32,
    pub dims: Vec<usize>,
    /// `d[k]` maps degree `lo + k` to `lo + k + 1`.
    pub d: Vec<Mat>,
    /// Optional grade of every basis vector; differentials must preserve it.
    pub grades: Option<Vec<Vec<u32>>>,
}

#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i32,
    pub dim: usize,
    /// Columns are cycles whose classes form a basis.
    pub reps: Mat,
    /// Coordinates of a cycle's class; kills boundaries.
    pub proj: Mat,
}

impl Complex {
    pub fn new(lo: i32, dims: Vec<usize>, d: Vec<Mat>) -> Result<Complex> {
        let c = Complex {
            lo,
            dims,
            d,
            grades: None,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_grades(mut self, grades: Vec<Vec<u32>>) -> Result<Complex> {
        if grades.len() != self.dims.len()
            || grades.iter().zip(&self.dims).any(|(g, &n)| g.len() != n)
        {
            return Err(Error::Structural("grade vector shape".into()));
        }
        for (k, m) in self.d.iter().enumerate() {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    if !m.get(i, j).is_zero() && grades[k + 1][i] != grades[k][j] {
                        return Err(Error::Invariant(format!(
                            "differential at degree {} mixes grades",
                            self.lo + k as i32
                        )));
                    }
                }
            }
        }
        self.grades = Some(grades);
        Ok(self)
    }

    pub fn zero() -> Complex {
        Complex {
            lo: 0,
            dims: vec![],
            d: vec![],
            grades: None,
        }
    }

    /// A single space placed in degree `deg`.
    pub fn concentrated(deg: i32, dim: usize) -> Complex {
        Complex {
            lo: deg,
            dims: vec![dim],
            d: vec![],
            grades: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d.len() + 1 != self.dims.len() && !(self.dims.is_empty() && self.d.is_empty()) {
            return Err(Error::Structural("differential count".into()));
        }
        for (k, m) in self.d.iter().enumerate() {
            if m.cols != self.dims[k] || m.rows != self.dims[k + 1] {
                return Err(Error::Structural(format!(
                    "differential at degree {} has shape {}x{}, expected {}x{}",
                    self.lo + k as i32,
                    m.rows,
                    m.cols,
                    self.dims[k + 1],
                    self.dims[k]
                )));
            }
        }
        for k in 0..self.d.len().saturating_sub(1) {
            if !self.d[k + 1].mul(&self.d[k]).is_zero() {
                return Err(Error::Invariant(format!(
                    "d∘d ≠ 0 at degree {}",
                    self.lo + k as i32
                )));
            }
        }
        Ok(())
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn dim(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    /// Differential leaving degree `n`.
    pub fn d_at(&self, n: i32) -> Mat {
        if n >= self.lo && n < self.hi() {
            self.d[(n - self.lo) as usize].clone()
        } else {
            Mat::zeros(self.dim(n + 1), self.dim(n))
        }
    }

    pub fn grade_of(&self, n: i32, i: usize) -> u32 {
        self.grades.as_ref().map_or(0, |g| g[(n - self.lo) as usize][i])
    }

    /// Indices of basis vectors of degree `n` lying in grade `g`.
    pub fn grade_indices(&self, n: i32, g: u32) -> Vec<usize> {
        match &self.grades {
            None => (0..self.dim(n)).collect(),
            Some(gr) => {
                if n < self.lo || n > self.hi() {
                    return vec![];
                }
                gr[(n - self.lo) as usize]
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x == g)
                    .map(|(i, _)| i)
                    .collect()
            }
        }
    }

    pub fn max_grade(&self) -> u32 {
        self.grades
            .as_ref()
            .map_or(0, |g| g.iter().flatten().copied().max().unwrap_or(0))
    }

    /// The grade-`g` subcomplex.
    pub fn graded_piece(&self, g: u32) -> Complex {
        if self.grades.is_none() {
            return self.clone();
        }
        let idx: Vec<Vec<usize>> = self.degrees().map(|n| self.grade_indices(n, g)).collect();
        let dims = idx.iter().map(|v| v.len()).collect();
        let d = (0..self.d.len())
            .map(|k| self.d[k].select_rows(&idx[k + 1]).select_cols(&idx[k]))
            .collect();
        Complex {
            lo: self.lo,
            dims,
            d,
            grades: None,
        }
    }

    pub fn homology(&self, n: i32) -> Homology {
        let dn = self.d_at(n);
        let dprev = self.d_at(n - 1);
        let dim = self.dim(n);
        let z = dn.kernel();
        let b = dprev.image_basis();
        let nb = b.cols;
        // extend a basis of B to a basis of Z
        let stacked = b.hstack(&z);
        let (_, piv) = stacked.rref();
        let extra: Vec<usize> = piv.iter().filter(|&&p| p >= nb).map(|&p| p - nb).collect();
        let reps = z.select_cols(&extra);
        let h = reps.cols;
        let proj = if h == 0 {
            Mat::zeros(0, dim)
        } else {
            let basis = b.hstack(&reps);
            let l = basis.left_inverse().expect("independent columns");
            l.block(nb, 0, h, dim)
        };
        Homology {
            degree: n,
            dim: h,
            reps,
            proj,
        }
    }

    pub fn betti(&self, n: i32) -> usize {
        let dim = self.dim(n);
        dim - self.d_at(n).rank() - self.d_at(n - 1).rank()
    }

    pub fn betti_graded(&self, n: i32, g: u32) -> usize {
        self.graded_piece(g).betti(n)
    }

    /// `C[k]`: degree `n` holds `C^{n+k}`, differential scaled by `(-1)^k`.
    pub fn shift(&self, k: i32) -> Complex {
        let s = sign(k as i64);
        Complex {
            lo: self.lo - k,
            dims: self.dims.clone(),
            d: self.d.iter().map(|m| m.scale(&s)).collect(),
            grades: self.grades.clone(),
        }
    }

    pub fn negate_differential(&self) -> Complex {
        Complex {
            lo: self.lo,
            dims: self.dims.clone(),
            d: self.d.iter().map(|m| m.neg()).collect(),
            grades: self.grades.clone(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Offsets of each degree inside the direct sum of all terms.
    pub fn offsets(&self) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for &d in &self.dims {
            o.push(acc);
            acc += d;
        }
        o
    }
}

/// A degree-preserving (or shifted) family of maps between two complexes.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMap {
    /// Source degree of `maps[0]`.
    pub lo: i32,
    pub shift: i32,
    pub maps: Vec<Mat>,
}

impl ComplexMap {
    pub fn from_fn(src: &Complex, tgt: &Complex, shift: i32, f: impl Fn(i32) -> Mat) -> ComplexMap {
        let maps = src
            .degrees()
            .map(|n| {
                let m = f(n);
                assert_eq!(
                    (m.rows, m.cols),
                    (tgt.dim(n + shift), src.dim(n)),
                    "component at degree {n}"
                );
                m
            })
            .collect();
        ComplexMap {
            lo: src.lo,
            shift,
            maps,
        }
    }

    pub fn identity(c: &Complex) -> ComplexMap {
        ComplexMap::from_fn(c, c, 0, |n| Mat::identity(c.dim(n)))
    }

    pub fn at(&self, src: &Complex, tgt: &Complex, n: i32) -> Mat {
        if n < self.lo || n >= self.lo + self.maps.len() as i32 {
            Mat::zeros(tgt.dim(n + self.shift), src.dim(n))
        } else {
            self.maps[(n - self.lo) as usize].clone()
        }
    }

    /// `d f = (-1)^shift f d` in every degree; returns the first failing degree.
    pub fn chain_defect(&self, src: &Complex, tgt: &Complex) -> Option<i32> {
        let s = sign(self.shift as i64);
        for n in src.lo - 1..=src.hi() {
            let lhs = tgt.d_at(n + self.shift).mul(&self.at(src, tgt, n));
            let rhs = self.at(src, tgt, n + 1).mul(&src.d_at(n)).scale(&s);
            if lhs != rhs {
                return Some(n);
            }
        }
        None
    }

    pub fn is_chain_map(&self, src: &Complex, tgt: &Complex) -> bool {
        self.chain_defect(src, tgt).is_none()
    }

    pub fn compose(&self, first: &ComplexMap, src: &Complex, mid: &Complex, tgt: &Complex) -> ComplexMap {
        ComplexMap::from_fn(src, tgt, first.shift + self.shift, |n| {
            self.at(mid, tgt, n + first.shift).mul(&first.at(src, mid, n))
        })
    }

    /// Matrix of the induced map on `H^n`, in the bases chosen by `homology`.
    pub fn induced(&self, src: &Complex, tgt: &Complex, n: i32) -> Mat {
        let hs = src.homology(n);
        let ht = tgt.homology(n + self.shift);
        ht.proj.mul(&self.at(src, tgt, n)).mul(&hs.reps)
    }

    pub fn is_quasi_iso(&self, src: &Complex, tgt: &Complex) -> bool {
        let lo = src.lo.min(tgt.lo - self.shift);
        let hi = src.hi().max(tgt.hi() - self.shift);
        (lo..=hi).all(|n| {
            let m = self.induced(src, tgt, n);
            m.rows == m.cols && m.rank() == m.rows
        })
    }

    /// Gradewise quasi-isomorphism test for graded complexes.
    pub fn is_quasi_iso_graded(&self, src: &Complex, tgt: &Complex, grades: &[u32]) -> bool {
        grades.iter().all(|&g| {
            let s = src.graded_piece(g);
            let t = tgt.graded_piece(g);
            let f = ComplexMap::from_fn(&s, &t, self.shift, |n| {
                let full = self.at(src, tgt, n);
                full.select_rows(&tgt.grade_indices(n + self.shift, g))
                    .select_cols(&src.grade_indices(n, g))
            });
            f.is_quasi_iso(&s, &t)
        })
    }
}

/// `Hom(C, D)` with `(df) = d∘f − (−1)^{|f|} f∘d`.
///
/// The basis of `Hom(C^p, D^{p+n})` is the row-major enumeration of matrix entries.
pub fn hom_complex(c: &Complex, d: &Complex) -> (Complex, HomLayout) {
    let lo = d.lo - c.hi();
    let hi = d.hi() - c.lo;
    let mut layout = HomLayout {
        lo,
        blocks: Vec::new(),
    };
    let mut dims = Vec::new();
    for n in lo..=hi {
        let mut blocks = Vec::new();
        let mut off = 0;
        for p in c.degrees() {
            let rows = d.dim(p + n);
            let cols = c.dim(p);
            if rows * cols > 0 {
                blocks.push((p, off, rows, cols));
                off += rows * cols;
            }
        }
        dims.push(off);
        layout.blocks.push(blocks);
    }
    let mut diffs = Vec::new();
    for n in lo..hi {
        let mut m = Mat::zeros(dims[(n + 1 - lo) as usize], dims[(n - lo) as usize]);
        let s = sign(n as i64);
        for &(p, off, rows, cols) in &layout.blocks[(n - lo) as usize] {
            for i in 0..rows {
                for j in 0..cols {
                    let col = off + i * cols + j;
                    // d_D ∘ E_ij : C^p -> D^{p+n+1}
                    let dd = d.d_at(p + n);
                    for a in 0..dd.rows {
                        let v = dd.get(a, i);
                        if !v.is_zero() {
                            let row = layout.index(n + 1, p, a, j).unwrap();
                            m.add_at(row, col, v);
                        }
                    }
                    // −(−1)^n E_ij ∘ d_C : C^{p-1} -> D^{p+n}
                    let dc = c.d_at(p - 1);
                    for b in 0..dc.cols {
                        let v = dc.get(j, b);
                        if !v.is_zero() {
                            let row = layout.index(n + 1, p - 1, i, b).unwrap();
                            m.add_at(row, col, &(-(&s * v)));
                        }
                    }
                }
            }
        }
        diffs.push(m);
    }
    let cx = Complex::new(lo, dims, diffs).expect("hom complex squares to zero");
    (cx, layout)
}

#[derive(Clone, Debug)]
pub struct HomLayout {
    pub lo: i32,
    /// Per degree: (source degree p, offset, rows, cols).
    pub blocks: Vec<Vec<(i32, usize, usize, usize)>>,
}

impl HomLayout {
    pub fn index(&self, n: i32, p: i32, i: usize, j: usize) -> Option<usize> {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.blocks.len() {
            return None;
        }
        self.blocks[k as usize]
            .iter()
            .find(|b| b.0 == p)
            .map(|&(_, off, _, cols)| off + i * cols + j)
    }

    /// The homogeneous map of degree `n` as a vector in `Hom^n`.
    pub fn flatten(&self, n: i32, dim: usize, parts: &[(i32, Mat)]) -> Vec<Q> {
        let mut v = vec![Q::zero(); dim];
        for (p, m) in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    if !m.get(i, j).is_zero() {
                        v[self.index(n, *p, i, j).unwrap()] = m.get(i, j).clone();
                    }
                }
            }
        }
        v
    }

    /// Component `C^p -> D^{p+n}` of a vector in `Hom^n`.
    pub fn component(&self, n: i32, p: i32, v: &[Q], rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if let Some(k) = self.index(n, p, i, j) {
                    m.set(i, j, v[k].clone());
                }
            }
        }
        m
    }
}

/// `C ⊗ D` with `d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy`; basis `(i, j) ↦ off + i·dim D^q + j`.
pub fn tensor_complex(c: &Complex, d: &Complex) -> (Complex, TensorLayout) {
    let lo = c.lo + d.lo;
    let hi = c.hi() + d.hi();
    let mut layout = TensorLayout {
        lo,
        blocks: Vec::new(),
    };
    let mut dims = Vec::new();
    for n in lo..=hi {
        let mut blocks = Vec::new();
        let mut off = 0;
        for p in c.degrees() {
            let (a, b) = (c.dim(p), d.dim(n - p));
            if a * b > 0 {
                blocks.push((p, off, a, b));
                off += a * b;
            }
        }
        dims.push(off);
        layout.blocks.push(blocks);
    }
    let mut diffs = Vec::new();
    for n in lo..hi {
        let mut m = Mat::zeros(dims[(n + 1 - lo) as usize], dims[(n - lo) as usize]);
        for &(p, off, a, b) in &layout.blocks[(n - lo) as usize] {
            let dc = c.d_at(p);
            let dd = d.d_at(n - p);
            let s = sign(p as i64);
            for i in 0..a {
                for j in 0..b {
                    let col = off + i * b + j;
                    for r in 0..dc.rows {
                        let v = dc.get(r, i);
                        if !v.is_zero() {
                            let row = layout.index(n + 1, p + 1, r, j).unwrap();
                            m.add_at(row, col, v);
                        }
                    }
                    for r in 0..dd.rows {
                        let v = dd.get(r, j);
                        if !v.is_zero() {
                            let row = layout.index(n + 1, p, i, r).unwrap();
                            m.add_at(row, col, &(&s * v));
                        }
                    }
                }
            }
        }
        diffs.push(m);
    }
    let cx = Complex::new(lo, dims, diffs).expect("tensor complex squares to zero");
    (cx, layout)
}

#[derive(Clone, Debug)]
pub struct TensorLayout {
    pub lo: i32,
    pub blocks: Vec<Vec<(i32, usize, usize, usize)>>,
}

impl TensorLayout {
    pub fn index(&self, n: i32, p: i32, i: usize, j: usize) -> Option<usize> {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.blocks.len() {
            return None;
        }
        self.blocks[k as usize]
            .iter()
            .find(|b| b.0 == p)
            .map(|&(_, off, _, b)| off + i * b + j)
    }
}

/// Double complex with commuting differentials; `(l, k)` has total degree `l + k`.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    pub l_lo: i32,
    pub k_lo: i32,
    /// `dims[l][k]`.
    pub dims: Vec<Vec<usize>>,
    /// `delta[l][k]`: `(l, k) -> (l+1, k)`.
    pub delta: Vec<Vec<Mat>>,
    /// `vert[l][k]`: `(l, k) -> (l, k+1)`.
    pub vert: Vec<Vec<Mat>>,
}

impl Bicomplex {
    fn dim(&self, l: i32, k: i32) -> usize {
        let (a, b) = (l - self.l_lo, k - self.k_lo);
        if a < 0 || b < 0 || a as usize >= self.dims.len() || b as usize >= self.dims[0].len() {
            0
        } else {
            self.dims[a as usize][b as usize]
        }
    }

    fn get(&self, which: &[Vec<Mat>], l: i32, k: i32, rows: usize, cols: usize) -> Mat {
        let (a, b) = (l - self.l_lo, k - self.k_lo);
        if a < 0 || b < 0 || a as usize >= which.len() || b as usize >= which[a as usize].len() {
            return Mat::zeros(rows, cols);
        }
        which[a as usize][b as usize].clone()
    }

    /// Total complex with `d̃ = δ + (−1)^l d`.
    pub fn totalize(&self) -> Result<Complex> {
        let nl = self.dims.len() as i32;
        let nk = self.dims.first().map_or(0, |v| v.len()) as i32;
        let lo = self.l_lo + self.k_lo;
        let hi = self.l_lo + nl - 1 + self.k_lo + nk - 1;
        let mut layout: Vec<Vec<(i32, usize)>> = Vec::new();
        let mut dims = Vec::new();
        for n in lo..=hi {
            let mut off = 0;
            let mut v = Vec::new();
            for l in self.l_lo..self.l_lo + nl {
                let k = n - l;
                let dm = self.dim(l, k);
                if dm > 0 {
                    v.push((l, off));
                    off += dm;
                }
            }
            dims.push(off);
            layout.push(v);
        }
        let mut diffs = Vec::new();
        for n in lo..hi {
            let mut m = Mat::zeros(dims[(n + 1 - lo) as usize], dims[(n - lo) as usize]);
            for &(l, off) in &layout[(n - lo) as usize] {
                let k = n - l;
                let cols = self.dim(l, k);
                let tgt = &layout[(n + 1 - lo) as usize];
                if let Some(&(_, o2)) = tgt.iter().find(|x| x.0 == l + 1) {
                    let rows = self.dim(l + 1, k);
                    m.paste(o2, off, &self.get(&self.delta, l, k, rows, cols));
                }
                if let Some(&(_, o2)) = tgt.iter().find(|x| x.0 == l) {
                    let rows = self.dim(l, k + 1);
                    let v = self.get(&self.vert, l, k, rows, cols).scale(&sign(l as i64));
                    m.paste(o2, off, &v);
                }
            }
            diffs.push(m);
        }
        Complex::new(lo, dims, diffs)
    }
}

/// Solves `f = d h + h d` for a degree-0 map `f: C → D`.
pub fn null_homotopy(f: &ComplexMap, c: &Complex, d: &Complex) -> Option<Vec<Mat>> {
    // unknowns: h_n : C^n -> D^{n-1}
    let mut offs = BTreeMap::new();
    let mut total = 0;
    for n in c.degrees() {
        let sz = d.dim(n - 1) * c.dim(n);
        offs.insert(n, total);
        total += sz;
    }
    let hidx = |n: i32, i: usize, j: usize| -> Option<usize> {
        let cols = c.dim(n);
        if d.dim(n - 1) == 0 || cols == 0 {
            return None;
        }
        offs.get(&n).map(|o| o + i * cols + j)
    };
    let mut sys = SparseSystem::new(total);
    for n in c.degrees() {
        let target = f.at(c, d, n);
        let dd = d.d_at(n - 1);
        let dc = c.d_at(n);
        for a in 0..d.dim(n) {
            for b in 0..c.dim(n) {
                let mut row: BTreeMap<usize, Q> = BTreeMap::new();
                // (d h_n)_{ab} = Σ_t dd[a,t] h_n[t,b]
                for t in 0..d.dim(n - 1) {
                    let v = dd.get(a, t);
                    if !v.is_zero() {
                        if let Some(k) = hidx(n, t, b) {
                            *row.entry(k).or_insert_with(Q::zero) += v;
                        }
                    }
                }
                // (h_{n+1} dc)_{ab} = Σ_t h_{n+1}[a,t] dc[t,b]
                for t in 0..c.dim(n + 1) {
                    let v = dc.get(t, b);
                    if !v.is_zero() {
                        if let Some(k) = hidx(n + 1, a, t) {
                            *row.entry(k).or_insert_with(Q::zero) += v;
                        }
                    }
                }
                sys.push(row, target.get(a, b).clone());
            }
        }
    }
    let x = sys.solve()?;
    Some(
        c.degrees()
            .map(|n| {
                let mut h = Mat::zeros(d.dim(n - 1), c.dim(n));
                for i in 0..h.rows {
                    for j in 0..h.cols {
                        if let Some(k) = hidx(n, i, j) {
                            h.set(i, j, x[k].clone());
                        }
                    }
                }
                h
            })
            .collect(),
    )
}

/// `C ≅ H(C) ⊕ K` with `K` contractible, certified by a null-homotopy of the
/// complementary idempotent.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub inclusion: Vec<Mat>,
    pub projection: Vec<Mat>,
    pub homotopy: Vec<Mat>,
}

pub fn split_off_homology(c: &Complex) -> Result<Splitting> {
    let hs: Vec<Homology> = c.degrees().map(|n| c.homology(n)).collect();
    let idem = ComplexMap::from_fn(c, c, 0, |n| {
        let h = &hs[(n - c.lo) as usize];
        Mat::identity(c.dim(n)).sub(&h.reps.mul(&h.proj))
    });
    if !idem.is_chain_map(c, c) {
        return Err(Error::Invariant("homology projector is not a chain map".into()));
    }
    let homotopy = null_homotopy(&idem, c, c)
        .ok_or_else(|| Error::Invariant("complement is not contractible".into()))?;
    Ok(Splitting {
        inclusion: hs.iter().map(|h| h.reps.clone()).collect(),
        projection: hs.iter().map(|h| h.proj.clone()).collect(),
        homotopy,
    })
}

/// Matrix of `x ↦ (−1)^e x`.
pub fn signed_identity(n: usize, e: i64) -> Mat {
    Mat::scalar(n, &sign(e))
}

pub fn one_dim(c: Q) -> Mat {
    Mat::scalar(1, &c)
}

pub fn unit() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn two_term(a: i64) -> Complex {
        Complex::new(-1, vec![1, 1], vec![Mat::from_i64(&[&[a]])]).unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        let d = Mat::from_i64(&[&[1]]);
        assert!(Complex::new(0, vec![1, 1, 1], vec![d.clone(), d]).is_err());
    }

    #[test]
    fn homology_of_zero_and_iso() {
        assert_eq!(two_term(0).betti(-1), 1);
        assert_eq!(two_term(0).betti(0), 1);
        assert_eq!(two_term(3).betti(-1), 0);
        assert_eq!(two_term(3).betti(0), 0);
        assert_eq!(Complex::zero().betti(5), 0);
    }

    #[test]
    fn hom_into_one_term_has_koszul_sign() {
        // Hom([A -c-> A] , A[0]) in degree 0 -> 1 is −(−1)^0 (∘ d) = −c
        let (h, _) = hom_complex(&two_term(5), &Complex::concentrated(0, 1));
        assert_eq!(h.lo, 0);
        assert_eq!(h.d_at(0), Mat::from_i64(&[&[-5]]));
    }

    #[test]
    fn tensor_with_unit_is_copy() {
        let c = two_term(2);
        let (t, _) = tensor_complex(&c, &Complex::concentrated(0, 1));
        assert_eq!(t, c);
    }

    #[test]
    fn null_homotopy_of_exact_identity() {
        let c = two_term(2);
        let id = ComplexMap::identity(&c);
        let h = null_homotopy(&id, &c, &c).unwrap();
        assert_eq!(h[1], Mat::from_rows(vec![vec![crate::rational::qr(1, 2)]]));
        let c0 = two_term(0);
        assert!(null_homotopy(&ComplexMap::identity(&c0), &c0, &c0).is_none());
    }

    #[test]
    fn homology_projection_kills_boundaries() {
        let d0 = Mat::from_i64(&[&[1, 0], &[0, 0]]);
        let d1 = Mat::from_i64(&[&[0, 1]]);
        let c = Complex::new(0, vec![2, 2, 1], vec![d0.clone(), d1]).unwrap();
        let h = c.homology(1);
        assert_eq!(h.dim, 0);
        let h0 = c.homology(0);
        assert_eq!(h0.dim, 1);
        assert_eq!(h0.proj.mul(&h0.reps), Mat::identity(1));
        let _ = q(0);
    }

    #[test]
    fn one_row_bicomplex_totalizes_to_row() {
        let b = Bicomplex {
            l_lo: 0,
            k_lo: 0,
            dims: vec![vec![1], vec![1]],
            delta: vec![vec![Mat::from_i64(&[&[3]])]],
            vert: vec![vec![], vec![]],
        };
        let t = b.totalize().unwrap();
        assert_eq!(t.d_at(0), Mat::from_i64(&[&[3]]));
    }
}
