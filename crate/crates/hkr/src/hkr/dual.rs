//! The sign by which the dual HKR comparison acts on `Λ^i I[i]`, computed in
//! the double complex `N = (L̃, −δ) ⊗_B Q` over `A = Q`.
//!
//! `N_{p,q} = Λ^p I ⊗ Λ^q B` (homological bidegree), `Λ^q B = (Λ^q I, Λ^{q−1} I)`.
//! `R ⊂ N` is the part with second factor in `Λ^q I`.

use num_traits::{One, Zero};

use crate::chain::Complex;
use crate::error::{Error, Result};
use crate::exterior::{merge, shuffle_w, subset_index, subsets, Ext, Idx};
use crate::linalg::Mat;
use crate::rational::{binom, q, sign, sign_i, Q};

/// Label of `Λ^q B`: `(true, S)` for `(ȳ_S, 0)`, `(false, T)` for `(0, ȳ_T)`.
type BLabel = (bool, Idx);

fn b_labels(r: usize, qd: usize) -> Vec<BLabel> {
    let mut v: Vec<BLabel> = subsets(r, qd).into_iter().map(|s| (true, s)).collect();
    if qd > 0 {
        v.extend(subsets(r, qd - 1).into_iter().map(|s| (false, s)));
    }
    v
}

/// Coordinates of the total degree `n` of `N`.
#[derive(Clone, Debug)]
pub struct NLayout {
    pub r: usize,
    /// Per `n`: blocks `(p, offset)`, `q = n − p`.
    pub blocks: Vec<Vec<(usize, usize)>>,
    pub dims: Vec<usize>,
}

impl NLayout {
    pub fn new(r: usize) -> NLayout {
        let mut blocks = Vec::new();
        let mut dims = Vec::new();
        for n in 0..=2 * r {
            let mut off = 0;
            let mut bl = Vec::new();
            for p in n.saturating_sub(r)..=n.min(r) {
                bl.push((p, off));
                off += subsets(r, p).len() * b_labels(r, n - p).len();
            }
            blocks.push(bl);
            dims.push(off);
        }
        NLayout { r, blocks, dims }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn index(&self, p: usize, qd: usize, a: &[usize], b: &BLabel) -> usize {
        let r = self.r;
        let n = p + qd;
        let off = self.blocks[n].iter().find(|x| x.0 == p).expect("bidegree in range").1;
        let ai = subset_index(r, p)[a];
        let labs = b_labels(r, qd);
        let bi = labs.iter().position(|x| x == b).expect("label");
        off + ai * labs.len() + bi
    }

    /// All `(p, q, a, b)` in total degree `n`, in coordinate order.
    pub fn basis(&self, n: usize) -> Vec<(usize, usize, Idx, BLabel)> {
        let mut out = Vec::new();
        for &(p, _) in &self.blocks[n] {
            let qd = n - p;
            for a in subsets(self.r, p) {
                for b in b_labels(self.r, qd) {
                    out.push((p, qd, a.clone(), b));
                }
            }
        }
        out
    }

    /// Coordinates of `R_n`.
    pub fn r_indices(&self, n: usize) -> Vec<usize> {
        self.basis(n)
            .iter()
            .enumerate()
            .filter(|(_, x)| x.3 .0)
            .map(|(k, _)| k)
            .collect()
    }
}

/// `s_n = s' + (−1)^p s''` from `N_n` to `N_{n−1}`.
pub fn s_matrix(lay: &NLayout, n: usize) -> Mat {
    let r = lay.r;
    let mut m = Mat::zeros(if n == 0 { 0 } else { lay.dim(n - 1) }, lay.dim(n));
    if n == 0 {
        return m;
    }
    for (col, (p, qd, a, b)) in lay.basis(n).into_iter().enumerate() {
        let (is_i, t) = b;
        if is_i {
            continue;
        }
        // s': a ⊗ (0, j) ↦ Σ a' ⊗ (v ∧ j, 0) over −p W_{p−1,1}(a) = Σ a' ⊗ v
        if p > 0 {
            let x = Ext::monomial(r, &a, Q::one()).unwrap();
            let w = shuffle_w(p - 1, 1, &x).unwrap();
            for ((a1, v), c) in &w.terms {
                if let Some((sg, vj)) = merge(v, &t) {
                    let row = lay.index(p - 1, qd, a1, &(true, vj));
                    m.add_at(row, col, &(c * q(-(p as i64) * sg)));
                }
            }
        }
        // (−1)^p s'': a ⊗ (i, j) ↦ −(r − q + 1) a ⊗ (j, 0)
        let row = lay.index(p, qd - 1, &a, &(true, t.clone()));
        m.add_at(row, col, &(q(-((r - qd + 1) as i64)) * sign(p as i64)));
    }
    m
}

/// `N` as a cochain complex, homological degree `n` placed in degree `−n`.
pub fn n_complex(lay: &NLayout) -> Result<Complex> {
    let r = lay.r;
    let dims: Vec<usize> = (0..=2 * r).rev().map(|n| lay.dim(n)).collect();
    let d = (1..=2 * r).rev().map(|n| s_matrix(lay, n)).collect();
    Complex::new(-(2 * r as i32), dims, d)
}

/// `π_{p,q}: Λ^p I ⊗ Λ^q I → Λ^{p+q−r} I ⊗ Λ^r I`, `(id ⊗ ∧)(W_{p+q−r, r−q} ⊗ id)`.
fn pi_pq(r: usize, p: usize, qd: usize, a: &[usize], b: &[usize]) -> Vec<(Idx, Q)> {
    let x = Ext::monomial(r, a, Q::one()).unwrap();
    let w = shuffle_w(p + qd - r, r - qd, &x).unwrap();
    let mut out = Vec::new();
    for ((a1, a2), c) in &w.terms {
        if let Some((sg, _)) = merge(a2, b) {
            out.push((a1.clone(), c * q(sg)));
        }
    }
    out
}

pub fn epsilon(r: usize, n: usize, p: usize) -> i64 {
    let t = |k: usize| ((k + 1) * (k + 2) / 2) as i64;
    sign_i(t(p) - t(n - r))
}

/// The projector `π_n = Σ_p ε_{n,p} C(p, n−r) π_{p,n−p}` on `N_n` (zero off `R_n`).
pub fn pi_matrix(lay: &NLayout, n: usize) -> Mat {
    let r = lay.r;
    let top: Idx = (0..r).collect();
    let mut m = Mat::zeros(lay.dim(n), lay.dim(n));
    for (col, (p, qd, a, (is_i, b))) in lay.basis(n).into_iter().enumerate() {
        if !is_i || p < n - r {
            continue;
        }
        let coef = q(epsilon(r, n, p)) * binom(p, n - r);
        for (a1, c) in pi_pq(r, p, qd, &a, &b) {
            let row = lay.index(n - r, r, &a1, &(true, top.clone()));
            m.add_at(row, col, &(&coef * c));
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualHkrSign {
    pub r: usize,
    /// Sign found by representative chasing, per `i = 0..r`.
    pub computed: Vec<i64>,
    /// `(−1)^{(r−i)(r−i−1)/2}`.
    pub expected: Vec<i64>,
    pub s_squared_zero: bool,
    /// `ker s_n = R_n` for `r ≤ n ≤ 2r`.
    pub claim_kernel: bool,
    /// `ker π_n = im s_{n+1}` inside `R_n` for `r ≤ n ≤ 2r`.
    pub claim_projector: bool,
    /// `π_{r,n−r} = (−1)^{n(n−r)} / C(r, n−r)` times the swap.
    pub pi_restriction: bool,
}

impl DualHkrSign {
    pub fn all(&self) -> bool {
        self.computed == self.expected
            && self.s_squared_zero
            && self.claim_kernel
            && self.claim_projector
            && self.pi_restriction
    }
}

pub fn expected_sign(r: usize, i: usize) -> i64 {
    let k = (r - i) as i64;
    sign_i(k * (k - 1) / 2)
}

pub fn dual_hkr_sign(r: usize) -> Result<DualHkrSign> {
    if r == 0 || r > 4 {
        return Err(Error::Unsupported("the dual HKR sign is computed for 1 ≤ r ≤ 4".into()));
    }
    let lay = NLayout::new(r);
    let s_squared_zero = n_complex(&lay).is_ok();
    let top: Idx = (0..r).collect();
    let s = |n: usize| -> Mat {
        if n > 2 * r {
            Mat::zeros(lay.dim(n - 1), 0)
        } else {
            s_matrix(&lay, n)
        }
    };
    let mut claim_kernel = true;
    let mut claim_projector = true;
    let mut pi_restriction = true;
    let mut computed = Vec::new();
    for n in r..=2 * r {
        let rn = lay.r_indices(n);
        let sn = s(n);
        let ker_dim = lay.dim(n) - sn.rank();
        claim_kernel &= sn.select_cols(&rn).is_zero() && ker_dim == rn.len();
        let pn = pi_matrix(&lay, n);
        let s_next = s(n + 1);
        let pr = pn.select_cols(&rn);
        claim_projector &= pn.mul(&s_next).is_zero() && s_next.rank() == rn.len() - pr.rank();
        let i = n - r;
        let w = sign_i((n * (n - r)) as i64);
        for x in subsets(r, i) {
            let src = lay.index(r, i, &top, &(true, x.clone()));
            let dst = lay.index(i, r, &x, &(true, top.clone()));
            // π_n carries ε_{n,r} C(r, i) on this block
            let want = q(w * epsilon(r, n, r));
            let col = pn.col(src);
            let ok = col.iter().enumerate().all(|(k, v)| if k == dst { *v == want } else { v.is_zero() });
            pi_restriction &= ok;
        }
        computed.push(chase_sign(&lay, r, i, &s_next)?);
    }
    Ok(DualHkrSign {
        r,
        computed,
        expected: (0..=r).map(|i| expected_sign(r, i)).collect(),
        s_squared_zero,
        claim_kernel,
        claim_projector,
        pi_restriction,
    })
}

/// The scalar `c` with `α_i(x) − c β_i(x) ∈ im s_{n+1}` for every `x`, solved
/// directly from the boundaries; `α_i(x) = (−1)^r x⊗θ`, `β_i(x) = (−1)^r θ⊗x`.
fn chase_sign(lay: &NLayout, r: usize, i: usize, s_next: &Mat) -> Result<i64> {
    let n = r + i;
    let top: Idx = (0..r).collect();
    let sr = sign(r as i64);
    let mut found: Option<Q> = None;
    for x in subsets(r, i) {
        let mut alpha = vec![Q::zero(); lay.dim(n)];
        alpha[lay.index(i, r, &x, &(true, top.clone()))] = sr.clone();
        let mut beta = vec![Q::zero(); lay.dim(n)];
        beta[lay.index(r, i, &top, &(true, x.clone()))] = sr.clone();
        let sys = s_next.hstack(&Mat::from_cols(lay.dim(n), &[beta]));
        let sol = sys
            .solve_vec(&alpha)
            .ok_or_else(|| Error::Invariant(format!("α_{i} is not homologous to a multiple of β_{i}")))?;
        let c = sol.last().unwrap().clone();
        // c is determined: β_i(x) is not a boundary
        if s_next.solve_vec(&sys.col(sys.cols - 1)).is_some() {
            return Err(Error::Invariant(format!("β_{i} is a boundary")));
        }
        match &found {
            None => found = Some(c),
            Some(c0) if *c0 == c => {}
            Some(_) => return Err(Error::Invariant("sign depends on the basis vector".into())),
        }
    }
    let c = found.unwrap();
    if c == Q::one() {
        Ok(1)
    } else if c == -Q::one() {
        Ok(-1)
    } else {
        Err(Error::Invariant(format!("comparison scalar {c} is not a sign")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_sign_values() {
        assert_eq!((0..=1).map(|i| expected_sign(1, i)).collect::<Vec<_>>(), [1, 1]);
        assert_eq!((0..=2).map(|i| expected_sign(2, i)).collect::<Vec<_>>(), [-1, 1, 1]);
    }

    #[test]
    fn chased_signs_match() {
        for r in 1..=3 {
            let d = dual_hkr_sign(r).unwrap();
            assert!(d.all(), "{d:?}");
        }
    }
}
