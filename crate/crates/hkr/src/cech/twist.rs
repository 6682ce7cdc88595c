//! Twisted AK complexes on a nerve, morphisms `T` from one into the Čech
//! complex of another, and the comparison matrix `Δ` they induce on
//! `⊕ Λ^i I[i]`.
//!
//! Level `p` of a twisted complex is `Λ^{p+1}B = Λ^{p+1}I ⊕ Λ^p I`, glued from
//! chart `α` to chart `β` by `(i, j) ↦ g(i + 𝔠_{αβ}(j), g j)` where `g` is the
//! frame change of `I` and `𝔠_{αβ}` is written in the chart of `α`.
//! A component `S_{n,l,ᾱ}` of `T` maps level `n` to level `n + l` in the chart
//! of `α_0`.

use super::cochain::{ext_dim, hom_flat, l_cochain, HomCochain};
use super::nerve::{is_coboundary, is_cocycle, LocalSystem, Nerve};
use crate::ak::build_p;
use crate::chain::Complex;
use crate::error::{Error, Result};
use crate::exterior::subsets;
use crate::extension::Extension;
use crate::linalg::Mat;
use crate::module::{realize_map, FreeMod};
use crate::rational::{sign, Q};

/// `Λ^p I`, realized with the same truncation as the `j`-part of `Λ^{p+1}B`.
pub fn lam(ext: &Extension, p: usize) -> FreeMod {
    let w = if ext.weighted { p as u32 } else { 0 };
    FreeMod::new(ext.nvars, ext.bound, vec![w; subsets(ext.r, p).len()])
}

/// `[[1, c], [0, 1]]` on `Λ^{p+1}I ⊕ Λ^p I`.
fn unipotent(ni: usize, nj: usize, c: Option<&Mat>) -> Mat {
    let mut m = Mat::identity(ni + nj);
    if let Some(c) = c {
        m.paste(0, ni, c);
    }
    m
}

#[derive(Clone, Debug)]
pub struct TwistedAk {
    pub ext: Extension,
    /// Frame changes of `Λ^p I`, `p = 0..=r`.
    pub frames: Vec<LocalSystem>,
    /// `twist[p][e]: Λ^p I → Λ^{p+1} I`, `p < r`.
    pub twist: Vec<HomCochain>,
    /// `Λ^{p+1}B` with the twisted gluing, `p = 0..=r`.
    pub levels: Vec<LocalSystem>,
    pub p: Complex,
}

impl TwistedAk {
    /// Rejects twists failing the cocycle law or incompatible with `d̂`.
    pub fn new(nerve: &Nerve, ext: Extension, frames: Vec<LocalSystem>, twist: Vec<HomCochain>) -> Result<TwistedAk> {
        let r = ext.r;
        if frames.len() != r + 1 || twist.len() != r {
            return Err(Error::Structural(format!("need {} frames and {r} twists", r + 1)));
        }
        let mut levels = Vec::with_capacity(r + 1);
        for p in 0..=r {
            let ni = if p < r { lam(&ext, p + 1).dim() } else { 0 };
            let nj = lam(&ext, p).dim();
            if p < r
                && (twist[p].len() != nerve.count(1)
                    || twist[p].iter().any(|c| c.rows != ni || c.cols != nj))
            {
                return Err(Error::Structural(format!("twist at level {p} has the wrong shape")));
            }
            let trans = (0..nerve.count(1))
                .map(|e| {
                    let fi = if p < r { frames[p + 1].trans[e].clone() } else { Mat::zeros(0, 0) };
                    let frame = Mat::block_diag(&[fi, frames[p].trans[e].clone()]);
                    frame.mul(&unipotent(ni, nj, twist.get(p).map(|t| &t[e])))
                })
                .collect();
            let ls = LocalSystem::new(nerve, ni + nj, trans).map_err(|e| match e {
                Error::Invariant(m) => Error::Invariant(format!("twist at level {p} is not a cocycle: {m}")),
                other => other,
            })?;
            levels.push(ls);
        }
        let p = build_p(&ext);
        let ak = TwistedAk {
            ext,
            frames,
            twist,
            levels,
            p,
        };
        for p in 1..=r {
            let d = ak.d_hat(p);
            for e in 0..nerve.count(1) {
                if ak.levels[p - 1].trans[e].mul(&d) != d.mul(&ak.levels[p].trans[e]) {
                    return Err(Error::Invariant(format!("gluing at level {p} does not commute with d̂")));
                }
            }
        }
        Ok(ak)
    }

    /// Constant coefficients `A = Q`, `I = Q^r` with trivial frames.
    pub fn constant(nerve: &Nerve, r: usize, twist: Vec<HomCochain>) -> Result<TwistedAk> {
        let ext = Extension::new(r, 0, 0, false)?;
        let frames = (0..=r).map(|p| LocalSystem::constant(nerve, ext_dim(r, p))).collect();
        TwistedAk::new(nerve, ext, frames, twist)
    }

    /// Wedge-type twists `𝔠_p = c_p ∧ ·` from `I`-valued 1-cocycles.
    pub fn wedge(nerve: &Nerve, r: usize, c: &[Vec<Vec<Q>>]) -> Result<TwistedAk> {
        TwistedAk::constant(nerve, r, wedge_twists(r, c))
    }

    pub fn r(&self) -> usize {
        self.ext.r
    }

    pub fn dim(&self, p: usize) -> usize {
        self.levels[p].dim
    }

    /// `d̂` from level `p` to level `p − 1`.
    pub fn d_hat(&self, p: usize) -> Mat {
        self.p.d_at(-(p as i32))
    }

    /// Rows of the `j`-part `Λ^p I` inside level `p`.
    fn j_offset(&self, p: usize) -> usize {
        if p < self.r() {
            lam(&self.ext, p + 1).dim()
        } else {
            0
        }
    }

    pub fn j_proj(&self, p: usize) -> Mat {
        let off = self.j_offset(p);
        Mat::identity(self.dim(p)).block(off, 0, self.dim(p) - off, self.dim(p))
    }

    pub fn j_incl(&self, p: usize) -> Mat {
        self.j_proj(p).transpose()
    }

    /// `Hom(Λ^j I, Λ^i I)` as a local system.
    pub fn hom_system(&self, j: usize, i: usize) -> LocalSystem {
        self.frames[j].hom(&self.frames[i])
    }
}

pub fn wedge_twists(r: usize, c: &[Vec<Vec<Q>>]) -> Vec<HomCochain> {
    (0..r).map(|p| l_cochain(r, 1, p, &c[p])).collect()
}

/// `s[n][l][ᾱ]` for `n + l ≤ r`; missing simplices give empty cochains.
#[derive(Clone, Debug, PartialEq)]
pub struct TMorphism {
    pub s: Vec<Vec<HomCochain>>,
}

impl TMorphism {
    pub fn zero(nerve: &Nerve, src: &TwistedAk, tgt: &TwistedAk) -> TMorphism {
        let r = src.r();
        let s = (0..=r)
            .map(|n| {
                (0..=r - n)
                    .map(|l| vec![Mat::zeros(tgt.dim(n + l), src.dim(n)); nerve.count(l)])
                    .collect()
            })
            .collect();
        TMorphism { s }
    }

    /// `S_{n,0} = id`, everything else zero.
    pub fn inclusion(nerve: &Nerve, src: &TwistedAk, tgt: &TwistedAk) -> TMorphism {
        let mut t = TMorphism::zero(nerve, src, tgt);
        for n in 0..=src.r() {
            t.s[n][0] = vec![Mat::identity(src.dim(n)); nerve.count(0)];
        }
        t
    }

    fn get(&self, n: usize, l: usize, idx: usize) -> Option<&Mat> {
        self.s.get(n)?.get(l)?.get(idx)
    }
}

/// The first failing component of `d̃ ∘ T = T ∘ d̂`, where `d̃ = δ + (−1)^l d̂`.
pub fn chain_defect(nerve: &Nerve, src: &TwistedAk, tgt: &TwistedAk, t: &TMorphism) -> Option<String> {
    let r = src.r();
    for n in 0..=r {
        for l in 0..=nerve.depth() {
            if n + l == 0 || n + l > r + 1 {
                continue;
            }
            let p = n + l - 1;
            for (si, s) in nerve.simplices[l].iter().enumerate() {
                let mut lhs = Mat::zeros(tgt.dim(p), src.dim(n));
                if l >= 1 {
                    let back = nerve.position(&s[1..]).unwrap();
                    if let Some(x) = t.get(n, l - 1, back) {
                        let g_in = src.levels[n].between(nerve, s[0], s[1]);
                        let g_out = tgt.levels[p].between(nerve, s[1], s[0]);
                        lhs = lhs.add(&g_out.mul(x).mul(&g_in));
                    }
                    for i in 1..=l {
                        let face: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
                        if let Some(x) = t.get(n, l - 1, nerve.position(&face).unwrap()) {
                            lhs = lhs.add(&x.scale(&sign(i as i64)));
                        }
                    }
                }
                if n + l <= r {
                    if let Some(x) = t.get(n, l, si) {
                        lhs = lhs.add(&tgt.d_hat(n + l).mul(x).scale(&sign(l as i64)));
                    }
                }
                let mut rhs = Mat::zeros(tgt.dim(p), src.dim(n));
                if n >= 1 {
                    if let Some(x) = t.get(n - 1, l, si) {
                        rhs = x.mul(&src.d_hat(n));
                    }
                }
                if lhs != rhs {
                    return Some(format!("component from level {n} at Čech degree {l} on {s:?}"));
                }
            }
        }
    }
    None
}

/// The action of every realized basis element `b ∈ B` on `Λ^k B`.
fn b_actions(ext: &Extension, k: usize) -> Vec<Mat> {
    let m = ext.module(k);
    ext.basis_elems(1)
        .iter()
        .map(|b| {
            let b = ext.split_as_b(b);
            realize_map(&m, &m, |l, e| ext.to_elem(&ext.act(&b, &ext.basis(k, l, e))))
        })
        .collect()
}

/// Every component of `T` commutes with the `B`-action.
pub fn b_linear(src: &TwistedAk, t: &TMorphism) -> bool {
    let r = src.r();
    let acts: Vec<Vec<Mat>> = (0..=r).map(|p| b_actions(&src.ext, p + 1)).collect();
    (0..=r).all(|n| {
        (0..=r - n).all(|l| {
            t.s[n][l].iter().all(|x| {
                acts[n].iter().zip(&acts[n + l]).all(|(a_src, a_tgt)| x.mul(a_src) == a_tgt.mul(x))
            })
        })
    })
}

/// `T` and both gluings respect the augmentation to `A`.
pub fn augmentation_compatible(nerve: &Nerve, src: &TwistedAk, tgt: &TwistedAk, t: &TMorphism) -> bool {
    let ext = &src.ext;
    let aug = realize_map(&ext.module(1), &crate::ak::a_module(ext), |l, e| vec![ext.pi(&ext.basis(1, l, e))]);
    let glue_ok = |ak: &TwistedAk| ak.levels[0].trans.iter().all(|g| aug.mul(g) == aug);
    let vertices_ok = (0..nerve.count(0)).all(|v| t.s[0][0].get(v).is_some_and(|x| aug.mul(x) == aug));
    glue_ok(src) && glue_ok(tgt) && vertices_ok
}

/// `Δ_{i,j}` as a Hom-cochain of Čech degree `i − j`, for `j ≤ i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaMatrix {
    pub r: usize,
    pub entries: Vec<Vec<HomCochain>>,
}

impl DeltaMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &HomCochain {
        &self.entries[i][j]
    }
}

/// `Δ_{i,j,ᾱ} = pr_j ∘ S_{j,i−j,ᾱ} ∘ (0, ·)`: the reduction of `T` modulo `I`.
pub fn reduce(src: &TwistedAk, tgt: &TwistedAk, t: &TMorphism) -> DeltaMatrix {
    let r = src.r();
    let entries = (0..=r)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let (pr, inc) = (tgt.j_proj(i), src.j_incl(j));
                    t.s[j][i - j].iter().map(|x| pr.mul(x).mul(&inc)).collect()
                })
                .collect()
        })
        .collect();
    DeltaMatrix { r, entries }
}

/// Whether two Hom-cochains of degree `i − j` define the same class.
pub fn same_class(nerve: &Nerve, ak: &TwistedAk, i: usize, j: usize, f: &HomCochain, g: &HomCochain) -> bool {
    let diff: HomCochain = f.iter().zip(g).map(|(a, b)| a.sub(b)).collect();
    is_coboundary(nerve, &ak.hom_system(j, i), i - j, &hom_flat(&diff))
}

pub fn entry_is_cocycle(nerve: &Nerve, ak: &TwistedAk, i: usize, j: usize, f: &HomCochain) -> bool {
    is_cocycle(nerve, &ak.hom_system(j, i), i - j, &hom_flat(f))
}

/// Diagonal entries are identities and off-diagonal entries are null classes.
pub fn is_identity_class(nerve: &Nerve, ak: &TwistedAk, d: &DeltaMatrix) -> bool {
    (0..=d.r).all(|i| {
        (0..=i).all(|j| {
            let f = d.entry(i, j);
            if i == j {
                f.iter().all(|x| *x == Mat::identity(x.rows))
            } else {
                let zero: HomCochain = f.iter().map(|x| Mat::zeros(x.rows, x.cols)).collect();
                same_class(nerve, ak, i, j, f, &zero)
            }
        })
    })
}

/// Yoneda composite `x ∘ y` of two Δ matrices over a nerve with trivial frames.
pub fn compose(nerve: &Nerve, x: &DeltaMatrix, y: &DeltaMatrix) -> DeltaMatrix {
    let r = x.r;
    let entries = (0..=r)
        .map(|i| {
            (0..=i)
                .map(|k| {
                    let (rows, cols) = (ext_dim(r, i), ext_dim(r, k));
                    let mut acc: HomCochain = vec![Mat::zeros(rows, cols); nerve.count(i - k)];
                    for j in k..=i {
                        let prod = super::cochain::yoneda(nerve, (i - j, x.entry(i, j)), (j - k, y.entry(j, k)), rows, cols);
                        if prod.len() == acc.len() {
                            acc = acc.iter().zip(&prod).map(|(a, b)| a.add(b)).collect();
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    DeltaMatrix { r, entries }
}

/// Entrywise class equality.
pub fn same_matrix_class(nerve: &Nerve, ak: &TwistedAk, a: &DeltaMatrix, b: &DeltaMatrix) -> bool {
    (0..=a.r).all(|i| (0..=i).all(|j| same_class(nerve, ak, i, j, a.entry(i, j), b.entry(i, j))))
}

pub fn is_zero_cochain(f: &HomCochain) -> bool {
    f.iter().all(|x| x.is_zero())
}

#[cfg(test)]
mod tests {
    use super::super::cochain::{ext_system, hom_zero};
    use super::super::nerve::class_basis;
    use super::*;
    use crate::rational::q;

    #[test]
    fn zero_twists_give_the_inclusion() {
        let n = Nerve::circle();
        for r in 1..=3 {
            let ak = TwistedAk::constant(&n, r, (0..r).map(|p| hom_zero(&n, 1, ext_dim(r, p + 1), ext_dim(r, p))).collect()).unwrap();
            let t = TMorphism::inclusion(&n, &ak, &ak);
            assert_eq!(chain_defect(&n, &ak, &ak, &t), None);
            assert!(b_linear(&ak, &t) && augmentation_compatible(&n, &ak, &ak, &t));
            assert!(is_identity_class(&n, &ak, &reduce(&ak, &ak, &t)));
        }
    }

    #[test]
    fn non_cocycle_twist_is_rejected() {
        let n = Nerve::sphere();
        let mut c = vec![vec![q(0)]; n.count(1)];
        c[0] = vec![q(1)];
        let err = TwistedAk::wedge(&n, 1, &[c]).unwrap_err();
        assert!(matches!(err, Error::Invariant(_)), "{err}");
    }

    #[test]
    fn inclusion_fails_between_different_twists() {
        let n = Nerve::circle();
        let gen = class_basis(&n, &ext_system(&n, 1, 1), 1)[0].clone();
        let a = TwistedAk::wedge(&n, 1, &[gen]).unwrap();
        let b = TwistedAk::wedge(&n, 1, &[vec![vec![q(0)]; 3]]).unwrap();
        assert!(chain_defect(&n, &a, &b, &TMorphism::inclusion(&n, &a, &b)).is_some());
    }
}
