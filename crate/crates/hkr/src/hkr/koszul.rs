//! The Koszul resolution `L` of `A` over `C`, the chain map `γ: L → P`, and
//! the HKR matrices on `A ⊗_C L → A ⊗_C P`.

use num_traits::One;

use super::model::LocalModel;
use crate::ak::{a_complex, augmentation_p, build_p};
use crate::chain::{Complex, ComplexMap};
use crate::exterior::{subsets, Ext, Idx};
use crate::extension::SplitElem;
use crate::linalg::Mat;
use crate::module::{realize_map, FreeMod};
use crate::poly::{Exps, Poly};
use crate::rational::{q, sign_i, Q};

/// `L_{−p} = C ⊗ Λ^p Q^r`; generator `e_S` has weight `|S|`.
pub fn l_module(model: &LocalModel, p: usize) -> FreeMod {
    let n = subsets(model.r, p).len();
    FreeMod::new(model.c_vars(), model.bound, vec![p as u32; n])
}

/// `δ(c e_S) = Σ_i (−1)^{i−1} c y_{s_i} e_{S∖s_i}`.
pub fn koszul_l(model: &LocalModel) -> Complex {
    let r = model.r;
    let mods: Vec<FreeMod> = (0..=r).rev().map(|p| l_module(model, p)).collect();
    let d = (1..=r)
        .rev()
        .map(|p| {
            let src_sets = subsets(r, p);
            let tgt_sets = subsets(r, p - 1);
            realize_map(&l_module(model, p), &l_module(model, p - 1), |l, e| {
                let c = Poly::monomial(e.clone(), Q::one());
                let mut out = vec![Poly::zero(model.c_vars()); tgt_sets.len()];
                let s = &src_sets[l];
                for (pos, &k) in s.iter().enumerate() {
                    let rest: Idx = s.iter().copied().filter(|&t| t != k).collect();
                    let at = tgt_sets.iter().position(|t| *t == rest).unwrap();
                    let term = (&c * &model.y(k)).scale(&q(sign_i(pos as i64)));
                    out[at] = &out[at] + &term;
                }
                out
            })
        })
        .collect();
    let dims = mods.iter().map(|m| m.dim()).collect();
    Complex::new(-(r as i32), dims, d)
        .expect("Koszul differential squares to zero")
        .with_grades(mods.iter().map(|m| m.grades()).collect())
        .expect("δ preserves weight")
}

/// `L → A`, `c e_∅ ↦ c mod J`.
pub fn l_augmentation(model: &LocalModel, l: &Complex) -> ComplexMap {
    let a = a_complex(&model.ext);
    ComplexMap::from_fn(l, &a, 0, |n| {
        if n != 0 {
            return Mat::zeros(a.dim(n), l.dim(n));
        }
        realize_map(&model.c_module(), &model.a_module(), |_, e| {
            vec![reduce_mod_j(model, e)]
        })
    })
}

fn reduce_mod_j(model: &LocalModel, e: &Exps) -> Poly {
    if e[model.m..].iter().any(|&t| t > 0) {
        Poly::zero(model.m)
    } else {
        Poly::monomial(e[..model.m].to_vec(), Q::one())
    }
}

/// `1_B ∧ ȳ_S = (0, ȳ_S) ∈ Λ^{|S|+1}B`.
pub fn unit_wedge(model: &LocalModel, s: &[usize]) -> SplitElem {
    let mut x = SplitElem::zero(model.r, s.len() + 1);
    x.j.add_term(s.to_vec(), Poly::one(model.m));
    x
}

/// `γ_{−p}(c ⊗ e_S) = c̄ * (1_B ∧ ȳ_S)`.
pub fn gamma(model: &LocalModel, l: &Complex, p_cx: &Complex) -> ComplexMap {
    let r = model.r;
    ComplexMap::from_fn(l, p_cx, 0, |n| {
        let p = (-n) as usize;
        let sets = subsets(r, p);
        realize_map(&l_module(model, p), &model.ext.module(p + 1), |lab, e| {
            let c = model.psi(&Poly::monomial(e.clone(), Q::one()));
            let x = model.ext.act(&c, &unit_wedge(model, &sets[lab]));
            model.ext.to_elem(&x)
        })
    })
}

/// `A ⊗_C L`: zero differential, degree `−p` free on `e_S`, `|S| = p`.
pub fn a_tensor_l(model: &LocalModel) -> (Complex, Vec<FreeMod>) {
    let r = model.r;
    let mods: Vec<FreeMod> = (0..=r)
        .rev()
        .map(|p| FreeMod::new(model.m, model.bound, vec![p as u32; subsets(r, p).len()]))
        .collect();
    let dims: Vec<usize> = mods.iter().map(|m| m.dim()).collect();
    let d = dims.windows(2).map(|w| Mat::zeros(w[1], w[0])).collect();
    let cx = Complex::new(-(r as i32), dims, d)
        .unwrap()
        .with_grades(mods.iter().map(|m| m.grades()).collect())
        .unwrap();
    (cx, mods)
}

/// The `j`-part of `Λ^{p+1}B`, which is `A ⊗_C P^{−p} = Λ^p I`.
pub fn j_part_module(model: &LocalModel, p: usize) -> FreeMod {
    FreeMod::new(model.m, model.bound, vec![p as u32; subsets(model.r, p).len()])
}

pub fn j_part(model: &LocalModel, x: &SplitElem) -> Vec<Poly> {
    let sets = subsets(model.r, x.k - 1);
    sets.iter()
        .map(|s| x.j.get(s).cloned().unwrap_or_else(|| Poly::zero(model.m)))
        .collect()
}

/// `J·P^{−p}` is exactly the `i`-part, so `A ⊗_C P^{−p}` is the `j`-part.
pub fn tensor_quotient_is_j_part(model: &LocalModel, p: usize) -> bool {
    let ext = &model.ext;
    let src = ext.module(p + 1);
    let mut span = Mat::zeros(src.dim(), 0);
    for k in 0..model.r {
        let yk = model.psi(&model.y(k));
        let m = realize_map(&src, &src, |l, e| ext.to_elem(&ext.act(&yk, &ext.basis(p + 1, l, e))));
        span = span.hstack(&m);
    }
    let proj = realize_map(&src, &j_part_module(model, p), |l, e| j_part(model, &ext.basis(p + 1, l, e)));
    let jdim = j_part_module(model, p).dim();
    // J·P lies in the kernel of the projection and fills it
    proj.mul(&span).is_zero() && span.rank() + jdim == src.dim() && proj.rank() == jdim
}

/// `id ⊗ γ` in degree `−p`, from `A ⊗ Λ^p Q^r` to `Λ^p I`.
pub fn hkr_matrix(model: &LocalModel, p: usize) -> Mat {
    let sets = subsets(model.r, p);
    let src = FreeMod::new(model.m, model.bound, vec![p as u32; sets.len()]);
    realize_map(&src, &j_part_module(model, p), |lab, e| {
        let c = model.psi(&Poly::monomial(e.clone(), Q::one()).extend_vars(model.c_vars()));
        j_part(model, &model.ext.act(&c, &unit_wedge(model, &sets[lab])))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkrLocal {
    pub l_resolves: bool,
    pub gamma_chain: bool,
    pub gamma_qis: bool,
    pub gamma_augmentation: bool,
    pub tensor_quotient: bool,
    /// `id ⊗ γ` sends `e_S` to `ȳ_S` in every degree.
    pub gamma_is_identity: bool,
    /// `Γ(e_S ∧ e_T) = Γ(e_S) ∧ Γ(e_T)` on generators.
    pub multiplicative: bool,
    pub grades: Vec<u32>,
}

impl HkrLocal {
    pub fn all(&self) -> bool {
        self.l_resolves
            && self.gamma_chain
            && self.gamma_qis
            && self.gamma_augmentation
            && self.tensor_quotient
            && self.gamma_is_identity
            && self.multiplicative
    }
}

pub fn hkr_local(model: &LocalModel) -> HkrLocal {
    let r = model.r;
    let grades: Vec<u32> = (0..=model.bound).collect();
    let l = koszul_l(model);
    let a = a_complex(&model.ext);
    let aug_l = l_augmentation(model, &l);
    let l_resolves = aug_l.is_chain_map(&l, &a) && aug_l.is_quasi_iso_graded(&l, &a, &grades);
    let p = build_p(&model.ext);
    let g = gamma(model, &l, &p);
    let gamma_chain = g.is_chain_map(&l, &p);
    // γ is filtered by weight; its graded part being a quasi-isomorphism suffices
    let gamma_qis = g.is_quasi_iso_graded(&l, &p, &grades);
    let aug_p = augmentation_p(&model.ext, &p);
    let gamma_augmentation = aug_p.compose(&g, &l, &p, &a) == aug_l;
    let tensor_quotient = (0..=r).all(|k| tensor_quotient_is_j_part(model, k));
    let mats: Vec<Mat> = (0..=r).map(|k| hkr_matrix(model, k)).collect();
    let gamma_is_identity = mats.iter().all(|m| m.rows == m.cols && *m == Mat::identity(m.rows));
    let multiplicative = hkr_multiplicative(model);
    HkrLocal {
        l_resolves,
        gamma_chain,
        gamma_qis,
        gamma_augmentation,
        tensor_quotient,
        gamma_is_identity,
        multiplicative,
        grades,
    }
}

fn gamma_generator(model: &LocalModel, s: &[usize]) -> Ext<Poly> {
    let c = model.psi(&Poly::one(model.c_vars()));
    model.ext.act(&c, &unit_wedge(model, s)).j
}

fn hkr_multiplicative(model: &LocalModel) -> bool {
    let r = model.r;
    (0..=r).all(|p| {
        (0..=r - p).all(|k| {
            subsets(r, p).iter().all(|s| {
                subsets(r, k).iter().all(|t| {
                    let lhs = match crate::exterior::merge(s, t) {
                        Some((sg, u)) => gamma_generator(model, &u).scale(&q(sg)),
                        None => Ext::zero(r, p + k),
                    };
                    let rhs = crate::extension::wedge0(&gamma_generator(model, s), &gamma_generator(model, t));
                    lhs == rhs
                })
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_koszul_is_multiplication_by_y() {
        let model = LocalModel::canonical(0, 1, 2).unwrap();
        let l = koszul_l(&model);
        // C = Q[y]≤2; e_1 has weight 1 so L_{−1} = {e_1, y e_1}: e_1 ↦ y, y e_1 ↦ y²
        assert_eq!(l.d_at(-1), Mat::from_i64(&[&[0, 0], &[1, 0], &[0, 1]]));
    }

    #[test]
    fn degree_zero_gamma_is_the_class_map() {
        let model = LocalModel::canonical(1, 1, 2).unwrap();
        let l = koszul_l(&model);
        let p = build_p(&model.ext);
        let g = gamma(&model, &l, &p);
        // c ↦ c̄ ∈ B: the six monomials of degree ≤ 2 in x, y land on the basis of C/J²
        assert_eq!(g.at(&l, &p, 0).rank(), 5);
    }

    #[test]
    fn hkr_local_small_models() {
        for (m, r, d) in [(0, 1, 2), (1, 1, 3), (1, 2, 3), (0, 3, 3), (2, 2, 2)] {
            let h = hkr_local(&LocalModel::canonical(m, r, d).unwrap());
            assert!(h.all(), "(m, r, D) = ({m}, {r}, {d}): {h:?}");
        }
    }

    #[test]
    fn hkr_local_twisted_splitting() {
        let model = super::super::model::parse_model(r#"{"m":1,"r":2,"D":3,"chi":[["x"],["0"]]}"#).unwrap();
        let h = hkr_local(&model);
        assert!(h.all(), "{h:?}");
    }
}
