//! The Arinkin–Căldăraru resolution `K` of `A` over `B`, the comparison
//! `ζ: K → P`, a lift `γ_K: L → K` of the identity of `A`, and the resulting
//! comparison of the two HKR maps.
//!
//! `⊗^p_B M ≅ I^{⊗(p+1)} ⊕ I^{⊗p}`; elements are pairs `(i, j)` of tensors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::koszul::{hkr_matrix, j_part_module, koszul_l, l_augmentation, l_module};
use super::model::LocalModel;
use crate::ak::{a_complex, augmentation_p, build_p};
use crate::chain::{Complex, ComplexMap};
use crate::exterior::{sort_sign, subsets, Ext, Idx};
use crate::extension::{BElem, SplitElem};
use crate::linalg::Mat;
use crate::module::{realize_map, Elem, FreeMod};
use crate::poly::Poly;
use crate::rational::{q, sign_i, Q};

/// Scalar in `ν_{−p}(i, j) = (c_p · j, 0)`; `c_p = p` makes `ζ` a chain map.
pub fn nu_scale(p: usize) -> Q {
    q(p as i64)
}

/// All length-`n` tuples over `0..r`, lexicographic.
pub fn tuples(r: usize, n: usize) -> Vec<Idx> {
    let mut out: Vec<Idx> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..r).map(move |k| {
                    let mut u = t.clone();
                    u.push(k);
                    u
                })
            })
            .collect();
    }
    out
}

fn tuple_index(r: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &k| acc * r + k)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KElem {
    pub p: usize,
    pub i: BTreeMap<Idx, Poly>,
    pub j: BTreeMap<Idx, Poly>,
}

fn acc(map: &mut BTreeMap<Idx, Poly>, k: Idx, c: Poly) {
    if c.is_zero() {
        return;
    }
    let sum = match map.get(&k) {
        Some(v) => v + &c,
        None => c,
    };
    if sum.is_zero() {
        map.remove(&k);
    } else {
        map.insert(k, sum);
    }
}

impl KElem {
    pub fn zero(p: usize) -> KElem {
        KElem {
            p,
            i: BTreeMap::new(),
            j: BTreeMap::new(),
        }
    }
}

pub fn k_module(model: &LocalModel, p: usize) -> FreeMod {
    let r = model.r;
    let w: Vec<u32> = std::iter::repeat_n(p as u32 + 1, r.pow(p as u32 + 1))
        .chain(std::iter::repeat_n(p as u32, r.pow(p as u32)))
        .collect();
    FreeMod::new(model.m, model.bound, w)
}

pub fn k_to_elem(model: &LocalModel, x: &KElem) -> Elem {
    let r = model.r;
    let ni = r.pow(x.p as u32 + 1);
    let mut v = vec![Poly::zero(model.m); ni + r.pow(x.p as u32)];
    for (t, c) in &x.i {
        v[tuple_index(r, t)] = c.clone();
    }
    for (t, c) in &x.j {
        v[ni + tuple_index(r, t)] = c.clone();
    }
    v
}

pub fn k_basis(model: &LocalModel, p: usize, label: usize, e: &[u8]) -> KElem {
    let r = model.r;
    let ni = r.pow(p as u32 + 1);
    let mono = Poly::monomial(e.to_vec(), Q::one());
    let mut x = KElem::zero(p);
    if label < ni {
        x.i.insert(tuples(r, p + 1)[label].clone(), mono);
    } else {
        x.j.insert(tuples(r, p)[label - ni].clone(), mono);
    }
    x
}

/// `(a + i)·(i_1, j_1) = (a i_1 + i ⊗ j_1, a j_1)`.
pub fn k_act(b: &BElem, x: &KElem) -> KElem {
    let mut out = KElem::zero(x.p);
    for (t, c) in &x.i {
        acc(&mut out.i, t.clone(), &b.a * c);
    }
    for (t, c) in &x.j {
        acc(&mut out.j, t.clone(), &b.a * c);
        for (k, ck) in &b.i.terms {
            let mut u = k.clone();
            u.extend_from_slice(t);
            acc(&mut out.i, u, ck * c);
        }
    }
    out
}

pub fn nu(x: &KElem) -> KElem {
    let mut out = KElem::zero(x.p.saturating_sub(1));
    if x.p == 0 {
        return out;
    }
    let c = nu_scale(x.p);
    for (t, v) in &x.j {
        acc(&mut out.i, t.clone(), v.scale(&c));
    }
    out
}

/// `K` truncated to its realized part: terms `⊗^p_B M`, `p ≤ D`.
pub fn build_k(model: &LocalModel) -> Complex {
    let top = model.bound as usize;
    let mods: Vec<FreeMod> = (0..=top).rev().map(|p| k_module(model, p)).collect();
    let d = (1..=top)
        .rev()
        .map(|p| {
            realize_map(&k_module(model, p), &k_module(model, p - 1), |l, e| {
                k_to_elem(model, &nu(&k_basis(model, p, l, e)))
            })
        })
        .collect();
    Complex::new(-(top as i32), mods.iter().map(|m| m.dim()).collect(), d)
        .expect("ν squares to zero")
        .with_grades(mods.iter().map(|m| m.grades()).collect())
        .expect("ν preserves weight")
}

pub fn k_augmentation(model: &LocalModel, k: &Complex) -> ComplexMap {
    let a = a_complex(&model.ext);
    ComplexMap::from_fn(k, &a, 0, |n| {
        if n != 0 {
            return Mat::zeros(a.dim(n), k.dim(n));
        }
        realize_map(&k_module(model, 0), &model.a_module(), |l, e| {
            let x = k_basis(model, 0, l, e);
            vec![x.j.get(&vec![]).cloned().unwrap_or_else(|| Poly::zero(model.m))]
        })
    })
}

/// `𝔞_n` on a tensor with polynomial coefficients.
fn antisym(r: usize, n: usize, t: &BTreeMap<Idx, Poly>) -> Ext<Poly> {
    let mut out = Ext::zero(r, n);
    for (k, c) in t {
        if let Some((s, m)) = sort_sign(k) {
            out.add_term(m, c.scale(&q(s)));
        }
    }
    out
}

/// `ζ_{−p}(i, j) = (𝔞_{p+1}(i), 𝔞_p(j))`.
pub fn zeta_elem(model: &LocalModel, x: &KElem) -> SplitElem {
    let r = model.r;
    if x.p + 1 > r + 1 {
        return SplitElem::zero(r, x.p + 1);
    }
    SplitElem {
        k: x.p + 1,
        i: antisym(r, x.p + 1, &x.i),
        j: antisym(r, x.p, &x.j),
    }
}

pub fn zeta(model: &LocalModel, k: &Complex, p_cx: &Complex) -> ComplexMap {
    ComplexMap::from_fn(k, p_cx, 0, |n| {
        let p = (-n) as usize;
        realize_map(&k_module(model, p), &model.ext.module(p + 1), |l, e| {
            model.ext.to_elem(&zeta_elem(model, &k_basis(model, p, l, e)))
        })
    })
}

/// `t_S ∈ I^{⊗p}` with `ν(0, t_S) = γ_K(δ e_S)`: `t_S = (1/c_p) Σ_i (−1)^{i−1} ȳ_{s_i} ⊗ t_{S∖s_i}`.
pub fn gamma_k_generator(s: &[usize]) -> BTreeMap<Idx, Q> {
    if s.is_empty() {
        return BTreeMap::from([(vec![], Q::one())]);
    }
    let mut out: BTreeMap<Idx, Q> = BTreeMap::new();
    let w = Q::one() / nu_scale(s.len());
    for (pos, &k) in s.iter().enumerate() {
        let rest: Idx = s.iter().copied().filter(|&t| t != k).collect();
        for (t, c) in gamma_k_generator(&rest) {
            let mut u = vec![k];
            u.extend(t);
            *out.entry(u).or_insert_with(Q::zero) += c * q(sign_i(pos as i64)) * &w;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn gamma_k_elem(model: &LocalModel, s: &[usize]) -> KElem {
    let mut x = KElem::zero(s.len());
    for (t, c) in gamma_k_generator(s) {
        x.j.insert(t, Poly::constant(model.m, c));
    }
    x
}

/// `γ_K(c e_S) = c̄·(0, t_S)`, a `C`-linear lift of the identity of `A`.
pub fn gamma_k(model: &LocalModel, l: &Complex, k: &Complex) -> ComplexMap {
    let r = model.r;
    ComplexMap::from_fn(l, k, 0, |n| {
        let p = (-n) as usize;
        let sets = subsets(r, p);
        realize_map(&l_module(model, p), &k_module(model, p), |lab, e| {
            let c = model.psi(&Poly::monomial(e.clone(), Q::one()));
            k_to_elem(model, &k_act(&c, &gamma_k_elem(model, &sets[lab])))
        })
    })
}

/// `(⊕𝔞_p) ∘ (A ⊗ γ_K)` in degree `−p`.
pub fn hkr_ac_matrix(model: &LocalModel, p: usize) -> Mat {
    let r = model.r;
    let sets = subsets(r, p);
    let src = FreeMod::new(model.m, model.bound, vec![p as u32; sets.len()]);
    let tgt = j_part_module(model, p);
    let tsets = subsets(r, p);
    realize_map(&src, &tgt, |lab, e| {
        let c = model.psi(&Poly::monomial(e.clone(), Q::one()).extend_vars(model.c_vars()));
        let x = k_act(&c, &gamma_k_elem(model, &sets[lab]));
        let a = antisym(r, p, &x.j);
        tsets
            .iter()
            .map(|s| a.get(s).cloned().unwrap_or_else(|| Poly::zero(model.m)))
            .collect()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcCheck {
    pub k_resolves: bool,
    pub exact_sequences: bool,
    pub zeta_chain: bool,
    pub zeta_qis: bool,
    pub zeta_augmentation: bool,
    pub zeta_b_linear: bool,
    pub zeta_degree_zero_identity: bool,
    pub gamma_k_chain: bool,
    pub gamma_k_augmentation: bool,
    /// `(⊕𝔞) ∘ (A ⊗ γ_K)` equals `A ⊗ γ` in every degree.
    pub compare_hkr: bool,
}

impl AcCheck {
    pub fn all(&self) -> bool {
        self.k_resolves
            && self.exact_sequences
            && self.zeta_chain
            && self.zeta_qis
            && self.zeta_augmentation
            && self.zeta_b_linear
            && self.zeta_degree_zero_identity
            && self.gamma_k_chain
            && self.gamma_k_augmentation
            && self.compare_hkr
    }
}

pub fn ac_check(model: &LocalModel) -> AcCheck {
    let grades: Vec<u32> = (0..=model.bound).collect();
    let k = build_k(model);
    let a = a_complex(&model.ext);
    let aug_k = k_augmentation(model, &k);
    let k_resolves = aug_k.is_chain_map(&k, &a) && aug_k.is_quasi_iso_graded(&k, &a, &grades);
    let p = build_p(&model.ext);
    let z = zeta(model, &k, &p);
    let zeta_chain = z.is_chain_map(&k, &p);
    let zeta_qis = z.is_quasi_iso_graded(&k, &p, &grades);
    let aug_p = augmentation_p(&model.ext, &p);
    let zeta_augmentation = aug_p.compose(&z, &k, &p, &a) == aug_k;
    let zeta_degree_zero_identity = z.at(&k, &p, 0) == Mat::identity(k.dim(0));
    let zeta_b_linear = zeta_is_b_linear(model);
    let exact_sequences = (0..=model.bound as usize).all(|pp| exact_sequence(model, pp));
    let l = koszul_l(model);
    let gk = gamma_k(model, &l, &k);
    let gamma_k_chain = gk.is_chain_map(&l, &k);
    let gamma_k_augmentation = aug_k.compose(&gk, &l, &k, &a) == l_augmentation(model, &l);
    let compare_hkr = (0..=model.r).all(|pp| hkr_ac_matrix(model, pp) == hkr_matrix(model, pp));
    AcCheck {
        k_resolves,
        exact_sequences,
        zeta_chain,
        zeta_qis,
        zeta_augmentation,
        zeta_b_linear,
        zeta_degree_zero_identity,
        gamma_k_chain,
        gamma_k_augmentation,
        compare_hkr,
    }
}

fn zeta_is_b_linear(model: &LocalModel) -> bool {
    let ext = &model.ext;
    let bs: Vec<BElem> = ext.basis_elems(1).iter().map(|b| ext.split_as_b(b)).collect();
    (0..=model.r).all(|p| {
        let km = k_module(model, p);
        km.basis().iter().all(|(l, e)| {
            let x = k_basis(model, p, *l, e);
            let zx = zeta_elem(model, &x);
            bs.iter().all(|b| {
                let lhs = zeta_elem(model, &k_act(b, &x));
                ext.realize(&lhs) == ext.realize(&ext.act(b, &zx))
            })
        })
    })
}

/// `0 → I^{⊗(p+1)} → ⊗^p_B M → I^{⊗p} → 0` is an exact sequence of `B`-modules,
/// `B` acting on the quotient through `A`.
fn exact_sequence(model: &LocalModel, p: usize) -> bool {
    let r = model.r;
    let km = k_module(model, p);
    let ni = r.pow(p as u32 + 1);
    let sub: Vec<usize> = (0..km.dim()).filter(|&t| km.basis()[t].0 < ni).collect();
    let quo: Vec<usize> = (0..km.dim()).filter(|&t| km.basis()[t].0 >= ni).collect();
    if sub.len() + quo.len() != km.dim() {
        return false;
    }
    let ext = &model.ext;
    let bs: Vec<BElem> = ext.basis_elems(1).iter().map(|b| ext.split_as_b(b)).collect();
    bs.iter().all(|b| {
        let act = realize_map(&km, &km, |l, e| k_to_elem(model, &k_act(b, &k_basis(model, p, l, e))));
        // the submodule is stable
        let stable = act.select_cols(&sub).select_rows(&quo).is_zero();
        // on the quotient, b acts as its image in A
        let abar = BElem {
            i: Ext::zero(r, 1),
            a: b.a.clone(),
        };
        let act_a = realize_map(&km, &km, |l, e| k_to_elem(model, &k_act(&abar, &k_basis(model, p, l, e))));
        let through_a = act.select_cols(&quo).select_rows(&quo) == act_a.select_cols(&quo).select_rows(&quo);
        stable && through_a
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_are_lexicographic() {
        assert_eq!(tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0), vec![Vec::<usize>::new()]);
        for (n, t) in tuples(3, 2).iter().enumerate() {
            assert_eq!(tuple_index(3, t), n);
        }
    }

    #[test]
    fn gamma_k_generator_antisymmetrizes_to_the_wedge() {
        // 𝔞(t_S) = ȳ_S
        for s in [vec![0], vec![0, 1], vec![0, 1, 2]] {
            let t = gamma_k_generator(&s);
            let mut a: Ext<Q> = Ext::zero(3, s.len());
            for (k, c) in &t {
                let (sg, m) = sort_sign(k).unwrap();
                a.add_term(m, c * q(sg));
            }
            assert_eq!(a, Ext::monomial(3, &s, Q::one()).unwrap());
        }
    }

    #[test]
    fn ac_small_models() {
        for (m, r, d) in [(0, 1, 2), (1, 1, 2), (0, 2, 3), (1, 2, 2)] {
            let c = ac_check(&LocalModel::canonical(m, r, d).unwrap());
            assert!(c.all(), "(m, r, D) = ({m}, {r}, {d}): {c:?}");
        }
        let twisted = super::super::model::parse_model(r#"{"m":1,"r":2,"D":3,"chi":[["x"],["1"]]}"#).unwrap();
        let c = ac_check(&twisted);
        assert!(c.all(), "{c:?}");
    }
}
