//! The quantized cycle class of the split local model, where `X` is cut out
//! transversally by the section `(y_1, …, y_r)` of the trivial bundle.
//!
//! The class is read off the composite `A ← (L, −δ) → (P, −d̂) → ⊕ Λ^i I[i]`
//! followed by the sign twist `ψ̃`.

use num_traits::{One, Zero};

use super::dual::dual_hkr_sign;
use super::koszul::{gamma, j_part, j_part_module, koszul_l, l_augmentation};
use super::model::LocalModel;
use crate::ak::{a_complex, build_p};
use crate::chain::{Complex, ComplexMap};
use crate::error::Result;
use crate::linalg::Mat;
use crate::module::{realize_map, FreeMod};
use crate::rational::{sign_i, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct CycleClassLocal {
    /// `q_0, …, q_r`.
    pub q: Vec<Q>,
    /// Sign by which `ψ̃` acts on `Λ^i I[i]`.
    pub twist: Vec<i64>,
    pub gamma_chain: bool,
    /// Before the twist, the degree-0 part of the composite is the inclusion of `A`.
    pub degree_zero_inclusion: bool,
    /// `H^{−i}(L) = 0` for `i > 0`, so the components into `Λ^i I[i]` vanish locally.
    pub higher_components_vanish: bool,
}

impl CycleClassLocal {
    pub fn is_one(&self) -> bool {
        self.q.first() == Some(&Q::one()) && self.q[1..].iter().all(|x| x.is_zero())
    }
}

/// `ψ̃` on `Λ^i I[i]`: the dual HKR sign times `(−1)^{r(r−i) + r(r+1)/2}`.
pub fn twist_signs(r: usize) -> Result<Vec<i64>> {
    let d = dual_hkr_sign(r)?;
    Ok((0..=r)
        .map(|i| {
            let e = (r * (r - i) + r * (r + 1) / 2) as i64;
            d.computed[i] * sign_i(e)
        })
        .collect())
}

pub fn cycle_class_local(model: &LocalModel) -> Result<CycleClassLocal> {
    let r = model.r;
    let l = koszul_l(model).negate_differential();
    let p = build_p(&model.ext).negate_differential();
    let g = gamma(model, &l, &p);
    let gamma_chain = g.is_chain_map(&l, &p);

    let mods: Vec<FreeMod> = (0..=r).rev().map(|i| j_part_module(model, i)).collect();
    let dims: Vec<usize> = mods.iter().map(|m| m.dim()).collect();
    let zero_d = dims.windows(2).map(|w| Mat::zeros(w[1], w[0])).collect();
    let target = Complex::new(-(r as i32), dims, zero_d)?;
    let proj = ComplexMap::from_fn(&p, &target, 0, |n| {
        let k = (-n) as usize;
        realize_map(&model.ext.module(k + 1), &j_part_module(model, k), |lab, e| {
            j_part(model, &model.ext.basis(k + 1, lab, e))
        })
    });
    let composite = proj.compose(&g, &l, &p, &target);

    let a = a_complex(&model.ext);
    let aug = l_augmentation(model, &l);
    let a0 = aug.induced(&l, &a, 0);
    let delta0 = composite.induced(&l, &target, 0).mul(&a0.inverse().expect("H^0(L) ≅ A"));
    let degree_zero_inclusion = delta0 == Mat::identity(delta0.rows);
    let higher_components_vanish = (1..=r).all(|i| l.betti(-(i as i32)) == 0);

    let twist = twist_signs(r)?;
    let mut qv = vec![Q::zero(); r + 1];
    // Δ_0 is a scalar multiple of the identity of A; read the scalar on 1
    qv[0] = delta0.get(0, 0).clone() * Q::from_integer(twist[0].into());
    Ok(CycleClassLocal {
        q: qv,
        twist,
        gamma_chain,
        degree_zero_inclusion,
        higher_components_vanish,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_class_is_one() {
        for (m, r, d) in [(0, 1, 2), (1, 1, 3), (1, 2, 3), (0, 3, 3)] {
            let c = cycle_class_local(&LocalModel::canonical(m, r, d).unwrap()).unwrap();
            assert!(c.is_one() && c.degree_zero_inclusion && c.gamma_chain, "{c:?}");
        }
    }

    #[test]
    fn twist_is_trivial_in_degree_zero() {
        for r in 1..=4 {
            assert_eq!(twist_signs(r).unwrap()[0], 1);
        }
    }
}
