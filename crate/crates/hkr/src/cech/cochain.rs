//! Exterior-algebra valued cochains with constant coefficients `I = Q^r`,
//! Hom-valued cochains, and the operators built from the cup product.
//!
//! A cochain of `Λ^k I` stores one coordinate vector per simplex in the
//! `subsets(r, k)` basis. A Hom-valued cochain stores one matrix per simplex.

use num_traits::Zero;

use super::nerve::{Cochain, LocalSystem, Nerve};
use crate::error::Result;
use crate::exterior::{subsets, translate, wedge_by, Ext, LinMap};
use crate::linalg::Mat;
use crate::rational::{binom, sign, to_i64, Q};

pub type HomCochain = Vec<Mat>;

pub fn ext_dim(r: usize, k: usize) -> usize {
    to_i64(&binom(r, k)).unwrap_or(0) as usize
}

pub fn ext_system(nerve: &Nerve, r: usize, k: usize) -> LocalSystem {
    LocalSystem::constant(nerve, ext_dim(r, k))
}

/// `Hom(Λ^j I, Λ^i I)` with constant coefficients.
pub fn hom_system(nerve: &Nerve, r: usize, j: usize, i: usize) -> LocalSystem {
    LocalSystem::constant(nerve, ext_dim(r, i) * ext_dim(r, j))
}

pub fn to_ext(r: usize, k: usize, v: &[Q]) -> Ext<Q> {
    let mut out = Ext::zero(r, k);
    for (s, c) in subsets(r, k).into_iter().zip(v) {
        if !c.is_zero() {
            out.add_term(s, c.clone());
        }
    }
    out
}

pub fn from_ext(x: &Ext<Q>) -> Vec<Q> {
    subsets(x.rank, x.deg)
        .iter()
        .map(|s| x.get(s).cloned().unwrap_or_else(Q::zero))
        .collect()
}

pub fn zero_cochain(nerve: &Nerve, p: usize, dim: usize) -> Cochain {
    vec![vec![Q::zero(); dim]; nerve.count(p)]
}

/// The constant 0-cochain `1 ∈ Λ^0 I`.
pub fn unit_cochain(nerve: &Nerve) -> Cochain {
    vec![vec![Q::from_integer(1.into())]; nerve.count(0)]
}

pub fn add(x: &Cochain, y: &Cochain) -> Cochain {
    x.iter().zip(y).map(|(a, b)| a.iter().zip(b).map(|(s, t)| s + t).collect()).collect()
}

pub fn scale(x: &Cochain, c: &Q) -> Cochain {
    x.iter().map(|a| a.iter().map(|s| s * c).collect()).collect()
}

pub fn sub(x: &Cochain, y: &Cochain) -> Cochain {
    add(x, &scale(y, &-Q::from_integer(1.into())))
}

/// `(x ∪ y)_{α_0..α_{p+q}} = x_{α_0..α_p} ∧ y_{α_p..α_{p+q}}`.
pub fn cup(nerve: &Nerve, r: usize, (p, k, x): (usize, usize, &Cochain), (q, l, y): (usize, usize, &Cochain)) -> Cochain {
    let n = ext_dim(r, k + l);
    let Some(level) = nerve.simplices.get(p + q) else {
        return Vec::new();
    };
    level
        .iter()
        .map(|s| {
            if k + l > r {
                return vec![Q::zero(); n];
            }
            let front = nerve.position(&s[..=p]).unwrap();
            let back = nerve.position(&s[p..]).unwrap();
            let a = to_ext(r, k, &x[front]);
            let b = to_ext(r, l, &y[back]);
            from_ext(&a.wedge(&b).expect("same rank"))
        })
        .collect()
}

/// `𝔩(v)` on `Λ^j I`: the Hom-cochain `α ↦ v_α ∧ ·`, for `v` of exterior degree `a`.
pub fn l_cochain(r: usize, a: usize, j: usize, v: &Cochain) -> HomCochain {
    v.iter().map(|x| wedge_by(&to_ext(r, a, x), j).mat).collect()
}

/// `𝔮(v)(η) = (−1)^{a·deg η} v ∪ η`, from `C^k(Λ^j I)` to `C^{k+a}(Λ^{j+a} I)`.
pub fn q_matrix(nerve: &Nerve, r: usize, a: usize, v: &Cochain, j: usize, k: usize) -> Mat {
    let (src, tgt) = (ext_dim(r, j), ext_dim(r, j + a));
    let rows = nerve.count(k + a) * tgt;
    let cols = nerve.count(k) * src;
    let mut m = Mat::zeros(rows, cols);
    let s = sign((a * k) as i64);
    for c in 0..cols {
        let mut eta = zero_cochain(nerve, k, src);
        eta[c / src][c % src] = Q::from_integer(1.into());
        let out = cup(nerve, r, (a, a, v), (k, j, &eta));
        for (si, val) in out.iter().enumerate() {
            for (t, x) in val.iter().enumerate() {
                if !x.is_zero() {
                    m.set(si * tgt + t, c, x * &s);
                }
            }
        }
    }
    m
}

/// Yoneda composite of `f` (Čech degree `a`) after `g` (degree `b`):
/// `(f * g)_{α_0..α_{a+b}} = (−1)^{ab} f_{α_0..α_a} ∘ g_{α_a..α_{a+b}}`.
pub fn yoneda(nerve: &Nerve, (a, f): (usize, &HomCochain), (b, g): (usize, &HomCochain), rows: usize, cols: usize) -> HomCochain {
    let s = sign((a * b) as i64);
    let Some(level) = nerve.simplices.get(a + b) else {
        return Vec::new();
    };
    level
        .iter()
        .map(|t| {
            let front = nerve.position(&t[..=a]).unwrap();
            let back = nerve.position(&t[a..]).unwrap();
            if f.is_empty() || g.is_empty() {
                return Mat::zeros(rows, cols);
            }
            f[front].mul(&g[back]).scale(&s)
        })
        .collect()
}

/// `𝔱^m` applied simplexwise to a cochain of maps `Λ^p → Λ^k`.
pub fn translate_cochain(r: usize, m: usize, p: usize, k: usize, f: &HomCochain) -> Result<HomCochain> {
    f.iter()
        .map(|x| Ok(translate(m, &LinMap::from_mat(r, p, k, x.clone())?)?.mat))
        .collect()
}

pub fn hom_flat(f: &HomCochain) -> Cochain {
    f.iter().map(|m| (0..m.rows).flat_map(|i| m.row(i).to_vec()).collect()).collect()
}

pub fn hom_add(f: &HomCochain, g: &HomCochain) -> HomCochain {
    f.iter().zip(g).map(|(a, b)| a.add(b)).collect()
}

pub fn hom_sub(f: &HomCochain, g: &HomCochain) -> HomCochain {
    f.iter().zip(g).map(|(a, b)| a.sub(b)).collect()
}

pub fn hom_scale(f: &HomCochain, c: &Q) -> HomCochain {
    f.iter().map(|a| a.scale(c)).collect()
}

pub fn hom_zero(nerve: &Nerve, deg: usize, rows: usize, cols: usize) -> HomCochain {
    vec![Mat::zeros(rows, cols); nerve.count(deg)]
}

#[cfg(test)]
mod tests {
    use super::super::nerve::{class_basis, coboundary, is_coboundary};
    use super::*;
    use crate::rational::q;

    fn ls1(n: &Nerve) -> LocalSystem {
        LocalSystem::constant(n, 1)
    }

    #[test]
    fn wedge_with_constant_zero_cochain_is_pointwise() {
        let n = Nerve::circle();
        let c: Cochain = vec![vec![q(3)]; 3];
        let x: Cochain = vec![vec![q(1), q(2)], vec![q(0), q(5)], vec![q(-1), q(1)]];
        let out = cup(&n, 2, (0, 0, &c), (1, 1, &x));
        assert_eq!(out, scale(&x, &q(3)));
    }

    #[test]
    fn leibniz_on_circle() {
        // δ(x ∪ y) = δx ∪ y + (−1)^p x ∪ δy for 0-cochains of Λ^1
        let n = Nerve::circle();
        let r = 2;
        let x: Cochain = vec![vec![q(1), q(0)], vec![q(2), q(-1)], vec![q(0), q(3)]];
        let y: Cochain = vec![vec![q(0), q(1)], vec![q(1), q(1)], vec![q(-2), q(0)]];
        let l1 = ext_system(&n, r, 1);
        let l2 = ext_system(&n, r, 2);
        let lhs = coboundary(&n, &l2, 0, &cup(&n, r, (0, 1, &x), (0, 1, &y)));
        let rhs = add(
            &cup(&n, r, (1, 1, &coboundary(&n, &l1, 0, &x)), (0, 1, &y)),
            &cup(&n, r, (0, 1, &x), (1, 1, &coboundary(&n, &l1, 0, &y))),
        );
        assert_eq!(lhs, rhs);
    }

    /// Front-face/back-face cup of scalar cochains, written out directly.
    fn scalar_cup(n: &Nerve, a: &Cochain, b: &Cochain) -> Cochain {
        n.simplices[2]
            .iter()
            .map(|t| {
                let f = n.position(&t[..2]).unwrap();
                let bk = n.position(&t[1..]).unwrap();
                vec![&a[f][0] * &b[bk][0]]
            })
            .collect()
    }

    #[test]
    fn torus_cup_matches_scalar_oracle() {
        let n = Nerve::torus();
        let gens = class_basis(&n, &ls1(&n), 1);
        assert_eq!(gens.len(), 2);
        let (a, b) = (&gens[0], &gens[1]);
        // lift to Λ^1 Q^2 along e_0 and e_1
        let lift = |c: &Cochain, k: usize| -> Cochain {
            c.iter().map(|v| (0..2).map(|t| if t == k { v[0].clone() } else { Q::zero() }).collect()).collect()
        };
        let ab = cup(&n, 2, (1, 1, &lift(a, 0)), (1, 1, &lift(b, 1)));
        assert_eq!(ab, scalar_cup(&n, a, b));
        // the cup of the two generators spans H^2, and is graded-commutative
        assert!(!is_coboundary(&n, &ls1(&n), 2, &ab));
        let ba = scalar_cup(&n, b, a);
        assert!(is_coboundary(&n, &ls1(&n), 2, &add(&ab, &ba)));
        assert!(!is_coboundary(&n, &ls1(&n), 2, &sub(&ab, &ba)));
    }

    #[test]
    fn q_is_a_chain_map() {
        for n in [Nerve::circle(), Nerve::torus()] {
        let r = 2;
        let gen = &class_basis(&n, &ext_system(&n, r, 1), 1)[0];
        let unit = unit_cochain(&n);
        for (a, v) in [(0usize, &unit), (1, gen)] {
            for j in 0..=r - a {
                let dj = super::super::nerve::coboundary_matrix(&n, &ext_system(&n, r, j), 0);
                let di = super::super::nerve::coboundary_matrix(&n, &ext_system(&n, r, j + a), a);
                let q0 = q_matrix(&n, r, a, v, j, 0);
                if a == 0 {
                    assert_eq!(q0, Mat::identity(q0.rows));
                }
                let q1 = q_matrix(&n, r, a, v, j, 1);
                if a < n.depth() {
                    assert_eq!(di.mul(&q0), q1.mul(&dj));
                }
            }
        }
        }
    }

    #[test]
    fn q_composition_carries_the_yoneda_sign() {
        let n = Nerve::torus();
        let r = 2;
        let gens = class_basis(&n, &ext_system(&n, r, 1), 1);
        let (v, w) = gens
            .iter()
            .flat_map(|v| gens.iter().map(move |w| (v, w)))
            .find(|(v, w)| cup(&n, r, (1, 1, v), (1, 1, w)).iter().flatten().any(|x| !x.is_zero()))
            .unwrap();
        let lhs = q_matrix(&n, r, 1, v, 1, 1).mul(&q_matrix(&n, r, 1, w, 0, 0));
        let vw = cup(&n, r, (1, 1, v), (1, 1, w));
        let rhs = q_matrix(&n, r, 2, &vw, 0, 0);
        assert_eq!(lhs, rhs.neg());
        assert!(!rhs.is_zero());
        let y = yoneda(&n, (1, &l_cochain(r, 1, 1, v)), (1, &l_cochain(r, 1, 0, w)), 1, 1);
        assert_eq!(y, hom_scale(&l_cochain(r, 2, 0, &vw), &q(-1)));
    }

    #[test]
    fn translation_of_l_is_l() {
        let n = Nerve::circle();
        for r in 1..=3 {
            let gen = &class_basis(&n, &ext_system(&n, r, 1), 1)[0];
            for j in 0..r {
                for m in 0..r - j {
                    let f = l_cochain(r, 1, j, gen);
                    let t = translate_cochain(r, m, j, j + 1, &f).unwrap();
                    assert_eq!(t, l_cochain(r, 1, j + m, gen));
                }
            }
        }
    }
}
