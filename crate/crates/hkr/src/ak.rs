//! The complexes `P` (terms `Λ^{p+1}B` in degree `−p`) and its dual `Q`
//! (terms `Λ^k B` in degree `−k`), their (co)augmentations, the pairing
//! realizing `Q` as a Hom-dual of `P`, and the product `P ⊗ Q → Q`.

use num_traits::{One, Zero};

use crate::chain::{hom_complex, Complex, ComplexMap};
use crate::exterior::{contract_left, merge, subsets, Ext, SignFunction};
use crate::extension::{wedge0, Extension, SplitElem};
use crate::linalg::Mat;
use crate::module::{realize_map, FreeMod};
use crate::poly::Poly;
use crate::rational::{q, sign, Q};

fn with_grades(c: Complex, mods: &[FreeMod]) -> Complex {
    let g = mods.iter().map(|m| m.grades()).collect();
    c.with_grades(g).expect("differentials preserve weight")
}

/// `P`: degree `−p` holds `Λ^{p+1}B`, differential `p·d_{p+1}`.
pub fn build_p(ext: &Extension) -> Complex {
    let r = ext.r;
    let mods: Vec<FreeMod> = (0..=r).rev().map(|p| ext.module(p + 1)).collect();
    let dims = mods.iter().map(|m| m.dim()).collect();
    let d = (1..=r).rev().map(|p| ext.d_matrix(p + 1, &q(p as i64))).collect();
    with_grades(Complex::new(-(r as i32), dims, d).expect("P squares to zero"), &mods)
}

pub fn a_module(ext: &Extension) -> FreeMod {
    FreeMod::new(ext.nvars, ext.bound, vec![0])
}

/// `θ_I = Λ^r I`, one generator.
pub fn theta_module(ext: &Extension) -> FreeMod {
    FreeMod::new(ext.nvars, ext.bound, vec![if ext.weighted { ext.r as u32 } else { 0 }])
}

fn concentrated(deg: i32, m: &FreeMod) -> Complex {
    Complex::concentrated(deg, m.dim())
        .with_grades(vec![m.grades()])
        .unwrap()
}

/// `A` in degree 0.
pub fn a_complex(ext: &Extension) -> Complex {
    concentrated(0, &a_module(ext))
}

/// `P → A`, the `1_B`-coefficient of `B = P^0`.
pub fn augmentation_p(ext: &Extension, p: &Complex) -> ComplexMap {
    let a = a_complex(ext);
    let am = a_module(ext);
    ComplexMap::from_fn(p, &a, 0, |n| {
        if n != 0 {
            return Mat::zeros(a.dim(n), p.dim(n));
        }
        realize_map(&ext.module(1), &am, |l, e| {
            vec![ext.pi(&ext.basis(1, l, e))]
        })
    })
}

/// `Q`: degree `−k` holds `Λ^k B`, differential `−(r−k+1)·d_k`.
pub fn build_q(ext: &Extension) -> Complex {
    let r = ext.r;
    let mods: Vec<FreeMod> = (0..=r).rev().map(|k| ext.module(k)).collect();
    let dims = mods.iter().map(|m| m.dim()).collect();
    let d = (1..=r)
        .rev()
        .map(|k| ext.d_matrix(k, &q(-((r - k + 1) as i64))))
        .collect();
    with_grades(Complex::new(-(r as i32), dims, d).expect("Q squares to zero"), &mods)
}

/// `θ_I[r] → Q`, `t ↦ (t, 0) ∈ Λ^r B`.
pub fn coaugmentation_q(ext: &Extension, qc: &Complex) -> (Complex, ComplexMap) {
    let r = ext.r;
    let th = theta_module(ext);
    let src = concentrated(-(r as i32), &th);
    let top: Vec<usize> = (0..r).collect();
    let f = ComplexMap::from_fn(&src, qc, 0, |_| {
        realize_map(&th, &ext.module(r), |_, e| {
            let mut x = SplitElem::zero(r, r);
            x.i.add_term(top.clone(), Poly::monomial(e.clone(), Q::one()));
            ext.to_elem(&x)
        })
    });
    (src, f)
}

/// Label-level matrix of the pairing `Λ^{r−p}B → Hom_A(Λ^{p+1}B, θ_I)`,
/// `(u, v) ↦ {(i, j) ↦ j∧u + (−1)^p i∧v}`, columns `Λ^{r−p}B` labels, rows the
/// dual labels of `Λ^{p+1}B`.
pub fn q_pairing(r: usize, p: usize) -> Mat {
    let lab = |k: usize| -> Vec<(bool, Vec<usize>)> {
        let mut v: Vec<(bool, Vec<usize>)> = subsets(r, k).into_iter().map(|s| (true, s)).collect();
        if k > 0 {
            v.extend(subsets(r, k - 1).into_iter().map(|s| (false, s)));
        }
        v
    };
    let src = lab(r - p);
    let tgt = lab(p + 1);
    let top: Vec<usize> = (0..r).collect();
    let coeff = |a: &[usize], b: &[usize]| -> i64 {
        match merge(a, b) {
            Some((s, m)) if m == top => s,
            _ => 0,
        }
    };
    let mut m = Mat::zeros(tgt.len(), src.len());
    for (c, (uis, us)) in src.iter().enumerate() {
        for (row, (iis, is)) in tgt.iter().enumerate() {
            // (i, j) paired with (u, v): j∧u if the source is a u-label, (−1)^p i∧v if a v-label
            let val = match (uis, iis) {
                (true, false) => coeff(is, us),
                (false, true) => crate::rational::sign_i(p as i64) * coeff(is, us),
                _ => 0,
            };
            if val != 0 {
                m.set(row, c, q(val));
            }
        }
    }
    m
}

/// Label-level check that the pairing carries `Q`'s differential to `(−1)^r`
/// times the Hom-dual differential of `P`, with invertible pairings.
pub fn q_transport_check(r: usize) -> bool {
    let ext = Extension::new(r, 0, 0, false).unwrap();
    let p = build_p(&ext);
    let theta = Complex::concentrated(-(r as i32), 1);
    let (h, layout) = hom_complex(&p, &theta);
    let qc = build_q(&ext);
    // degree n = p − r: Hom(P^{−p}, θ) against Q^{n} = Λ^{r−p}B
    let psi = |pp: usize| -> Mat {
        let n = pp as i32 - r as i32;
        let pair = q_pairing(r, pp);
        let rows = h.dim(n);
        let mut out = Mat::zeros(rows, pair.cols);
        for row in 0..pair.rows {
            let idx = layout.index(n, -(pp as i32), 0, row).expect("hom block");
            for c in 0..pair.cols {
                out.set(idx, c, pair.get(row, c).clone());
            }
        }
        out
    };
    let s = sign(r as i64);
    (0..=r).all(|pp| {
        let n = pp as i32 - r as i32;
        let a = psi(pp);
        if a.rank() != a.cols || a.rows != a.cols {
            return false;
        }
        if pp == r {
            return true;
        }
        let lhs = psi(pp + 1).mul(&qc.d_at(n));
        let rhs = h.d_at(n).scale(&s).mul(&a);
        lhs == rhs
    })
}

/// `ŵ*`: `x ∈ Λ^{l+1}B ⊂ P`, `y ∈ Λ^{r−k}B ⊂ Q`, landing in `Λ^{r−k+l}B`
/// (zero past `Λ^r B`, the last term of `Q`).
pub fn hat_star(ext: &Extension, x: &SplitElem, y: &SplitElem) -> SplitElem {
    assert!(x.k >= 1, "P starts at Λ^1 B");
    let k = x.k + y.k - 1;
    if k > ext.r {
        return SplitElem::zero(ext.r, k);
    }
    let l = x.k as i64 - 1;
    let mut i = wedge0(&x.j, &y.i).scale(&sign(l));
    if y.k > 0 {
        i = i.add(&wedge0(&x.i, &y.j)).unwrap();
    }
    let j = if y.k > 0 { wedge0(&x.j, &y.j) } else { Ext::zero(ext.r, k.saturating_sub(1)) };
    SplitElem { k, i, j }
}

/// `d_Q(x ŵ* y) = d_P x ŵ* y + (−1)^l x ŵ* d_Q y` on all realized basis pairs.
pub fn hat_star_chain_check(ext: &Extension) -> bool {
    let r = ext.r as i64;
    let dq = |y: &SplitElem| -> SplitElem {
        if y.k == 0 {
            return SplitElem::zero(ext.r, 0);
        }
        ext.d(y).scale(&q(-(r - y.k as i64 + 1)))
    };
    let px: Vec<SplitElem> = (1..=ext.r + 1).flat_map(|k| ext.basis_elems(k)).collect();
    let qy: Vec<SplitElem> = (0..=ext.r).flat_map(|k| ext.basis_elems(k)).collect();
    px.iter().all(|x| {
        qy.iter().all(|y| {
            let l = x.k as i64 - 1;
            let lhs = dq(&hat_star(ext, x, y));
            let tgt = ext.module(lhs.k).dim();
            // P has nothing above degree 0 and Q nothing above degree 0
            let a = if x.k >= 2 {
                ext.realize(&hat_star(ext, &ext.hat_d(x), y))
            } else {
                vec![Q::zero(); tgt]
            };
            let b = if y.k >= 1 {
                ext.realize(&hat_star(ext, x, &dq(y)).scale(&sign(l)))
            } else {
                vec![Q::zero(); tgt]
            };
            let rhs: Vec<Q> = a.iter().zip(&b).map(|(u, v)| u + v).collect();
            ext.realize(&lhs) == rhs
        })
    })
}

/// `ŵ*` with the unit `(0, 1) ∈ B` acts as the identity of every `Q` term.
pub fn hat_star_unit_check(ext: &Extension) -> bool {
    let unit = ext.b_as_split(&ext.unit_b());
    (0..=ext.r).all(|k| {
        ext.basis_elems(k).iter().all(|y| {
            let z = hat_star(ext, &unit, y);
            z.k == y.k && ext.realize(&z) == ext.realize(y)
        })
    })
}

/// `ŵ*` in `ℬ`-degree 0 against `Q` agrees with the `B`-module structure.
pub fn hat_star_module_check(ext: &Extension) -> bool {
    ext.basis_elems(1).iter().all(|b| {
        let be = ext.split_as_b(b);
        (0..=ext.r).all(|k| {
            ext.basis_elems(k).iter().all(|y| {
                let z = hat_star(ext, b, y);
                z.k == y.k && ext.realize(&z) == ext.realize(&ext.act(&be, y))
            })
        })
    })
}

/// The pairing `H^0(A ⊗_B P) ⊗ H^0 Hom_B(A, Q ⊗ θ_I^*) → H^0 Hom_B(A, Q ⊗ θ_I^*)`
/// induced by `ŵ*`, written through the `j`-part identification on the left
/// and `D^ℓ` on the right, compared with left contraction `ΛI ⊗ ΛI^* → ΛI^*`.
#[derive(Clone, Debug)]
pub struct ContractionRealization {
    pub r: usize,
    /// Pairs `(p, k)` where the realized map differs from untwisted contraction.
    pub untwisted_mismatch: Vec<(usize, usize)>,
    /// Names of the admissible sign conventions the realized map matches exactly.
    pub conventions: Vec<&'static str>,
    /// Degree-0 part acts as the identity.
    pub unit_ok: bool,
}

impl ContractionRealization {
    /// The realized map is a twisted left contraction for an admissible sign function.
    pub fn ok(&self) -> bool {
        self.unit_ok && !self.conventions.is_empty()
    }
}

pub fn contraction_realization_check(r: usize) -> ContractionRealization {
    let ext = Extension::new(r, 0, 0, false).unwrap();
    let one = Poly::one(0);
    let xi = Ext::monomial(r, &(0..r).collect::<Vec<_>>(), Q::one()).unwrap();
    // ΛI acting on ΛN, N = I^*: realized class of x ŵ* (u,0), carried by D^ℓ
    let realized = |x: &[usize], u: &[usize]| -> Ext<Q> {
        let mut px = SplitElem::zero(r, x.len() + 1);
        px.j.add_term(x.to_vec(), one.clone());
        let mut qy = SplitElem::zero(r, u.len());
        qy.i.add_term(u.to_vec(), one.clone());
        let z = hat_star(&ext, &px, &qy);
        debug_assert!(z.j.is_zero());
        let zi = to_q(&z.i);
        contract_left(&zi, &xi)
    };
    let contracted = |x: &[usize], u: &[usize]| -> Ext<Q> {
        let xe = Ext::monomial(r, x, Q::one()).unwrap();
        let phi = contract_left(&Ext::monomial(r, u, Q::one()).unwrap(), &xi);
        contract_left(&xe, &phi)
    };
    let mut untwisted_mismatch = Vec::new();
    let mut conventions: Vec<&'static str> = Vec::new();
    let std = SignFunction::standard(r);
    let mut conv_ok = vec![true; std.len()];
    for p in 0..=r {
        for k in 0..=r - p {
            let mut same = true;
            for x in subsets(r, p) {
                for u in subsets(r, k) {
                    let a = realized(&x, &u);
                    let b = contracted(&x, &u);
                    if a != b {
                        same = false;
                    }
                    // φ = u⌟ξ has degree r − k
                    for (c, (_, chi)) in std.iter().enumerate() {
                        let tw = b.scale(&q(chi.get(p, k)));
                        if a != tw {
                            conv_ok[c] = false;
                        }
                    }
                }
            }
            if !same {
                untwisted_mismatch.push((p, k));
            }
        }
    }
    for (c, (name, _)) in std.iter().enumerate() {
        if conv_ok[c] {
            conventions.push(name);
        }
    }
    let unit_ok = (0..=r).all(|k| {
        subsets(r, k).iter().all(|u| {
            let a = realized(&[], u);
            a == contract_left(&Ext::monomial(r, u, Q::one()).unwrap(), &xi)
        })
    });
    ContractionRealization {
        r,
        untwisted_mismatch,
        conventions,
        unit_ok,
    }
}

fn to_q(x: &Ext<Poly>) -> Ext<Q> {
    let mut out = Ext::zero(x.rank, x.deg);
    for (k, c) in &x.terms {
        let v = c.constant_term();
        if !v.is_zero() {
            out.add_term(k.clone(), v);
        }
    }
    out
}

/// Homology summary of `P` and `Q` per grade: `H^0(P)` and `H^{−r}(Q)`
/// against the expected spaces, every other degree zero, and the
/// (co)augmentations quasi-isomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AkBattery {
    pub p_homology: bool,
    pub p_augmentation_qis: bool,
    pub p_splits: bool,
    pub q_homology: bool,
    pub q_coaugmentation_qis: bool,
    pub q_splits: bool,
    pub q_transport: bool,
    pub hat_star_chain: bool,
    pub hat_star_unit: bool,
    pub hat_star_module: bool,
    pub grades: Vec<u32>,
}

impl AkBattery {
    pub fn all(&self) -> bool {
        self.p_homology
            && self.p_augmentation_qis
            && self.p_splits
            && self.q_homology
            && self.q_coaugmentation_qis
            && self.q_splits
            && self.q_transport
            && self.hat_star_chain
            && self.hat_star_unit
            && self.hat_star_module
    }
}

pub fn ak_battery(ext: &Extension) -> AkBattery {
    let r = ext.r as i32;
    let grades: Vec<u32> = (0..=ext.bound).collect();
    let p = build_p(ext);
    let a = a_complex(ext);
    let am = a_module(ext);
    let p_homology = grades.iter().all(|&g| {
        let piece = p.graded_piece(g);
        let expect0 = am.grades().iter().filter(|&&x| x == g).count();
        (-r..0).all(|n| piece.betti(n) == 0) && piece.betti(0) == expect0
    });
    let aug = augmentation_p(ext, &p);
    let p_augmentation_qis = aug.is_chain_map(&p, &a) && aug.is_quasi_iso_graded(&p, &a, &grades);
    let p_splits = crate::chain::split_off_homology(&p).is_ok() && p_a_linear_splitting(ext);
    let qc = build_q(ext);
    let th = theta_module(ext);
    let q_homology = grades.iter().all(|&g| {
        let piece = qc.graded_piece(g);
        let expect = th.grades().iter().filter(|&&x| x == g).count();
        (-r + 1..=0).all(|n| piece.betti(n) == 0) && piece.betti(-r) == expect
    });
    let (tc, co) = coaugmentation_q(ext, &qc);
    let q_coaugmentation_qis = co.is_chain_map(&tc, &qc) && co.is_quasi_iso_graded(&tc, &qc, &grades);
    let q_splits = crate::chain::split_off_homology(&qc).is_ok();
    AkBattery {
        p_homology,
        p_augmentation_qis,
        p_splits,
        q_homology,
        q_coaugmentation_qis,
        q_splits,
        q_transport: q_transport_check(ext.r),
        hat_star_chain: hat_star_chain_check(ext),
        hat_star_unit: hat_star_unit_check(ext),
        hat_star_module: hat_star_module_check(ext),
        grades,
    }
}

/// `P = A·(0, 1_A) ⊕ K` with `K = (I, 0) ⊕ P^{<0}` an `A`-linear subcomplex
/// that is contractible.
fn p_a_linear_splitting(ext: &Extension) -> bool {
    let p = build_p(ext);
    let m1 = ext.module(1);
    // realized indices of the (I, 0) labels in degree 0
    let nlab_i = ext.r;
    let keep0: Vec<usize> = (0..m1.dim()).filter(|&k| m1.basis()[k].0 < nlab_i).collect();
    let lo = p.lo;
    let idx: Vec<Vec<usize>> = p
        .degrees()
        .map(|n| if n == 0 { keep0.clone() } else { (0..p.dim(n)).collect() })
        .collect();
    // subcomplex: d of degree −1 lands inside (I, 0)
    let d = p.d_at(-1);
    let others: Vec<usize> = (0..m1.dim()).filter(|k| !keep0.contains(k)).collect();
    if !d.select_rows(&others).is_zero() {
        return false;
    }
    let dims = idx.iter().map(|v| v.len()).collect();
    let diffs = (0..p.d.len())
        .map(|k| p.d[k].select_rows(&idx[k + 1]).select_cols(&idx[k]))
        .collect();
    let kc = Complex::new(lo, dims, diffs).unwrap();
    crate::chain::null_homotopy(&ComplexMap::identity(&kc), &kc, &kc).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_rank_one_is_inclusion() {
        let ext = Extension::new(1, 0, 0, false).unwrap();
        let p = build_p(&ext);
        // Λ^2 B = (0, I) → B = (I, A): j ↦ (j, 0)
        assert_eq!(p.d_at(-1), Mat::from_i64(&[&[1], &[0]]));
    }

    #[test]
    fn q_rank_one_differential() {
        let ext = Extension::new(1, 0, 0, false).unwrap();
        let qc = build_q(&ext);
        // B = (I, A) → A: −1·d_1, (i, a) ↦ −a
        assert_eq!(qc.d_at(-1), Mat::from_i64(&[&[0, -1]]));
    }

    #[test]
    fn transport_pins_signs() {
        for r in 1..=3 {
            assert!(q_transport_check(r), "r = {r}");
        }
    }

    #[test]
    fn battery_over_rationals_and_polynomials() {
        for r in 1..=3 {
            let b = ak_battery(&Extension::new(r, 0, 0, false).unwrap());
            assert!(b.all(), "r = {r}: {b:?}");
        }
        for r in 1..=2 {
            let b = ak_battery(&Extension::new(r, 1, 2, false).unwrap());
            assert!(b.all(), "r = {r} over Q[x]: {b:?}");
        }
    }

    #[test]
    fn contraction_realization_is_parity_twisted() {
        for r in 1..=3 {
            let c = contraction_realization_check(r);
            assert!(c.ok());
            assert!(c.conventions.contains(&"parity"), "r = {r}: {c:?}");
            // untwisted contraction agrees exactly on even P-degree
            assert!(c.untwisted_mismatch.iter().all(|&(p, _)| p % 2 == 1));
        }
        // r = 1 cannot tell parity from triangular: both are (−1)^p on Δ_1
        assert_eq!(contraction_realization_check(1).conventions, ["parity", "triangular"]);
        assert_eq!(contraction_realization_check(2).conventions, ["parity"]);
    }
}
