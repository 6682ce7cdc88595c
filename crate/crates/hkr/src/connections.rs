//! Kähler differentials of `A = Q[x_1..x_m]≤D`, connections on the free module
//! `I`, and the `u_χ`-semilinear automorphisms of `P` and `Q` they induce.
//!
//! Weights: `dx_i` and `ȳ_k` both weigh 1, so every map here is
//! weight-nondecreasing and commutes with truncation.

use num_traits::{One, Zero};

use crate::ak::{augmentation_p, build_p, build_q, coaugmentation_q};
use crate::chain::{Complex, ComplexMap};
use crate::error::{Error, Result};
use crate::exterior::{merge, subsets, Ext, Idx};
use crate::extension::{wedge0, BElem, Extension, SplitElem};
use crate::linalg::Mat;
use crate::module::{realize_map, Elem, FreeMod};
use crate::poly::{monomials_of_degree, Exps, Poly};
use crate::rational::Q;

/// `Ω^p = Λ^p Ω¹` over `A`, free on `dx_S`.
#[derive(Clone, Debug)]
pub struct Kahler {
    pub m: usize,
    pub bound: u32,
}

impl Kahler {
    pub fn module(&self, p: usize) -> FreeMod {
        FreeMod::new(self.m, self.bound, vec![p as u32; subsets(self.m, p).len()])
    }

    /// `𝔡(c dx_S) = Σ_i ∂_i c dx_i ∧ dx_S`.
    pub fn d(&self, w: &Ext<Poly>) -> Ext<Poly> {
        let mut out = Ext::zero(self.m, w.deg + 1);
        for (s, c) in &w.terms {
            for i in 0..self.m {
                let dc = c.deriv(i);
                if dc.is_zero() {
                    continue;
                }
                if let Some((sg, u)) = merge(&[i], s) {
                    out.add_term(u, dc.scale(&Q::from_integer(sg.into())));
                }
            }
        }
        out
    }

    pub fn d_matrix(&self, p: usize) -> Mat {
        let sets = subsets(self.m, p);
        realize_map(&self.module(p), &self.module(p + 1), |l, e| {
            let w = Ext::monomial(self.m, &sets[l], Poly::monomial(e.clone(), Q::one())).unwrap();
            to_vec(&self.d(&w), self.m)
        })
    }

    pub fn d_squared_zero(&self) -> bool {
        (0..self.m.saturating_sub(1)).all(|p| self.d_matrix(p + 1).mul(&self.d_matrix(p)).is_zero())
    }

    /// `𝔡(aω) = da ∧ ω + a 𝔡ω` on monomials `a` and basis forms `ω`.
    pub fn leibniz(&self) -> bool {
        (0..self.m).all(|p| {
            let tgt = self.module(p + 1);
            monomials(self.m, self.bound).iter().all(|a| {
                let ap = Poly::monomial(a.clone(), Q::one());
                let da = self.d(&Ext::monomial(self.m, &[], ap.clone()).unwrap());
                self.module(p).basis().iter().all(|(l, e)| {
                    let w = Ext::monomial(self.m, &subsets(self.m, p)[*l], Poly::monomial(e.clone(), Q::one())).unwrap();
                    let lhs = self.d(&w.mul_coeff(&ap));
                    let rhs = wedge0(&da, &w).add(&self.d(&w).mul_coeff(&ap)).unwrap();
                    tgt.realize(&to_vec(&lhs, self.m)) == tgt.realize(&to_vec(&rhs, self.m))
                })
            })
        })
    }
}

fn monomials(m: usize, bound: u32) -> Vec<Exps> {
    (0..=bound).flat_map(|d| monomials_of_degree(m, d)).collect()
}

/// Coefficients of `w` in the `subsets(rank, deg)` order.
pub(crate) fn to_vec(w: &Ext<Poly>, nvars: usize) -> Elem {
    subsets(w.rank, w.deg)
        .iter()
        .map(|s| w.get(s).cloned().unwrap_or_else(|| Poly::zero(nvars)))
        .collect()
}

pub(crate) fn from_vec(rank: usize, deg: usize, v: &[Poly]) -> Ext<Poly> {
    let mut out = Ext::zero(rank, deg);
    for (s, c) in subsets(rank, deg).into_iter().zip(v) {
        out.add_term(s, c.clone());
    }
    out
}

/// A derivation `χ: A → I`, stored as `χ̂(dx_i) = Σ_k chi[k][i] ȳ_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationChi {
    pub m: usize,
    pub r: usize,
    pub chi: Vec<Vec<Poly>>,
}

impl DerivationChi {
    pub fn new(m: usize, r: usize, chi: Vec<Vec<Poly>>) -> Result<DerivationChi> {
        if chi.len() != r || chi.iter().any(|row| row.len() != m || row.iter().any(|c| c.nvars != m)) {
            return Err(Error::Structural(format!("chi must be {r}×{m} over A")));
        }
        Ok(DerivationChi { m, r, chi })
    }

    pub fn zero(m: usize, r: usize) -> DerivationChi {
        DerivationChi::new(m, r, vec![vec![Poly::zero(m); m]; r]).unwrap()
    }

    pub fn neg(&self) -> DerivationChi {
        let chi = self.chi.iter().map(|row| row.iter().map(|c| c.scale(&-Q::one())).collect()).collect();
        DerivationChi { chi, ..self.clone() }
    }

    pub fn add(&self, o: &DerivationChi) -> DerivationChi {
        let chi = self.chi.iter().zip(&o.chi).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        DerivationChi { chi, ..self.clone() }
    }

    /// `χ̂: Ω¹ → I`.
    pub fn hat(&self, w: &Ext<Poly>) -> Ext<Poly> {
        assert_eq!(w.deg, 1);
        let mut out = Ext::zero(self.r, 1);
        for (s, c) in &w.terms {
            for k in 0..self.r {
                out.add_term(vec![k], c * &self.chi[k][s[0]]);
            }
        }
        out
    }

    /// `χ(a) = χ̂(da)`.
    pub fn apply(&self, a: &Poly) -> Ext<Poly> {
        let mut da = Ext::zero(self.m, 1);
        for i in 0..self.m {
            da.add_term(vec![i], a.deriv(i));
        }
        self.hat(&da)
    }

    /// `Λ^p χ̂: Ω^p → Λ^p I`.
    pub fn hat_power(&self, w: &Ext<Poly>) -> Ext<Poly> {
        let mut out = Ext::zero(self.r, w.deg);
        for (s, c) in &w.terms {
            let mut acc = Ext::monomial(self.r, &[], c.clone()).unwrap();
            for &i in s {
                let col = self.hat(&Ext::monomial(self.m, &[i], Poly::one(self.m)).unwrap());
                acc = wedge0(&acc, &col);
            }
            out = out.add(&acc).unwrap();
        }
        out
    }

    /// Leibniz on monomial pairs, and `χ ↦ χ̂ ↦ χ` recovering the values on `x_i`.
    pub fn check(&self, bound: u32) -> bool {
        let im = FreeMod::new(self.m, bound, vec![1; self.r]);
        let mons = monomials(self.m, bound);
        let leibniz = mons.iter().all(|a| {
            mons.iter().all(|b| {
                let (pa, pb) = (Poly::monomial(a.clone(), Q::one()), Poly::monomial(b.clone(), Q::one()));
                let lhs = self.apply(&(&pa * &pb));
                let rhs = self.apply(&pb).mul_coeff(&pa).add(&self.apply(&pa).mul_coeff(&pb)).unwrap();
                im.realize(&to_vec(&lhs, self.m)) == im.realize(&to_vec(&rhs, self.m))
            })
        });
        let roundtrip = (0..self.m).all(|i| {
            let v = self.apply(&Poly::var(self.m, i));
            (0..self.r).all(|k| v.get(&[k]).cloned().unwrap_or_else(|| Poly::zero(self.m)) == self.chi[k][i])
        });
        leibniz && roundtrip
    }
}

/// `∇ȳ_s = Σ_{i,l} gamma[i][s][l] dx_i ⊗ ȳ_l`, extended by `∇(aȳ) = da ⊗ ȳ + a∇ȳ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    pub m: usize,
    pub r: usize,
    pub gamma: Vec<Vec<Vec<Poly>>>,
}

impl Connection {
    pub fn trivial(m: usize, r: usize) -> Connection {
        Connection {
            m,
            r,
            gamma: vec![vec![vec![Poly::zero(m); r]; r]; m],
        }
    }

    pub fn new(m: usize, r: usize, gamma: Vec<Vec<Vec<Poly>>>) -> Result<Connection> {
        let shape = gamma.len() == m && gamma.iter().all(|g| g.len() == r && g.iter().all(|row| row.len() == r));
        if !shape {
            return Err(Error::Structural(format!("connection matrix must be {m}×{r}×{r}")));
        }
        Ok(Connection { m, r, gamma })
    }

    /// `∇` on `I`, as the `dx_i` components.
    pub fn apply(&self, v: &Ext<Poly>) -> Vec<Ext<Poly>> {
        assert_eq!(v.deg, 1);
        (0..self.m)
            .map(|i| {
                let mut out = Ext::zero(self.r, 1);
                for (s, c) in &v.terms {
                    out.add_term(s.clone(), c.deriv(i));
                    for l in 0..self.r {
                        out.add_term(vec![l], c * &self.gamma[i][s[0]][l]);
                    }
                }
                out
            })
            .collect()
    }

    /// `Λ^p ∇`, as the `dx_i` components.
    pub fn apply_power(&self, v: &Ext<Poly>) -> Vec<Ext<Poly>> {
        (0..self.m)
            .map(|i| {
                let mut out = Ext::zero(self.r, v.deg);
                for (s, c) in &v.terms {
                    out.add_term(s.clone(), c.deriv(i));
                    for (pos, &sk) in s.iter().enumerate() {
                        for l in 0..self.r {
                            let g = &self.gamma[i][sk][l];
                            if g.is_zero() {
                                continue;
                            }
                            let mut t: Idx = s.clone();
                            t[pos] = l;
                            if let Some((sg, u)) = crate::exterior::sort_sign(&t) {
                                out.add_term(u, (c * g).scale(&Q::from_integer(sg.into())));
                            }
                        }
                    }
                }
                out
            })
            .collect()
    }

    /// `∇(aȳ_s) = a∇ȳ_s + da ⊗ ȳ_s` on monomials `a`.
    pub fn leibniz(&self, bound: u32) -> bool {
        let im = FreeMod::new(self.m, bound, vec![1; self.r]);
        monomials(self.m, bound).iter().all(|a| {
            let pa = Poly::monomial(a.clone(), Q::one());
            (0..self.r).all(|s| {
                let y = Ext::monomial(self.r, &[s], Poly::one(self.m)).unwrap();
                let lhs = self.apply(&y.mul_coeff(&pa));
                let base = self.apply(&y);
                (0..self.m).all(|i| {
                    let rhs = base[i].mul_coeff(&pa).add(&y.mul_coeff(&pa.deriv(i))).unwrap();
                    im.realize(&to_vec(&lhs[i], self.m)) == im.realize(&to_vec(&rhs, self.m))
                })
            })
        })
    }
}

/// `u_χ(i, a) = (i + χ(a), a)`.
pub fn u_chi(chi: &DerivationChi, b: &BElem) -> BElem {
    BElem {
        i: b.i.add(&chi.apply(&b.a)).unwrap(),
        a: b.a.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UChiCheck {
    pub multiplicative: bool,
    pub unital: bool,
    pub inverse: bool,
    pub additive_in_chi: bool,
}

impl UChiCheck {
    pub fn all(&self) -> bool {
        self.multiplicative && self.unital && self.inverse && self.additive_in_chi
    }
}

fn b_ext(chi: &DerivationChi, bound: u32) -> Extension {
    Extension::new(chi.r, chi.m, bound, true).expect("r ≥ 1")
}

fn u_matrix(ext: &Extension, chi: &DerivationChi) -> Mat {
    realize_map(&ext.module(1), &ext.module(1), |l, e| {
        let b = ext.split_as_b(&ext.basis(1, l, e));
        ext.to_elem(&ext.b_as_split(&u_chi(chi, &b)))
    })
}

/// `other` is a second derivation for `u_χ ∘ u_χ′ = u_{χ+χ′}`.
pub fn u_chi_check(chi: &DerivationChi, other: &DerivationChi, bound: u32) -> UChiCheck {
    let ext = b_ext(chi, bound);
    let bs: Vec<BElem> = ext.basis_elems(1).iter().map(|x| ext.split_as_b(x)).collect();
    let re = |b: &BElem| ext.realize(&ext.b_as_split(b));
    let multiplicative = bs.iter().all(|x| {
        bs.iter().all(|y| re(&u_chi(chi, &ext.b_mul(x, y))) == re(&ext.b_mul(&u_chi(chi, x), &u_chi(chi, y))))
    });
    let unital = re(&u_chi(chi, &ext.unit_b())) == re(&ext.unit_b());
    let u = u_matrix(&ext, chi);
    let inverse = u_matrix(&ext, &chi.neg()).mul(&u) == Mat::identity(u.rows);
    let additive_in_chi = u.mul(&u_matrix(&ext, other)) == u_matrix(&ext, &chi.add(other));
    UChiCheck {
        multiplicative,
        unital,
        inverse,
        additive_in_chi,
    }
}

/// `R_p: Λ^p I → Λ^{p+1} I`, on realized coordinates.
#[derive(Clone, Debug)]
pub struct RMaps {
    pub r: usize,
    pub m: usize,
    pub bound: u32,
    /// `maps[p]` for `p = 0..=r`.
    pub maps: Vec<Mat>,
}

impl RMaps {
    fn lam(&self, p: usize) -> FreeMod {
        FreeMod::new(self.m, self.bound, vec![p as u32; subsets(self.r, p).len()])
    }

    pub fn apply(&self, j: &Ext<Poly>) -> Ext<Poly> {
        let p = j.deg;
        let v = self.lam(p).realize(&to_vec(j, self.m));
        let w = self.maps[p].apply(&v);
        from_vec(self.r, p + 1, &self.lam(p + 1).lift(&w))
    }

    /// `R_p(aj) = aR_p(j) + χ(a) ∧ j` on monomials `a` and basis elements `j`.
    pub fn twisted_leibniz(&self, chi: &DerivationChi) -> bool {
        (0..=self.r).all(|p| {
            let tgt = self.lam(p + 1);
            let sets = subsets(self.r, p);
            monomials(self.m, self.bound).iter().all(|a| {
                let pa = Poly::monomial(a.clone(), Q::one());
                let ca = chi.apply(&pa);
                self.lam(p).basis().iter().all(|(l, e)| {
                    let j = Ext::monomial(self.r, &sets[*l], Poly::monomial(e.clone(), Q::one())).unwrap();
                    let lhs = self.apply(&j.mul_coeff(&pa));
                    let rhs = self.apply(&j).mul_coeff(&pa).add(&wedge0(&ca, &j)).unwrap();
                    tgt.realize(&to_vec(&lhs, self.m)) == tgt.realize(&to_vec(&rhs, self.m))
                })
            })
        })
    }
}

/// `R_p = (∧) ∘ (χ̂ ⊗ id) ∘ Λ^p ∇`.
pub fn r_from_connection(nabla: &Connection, chi: &DerivationChi, bound: u32) -> RMaps {
    let (m, r) = (chi.m, chi.r);
    let lam = |p: usize| FreeMod::new(m, bound, vec![p as u32; subsets(r, p).len()]);
    let maps = (0..=r)
        .map(|p| {
            let sets = subsets(r, p);
            realize_map(&lam(p), &lam(p + 1), |l, e| {
                let j = Ext::monomial(r, &sets[l], Poly::monomial(e.clone(), Q::one())).unwrap();
                let comps = nabla.apply_power(&j);
                let mut out = Ext::zero(r, p + 1);
                for (i, c) in comps.iter().enumerate() {
                    let v = chi.hat(&Ext::monomial(m, &[i], Poly::one(m)).unwrap());
                    out = out.add(&wedge0(&v, c)).unwrap();
                }
                to_vec(&out, m)
            })
        })
        .collect();
    RMaps { r, m, bound, maps }
}

/// `R_p = Λ^{p+1} χ̂ ∘ 𝔡_p ∘ (Λ^p χ̂)^{−1}`; requires `m = r` and `χ̂` invertible over `A`.
pub fn r_from_iso(chi: &DerivationChi, bound: u32) -> Result<RMaps> {
    let (m, r) = (chi.m, chi.r);
    if m != r {
        return Err(Error::Invalid(format!("χ̂ must be square, got m = {m}, r = {r}")));
    }
    // A is local: χ̂ is invertible iff det χ̂ has nonzero constant term
    let det0 = Mat::from_rows(
        (0..r)
            .map(|k| (0..m).map(|i| chi.chi[k][i].constant_term()).collect())
            .collect(),
    )
    .det();
    if det0.is_zero() {
        return Err(Error::Invalid("χ̂ is not invertible: det χ̂ vanishes at the origin".into()));
    }
    let kahler = Kahler { m, bound };
    let lam = |p: usize| FreeMod::new(m, bound, vec![p as u32; subsets(r, p).len()]);
    let hat = |p: usize| {
        let sets = subsets(m, p);
        realize_map(&kahler.module(p), &lam(p), |l, e| {
            let w = Ext::monomial(m, &sets[l], Poly::monomial(e.clone(), Q::one())).unwrap();
            to_vec(&chi.hat_power(&w), m)
        })
    };
    let maps = (0..=r)
        .map(|p| {
            if p == r {
                return Mat::zeros(0, lam(p).dim());
            }
            let inv = hat(p).inverse().expect("block-triangular with invertible diagonal");
            hat(p + 1).mul(&kahler.d_matrix(p)).mul(&inv)
        })
        .collect();
    Ok(RMaps { r, m, bound, maps })
}

/// `φ(i, j) = (i + R(j), j)` on `Λ^k B`.
pub fn phi(rm: &RMaps, x: &SplitElem) -> SplitElem {
    if x.k == 0 {
        return x.clone();
    }
    SplitElem {
        k: x.k,
        i: x.i.add(&rm.apply(&x.j)).unwrap(),
        j: x.j.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AkAutomorphism {
    pub twisted_leibniz: bool,
    pub p_chain: bool,
    pub p_semilinear: bool,
    pub p_invertible: bool,
    /// Commutes with `P → A`, hence `H^0(φ) = id_A`.
    pub p_augmentation: bool,
    pub q_chain: bool,
    pub q_semilinear: bool,
    pub q_invertible: bool,
    /// Commutes with `θ_I[r] → Q`.
    pub q_coaugmentation: bool,
    pub is_identity: bool,
}

impl AkAutomorphism {
    pub fn all(&self) -> bool {
        self.twisted_leibniz
            && self.p_chain
            && self.p_semilinear
            && self.p_invertible
            && self.p_augmentation
            && self.q_chain
            && self.q_semilinear
            && self.q_invertible
            && self.q_coaugmentation
    }
}

fn phi_matrix(ext: &Extension, rm: &RMaps, k: usize) -> Mat {
    realize_map(&ext.module(k), &ext.module(k), |l, e| ext.to_elem(&phi(rm, &ext.basis(k, l, e))))
}

fn semilinear(ext: &Extension, rm: &RMaps, chi: &DerivationChi, k: usize) -> bool {
    let bs = ext.basis_elems(1);
    let xs = ext.basis_elems(k);
    bs.iter().all(|b| {
        let b = ext.split_as_b(b);
        let ub = u_chi(chi, &b);
        xs.iter().all(|x| {
            ext.realize(&phi(rm, &ext.act(&b, x))) == ext.realize(&ext.act(&ub, &phi(rm, x)))
        })
    })
}

fn automorphism(ext: &Extension, rm: &RMaps, chi: &DerivationChi) -> AkAutomorphism {
    let r = ext.r;
    let p = build_p(ext);
    let fp = ComplexMap::from_fn(&p, &p, 0, |n| phi_matrix(ext, rm, (1 - n) as usize));
    let aug = augmentation_p(ext, &p);
    let q = build_q(ext);
    let fq = ComplexMap::from_fn(&q, &q, 0, |n| phi_matrix(ext, rm, (-n) as usize));
    let (theta, co) = coaugmentation_q(ext, &q);
    let invertible = |f: &ComplexMap| f.maps.iter().all(|m| m.rows == m.cols && m.rank() == m.rows);
    AkAutomorphism {
        twisted_leibniz: rm.twisted_leibniz(chi),
        p_chain: fp.is_chain_map(&p, &p),
        p_semilinear: (1..=r + 1).all(|k| semilinear(ext, rm, chi, k)),
        p_invertible: invertible(&fp),
        p_augmentation: aug.compose(&fp, &p, &p, &complex_a(ext)) == aug,
        q_chain: fq.is_chain_map(&q, &q),
        q_semilinear: (0..=r).all(|k| semilinear(ext, rm, chi, k)),
        q_invertible: invertible(&fq),
        q_coaugmentation: fq.compose(&co, &theta, &q, &q) == co,
        is_identity: fp == ComplexMap::identity(&p) && fq == ComplexMap::identity(&q),
    }
}

fn complex_a(ext: &Extension) -> Complex {
    crate::ak::a_complex(ext)
}

/// The automorphism of `P` and `Q` induced by a connection and a derivation.
pub fn ak_auto_from_connection(nabla: &Connection, chi: &DerivationChi, bound: u32) -> Result<AkAutomorphism> {
    if nabla.m != chi.m || nabla.r != chi.r {
        return Err(Error::Structural("connection and derivation live on different modules".into()));
    }
    let ext = b_ext(chi, bound);
    Ok(automorphism(&ext, &r_from_connection(nabla, chi, bound), chi))
}

/// The canonical automorphism when `χ̂: Ω¹ → I` is an isomorphism.
pub fn ak_auto_from_iso(chi: &DerivationChi, bound: u32) -> Result<AkAutomorphism> {
    let rm = r_from_iso(chi, bound)?;
    Ok(automorphism(&b_ext(chi, bound), &rm, chi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn chi_of(m: usize, rows: &[&[&str]]) -> DerivationChi {
        let names: Vec<String> = crate::poly::standard_names(m, 0);
        let chi = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(s, &names).unwrap()).collect())
            .collect();
        DerivationChi::new(m, rows.len(), chi).unwrap()
    }

    #[test]
    fn de_rham_squares_to_zero() {
        for m in 1..=3 {
            let k = Kahler { m, bound: 3 };
            assert!(k.d_squared_zero() && k.leibniz());
        }
    }

    #[test]
    fn zero_derivation_gives_identity() {
        let chi = DerivationChi::zero(1, 1);
        let a = ak_auto_from_connection(&Connection::trivial(1, 1), &chi, 3).unwrap();
        assert!(a.all() && a.is_identity, "{a:?}");
    }

    #[test]
    fn flat_connection_rank_one() {
        let chi = chi_of(1, &[&["1"]]);
        assert!(chi.check(3));
        let a = ak_auto_from_connection(&Connection::trivial(1, 1), &chi, 3).unwrap();
        assert!(a.all() && !a.is_identity, "{a:?}");
    }

    #[test]
    fn curved_connection_and_polynomial_chi() {
        let chi = chi_of(2, &[&["x1", "1"], &["0", "x2^2"]]);
        let names = crate::poly::standard_names(2, 0);
        let mut g = Connection::trivial(2, 2);
        g.gamma[0][0][1] = parse_poly("x1*x2", &names).unwrap();
        g.gamma[1][1][0] = parse_poly("3", &names).unwrap();
        assert!(g.leibniz(3));
        let a = ak_auto_from_connection(&g, &chi, 3).unwrap();
        assert!(a.all(), "{a:?}");
    }

    #[test]
    fn u_chi_is_an_algebra_automorphism() {
        let chi = chi_of(2, &[&["x1", "1"]]);
        let other = chi_of(2, &[&["x2", "x1^2"]]);
        assert!(u_chi_check(&chi, &other, 3).all());
    }

    #[test]
    fn iso_construction() {
        let a = ak_auto_from_iso(&chi_of(1, &[&["1"]]), 3).unwrap();
        assert!(a.all(), "{a:?}");
        let a = ak_auto_from_iso(&chi_of(2, &[&["1", "0"], &["0", "1+x1"]]), 3).unwrap();
        assert!(a.all(), "{a:?}");
        assert!(ak_auto_from_iso(&chi_of(2, &[&["x1", "0"], &["0", "1"]]), 3).is_err());
    }

    #[test]
    fn iso_r_is_conjugated_de_rham() {
        // χ̂ = id: R_0(a) = da read in I
        let rm = r_from_iso(&chi_of(1, &[&["1"]]), 3).unwrap();
        let x2 = Ext::monomial(1, &[], Poly::var(1, 0).pow(2)).unwrap();
        let want = Ext::monomial(1, &[0], Poly::var(1, 0).scale(&Q::from_integer(2.into()))).unwrap();
        assert_eq!(rm.apply(&x2), want);
    }
}
