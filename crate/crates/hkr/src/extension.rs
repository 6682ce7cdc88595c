//! The trivial extension `B = I ⊕ A` and the dg-algebra structure on the
//! shifted exterior algebra of `B`.
//!
//! `Λ^k B` is always stored split as `(Λ^k I, Λ^{k−1} I)` via
//! `(i, j) ↦ i + 1_B ∧ j`. In the shifted algebra `Λ^k B` sits in degree `k − 1`.

use num_traits::One;

use crate::error::{Error, Result};
use crate::exterior::{koszul_terms, merge, subsets, Ext, Idx};
use crate::linalg::Mat;
use crate::module::{realize_map, Elem, FreeMod};
use crate::poly::{Exps, Poly};
use crate::rational::{q, sign, Q};

/// Wedge that returns zero instead of failing past the top degree.
pub fn wedge0(a: &Ext<Poly>, b: &Ext<Poly>) -> Ext<Poly> {
    if a.deg + b.deg > a.rank {
        return Ext::zero(a.rank, a.deg + b.deg);
    }
    a.wedge(b).expect("same rank")
}

/// An element of `Λ^k B`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitElem {
    pub k: usize,
    pub i: Ext<Poly>,
    /// Degree `k − 1`; empty when `k = 0`.
    pub j: Ext<Poly>,
}

impl SplitElem {
    pub fn zero(r: usize, k: usize) -> SplitElem {
        SplitElem {
            k,
            i: Ext::zero(r, k),
            j: Ext::zero(r, k.saturating_sub(1)),
        }
    }

    pub fn new(i: Ext<Poly>, j: Ext<Poly>) -> SplitElem {
        debug_assert_eq!(i.deg, j.deg + 1);
        SplitElem { k: i.deg, i, j }
    }

    pub fn is_zero(&self) -> bool {
        self.i.is_zero() && self.j.is_zero()
    }

    pub fn add(&self, o: &SplitElem) -> SplitElem {
        SplitElem {
            k: self.k,
            i: self.i.add(&o.i).expect("same home"),
            j: self.j.add(&o.j).expect("same home"),
        }
    }

    pub fn scale(&self, c: &Q) -> SplitElem {
        SplitElem {
            k: self.k,
            i: self.i.scale(c),
            j: self.j.scale(c),
        }
    }

    pub fn mul_poly(&self, a: &Poly) -> SplitElem {
        SplitElem {
            k: self.k,
            i: self.i.mul_coeff(a),
            j: self.j.mul_coeff(a),
        }
    }
}

/// An element `(i, a)` of `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct BElem {
    pub i: Ext<Poly>,
    pub a: Poly,
}

/// `B = I ⊕ A` with `I` free of rank `r` over `A = Q[x_1..x_m]` truncated at `bound`.
///
/// When `weighted`, generators of `I` carry weight 1 for truncation.
#[derive(Clone, Debug)]
pub struct Extension {
    pub r: usize,
    pub nvars: usize,
    pub bound: u32,
    pub weighted: bool,
}

impl Extension {
    pub fn new(r: usize, nvars: usize, bound: u32, weighted: bool) -> Result<Extension> {
        if r == 0 {
            return Err(Error::Invalid("the extension needs r ≥ 1".into()));
        }
        Ok(Extension {
            r,
            nvars,
            bound,
            weighted,
        })
    }

    pub fn unit_b(&self) -> BElem {
        BElem {
            i: Ext::zero(self.r, 1),
            a: Poly::one(self.nvars),
        }
    }

    pub fn b_mul(&self, x: &BElem, y: &BElem) -> BElem {
        BElem {
            i: x.i.mul_coeff(&y.a).add(&y.i.mul_coeff(&x.a)).unwrap(),
            a: &x.a * &y.a,
        }
    }

    pub fn b_as_split(&self, b: &BElem) -> SplitElem {
        SplitElem::new(b.i.clone(), Ext::monomial(self.r, &[], b.a.clone()).unwrap())
    }

    pub fn split_as_b(&self, x: &SplitElem) -> BElem {
        assert_eq!(x.k, 1);
        BElem {
            i: x.i.clone(),
            a: x.j.get(&[]).cloned().unwrap_or_else(|| Poly::zero(self.nvars)),
        }
    }

    /// Generator labels of `Λ^k B`: `Λ^k I` subsets, then `Λ^{k−1} I` subsets.
    pub fn labels(&self, k: usize) -> (Vec<Idx>, Vec<Idx>) {
        let js = if k == 0 { vec![] } else { subsets(self.r, k - 1) };
        (subsets(self.r, k), js)
    }

    pub fn module(&self, k: usize) -> FreeMod {
        let (is, js) = self.labels(k);
        let w = |s: &Idx| if self.weighted { s.len() as u32 } else { 0 };
        let weights = is.iter().map(w).chain(js.iter().map(w)).collect();
        FreeMod::new(self.nvars, self.bound, weights)
    }

    pub fn to_elem(&self, x: &SplitElem) -> Elem {
        let (is, js) = self.labels(x.k);
        let z = Poly::zero(self.nvars);
        is.iter()
            .map(|s| x.i.get(s).cloned().unwrap_or_else(|| z.clone()))
            .chain(js.iter().map(|s| x.j.get(s).cloned().unwrap_or_else(|| z.clone())))
            .collect()
    }

    pub fn from_elem(&self, k: usize, v: &[Poly]) -> SplitElem {
        let (is, js) = self.labels(k);
        let mut x = SplitElem::zero(self.r, k);
        for (n, s) in is.iter().enumerate() {
            x.i.add_term(s.clone(), v[n].clone());
        }
        for (n, s) in js.iter().enumerate() {
            x.j.add_term(s.clone(), v[is.len() + n].clone());
        }
        x
    }

    /// The generator with label index `l` of `Λ^k B`, times monomial `e`.
    pub fn basis(&self, k: usize, l: usize, e: &Exps) -> SplitElem {
        let m = self.module(k);
        let mut v = m.zero();
        v[l] = Poly::monomial(e.clone(), Q::one());
        self.from_elem(k, &v)
    }

    pub fn realize(&self, x: &SplitElem) -> Vec<Q> {
        self.module(x.k).realize(&self.to_elem(x))
    }

    /// Koszul differential `d_k` of `pr_2`: `(i, j) ↦ (j, 0)`.
    pub fn d(&self, x: &SplitElem) -> SplitElem {
        if x.k == 0 {
            return SplitElem::zero(self.r, 0);
        }
        SplitElem {
            k: x.k - 1,
            i: x.j.clone(),
            j: Ext::zero(self.r, x.k.saturating_sub(2)),
        }
    }

    /// `d̂` on `Λ^{k+1} B` (shifted degree `k`) is `k · d_{k+1}`.
    pub fn hat_d(&self, x: &SplitElem) -> SplitElem {
        self.d(x).scale(&q(x.k as i64 - 1))
    }

    /// The product `*`; `x ∈ Λ^{k+1} B`, `y ∈ Λ^{l+1} B`.
    pub fn star(&self, x: &SplitElem, y: &SplitElem) -> SplitElem {
        // Λ^0 B is not part of the shifted algebra; only its zero reaches here
        if x.k == 0 || y.k == 0 {
            return SplitElem::zero(self.r, (x.k + y.k).saturating_sub(1));
        }
        let k = x.k as i64 - 1;
        let i = wedge0(&x.i, &y.j)
            .add(&wedge0(&x.j, &y.i).scale(&sign(k)))
            .unwrap();
        let j = wedge0(&x.j, &y.j);
        SplitElem {
            k: x.k + y.k - 1,
            i,
            j,
        }
    }

    /// `B`-module structure on `Λ^k B`.
    pub fn act(&self, b: &BElem, x: &SplitElem) -> SplitElem {
        let mut i = x.i.mul_coeff(&b.a);
        if x.k > 0 {
            i = i.add(&wedge0(&b.i, &x.j)).unwrap();
        }
        SplitElem {
            k: x.k,
            i,
            j: x.j.mul_coeff(&b.a),
        }
    }

    /// `π: ℬ → A`, nonzero only on `ℬ_0 = B`.
    pub fn pi(&self, x: &SplitElem) -> Poly {
        if x.k != 1 {
            return Poly::zero(self.nvars);
        }
        x.j.get(&[]).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// The unsplit view in `Λ^k` of the rank `r + 1` module with `1_B = e_r`.
    pub fn unsplit(&self, x: &SplitElem) -> Ext<Poly> {
        let mut out = Ext::zero(self.r + 1, x.k);
        for (s, c) in &x.i.terms {
            out.add_term(s.clone(), c.clone());
        }
        for (t, c) in &x.j.terms {
            let (sg, u) = merge(&[self.r], t).unwrap();
            out.add_term(u, c.scale(&q(sg)));
        }
        out
    }

    pub fn split(&self, x: &Ext<Poly>) -> SplitElem {
        let mut out = SplitElem::zero(self.r, x.deg);
        for (s, c) in &x.terms {
            if s.last() == Some(&self.r) {
                let t: Idx = s[..s.len() - 1].to_vec();
                let (sg, _) = merge(&[self.r], &t).unwrap();
                out.j.add_term(t, c.scale(&q(sg)));
            } else {
                out.i.add_term(s.clone(), c.clone());
            }
        }
        out
    }

    /// Koszul differential of `pr_2` on the unsplit exterior algebra.
    pub fn d_unsplit(&self, x: &Ext<Poly>) -> Ext<Poly> {
        let mut out = Ext::zero(self.r + 1, x.deg.saturating_sub(1));
        for (s, c) in &x.terms {
            for (k, sg, rest) in koszul_terms(s) {
                if k == self.r {
                    out.add_term(rest, c.scale(&q(sg)));
                }
            }
        }
        out
    }

    /// `a*a′ = a.da′ + (−1)^{|a|+1} da.a′ + (−1)^{|a|} da.1_B.da′` on unsplit elements.
    ///
    /// `|a|` is the exterior degree here. Reading it as the shifted degree
    /// gives `1_B * i = −i`, contradicting that `*` restricts to the product of `B`.
    pub fn star_unsplit(&self, a: &Ext<Poly>, b: &Ext<Poly>) -> Ext<Poly> {
        let deg_a = a.deg as i64;
        let da = self.d_unsplit(a);
        let db = self.d_unsplit(b);
        let one_b = Ext::monomial(self.r + 1, &[self.r], Poly::one(self.nvars)).unwrap();
        let t1 = wedge0(a, &db);
        let t2 = wedge0(&da, b).scale(&sign(deg_a + 1));
        let t3 = wedge0(&wedge0(&da, &one_b), &db).scale(&sign(deg_a));
        t1.add(&t2).unwrap().add(&t3).unwrap()
    }

    /// Realized matrix of `d̂` from `Λ^{k} B` to `Λ^{k−1} B`, scaled by `c`.
    pub fn d_matrix(&self, k: usize, c: &Q) -> Mat {
        let (src, tgt) = (self.module(k), self.module(k - 1));
        realize_map(&src, &tgt, |l, e| {
            let x = self.basis(k, l, e);
            self.to_elem(&self.d(&x).scale(c))
        })
    }
}

/// Outcome of the exhaustive dg-algebra checks on realized bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgBattery {
    pub associative: bool,
    pub leibniz: bool,
    pub d_squared: bool,
    pub matches_unsplit: bool,
    pub degree_zero_is_b_product: bool,
    pub module_associative: bool,
    pub pi_multiplicative: bool,
    pub cases: usize,
}

impl DgBattery {
    pub fn all(&self) -> bool {
        self.associative
            && self.leibniz
            && self.d_squared
            && self.matches_unsplit
            && self.degree_zero_is_b_product
            && self.module_associative
            && self.pi_multiplicative
    }
}

impl Extension {
    /// Every realized basis vector of `Λ^k B`.
    pub fn basis_elems(&self, k: usize) -> Vec<SplitElem> {
        let m = self.module(k);
        m.basis().iter().map(|(l, e)| self.basis(k, *l, e)).collect()
    }

    fn same(&self, x: &SplitElem, y: &SplitElem) -> bool {
        x.k == y.k && self.realize(x) == self.realize(y)
    }
}

/// Associativity and Leibniz for `*`, `d̂² = 0`, agreement of the split
/// product with the defining formula, and the `B`-module axioms.
pub fn dg_battery(ext: &Extension) -> DgBattery {
    use rayon::prelude::*;
    let r = ext.r;
    let all: Vec<SplitElem> = (1..=r + 1).flat_map(|k| ext.basis_elems(k)).collect();
    let zero_ok = |x: &SplitElem, y: &SplitElem, z: &SplitElem| -> bool {
        let lhs = ext.star(&ext.star(x, y), z);
        let rhs = ext.star(x, &ext.star(y, z));
        ext.same(&lhs, &rhs)
    };
    let associative = all
        .par_iter()
        .all(|x| all.iter().all(|y| all.iter().all(|z| zero_ok(x, y, z))));
    let mut cases = all.len().pow(3);
    let leibniz = all.par_iter().all(|x| {
        all.iter().all(|y| {
            let lhs = ext.hat_d(&ext.star(x, y));
            let mut rhs = SplitElem::zero(r, lhs.k);
            let dx = ext.hat_d(x);
            if !dx.is_zero() {
                rhs = rhs.add(&ext.star(&dx, y));
            }
            let dy = ext.hat_d(y);
            if !dy.is_zero() {
                rhs = rhs.add(&ext.star(x, &dy).scale(&sign(x.k as i64 - 1)));
            }
            ext.same(&lhs, &rhs)
        })
    });
    let d_squared = all.iter().all(|x| {
        let dd = ext.hat_d(&ext.hat_d(x));
        dd.is_zero() || ext.realize(&dd).iter().all(num_traits::Zero::is_zero)
    });
    let matches_unsplit = all.par_iter().all(|x| {
        let d_ok = ext.split(&ext.d_unsplit(&ext.unsplit(x))) == ext.d(x);
        d_ok && all.iter().all(|y| {
            let prod = ext.split(&ext.star_unsplit(&ext.unsplit(x), &ext.unsplit(y)));
            ext.same(&prod, &ext.star(x, y))
        })
    });
    cases += 2 * all.len().pow(2);
    let b_basis = ext.basis_elems(1);
    let degree_zero_is_b_product = b_basis.iter().all(|x| {
        b_basis.iter().all(|y| {
            let prod = ext.b_mul(&ext.split_as_b(x), &ext.split_as_b(y));
            ext.same(&ext.star(x, y), &ext.b_as_split(&prod))
        })
    });
    let module_associative = (0..=r + 1).all(|k| {
        ext.basis_elems(k).iter().all(|m| {
            b_basis.iter().all(|b1| {
                b_basis.iter().all(|b2| {
                    let (b1, b2) = (ext.split_as_b(b1), ext.split_as_b(b2));
                    let lhs = ext.act(&ext.b_mul(&b1, &b2), m);
                    let rhs = ext.act(&b1, &ext.act(&b2, m));
                    ext.same(&lhs, &rhs)
                })
            })
        })
    });
    let a_mod = FreeMod::new(ext.nvars, ext.bound, vec![0]);
    let pi_multiplicative = all.iter().all(|x| {
        all.iter().all(|y| {
            let lhs = ext.pi(&ext.star(x, y));
            let rhs = &ext.pi(x) * &ext.pi(y);
            a_mod.realize(&[lhs]) == a_mod.realize(&[rhs])
        })
    });
    DgBattery {
        associative,
        leibniz,
        d_squared,
        matches_unsplit,
        degree_zero_is_b_product,
        module_associative,
        pi_multiplicative,
        cases,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(r: usize) -> Extension {
        Extension::new(r, 0, 0, false).unwrap()
    }

    #[test]
    fn battery_passes_over_rationals() {
        for r in 1..=2 {
            let b = dg_battery(&ext(r));
            assert!(b.all(), "{b:?}");
        }
    }

    #[test]
    fn rejects_rank_zero() {
        assert!(Extension::new(0, 0, 0, false).is_err());
    }

    #[test]
    fn unit_acts_trivially() {
        let e = ext(2);
        let x = e.basis(2, 1, &vec![]);
        assert_eq!(e.act(&e.unit_b(), &x), x);
    }

    #[test]
    fn split_unsplit_roundtrip() {
        let e = ext(3);
        for k in 0..=4 {
            let m = e.module(k);
            for l in 0..m.rank() {
                let x = e.basis(k, l, &vec![]);
                assert_eq!(e.split(&e.unsplit(&x)), x);
            }
        }
    }

    #[test]
    fn star_in_degree_zero_is_b_product() {
        let e = ext(2);
        for l1 in 0..3 {
            for l2 in 0..3 {
                let x = e.basis(1, l1, &vec![]);
                let y = e.basis(1, l2, &vec![]);
                let prod = e.b_mul(&e.split_as_b(&x), &e.split_as_b(&y));
                assert_eq!(e.star(&x, &y), e.b_as_split(&prod));
            }
        }
    }
}
