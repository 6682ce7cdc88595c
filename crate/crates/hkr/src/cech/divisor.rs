//! The cycle class of a divisor (`r = 1`) by chasing a zig-zag of two-term
//! complexes of local systems through their Čech total complexes.
//!
//! `C_a = [N* → O_X̄]` resolves `O_X`; `C_b = [L → O ⊕ O]` where `L` is the
//! extension of `O` by `N*` glued by `(i, a) ↦ (i + δ_{αβ} a, a)` from chart
//! `α` to chart `β`; `C_c = [N* →0 O]` is the formal
//! side `N*[1] ⊕ O`. The class is the image of `1` under
//! `H⁰(C_c)^{-1} ∘ H⁰(C_a → C_b) ∘ H⁰(C_a → O)^{-1}`.

use super::cochain::unit_cochain;
use super::nerve::{coboundary_matrix, flatten, is_coboundary, unflatten, Cochain, LocalSystem, Nerve};
use crate::chain::{Complex, ComplexMap};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::{q, sign, Q};

/// `terms[k]` in degree `lo + k`, with constant differentials commuting with the gluing.
#[derive(Clone, Debug)]
pub struct SheafComplex {
    pub lo: i32,
    pub terms: Vec<LocalSystem>,
    pub d: Vec<Mat>,
}

fn kron_identity(n: usize, m: &Mat) -> Mat {
    Mat::block_diag(&vec![m.clone(); n])
}

fn commutes(nerve: &Nerve, src: &LocalSystem, tgt: &LocalSystem, f: &Mat) -> bool {
    (0..nerve.count(1)).all(|e| tgt.trans[e].mul(f) == f.mul(&src.trans[e]))
}

impl SheafComplex {
    pub fn new(nerve: &Nerve, lo: i32, terms: Vec<LocalSystem>, d: Vec<Mat>) -> Result<SheafComplex> {
        if d.len() + 1 != terms.len() {
            return Err(Error::Structural("need one differential between consecutive terms".into()));
        }
        for (k, m) in d.iter().enumerate() {
            if m.rows != terms[k + 1].dim || m.cols != terms[k].dim {
                return Err(Error::Structural(format!("differential {k} has the wrong shape")));
            }
            if !commutes(nerve, &terms[k], &terms[k + 1], m) {
                return Err(Error::Invariant(format!("differential {k} does not commute with the gluing")));
            }
            if k > 0 && !m.mul(&d[k - 1]).is_zero() {
                return Err(Error::Invariant("d² ≠ 0".into()));
            }
        }
        Ok(SheafComplex { lo, terms, d })
    }

    fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    /// Blocks `(l, c)` of total degree `t`, `c` ascending.
    fn blocks(&self, nerve: &Nerve, t: i32) -> Vec<(usize, usize)> {
        (self.lo..=self.hi())
            .filter_map(|c| {
                let l = t - c;
                (0..=nerve.depth() as i32).contains(&l).then(|| (l as usize, (c - self.lo) as usize))
            })
            .collect()
    }

    fn block_dim(&self, nerve: &Nerve, (l, k): (usize, usize)) -> usize {
        nerve.count(l) * self.terms[k].dim
    }

    fn offsets(&self, nerve: &Nerve, t: i32) -> Vec<((usize, usize), usize)> {
        let mut off = 0;
        self.blocks(nerve, t)
            .into_iter()
            .map(|b| {
                let o = off;
                off += self.block_dim(nerve, b);
                (b, o)
            })
            .collect()
    }

    fn dim(&self, nerve: &Nerve, t: i32) -> usize {
        self.blocks(nerve, t).iter().map(|&b| self.block_dim(nerve, b)).sum()
    }

    /// `δ + (−1)^l d` on `⊕_{l+c=t} C^l(terms[c])`.
    pub fn total(&self, nerve: &Nerve) -> Complex {
        let (lo, hi) = (self.lo, self.hi() + nerve.depth() as i32);
        let dims = (lo..=hi).map(|t| self.dim(nerve, t)).collect();
        let d = (lo..hi)
            .map(|t| {
                let mut m = Mat::zeros(self.dim(nerve, t + 1), self.dim(nerve, t));
                let tgt = self.offsets(nerve, t + 1);
                let find = |b: (usize, usize)| tgt.iter().find(|(x, _)| *x == b).map(|(_, o)| *o);
                for ((l, k), col) in self.offsets(nerve, t) {
                    if let Some(row) = find((l + 1, k)) {
                        m.paste(row, col, &coboundary_matrix(nerve, &self.terms[k], l));
                    }
                    if let Some(row) = find((l, k + 1)) {
                        m.paste(row, col, &kron_identity(nerve.count(l), &self.d[k]).scale(&sign(l as i64)));
                    }
                }
                m
            })
            .collect();
        Complex::new(lo, dims, d).expect("total differential squares to zero")
    }

    /// `I ⊗ f_c` between total complexes; `f[k]` acts on `terms[k]`.
    pub fn total_map(&self, nerve: &Nerve, tgt: &SheafComplex, f: &[Mat]) -> Result<ComplexMap> {
        if self.lo != tgt.lo || f.len() != self.terms.len() || tgt.terms.len() != self.terms.len() {
            return Err(Error::Structural("maps must be degree-preserving between equal ranges".into()));
        }
        for (k, m) in f.iter().enumerate() {
            if !commutes(nerve, &self.terms[k], &tgt.terms[k], m) {
                return Err(Error::Invariant(format!("component {k} does not commute with the gluing")));
            }
        }
        let (s, t) = (self.total(nerve), tgt.total(nerve));
        let map = ComplexMap::from_fn(&s, &t, 0, |deg| {
            let mut m = Mat::zeros(tgt.dim(nerve, deg), self.dim(nerve, deg));
            let rows = tgt.offsets(nerve, deg);
            for ((l, k), col) in self.offsets(nerve, deg) {
                let row = rows.iter().find(|(b, _)| *b == (l, k)).map(|(_, o)| *o).unwrap();
                m.paste(row, col, &kron_identity(nerve.count(l), &f[k]));
            }
            m
        });
        if !map.is_chain_map(&s, &t) {
            return Err(Error::Invariant("components do not form a chain map".into()));
        }
        Ok(map)
    }
}

#[derive(Clone, Debug)]
pub struct DivisorClass {
    /// The `O`-component, a 0-cochain.
    pub q0: Cochain,
    /// The `N*`-component, a 1-cochain.
    pub q1: Cochain,
    /// `q0 = 1` and `q1 − δ` is a coboundary.
    pub is_one_plus_delta: bool,
    /// `q1` is a coboundary.
    pub is_one: bool,
}

/// The class of a divisor whose first-order neighbourhood has extension class `δ ∈ H¹(N*)`.
pub fn divisor_class(nerve: &Nerve, delta: &Cochain) -> Result<DivisorClass> {
    let one = LocalSystem::constant(nerve, 1);
    let two = LocalSystem::constant(nerve, 2);
    if delta.len() != nerve.count(1) || delta.iter().any(|v| v.len() != 1) {
        return Err(Error::Structural("δ must be a scalar 1-cochain".into()));
    }
    let glue = delta
        .iter()
        .map(|v| Mat::from_rows(vec![vec![q(1), v[0].clone()], vec![q(0), q(1)]]))
        .collect();
    let l = LocalSystem::new(nerve, 2, glue).map_err(|_| Error::Invalid("δ is not a 1-cocycle".into()))?;

    let ca = SheafComplex::new(nerve, -1, vec![one.clone(), two.clone()], vec![Mat::from_i64(&[&[-1], &[0]])])?;
    let cb = SheafComplex::new(nerve, -1, vec![l, two], vec![Mat::from_i64(&[&[0, -1], &[0, -1]])])?;
    let cc = SheafComplex::new(nerve, -1, vec![one.clone(), one.clone()], vec![Mat::zeros(1, 1)])?;
    let ox = SheafComplex::new(nerve, -1, vec![LocalSystem::constant(nerve, 0), one], vec![Mat::zeros(1, 0)])?;

    let s_prime = Mat::from_i64(&[&[1], &[0]]);
    let a_to_o = ca.total_map(nerve, &ox, &[Mat::zeros(0, 1), Mat::from_i64(&[&[0, -1]])])?;
    let a_to_b = ca.total_map(nerve, &cb, &[s_prime.clone(), Mat::from_i64(&[&[0, 1], &[0, 0]])])?;
    let c_to_b = cc.total_map(nerve, &cb, &[s_prime, Mat::from_i64(&[&[0], &[1]])])?;

    let (ta, tb, tc, to) = (ca.total(nerve), cb.total(nerve), cc.total(nerve), ox.total(nerve));
    let a1 = a_to_o.induced(&ta, &to, 0);
    let b1 = a_to_b.induced(&ta, &tb, 0);
    let c1 = c_to_b.induced(&tc, &tb, 0);
    let (a1_inv, c1_inv) = match (a1.inverse(), c1.inverse()) {
        (Some(a), Some(c)) => (a, c),
        _ => return Err(Error::Invariant("a leg of the zig-zag is not a quasi-isomorphism".into())),
    };
    let ones = to.homology(0).proj.apply(&flatten(&unit_cochain(nerve)));
    let coords = c1_inv.mul(&b1).mul(&a1_inv).apply(&ones);
    let rep = tc.homology(0).reps.apply(&coords);

    // degree 0 of Tot(C_c): edges with N* first, then vertices with O
    let e = nerve.count(1);
    let q1 = unflatten(&rep[..e], 1);
    let q0 = unflatten(&rep[e..], 1);
    let diff: Cochain = q1.iter().zip(delta).map(|(a, b)| vec![&a[0] - &b[0]]).collect();
    let unit = q0 == unit_cochain(nerve);
    Ok(DivisorClass {
        is_one_plus_delta: unit && is_coboundary(nerve, &LocalSystem::constant(nerve, 1), 1, &diff),
        is_one: unit && is_coboundary(nerve, &LocalSystem::constant(nerve, 1), 1, &q1),
        q0,
        q1,
    })
}

/// Coordinates of `[δ]` in the fixed basis of `H¹(O)`.
pub fn class_coordinates(nerve: &Nerve, x: &Cochain) -> Option<Vec<Q>> {
    super::nerve::class_of(nerve, &LocalSystem::constant(nerve, 1), 1, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::nerve::{class_basis, coboundary};

    #[test]
    fn zero_delta_gives_one() {
        for n in [Nerve::two_chart(), Nerve::circle(), Nerve::torus()] {
            let d = vec![vec![q(0)]; n.count(1)];
            let c = divisor_class(&n, &d).unwrap();
            assert!(c.is_one && c.is_one_plus_delta, "{}", n.name);
        }
    }

    #[test]
    fn generator_on_the_circle() {
        let n = Nerve::circle();
        let g = &class_basis(&n, &LocalSystem::constant(&n, 1), 1)[0];
        let c = divisor_class(&n, g).unwrap();
        assert!(c.is_one_plus_delta);
        assert!(!c.is_one);
    }

    #[test]
    fn coboundary_delta_gives_one() {
        let n = Nerve::torus();
        let f: Cochain = (0..n.count(0)).map(|i| vec![q(i as i64 * i as i64 - 3)]).collect();
        let d = coboundary(&n, &LocalSystem::constant(&n, 1), 0, &f);
        let c = divisor_class(&n, &d).unwrap();
        assert!(c.is_one);
    }

    #[test]
    fn non_cocycle_delta_is_rejected() {
        let n = Nerve::torus();
        let mut d = vec![vec![q(0)]; n.count(1)];
        d[0] = vec![q(1)];
        assert!(divisor_class(&n, &d).is_err());
    }
}
