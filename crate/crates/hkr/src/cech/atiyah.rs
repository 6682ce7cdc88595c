//! Twists produced by changing the splitting by a derivation `χ` when `I`
//! has nontrivial transitions and each chart carries its own connection.
//!
//! Over `A = Q[x_1..x_m]≤D` on every chart, with `v_β = g_{αβ} v_α`:
//! `M_{αβ} = Λ^p∇_α − F′^{-1} Λ^p∇_β F` is a 1-cocycle with values in
//! `Hom(Λ^p I, Ω¹ ⊗ Λ^p I)`, and `λ_p = (χ̂_α ∧ id) ∘ M_{αβ}`. Every map is
//! realized in the weighted truncation (`dx_i` and `ȳ_k` weigh 1).

use super::delta::{delta_last_level, DeltaResult};
use super::nerve::{LocalSystem, Nerve};
use super::twist::{is_zero_cochain, lam, TwistedAk};
use crate::cech::cochain::HomCochain;
use crate::connections::{ak_auto_from_connection, r_from_connection, to_vec, Connection, DerivationChi};
use crate::error::{Error, Result};
use crate::exterior::{subsets, Ext};
use crate::extension::{wedge0, Extension};
use crate::linalg::Mat;
use crate::module::{realize_map, FreeMod};
use crate::poly::Poly;
use crate::rational::{qr, Q};

#[derive(Clone, Debug)]
pub struct AtiyahData {
    pub m: usize,
    pub r: usize,
    pub bound: u32,
    /// `g[e][row][col]` on edge `e = (α < β)`: `α`-coordinates to `β`-coordinates.
    pub g: Vec<Vec<Vec<Poly>>>,
    pub nabla: Vec<Connection>,
    pub chi: Vec<DerivationChi>,
}

/// `Ω¹ ⊗ Λ^p I`, label `i·C(r,p) + s` for `dx_i ⊗ ȳ_S`.
fn omega_lam(m: usize, r: usize, bound: u32, p: usize) -> FreeMod {
    FreeMod::new(m, bound, vec![p as u32 + 1; m * subsets(r, p).len()])
}

fn basis_ext(r: usize, s: &[usize], e: &[u8]) -> Ext<Poly> {
    Ext::monomial(r, s, Poly::monomial(e.to_vec(), Q::from_integer(1.into()))).unwrap()
}

impl AtiyahData {
    pub fn new(
        nerve: &Nerve,
        bound: u32,
        g: Vec<Vec<Vec<Poly>>>,
        nabla: Vec<Connection>,
        chi: Vec<DerivationChi>,
    ) -> Result<AtiyahData> {
        let (m, r) = match nabla.first() {
            Some(c) => (c.m, c.r),
            None => return Err(Error::Structural("need at least one chart".into())),
        };
        if nabla.len() != nerve.count(0) || chi.len() != nerve.count(0) || g.len() != nerve.count(1) {
            return Err(Error::Structural("one connection and χ per vertex, one transition per edge".into()));
        }
        if nabla.iter().any(|c| c.m != m || c.r != r) || chi.iter().any(|c| c.m != m || c.r != r) {
            return Err(Error::Structural("charts disagree on m or r".into()));
        }
        if g.iter().any(|x| x.len() != r || x.iter().any(|row| row.len() != r || row.iter().any(|c| c.nvars != m))) {
            return Err(Error::Structural(format!("transitions must be {r}×{r} over A")));
        }
        let data = AtiyahData { m, r, bound, g, nabla, chi };
        for (e, edge) in nerve.edges().iter().enumerate() {
            let (a, b) = (edge[0], edge[1]);
            for i in 0..m {
                let dx = Ext::monomial(m, &[i], Poly::one(m)).unwrap();
                if data.apply_g(e, &data.chi[a].hat(&dx)) != data.chi[b].hat(&dx) {
                    return Err(Error::Invariant(format!("χ on chart {b} is not g·χ on chart {a}")));
                }
            }
        }
        Ok(data)
    }

    /// `g` on `Λ^k I`, exact.
    fn apply_g(&self, e: usize, v: &Ext<Poly>) -> Ext<Poly> {
        let col = |k: usize| {
            let mut out = Ext::zero(self.r, 1);
            for l in 0..self.r {
                out.add_term(vec![l], self.g[e][l][k].clone());
            }
            out
        };
        let mut out = Ext::zero(self.r, v.deg);
        for (s, c) in &v.terms {
            let mut acc = Ext::monomial(self.r, &[], c.clone()).unwrap();
            for &k in s {
                acc = wedge0(&acc, &col(k));
            }
            out = out.add(&acc).unwrap();
        }
        out
    }

    fn lam(&self, p: usize) -> FreeMod {
        FreeMod::new(self.m, self.bound, vec![p as u32; subsets(self.r, p).len()])
    }

    pub fn extension(&self) -> Extension {
        Extension::new(self.r, self.m, self.bound, true).expect("r ≥ 1")
    }

    /// Realized `Λ^p g_e` on `Λ^p I`.
    pub fn frame(&self, e: usize, p: usize) -> Mat {
        let sets = subsets(self.r, p);
        let l = self.lam(p);
        realize_map(&l, &l, |lab, ex| to_vec(&self.apply_g(e, &basis_ext(self.r, &sets[lab], ex)), self.m))
    }

    /// Realized `id ⊗ Λ^p g_e` on `Ω¹ ⊗ Λ^p I`.
    fn frame_omega(&self, e: usize, p: usize) -> Mat {
        let sets = subsets(self.r, p);
        let c = sets.len();
        let om = omega_lam(self.m, self.r, self.bound, p);
        realize_map(&om, &om, |lab, ex| {
            let (i, s) = (lab / c, lab % c);
            let img = to_vec(&self.apply_g(e, &basis_ext(self.r, &sets[s], ex)), self.m);
            let mut out = om.zero();
            for (t, v) in img.into_iter().enumerate() {
                out[i * c + t] = v;
            }
            out
        })
    }

    /// Realized `Λ^p ∇_α: Λ^p I → Ω¹ ⊗ Λ^p I`.
    pub fn nabla_power(&self, a: usize, p: usize) -> Mat {
        let sets = subsets(self.r, p);
        realize_map(&self.lam(p), &omega_lam(self.m, self.r, self.bound, p), |lab, ex| {
            self.nabla[a]
                .apply_power(&basis_ext(self.r, &sets[lab], ex))
                .iter()
                .flat_map(|comp| to_vec(comp, self.m))
                .collect()
        })
    }

    /// Realized `χ̂_α ∧ id: Ω¹ ⊗ Λ^p I → Λ^{p+1} I`.
    fn chi_wedge(&self, a: usize, p: usize) -> Mat {
        let sets = subsets(self.r, p);
        let c = sets.len();
        realize_map(&omega_lam(self.m, self.r, self.bound, p), &self.lam(p + 1), |lab, ex| {
            let (i, s) = (lab / c, lab % c);
            let dx = Ext::monomial(self.m, &[i], Poly::one(self.m)).unwrap();
            to_vec(&wedge0(&self.chi[a].hat(&dx), &basis_ext(self.r, &sets[s], ex)), self.m)
        })
    }

    /// `M_{αβ}` at level `p`, in the chart of `α`.
    pub fn m_cocycle(&self, nerve: &Nerve, p: usize) -> HomCochain {
        nerve
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| {
                let fo_inv = self.frame_omega(e, p).inverse().expect("g is invertible over A");
                self.nabla_power(edge[0], p)
                    .sub(&fo_inv.mul(&self.nabla_power(edge[1], p)).mul(&self.frame(e, p)))
            })
            .collect()
    }

    /// `M_{αβ} + F′_{αβ}^{-1} M_{βγ} F_{αβ} = M_{αγ}` on every triangle.
    pub fn m_is_cocycle(&self, nerve: &Nerve, p: usize) -> bool {
        let mm = self.m_cocycle(nerve, p);
        nerve.simplices.get(2).is_none_or(|tri| {
            tri.iter().all(|t| {
                let e = |a: usize, b: usize| nerve.edge_index(a, b).unwrap();
                let (ab, bc, ac) = (e(t[0], t[1]), e(t[1], t[2]), e(t[0], t[2]));
                let fo_inv = self.frame_omega(ab, p).inverse().unwrap();
                mm[ab].add(&fo_inv.mul(&mm[bc]).mul(&self.frame(ab, p))) == mm[ac]
            })
        })
    }

    /// `λ_p = (χ̂_α ∧ id) ∘ M_{αβ}` for `p < r`.
    pub fn twists(&self, nerve: &Nerve) -> Vec<HomCochain> {
        (0..self.r)
            .map(|p| {
                self.m_cocycle(nerve, p)
                    .iter()
                    .zip(nerve.edges())
                    .map(|(m, edge)| self.chi_wedge(edge[0], p).mul(m))
                    .collect()
            })
            .collect()
    }

    pub fn frames(&self, nerve: &Nerve) -> Result<Vec<LocalSystem>> {
        (0..=self.r)
            .map(|p| LocalSystem::new(nerve, self.lam(p).dim(), (0..nerve.count(1)).map(|e| self.frame(e, p)).collect()))
            .collect()
    }

    /// The `λ`-twisted complex; construction checks the cocycle law and `d̂`.
    pub fn twisted(&self, nerve: &Nerve) -> Result<TwistedAk> {
        TwistedAk::new(nerve, self.extension(), self.frames(nerve)?, self.twists(nerve))
    }

    /// Same frames, zero twists.
    pub fn untwisted(&self, nerve: &Nerve) -> Result<TwistedAk> {
        let ext = self.extension();
        let zero = (0..self.r)
            .map(|p| vec![Mat::zeros(lam(&ext, p + 1).dim(), lam(&ext, p).dim()); nerve.count(1)])
            .collect();
        TwistedAk::new(nerve, ext, self.frames(nerve)?, zero)
    }

    /// `F^{-1} φ_β F φ_α^{-1} = [[1, λ_p], [0, 1]]` on `Λ^{p+1}B`, where
    /// `φ_α(i, j) = (i − R_α j, j)` with `R_α = (χ̂_α ∧ id) ∘ Λ^p ∇_α`.
    pub fn conjugation_holds(&self, nerve: &Nerve) -> bool {
        let rs: Vec<_> = (0..nerve.count(0))
            .map(|a| r_from_connection(&self.nabla[a], &self.chi[a], self.bound))
            .collect();
        let lambda = self.twists(nerve);
        (0..self.r).all(|p| {
            let (ni, nj) = (self.lam(p + 1).dim(), self.lam(p).dim());
            let phi = |a: usize, sgn: i64| {
                let mut x = Mat::identity(ni + nj);
                x.paste(0, ni, &rs[a].maps[p].scale(&Q::from_integer(sgn.into())));
                x
            };
            nerve.edges().iter().enumerate().all(|(e, edge)| {
                let f = Mat::block_diag(&[self.frame(e, p + 1), self.frame(e, p)]);
                let lhs = f.inverse().unwrap().mul(&phi(edge[1], -1)).mul(&f).mul(&phi(edge[0], 1));
                let mut want = Mat::identity(ni + nj);
                want.paste(0, ni, &lambda[p][e]);
                lhs == want
            })
        })
    }

    /// Each `φ_α^{-1}` is a `u_χ`-semilinear automorphism of `P` and `Q`.
    pub fn local_automorphisms_hold(&self) -> Result<bool> {
        for (n, c) in self.nabla.iter().zip(&self.chi) {
            if !ak_auto_from_connection(n, c, self.bound)?.all() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug)]
pub struct Codim2 {
    pub theta: HomCochain,
    pub delta: DeltaResult,
    /// `Δ_{2,1} = θ` exactly and the other off-diagonal entries vanish.
    pub matches: bool,
}

/// `θ(χ) = ½ λ_1` and the comparison matrix from the `χ`-twisted complex to
/// the untwisted one, for `r = 2`.
pub fn codim2_theta(nerve: &Nerve, data: &AtiyahData) -> Result<Codim2> {
    if data.r != 2 {
        return Err(Error::Invalid(format!("the codimension-2 formula needs r = 2, got {}", data.r)));
    }
    let src = data.twisted(nerve)?;
    if !is_zero_cochain(&src.twist[0]) {
        return Err(Error::Invariant("λ_0 must vanish when χ_β = g χ_α".into()));
    }
    let theta: HomCochain = src.twist[1].iter().map(|x| x.scale(&qr(1, 2))).collect();
    let delta = delta_last_level(nerve, src, data.untwisted(nerve)?)?;
    let matches = delta.matrix.entry(2, 1) == &theta
        && is_zero_cochain(delta.matrix.entry(1, 0))
        && is_zero_cochain(delta.matrix.entry(2, 0));
    Ok(Codim2 { theta, delta, matches })
}

/// Two charts, one variable, `r = 2`: `g = [[1, x], [0, 1]]`, trivial
/// connection on chart 0, `∇ȳ_0 = x dx ⊗ ȳ_1` on chart 1, `χ̂(dx) = ȳ_0`.
pub fn two_chart_example(chi_scale: i64, flat: bool) -> (Nerve, AtiyahData) {
    let nerve = Nerve::two_chart();
    let (m, r) = (1, 2);
    let x = Poly::var(m, 0);
    let one = Poly::one(m);
    let zero = Poly::zero(m);
    let g = if flat {
        vec![vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]]]
    } else {
        vec![vec![vec![one.clone(), x.clone()], vec![zero.clone(), one.clone()]]]
    };
    let mut gamma = vec![vec![vec![Poly::zero(m); r]; r]; m];
    gamma[0][0][1] = x;
    let curved = Connection::new(m, r, gamma).unwrap();
    let nabla = if flat {
        vec![curved.clone(), curved]
    } else {
        vec![Connection::trivial(m, r), curved]
    };
    let c = Poly::constant(m, Q::from_integer(chi_scale.into()));
    let chi = DerivationChi::new(m, r, vec![vec![c], vec![zero]]).unwrap();
    let data = AtiyahData::new(&nerve, 3, g, nabla, vec![chi.clone(), chi]).unwrap();
    (nerve, data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_data_gives_zero_twists() {
        let nerve = Nerve::circle();
        let (m, r) = (1, 2);
        let id = vec![vec![Poly::one(m), Poly::zero(m)], vec![Poly::zero(m), Poly::one(m)]];
        let chi = DerivationChi::new(m, r, vec![vec![Poly::one(m)], vec![Poly::zero(m)]]).unwrap();
        let data = AtiyahData::new(&nerve, 2, vec![id; 3], vec![Connection::trivial(m, r); 3], vec![chi; 3]).unwrap();
        assert!(data.twists(&nerve).iter().all(is_zero_cochain));
    }

    #[test]
    fn unit_transitions_on_the_circle() {
        // r = m = 1, g_{01} = 1 + x and the rest identity: no triangles, so any units glue
        let nerve = Nerve::circle();
        let (m, r) = (1, 1);
        let x = Poly::var(m, 0);
        let g = vec![
            vec![vec![&Poly::one(m) + &x]],
            vec![vec![Poly::one(m)]],
            vec![vec![Poly::one(m)]],
        ];
        // χ must vanish: g_{12} = g_{02} = 1 would force (1 + x)χ = χ
        let chis = vec![DerivationChi::zero(m, r); 3];
        let nabla = vec![Connection::trivial(m, r); 3];
        let data = AtiyahData::new(&nerve, 3, g, nabla, chis).unwrap();
        assert!(data.m_is_cocycle(&nerve, 0) && data.m_is_cocycle(&nerve, 1));
        // M_{01} ȳ = ∇ȳ − (1+x)^{-1} ∇((1+x)ȳ) = −(1+x)^{-1} dx ⊗ ȳ; Ω¹ ⊗ I keeps degree ≤ 1
        let mm = data.m_cocycle(&nerve, 1);
        let y = data.lam(1).realize(&[Poly::one(m)]);
        let mut want = Poly::zero(m);
        want.add_term(vec![0], Q::from_integer((-1).into()));
        want.add_term(vec![1], Q::from_integer(1.into()));
        assert_eq!(mm[0].apply(&y), omega_lam(m, r, 3, 1).realize(&[want]));
        assert!(mm[1].is_zero() && mm[2].is_zero());
        assert!(data.conjugation_holds(&nerve));
    }

    #[test]
    fn twisted_complex_and_conjugation_on_two_charts() {
        let (nerve, data) = two_chart_example(1, false);
        assert!(data.m_is_cocycle(&nerve, 1));
        assert!(data.conjugation_holds(&nerve));
        assert!(data.local_automorphisms_hold().unwrap());
        assert!(data.twisted(&nerve).is_ok());
        assert!(!is_zero_cochain(&data.twists(&nerve)[1]));
    }

    #[test]
    fn incompatible_chi_is_rejected() {
        let nerve = Nerve::two_chart();
        let (m, r) = (1, 2);
        let x = Poly::var(m, 0);
        let g = vec![vec![vec![Poly::one(m), Poly::zero(m)], vec![x, Poly::one(m)]]];
        let chi = DerivationChi::new(m, r, vec![vec![Poly::one(m)], vec![Poly::zero(m)]]).unwrap();
        let err = AtiyahData::new(&nerve, 2, g, vec![Connection::trivial(m, r); 2], vec![chi.clone(), chi]);
        assert!(matches!(err, Err(Error::Invariant(_))));
    }

    #[test]
    fn codim2_matrix() {
        let (nerve, data) = two_chart_example(1, false);
        let c = codim2_theta(&nerve, &data).unwrap();
        assert!(c.delta.verified(), "{:?}", c.delta.chain_defect);
        assert!(c.matches);
        assert!(!is_zero_cochain(&c.theta));

        let (nerve, zero_chi) = two_chart_example(0, false);
        let c0 = codim2_theta(&nerve, &zero_chi).unwrap();
        assert!(c0.matches && is_zero_cochain(&c0.theta));

        let (nerve, flat) = two_chart_example(1, true);
        let cf = codim2_theta(&nerve, &flat).unwrap();
        assert!(cf.matches && is_zero_cochain(&cf.theta));
    }
}
