//! The comparison matrix `Δ(μ, λ)` between twisted AK complexes, computed by
//! building `T: P_λ → 𝒞(P_μ)`, checking it is a morphism of complexes, and
//! reducing it modulo `I`.
//!
//! Two shapes have an explicit `T`: wedge-type twists `𝔠_p = c_p ∧ ·`, where
//! `T` comes from the `η` recursion, and twists differing only at level
//! `r − 1`. Other shapes are reported as unsupported.

use serde::Serialize;

use super::cochain::{add, cup, ext_dim, scale, sub, to_ext, unit_cochain, zero_cochain, HomCochain};
use super::nerve::{cech_complex, unflatten, Cochain, Nerve};
use super::twist::{
    augmentation_compatible, b_linear, chain_defect, entry_is_cocycle, reduce, wedge_twists, DeltaMatrix, TMorphism,
    TwistedAk,
};
use crate::error::{Error, Result};
use crate::exterior::wedge_by;
use crate::linalg::Mat;
use crate::rational::{q, qr, sign, Q};

/// Twists `λ_0, …, λ_{r−1}` with constant coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum TwistSpec {
    /// `I`-valued 1-cocycles `c_p`, acting by `c_p ∧ ·`.
    Wedge(Vec<Cochain>),
    /// Hom-valued 1-cocycles `Λ^p I → Λ^{p+1} I`, one matrix per edge.
    Hom(Vec<HomCochain>),
}

impl TwistSpec {
    pub fn zero(nerve: &Nerve, r: usize) -> TwistSpec {
        TwistSpec::Wedge(vec![zero_cochain(nerve, 1, r); r])
    }

    pub fn homs(&self, r: usize) -> Vec<HomCochain> {
        match self {
            TwistSpec::Wedge(c) => wedge_twists(r, c),
            TwistSpec::Hom(h) => h.clone(),
        }
    }

    pub fn complex(&self, nerve: &Nerve, r: usize) -> Result<TwistedAk> {
        TwistedAk::constant(nerve, r, self.homs(r))
    }
}

/// `η_{i,i} = 1`, `η_{i+1,j} = (1/(i+1)) [j η_{i,j−1} + (−1)^{i−j} (c_j − d_i) ∧ η_{i,j}]`
/// for `0 ≤ j ≤ i`, the first term vanishing at `j = 0`.
///
/// The `1/(i+1)` at `j = 0` is forced by `d̂_{i+1} = (i+1) d`; without it `T`
/// fails the chain identity as soon as cups into Čech degree 2 are nonzero.
///
/// `eta[i][j]` is a `Λ^{i−j} I`-valued cochain of degree `i − j`.
pub fn eta_recursion(nerve: &Nerve, r: usize, c: &[Cochain], d: &[Cochain]) -> Vec<Vec<Cochain>> {
    let mut eta: Vec<Vec<Cochain>> = vec![vec![unit_cochain(nerve)]];
    for i in 0..r {
        let mut row = Vec::with_capacity(i + 2);
        let step = |j: usize| -> Cochain {
            let diff = sub(&c[j], &d[i]);
            cup(nerve, r, (1, 1, &diff), (i - j, i - j, &eta[i][j]))
        };
        row.push(scale(&step(0), &(sign(i as i64) * qr(1, i as i64 + 1))));
        for j in 1..=i {
            let a = scale(&eta[i][j - 1], &q(j as i64));
            let b = scale(&step(j), &sign((i - j) as i64));
            row.push(scale(&add(&a, &b), &qr(1, i as i64 + 1)));
        }
        row.push(unit_cochain(nerve));
        eta.push(row);
    }
    eta
}

/// The representative of `[c]` in the fixed basis of `H^1(I)`.
pub fn canonical_rep(nerve: &Nerve, r: usize, c: &Cochain) -> Result<Cochain> {
    let ls = super::cochain::ext_system(nerve, r, 1);
    let h = cech_complex(nerve, &ls).homology(1);
    if !super::nerve::is_cocycle(nerve, &ls, 1, c) {
        return Err(Error::Invalid("twist is not a 1-cocycle".into()));
    }
    let coords = h.proj.apply(&super::nerve::flatten(c));
    Ok(unflatten(&h.reps.apply(&coords), r))
}

/// The recursion run on canonical representatives: the classes `ζ_{i,j}`.
pub fn zeta_recursion(nerve: &Nerve, r: usize, c: &[Cochain], d: &[Cochain]) -> Result<Vec<Vec<Cochain>>> {
    let canon = |x: &[Cochain]| x.iter().map(|v| canonical_rep(nerve, r, v)).collect::<Result<Vec<_>>>();
    Ok(eta_recursion(nerve, r, &canon(c)?, &canon(d)?))
}

/// `x ∧ ·` on `Λ^p I`, for `x` of exterior degree `a`.
fn wedge_with(r: usize, a: usize, x: &[Q], p: usize) -> Mat {
    if a + p > r {
        return Mat::zeros(0, ext_dim(r, p));
    }
    wedge_by(&to_ext(r, a, x), p).mat
}

/// `S_{n,l,ᾱ}(i, j) = ((−1)^l η_{n+l,n,ᾱ} ∧ i, η_{n+l,n,ᾱ} ∧ j)`.
pub fn wedge_t(nerve: &Nerve, src: &TwistedAk, tgt: &TwistedAk, eta: &[Vec<Cochain>]) -> TMorphism {
    let r = src.r();
    let mut t = TMorphism::zero(nerve, src, tgt);
    for n in 0..=r {
        for l in 0..=r - n {
            let ioff_src = src.dim(n) - ext_dim(r, n);
            let ioff_tgt = tgt.dim(n + l) - ext_dim(r, n + l);
            for (si, x) in eta[n + l][n].iter().enumerate() {
                let mut m = Mat::zeros(tgt.dim(n + l), src.dim(n));
                if n < r {
                    m.paste(0, 0, &wedge_with(r, l, x, n + 1).scale(&sign(l as i64)));
                }
                m.paste(ioff_tgt, ioff_src, &wedge_with(r, l, x, n));
                t.s[n][l][si] = m;
            }
        }
    }
    t
}

/// `S_{n,0} = id` and `S_{r−1,1,αβ}(i, j) = (0, (1/r)(𝔠_{αβ} − 𝔡_{αβ})(j))`.
pub fn last_level_t(nerve: &Nerve, src: &TwistedAk, tgt: &TwistedAk) -> TMorphism {
    let r = src.r();
    let mut t = TMorphism::inclusion(nerve, src, tgt);
    let ioff = src.dim(r - 1) - super::twist::lam(&src.ext, r - 1).dim();
    for e in 0..nerve.count(1) {
        let diff = src.twist[r - 1][e].sub(&tgt.twist[r - 1][e]).scale(&qr(1, r as i64));
        let mut m = Mat::zeros(tgt.dim(r), src.dim(r - 1));
        m.paste(0, ioff, &diff);
        t.s[r - 1][1][e] = m;
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Wedge,
    LastLevel,
}

#[derive(Clone, Debug)]
pub struct DeltaResult {
    pub route: Route,
    pub matrix: DeltaMatrix,
    pub t: TMorphism,
    /// First failing component of the chain-map identity, if any.
    pub chain_defect: Option<String>,
    pub b_linear: bool,
    pub augmentation: bool,
    pub entries_are_cocycles: bool,
    pub src: TwistedAk,
    pub tgt: TwistedAk,
}

impl DeltaResult {
    pub fn verified(&self) -> bool {
        self.chain_defect.is_none() && self.b_linear && self.augmentation && self.entries_are_cocycles
    }
}

fn finish(nerve: &Nerve, route: Route, src: TwistedAk, tgt: TwistedAk, t: TMorphism) -> DeltaResult {
    let matrix = reduce(&src, &tgt, &t);
    let r = src.r();
    let entries_are_cocycles =
        (0..=r).all(|i| (0..=i).all(|j| entry_is_cocycle(nerve, &src, i, j, matrix.entry(i, j))));
    DeltaResult {
        route,
        chain_defect: chain_defect(nerve, &src, &tgt, &t),
        b_linear: b_linear(&src, &t),
        augmentation: augmentation_compatible(nerve, &src, &tgt, &t),
        entries_are_cocycles,
        matrix,
        t,
        src,
        tgt,
    }
}

/// `Δ(μ, λ)`: source twists `λ`, target twists `μ`, constant coefficients.
pub fn delta_matrix(nerve: &Nerve, r: usize, lambda: &TwistSpec, mu: &TwistSpec) -> Result<DeltaResult> {
    let src = lambda.complex(nerve, r)?;
    let tgt = mu.complex(nerve, r)?;
    if let (TwistSpec::Wedge(c), TwistSpec::Wedge(d)) = (lambda, mu) {
        let eta = eta_recursion(nerve, r, c, d);
        let t = wedge_t(nerve, &src, &tgt, &eta);
        return Ok(finish(nerve, Route::Wedge, src, tgt, t));
    }
    delta_last_level(nerve, src, tgt)
}

/// The last-level route for arbitrary frames; requires `λ_p = μ_p` for `p < r − 1`.
pub fn delta_last_level(nerve: &Nerve, src: TwistedAk, tgt: TwistedAk) -> Result<DeltaResult> {
    let r = src.r();
    if let Some(p) = (0..r.saturating_sub(1)).find(|&p| src.twist[p] != tgt.twist[p]) {
        return Err(Error::Unsupported(format!(
            "twists differ at level {p} < r − 1 and are not both of wedge type"
        )));
    }
    let t = last_level_t(nerve, &src, &tgt);
    Ok(finish(nerve, Route::LastLevel, src, tgt, t))
}

#[cfg(test)]
mod tests {
    use super::super::nerve::class_basis;
    use super::super::twist::{compose, is_identity_class, same_class, same_matrix_class};
    use super::*;
    use crate::rational::q;

    fn gens(n: &Nerve, r: usize) -> Vec<Cochain> {
        class_basis(n, &super::super::cochain::ext_system(n, r, 1), 1)
    }

    /// Integer combinations of the generators.
    fn combo(n: &Nerve, r: usize, coeffs: &[i64]) -> Cochain {
        gens(n, r)
            .iter()
            .zip(coeffs)
            .fold(zero_cochain(n, 1, r), |acc, (g, &k)| add(&acc, &scale(g, &q(k))))
    }

    #[test]
    fn equal_twists_give_identity() {
        let n = Nerve::circle();
        let r = 2;
        let c = vec![combo(&n, r, &[1, 2]), combo(&n, r, &[-1, 1])];
        let res = delta_matrix(&n, r, &TwistSpec::Wedge(c.clone()), &TwistSpec::Wedge(c)).unwrap();
        assert!(res.verified(), "{:?}", res.chain_defect);
        assert!(is_identity_class(&n, &res.src, &res.matrix));
    }

    #[test]
    fn wedge_route_on_circle_and_torus() {
        for n in [Nerve::circle(), Nerve::torus()] {
            for r in 1..=3 {
                let k = gens(&n, r).len() as i64;
                let c: Vec<Cochain> = (0..r).map(|p| combo(&n, r, &(0..k).map(|t| (t + p as i64) % 3 - 1).collect::<Vec<_>>())).collect();
                let d: Vec<Cochain> = (0..r).map(|p| combo(&n, r, &(0..k).map(|t| (2 * t + p as i64) % 3 - 1).collect::<Vec<_>>())).collect();
                let res = delta_matrix(&n, r, &TwistSpec::Wedge(c), &TwistSpec::Wedge(d)).unwrap();
                assert!(res.verified(), "{} r={r}: {:?}", n.name, res.chain_defect);
            }
        }
    }

    #[test]
    fn spot_values_of_the_recursion() {
        let n = Nerve::torus();
        let r = 2;
        let c = vec![combo(&n, r, &[1, 0, 0, 1]), combo(&n, r, &[0, 1, -1, 0])];
        let d = vec![combo(&n, r, &[0, 0, 1, 1]), combo(&n, r, &[1, 1, 0, 0])];
        let eta = eta_recursion(&n, r, &c, &d);
        assert_eq!(eta[1][0], sub(&c[0], &d[0]));
        let half = scale(&add(&sub(&c[0], &d[0]), &sub(&c[1], &d[1])), &qr(1, 2));
        assert_eq!(eta[2][1], half);
        let want = scale(&cup(&n, r, (1, 1, &sub(&c[0], &d[1])), (1, 1, &sub(&c[0], &d[0]))), &qr(-1, 2));
        assert_eq!(eta[2][0], want);
    }

    #[test]
    fn unscaled_first_column_breaks_the_chain_identity() {
        let n = Nerve::torus();
        let r = 2;
        let c = vec![combo(&n, r, &[1, 0, 0, 1]), combo(&n, r, &[0, 1, -1, 0])];
        let d = vec![combo(&n, r, &[0, 0, 1, 1]), combo(&n, r, &[1, 1, 0, 0])];
        let src = TwistedAk::wedge(&n, r, &c).unwrap();
        let tgt = TwistedAk::wedge(&n, r, &d).unwrap();
        let mut eta = eta_recursion(&n, r, &c, &d);
        assert!(!cup(&n, r, (1, 1, &sub(&c[0], &d[1])), (1, 1, &eta[1][0])).iter().flatten().all(|x| *x == q(0)));
        assert!(chain_defect(&n, &src, &tgt, &wedge_t(&n, &src, &tgt, &eta)).is_none());
        eta[2][0] = scale(&eta[2][0], &q(2));
        assert!(chain_defect(&n, &src, &tgt, &wedge_t(&n, &src, &tgt, &eta)).is_some());
    }

    #[test]
    fn composition_law_at_class_level() {
        let n = Nerve::torus();
        let r = 2;
        let lam = TwistSpec::Wedge(vec![combo(&n, r, &[1, 0, 0, 1]), combo(&n, r, &[0, 1, 1, 0])]);
        let mu = TwistSpec::Wedge(vec![combo(&n, r, &[0, 1, 0, 0]), combo(&n, r, &[1, 0, 0, -1])]);
        let zero = TwistSpec::zero(&n, r);
        let ml = delta_matrix(&n, r, &lam, &mu).unwrap();
        let zm = delta_matrix(&n, r, &mu, &zero).unwrap();
        let zl = delta_matrix(&n, r, &lam, &zero).unwrap();
        assert!(ml.verified() && zm.verified() && zl.verified());
        let lhs = compose(&n, &zm.matrix, &ml.matrix);
        assert!(same_matrix_class(&n, &ml.src, &lhs, &zl.matrix));
    }

    #[test]
    fn last_level_route() {
        let n = Nerve::circle();
        for r in 2..=3 {
            let g = &gens(&n, r)[0];
            let mut lam = wedge_twists(r, &vec![zero_cochain(&n, 1, r); r]);
            let mu = lam.clone();
            lam[r - 1] = super::super::cochain::l_cochain(r, 1, r - 1, g);
            let res = delta_matrix(&n, r, &TwistSpec::Hom(lam.clone()), &TwistSpec::Hom(mu)).unwrap();
            assert!(res.verified(), "{:?}", res.chain_defect);
            let want: HomCochain = lam[r - 1].iter().map(|m| m.scale(&qr(1, r as i64))).collect();
            assert!(same_class(&n, &res.src, r, r - 1, res.matrix.entry(r, r - 1), &want));
        }
    }

    #[test]
    fn mixed_lower_levels_are_unsupported() {
        let n = Nerve::circle();
        let r = 2;
        let g = &gens(&n, r)[0];
        let mut lam = wedge_twists(r, &vec![zero_cochain(&n, 1, r); r]);
        lam[0] = super::super::cochain::l_cochain(r, 1, 0, g);
        let mu = wedge_twists(r, &vec![zero_cochain(&n, 1, r); r]);
        let err = delta_matrix(&n, r, &TwistSpec::Hom(lam), &TwistSpec::Hom(mu)).unwrap_err();
        assert!(matches!(err, Error::Unsupported(_)));
    }
}
