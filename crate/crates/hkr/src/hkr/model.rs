//! The split local model: `C = Q[x_1..x_m, y_1..y_r]`, `J = (y)`, `A = C/J`,
//! `I = J/J²` free on the classes `ȳ_k`, and `B = C/J²` identified with the
//! trivial extension `I ⊕ A` through a splitting `σ`.

use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::Ext;
use crate::extension::{BElem, Extension};
use crate::module::FreeMod;
use crate::poly::{deg, monomials_of_degree, parse_poly, standard_names, Exps, Poly};
use crate::rational::Q;

/// Largest sizes the dense linear algebra is sized for.
pub const MAX_M: usize = 3;
pub const MAX_R: usize = 4;
pub const MAX_BOUND: u32 = 6;

#[derive(Clone, Debug)]
pub struct LocalModel {
    pub m: usize,
    pub r: usize,
    pub bound: u32,
    /// `chi[k][i]`: coefficient of `ȳ_k` in `σ(x_i)`, an element of `A`.
    pub chi: Vec<Vec<Poly>>,
    pub ext: Extension,
}

/// JSON form: `{"m": 1, "r": 2, "D": 3, "chi": [["x"], ["0"]]}`; `chi` may be omitted.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub m: usize,
    pub r: usize,
    #[serde(rename = "D")]
    pub d: u32,
    #[serde(default)]
    pub chi: Option<Vec<Vec<String>>>,
}

pub fn parse_model(src: &str) -> Result<LocalModel> {
    let spec: ModelSpec = serde_json::from_str(src).map_err(|e| Error::Parse {
        what: "model",
        at: e.column(),
        msg: e.to_string(),
    })?;
    LocalModel::from_spec(&spec)
}

impl LocalModel {
    pub fn from_spec(spec: &ModelSpec) -> Result<LocalModel> {
        check_sizes(spec.m, spec.r, spec.d)?;
        let names: Vec<String> = standard_names(spec.m, spec.r)[..spec.m].to_vec();
        let chi = match &spec.chi {
            None => vec![vec![Poly::zero(spec.m); spec.m]; spec.r],
            Some(rows) => {
                if rows.len() != spec.r || rows.iter().any(|row| row.len() != spec.m) {
                    return Err(Error::Invalid(format!(
                        "chi must be {} rows of {} entries",
                        spec.r, spec.m
                    )));
                }
                rows.iter()
                    .map(|row| row.iter().map(|s| parse_poly(s, &names)).collect())
                    .collect::<Result<Vec<Vec<Poly>>>>()?
            }
        };
        LocalModel::new(spec.m, spec.r, spec.d, chi)
    }

    pub fn canonical(m: usize, r: usize, bound: u32) -> Result<LocalModel> {
        LocalModel::new(m, r, bound, vec![vec![Poly::zero(m); m]; r])
    }

    /// A splitting with `χ` entries of degree `< bound` and coefficients in `−2..=2`.
    pub fn random(m: usize, r: usize, bound: u32, rng: &mut impl Rng) -> Result<LocalModel> {
        check_sizes(m, r, bound)?;
        let mut entry = || {
            let mut p = Poly::zero(m);
            for d in 0..bound {
                for e in monomials_of_degree(m, d) {
                    p.add_term(e, Q::from_integer(rng.gen_range(-2..=2).into()));
                }
            }
            p
        };
        let chi = (0..r).map(|_| (0..m).map(|_| entry()).collect()).collect();
        LocalModel::new(m, r, bound, chi)
    }

    pub fn new(m: usize, r: usize, bound: u32, chi: Vec<Vec<Poly>>) -> Result<LocalModel> {
        check_sizes(m, r, bound)?;
        if chi.len() != r || chi.iter().any(|row| row.len() != m) {
            return Err(Error::Invalid(format!("chi must be {r}×{m}")));
        }
        for c in chi.iter().flatten() {
            if c.nvars != m {
                return Err(Error::Invalid("chi entries must lie in A".into()));
            }
            // χ·ȳ has weight deg χ + 1; past the bound the splitting would be truncated away
            if c.degree().is_some_and(|d| d >= bound) {
                return Err(Error::Invalid(format!(
                    "chi entry of degree ≥ {bound} overflows the truncation"
                )));
            }
        }
        let model = LocalModel {
            m,
            r,
            bound,
            chi,
            ext: Extension::new(r, m, bound, true)?,
        };
        if !model.splitting_is_algebra_iso() {
            return Err(Error::Invariant("ψ_σ is not multiplicative".into()));
        }
        if !model.splitting_is_section() {
            return Err(Error::Invariant("σ is not a section of B → A".into()));
        }
        Ok(model)
    }

    pub fn spec(&self) -> ModelSpec {
        let names: Vec<String> = standard_names(self.m, self.r)[..self.m].to_vec();
        ModelSpec {
            m: self.m,
            r: self.r,
            d: self.bound,
            chi: Some(
                self.chi
                    .iter()
                    .map(|row| row.iter().map(|p| p.render(&names)).collect())
                    .collect(),
            ),
        }
    }

    /// Variables of `C`.
    pub fn c_vars(&self) -> usize {
        self.m + self.r
    }

    pub fn y(&self, k: usize) -> Poly {
        Poly::var(self.c_vars(), self.m + k)
    }

    pub fn a_module(&self) -> FreeMod {
        FreeMod::new(self.m, self.bound, vec![0])
    }

    pub fn c_module(&self) -> FreeMod {
        FreeMod::new(self.c_vars(), self.bound, vec![0])
    }

    /// `σ(a) = a + Σ ∂_i a · χ_{ki} y_k` in `C/J²`.
    pub fn sigma(&self, a: &Poly) -> Poly {
        let n = self.c_vars();
        let mut out = a.extend_vars(n);
        for i in 0..self.m {
            let da = a.deriv(i);
            if da.is_zero() {
                continue;
            }
            for k in 0..self.r {
                let t = &da * &self.chi[k][i];
                out = &out + &(&t.extend_vars(n) * &self.y(k));
            }
        }
        out
    }

    /// `C → B ≅ I ⊕ A`, `b ↦ (b − σ(b̄), b̄)`.
    pub fn psi(&self, c: &Poly) -> BElem {
        let mut a = Poly::zero(self.m);
        let mut i: Ext<Poly> = Ext::zero(self.r, 1);
        for (e, v) in &c.terms {
            let ye = &e[self.m..];
            let xe: Exps = e[..self.m].to_vec();
            match deg(ye) {
                0 => a.add_term(xe, v.clone()),
                1 => {
                    let k = ye.iter().position(|&t| t == 1).unwrap();
                    i.add_term(vec![k], Poly::monomial(xe, v.clone()));
                }
                _ => {}
            }
        }
        for idx in 0..self.m {
            let da = a.deriv(idx);
            if da.is_zero() {
                continue;
            }
            for k in 0..self.r {
                let t = (&da * &self.chi[k][idx]).scale(&(-Q::one()));
                i.add_term(vec![k], t);
            }
        }
        BElem { i, a }
    }

    /// Monomials of `C/J²` within the bound.
    pub fn b_monomials(&self) -> Vec<Exps> {
        (0..=self.bound)
            .flat_map(|d| monomials_of_degree(self.c_vars(), d))
            .filter(|e| deg(&e[self.m..]) <= 1)
            .collect()
    }

    fn b_realize(&self, b: &BElem) -> Vec<Q> {
        self.ext.realize(&self.ext.b_as_split(b))
    }

    /// `ψ_σ(uv) = ψ_σ(u)ψ_σ(v)` on every pair of monomials of `C/J²`.
    pub fn splitting_is_algebra_iso(&self) -> bool {
        let mons = self.b_monomials();
        let polys: Vec<Poly> = mons.iter().map(|e| Poly::monomial(e.clone(), Q::one())).collect();
        let images: Vec<BElem> = polys.iter().map(|p| self.psi(p)).collect();
        for (u, pu) in polys.iter().zip(&images) {
            for (v, pv) in polys.iter().zip(&images) {
                let lhs = self.psi(&(u * v));
                let rhs = self.ext.b_mul(pu, pv);
                if self.b_realize(&lhs) != self.b_realize(&rhs) {
                    return false;
                }
            }
        }
        // bijective: the realized matrix of ψ_σ is square and invertible
        let src = self.b_monomials().len();
        let tgt = self.ext.module(1).dim();
        if src != tgt {
            return false;
        }
        let cols: Vec<Vec<Q>> = images.iter().map(|b| self.b_realize(b)).collect();
        crate::linalg::Mat::from_cols(tgt, &cols).rank() == tgt
    }

    /// `ψ_σ(σ(a)) = (0, a)` on monomials of `A`.
    pub fn splitting_is_section(&self) -> bool {
        (0..=self.bound)
            .flat_map(|d| monomials_of_degree(self.m, d))
            .all(|e| {
                let a = Poly::monomial(e, Q::one());
                let b = self.psi(&self.sigma(&a));
                let want = BElem {
                    i: Ext::zero(self.r, 1),
                    a,
                };
                self.b_realize(&b) == self.b_realize(&want)
            })
    }
}

fn check_sizes(m: usize, r: usize, bound: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::Invalid("r must be at least 1".into()));
    }
    if bound < 2 {
        return Err(Error::Invalid("the degree bound must be at least 2".into()));
    }
    if m > MAX_M || r > MAX_R || bound > MAX_BOUND {
        return Err(Error::Unsupported(format!(
            "model sizes are capped at m ≤ {MAX_M}, r ≤ {MAX_R}, D ≤ {MAX_BOUND}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_split_model() {
        let m = LocalModel::canonical(1, 1, 3).unwrap();
        // B = Q[x,y]/(y²) up to degree 3: 1,x,x²,x³ and y,xy,x²y
        assert_eq!(m.b_monomials().len(), 7);
        let x = Poly::var(2, 0);
        assert!(m.psi(&x).i.is_zero());
    }

    #[test]
    fn twisted_splitting_is_accepted() {
        let spec = ModelSpec {
            m: 1,
            r: 2,
            d: 3,
            chi: Some(vec![vec!["x".into()], vec!["0".into()]]),
        };
        let m = LocalModel::from_spec(&spec).unwrap();
        // ψ(x²) = (−2x·x ȳ_1, x²)
        let b = m.psi(&Poly::var(3, 0).pow(2));
        assert_eq!(b.i.get(&[0]).unwrap(), &Poly::var(1, 0).pow(2).scale(&crate::rational::q(-2)));
    }

    #[test]
    fn overflowing_chi_is_rejected() {
        let spec = ModelSpec {
            m: 1,
            r: 1,
            d: 3,
            chi: Some(vec![vec!["x^3".into()]]),
        };
        assert!(matches!(LocalModel::from_spec(&spec), Err(Error::Invalid(_))));
    }

    #[test]
    fn json_roundtrip() {
        let m = parse_model(r#"{"m":1,"r":2,"D":3,"chi":[["x"],["0"]]}"#).unwrap();
        let again = LocalModel::from_spec(&m.spec()).unwrap();
        assert_eq!(again.chi, m.chi);
        assert!(parse_model(r#"{"m":1,"r":0,"D":3}"#).is_err());
        assert!(parse_model("{").is_err());
    }
}
