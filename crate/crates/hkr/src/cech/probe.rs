//! Evaluates a proposed recursion for `Δ(μ, λ)` built from Yoneda products and
//! the translation operator `𝔱`, and compares it entry by entry with the
//! matrix computed from `T` wherever `delta_matrix` supports the twists.
//!
//! Two readings are evaluated:
//! - `Literal`: `Δ_{i+1,0} = (−1)^i (𝔱^i λ_0 − μ_i) * Δ_{i,0}` and
//!   `Δ_{i+1,j} = (1/(i+1)) [j 𝔱^1 Δ_{i,j−1} + (−1)^{i−j} (𝔱^{i−j} λ_j − μ_i) * Δ_{i,j}]`;
//! - `Amended`: `Δ_{i+1,j} = (1/(i+1)) [j 𝔱^1 Δ_{i,j−1} + (𝔱^{i−j} λ_j − μ_i) * Δ_{i,j}]`
//!   for every `0 ≤ j ≤ i`, which is what the wedge-type computation gives once
//!   the Yoneda sign `(−1)^{i−j}` is accounted for.

use num_traits::Zero;
use serde::Serialize;

use super::cochain::{ext_dim, hom_flat, hom_scale, hom_sub, translate_cochain, yoneda, HomCochain};
use super::delta::{delta_matrix, Route, TwistSpec};
use super::nerve::{class_of, Nerve};
use super::twist::{DeltaMatrix, TwistedAk};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::{fmt_q, q, qr, sign, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    Literal,
    Amended,
}

/// The recursion at cochain level; entries past the nerve's depth are empty.
pub fn conjecture_recursion(nerve: &Nerve, r: usize, lambda: &[HomCochain], mu: &[HomCochain], reading: Reading) -> Result<DeltaMatrix> {
    let mut e: Vec<Vec<HomCochain>> = Vec::with_capacity(r + 1);
    e.push(vec![vec![Mat::identity(1); nerve.count(0)]]);
    for i in 0..r {
        let rows = ext_dim(r, i + 1);
        let mut row = Vec::with_capacity(i + 2);
        for j in 0..=i {
            let twist = hom_sub(&translate_cochain(r, i - j, j, j + 1, &lambda[j])?, &mu[i]);
            let prod = yoneda(nerve, (1, &twist), (i - j, &e[i][j]), rows, ext_dim(r, j));
            let entry = match (reading, j) {
                (Reading::Literal, 0) => hom_scale(&prod, &sign(i as i64)),
                _ => {
                    let s = if reading == Reading::Literal { sign((i - j) as i64) } else { q(1) };
                    let mut acc = hom_scale(&prod, &s);
                    if j > 0 {
                        let prev = translate_cochain(r, 1, j - 1, i, &e[i][j - 1])?;
                        let prev = hom_scale(&prev, &q(j as i64));
                        acc = if acc.is_empty() { prev } else { acc.iter().zip(&prev).map(|(a, b)| a.add(b)).collect() };
                    }
                    hom_scale(&acc, &qr(1, i as i64 + 1))
                }
            };
            row.push(entry);
        }
        row.push(vec![Mat::identity(ext_dim(r, i + 1)); nerve.count(0)]);
        e.push(row);
    }
    Ok(DeltaMatrix { r, entries: e })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    Agree,
    /// `factor` is set when the two classes are proportional and both nonzero.
    Disagree { factor: Option<String> },
    Untestable,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeEntry {
    pub i: usize,
    pub j: usize,
    pub literal: Outcome,
    pub amended: Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub nerve: String,
    pub r: usize,
    pub route: Option<Route>,
    pub unsupported: Option<String>,
    pub entries: Vec<ProbeEntry>,
}

impl ProbeReport {
    pub fn count(&self, reading: Reading, pred: impl Fn(&Outcome) -> bool) -> usize {
        self.entries
            .iter()
            .filter(|e| pred(match reading {
                Reading::Literal => &e.literal,
                Reading::Amended => &e.amended,
            }))
            .count()
    }
}

fn compare(nerve: &Nerve, ak: &TwistedAk, i: usize, j: usize, conj: &HomCochain, actual: &HomCochain) -> Outcome {
    if conj.is_empty() || actual.is_empty() {
        // no simplices of that degree: both classes live in a zero group
        return Outcome::Agree;
    }
    let ls = ak.hom_system(j, i);
    let (Some(a), Some(b)) = (class_of(nerve, &ls, i - j, &hom_flat(conj)), class_of(nerve, &ls, i - j, &hom_flat(actual))) else {
        return Outcome::Untestable;
    };
    if a == b {
        return Outcome::Agree;
    }
    let factor = b.iter().position(|x| !x.is_zero()).and_then(|k| {
        let f: Q = &a[k] / &b[k];
        (!f.is_zero() && a.iter().zip(&b).all(|(x, y)| *x == &f * y)).then(|| fmt_q(&f))
    });
    Outcome::Disagree { factor }
}

/// Runs both readings and compares them with `delta_matrix` where it applies.
pub fn conjecture_probe(nerve: &Nerve, r: usize, lambda: &TwistSpec, mu: &TwistSpec) -> Result<ProbeReport> {
    let (lh, mh) = (lambda.homs(r), mu.homs(r));
    let literal = conjecture_recursion(nerve, r, &lh, &mh, Reading::Literal)?;
    let amended = conjecture_recursion(nerve, r, &lh, &mh, Reading::Amended)?;
    let (route, unsupported, actual) = match delta_matrix(nerve, r, lambda, mu) {
        Ok(res) => {
            if !res.verified() {
                return Err(Error::Invariant(format!("T failed its checks: {:?}", res.chain_defect)));
            }
            (Some(res.route), None, Some((res.matrix, res.src)))
        }
        Err(Error::Unsupported(msg)) => (None, Some(msg), None),
        Err(e) => return Err(e),
    };
    let mut entries = Vec::new();
    for i in 1..=r {
        for j in 0..i {
            let (lit, amd) = match &actual {
                Some((m, ak)) => (
                    compare(nerve, ak, i, j, literal.entry(i, j), m.entry(i, j)),
                    compare(nerve, ak, i, j, amended.entry(i, j), m.entry(i, j)),
                ),
                None => (Outcome::Untestable, Outcome::Untestable),
            };
            entries.push(ProbeEntry { i, j, literal: lit, amended: amd });
        }
    }
    Ok(ProbeReport {
        nerve: nerve.name.clone(),
        r,
        route,
        unsupported,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::super::cochain::{add, ext_system, l_cochain, scale, zero_cochain};
    use super::super::nerve::{class_basis, Cochain};
    use super::super::twist::wedge_twists;
    use super::*;

    fn combo(n: &Nerve, r: usize, coeffs: &[i64]) -> Cochain {
        class_basis(n, &ext_system(n, r, 1), 1)
            .iter()
            .zip(coeffs)
            .fold(zero_cochain(n, 1, r), |acc, (g, &k)| add(&acc, &scale(g, &q(k))))
    }

    fn is_agree(o: &Outcome) -> bool {
        *o == Outcome::Agree
    }

    #[test]
    fn both_readings_agree_on_the_circle() {
        let n = Nerve::circle();
        for r in 2..=3 {
            let c: Vec<Cochain> = (0..r).map(|p| combo(&n, r, &[p as i64 + 1, 1 - p as i64])).collect();
            let d: Vec<Cochain> = (0..r).map(|p| combo(&n, r, &[-1, p as i64])).collect();
            let rep = conjecture_probe(&n, r, &TwistSpec::Wedge(c), &TwistSpec::Wedge(d)).unwrap();
            assert_eq!(rep.route, Some(Route::Wedge));
            let total = rep.entries.len();
            assert_eq!(rep.count(Reading::Literal, is_agree), total);
            assert_eq!(rep.count(Reading::Amended, is_agree), total);
        }
    }

    #[test]
    fn literal_reading_is_off_by_minus_two_on_the_torus() {
        let n = Nerve::torus();
        let r = 2;
        // the cup (c0 − d1) ∪ (c0 − d0) has a nonzero class for these
        let c = vec![combo(&n, r, &[1, 0, 0, 0]), zero_cochain(&n, 1, r)];
        let d = vec![zero_cochain(&n, 1, r), combo(&n, r, &[0, 0, 0, 1])];
        let rep = conjecture_probe(&n, r, &TwistSpec::Wedge(c), &TwistSpec::Wedge(d)).unwrap();
        let e20 = rep.entries.iter().find(|e| (e.i, e.j) == (2, 0)).unwrap();
        assert_eq!(e20.literal, Outcome::Disagree { factor: Some("-2".into()) });
        assert_eq!(rep.count(Reading::Amended, is_agree), rep.entries.len());
    }

    #[test]
    fn last_level_twists_agree() {
        let n = Nerve::circle();
        for r in 2..=3 {
            let g = &class_basis(&n, &ext_system(&n, r, 1), 1)[0];
            let mu = wedge_twists(r, &vec![zero_cochain(&n, 1, r); r]);
            let mut lam = mu.clone();
            lam[r - 1] = l_cochain(r, 1, r - 1, g);
            let rep = conjecture_probe(&n, r, &TwistSpec::Hom(lam), &TwistSpec::Hom(mu)).unwrap();
            assert_eq!(rep.route, Some(Route::LastLevel));
            assert_eq!(rep.count(Reading::Literal, is_agree), rep.entries.len());
        }
    }

    #[test]
    fn general_twists_are_untestable_but_evaluated() {
        let n = Nerve::circle();
        let r = 2;
        let g = &class_basis(&n, &ext_system(&n, r, 1), 1)[0];
        let mut lam = wedge_twists(r, &vec![zero_cochain(&n, 1, r); r]);
        lam[0] = l_cochain(r, 1, 0, g);
        lam[1] = l_cochain(r, 1, 1, &scale(g, &q(2)));
        let mu = wedge_twists(r, &vec![zero_cochain(&n, 1, r); r]);
        let mut hom = mu.clone();
        hom[0] = hom_scale(&lam[0], &q(3));
        let rep = conjecture_probe(&n, r, &TwistSpec::Hom(hom), &TwistSpec::Hom(lam)).unwrap();
        assert!(rep.unsupported.is_some());
        assert_eq!(rep.count(Reading::Literal, |o| *o == Outcome::Untestable), rep.entries.len());
    }
}
