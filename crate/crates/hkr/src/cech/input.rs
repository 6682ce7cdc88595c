//! Seeded random cocycles and the JSON form of a Hom-valued twist cocycle.
//!
//! A twist file looks like
//! `{"level": 0, "values": {"0,1": [["1"], ["0"]], "0,2": [[0], ["1/2"]]}}`
//! with one matrix `Λ^level I → Λ^{level+1} I` per edge `a < b`. Edges left
//! out are zero. Entries are integers or rational strings.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use super::cochain::{add, ext_dim, ext_system, hom_system, scale, HomCochain};
use super::nerve::{class_basis, coboundary, Cochain, Nerve};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::{parse_q, q, Q};

/// An `I`-valued 1-cocycle: a small integer combination of the class basis
/// plus the coboundary of a small 0-cochain, so representatives are not canonical.
pub fn random_cocycle(nerve: &Nerve, r: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let ls = ext_system(nerve, r, 1);
    let class = class_basis(nerve, &ls, 1)
        .iter()
        .fold(vec![vec![Q::from_integer(0.into()); r]; nerve.count(1)], |acc, g| {
            add(&acc, &scale(g, &q(rng.gen_range(-2..=2))))
        });
    let zero: Cochain = (0..nerve.count(0)).map(|_| (0..r).map(|_| q(rng.gen_range(-1..=1))).collect()).collect();
    add(&class, &coboundary(nerve, &ls, 0, &zero))
}

pub fn random_wedge_twists(nerve: &Nerve, r: usize, rng: &mut ChaCha8Rng) -> Vec<Cochain> {
    (0..r).map(|_| random_cocycle(nerve, r, rng)).collect()
}

/// A cocycle in `Hom(Λ^p I, Λ^{p+1} I)` for constant frames, built like [`random_cocycle`].
pub fn random_hom_cocycle(nerve: &Nerve, r: usize, p: usize, rng: &mut ChaCha8Rng) -> HomCochain {
    let (rows, cols) = (ext_dim(r, p + 1), ext_dim(r, p));
    let ls = hom_system(nerve, r, p, p + 1);
    let class = class_basis(nerve, &ls, 1)
        .iter()
        .fold(vec![vec![q(0); rows * cols]; nerve.count(1)], |acc, g| {
            add(&acc, &scale(g, &q(rng.gen_range(-2..=2))))
        });
    let zero: Cochain = (0..nerve.count(0)).map(|_| (0..rows * cols).map(|_| q(rng.gen_range(-1..=1))).collect()).collect();
    add(&class, &coboundary(nerve, &ls, 0, &zero))
        .iter()
        .map(|v| Mat::from_rows(v.chunks(cols.max(1)).map(<[Q]>::to_vec).collect()))
        .collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistFile {
    level: usize,
    values: BTreeMap<String, Vec<Vec<serde_json::Value>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParsedTwist {
    pub level: usize,
    /// `(a, b, matrix)` with `a < b`, in file order of the sorted keys.
    pub values: Vec<(usize, usize, Mat)>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse {
        what: "twist",
        at: 0,
        msg: msg.into(),
    }
}

fn entry(v: &serde_json::Value) -> Result<Q> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(q)
            .ok_or_else(|| parse_err(format!("entry {n} is not an integer; write rationals as strings"))),
        serde_json::Value::String(s) => parse_q(s),
        other => Err(parse_err(format!("entry {other} is neither a number nor a string"))),
    }
}

fn edge_key(k: &str) -> Result<(usize, usize)> {
    let (a, b) = k.split_once(',').ok_or_else(|| parse_err(format!("edge key {k:?} is not \"a,b\"")))?;
    let a: usize = a.trim().parse().map_err(|_| parse_err(format!("bad vertex in {k:?}")))?;
    let b: usize = b.trim().parse().map_err(|_| parse_err(format!("bad vertex in {k:?}")))?;
    if a >= b {
        return Err(parse_err(format!("edge {k:?} must have a < b")));
    }
    Ok((a, b))
}

/// Syntax only; shapes are checked against a nerve by [`twist_cochain`].
pub fn parse_twist(src: &str) -> Result<ParsedTwist> {
    let f: TwistFile = serde_json::from_str(src).map_err(|e| Error::Parse {
        what: "twist",
        at: e.column(),
        msg: e.to_string(),
    })?;
    let mut values = Vec::with_capacity(f.values.len());
    for (k, rows) in &f.values {
        let (a, b) = edge_key(k)?;
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != width) {
            return Err(parse_err(format!("ragged matrix on edge {k:?}")));
        }
        let mut m = Mat::zeros(rows.len(), width);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, entry(v)?);
            }
        }
        values.push((a, b, m));
    }
    Ok(ParsedTwist { level: f.level, values })
}

/// The Hom-cochain `Λ^level I → Λ^{level+1} I` on the edges of `nerve`.
pub fn twist_cochain(nerve: &Nerve, r: usize, t: &ParsedTwist) -> Result<HomCochain> {
    if t.level >= r {
        return Err(Error::Invalid(format!("twist level {} needs level < r = {r}", t.level)));
    }
    let (rows, cols) = (ext_dim(r, t.level + 1), ext_dim(r, t.level));
    let mut out = vec![Mat::zeros(rows, cols); nerve.count(1)];
    for (a, b, m) in &t.values {
        let e = nerve
            .edge_index(*a, *b)
            .ok_or_else(|| Error::Invalid(format!("{a},{b} is not an edge of {}", nerve.name)))?;
        if m.rows != rows || m.cols != cols {
            return Err(Error::Invalid(format!(
                "edge {a},{b}: expected a {rows}x{cols} matrix, got {}x{}",
                m.rows, m.cols
            )));
        }
        out[e] = m.clone();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::nerve::is_cocycle;
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn random_cocycles_are_cocycles_and_seeded() {
        for n in [Nerve::circle(), Nerve::torus()] {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let c = random_cocycle(&n, 2, &mut rng);
            assert!(is_cocycle(&n, &ext_system(&n, 2, 1), 1, &c));
            let mut again = ChaCha8Rng::seed_from_u64(7);
            assert_eq!(c, random_cocycle(&n, 2, &mut again));
        }
    }

    #[test]
    fn random_hom_cocycles_have_the_right_shape() {
        let n = Nerve::torus();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in 0..3 {
            let h = random_hom_cocycle(&n, 3, p, &mut rng);
            assert!(h.iter().all(|m| (m.rows, m.cols) == (ext_dim(3, p + 1), ext_dim(3, p))));
            let flat = super::super::cochain::hom_flat(&h);
            assert!(is_cocycle(&n, &hom_system(&n, 3, p, p + 1), 1, &flat));
        }
    }

    #[test]
    fn parses_a_twist_file() {
        let n = Nerve::circle();
        let t = parse_twist(r#"{"level": 0, "values": {"0,1": [["1/2"], [0]], "1,2": [[1], [-3]]}}"#).unwrap();
        let h = twist_cochain(&n, 2, &t).unwrap();
        assert_eq!(h[0], Mat::from_rows(vec![vec![crate::rational::qr(1, 2)], vec![q(0)]]));
        assert!(h[1].is_zero());
        assert_eq!(h[2], Mat::from_i64(&[&[1], &[-3]]));
    }

    #[test]
    fn rejects_malformed_twists() {
        let n = Nerve::circle();
        for bad in [
            r#"{"level": 0, "values": {"1,0": [[1], [0]]}}"#,
            r#"{"level": 0, "values": {"0,1": [[1, 2], [0]]}}"#,
            r#"{"level": 0, "values": {"0;1": [[1], [0]]}}"#,
            r#"{"level": 0, "values": {"0,1": [[1.5], [0]]}}"#,
            r#"{"level": 0}"#,
        ] {
            assert!(parse_twist(bad).is_err(), "{bad}");
        }
        let wrong_shape = parse_twist(r#"{"level": 1, "values": {"0,1": [[1], [0]]}}"#).unwrap();
        assert!(twist_cochain(&n, 2, &wrong_shape).is_err());
        let no_edge = parse_twist(r#"{"level": 0, "values": {"0,5": [[1], [0]]}}"#).unwrap();
        assert!(twist_cochain(&n, 2, &no_edge).is_err());
    }
}
