//! Exterior and tensor powers of a based free module.
//!
//! Basis of `Λ^p` of a rank-`s` module: strictly increasing index tuples in
//! lexicographic order. Dual elements `e*_S` pair with `e_S` to 1.

use itertools::Itertools;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::chain::{hom_complex, tensor_complex, Complex, ComplexMap};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::rational::{binom, factorial, q, sign_i, Q};

pub type Idx = Vec<usize>;

pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &Q) -> Self;
}

impl Coeff for Q {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Q) -> Self {
        self * c
    }
}

impl Coeff for Poly {
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Q) -> Self {
        Poly::scale(self, c)
    }
}

fn accumulate<K: Ord, C: Coeff>(map: &mut BTreeMap<K, C>, k: K, c: C) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().add(&c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// All `k`-subsets of `0..s`, lexicographic.
pub fn subsets(s: usize, k: usize) -> Vec<Idx> {
    if k > s {
        return vec![];
    }
    (0..s).combinations(k).collect()
}

pub fn subset_index(s: usize, k: usize) -> HashMap<Idx, usize> {
    subsets(s, k)
        .into_iter()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect()
}

/// `e_a ∧ e_b = sign · e_{a∪b}`, or `None` when they overlap.
pub fn merge(a: &[usize], b: &[usize]) -> Option<(i64, Idx)> {
    let mut inv = 0usize;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining a's
            inv += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((sign_i(inv as i64), out))
}

/// Sorts an index tuple; the sign of the sorting permutation, `None` on repeats.
pub fn sort_sign(t: &[usize]) -> Option<(i64, Idx)> {
    let mut inv = 0usize;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if t[i] == t[j] {
                return None;
            }
            if t[i] > t[j] {
                inv += 1;
            }
        }
    }
    let mut v = t.to_vec();
    v.sort_unstable();
    Some((sign_i(inv as i64), v))
}

/// Complement of `t` inside `s`, both increasing.
pub fn complement(s: &[usize], t: &[usize]) -> Option<Idx> {
    if !t.iter().all(|x| s.contains(x)) {
        return None;
    }
    Some(s.iter().copied().filter(|x| !t.contains(x)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ext<C> {
    pub rank: usize,
    pub deg: usize,
    pub terms: BTreeMap<Idx, C>,
}

impl<C: Coeff> Ext<C> {
    pub fn zero(rank: usize, deg: usize) -> Self {
        Ext {
            rank,
            deg,
            terms: BTreeMap::new(),
        }
    }

    /// `c · e_{i_1} ∧ … ∧ e_{i_p}` for any order of distinct indices.
    pub fn monomial(rank: usize, idx: &[usize], c: C) -> Result<Self> {
        if idx.iter().any(|&i| i >= rank) {
            return Err(Error::Structural(format!("index out of range for rank {rank}")));
        }
        let mut x = Ext::zero(rank, idx.len());
        if let Some((s, sorted)) = sort_sign(idx) {
            x.add_term(sorted, c.scale(&q(s)));
        }
        Ok(x)
    }

    pub fn add_term(&mut self, idx: Idx, c: C) {
        debug_assert_eq!(idx.len(), self.deg);
        accumulate(&mut self.terms, idx, c);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, idx: &[usize]) -> Option<&C> {
        self.terms.get(idx)
    }

    fn same_home(&self, o: &Self) -> Result<()> {
        if self.rank != o.rank {
            return Err(Error::Structural(format!(
                "rank {} vs rank {}",
                self.rank, o.rank
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_home(o)?;
        if self.deg != o.deg {
            return Err(Error::Structural("adding different degrees".into()));
        }
        let mut x = self.clone();
        for (k, c) in &o.terms {
            x.add_term(k.clone(), c.clone());
        }
        Ok(x)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut x = Ext::zero(self.rank, self.deg);
        for (k, v) in &self.terms {
            x.add_term(k.clone(), v.scale(c));
        }
        x
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        let mut x = Ext::zero(self.rank, self.deg);
        for (k, v) in &self.terms {
            x.add_term(k.clone(), c.mul(v));
        }
        x
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        self.same_home(o)?;
        if self.deg + o.deg > self.rank {
            return Err(Error::Structural(format!(
                "Λ^{} of a rank {} module",
                self.deg + o.deg,
                self.rank
            )));
        }
        let mut x = Ext::zero(self.rank, self.deg + o.deg);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if let Some((s, m)) = merge(a, b) {
                    x.add_term(m, ca.mul(cb).scale(&q(s)));
                }
            }
        }
        Ok(x)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tens<C> {
    pub rank: usize,
    pub deg: usize,
    pub terms: BTreeMap<Idx, C>,
}

impl<C: Coeff> Tens<C> {
    pub fn zero(rank: usize, deg: usize) -> Self {
        Tens {
            rank,
            deg,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, idx: Idx, c: C) {
        debug_assert_eq!(idx.len(), self.deg);
        accumulate(&mut self.terms, idx, c);
    }
}

/// `𝔞_n`: `v_1⊗…⊗v_n ↦ v_1∧…∧v_n`.
pub fn antisymmetrize<C: Coeff>(t: &Tens<C>) -> Ext<C> {
    let mut x = Ext::zero(t.rank, t.deg);
    for (k, c) in &t.terms {
        if let Some((s, m)) = sort_sign(k) {
            x.add_term(m, c.scale(&q(s)));
        }
    }
    x
}

/// `𝔰_n`: the `1/n!`-weighted signed sum over all orderings.
pub fn symmetrize<C: Coeff>(x: &Ext<C>) -> Tens<C> {
    let w = Q::one() / factorial(x.deg);
    let mut t = Tens::zero(x.rank, x.deg);
    for (k, c) in &x.terms {
        for perm in k.iter().copied().permutations(k.len()) {
            let (s, _) = sort_sign(&perm).unwrap();
            t.add_term(perm, c.scale(&(&w * q(s))));
        }
    }
    t
}

/// Element of `Λ^p ⊗ Λ^q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtPair<C> {
    pub rank: usize,
    pub p: usize,
    pub q: usize,
    pub terms: BTreeMap<(Idx, Idx), C>,
}

impl<C: Coeff> ExtPair<C> {
    pub fn zero(rank: usize, p: usize, q: usize) -> Self {
        ExtPair {
            rank,
            p,
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, a: Idx, b: Idx, c: C) {
        accumulate(&mut self.terms, (a, b), c);
    }
}

/// Shuffle coproduct terms of a basis vector: `(sign, A, B)` over all
/// splittings of `s` into a `p`-subset and its complement.
pub fn shuffles(s: &[usize], p: usize) -> Vec<(i64, Idx, Idx)> {
    s.iter()
        .copied()
        .combinations(p)
        .map(|a| {
            let b = complement(s, &a).unwrap();
            let (sg, _) = merge(&a, &b).unwrap();
            (sg, a, b)
        })
        .collect()
}

/// `W_{p,q}`, normalized by `p!q!/(p+q)!` so that `∧ ∘ W = id`.
pub fn shuffle_w<C: Coeff>(p: usize, qd: usize, x: &Ext<C>) -> Result<ExtPair<C>> {
    if x.deg != p + qd {
        return Err(Error::Structural(format!(
            "W_{{{p},{qd}}} applied to degree {}",
            x.deg
        )));
    }
    let w = Q::one() / binom(p + qd, p);
    let mut out = ExtPair::zero(x.rank, p, qd);
    for (k, c) in &x.terms {
        for (sg, a, b) in shuffles(k, p) {
            out.add_term(a, b, c.scale(&(&w * q(sg))));
        }
    }
    Ok(out)
}

pub fn wedge_pair<C: Coeff>(x: &ExtPair<C>) -> Ext<C> {
    let mut out = Ext::zero(x.rank, x.p + x.q);
    for ((a, b), c) in &x.terms {
        if let Some((s, m)) = merge(a, b) {
            out.add_term(m, c.scale(&q(s)));
        }
    }
    out
}

/// A Q-linear map `Λ^p → Λ^k` of a rank-`s` module, in the lexicographic bases.
#[derive(Clone, Debug, PartialEq)]
pub struct LinMap {
    pub s: usize,
    pub p: usize,
    pub k: usize,
    pub mat: Mat,
}

impl LinMap {
    pub fn from_fn(s: usize, p: usize, k: usize, f: impl Fn(&[usize]) -> Ext<Q>) -> LinMap {
        let rows = subset_index(s, k);
        let cols = subsets(s, p);
        let mut mat = Mat::zeros(rows.len(), cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (idx, v) in &f(c).terms {
                mat.set(rows[idx], j, v.clone());
            }
        }
        LinMap { s, p, k, mat }
    }

    pub fn from_mat(s: usize, p: usize, k: usize, mat: Mat) -> Result<LinMap> {
        let shape = (subsets(s, k).len(), subsets(s, p).len());
        if (mat.rows, mat.cols) != shape {
            return Err(Error::Structural(format!(
                "map Λ^{p}→Λ^{k} of rank {s} needs shape {:?}",
                shape
            )));
        }
        Ok(LinMap { s, p, k, mat })
    }

    pub fn identity(s: usize, p: usize) -> LinMap {
        LinMap {
            s,
            p,
            k: p,
            mat: Mat::identity(subsets(s, p).len()),
        }
    }

    pub fn apply(&self, x: &Ext<Q>) -> Ext<Q> {
        let cols = subset_index(self.s, self.p);
        let rows = subsets(self.s, self.k);
        let mut out = Ext::zero(self.s, self.k);
        for (idx, c) in &x.terms {
            let j = cols[idx];
            for (i, r) in rows.iter().enumerate() {
                let v = self.mat.get(i, j);
                if !Zero::is_zero(v) {
                    out.add_term(r.clone(), v * c);
                }
            }
        }
        out
    }

    pub fn compose(&self, first: &LinMap) -> Result<LinMap> {
        if first.k != self.p || first.s != self.s {
            return Err(Error::Structural("composing mismatched maps".into()));
        }
        Ok(LinMap {
            s: self.s,
            p: first.p,
            k: self.k,
            mat: self.mat.mul(&first.mat),
        })
    }
}

/// `a ∧ ·` on `Λ^p`.
pub fn wedge_by(a: &Ext<Q>, p: usize) -> LinMap {
    let s = a.rank;
    LinMap::from_fn(s, p, a.deg + p, |idx| {
        a.wedge(&Ext::monomial(s, idx, Q::one()).unwrap()).unwrap()
    })
}

/// `t^m_{k,p}(φ) = ∧ ∘ (φ⊗id) ∘ W_{p,m}`.
pub fn translate(m: usize, phi: &LinMap) -> Result<LinMap> {
    let s = phi.s;
    if phi.p + m > s || phi.k + m > s {
        return Err(Error::Structural(format!(
            "translation by {m} leaves a rank {s} exterior algebra"
        )));
    }
    let src = subset_index(s, phi.p);
    let tgt = subsets(s, phi.k);
    Ok(LinMap::from_fn(s, phi.p + m, phi.k + m, |idx| {
        let x = Ext::monomial(s, idx, Q::one()).unwrap();
        let w = shuffle_w(phi.p, m, &x).unwrap();
        let mut out = Ext::zero(s, phi.k + m);
        for ((a, b), c) in &w.terms {
            let j = src[a];
            for (i, t) in tgt.iter().enumerate() {
                let v = phi.mat.get(i, j);
                if Zero::is_zero(v) {
                    continue;
                }
                if let Some((sg, u)) = merge(t, b) {
                    out.add_term(u, c * v * q(sg));
                }
            }
        }
        out
    }))
}

/// `v ⌟ φ`, the transpose of `x ↦ x ∧ v`.
pub fn contract_left<C: Coeff>(v: &Ext<C>, phi: &Ext<C>) -> Ext<C> {
    if v.deg > phi.deg {
        return Ext::zero(phi.rank, 0);
    }
    let mut out = Ext::zero(phi.rank, phi.deg - v.deg);
    for (t, cv) in &v.terms {
        for (s, cp) in &phi.terms {
            if let Some(u) = complement(s, t) {
                let (sg, _) = merge(&u, t).unwrap();
                out.add_term(u, cv.mul(cp).scale(&q(sg)));
            }
        }
    }
    out
}

/// `φ ⌞ v`, the transpose of `x ↦ v ∧ x`.
pub fn contract_right<C: Coeff>(phi: &Ext<C>, v: &Ext<C>) -> Ext<C> {
    if v.deg > phi.deg {
        return Ext::zero(phi.rank, 0);
    }
    let mut out = Ext::zero(phi.rank, phi.deg - v.deg);
    for (t, cv) in &v.terms {
        for (s, cp) in &phi.terms {
            if let Some(u) = complement(s, t) {
                let (sg, _) = merge(t, &u).unwrap();
                out.add_term(u, cv.mul(cp).scale(&q(sg)));
            }
        }
    }
    out
}

/// `±1`-valued function on `{(i, j) : i + j ≤ r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignFunction {
    pub r: usize,
    values: Vec<i8>,
}

impl SignFunction {
    pub fn domain(r: usize) -> Vec<(usize, usize)> {
        (0..=r)
            .flat_map(|i| (0..=r - i).map(move |j| (i, j)))
            .collect()
    }

    pub fn from_fn(r: usize, f: impl Fn(usize, usize) -> i64) -> SignFunction {
        let values = Self::domain(r)
            .into_iter()
            .map(|(i, j)| if f(i, j) >= 0 { 1 } else { -1 })
            .collect();
        SignFunction { r, values }
    }

    /// The function whose value at the `k`-th domain point is `-1` iff bit `k` is set.
    pub fn from_bits(r: usize, bits: u64) -> SignFunction {
        let n = Self::domain(r).len();
        let values = (0..n)
            .map(|k| if bits >> k & 1 == 1 { -1 } else { 1 })
            .collect();
        SignFunction { r, values }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        let k = Self::domain(self.r)
            .iter()
            .position(|&x| x == (i, j))
            .expect("outside domain");
        self.values[k] as i64
    }

    pub fn table(&self) -> Vec<Vec<i64>> {
        let mut t = vec![vec![0; self.r + 1]; self.r + 1];
        for (k, (i, j)) in Self::domain(self.r).into_iter().enumerate() {
            t[i][j] = self.values[k] as i64;
        }
        t
    }

    /// The named conventions, in a fixed order.
    pub fn standard(r: usize) -> Vec<(&'static str, SignFunction)> {
        let tri = |p: usize| (p * (p + 1) / 2) as i64;
        vec![
            ("trivial", SignFunction::from_fn(r, |_, _| 1)),
            ("parity", SignFunction::from_fn(r, |p, _| sign_i(p as i64))),
            (
                "triangular",
                SignFunction::from_fn(r, |p, q| sign_i(tri(p) + (p * q) as i64)),
            ),
            (
                "triangular-parity",
                SignFunction::from_fn(r, |p, q| sign_i(tri(p) + (p * q + p) as i64)),
            ),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn mask_merge_sign(a: u32, b: u32) -> i64 {
    // pairs (x in a, y in b) with x > y
    let mut inv = 0u32;
    let mut bb = b;
    while bb != 0 {
        let y = bb.trailing_zeros();
        inv += (a >> (y + 1)).count_ones();
        bb &= bb - 1;
    }
    sign_i(inv as i64)
}

/// Untwisted contraction of `e_t` against `e*_s` on bitmasks.
fn mask_contract(side: Side, t: u32, s: u32) -> Option<(i64, u32)> {
    if t & !s != 0 {
        return None;
    }
    let u = s & !t;
    let sg = match side {
        Side::Left => mask_merge_sign(u, t),
        Side::Right => mask_merge_sign(t, u),
    };
    Some((sg, u))
}

/// Whether the `χ`-twisted contraction is a module action (unit and
/// associativity on all basis triples of a rank-`r` module).
pub fn check_sign_action(chi: &SignFunction, side: Side) -> bool {
    let r = chi.r;
    let tab = chi.table();
    let full = 1u32 << r;
    let tw = |t: u32, s: u32| -> Option<(i64, u32)> {
        let (sg, u) = mask_contract(side, t, s)?;
        Some((sg * tab[t.count_ones() as usize][r - s.count_ones() as usize], u))
    };
    for s in 0..full {
        if tw(0, s) != Some((1, s)) {
            return false;
        }
    }
    for v in 0..full {
        for w in 0..full {
            if v & w != 0 {
                continue;
            }
            let vw_sign = mask_merge_sign(v, w);
            let vw = v | w;
            for s in 0..full {
                let lhs = tw(vw, s).map(|(sg, u)| (sg * vw_sign, u));
                let rhs = match side {
                    Side::Left => tw(w, s).and_then(|(a, u)| tw(v, u).map(|(b, x)| (a * b, x))),
                    Side::Right => tw(v, s).and_then(|(a, u)| tw(w, u).map(|(b, x)| (a * b, x))),
                };
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// All sign functions on `Δ_r` giving a module action on the given side.
pub fn sign_census(r: usize, side: Side) -> Vec<SignFunction> {
    let n = SignFunction::domain(r).len();
    (0..1u64 << n)
        .map(|b| SignFunction::from_bits(r, b))
        .filter(|chi| check_sign_action(chi, side))
        .collect()
}

fn det_dual(r: usize) -> Ext<Q> {
    Ext::monomial(r, &(0..r).collect::<Vec<_>>(), Q::one()).unwrap()
}

/// `D^ℓ(v ⊗ ξ) = v ⌟ ξ` with `ξ = e*_1 ∧ … ∧ e*_r`, as a map `Λ^p E → Λ^{r−p} E*`.
pub fn duality_left(r: usize, p: usize) -> LinMap {
    let xi = det_dual(r);
    LinMap::from_fn(r, p, r - p, |idx| {
        contract_left(&Ext::monomial(r, idx, Q::one()).unwrap(), &xi)
    })
}

/// `D^r(v ⊗ ξ) = ξ ⌞ v`.
pub fn duality_right(r: usize, p: usize) -> LinMap {
    let xi = det_dual(r);
    LinMap::from_fn(r, p, r - p, |idx| {
        contract_right(&xi, &Ext::monomial(r, idx, Q::one()).unwrap())
    })
}

/// Terms of the Koszul differential on `e_S`: `(k, sign, S∖{s_k})` meaning
/// `sign · φ(e_{s_k}) e_{S∖s_k}`.
pub fn koszul_terms(s: &[usize]) -> Vec<(usize, i64, Idx)> {
    (0..s.len())
        .map(|i| {
            let mut rest = s.to_vec();
            let k = rest.remove(i);
            (k, sign_i(i as i64), rest)
        })
        .collect()
}

/// `L(M, φ)`: `Λ^p M` in degree `−p`, differential the right contraction by `φ`.
pub fn koszul_complex(phi: &[Q]) -> Complex {
    let s = phi.len();
    let dims: Vec<usize> = (0..=s).rev().map(|p| subsets(s, p).len()).collect();
    let mut d = Vec::new();
    for p in (1..=s).rev() {
        let rows = subset_index(s, p - 1);
        let cols = subsets(s, p);
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (k, sg, rest) in koszul_terms(c) {
                m.add_at(rows[&rest], j, &(&phi[k] * q(sg)));
            }
        }
        d.push(m);
    }
    Complex::new(-(s as i32), dims, d).expect("Koszul differential squares to zero")
}

/// The duality `Hom(L, A) → (L,−δ) ⊗ det M*[−s]` induced by `D^r` with the
/// roles of `M` and `M*` exchanged, with its chain-map and invertibility verdict.
pub struct KoszulDuality {
    pub dual: Complex,
    pub twisted: Complex,
    pub map: ComplexMap,
    pub ok: bool,
}

pub fn koszul_dual_check(phi: &[Q]) -> KoszulDuality {
    let s = phi.len();
    let l = koszul_complex(phi);
    let (dual, _) = hom_complex(&l, &Complex::concentrated(0, 1));
    let (twisted, _) = tensor_complex(&l.negate_differential(), &Complex::concentrated(s as i32, 1));
    // degree n: source Λ^n M*, target Λ^{s−n} M
    let map = ComplexMap::from_fn(&dual, &twisted, 0, |n| duality_right(s, n as usize).mat);
    let ok = map.is_chain_map(&dual, &twisted)
        && map.maps.iter().all(|m| m.rows == m.cols && m.rank() == m.rows);
    KoszulDuality {
        dual,
        twisted,
        map,
        ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn e(s: usize, idx: &[usize]) -> Ext<Q> {
        Ext::monomial(s, idx, Q::one()).unwrap()
    }

    #[test]
    fn wedge_basics() {
        assert!(e(2, &[0]).wedge(&e(2, &[0])).unwrap().is_zero());
        assert_eq!(e(2, &[0]).wedge(&e(2, &[1])).unwrap(), e(2, &[0, 1]));
        assert!(e(2, &[0]).wedge(&e(3, &[1])).is_err());
    }

    #[test]
    fn antisymmetrize_sorts_with_sign() {
        let mut t = Tens::zero(3, 3);
        t.add_term(vec![1, 0, 2], Q::one());
        assert_eq!(antisymmetrize(&t), e(3, &[0, 1, 2]).scale(&q(-1)));
    }

    #[test]
    fn shuffle_w_first_example() {
        let w = shuffle_w(1, 1, &e(2, &[0, 1])).unwrap();
        assert_eq!(w.terms[&(vec![0], vec![1])], qr(1, 2));
        assert_eq!(w.terms[&(vec![1], vec![0])], qr(-1, 2));
        let w0 = shuffle_w(2, 0, &e(2, &[0, 1])).unwrap();
        assert_eq!(w0.terms.len(), 1);
        assert_eq!(w0.terms[&(vec![0, 1], vec![])], Q::one());
    }

    #[test]
    fn translate_identity_is_identity() {
        for s in 1..=4 {
            for p in 0..=s {
                for m in 0..=s - p {
                    let t = translate(m, &LinMap::identity(s, p)).unwrap();
                    assert_eq!(t, LinMap::identity(s, p + m));
                }
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let phi = e(2, &[0, 1]);
        assert_eq!(contract_left(&e(2, &[0]), &phi), e(2, &[1]).scale(&q(-1)));
        assert_eq!(contract_right(&phi, &e(2, &[0])), e(2, &[1]));
        assert_eq!(contract_left(&e(2, &[]), &phi), phi);
    }

    #[test]
    fn koszul_duality_for_every_small_form() {
        for s in 1..=4 {
            for k in 0..3usize.pow(s as u32) {
                let phi: Vec<Q> = (0..s).map(|t| q((k / 3usize.pow(t as u32) % 3) as i64 - 1)).collect();
                let dual = koszul_dual_check(&phi);
                assert!(dual.ok, "{phi:?}");
            }
        }
    }

    #[test]
    fn koszul_rank_one() {
        let c = koszul_complex(&[q(7)]);
        assert_eq!(c.d_at(-1), Mat::from_i64(&[&[7]]));
    }

    #[test]
    fn merge_sign_matches_sort() {
        for a in subsets(5, 2) {
            for b in subsets(5, 2) {
                let mut cat = a.clone();
                cat.extend(&b);
                assert_eq!(merge(&a, &b), sort_sign(&cat));
            }
        }
    }

    #[test]
    fn census_sizes() {
        for side in [Side::Left, Side::Right] {
            let two = sign_census(2, side);
            let std2: Vec<SignFunction> = SignFunction::standard(2).into_iter().map(|x| x.1).collect();
            assert_eq!(two.len(), 4);
            assert!(std2.iter().all(|c| two.contains(c)));
            let three = sign_census(3, side);
            assert_eq!(three.len(), 8);
            assert!(SignFunction::standard(3).iter().all(|(_, c)| three.contains(c)));
        }
    }
}
