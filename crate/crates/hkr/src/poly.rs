//! Multivariate polynomials over Q with untruncated arithmetic.
//!
//! Truncation to a degree bound happens only when an element is realized in a
//! finite-dimensional graded piece (see `module`).

use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, q, Q};

pub type Exps = Vec<u8>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Exps, Q>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{}", i + 1)).collect();
        write!(f, "{}", self.render(&names))
    }
}

pub fn deg(e: &[u8]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Q::one())
    }

    pub fn monomial(e: Exps, c: Q) -> Poly {
        let mut p = Poly::zero(e.len());
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| deg(e)).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| deg(e)).min()
    }

    pub fn constant_term(&self) -> Q {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, e: Exps, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * q(e[i] as i64));
        }
        out
    }

    /// Drops every term of total degree above `d`.
    pub fn truncate(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| deg(e) <= d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Keeps the terms whose exponents satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(&[u8]) -> bool) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Reinterprets the polynomial in a ring with more variables appended.
    pub fn extend_vars(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars);
        Poly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2.resize(nvars, 0);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Restriction to the first `nvars` variables; terms involving the others must be absent.
    pub fn restrict_vars(&self, nvars: usize) -> Poly {
        let mut out = Poly::zero(nvars);
        for (e, c) in &self.terms {
            assert!(e[nvars..].iter().all(|&x| x == 0), "term involves dropped variable");
            out.add_term(e[..nvars].to_vec(), c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            let coef = fmt_q(c);
            let s = if mono.is_empty() {
                coef
            } else if c.is_one() {
                mono.join("*")
            } else if *c == -Q::one() {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", coef, mono.join("*"))
            };
            parts.push(s);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut acc: BTreeMap<Exps, Q> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

/// All exponent vectors in `nvars` variables of total degree exactly `d`,
/// in descending lexicographic order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Exps> {
    fn rec(n: usize, d: u32, prefix: &mut Exps, out: &mut Vec<Exps>) {
        if n == 1 {
            prefix.push(d as u8);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k as u8);
            rec(n - 1, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(nvars, d, &mut Vec::new(), &mut out);
    out
}

const MAX_EXPONENT: u32 = 32;
const MAX_DEGREE: u32 = 64;
const MAX_TERMS: usize = 20_000;
const MAX_DEPTH: usize = 48;

/// Parses a polynomial over Q in the named variables.
///
/// Grammar: sums and differences of products of rational literals, variable
/// names, and parenthesised groups, each optionally raised to `^k`.
pub fn parse_poly(src: &str, names: &[String]) -> Result<Poly> {
    let mut p = Parser {
        s: src.as_bytes(),
        i: 0,
        names,
        depth: 0,
    };
    let out = p.expr()?;
    p.ws();
    if p.i != p.s.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
    names: &'a [String],
    depth: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            what: "polynomial",
            at: self.i,
            msg: msg.into(),
        })
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn check(&self, p: &Poly) -> Result<()> {
        if p.terms.len() > MAX_TERMS || p.degree().unwrap_or(0) > MAX_DEGREE {
            return self.err("polynomial too large");
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Poly> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("nesting too deep");
        }
        let n = self.names.len();
        let mut acc = Poly::zero(n);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.i += 1;
                    false
                }
                Some(b'-') => {
                    self.i += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            self.check(&acc)?;
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.i += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(c) if c == b'(' || c.is_ascii_alphabetic() || c.is_ascii_digit() => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => break,
            }
            self.check(&acc)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            self.ws();
            let start = self.i;
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            if start == self.i || self.i - start > 3 {
                return self.err("expected small exponent");
            }
            let k: u32 = std::str::from_utf8(&self.s[start..self.i])
                .unwrap()
                .parse()
                .unwrap();
            if k > MAX_EXPONENT {
                return self.err("exponent too large");
            }
            let d = base.degree().unwrap_or(0);
            if d * k > MAX_DEGREE {
                return self.err("polynomial too large");
            }
            let out = base.pow(k);
            self.check(&out)?;
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.names.len();
        match self.peek() {
            Some(b'(') => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.i += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.i;
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                if self.i < self.s.len() && self.s[self.i] == b'/' {
                    self.i += 1;
                    let d0 = self.i;
                    while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                        self.i += 1;
                    }
                    if d0 == self.i {
                        return self.err("expected denominator");
                    }
                }
                let lit = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                let c = parse_q(lit).map_err(|_| Error::Parse {
                    what: "polynomial",
                    at: start,
                    msg: "bad rational literal".into(),
                })?;
                Ok(Poly::constant(n, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.i;
                while self.i < self.s.len()
                    && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_')
                {
                    self.i += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                match self.names.iter().position(|v| v == name) {
                    Some(k) => Ok(Poly::var(n, k)),
                    None => Err(Error::Parse {
                        what: "polynomial",
                        at: start,
                        msg: format!("unknown variable {name:?}"),
                    }),
                }
            }
            _ => self.err("expected term"),
        }
    }
}

/// Variable names `x1..xm` (or `x` when m = 1) followed by `y1..yr`.
pub fn standard_names(m: usize, r: usize) -> Vec<String> {
    let mut v: Vec<String> = if m == 1 {
        vec!["x".into()]
    } else {
        (1..=m).map(|i| format!("x{i}")).collect()
    };
    if r == 1 {
        v.push("y".into());
    } else {
        v.extend((1..=r).map(|i| format!("y{i}")));
    }
    v
}
