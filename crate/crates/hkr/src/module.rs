//! Free modules over a truncated polynomial ring, realized as finite Q-vector spaces.
//!
//! A free module has labelled generators, each with a weight. The realized
//! basis is every pair (label, monomial) whose monomial degree plus label
//! weight stays within the bound. All maps built here are weight
//! nondecreasing, so truncation is a quotient by a subcomplex of high weight
//! and realized maps compose correctly.

use num_traits::Zero;
use std::collections::HashMap;

use crate::linalg::Mat;
use crate::poly::{deg, monomials_of_degree, Exps, Poly};
use crate::rational::Q;

/// An element: one polynomial coefficient per generator.
pub type Elem = Vec<Poly>;

#[derive(Clone, Debug)]
pub struct FreeMod {
    pub nvars: usize,
    pub bound: u32,
    pub weights: Vec<u32>,
    basis: Vec<(usize, Exps)>,
    index: HashMap<(usize, Exps), usize>,
}

impl FreeMod {
    pub fn new(nvars: usize, bound: u32, weights: Vec<u32>) -> FreeMod {
        let mut basis = Vec::new();
        let mut index = HashMap::new();
        for (l, &w) in weights.iter().enumerate() {
            if w > bound {
                continue;
            }
            for d in 0..=bound - w {
                for e in monomials_of_degree(nvars, d) {
                    index.insert((l, e.clone()), basis.len());
                    basis.push((l, e));
                }
            }
        }
        FreeMod {
            nvars,
            bound,
            weights,
            basis,
            index,
        }
    }

    /// Direct sum, labels of `self` first.
    pub fn sum(&self, other: &FreeMod) -> FreeMod {
        assert_eq!((self.nvars, self.bound), (other.nvars, other.bound));
        let mut w = self.weights.clone();
        w.extend_from_slice(&other.weights);
        FreeMod::new(self.nvars, self.bound, w)
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(usize, Exps)] {
        &self.basis
    }

    pub fn grade(&self, k: usize) -> u32 {
        let (l, e) = &self.basis[k];
        deg(e) + self.weights[*l]
    }

    pub fn grades(&self) -> Vec<u32> {
        (0..self.dim()).map(|k| self.grade(k)).collect()
    }

    pub fn index_of(&self, label: usize, e: &[u8]) -> Option<usize> {
        self.index.get(&(label, e.to_vec())).copied()
    }

    pub fn zero(&self) -> Elem {
        vec![Poly::zero(self.nvars); self.rank()]
    }

    pub fn generator(&self, label: usize) -> Elem {
        let mut v = self.zero();
        v[label] = Poly::one(self.nvars);
        v
    }

    pub fn basis_elem(&self, k: usize) -> Elem {
        let (l, e) = &self.basis[k];
        let mut v = self.zero();
        v[*l] = Poly::monomial(e.clone(), Q::from_integer(1.into()));
        v
    }

    /// Coordinates in the realized basis; terms beyond the bound are dropped.
    pub fn realize(&self, x: &[Poly]) -> Vec<Q> {
        assert_eq!(x.len(), self.rank(), "element has wrong rank");
        let mut v = vec![Q::zero(); self.dim()];
        for (l, p) in x.iter().enumerate() {
            for (e, c) in &p.terms {
                if let Some(&k) = self.index.get(&(l, e.clone())) {
                    v[k] += c;
                }
            }
        }
        v
    }

    pub fn lift(&self, v: &[Q]) -> Elem {
        let mut x = self.zero();
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (l, e) = &self.basis[k];
                x[*l].add_term(e.clone(), c.clone());
            }
        }
        x
    }

    /// True when the element has no term within the bound.
    pub fn vanishes(&self, x: &[Poly]) -> bool {
        self.realize(x).iter().all(|c| c.is_zero())
    }
}

pub fn elem_add(a: &[Poly], b: &[Poly]) -> Elem {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn elem_sub(a: &[Poly], b: &[Poly]) -> Elem {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn elem_scale(a: &[Poly], c: &Q) -> Elem {
    a.iter().map(|x| x.scale(c)).collect()
}

pub fn elem_mul(p: &Poly, a: &[Poly]) -> Elem {
    a.iter().map(|x| p * x).collect()
}

pub fn elem_add_assign(a: &mut [Poly], b: &[Poly]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = &*x + y;
        }
    }
}

/// Matrix of a Q-linear map given on each realized basis vector (label, monomial).
pub fn realize_map(src: &FreeMod, tgt: &FreeMod, f: impl Fn(usize, &Exps) -> Elem) -> Mat {
    let mut m = Mat::zeros(tgt.dim(), src.dim());
    for (k, (l, e)) in src.basis().iter().enumerate() {
        let v = tgt.realize(&f(*l, e));
        for (i, c) in v.into_iter().enumerate() {
            if !c.is_zero() {
                m.set(i, k, c);
            }
        }
    }
    m
}

/// Matrix of the polynomial-linear map sending generator `l` to `images[l]`.
pub fn realize_linear(src: &FreeMod, tgt: &FreeMod, images: &[Elem]) -> Mat {
    assert_eq!(images.len(), src.rank());
    realize_map(src, tgt, |l, e| {
        let mono = Poly::monomial(e.clone(), Q::from_integer(1.into()));
        elem_mul(&mono, &images[l])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn realized_dimension_counts_weights() {
        // one variable, bound 3: weight 0 label gives 4, weight 2 gives 2
        let m = FreeMod::new(1, 3, vec![0, 2]);
        assert_eq!(m.dim(), 6);
        assert_eq!(m.grades().iter().filter(|&&g| g == 3).count(), 2);
    }

    #[test]
    fn realize_lift_roundtrip() {
        let m = FreeMod::new(2, 2, vec![0, 1]);
        for k in 0..m.dim() {
            let e = m.basis_elem(k);
            let v = m.realize(&e);
            assert_eq!(m.lift(&v), e);
        }
    }

    #[test]
    fn multiplication_by_variable_truncates() {
        let m = FreeMod::new(1, 1, vec![0]);
        let x = Poly::var(1, 0);
        let mat = realize_linear(&m, &m, &[vec![x]]);
        assert_eq!(mat, Mat::from_i64(&[&[0, 0], &[1, 0]]));
    }
}
