//! Finite nerves, locally constant coefficient systems on them, and their
//! ordered Čech complexes.
//!
//! Simplices are strictly increasing vertex tuples. A cochain value on
//! `(α_0 < … < α_k)` is written in the coordinates of the chart `α_0`.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

use crate::chain::Complex;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rational::{sign, Q};

/// Deepest simplex dimension the engine is sized for.
pub const MAX_DEPTH: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct Nerve {
    pub name: String,
    pub vertices: usize,
    /// `simplices[k]` lists the `k`-simplices in lexicographic order.
    pub simplices: Vec<Vec<Vec<usize>>>,
    index: HashMap<Vec<usize>, usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct NerveSpec {
    pub vertices: Vec<serde_json::Value>,
    pub simplices: Vec<Vec<usize>>,
}

pub fn parse_nerve(src: &str) -> Result<Nerve> {
    let spec: NerveSpec = serde_json::from_str(src).map_err(|e| Error::Parse {
        what: "nerve",
        at: e.column(),
        msg: e.to_string(),
    })?;
    Nerve::new("file", spec.vertices.len(), &spec.simplices)
}

impl Nerve {
    /// Builds the face closure of the given simplices; every vertex is a 0-simplex.
    pub fn new(name: &str, vertices: usize, generators: &[Vec<usize>]) -> Result<Nerve> {
        if vertices == 0 {
            return Err(Error::Invalid("a nerve needs at least one vertex".into()));
        }
        let mut all: BTreeSet<Vec<usize>> = (0..vertices).map(|v| vec![v]).collect();
        for s in generators {
            let mut t = s.clone();
            t.sort_unstable();
            t.dedup();
            if t.len() != s.len() || t.is_empty() {
                return Err(Error::Invalid(format!("simplex {s:?} repeats a vertex or is empty")));
            }
            if t.iter().any(|&v| v >= vertices) {
                return Err(Error::Invalid(format!("simplex {s:?} names a missing vertex")));
            }
            if t.len() > MAX_DEPTH + 1 {
                return Err(Error::Invalid(format!("simplex {s:?} exceeds depth {MAX_DEPTH}")));
            }
            for mask in 1u32..(1 << t.len()) {
                all.insert((0..t.len()).filter(|b| mask >> b & 1 == 1).map(|b| t[b]).collect());
            }
        }
        let top = all.iter().map(|s| s.len()).max().unwrap();
        let mut simplices = vec![Vec::new(); top];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        let mut index = HashMap::new();
        for level in &simplices {
            for (n, s) in level.iter().enumerate() {
                index.insert(s.clone(), n);
            }
        }
        Ok(Nerve {
            name: name.to_string(),
            vertices,
            simplices,
            index,
        })
    }

    pub fn point() -> Nerve {
        Nerve::new("point", 1, &[]).unwrap()
    }

    /// Two charts meeting in one overlap.
    pub fn two_chart() -> Nerve {
        Nerve::new("two-chart", 2, &[vec![0, 1]]).unwrap()
    }

    /// Three charts glued in a cycle with no triple overlap.
    pub fn circle() -> Nerve {
        Nerve::new("circle", 3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    /// Boundary of the tetrahedron: a 2-sphere.
    pub fn sphere() -> Nerve {
        Nerve::new("sphere", 4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    /// Boundary of the 4-simplex: a 3-sphere.
    pub fn sphere3() -> Nerve {
        let faces: Vec<Vec<usize>> = (0..5).map(|o| (0..5).filter(|&v| v != o).collect()).collect();
        Nerve::new("sphere3", 5, &faces).unwrap()
    }

    /// The seven-vertex triangulation of the torus.
    pub fn torus() -> Nerve {
        let faces: Vec<Vec<usize>> = (0..7)
            .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
            .collect();
        Nerve::new("torus", 7, &faces).unwrap()
    }

    pub fn by_name(name: &str) -> Result<Nerve> {
        match name {
            "point" => Ok(Nerve::point()),
            "two-chart" => Ok(Nerve::two_chart()),
            "circle" => Ok(Nerve::circle()),
            "sphere" => Ok(Nerve::sphere()),
            "sphere3" => Ok(Nerve::sphere3()),
            "torus" => Ok(Nerve::torus()),
            _ => Err(Error::Invalid(format!("unknown nerve {name:?}"))),
        }
    }

    pub fn names() -> &'static [&'static str] {
        &["point", "two-chart", "circle", "sphere", "sphere3", "torus"]
    }

    /// Largest simplex dimension.
    pub fn depth(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, |s| s.len())
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        self.simplices.get(1).map_or(&[], |s| s.as_slice())
    }

    pub fn position(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.position(&[a.min(b), a.max(b)])
    }

    /// Rejects computations needing cochains above the nerve's depth.
    pub fn require_depth(&self, k: usize) -> Result<()> {
        if k > self.depth() {
            return Err(Error::Invalid(format!(
                "nerve {:?} has depth {}, degree {k} requested",
                self.name,
                self.depth()
            )));
        }
        Ok(())
    }
}

/// A locally constant coefficient system: one fiber `Q^dim` per chart, and
/// for each edge `α < β` the change of coordinates from chart `α` to chart `β`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalSystem {
    pub dim: usize,
    pub trans: Vec<Mat>,
    inv: Vec<Mat>,
}

impl LocalSystem {
    pub fn constant(nerve: &Nerve, dim: usize) -> LocalSystem {
        let trans = vec![Mat::identity(dim); nerve.count(1)];
        LocalSystem {
            dim,
            inv: trans.clone(),
            trans,
        }
    }

    /// Validates invertibility and the composition law on every triangle.
    pub fn new(nerve: &Nerve, dim: usize, trans: Vec<Mat>) -> Result<LocalSystem> {
        if trans.len() != nerve.count(1) || trans.iter().any(|g| g.rows != dim || g.cols != dim) {
            return Err(Error::Structural(format!("need one {dim}×{dim} transition per edge")));
        }
        let inv = trans
            .iter()
            .map(|g| g.inverse().ok_or_else(|| Error::Invalid("transition is not invertible".into())))
            .collect::<Result<Vec<Mat>>>()?;
        let ls = LocalSystem { dim, trans, inv };
        if let Some(t) = ls.cocycle_failure(nerve) {
            return Err(Error::Invariant(format!("transitions fail the cocycle law on {t:?}")));
        }
        Ok(ls)
    }

    pub fn cocycle_failure(&self, nerve: &Nerve) -> Option<Vec<usize>> {
        nerve.simplices.get(2)?.iter().find_map(|t| {
            let g = |a, b| self.between(nerve, a, b);
            (g(t[0], t[2]) != g(t[1], t[2]).mul(&g(t[0], t[1]))).then(|| t.clone())
        })
    }

    /// Coordinates in chart `a` to coordinates in chart `b`.
    pub fn between(&self, nerve: &Nerve, a: usize, b: usize) -> Mat {
        if a == b {
            return Mat::identity(self.dim);
        }
        let e = nerve.edge_index(a, b).expect("charts overlap");
        if a < b {
            self.trans[e].clone()
        } else {
            self.inv[e].clone()
        }
    }

    /// `Hom(self, tgt)` with `F ↦ g_tgt F g_self^{−1}`, vectorized row-major.
    pub fn hom(&self, tgt: &LocalSystem) -> LocalSystem {
        let (a, b) = (self.dim, tgt.dim);
        let kron = |w: &Mat, vinv: &Mat| {
            let mut k = Mat::zeros(a * b, a * b);
            for i in 0..b {
                for j in 0..a {
                    for i2 in 0..b {
                        let wv = w.get(i2, i);
                        if num_traits::Zero::is_zero(wv) {
                            continue;
                        }
                        for j2 in 0..a {
                            let v = vinv.get(j, j2);
                            if !num_traits::Zero::is_zero(v) {
                                k.add_at(i2 * a + j2, i * a + j, &(wv * v));
                            }
                        }
                    }
                }
            }
            k
        };
        let trans: Vec<Mat> = tgt.trans.iter().zip(&self.inv).map(|(w, vi)| kron(w, vi)).collect();
        let inv = tgt.inv.iter().zip(&self.trans).map(|(w, v)| kron(w, v)).collect();
        LocalSystem {
            dim: a * b,
            trans,
            inv,
        }
    }
}

/// A `k`-cochain: one fiber vector per `k`-simplex, in the chart of its first vertex.
pub type Cochain = Vec<Vec<Q>>;

/// `(δx)_{α_0..α_{k+1}} = g_{α_1→α_0} x_{α_1..} + Σ_{i≥1} (−1)^i x_{..α̂_i..}`.
pub fn coboundary_matrix(nerve: &Nerve, ls: &LocalSystem, k: usize) -> Mat {
    let n = ls.dim;
    let rows = nerve.count(k + 1);
    let cols = nerve.count(k);
    let mut m = Mat::zeros(rows * n, cols * n);
    if rows == 0 {
        return m;
    }
    for (si, s) in nerve.simplices[k + 1].iter().enumerate() {
        for i in 0..=k + 1 {
            let face: Vec<usize> = s.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &v)| v).collect();
            let fi = nerve.position(&face).expect("face-closed");
            let block = if i == 0 {
                ls.between(nerve, s[1], s[0])
            } else {
                Mat::scalar(n, &sign(i as i64))
            };
            m.paste(si * n, fi * n, &block);
        }
    }
    m
}

/// The Čech complex `C^0 → C^1 → …` of a local system.
pub fn cech_complex(nerve: &Nerve, ls: &LocalSystem) -> Complex {
    let top = nerve.depth();
    let dims = (0..=top).map(|k| nerve.count(k) * ls.dim).collect();
    let d = (0..top).map(|k| coboundary_matrix(nerve, ls, k)).collect();
    Complex::new(0, dims, d).expect("δ² = 0 for a cocycle of transitions")
}

/// Betti numbers of the Čech complex, degree `0..=depth`.
pub fn cech_cohomology(nerve: &Nerve, ls: &LocalSystem) -> Vec<usize> {
    let c = cech_complex(nerve, ls);
    (0..=nerve.depth() as i32).map(|k| c.betti(k)).collect()
}

pub fn flatten(x: &Cochain) -> Vec<Q> {
    x.iter().flatten().cloned().collect()
}

pub fn unflatten(v: &[Q], dim: usize) -> Cochain {
    if dim == 0 {
        return Vec::new();
    }
    v.chunks(dim).map(|c| c.to_vec()).collect()
}

/// `δx`, for a `k`-cochain `x`.
pub fn coboundary(nerve: &Nerve, ls: &LocalSystem, k: usize, x: &Cochain) -> Cochain {
    unflatten(&coboundary_matrix(nerve, ls, k).apply(&flatten(x)), ls.dim)
}

pub fn is_cocycle(nerve: &Nerve, ls: &LocalSystem, k: usize, x: &Cochain) -> bool {
    k >= nerve.depth() || crate::linalg::vec_is_zero(&coboundary_matrix(nerve, ls, k).apply(&flatten(x)))
}

/// Whether `x` is a cocycle whose class vanishes.
pub fn is_coboundary(nerve: &Nerve, ls: &LocalSystem, k: usize, x: &Cochain) -> bool {
    if !is_cocycle(nerve, ls, k, x) {
        return false;
    }
    if k == 0 {
        return crate::linalg::vec_is_zero(&flatten(x));
    }
    coboundary_matrix(nerve, ls, k - 1).solve_vec(&flatten(x)).is_some()
}

/// Class coordinates in a fixed basis of `H^k`, or `None` if `x` is not a cocycle.
pub fn class_of(nerve: &Nerve, ls: &LocalSystem, k: usize, x: &Cochain) -> Option<Vec<Q>> {
    if !is_cocycle(nerve, ls, k, x) {
        return None;
    }
    let h = cech_complex(nerve, ls).homology(k as i32);
    Some(h.proj.apply(&flatten(x)))
}

/// Representatives of a basis of `H^k`.
pub fn class_basis(nerve: &Nerve, ls: &LocalSystem, k: usize) -> Vec<Cochain> {
    let h = cech_complex(nerve, ls).homology(k as i32);
    (0..h.dim).map(|c| unflatten(&h.reps.col(c), ls.dim)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_betti_numbers() {
        let b = |n: Nerve| cech_cohomology(&n, &LocalSystem::constant(&n, 1));
        assert_eq!(b(Nerve::point()), vec![1]);
        assert_eq!(b(Nerve::two_chart()), vec![1, 0]);
        assert_eq!(b(Nerve::circle()), vec![1, 1]);
        assert_eq!(b(Nerve::sphere()), vec![1, 0, 1]);
        assert_eq!(b(Nerve::sphere3()), vec![1, 0, 0, 1]);
        assert_eq!(b(Nerve::torus()), vec![1, 2, 1]);
    }

    #[test]
    fn circle_incidence_has_rank_two() {
        let n = Nerve::circle();
        let d = coboundary_matrix(&n, &LocalSystem::constant(&n, 1), 0);
        // rows 01, 02, 12; columns 0, 1, 2
        assert_eq!(d, Mat::from_i64(&[&[-1, 1, 0], &[-1, 0, 1], &[0, -1, 1]]));
        assert_eq!(d.rank(), 2);
    }

    #[test]
    fn parses_and_closes_faces() {
        let n = parse_nerve(r#"{"vertices": ["a", "b", "c"], "simplices": [[0, 1, 2]]}"#).unwrap();
        assert_eq!(n.count(1), 3);
        assert_eq!(n.count(2), 1);
        assert!(parse_nerve(r#"{"vertices": [0], "simplices": [[0, 3]]}"#).is_err());
        assert!(parse_nerve(r#"{"vertices": [0, 1], "simplices": [[1, 1]]}"#).is_err());
    }

    #[test]
    fn twisted_local_system_on_circle() {
        // monodromy −1 kills H^0 and H^1
        let n = Nerve::circle();
        let neg = Mat::scalar(1, &-Q::from_integer(1.into()));
        let ls = LocalSystem::new(&n, 1, vec![Mat::identity(1), Mat::identity(1), neg]).unwrap();
        assert_eq!(cech_cohomology(&n, &ls), vec![0, 0]);
    }

    #[test]
    fn transitions_must_compose_on_triangles() {
        let n = Nerve::sphere();
        let two = Mat::scalar(1, &Q::from_integer(2.into()));
        let mut t = vec![Mat::identity(1); n.count(1)];
        t[0] = two;
        assert!(matches!(LocalSystem::new(&n, 1, t), Err(Error::Invariant(_))));
    }
}
