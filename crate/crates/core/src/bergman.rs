//! Coarse Bergman fans of rank-3 simple matroids.
//!
//! Element `i` of a matroid on `N + 1` elements is sent to the basis vector
//! `u_i`, with `u_0 = -(u_1 + ... + u_N)`. A flat `I` gives the direction
//! `u_I = Σ_{i ∈ I} u_i`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::matroid::{ElementSet, Matroid, MatroidError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("basis vectors have determinant {0}, expected ±1")]
    NotUnimodular(i64),
    #[error("basis needs {expected} vectors of length {expected}, got {got}")]
    BasisShape { expected: usize, got: usize },
    #[error("matroid has {elements} elements but the ambient dimension is {dim}")]
    DimensionMismatch { elements: usize, dim: usize },
    #[error("direction of flat {0} is not primitive")]
    NotPrimitive(ElementSet),
    #[error("ray {0} is not balanced against its neighbours")]
    NotProportional(usize),
    #[error("ray {0:?} is not the direction of a line or point")]
    UndecodableRay(Vec<i64>),
    #[error("cone {0:?} refers to a missing ray")]
    BadCone((usize, usize)),
    #[error("fan data is inconsistent with every matroid: {0}")]
    Inconsistent(String),
}

/// A lattice basis `u_1, ..., u_N` of `ℤ^N` together with `u_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basis {
    u: Vec<Vec<i64>>,
}

impl Basis {
    /// `u_i = -e_i` and `u_0 = (1, ..., 1)`.
    pub fn standard(n: usize) -> Basis {
        let mut u = vec![vec![1; n]];
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = -1;
            u.push(v);
        }
        Basis { u }
    }

    /// Builds a basis from `u_1, ..., u_N`.
    pub fn new(vectors: Vec<Vec<i64>>) -> Result<Basis, FanError> {
        let n = vectors.len();
        if vectors.iter().any(|v| v.len() != n) {
            let got = vectors.iter().map(Vec::len).find(|&l| l != n).unwrap_or(0);
            return Err(FanError::BasisShape { expected: n, got });
        }
        let d = linalg::det(&vectors);
        if d.abs() != 1 {
            return Err(FanError::NotUnimodular(d));
        }
        let mut u0 = vec![0; n];
        for v in &vectors {
            u0 = linalg::add(&u0, v);
        }
        let mut u = vec![linalg::neg(&u0)];
        u.extend(vectors);
        Ok(Basis { u })
    }

    pub fn dim(&self) -> usize {
        self.u.len() - 1
    }

    /// `u_i` for `0 <= i <= N`.
    pub fn u(&self, i: usize) -> &[i64] {
        &self.u[i]
    }

    /// `u_1, ..., u_N`.
    pub fn lattice_basis(&self) -> &[Vec<i64>] {
        &self.u[1..]
    }

    pub fn u_set(&self, s: ElementSet) -> Vec<i64> {
        s.iter().fold(vec![0; self.dim()], |acc, i| linalg::add(&acc, &self.u[i]))
    }

    /// Coordinates `a` with `v = Σ_{i ≥ 1} a_i u_i`.
    pub fn coords(&self, v: &[i64]) -> Option<Vec<i64>> {
        linalg::integer_coords(self.lattice_basis(), v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RayKind {
    Line,
    Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    pub flat: ElementSet,
    pub dir: Vec<i64>,
}

impl Ray {
    pub fn kind(&self) -> RayKind {
        if self.flat.len() == 1 {
            RayKind::Line
        } else {
            RayKind::Point
        }
    }
}

/// A ray of the fine subdivision that was removed from the coarse fan,
/// with the two coarse rays whose cone now contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrunedRay {
    pub flat: ElementSet,
    pub dir: Vec<i64>,
    pub between: (usize, usize),
}

/// Case of the Corollary on missing rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MissingRay {
    None,
    /// The fan is all of `ℝ²` (only `U(3,3)`).
    FullPlane,
    /// The fan is `ℝ × L` for a tropical line `L` (`U(2,N) ⊕ {e}`).
    LineTimesR,
    /// Cone over `K_{k+1,l+1}` (parallel connection of `U(2,k+1)`, `U(2,l+1)`).
    BipartiteCone(usize, usize),
}

#[derive(Clone, Debug)]
pub struct FanPlane {
    dim: usize,
    rays: Vec<Ray>,
    cones: Vec<(usize, usize)>,
    pruned: Vec<PrunedRay>,
    matroid: Matroid,
    basis: Basis,
}

impl FanPlane {
    /// Coarse fan `Trop_Δ(M)`.
    pub fn build(m: &Matroid, basis: &Basis) -> Result<FanPlane, FanError> {
        m.require_simple_rank3()?;
        let n = basis.dim();
        if m.n_elements() != n + 1 {
            return Err(FanError::DimensionMismatch { elements: m.n_elements(), dim: n });
        }
        let mut rays: Vec<Ray> = Vec::new();
        let mut index: HashMap<ElementSet, usize> = HashMap::new();
        let mut push = |flat: ElementSet, rays: &mut Vec<Ray>| -> Result<usize, FanError> {
            let dir = basis.u_set(flat);
            if linalg::gcd_all(&dir) != 1 {
                return Err(FanError::NotPrimitive(flat));
            }
            rays.push(Ray { flat, dir });
            index.insert(flat, rays.len() - 1);
            Ok(rays.len() - 1)
        };
        for i in 0..=n {
            push(ElementSet::singleton(i), &mut rays)?;
        }
        let mut pruned = Vec::new();
        let mut cones = Vec::new();
        for &p in m.points() {
            if p.len() == 2 {
                let v = p.to_vec();
                cones.push((v[0], v[1]));
                pruned.push(PrunedRay { flat: p, dir: basis.u_set(p), between: (v[0], v[1]) });
            } else {
                let r = push(p, &mut rays)?;
                cones.extend(p.iter().map(|i| (i, r)));
            }
        }
        // a line ray with two neighbours strictly between them subdivides a cone
        loop {
            let victim = (0..rays.len()).find_map(|r| {
                if rays[r].kind() != RayKind::Line {
                    return None;
                }
                let nb = neighbours(&cones, r);
                if nb.len() != 2 {
                    return None;
                }
                let c = linalg::solve_in_span(&[rays[nb[0]].dir.clone(), rays[nb[1]].dir.clone()], &rays[r].dir)?;
                c.iter().all(num_traits::Signed::is_positive).then_some((r, nb[0], nb[1]))
            });
            let Some((r, a, b)) = victim else { break };
            cones.retain(|&(x, y)| x != r && y != r);
            cones.push((a, b));
            let old = rays.remove(r);
            let shift = |i: usize| if i > r { i - 1 } else { i };
            for c in &mut cones {
                *c = (shift(c.0), shift(c.1));
            }
            for p in &mut pruned {
                p.between = (shift(p.between.0), shift(p.between.1));
            }
            pruned.push(PrunedRay { flat: old.flat, dir: old.dir, between: (shift(a), shift(b)) });
        }
        for c in &mut cones {
            if c.0 > c.1 {
                *c = (c.1, c.0);
            }
        }
        cones.sort();
        Ok(FanPlane { dim: n, rays, cones, pruned, matroid: m.clone(), basis: basis.clone() })
    }

    pub fn standard(m: &Matroid) -> Result<FanPlane, FanError> {
        FanPlane::build(m, &Basis::standard(m.n_elements().saturating_sub(1)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn cones(&self) -> &[(usize, usize)] {
        &self.cones
    }

    pub fn pruned(&self) -> &[PrunedRay] {
        &self.pruned
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// `(|Edge(P)|, |Face(P)|)`.
    pub fn counts(&self) -> (usize, usize) {
        (self.rays.len(), self.cones.len())
    }

    pub fn neighbours(&self, ray: usize) -> Vec<usize> {
        neighbours(&self.cones, ray)
    }

    pub fn valency(&self, ray: usize) -> usize {
        self.neighbours(ray).len()
    }

    /// `σ(E)` with `σ(E) v_E = -Σ v_E'` over rays `E'` sharing a cone with `E`.
    pub fn sigma(&self, ray: usize) -> Result<i64, FanError> {
        let v = &self.rays[ray].dir;
        let sum = self
            .neighbours(ray)
            .iter()
            .fold(vec![0; self.dim], |acc, &r| linalg::add(&acc, &self.rays[r].dir));
        let target = linalg::neg(&sum);
        let k = v.iter().position(|&x| x != 0).expect("nonzero ray");
        if target[k] % v[k] != 0 {
            return Err(FanError::NotProportional(ray));
        }
        let s = target[k] / v[k];
        if linalg::scale(v, s) != target {
            return Err(FanError::NotProportional(ray));
        }
        Ok(s)
    }

    /// Link of the fan at the origin: one vertex per ray, one edge per cone.
    pub fn link_graph(&self) -> UnGraph<Ray, ()> {
        let mut g = UnGraph::new_undirected();
        let nodes: Vec<NodeIndex> = self.rays.iter().map(|r| g.add_node(r.clone())).collect();
        for &(a, b) in &self.cones {
            g.add_edge(nodes[a], nodes[b], ());
        }
        g
    }

    /// Whether `v` lies on a ray or in a cone of the fan.
    pub fn contains(&self, v: &[i64]) -> bool {
        if linalg::is_zero(v) {
            return true;
        }
        self.cones.iter().any(|&(a, b)| linalg::in_cone2(&self.rays[a].dir, &self.rays[b].dir, v))
            || self.rays.iter().any(|r| linalg::on_ray(&r.dir, v))
    }

    pub fn ray_index(&self, flat: ElementSet) -> Option<usize> {
        self.rays.iter().position(|r| r.flat == flat)
    }
}

fn neighbours(cones: &[(usize, usize)], ray: usize) -> Vec<usize> {
    let mut out: Vec<usize> = cones
        .iter()
        .filter_map(|&(a, b)| {
            if a == ray {
                Some(b)
            } else if b == ray {
                Some(a)
            } else {
                None
            }
        })
        .collect();
    out.sort();
    out
}

/// Reads the Corollary case off the matroid: it depends only on an element
/// lying on exactly two points.
pub fn classify_missing_ray(m: &Matroid) -> Result<MissingRay, FanError> {
    m.require_simple_rank3()?;
    for e in 0..m.n_elements() {
        let through = m.points_through(e);
        if through.len() == 2 {
            let (k, l) = (through[0].len(), through[1].len());
            return Ok(match (k == 2, l == 2) {
                (true, true) => MissingRay::FullPlane,
                (true, false) | (false, true) => MissingRay::LineTimesR,
                (false, false) => MissingRay::BipartiteCone(k - 1, l - 1),
            });
        }
    }
    Ok(MissingRay::None)
}

/// Recovers the matroid from the rays and cones of a coarse Bergman fan in
/// coordinates adapted to `basis`. For the standard basis the result carries
/// the same labels as the matroid that built the fan.
pub fn reconstruct_matroid(rays: &[Vec<i64>], cones: &[(usize, usize)], basis: &Basis) -> Result<Matroid, FanError> {
    let n = basis.dim();
    let mut flats = Vec::with_capacity(rays.len());
    for r in rays {
        if r.len() != n {
            return Err(FanError::UndecodableRay(r.clone()));
        }
        // in standard coordinates u_i = -e_i
        let a = basis.coords(r).ok_or_else(|| FanError::UndecodableRay(r.clone()))?;
        let std: Vec<i64> = linalg::neg(&a);
        flats.push(decode_standard(&std).ok_or_else(|| FanError::UndecodableRay(r.clone()))?);
    }
    let mut points: Vec<ElementSet> = Vec::new();
    for &f in &flats {
        if f.len() >= 2 && !points.contains(&f) {
            points.push(f);
        }
    }
    for &(a, b) in cones {
        let (fa, fb) = match (flats.get(a), flats.get(b)) {
            (Some(&x), Some(&y)) => (x, y),
            _ => return Err(FanError::BadCone((a, b))),
        };
        if fa.len() == 1 && fb.len() == 1 {
            let p = fa.union(fb);
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    let m = Matroid::from_lines(n + 1, &points).map_err(|e| FanError::Inconsistent(e.to_string()))?;
    let rebuilt = FanPlane::build(&m, basis).map_err(|e| FanError::Inconsistent(e.to_string()))?;
    let given: BTreeSet<Vec<i64>> = rays.iter().cloned().collect();
    let found: BTreeSet<Vec<i64>> = rebuilt.rays().iter().map(|r| r.dir.clone()).collect();
    if given != found || given.len() != rays.len() {
        return Err(FanError::Inconsistent("rays differ from the fan of the recovered matroid".into()));
    }
    let pair = |x: &[i64], y: &[i64]| {
        let (x, y) = (x.to_vec(), y.to_vec());
        if x < y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let given: BTreeSet<_> = cones.iter().map(|&(a, b)| pair(&rays[a], &rays[b])).collect();
    let found: BTreeSet<_> = rebuilt
        .cones()
        .iter()
        .map(|&(a, b)| pair(&rebuilt.rays()[a].dir, &rebuilt.rays()[b].dir))
        .collect();
    if given != found {
        return Err(FanError::Inconsistent("cones differ from the fan of the recovered matroid".into()));
    }
    Ok(m)
}

/// `u_I` in standard coordinates is `-1` on `I \ {0}` when `0 ∉ I`, and
/// `1` off `I` when `0 ∈ I`.
fn decode_standard(v: &[i64]) -> Option<ElementSet> {
    if v.iter().all(|&x| x == 0 || x == -1) && v.contains(&-1) {
        return Some(v.iter().enumerate().filter(|(_, &x)| x == -1).map(|(i, _)| i + 1).collect());
    }
    if v.iter().all(|&x| x == 0 || x == 1) && v.contains(&1) {
        let mut s: ElementSet = v.iter().enumerate().filter(|(_, &x)| x == 0).map(|(i, _)| i + 1).collect();
        s.insert(0);
        return Some(s);
    }
    None
}

impl fmt::Display for FanPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "fan in Z^{}: {} rays, {} cones", self.dim, self.rays.len(), self.cones.len())?;
        for (i, r) in self.rays.iter().enumerate() {
            let kind = match r.kind() {
                RayKind::Line => "line",
                RayKind::Point => "point",
            };
            writeln!(f, "  ray {i}: {kind} {} dir {:?}", r.flat, r.dir)?;
        }
        let cones: Vec<String> = self.cones.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "  cones: {}", cones.join(" "))
    }
}

/// JSON form of a fan.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct FanSpec {
    pub dim: usize,
    pub rays: Vec<RaySpec>,
    pub cones: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RaySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat: Option<ElementSet>,
    pub dir: Vec<i64>,
}

impl FanSpec {
    pub fn from_fan(p: &FanPlane) -> FanSpec {
        FanSpec {
            dim: p.dim(),
            rays: p.rays().iter().map(|r| RaySpec { flat: Some(r.flat), dir: r.dir.clone() }).collect(),
            cones: p.cones().to_vec(),
        }
    }

    pub fn directions(&self) -> Vec<Vec<i64>> {
        self.rays.iter().map(|r| r.dir.clone()).collect()
    }
}
