//! Compact tropical surfaces as construction expressions over toric pieces.
//!
//! A surface is tracked through its invariants `(χ, K², c₂)` and a ledger of
//! boundary curves. Each boundary curve records its graph (vertex valencies,
//! with leaves as 1-valent vertices), first Betti number and self-intersection.
//! Leaves are where a boundary curve meets other boundary curves; those
//! meetings are grouped into corners.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("fan needs at least 3 rays, got {0}")]
    TooFewRays(usize),
    #[error("ray {0:?} is not primitive")]
    NotPrimitive([i64; 2]),
    #[error("rays {0:?} and {1:?} are not consecutive counterclockwise with determinant 1")]
    NotUnimodular([i64; 2], [i64; 2]),
    #[error("rays do not go once around the origin in counterclockwise order")]
    NotComplete,
    #[error("no boundary curve {0:?}")]
    UnknownCurve(String),
    #[error("curves {0:?} and {1:?} have different graphs")]
    DescriptorMismatch(String, String),
    #[error("self-intersections {0} and {1} do not cancel")]
    SelfIntersectionMismatch(i64, i64),
    #[error("curve {0:?} does not have simple normal crossings")]
    NotNormalCrossing(String),
    #[error("a self-sum needs two different curves")]
    SameCurve,
    #[error("curves {0:?} and {1:?} meet")]
    CurvesMeet(String, String),
    #[error("leaf map {0:?} is not a permutation of the leaves")]
    BadLeafMap(Vec<usize>),
    #[error("curve graph with valencies {valencies:?} cannot have b1 = {b1}")]
    BadDescriptor { valencies: Vec<u32>, b1: i64 },
    #[error("modification needs a curve of local degree 1")]
    NotDegreeOne,
    #[error("new curve has {leaves} leaves but meets {meets} curves")]
    LeafCountMismatch { leaves: usize, meets: usize },
    #[error("curve id {0:?} is already used")]
    DuplicateId(String),
    #[error("contraction needs a rational (-1)-curve; {id:?} has b1 = {b1}, self-intersection {self_int}")]
    NotMinusOne { id: String, b1: i64, self_int: i64 },
}

/// Graph of a tropical curve: valencies of its vertices (leaves are the
/// 1-valent ones) and its first Betti number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDescriptor {
    pub valencies: Vec<u32>,
    pub b1: i64,
}

impl CurveDescriptor {
    /// A compact connected graph satisfies `Σ (val(v) - 2) = 2 b1 - 2`.
    pub fn new(valencies: Vec<u32>, b1: i64) -> Result<Self, SurfaceError> {
        let d = CurveDescriptor { valencies, b1 };
        if b1 < 0 || d.k_degree() != 2 * b1 - 2 {
            return Err(SurfaceError::BadDescriptor { valencies: d.valencies, b1 });
        }
        Ok(d)
    }

    /// The boundary `TP¹` of a toric surface: a segment with two leaves.
    pub fn segment() -> Self {
        CurveDescriptor { valencies: vec![1, 1], b1: 0 }
    }

    pub fn leaf_count(&self) -> usize {
        self.valencies.iter().filter(|&&v| v == 1).count()
    }

    /// Degree of the canonical class of the curve, `Σ (val(v) - 2)`.
    pub fn k_degree(&self) -> i64 {
        self.valencies.iter().map(|&v| v as i64 - 2).sum()
    }

    pub fn isomorphic(&self, other: &CurveDescriptor) -> bool {
        let mut a = self.valencies.clone();
        let mut b = other.valencies.clone();
        a.sort();
        b.sort();
        a == b && self.b1 == other.b1
    }

    /// Positions of the leaves among the vertices.
    fn leaf_positions(&self) -> Vec<usize> {
        self.valencies.iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| i).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub id: String,
    pub curve: CurveDescriptor,
    pub self_intersection: i64,
    pub simple_normal_crossings: bool,
}

/// One meeting point of boundary curves: each member is a curve id and the
/// index of the leaf of that curve sitting at the point.
pub type Corner = Vec<(String, usize)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Ledger {
    pub curves: Vec<LedgerEntry>,
    pub corners: Vec<Corner>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTriple {
    pub chi: i64,
    #[serde(rename = "K2")]
    pub k2: i64,
    pub c2: i64,
}

impl fmt::Display for InvariantTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.chi, self.k2, self.c2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surface {
    pub triple: InvariantTriple,
    pub ledger: Ledger,
}

/// A complete unimodular fan in `ℤ²`, rays in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan2D {
    rays: Vec<[i64; 2]>,
}

fn half(v: [i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

fn det(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

impl Fan2D {
    pub fn new(rays: Vec<[i64; 2]>) -> Result<Fan2D, SurfaceError> {
        let n = rays.len();
        if n < 3 {
            return Err(SurfaceError::TooFewRays(n));
        }
        for &v in &rays {
            let g = num_integer::gcd(v[0], v[1]);
            if g != 1 {
                return Err(SurfaceError::NotPrimitive(v));
            }
        }
        for i in 0..n {
            let (a, b) = (rays[i], rays[(i + 1) % n]);
            if det(a, b) != 1 {
                return Err(SurfaceError::NotUnimodular(a, b));
            }
        }
        // consecutive left turns could still wind around twice
        let mut sorted = rays.clone();
        sorted.sort_by(|&a, &b| half(a).cmp(&half(b)).then_with(|| 0.cmp(&det(a, b))));
        let start = sorted.iter().position(|&v| v == rays[0]).ok_or(SurfaceError::NotComplete)?;
        if (0..n).any(|i| sorted[(start + i) % n] != rays[i]) {
            return Err(SurfaceError::NotComplete);
        }
        Ok(Fan2D { rays })
    }

    pub fn projective_plane() -> Fan2D {
        Fan2D::new(vec![[1, 0], [0, 1], [-1, -1]]).expect("TP2 fan")
    }

    pub fn hirzebruch(k: i64) -> Fan2D {
        Fan2D::new(vec![[-1, 0], [0, -1], [1, k], [0, 1]]).expect("Hirzebruch fan")
    }

    pub fn rays(&self) -> &[[i64; 2]] {
        &self.rays
    }

    /// `a_i` with `v_{i-1} + v_{i+1} = a_i v_i`.
    pub fn a_values(&self) -> Vec<i64> {
        let n = self.rays.len();
        (0..n)
            .map(|i| {
                let (p, v, q) = (self.rays[(i + n - 1) % n], self.rays[i], self.rays[(i + 1) % n]);
                let s = [p[0] + q[0], p[1] + q[1]];
                // unimodularity makes s a multiple of v
                if v[0] != 0 {
                    s[0] / v[0]
                } else {
                    s[1] / v[1]
                }
            })
            .collect()
    }

    /// Inserts `v_i + v_{i+1}` between rays `i` and `i + 1`.
    pub fn star_subdivide(&self, i: usize) -> Fan2D {
        let n = self.rays.len();
        let (a, b) = (self.rays[i % n], self.rays[(i + 1) % n]);
        let mut rays = self.rays.clone();
        rays.insert(i % n + 1, [a[0] + b[0], a[1] + b[1]]);
        Fan2D { rays }
    }

    /// Rotation of the cyclic order starting at the smallest ray, for dedup.
    pub fn canonical(&self) -> Vec<[i64; 2]> {
        let n = self.rays.len();
        let start = (0..n).min_by_key(|&i| self.rays[i]).unwrap_or(0);
        (0..n).map(|i| self.rays[(start + i) % n]).collect()
    }
}

fn curve_id(i: usize) -> String {
    format!("D{}", i + 1)
}

pub fn toric_surface(fan: &Fan2D) -> Surface {
    let n = fan.rays().len();
    let a = fan.a_values();
    let curves = (0..n)
        .map(|i| LedgerEntry {
            id: curve_id(i),
            curve: CurveDescriptor::segment(),
            self_intersection: -a[i],
            simple_normal_crossings: true,
        })
        .collect();
    // corner between D_i and D_{i+1}: leaf 1 of D_i and leaf 0 of D_{i+1}
    let corners = (0..n).map(|i| vec![(curve_id(i), 1), (curve_id((i + 1) % n), 0)]).collect();
    let k2 = -a.iter().sum::<i64>() + 2 * n as i64;
    Surface { triple: InvariantTriple { chi: 1, k2, c2: n as i64 }, ledger: Ledger { curves, corners } }
}

impl Ledger {
    pub fn get(&self, id: &str) -> Result<&LedgerEntry, SurfaceError> {
        self.curves.iter().find(|c| c.id == id).ok_or_else(|| SurfaceError::UnknownCurve(id.to_string()))
    }

    fn prefixed(&self, prefix: &str) -> Ledger {
        let p = |s: &str| format!("{prefix}{s}");
        Ledger {
            curves: self.curves.iter().map(|c| LedgerEntry { id: p(&c.id), ..c.clone() }).collect(),
            corners: self.corners.iter().map(|k| k.iter().map(|(id, l)| (p(id), *l)).collect()).collect(),
        }
    }

    fn union(mut self, other: Ledger) -> Ledger {
        self.curves.extend(other.curves);
        self.corners.extend(other.corners);
        self
    }

    /// The other member of the corner at leaf `leaf` of `id`, if the corner
    /// has exactly two members.
    fn partner(&self, id: &str, leaf: usize) -> Option<(String, usize)> {
        let corner = self.corners.iter().find(|k| k.iter().any(|(c, l)| c == id && *l == leaf))?;
        if corner.len() != 2 {
            return None;
        }
        corner.iter().find(|(c, l)| !(c == id && *l == leaf)).cloned()
    }

    fn meets(&self, a: &str, b: &str) -> bool {
        self.corners.iter().any(|k| k.iter().any(|(c, _)| c == a) && k.iter().any(|(c, _)| c == b))
    }

    /// Recomputes normal crossing flags: every leaf of the curve sits in a
    /// corner with exactly one other curve, and no two curves meet twice
    /// at the same corner.
    fn refresh_crossings(&mut self) {
        let mut flags = Vec::with_capacity(self.curves.len());
        for c in &self.curves {
            let ok = (0..c.curve.leaf_count()).all(|leaf| {
                let at: Vec<&Corner> = self.corners.iter().filter(|k| k.iter().any(|(i, l)| *i == c.id && *l == leaf)).collect();
                at.len() == 1 && at[0].len() == 2 && at[0][0].0 != at[0][1].0
            });
            flags.push(ok);
        }
        for (c, f) in self.curves.iter_mut().zip(flags) {
            c.simple_normal_crossings = f;
        }
    }

    /// Removes curves `a` and `b`, gluing leaf `t` of `a` to leaf `leaf_map[t]`
    /// of `b`. Curves that met `a` and `b` at glued leaves become one curve.
    fn glue(&self, a: &str, b: &str, leaf_map: &[usize]) -> Result<Ledger, SurfaceError> {
        let mut joins: Vec<((String, usize), (String, usize))> = Vec::new();
        for (t, &s) in leaf_map.iter().enumerate() {
            let pa = self.partner(a, t).ok_or_else(|| SurfaceError::NotNormalCrossing(a.to_string()))?;
            let pb = self.partner(b, s).ok_or_else(|| SurfaceError::NotNormalCrossing(b.to_string()))?;
            joins.push((pa, pb));
        }
        let rest: Vec<&LedgerEntry> = self.curves.iter().filter(|c| c.id != a && c.id != b).collect();
        let pos: HashMap<&str, usize> = rest.iter().enumerate().map(|(i, c)| (c.id.as_str(), i)).collect();
        let mut parent: Vec<usize> = (0..rest.len()).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for ((x, _), (y, _)) in &joins {
            let (i, j) = (find(&mut parent, pos[x.as_str()]), find(&mut parent, pos[y.as_str()]));
            parent[i] = j;
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..rest.len() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut curves = Vec::new();
        // (old id, old leaf) -> (new id, new leaf)
        let mut renamed: HashMap<(String, usize), (String, usize)> = HashMap::new();
        for members in groups.values() {
            if members.len() == 1 && !joins.iter().any(|(x, y)| x.0 == rest[members[0]].id || y.0 == rest[members[0]].id) {
                let c = rest[members[0]];
                for l in 0..c.curve.leaf_count() {
                    renamed.insert((c.id.clone(), l), (c.id.clone(), l));
                }
                curves.push(c.clone());
                continue;
            }
            let mut ids: Vec<&str> = members.iter().map(|&i| rest[i].id.as_str()).collect();
            ids.sort();
            let id = ids.join("+");
            let glued: Vec<&(String, usize)> = joins.iter().flat_map(|(x, y)| [x, y]).filter(|(c, _)| ids.contains(&c.as_str())).collect();
            let n_joins = joins.iter().filter(|(x, _)| ids.contains(&x.0.as_str())).count() as i64;
            let mut valencies = Vec::new();
            let mut b1 = n_joins - (members.len() as i64 - 1);
            let mut self_int = 0;
            let mut next_leaf = 0;
            for &i in members {
                let c = rest[i];
                b1 += c.curve.b1;
                self_int += c.self_intersection;
                let leaves = c.curve.leaf_positions();
                for (v, &val) in c.curve.valencies.iter().enumerate() {
                    if val == 1 {
                        let leaf = leaves.iter().position(|&p| p == v).expect("leaf");
                        if glued.iter().any(|(gc, gl)| *gc == c.id && *gl == leaf) {
                            continue;
                        }
                        renamed.insert((c.id.clone(), leaf), (id.clone(), next_leaf));
                        next_leaf += 1;
                    }
                    valencies.push(val);
                }
            }
            let curve = CurveDescriptor::new(valencies, b1)?;
            curves.push(LedgerEntry { id, curve, self_intersection: self_int, simple_normal_crossings: true });
        }
        let corners = self
            .corners
            .iter()
            .filter(|k| !k.iter().any(|(c, _)| c == a || c == b))
            .map(|k| k.iter().map(|m| renamed[m].clone()).collect())
            .collect();
        let mut out = Ledger { curves, corners };
        out.refresh_crossings();
        Ok(out)
    }
}

fn leaf_map_or_identity(map: Option<&[usize]>, leaves: usize) -> Result<Vec<usize>, SurfaceError> {
    let m: Vec<usize> = map.map(<[usize]>::to_vec).unwrap_or_else(|| (0..leaves).collect());
    let mut sorted = m.clone();
    sorted.sort();
    if sorted != (0..leaves).collect::<Vec<_>>() {
        return Err(SurfaceError::BadLeafMap(m));
    }
    Ok(m)
}

fn check_summable(e1: &LedgerEntry, e2: &LedgerEntry) -> Result<(), SurfaceError> {
    if !e1.curve.isomorphic(&e2.curve) {
        return Err(SurfaceError::DescriptorMismatch(e1.id.clone(), e2.id.clone()));
    }
    if e1.self_intersection != -e2.self_intersection {
        return Err(SurfaceError::SelfIntersectionMismatch(e1.self_intersection, e2.self_intersection));
    }
    for e in [e1, e2] {
        if !e.simple_normal_crossings {
            return Err(SurfaceError::NotNormalCrossing(e.id.clone()));
        }
    }
    Ok(())
}

fn glued_triple(chi: i64, k2: i64, c2: i64, c: &CurveDescriptor) -> InvariantTriple {
    let k = c.k_degree();
    InvariantTriple { chi: chi - (1 - c.b1), k2: k2 + 4 * k, c2: c2 + 2 * k }
}

/// `X₁ # X₂` along `C₁ ⊂ X₁` and `C₂ ⊂ X₂`. Curve ids of the two sides get
/// the prefixes `L.` and `R.`.
pub fn tropical_sum(x1: &Surface, c1: &str, x2: &Surface, c2: &str, leaf_map: Option<&[usize]>) -> Result<Surface, SurfaceError> {
    sum_with_prefixes(x1, c1, "L.", x2, c2, "R.", leaf_map)
}

fn sum_with_prefixes(
    x1: &Surface,
    c1: &str,
    p1: &str,
    x2: &Surface,
    c2: &str,
    p2: &str,
    leaf_map: Option<&[usize]>,
) -> Result<Surface, SurfaceError> {
    let (e1, e2) = (x1.ledger.get(c1)?, x2.ledger.get(c2)?);
    check_summable(e1, e2)?;
    let map = leaf_map_or_identity(leaf_map, e1.curve.leaf_count())?;
    let (t1, t2) = (x1.triple, x2.triple);
    let triple = glued_triple(t1.chi + t2.chi, t1.k2 + t2.k2, t1.c2 + t2.c2, &e1.curve);
    let joined = x1.ledger.prefixed(p1).union(x2.ledger.prefixed(p2));
    let ledger = joined.glue(&format!("{p1}{c1}"), &format!("{p2}{c2}"), &map)?;
    Ok(Surface { triple, ledger })
}

/// Glues two disjoint boundary curves of the same surface.
pub fn self_sum(x: &Surface, c1: &str, c2: &str, leaf_map: Option<&[usize]>) -> Result<Surface, SurfaceError> {
    if c1 == c2 {
        return Err(SurfaceError::SameCurve);
    }
    let (e1, e2) = (x.ledger.get(c1)?, x.ledger.get(c2)?);
    check_summable(e1, e2)?;
    if x.ledger.meets(c1, c2) {
        return Err(SurfaceError::CurvesMeet(c1.to_string(), c2.to_string()));
    }
    let map = leaf_map_or_identity(leaf_map, e1.curve.leaf_count())?;
    let t = x.triple;
    let triple = glued_triple(t.chi, t.k2, t.c2, &e1.curve);
    let ledger = x.ledger.glue(c1, c2, &map)?;
    Ok(Surface { triple, ledger })
}

/// Modification along a curve of local degree 1. The invariants are
/// unchanged; the ledger gains the new boundary curve `id`, whose leaf `t`
/// meets the boundary curve `leaf_meets[t]`.
pub fn modify(
    x: &Surface,
    id: &str,
    curve: &CurveDescriptor,
    self_intersection: i64,
    leaf_meets: &[String],
    locally_degree_1: bool,
) -> Result<Surface, SurfaceError> {
    if !locally_degree_1 {
        return Err(SurfaceError::NotDegreeOne);
    }
    let curve = CurveDescriptor::new(curve.valencies.clone(), curve.b1)?;
    if curve.leaf_count() != leaf_meets.len() {
        return Err(SurfaceError::LeafCountMismatch { leaves: curve.leaf_count(), meets: leaf_meets.len() });
    }
    if x.ledger.get(id).is_ok() {
        return Err(SurfaceError::DuplicateId(id.to_string()));
    }
    let mut ledger = x.ledger.clone();
    for (t, met) in leaf_meets.iter().enumerate() {
        let entry = ledger.curves.iter_mut().find(|c| &c.id == met).ok_or_else(|| SurfaceError::UnknownCurve(met.clone()))?;
        let new_leaf = entry.curve.leaf_count();
        // the new curve's leaf lands on an edge of the met curve
        entry.curve.valencies.push(3);
        entry.curve.valencies.push(1);
        ledger.corners.push(vec![(id.to_string(), t), (met.clone(), new_leaf)]);
    }
    ledger.curves.push(LedgerEntry { id: id.to_string(), curve, self_intersection, simple_normal_crossings: true });
    ledger.refresh_crossings();
    Ok(Surface { triple: x.triple, ledger })
}

/// The cone plane over a line with `k` leaves: invariants of `TP²`, boundary
/// the line `L` (self-intersection 1) and `k` curves through the cone point.
fn cone_plane(line: &CurveDescriptor) -> Surface {
    let k = line.leaf_count();
    let mut curves = vec![LedgerEntry {
        id: "L".into(),
        curve: line.clone(),
        self_intersection: 1,
        simple_normal_crossings: true,
    }];
    let mut corners: Vec<Corner> = Vec::new();
    let mut apex: Corner = Vec::new();
    for t in 0..k {
        let id = format!("C{}", t + 1);
        curves.push(LedgerEntry { id: id.clone(), curve: CurveDescriptor::segment(), self_intersection: 1, simple_normal_crossings: true });
        corners.push(vec![("L".into(), t), (id.clone(), 0)]);
        apex.push((id, 1));
    }
    corners.push(apex);
    let mut ledger = Ledger { curves, corners };
    ledger.refresh_crossings();
    Surface { triple: InvariantTriple { chi: 1, k2: 9, c2: 3 }, ledger }
}

/// Contracts a rational boundary `(-1)`-curve by summing with a cone plane.
/// Curves of the cone plane get the prefix `V.`.
pub fn contract_minus_one(x: &Surface, e: &str) -> Result<Surface, SurfaceError> {
    let entry = x.ledger.get(e)?;
    if entry.curve.b1 != 0 || entry.self_intersection != -1 {
        return Err(SurfaceError::NotMinusOne { id: e.to_string(), b1: entry.curve.b1, self_int: entry.self_intersection });
    }
    let v = cone_plane(&entry.curve);
    sum_with_prefixes(x, e, "", &v, "L", "V.", None)
}

/// Outcome of `12 χ = K² + c₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoetherReport {
    pub chi: i64,
    #[serde(rename = "K2")]
    pub k2: i64,
    pub c2: i64,
    pub pass: bool,
}

pub fn noether_check(x: &Surface) -> NoetherReport {
    let t = x.triple;
    NoetherReport { chi: t.chi, k2: t.k2, c2: t.c2, pass: 12 * t.chi == t.k2 + t.c2 }
}

/// Both sides of `b₁(C) = (K·C + C²)/2 + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionReport {
    pub curve: String,
    pub b1: i64,
    /// `K^o · C`, from the interior vertices of the curve.
    pub interior_dot: i64,
    /// `Σ D · C` over the other boundary curves, one per leaf.
    pub boundary_dot: i64,
    pub self_intersection: i64,
    #[serde(rename = "K_dot_C")]
    pub k_dot_c: i64,
    #[serde(with = "crate::ratio_str")]
    pub rhs: Ratio<i64>,
    pub pass: bool,
}

pub fn adjunction_check(x: &Surface, id: &str) -> Result<AdjunctionReport, SurfaceError> {
    let e = x.ledger.get(id)?;
    let interior_dot: i64 = e.curve.valencies.iter().filter(|&&v| v != 1).map(|&v| v as i64 - 2).sum();
    let boundary_dot = e.curve.leaf_count() as i64;
    let k_dot_c = interior_dot - e.self_intersection - boundary_dot;
    let rhs = Ratio::new(k_dot_c + e.self_intersection, 2) + 1;
    Ok(AdjunctionReport {
        curve: id.to_string(),
        b1: e.curve.b1,
        interior_dot,
        boundary_dot,
        self_intersection: e.self_intersection,
        k_dot_c,
        rhs,
        pass: rhs == Ratio::from_integer(e.curve.b1),
    })
}

/// `(K² - 2 c₂) / 3`, the signature predicted by the Hirzebruch conjecture.
pub fn signature_hypothesis(x: &Surface) -> Ratio<i64> {
    Ratio::new(x.triple.k2 - 2 * x.triple.c2, 3)
}

/// Serialized construction expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceExpr {
    Toric {
        rays: Vec<[i64; 2]>,
    },
    Sum {
        left: Box<SurfaceExpr>,
        left_curve: String,
        right: Box<SurfaceExpr>,
        right_curve: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        leaf_map: Option<Vec<usize>>,
    },
    SelfSum {
        base: Box<SurfaceExpr>,
        curve_1: String,
        curve_2: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        leaf_map: Option<Vec<usize>>,
    },
    Modify {
        base: Box<SurfaceExpr>,
        id: String,
        curve: CurveDescriptor,
        self_intersection: i64,
        leaf_meets: Vec<String>,
        locally_degree_1: bool,
    },
    Contract {
        base: Box<SurfaceExpr>,
        curve: String,
    },
}

impl SurfaceExpr {
    pub fn evaluate(&self) -> Result<Surface, SurfaceError> {
        match self {
            SurfaceExpr::Toric { rays } => Ok(toric_surface(&Fan2D::new(rays.clone())?)),
            SurfaceExpr::Sum { left, left_curve, right, right_curve, leaf_map } => {
                tropical_sum(&left.evaluate()?, left_curve, &right.evaluate()?, right_curve, leaf_map.as_deref())
            }
            SurfaceExpr::SelfSum { base, curve_1, curve_2, leaf_map } => self_sum(&base.evaluate()?, curve_1, curve_2, leaf_map.as_deref()),
            SurfaceExpr::Modify { base, id, curve, self_intersection, leaf_meets, locally_degree_1 } => {
                modify(&base.evaluate()?, id, curve, *self_intersection, leaf_meets, *locally_degree_1)
            }
            SurfaceExpr::Contract { base, curve } => contract_minus_one(&base.evaluate()?, curve),
        }
    }

    pub fn toric(fan: &Fan2D) -> SurfaceExpr {
        SurfaceExpr::Toric { rays: fan.rays().to_vec() }
    }
}
