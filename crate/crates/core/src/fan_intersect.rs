//! Local intersection numbers of fan curves in a fan plane, and the local
//! invariants `K_P²` and the second Chern multiplicity.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bergman::{classify_missing_ray, FanError, FanPlane, MissingRay};
use crate::fan_cycles::{boundary_point, deg_delta, positive_decomposition, BoundaryPoint, CycleError, FanCycle};
use crate::matroid::{ElementSet, Matroid, MatroidError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntersectError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("curve does not lie in the plane")]
    NotInPlane,
    #[error("{0} is not a point of the plane")]
    NotAPoint(ElementSet),
    #[error("a ray ending at {0} leaves the faces of that point")]
    NoChart(ElementSet),
    #[error("{what}: {left} != {right}")]
    CrossCheck { what: &'static str, left: i64, right: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerContribution {
    #[serde(rename = "I")]
    pub point: ElementSet,
    #[serde(rename = "m")]
    pub multiplicity: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub vertex: i64,
    pub corners: Vec<CornerContribution>,
    pub total: i64,
}

/// Rays of `c` whose closure ends at `p_I`, with their decompositions.
fn rays_at(c: &FanCycle, point: ElementSet, p: &FanPlane) -> Result<Vec<(Vec<i64>, i64)>, IntersectError> {
    let mut out = Vec::new();
    for (v, w) in c.rays() {
        if boundary_point(v, p.basis(), p.matroid())? == BoundaryPoint::Point(point) {
            out.push((positive_decomposition(v, p.basis())?, *w));
        }
    }
    Ok(out)
}

/// The element of `I` a ray ending at `p_I` leans towards. Such a ray is
/// `a u_k + b u_I`, so `r(k) = a + b` and `r(l) = b` on the rest of `I`;
/// `None` when `a = 0`.
fn leaning(point: ElementSet, r: &[i64]) -> Result<Option<usize>, IntersectError> {
    let low = point.iter().map(|l| r[l]).min().unwrap_or(0);
    let high: Vec<usize> = point.iter().filter(|&l| r[l] > low).collect();
    match high.len() {
        0 => Ok(None),
        1 => Ok(Some(high[0])),
        _ => Err(IntersectError::NoChart(point)),
    }
}

/// `(C̄₁ · C̄₂)_{p_I}`. In a chart at `p_I` given by `i, j ∈ I` a ray with
/// decomposition `r` projects to the ray `(-r(i), -r(j))` of `𝕋²` heading to
/// the corner, and two rays contribute `w₁w₂ min(k₁l₂, k₂l₁)`.
///
/// The chart must keep both rays inside the closed faces spanned by `u_I`
/// and `u_i` or `u_j`. Intersection numbers at `p_I` add over pairs of
/// branches, so each pair of rays is read in a chart valid for that pair.
pub fn corner_multiplicity(c1: &FanCycle, c2: &FanCycle, point: ElementSet, p: &FanPlane) -> Result<i64, IntersectError> {
    if !p.matroid().points().contains(&point) {
        return Err(IntersectError::NotAPoint(point));
    }
    let a = rays_at(c1, point, p)?;
    let b = rays_at(c2, point, p)?;
    let mut total = 0;
    for (r1, w1) in &a {
        let k = leaning(point, r1)?;
        for (r2, w2) in &b {
            let l = leaning(point, r2)?;
            let mut chart: Vec<usize> = k.into_iter().chain(l).collect();
            chart.extend(point.iter());
            chart.dedup();
            let i = chart[0];
            let j = *chart.iter().find(|&&x| x != i).expect("points have two elements");
            let (k1, k2, l1, l2) = (r1[i], r1[j], r2[i], r2[j]);
            total += w1 * w2 * (k1 * l2).min(k2 * l1);
        }
    }
    Ok(total)
}

/// Nonzero corner contributions, in the order of the points of the matroid.
pub fn corners(c1: &FanCycle, c2: &FanCycle, p: &FanPlane) -> Result<Vec<CornerContribution>, IntersectError> {
    let mut out = Vec::new();
    for &pt in p.matroid().points() {
        let m = corner_multiplicity(c1, c2, pt, p)?;
        if m != 0 {
            out.push(CornerContribution { point: pt, multiplicity: m });
        }
    }
    Ok(out)
}

fn check_curves(c1: &FanCycle, c2: &FanCycle, p: &FanPlane) -> Result<(i64, i64), IntersectError> {
    if !c1.lies_in(p) || !c2.lies_in(p) {
        return Err(IntersectError::NotInPlane);
    }
    Ok((deg_delta(c1, p.basis())?, deg_delta(c2, p.basis())?))
}

/// `(C₁ · C₂)_0 = deg_Δ(C₁) deg_Δ(C₂) - Σ_I (C̄₁ · C̄₂)_{p_I}`.
pub fn vertex_multiplicity(c1: &FanCycle, c2: &FanCycle, p: &FanPlane) -> Result<i64, IntersectError> {
    Ok(bezout_report(c1, c2, p)?.vertex)
}

pub fn bezout_report(c1: &FanCycle, c2: &FanCycle, p: &FanPlane) -> Result<IntersectionReport, IntersectError> {
    let (d1, d2) = check_curves(c1, c2, p)?;
    let corners = corners(c1, c2, p)?;
    let corner_sum: i64 = corners.iter().map(|c| c.multiplicity).sum();
    let report = IntersectionReport { vertex: d1 * d2 - corner_sum, corners, total: d1 * d2 };
    let sum = report.vertex + corner_sum;
    if sum != report.total {
        return Err(IntersectError::CrossCheck { what: "vertex plus corners against deg*deg", left: sum, right: report.total });
    }
    Ok(report)
}

/// `C̄₁ · C̄₂`, always `deg_Δ(C₁) deg_Δ(C₂)`.
pub fn bezout_total(c1: &FanCycle, c2: &FanCycle, p: &FanPlane) -> Result<i64, IntersectError> {
    Ok(bezout_report(c1, c2, p)?.total)
}

/// Both evaluations of `K_P²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSquared {
    /// `(N - 2)² - Σ_I (|I| - 2)²`.
    pub from_points: i64,
    /// The local degree formula for the relevant case of the plane.
    pub from_fan: i64,
    pub case: MissingRay,
}

pub fn k_squared_formulas(p: &FanPlane) -> Result<KSquared, IntersectError> {
    let m = p.matroid();
    let n = p.dim() as i64;
    let from_points = (n - 2).pow(2) - m.points().iter().map(|i| (i.len() as i64 - 2).pow(2)).sum::<i64>();
    let (edges, faces) = p.counts();
    let (edges, faces) = (edges as i64, faces as i64);
    let case = classify_missing_ray(m)?;
    let from_fan = match case {
        MissingRay::None => {
            let mut sigma = 0;
            for r in 0..p.rays().len() {
                sigma += p.sigma(r)?;
            }
            10 + n - 5 * edges + 2 * faces - sigma
        }
        MissingRay::BipartiteCone(..) => 8 - 4 * edges + 2 * faces,
        MissingRay::FullPlane | MissingRay::LineTimesR => 0,
    };
    Ok(KSquared { from_points, from_fan, case })
}

/// `K_P²`, cross-checked between the two formulas.
pub fn k_squared(p: &FanPlane) -> Result<i64, IntersectError> {
    let k = k_squared_formulas(p)?;
    if k.from_points != k.from_fan {
        return Err(IntersectError::CrossCheck { what: "K^2 from points against fan formula", left: k.from_points, right: k.from_fan });
    }
    Ok(k.from_points)
}

/// `2 - N + |Face(P)| - |Edge(P)|`, cross-checked against `χ̄_M(1)`.
pub fn c2_mult_fan(p: &FanPlane) -> Result<i64, IntersectError> {
    let (edges, faces) = p.counts();
    let from_fan = 2 - p.dim() as i64 + faces as i64 - edges as i64;
    let from_matroid = p.matroid().c2_point_multiplicity()?;
    if from_fan != from_matroid {
        return Err(IntersectError::CrossCheck { what: "c2 from fan counts against reduced characteristic polynomial", left: from_fan, right: from_matroid });
    }
    Ok(from_fan)
}

/// Second Chern multiplicities before and after modifying along a new line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSplit {
    pub before: i64,
    pub after_interior: i64,
    pub after_boundary: i64,
    /// Number of points on the new line, the valency of the divisor curve.
    pub divisor_rays: usize,
}

/// The vertex of the modified plane carries `χ̄_M̃(1)`; the vertex of the
/// divisor curve at the boundary carries `2 - r`. Their sum is `χ̄_M(1)`.
pub fn modification_vertex_split(m: &Matroid, through: &[ElementSet]) -> Result<VertexSplit, IntersectError> {
    let before = m.c2_point_multiplicity()?;
    let ext = m.extend_by_line(through)?;
    let after_interior = ext.c2_point_multiplicity()?;
    let r = ext.points_through(m.n_elements()).len();
    let after_boundary = 2 - r as i64;
    if before != after_interior + after_boundary {
        return Err(IntersectError::CrossCheck { what: "c2 before modification against the split", left: before, right: after_interior + after_boundary });
    }
    Ok(VertexSplit { before, after_interior, after_boundary, divisor_rays: r })
}
