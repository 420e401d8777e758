//! Fan 1-cycles: weighted rays from the origin.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bergman::{Basis, FanPlane};
use crate::linalg;
use crate::matroid::{ElementSet, Matroid};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("zero direction in a cycle")]
    ZeroDirection,
    #[error("direction {0:?} has the wrong length")]
    WrongLength(Vec<i64>),
    #[error("{0:?} has non-integral coordinates in the basis")]
    NonIntegral(Vec<i64>),
    #[error("cycle is not balanced")]
    Unbalanced,
    #[error("degrees disagree across coordinates: {0:?}")]
    DegreeMismatch(Vec<i64>),
    #[error("ray {dir:?} leaves the plane: support {support} is not a point")]
    LeavesPlane { dir: Vec<i64>, support: ElementSet },
    #[error("no bases supplied")]
    NoBases,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FanCycle {
    dim: usize,
    rays: Vec<(Vec<i64>, i64)>,
}

impl FanCycle {
    /// Normalizes directions to primitive vectors (moving the gcd into the
    /// weight), merges repeated directions and drops zero weights.
    pub fn new(dim: usize, rays: impl IntoIterator<Item = (Vec<i64>, i64)>) -> Result<FanCycle, CycleError> {
        let mut merged: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
        for (dir, w) in rays {
            if dir.len() != dim {
                return Err(CycleError::WrongLength(dir));
            }
            let (p, g) = linalg::primitive(&dir);
            if g == 0 {
                return Err(CycleError::ZeroDirection);
            }
            *merged.entry(p).or_insert(0) += w * g;
        }
        Ok(FanCycle { dim, rays: merged.into_iter().filter(|(_, w)| *w != 0).collect() })
    }

    pub fn empty(dim: usize) -> FanCycle {
        FanCycle { dim, rays: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[(Vec<i64>, i64)] {
        &self.rays
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn is_balanced(&self) -> bool {
        let sum = self
            .rays
            .iter()
            .fold(vec![0; self.dim], |acc, (v, w)| linalg::add(&acc, &linalg::scale(v, *w)));
        linalg::is_zero(&sum)
    }

    pub fn add(&self, other: &FanCycle) -> FanCycle {
        FanCycle::new(self.dim, self.rays.iter().chain(&other.rays).cloned()).expect("same dimension")
    }

    pub fn scale(&self, k: i64) -> FanCycle {
        FanCycle::new(self.dim, self.rays.iter().map(|(v, w)| (v.clone(), w * k))).expect("same dimension")
    }

    /// Every ray lies in the support of the plane.
    pub fn lies_in(&self, p: &FanPlane) -> bool {
        self.dim == p.dim() && self.rays.iter().all(|(v, _)| p.contains(v))
    }
}

impl fmt::Display for FanCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rays.iter().map(|(v, w)| format!("{w}*{v:?}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `r` with `v = Σ r(i) u_i`, all `r(i) >= 0` and some `r(i) = 0`.
pub fn positive_decomposition(v: &[i64], basis: &Basis) -> Result<Vec<i64>, CycleError> {
    if linalg::is_zero(v) {
        return Err(CycleError::ZeroDirection);
    }
    if v.len() != basis.dim() {
        return Err(CycleError::WrongLength(v.to_vec()));
    }
    let a = basis.coords(v).ok_or_else(|| CycleError::NonIntegral(v.to_vec()))?;
    let m = a.iter().copied().min().unwrap_or(0).min(0);
    let mut r = vec![-m];
    r.extend(a.iter().map(|x| x - m));
    Ok(r)
}

/// `deg_Δ(C) = Σ w_e r_e(i)`, computed for every `i` and required to agree.
pub fn deg_delta(c: &FanCycle, basis: &Basis) -> Result<i64, CycleError> {
    if !c.is_balanced() {
        return Err(CycleError::Unbalanced);
    }
    let mut per = vec![0i64; basis.dim() + 1];
    for (v, w) in c.rays() {
        let r = positive_decomposition(v, basis)?;
        for (d, x) in per.iter_mut().zip(r) {
            *d += w * x;
        }
    }
    if per.iter().any(|&d| d != per[0]) {
        return Err(CycleError::DegreeMismatch(per));
    }
    Ok(per[0])
}

/// Smallest `deg_Δ(C)` over the supplied bases.
pub fn deg_over_bases(c: &FanCycle, bases: &[Basis]) -> Result<i64, CycleError> {
    let mut best: Option<i64> = None;
    for b in bases {
        let d = deg_delta(c, b)?;
        best = Some(best.map_or(d, |x| x.min(d)));
    }
    best.ok_or(CycleError::NoBases)
}

/// Weights `val(E) - 2` on the rays of the plane.
pub fn canonical_cycle(p: &FanPlane) -> FanCycle {
    let rays = p
        .rays()
        .iter()
        .enumerate()
        .map(|(i, r)| (r.dir.clone(), p.valency(i) as i64 - 2));
    FanCycle::new(p.dim(), rays).expect("fan rays are nonzero")
}

/// Where the closure of a ray meets the boundary of the compactified plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundaryPoint {
    /// Interior of the boundary line `H_i`.
    Line(usize),
    /// The point `p_I` of the arrangement.
    Point(ElementSet),
}

pub fn boundary_point(v: &[i64], basis: &Basis, m: &Matroid) -> Result<BoundaryPoint, CycleError> {
    let r = positive_decomposition(v, basis)?;
    let support: ElementSet = r.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i).collect();
    if support.len() == 1 {
        return Ok(BoundaryPoint::Line(support.iter().next().expect("one element")));
    }
    if m.points().contains(&support) {
        Ok(BoundaryPoint::Point(support))
    } else {
        Err(CycleError::LeavesPlane { dir: v.to_vec(), support })
    }
}

/// JSON form of a cycle.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CycleSpec {
    pub dim: usize,
    pub rays: Vec<WeightedRay>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct WeightedRay {
    pub dir: Vec<i64>,
    pub weight: i64,
}

impl CycleSpec {
    pub fn build(&self) -> Result<FanCycle, CycleError> {
        FanCycle::new(self.dim, self.rays.iter().map(|r| (r.dir.clone(), r.weight)))
    }

    pub fn from_cycle(c: &FanCycle) -> CycleSpec {
        CycleSpec {
            dim: c.dim(),
            rays: c.rays().iter().map(|(d, w)| WeightedRay { dir: d.clone(), weight: *w }).collect(),
        }
    }
}
