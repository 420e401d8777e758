//! Three operations for the browser page. Each takes and returns JSON
//! text; the plain functions are usable natively and the exported wrappers
//! turn errors into JS exceptions.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use tropsurf_core::bergman::FanPlane;
use tropsurf_core::fan_intersect::{c2_mult_fan, k_squared};
use tropsurf_core::homology::CellComplex;
use tropsurf_core::matroid::{ElementSet, Matroid};
use tropsurf_core::surface::{adjunction_check, noether_check, toric_surface, Fan2D};

const KLEIN: &str = include_str!("../../../data/klein_bottle.json");

#[derive(Deserialize)]
struct LinesInput {
    n: usize,
    lines: Vec<ElementSet>,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct FanReport {
    pub rays: Vec<Vec<i64>>,
    pub flats: Vec<ElementSet>,
    /// Edges of the link graph, one per two-dimensional cone.
    pub link: Vec<(usize, usize)>,
    #[serde(rename = "K2")]
    pub k2: i64,
    pub c2: i64,
}

/// Bergman fan of the simple rank-3 matroid with the given lines.
pub fn matroid_fan(input: &str) -> Result<FanReport, String> {
    let l: LinesInput = serde_json::from_str(input).map_err(|e| e.to_string())?;
    let m = Matroid::from_lines(l.n, &l.lines).map_err(|e| e.to_string())?;
    let p = FanPlane::standard(&m).map_err(|e| e.to_string())?;
    Ok(FanReport {
        rays: p.rays().iter().map(|r| r.dir.clone()).collect(),
        flats: p.rays().iter().map(|r| r.flat).collect(),
        link: p.cones().to_vec(),
        k2: k_squared(&p).map_err(|e| e.to_string())?,
        c2: c2_mult_fan(&p).map_err(|e| e.to_string())?,
    })
}

#[derive(Deserialize)]
struct ToricInput {
    rays: Vec<[i64; 2]>,
    /// Cones to star-subdivide in order, each index into the current rays.
    #[serde(default)]
    subdivide: Vec<usize>,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct ToricReport {
    pub rays: Vec<[i64; 2]>,
    pub self_intersections: Vec<i64>,
    pub chi: i64,
    #[serde(rename = "K2")]
    pub k2: i64,
    pub c2: i64,
    pub noether: bool,
    pub adjunction: bool,
}

/// Invariants of the toric surface of a fan after star subdivisions.
pub fn toric_invariants(input: &str) -> Result<ToricReport, String> {
    let t: ToricInput = serde_json::from_str(input).map_err(|e| e.to_string())?;
    let mut f = Fan2D::new(t.rays).map_err(|e| e.to_string())?;
    for i in t.subdivide {
        if i >= f.rays().len() {
            return Err(format!("cone {i} out of range, the fan has {} cones", f.rays().len()));
        }
        f = f.star_subdivide(i);
    }
    let x = toric_surface(&f);
    let adjunction = x.ledger.curves.iter().all(|c| adjunction_check(&x, &c.id).is_ok_and(|r| r.pass));
    Ok(ToricReport {
        rays: f.rays().to_vec(),
        self_intersections: x.ledger.curves.iter().map(|c| c.self_intersection).collect(),
        chi: x.triple.chi,
        k2: x.triple.k2,
        c2: x.triple.c2,
        noether: noether_check(&x).pass,
        adjunction,
    })
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct DiamondReport {
    /// `groups[p][q]` as text such as `Z2+Z^2`.
    pub groups: Vec<Vec<String>>,
    /// Rows of the diamond, top row first.
    pub picture: String,
}

/// The (p,q)-homology diamond of the Klein bottle.
pub fn klein_diamond() -> Result<DiamondReport, String> {
    let x = CellComplex::from_json(KLEIN).map_err(|e| e.to_string())?;
    let d = x.diamond().map_err(|e| e.to_string())?;
    Ok(DiamondReport {
        groups: d.groups.iter().map(|r| r.iter().map(|g| g.ascii()).collect()).collect(),
        picture: d.to_string(),
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = matroidFan)]
pub fn matroid_fan_js(input: &str) -> Result<String, JsError> {
    to_js(matroid_fan(input))
}

#[wasm_bindgen(js_name = toricInvariants)]
pub fn toric_invariants_js(input: &str) -> Result<String, JsError> {
    to_js(toric_invariants(input))
}

#[wasm_bindgen(js_name = kleinDiamond)]
pub fn klein_diamond_js() -> Result<String, JsError> {
    to_js(klein_diamond())
}
