use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use tropsurf_core::bergman::{classify_missing_ray, reconstruct_matroid, Basis, FanPlane, FanSpec};
use tropsurf_core::fan_cycles::{canonical_cycle, deg_delta, CycleSpec, FanCycle};
use tropsurf_core::fan_intersect::{bezout_report, c2_mult_fan, k_squared_formulas};
use tropsurf_core::homology::{signature_1_1, CellComplex, NamedCycle};
use tropsurf_core::matroid::{simple_rank3_library, Matroid, MatroidSpec};
use tropsurf_core::surface::{adjunction_check, noether_check, signature_hypothesis, Surface, SurfaceExpr};

pub enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

pub struct Report {
    pub text: String,
    pub json: Value,
    /// False when a verification reported a failure.
    pub pass: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json, pass: true }
    }
}

pub struct Style {
    pub color: bool,
}

impl Style {
    fn verdict(&self, pass: bool) -> String {
        match (pass, self.color) {
            (true, true) => "\x1b[32mpass\x1b[0m".into(),
            (false, true) => "\x1b[31mfail\x1b[0m".into(),
            (true, false) => "pass".into(),
            (false, false) => "fail".into(),
        }
    }
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn load_matroid(path: &Path) -> Result<Matroid, Failure> {
    load::<MatroidSpec>(path)?.build().map_err(domain)
}

fn load_plane(path: &Path) -> Result<FanPlane, Failure> {
    FanPlane::standard(&load_matroid(path)?).map_err(domain)
}

fn load_cycle(path: &Path) -> Result<FanCycle, Failure> {
    load::<CycleSpec>(path)?.build().map_err(domain)
}

fn load_surface(path: &Path) -> Result<Surface, Failure> {
    load::<SurfaceExpr>(path)?.evaluate().map_err(domain)
}

fn load_complex(path: &Path) -> Result<CellComplex, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    CellComplex::from_json(&text).map_err(domain)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn matroid_info(path: &Path) -> Result<Report, Failure> {
    let m = load_matroid(path)?;
    let chi = m.char_poly();
    let mut text = format!("matroid on {} elements, rank {}\n", m.n_elements(), m.rank());
    let _ = writeln!(text, "simple: {}", yes_no(m.is_simple()));
    let points: Vec<String> = m.points().iter().filter(|p| p.len() > 2).map(|p| p.to_string()).collect();
    if m.rank() == 3 {
        let _ = writeln!(text, "points with 3 or more elements: {}", if points.is_empty() { "none".into() } else { points.join(" ") });
    }
    let _ = writeln!(text, "characteristic polynomial: {chi}");
    let mut json = json!({
        "n": m.n_elements(),
        "rank": m.rank(),
        "simple": m.is_simple(),
        "char_poly": chi.coeffs(),
    });
    if m.rank() == 3 {
        json["points"] = json!(m.points());
    }
    if let (Ok(red), Ok(c2)) = (m.reduced_char_poly(), m.c2_point_multiplicity()) {
        let _ = writeln!(text, "reduced polynomial: {red}");
        let _ = writeln!(text, "c2 multiplicity: {c2}");
        json["reduced_char_poly"] = json!(red.coeffs());
        json["c2"] = json!(c2);
    }
    if m.is_simple() && m.rank() == 3 {
        let _ = writeln!(text, "saturated triangle: {}", yes_no(m.has_saturated_triangle()));
        json["saturated_triangle"] = json!(m.has_saturated_triangle());
    }
    Ok(Report::ok(text, json))
}

pub fn matroid_library() -> Result<Report, Failure> {
    let lib = simple_rank3_library(7);
    let mut text = String::from("simple rank-3 matroids up to isomorphism\n");
    let mut rows = Vec::new();
    for (n, ms) in lib.iter().enumerate().skip(3) {
        let _ = writeln!(text, "  n = {n}: {}", ms.len());
        rows.push(json!({"n": n, "count": ms.len()}));
    }
    Ok(Report::ok(text, json!({ "counts": rows })))
}

pub fn fan_build(path: &Path) -> Result<Report, Failure> {
    let p = load_plane(path)?;
    let (rays, cones) = p.counts();
    let missing = classify_missing_ray(p.matroid()).map_err(domain)?;
    let mut text = format!("rays={rays} faces={cones}\n");
    let _ = writeln!(text, "missing ray: {missing:?}");
    for (i, r) in p.rays().iter().enumerate() {
        let _ = writeln!(text, "  ray {i}: flat {} dir {:?} valency {}", r.flat, r.dir, p.valency(i));
    }
    let list: Vec<String> = p.cones().iter().map(|(a, b)| format!("{a}-{b}")).collect();
    let _ = writeln!(text, "  cones: {}", list.join(" "));
    let json = json!({ "rays": rays, "faces": cones, "missing_ray": missing, "fan": FanSpec::from_fan(&p) });
    Ok(Report::ok(text, json))
}

pub fn fan_reconstruct(path: &Path) -> Result<Report, Failure> {
    let spec: FanSpec = load(path)?;
    let m = reconstruct_matroid(&spec.directions(), &spec.cones, &Basis::standard(spec.dim)).map_err(domain)?;
    let points: Vec<String> = m.points().iter().filter(|p| p.len() > 2).map(|p| p.to_string()).collect();
    let text = format!(
        "matroid on {} elements, rank {}\npoints with 3 or more elements: {}\n",
        m.n_elements(),
        m.rank(),
        if points.is_empty() { "none".into() } else { points.join(" ") }
    );
    Ok(Report::ok(text, json!(MatroidSpec::from_matroid(&m))))
}

pub fn cycle_degree(cycle: &Path, matroid: &Path) -> Result<Report, Failure> {
    let p = load_plane(matroid)?;
    let c = load_cycle(cycle)?;
    if !c.lies_in(&p) {
        return Err(Failure::Domain(format!("cycle {c} does not lie in the fan plane")));
    }
    let d = deg_delta(&c, p.basis()).map_err(domain)?;
    let text = format!("cycle {c}\nbalanced: {}\ndeg = {d}\n", yes_no(c.is_balanced()));
    Ok(Report::ok(text, json!({ "balanced": c.is_balanced(), "degree": d })))
}

pub fn cycle_canonical(matroid: &Path) -> Result<Report, Failure> {
    let p = load_plane(matroid)?;
    let k = canonical_cycle(&p);
    let d = deg_delta(&k, p.basis()).map_err(domain)?;
    let mut text = String::from("canonical cycle, weight val - 2 on each ray\n");
    for (v, w) in k.rays() {
        let _ = writeln!(text, "  {w} * {v:?}");
    }
    let _ = writeln!(text, "deg = {d}");
    Ok(Report::ok(text, json!({ "cycle": CycleSpec::from_cycle(&k), "degree": d })))
}

pub fn intersect_bezout(cycles: &[PathBuf], matroid: &Path) -> Result<Report, Failure> {
    if cycles.len() != 2 {
        return Err(Failure::Usage(format!("expected two --cycle files, got {}", cycles.len())));
    }
    let p = load_plane(matroid)?;
    let (c1, c2) = (load_cycle(&cycles[0])?, load_cycle(&cycles[1])?);
    let r = bezout_report(&c1, &c2, &p).map_err(domain)?;
    let mut text = format!("vertex: {}\n", r.vertex);
    for c in &r.corners {
        let _ = writeln!(text, "corner {}: {}", c.point, c.multiplicity);
    }
    let _ = writeln!(text, "total: {} = deg * deg", r.total);
    Ok(Report::ok(text, json!(r)))
}

pub fn intersect_invariants(matroid: &Path, style: &Style) -> Result<Report, Failure> {
    let p = load_plane(matroid)?;
    let k = k_squared_formulas(&p).map_err(domain)?;
    let c_fan = c2_mult_fan(&p).map_err(domain)?;
    let c_poly = p.matroid().c2_point_multiplicity().map_err(domain)?;
    let pass = k.from_points == k.from_fan && c_fan == c_poly;
    let text = format!(
        "K2 from points: {}\nK2 from the fan: {}\nc2 from the fan: {c_fan}\nc2 from the polynomial: {c_poly}\nagreement: {}\n",
        k.from_points,
        k.from_fan,
        style.verdict(pass)
    );
    let json = json!({
        "K2": { "from_points": k.from_points, "from_fan": k.from_fan },
        "c2": { "from_fan": c_fan, "from_polynomial": c_poly },
        "pass": pass,
    });
    Ok(Report { text, json, pass })
}

fn ledger_text(x: &Surface) -> String {
    let mut text = String::new();
    for c in &x.ledger.curves {
        let _ = writeln!(
            text,
            "  {}: self-intersection {}, b1 {}, valencies {:?}{}",
            c.id,
            c.self_intersection,
            c.curve.b1,
            c.curve.valencies,
            if c.simple_normal_crossings { "" } else { ", not snc" }
        );
    }
    text
}

pub fn surface_eval(path: &Path) -> Result<Report, Failure> {
    let x = load_surface(path)?;
    let t = x.triple;
    let text = format!("chi={} K2={} c2={}\nboundary curves:\n{}", t.chi, t.k2, t.c2, ledger_text(&x));
    Ok(Report::ok(text, json!(x)))
}

pub fn surface_noether(path: &Path, style: &Style) -> Result<Report, Failure> {
    let x = load_surface(path)?;
    let r = noether_check(&x);
    let text = format!("chi={} K2={} c2={} noether={}\n", r.chi, r.k2, r.c2, style.verdict(r.pass));
    Ok(Report { text, json: json!(r), pass: r.pass })
}

pub fn surface_adjunction(path: &Path, style: &Style) -> Result<Report, Failure> {
    let x = load_surface(path)?;
    let mut text = String::new();
    let mut reports = Vec::new();
    for c in &x.ledger.curves {
        let r = adjunction_check(&x, &c.id).map_err(domain)?;
        let _ = writeln!(
            text,
            "{}: b1={} K.C={} C^2={} (K.C + C^2)/2 + 1 = {} {}",
            r.curve,
            r.b1,
            r.k_dot_c,
            r.self_intersection,
            r.rhs,
            style.verdict(r.pass)
        );
        reports.push(r);
    }
    let pass = reports.iter().all(|r| r.pass);
    if reports.is_empty() {
        text.push_str("no boundary curves\n");
    }
    Ok(Report { text, json: json!({ "curves": reports, "pass": pass }), pass })
}

pub fn surface_signature(path: &Path) -> Result<Report, Failure> {
    let x = load_surface(path)?;
    let s = signature_hypothesis(&x);
    let text = format!("(K2 - 2 c2)/3 = {s}\n");
    Ok(Report::ok(text, json!({ "signature": s.to_string() })))
}

pub fn homology_diamond(path: &Path) -> Result<Report, Failure> {
    let d = load_complex(path)?.diamond().map_err(domain)?;
    let mut groups = Vec::new();
    for (p, row) in d.groups.iter().enumerate() {
        for (q, g) in row.iter().enumerate() {
            groups.push(json!({ "p": p, "q": q, "free_rank": g.free_rank, "torsion": g.torsion, "group": g.ascii() }));
        }
    }
    Ok(Report::ok(d.to_string(), json!({ "dim": d.dim, "groups": groups })))
}

pub fn homology_group(path: &Path, p: usize, q: usize) -> Result<Report, Failure> {
    let g = load_complex(path)?.homology(p, q).map_err(domain)?;
    let text = format!("H_{p},{q} = {g}\n");
    Ok(Report::ok(text, json!({ "p": p, "q": q, "free_rank": g.free_rank, "torsion": g.torsion, "group": g.ascii() })))
}

pub fn homology_pairing(complex: &Path, cycles: &Path) -> Result<Report, Failure> {
    let x = load_complex(complex)?;
    let basis: Vec<NamedCycle> = load(cycles)?;
    let r = signature_1_1(&basis, x.domain.as_ref()).map_err(domain)?;
    let width = r.names.iter().map(|n| n.chars().count()).max().unwrap_or(0);
    let mut text = String::from("Gram matrix:\n");
    for (name, row) in r.names.iter().zip(&r.gram) {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
        let _ = writeln!(text, "  {name:<width$} {}", cells.join(""));
    }
    let _ = writeln!(text, "signature: {}", r.signature);
    Ok(Report::ok(text, json!(r)))
}
