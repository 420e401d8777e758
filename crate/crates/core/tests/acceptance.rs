mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropsurf_core::bergman::{reconstruct_matroid, FanPlane};
use tropsurf_core::fan_cycles::{deg_delta, FanCycle};
use tropsurf_core::fan_intersect::*;
use tropsurf_core::homology::*;
use tropsurf_core::matroid::*;
use tropsurf_core::surface::*;

use common::Q;

fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn g(free: usize, torsion: &[u64]) -> HomologyGroup {
    HomologyGroup { free_rank: free, torsion: torsion.to_vec() }
}

fn petersen() -> UnGraph<(), ()> {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    UnGraph::from_edges(edges)
}

fn library() -> Vec<Matroid> {
    simple_rank3_library(7).into_iter().flatten().collect()
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn klein_diamond() -> Result<String, String> {
    let d = CellComplex::from_json(&data("klein_bottle.json")).map_err(|e| e.to_string())?.diamond().map_err(|e| e.to_string())?;
    let expected = [
        [g(1, &[]), g(1, &[2]), g(0, &[])],
        [g(1, &[2]), g(2, &[2]), g(1, &[])],
        [g(0, &[2]), g(1, &[]), g(1, &[])],
    ];
    for p in 0..3 {
        for q in 0..3 {
            ensure(d.get(p, q) == &expected[p][q], format!("H_{p},{q} = {}", d.get(p, q)))?;
        }
    }
    Ok(format!("H_2,0 = {}, H_1,1 = {}", d.get(2, 0), d.get(1, 1)))
}

fn pairing_table() -> Result<String, String> {
    let k = CellComplex::from_json(&data("klein_bottle.json")).map_err(|e| e.to_string())?;
    let dom = k.domain.as_ref();
    let c: Vec<NamedCycle> = serde_json::from_str(&data("klein_cycles.json")).map_err(|e| e.to_string())?;
    for x in &c {
        x.cycle.require_closed(dom).map_err(|e| e.to_string())?;
        x.pushoff.require_closed(dom).map_err(|e| e.to_string())?;
    }
    let dot = |a: &OneOneCycle, b: &OneOneCycle| intersection_pairing(a, b).map_err(|e| e.to_string());
    let (gamma, g1, g2) = (&c[0], &c[1], &c[2]);
    let table = [
        ("γ·γ", dot(&gamma.cycle, &gamma.pushoff)?, 0),
        ("γ·γ₁", dot(&gamma.cycle, &g1.cycle)?, 0),
        ("γ·γ₂", dot(&gamma.cycle, &g2.cycle)?, 1),
        ("γ₁·γ₁", dot(&g1.cycle, &g1.pushoff)?, 0),
        ("γ₁·γ₂", dot(&g1.cycle, &g2.cycle)?, 0),
        ("γ₂·γ₂", dot(&g2.cycle, &g2.pushoff)?, 0),
    ];
    for (name, got, want) in table {
        ensure(got == want, format!("{name} = {got}, expected {want}"))?;
    }
    Ok(table.iter().map(|(n, v, _)| format!("{n}={v}")).collect::<Vec<_>>().join(" "))
}

fn conic_degree() -> Result<String, String> {
    let p = FanPlane::standard(&Matroid::uniform(3, 4).unwrap()).unwrap();
    let c = FanCycle::new(3, [(vec![-2, -1, 0], 1), (vec![1, 0, 1], 1), (vec![1, 1, -1], 1)]).unwrap();
    ensure(c.lies_in(&p), "conic not in the plane")?;
    let d = deg_delta(&c, p.basis()).map_err(|e| e.to_string())?;
    ensure(d == 2, format!("deg = {d}"))?;
    ensure(common::standard_degree(&c) == 2, "standard coordinates disagree")?;
    Ok(format!("deg = {d}"))
}

fn petersen_fan() -> Result<String, String> {
    let p = FanPlane::standard(&braid()).map_err(|e| e.to_string())?;
    ensure(p.counts() == (10, 15), format!("counts {:?}", p.counts()))?;
    ensure(is_isomorphic(&p.link_graph(), &petersen()), "link graph is not Petersen")?;
    let a = c2_mult_fan(&p).map_err(|e| e.to_string())?;
    let b = braid().c2_point_multiplicity().map_err(|e| e.to_string())?;
    ensure(a == 2 && b == 2, format!("c2 = {a} from the fan, {b} from the polynomial"))?;
    Ok("10 rays, 15 cones, Petersen link, c2 = 2 twice".into())
}

fn k_squared_cross_check() -> Result<String, String> {
    let lib = library();
    for m in &lib {
        let p = FanPlane::standard(m).map_err(|e| e.to_string())?;
        let k = k_squared_formulas(&p).map_err(|e| e.to_string())?;
        ensure(k.from_points == k.from_fan, format!("{m}: {} vs {}", k.from_points, k.from_fan))?;
    }
    Ok(format!("{} matroids", lib.len()))
}

fn bezout() -> Result<String, String> {
    let fans: Vec<FanPlane> = simple_rank3_library(6).iter().flatten().map(|m| FanPlane::standard(m).unwrap()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut pairs = 0;
    while pairs < 1200 {
        let p = &fans[rng.gen_range(0..fans.len())];
        let c1 = common::random_curve(p, &mut rng, 3, 3);
        let c2 = common::random_curve(p, &mut rng, 3, 3);
        let r = bezout_report(&c1, &c2, p).map_err(|e| e.to_string())?;
        // the vertex term comes from an independent cut-out computation
        let vertex = common::cut_out_vertex_intersection(&c1, &c2, p);
        let corners: i64 = r.corners.iter().map(|c| c.multiplicity).sum();
        let (d1, d2) = (deg_delta(&c1, p.basis()).unwrap(), deg_delta(&c2, p.basis()).unwrap());
        ensure(vertex + Q::from_integer(corners as i128) == Q::from_integer((d1 * d2) as i128), format!("{c1} . {c2} in {}", p.matroid()))?;
        pairs += 1;
    }
    Ok(format!("{pairs} pairs"))
}

fn reconstruction() -> Result<String, String> {
    let lib = library();
    for m in &lib {
        let p = FanPlane::standard(m).map_err(|e| e.to_string())?;
        let dirs: Vec<Vec<i64>> = p.rays().iter().map(|r| r.dir.clone()).collect();
        let back = reconstruct_matroid(&dirs, p.cones(), p.basis()).map_err(|e| e.to_string())?;
        ensure(back.is_isomorphic(m), format!("{m} came back as {back}"))?;
    }
    Ok(format!("{} matroids", lib.len()))
}

fn modification_split() -> Result<String, String> {
    let mut count = 0;
    for m in library() {
        for family in disjoint_point_families(m.points()) {
            let ext = m.extend_by_line(&family).map_err(|e| e.to_string())?;
            let before = m.c2_point_multiplicity().unwrap();
            let after = ext.c2_point_multiplicity().unwrap();
            let r = ext.points_through(m.n_elements()).len() as i64;
            ensure(before == after + 2 - r, format!("{m} along {family:?}"))?;
            modification_vertex_split(&m, &family).map_err(|e| e.to_string())?;
            count += 1;
        }
    }
    Ok(format!("{count} extensions"))
}

/// Fans reachable from TP² by at most six star subdivisions.
fn reachable_fans() -> Vec<Fan2D> {
    let mut seen = BTreeSet::new();
    let mut level = vec![Fan2D::projective_plane()];
    seen.insert(level[0].canonical());
    let mut all = level.clone();
    for _ in 0..6 {
        let mut next = Vec::new();
        for f in &level {
            for i in 0..f.rays().len() {
                let h = f.star_subdivide(i);
                if seen.insert(h.canonical()) {
                    next.push(h);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

fn generated_surfaces() -> Vec<(String, Surface)> {
    let mut out: Vec<(String, Surface)> = reachable_fans().iter().map(|f| (format!("{:?}", f.rays()), toric_surface(f))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2718);
    for _ in 0..200 {
        let depth = rng.gen_range(1..5);
        let (e, x) = common::random_expr(&mut rng, depth);
        out.push((serde_json::to_string(&e).unwrap(), x));
    }
    let h = toric_surface(&Fan2D::hirzebruch(2));
    out.push(("Hirzebruch self-sum".into(), self_sum(&h, "D1", "D3", None).unwrap()));
    let b = toric_surface(&Fan2D::projective_plane().star_subdivide(0));
    let e = b.ledger.curves.iter().find(|c| c.self_intersection == -1).unwrap().id.clone();
    out.push(("blow-down".into(), contract_minus_one(&b, &e).unwrap()));
    out
}

fn noether() -> Result<String, String> {
    let fans = reachable_fans().len();
    let all = generated_surfaces();
    for (name, x) in &all {
        ensure(noether_check(x).pass, format!("{name}: {}", x.triple))?;
    }
    let n = all.len();
    ensure(all[n - 2].1.triple == InvariantTriple { chi: 0, k2: 0, c2: 0 }, "Hirzebruch self-sum")?;
    ensure(all[n - 1].1.triple == InvariantTriple { chi: 1, k2: 9, c2: 3 }, "blow-down")?;
    let uses = |tag: &str| all[fans..].iter().filter(|(e, _)| e.contains(&format!("\"{tag}\""))).count();
    Ok(format!(
        "{fans} fans, {} expressions (sum {}, selfsum {}, modify {}, contract {})",
        n - fans,
        uses("sum"),
        uses("selfsum"),
        uses("modify"),
        uses("contract")
    ))
}

fn adjunction() -> Result<String, String> {
    let mut curves = 0;
    for (name, x) in generated_surfaces() {
        for c in &x.ledger.curves {
            let r = adjunction_check(&x, &c.id).map_err(|e| e.to_string())?;
            ensure(r.pass, format!("{} in {name}", c.id))?;
            curves += 1;
        }
    }
    Ok(format!("{curves} curves"))
}

fn homology_oracle() -> Result<String, String> {
    for name in ["klein_bottle.json", "torus.json"] {
        let x = CellComplex::from_json(&data(name)).map_err(|e| e.to_string())?;
        let dims: Vec<(String, usize)> = x.cells.iter().map(|c| (c.id.clone(), c.dim)).collect();
        let inc: Vec<(String, String, i64)> = x.incidences.iter().map(|i| (i.big.clone(), i.small.clone(), i.sign)).collect();
        let o = common::constant_homology(&dims, &inc);
        for q in 0..3 {
            let h = x.homology(0, q).map_err(|e| e.to_string())?;
            let got = (h.free_rank, h.torsion.iter().map(|&t| t as i64).collect::<Vec<_>>());
            ensure(got == o[q], format!("{name} H_0,{q}: {got:?} vs {:?}", o[q]))?;
        }
    }
    Ok("Klein bottle and torus".into())
}

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Check, Option<u64>); 11] = [
        ("Klein bottle diamond", klein_diamond, Some(1)),
        ("pairing table", pairing_table, Some(1)),
        ("conic degree", conic_degree, None),
        ("Petersen fan", petersen_fan, None),
        ("K_P^2 cross-check", k_squared_cross_check, Some(60)),
        ("Bezout property", bezout, None),
        ("matroid reconstruction", reconstruction, None),
        ("modification vertex split", modification_split, None),
        ("Noether", noether, Some(30)),
        ("adjunction", adjunction, None),
        ("homology oracle", homology_oracle, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if took > Duration::from_secs(*s) => Err(format!("took {took:.2?}, limit {s} s")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
