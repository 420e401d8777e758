//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use tropsurf_core::bergman::FanPlane;
use tropsurf_core::fan_cycles::FanCycle;

pub type Q = Ratio<i128>;

fn q(x: i64) -> Q {
    Q::from_integer(x as i128)
}

fn gcd_vec(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = gcd_vec(v);
    v.iter().map(|x| x / g).collect()
}

/// Any solution of `A x = b` over the rationals, free variables set to zero.
pub fn solve_any(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = a.iter().zip(b).map(|(r, &x)| {
        let mut r = r.clone();
        r.push(x);
        r
    }).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Q::one() / m[row][c];
        for x in m[row].iter_mut() {
            *x *= inv;
        }
        for r in 0..rows {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c];
                for j in 0..=cols {
                    let d = f * m[row][j];
                    m[r][j] -= d;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols];
    }
    Some(x)
}

/// Coefficients `(α, β)` with `v = α x + β y`, if `x`, `y` are independent and `v` is in their span.
fn coeffs2(x: &[i64], y: &[i64], v: &[i64]) -> Option<(Q, Q)> {
    // pick two coordinates where x, y are independent
    let n = x.len();
    for a in 0..n {
        for b in a + 1..n {
            let d = x[a] * y[b] - x[b] * y[a];
            if d != 0 {
                let alpha = Q::new((v[a] * y[b] - v[b] * y[a]) as i128, d as i128);
                let beta = Q::new((x[a] * v[b] - x[b] * v[a]) as i128, d as i128);
                let ok = (0..n).all(|k| alpha * q(x[k]) + beta * q(y[k]) == q(v[k]));
                return ok.then_some((alpha, beta));
            }
        }
    }
    None
}

/// Local intersection number at the origin of two fan curves in a fan plane,
/// computed by cutting `c2` out with a conewise linear function `φ` on the
/// refinement of the plane by the rays of `c2`, then evaluating `φ` on `c1`.
pub fn cut_out_vertex_intersection(c1: &FanCycle, c2: &FanCycle, p: &FanPlane) -> Q {
    let prays: Vec<Vec<i64>> = p.rays().iter().map(|r| r.dir.clone()).collect();
    let mut rays: Vec<Vec<i64>> = prays.clone();
    let mut cones: Vec<(usize, usize)> = Vec::new();
    let index_of = |rays: &mut Vec<Vec<i64>>, v: Vec<i64>| -> usize {
        if let Some(i) = rays.iter().position(|r| *r == v) {
            i
        } else {
            rays.push(v);
            rays.len() - 1
        }
    };
    for &(a, b) in p.cones() {
        let (ua, ub) = (prays[a].clone(), prays[b].clone());
        let mut inside: Vec<(Q, Vec<i64>)> = Vec::new();
        for (v, _) in c2.rays() {
            if let Some((al, be)) = coeffs2(&ua, &ub, v) {
                if al.is_positive() && be.is_positive() {
                    inside.push((be / al, v.clone()));
                }
            }
        }
        inside.sort();
        inside.dedup();
        let mut chain = vec![a];
        for (_, v) in inside {
            chain.push(index_of(&mut rays, primitive(&v)));
        }
        chain.push(b);
        for w in chain.windows(2) {
            cones.push((w[0], w[1]));
        }
    }
    for (v, _) in c2.rays() {
        assert!(rays.contains(v), "ray {v:?} of the second curve is outside the plane");
    }
    let nr = rays.len();
    let mut a = vec![vec![Q::zero(); nr]; nr];
    let mut b = vec![Q::zero(); nr];
    for (rho, pv) in rays.iter().enumerate() {
        let mut normal_sum = vec![Q::zero(); pv.len()];
        for &(x, y) in &cones {
            let other = if x == rho { y } else if y == rho { x } else { continue };
            let qv = &rays[other];
            // index of Zp + Zq in its saturation
            let mut d = 0i64;
            for i in 0..pv.len() {
                for j in i + 1..pv.len() {
                    d = d.gcd(&(pv[i] * qv[j] - pv[j] * qv[i]));
                }
            }
            let alpha = (0..d)
                .find(|&al| pv.iter().zip(qv).all(|(&pp, &qq)| (qq - al * pp) % d == 0))
                .expect("lattice normal exists");
            // normal w = (q - alpha p) / d, so φ(w) = (φ(q) - alpha φ(p)) / d
            a[rho][other] += Q::new(1, d as i128);
            a[rho][rho] -= Q::new(alpha as i128, d as i128);
            for k in 0..pv.len() {
                normal_sum[k] += Q::new((qv[k] - alpha * pv[k]) as i128, d as i128);
            }
        }
        let k = pv.iter().position(|&x| x != 0).unwrap();
        let lambda = normal_sum[k] / q(pv[k]);
        for i in 0..pv.len() {
            assert_eq!(normal_sum[i], lambda * q(pv[i]), "refined plane is not balanced");
        }
        a[rho][rho] -= lambda;
        b[rho] = c2.rays().iter().find(|(v, _)| v == pv).map_or(Q::zero(), |(_, w)| q(*w));
    }
    let phi = solve_any(&a, &b).expect("every curve in a fan plane is cut out by a function");
    let eval = |v: &[i64]| -> Q {
        if let Some(i) = rays.iter().position(|r| r == v) {
            return phi[i];
        }
        for &(x, y) in &cones {
            if let Some((al, be)) = coeffs2(&rays[x], &rays[y], v) {
                if !al.is_negative() && !be.is_negative() {
                    return al * phi[x] + be * phi[y];
                }
            }
        }
        panic!("ray {v:?} of the first curve is outside the plane");
    };
    c1.rays().iter().map(|(v, w)| q(*w) * eval(v)).sum()
}

/// Intersection multiplicity at the origin of `𝕋²`-corner branches: the
/// order in `t` of `y^{l1'} - c x^{l2'}` along `x = t^{k1'}, y = t^{k2'}`
/// for primitive `(k1', k2')`, `(l1', l2')`, scaled by the branch counts.
pub fn puiseux_corner(k: (i64, i64), l: (i64, i64)) -> i64 {
    let g = k.0.gcd(&k.1);
    let h = l.0.gcd(&l.1);
    let (k1, k2) = (k.0 / g, k.1 / g);
    let (l1, l2) = (l.0 / h, l.1 / h);
    // y^{l1} along the branch has order k2 l1, x^{l2} has order k1 l2; the
    // generic constant c prevents cancellation when they tie.
    g * h * (k2 * l1).min(k1 * l2)
}

/// Degree against the standard hyperplane: `Σ w max(0, max_i v_i)`.
pub fn standard_degree(c: &FanCycle) -> i64 {
    c.rays().iter().map(|(v, w)| w * v.iter().copied().max().unwrap_or(0).max(0)).sum()
}

/// A random balanced curve in `p`: a few rays inside random cones, closed up
/// by the positive decomposition of minus their weighted sum along the
/// lines `u_0, ..., u_N`, all of which lie in the plane.
pub fn random_curve<R: rand::Rng>(p: &FanPlane, rng: &mut R, max_rays: usize, max_coeff: i64) -> FanCycle {
    let n = p.dim();
    let mut rays: Vec<(Vec<i64>, i64)> = Vec::new();
    let count = rng.gen_range(1..=max_rays);
    for _ in 0..count {
        let (a, b) = p.cones()[rng.gen_range(0..p.cones().len())];
        let (x, y) = (rng.gen_range(0..=max_coeff), rng.gen_range(1..=max_coeff));
        let (ra, rb) = (&p.rays()[a].dir, &p.rays()[b].dir);
        let v: Vec<i64> = (0..n).map(|k| x * ra[k] + y * rb[k]).collect();
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        rays.push((v, rng.gen_range(1..=3)));
    }
    let mut sum = vec![0i64; n];
    for (v, w) in &rays {
        for k in 0..n {
            sum[k] += w * v[k];
        }
    }
    let minus: Vec<i64> = sum.iter().map(|x| -x).collect();
    if minus.iter().any(|&x| x != 0) {
        let r = tropsurf_core::fan_cycles::positive_decomposition(&minus, p.basis()).unwrap();
        for (i, &c) in r.iter().enumerate() {
            if c > 0 {
                rays.push((p.basis().u(i).to_vec(), c));
            }
        }
    }
    FanCycle::new(n, rays).unwrap()
}

/// Constant-coefficient cellular homology of a complex given by cells and
/// signed incidences, as `(free rank, torsion)` per degree. Ranks come from
/// rational elimination and torsion from determinantal divisors
/// `d_k = gcd of k x k minors`, so nothing is shared with Smith reduction.
pub fn constant_homology(dims: &[(String, usize)], incidences: &[(String, String, i64)]) -> Vec<(usize, Vec<i64>)> {
    let top = dims.iter().map(|d| d.1).max().unwrap_or(0);
    let cells_of = |q: usize| -> Vec<&str> { dims.iter().filter(|d| d.1 == q).map(|d| d.0.as_str()).collect() };
    let boundary = |q: usize| -> Vec<Vec<i64>> {
        let rows = cells_of(q - 1);
        let cols = cells_of(q);
        let mut m = vec![vec![0i64; cols.len()]; rows.len()];
        for (b, s, sign) in incidences {
            if let (Some(j), Some(i)) = (cols.iter().position(|c| c == b), rows.iter().position(|c| c == s)) {
                m[i][j] += sign;
            }
        }
        m
    };
    let mut out = Vec::new();
    for q in 0..=top {
        let n = cells_of(q).len();
        let r_out = if q == 0 { 0 } else { tropsurf_core::linalg::rank(&boundary(q)) };
        let (r_in, torsion) = if q == top {
            (0, Vec::new())
        } else {
            let d = boundary(q + 1);
            let r = tropsurf_core::linalg::rank(&d);
            (r, torsion_from_minors(&d, r))
        };
        out.push((n - r_out - r_in, torsion));
    }
    out
}

fn minors_gcd(m: &[Vec<i64>], k: usize) -> i64 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = 0i64;
    for rs in combos(rows, k) {
        for cs in combos(cols, k) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
            g = g.gcd(&tropsurf_core::linalg::det(&sub));
        }
    }
    g
}

fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = combos(n - 1, k - 1);
    for c in with.iter_mut() {
        c.push(n - 1);
    }
    let mut out = combos(n - 1, k);
    out.extend(with);
    out
}

/// Invariant factors `d_k / d_{k-1}` above 1.
fn torsion_from_minors(m: &[Vec<i64>], rank: usize) -> Vec<i64> {
    let mut prev = 1i64;
    let mut out = Vec::new();
    for k in 1..=rank {
        let d = minors_gcd(m, k);
        let f = d / prev;
        if f > 1 {
            out.push(f);
        }
        prev = d;
    }
    out
}

/// A random complete unimodular fan: `TP²` or a Hirzebruch fan, then a few
/// star subdivisions.
pub fn random_fan<R: rand::Rng>(rng: &mut R) -> tropsurf_core::surface::Fan2D {
    use tropsurf_core::surface::Fan2D;
    let mut f = if rng.gen_bool(0.4) { Fan2D::projective_plane() } else { Fan2D::hirzebruch(rng.gen_range(0..4)) };
    for _ in 0..rng.gen_range(0..3) {
        let i = rng.gen_range(0..f.rays().len());
        f = f.star_subdivide(i);
    }
    f
}

/// A random construction expression together with its value. Sums pair a
/// rational curve with a curve of opposite self-intersection on a
/// Hirzebruch surface; self-sums use two disjoint curves that match.
pub fn random_expr<R: rand::Rng>(rng: &mut R, depth: usize) -> (tropsurf_core::surface::SurfaceExpr, tropsurf_core::surface::Surface) {
    use tropsurf_core::surface::*;
    let toric = |rng: &mut R| {
        let e = SurfaceExpr::toric(&random_fan(rng));
        let s = e.evaluate().unwrap();
        (e, s)
    };
    if depth == 0 {
        return toric(rng);
    }
    let (base, x) = random_expr(rng, depth - 1);
    match rng.gen_range(0..4) {
        0 => {
            let segs: Vec<&LedgerEntry> = x
                .ledger
                .curves
                .iter()
                .filter(|c| c.curve.b1 == 0 && c.curve.valencies == [1, 1] && c.simple_normal_crossings)
                .collect();
            if segs.is_empty() {
                return (base, x);
            }
            let c = segs[rng.gen_range(0..segs.len())];
            let s = c.self_intersection;
            let k = s.abs();
            let (right, right_curve) = match s.signum() {
                0 => (Fan2D::hirzebruch(0), "D1"),
                1 => (Fan2D::hirzebruch(k), "D4"),
                _ => (Fan2D::hirzebruch(k), "D2"),
            };
            let leaf_map = rng.gen_bool(0.5).then(|| vec![1, 0]);
            let e = SurfaceExpr::Sum {
                left: Box::new(base),
                left_curve: c.id.clone(),
                right: Box::new(SurfaceExpr::toric(&right)),
                right_curve: right_curve.into(),
                leaf_map,
            };
            let v = e.evaluate().unwrap();
            (e, v)
        }
        1 => {
            let cs = &x.ledger.curves;
            let mut pairs = Vec::new();
            for a in cs {
                for b in cs {
                    if a.id < b.id
                        && a.curve.isomorphic(&b.curve)
                        && a.self_intersection == -b.self_intersection
                        && a.simple_normal_crossings
                        && b.simple_normal_crossings
                        && !x.ledger.corners.iter().any(|k| k.iter().any(|m| m.0 == a.id) && k.iter().any(|m| m.0 == b.id))
                    {
                        pairs.push((a.id.clone(), b.id.clone()));
                    }
                }
            }
            if pairs.is_empty() {
                let k = rng.gen_range(0..4);
                let e = SurfaceExpr::SelfSum {
                    base: Box::new(SurfaceExpr::toric(&Fan2D::hirzebruch(k))),
                    curve_1: "D1".into(),
                    curve_2: "D3".into(),
                    leaf_map: rng.gen_bool(0.5).then(|| vec![1, 0]),
                };
                let v = e.evaluate().unwrap();
                return (e, v);
            }
            let (a, b) = pairs[rng.gen_range(0..pairs.len())].clone();
            let e = SurfaceExpr::SelfSum { base: Box::new(base), curve_1: a, curve_2: b, leaf_map: None };
            let v = e.evaluate().unwrap();
            (e, v)
        }
        2 => {
            let ids: Vec<String> = x.ledger.curves.iter().map(|c| c.id.clone()).collect();
            if ids.is_empty() {
                return (base, x);
            }
            let tripod = rng.gen_bool(0.5) && ids.len() >= 3;
            let (curve, meets) = if tripod {
                let mut m = Vec::new();
                for _ in 0..3 {
                    m.push(ids[rng.gen_range(0..ids.len())].clone());
                }
                (CurveDescriptor::new(vec![3, 1, 1, 1], 0).unwrap(), m)
            } else {
                let m = vec![ids[rng.gen_range(0..ids.len())].clone(), ids[rng.gen_range(0..ids.len())].clone()];
                (CurveDescriptor::segment(), m)
            };
            let mut id = "M".to_string();
            while x.ledger.get(&id).is_ok() {
                id.push('\'');
            }
            let e = SurfaceExpr::Modify {
                base: Box::new(base),
                id,
                curve,
                self_intersection: rng.gen_range(-3..=3),
                leaf_meets: meets,
                locally_degree_1: true,
            };
            let v = e.evaluate().unwrap();
            (e, v)
        }
        _ => {
            let minus: Vec<&LedgerEntry> =
                x.ledger.curves.iter().filter(|c| c.curve.b1 == 0 && c.self_intersection == -1).collect();
            if minus.is_empty() {
                return (base, x);
            }
            let c = minus[rng.gen_range(0..minus.len())].id.clone();
            let e = SurfaceExpr::Contract { base: Box::new(base), curve: c };
            let v = e.evaluate().unwrap();
            (e, v)
        }
    }
}
