//! Integral cellular cosheaf homology `H_{p,q}` of cell complexes whose
//! coefficient system is generated by `F₁` and the maps `ι₁`, and the
//! intersection pairing of `(1,1)`-cycles drawn in a square chart.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("bad complex JSON: {0}")]
    Parse(String),
    #[error("cell id {0:?} is used twice")]
    DuplicateCell(String),
    #[error("no cell {0:?}")]
    UnknownCell(String),
    #[error("incidence {big:?} -> {small:?} does not drop dimension by one")]
    BadDimension { big: String, small: String },
    #[error("incidence sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("no F1 rank for cell {0:?}")]
    MissingRank(String),
    #[error("iota1 for {big:?} -> {small:?} should be {rows}x{cols}")]
    IotaShape { big: String, small: String, rows: usize, cols: usize },
    #[error("boundary squared is not zero for p = {p} at q = {q}")]
    BoundarySquared { p: usize, q: usize },
    #[error("iota1 compositions from {big:?} to {small:?} disagree")]
    NonFunctorial { big: String, small: String },
    #[error("invariant factor {0} does not fit in 64 bits")]
    Overflow(BigInt),
    #[error("point {0} lies outside the chart [-1, 1]^2")]
    OutsideChart(String),
    #[error("degenerate segment at {0}")]
    DegenerateSegment(String),
    #[error("cycles do not meet transversally: {0}")]
    NonTransversal(String),
    #[error("chain is not closed: boundary {0}")]
    NotClosed(String),
    #[error("weighted graph is not balanced: boundary {0}")]
    Unbalanced(String),
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    AsymmetricGram(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// `small` is a face of `big`. `iota1` has `rank(small)` rows and
/// `rank(big)` columns; when absent it is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Incidence {
    pub big: String,
    pub small: String,
    pub sign: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iota1: Option<Vec<Vec<i64>>>,
}

/// How the sides of `[-1, 1]²` are identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Glue {
    /// `(1, y) ~ (-1, y)`, resp. `(x, 1) ~ (x, -1)`.
    Same,
    /// `(1, y) ~ (-1, -y)`, resp. `(x, 1) ~ (-x, -1)`.
    Flip,
}

/// A surface obtained from the square `[-1, 1]²` by gluing opposite sides,
/// which serves as the chart for drawing `(1,1)`-cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDomain {
    pub glue_x: Glue,
    pub glue_y: Glue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub cells: Vec<Cell>,
    pub incidences: Vec<Incidence>,
    pub f1_rank: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<SquareDomain>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, entries: vec![vec![0; cols]; rows] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.entries[i][i] = 1;
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[i][k];
                if a != 0 {
                    for j in 0..other.cols {
                        out.entries[i][j] += a * other.entries[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&x| x == 0)
    }
}

/// Subsets of `0..n` of size `k` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// `Λ^p` of a matrix in the bases `e_S = e_{s1} ∧ ... ∧ e_{sp}` with `S`
/// increasing: the entry at `(S, T)` is the minor on rows `S`, columns `T`.
pub fn exterior_power(m: &IntMatrix, p: usize) -> IntMatrix {
    let rs = subsets(m.rows, p);
    let cs = subsets(m.cols, p);
    let mut out = IntMatrix::zero(rs.len(), cs.len());
    for (i, s) in rs.iter().enumerate() {
        for (j, t) in cs.iter().enumerate() {
            let minor: Vec<Vec<i64>> = s.iter().map(|&r| t.iter().map(|&c| m.entries[r][c]).collect()).collect();
            out.entries[i][j] = linalg::det(&minor);
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The chain complex `C_{p,*}` with `boundaries[q] : C_{p,q} -> C_{p,q-1}`
/// (`boundaries[0]` has no rows).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainComplex {
    pub p: usize,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl CellComplex {
    pub fn from_json(text: &str) -> Result<CellComplex, HomologyError> {
        let x: CellComplex = serde_json::from_str(text).map_err(|e| HomologyError::Parse(e.to_string()))?;
        x.validate()?;
        Ok(x)
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    fn cell_dims(&self) -> Result<HashMap<&str, usize>, HomologyError> {
        let mut dims = HashMap::new();
        for c in &self.cells {
            if dims.insert(c.id.as_str(), c.dim).is_some() {
                return Err(HomologyError::DuplicateCell(c.id.clone()));
            }
        }
        Ok(dims)
    }

    pub fn rank(&self, id: &str) -> Result<usize, HomologyError> {
        self.f1_rank.get(id).copied().ok_or_else(|| HomologyError::MissingRank(id.to_string()))
    }

    /// Largest `p` with a nonzero coefficient group.
    pub fn max_p(&self) -> usize {
        self.cells.iter().filter_map(|c| self.f1_rank.get(&c.id)).copied().max().unwrap_or(0)
    }

    pub fn iota1(&self, inc: &Incidence) -> Result<IntMatrix, HomologyError> {
        let (rb, rs) = (self.rank(&inc.big)?, self.rank(&inc.small)?);
        let bad = || HomologyError::IotaShape { big: inc.big.clone(), small: inc.small.clone(), rows: rs, cols: rb };
        match &inc.iota1 {
            None if rb == rs => Ok(IntMatrix::identity(rb)),
            None => Err(bad()),
            Some(rows) => {
                if rows.len() != rs || rows.iter().any(|r| r.len() != rb) {
                    return Err(bad());
                }
                Ok(IntMatrix { rows: rs, cols: rb, entries: rows.clone() })
            }
        }
    }

    /// Structural checks, then `D² = 0` for every `p` and functoriality of
    /// `ι₁` along paths made of single incidences.
    pub fn validate(&self) -> Result<(), HomologyError> {
        let dims = self.cell_dims()?;
        for c in &self.cells {
            self.rank(&c.id)?;
        }
        for inc in &self.incidences {
            let db = *dims.get(inc.big.as_str()).ok_or_else(|| HomologyError::UnknownCell(inc.big.clone()))?;
            let ds = *dims.get(inc.small.as_str()).ok_or_else(|| HomologyError::UnknownCell(inc.small.clone()))?;
            if db != ds + 1 {
                return Err(HomologyError::BadDimension { big: inc.big.clone(), small: inc.small.clone() });
            }
            if inc.sign != 1 && inc.sign != -1 {
                return Err(HomologyError::BadSign(inc.sign));
            }
            self.iota1(inc)?;
        }
        self.check_functorial()?;
        for p in 0..=self.max_p() {
            self.assemble(p)?;
        }
        Ok(())
    }

    fn check_functorial(&self) -> Result<(), HomologyError> {
        let mut count: HashMap<(&str, &str), usize> = HashMap::new();
        for inc in &self.incidences {
            *count.entry((inc.big.as_str(), inc.small.as_str())).or_insert(0) += 1;
        }
        let single: Vec<&Incidence> =
            self.incidences.iter().filter(|i| count[&(i.big.as_str(), i.small.as_str())] == 1).collect();
        let mut seen: HashMap<(&str, &str), IntMatrix> = HashMap::new();
        for a in &single {
            for b in &single {
                if a.small != b.big {
                    continue;
                }
                let comp = self.iota1(b)?.mul(&self.iota1(a)?);
                match seen.get(&(a.big.as_str(), b.small.as_str())) {
                    Some(m) if *m != comp => {
                        return Err(HomologyError::NonFunctorial { big: a.big.clone(), small: b.small.clone() })
                    }
                    Some(_) => {}
                    None => {
                        seen.insert((a.big.as_str(), b.small.as_str()), comp);
                    }
                }
            }
        }
        Ok(())
    }

    /// `C_{p,q} = ⊕_{dim E = q} Λ^p F₁(E)` and `D = Σ sign · Λ^p ι₁`.
    pub fn assemble(&self, p: usize) -> Result<ChainComplex, HomologyError> {
        let dims = self.cell_dims()?;
        let top = self.dim();
        let mut offset: HashMap<&str, usize> = HashMap::new();
        let mut ranks = vec![0usize; top + 1];
        for c in &self.cells {
            offset.insert(c.id.as_str(), ranks[c.dim]);
            ranks[c.dim] += binomial(self.rank(&c.id)?, p);
        }
        let mut boundaries: Vec<IntMatrix> = (0..=top)
            .map(|q| IntMatrix::zero(if q == 0 { 0 } else { ranks[q - 1] }, ranks[q]))
            .collect();
        for inc in &self.incidences {
            let q = *dims.get(inc.big.as_str()).ok_or_else(|| HomologyError::UnknownCell(inc.big.clone()))?;
            let block = exterior_power(&self.iota1(inc)?, p);
            let (r0, c0) = (offset[inc.small.as_str()], offset[inc.big.as_str()]);
            for i in 0..block.rows {
                for j in 0..block.cols {
                    boundaries[q].entries[r0 + i][c0 + j] += inc.sign * block.entries[i][j];
                }
            }
        }
        for q in 2..=top {
            if !boundaries[q - 1].mul(&boundaries[q]).is_zero() {
                return Err(HomologyError::BoundarySquared { p, q });
            }
        }
        Ok(ChainComplex { p, ranks, boundaries })
    }

    pub fn homology(&self, p: usize, q: usize) -> Result<HomologyGroup, HomologyError> {
        self.assemble(p)?.homology(q)
    }

    pub fn diamond(&self) -> Result<Diamond, HomologyError> {
        let d = self.dim();
        let mut groups = Vec::new();
        for p in 0..=d {
            let cx = self.assemble(p)?;
            groups.push((0..=d).map(|q| cx.homology(q)).collect::<Result<Vec<_>, _>>()?);
        }
        Ok(Diamond { dim: d, groups })
    }

    /// Disjoint union, with cell ids prefixed to keep them apart.
    pub fn disjoint_union(&self, other: &CellComplex, left: &str, right: &str) -> CellComplex {
        let mut out = CellComplex { cells: Vec::new(), incidences: Vec::new(), f1_rank: BTreeMap::new(), domain: None };
        for (x, pre) in [(self, left), (other, right)] {
            out.cells.extend(x.cells.iter().map(|c| Cell { id: format!("{pre}{}", c.id), ..c.clone() }));
            out.incidences.extend(x.incidences.iter().map(|i| Incidence {
                big: format!("{pre}{}", i.big),
                small: format!("{pre}{}", i.small),
                ..i.clone()
            }));
            out.f1_rank.extend(x.f1_rank.iter().map(|(k, v)| (format!("{pre}{k}"), *v)));
        }
        out
    }
}

/// Nonzero diagonal entries of the Smith normal form, each dividing the next.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = m.entries.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t..rows, t..cols) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..rows {
                        let d = &q * &a[i][t];
                        a[i][j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // a remainder is smaller than the pivot: make it the pivot
                let (pi, pj) = smallest_nonzero(&a, t..rows, t..cols).expect("pivot is nonzero");
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let x = a[i][j].clone();
                        a[t][j] += x;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn smallest_nonzero(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

impl ChainComplex {
    /// `ker D_q / im D_{q+1}`.
    pub fn homology(&self, q: usize) -> Result<HomologyGroup, HomologyError> {
        let n = self.ranks.get(q).copied().unwrap_or(0);
        let rank_out = self.boundaries.get(q).map_or(0, |d| invariant_factors(d).len());
        let incoming = self.boundaries.get(q + 1).map(invariant_factors).unwrap_or_default();
        let mut torsion = Vec::new();
        for f in incoming.iter().filter(|f| !f.is_one()) {
            torsion.push(f.to_u64().ok_or_else(|| HomologyError::Overflow(f.clone()))?);
        }
        Ok(HomologyGroup { free_rank: n - rank_out - incoming.len(), torsion })
    }
}

/// `ℤ^free_rank ⊕ ⊕ ℤ/t` with the `t` dividing successively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn free(r: usize) -> HomologyGroup {
        HomologyGroup { free_rank: r, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        // recombine torsion into invariant factors via the diagonal matrix
        let all: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        let mut m = IntMatrix::zero(all.len(), all.len());
        for (i, &t) in all.iter().enumerate() {
            m.entries[i][i] = t as i64;
        }
        let torsion = invariant_factors(&m).into_iter().filter(|f| !f.is_one()).map(|f| f.to_u64().expect("small")).collect();
        HomologyGroup { free_rank: self.free_rank + other.free_rank, torsion }
    }

    /// Plain-text form such as `Z2+Z^2`.
    pub fn ascii(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

fn digits(n: u64, table: &[char; 10]) -> String {
    n.to_string().chars().map(|c| table[c.to_digit(10).unwrap() as usize]).collect()
}

const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|&t| format!("ℤ{}", digits(t, &SUB))).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("ℤ".into()),
            r => parts.push(format!("ℤ{}", digits(r as u64, &SUP))),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// All `H_{p,q}`, indexed `groups[p][q]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diamond {
    pub dim: usize,
    pub groups: Vec<Vec<HomologyGroup>>,
}

impl Diamond {
    pub fn get(&self, p: usize, q: usize) -> &HomologyGroup {
        &self.groups[p][q]
    }
}

impl fmt::Display for Diamond {
    /// Row `n` holds the `H_{p,q}` with `p + q = n`, `p` increasing to the
    /// right; the top row is `n = 2 dim`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim;
        let cells: Vec<Vec<String>> = self.groups.iter().map(|r| r.iter().map(|g| g.to_string()).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1) + 2;
        for n in (0..=2 * d).rev() {
            let mut slots = vec![String::new(); 2 * d + 1];
            for p in n.saturating_sub(d)..=n.min(d) {
                slots[d + 2 * p - n] = cells[p][n - p].clone();
            }
            let line: String = slots
                .iter()
                .map(|s| {
                    let pad = width - s.chars().count();
                    format!("{}{}{}", " ".repeat(pad / 2), s, " ".repeat(pad - pad / 2))
                })
                .collect();
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

pub type Point = [Ratio<i64>; 2];

fn show(p: &Point) -> String {
    format!("({}, {})", p[0], p[1])
}

fn det_q(a: Point, b: Point) -> Ratio<i64> {
    a[0] * b[1] - a[1] * b[0]
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn on_frame(p: &Point) -> bool {
    p.iter().any(|c| c.abs() == Ratio::one())
}

impl SquareDomain {
    /// Representative of `p` with both coordinates in `[-1, 1)`, and the
    /// linear part of the gluing that carries vectors at `p` there.
    pub fn canonical(&self, p: Point) -> (Point, [[i64; 2]; 2]) {
        let one = Ratio::one();
        let (mut p, mut m) = (p, [[1, 0], [0, 1]]);
        for _ in 0..4 {
            if p[0] == one {
                let g = match self.glue_x {
                    Glue::Same => [[1, 0], [0, 1]],
                    Glue::Flip => [[1, 0], [0, -1]],
                };
                p = [-one, p[1] * g[1][1]];
                m = mat_mul(g, m);
            } else if p[1] == one {
                let g = match self.glue_y {
                    Glue::Same => [[1, 0], [0, 1]],
                    Glue::Flip => [[-1, 0], [0, 1]],
                };
                p = [p[0] * g[0][0], -one];
                m = mat_mul(g, m);
            } else {
                break;
            }
        }
        (p, m)
    }
}

fn mat_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn apply(m: [[i64; 2]; 2], v: [i64; 2]) -> [i64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// A straight `(1,1)`-cell: the oriented segment `from -> to` in the chart
/// with coefficient `β ∈ ℤ²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(with = "crate::ratio_str::pair")]
    pub from: Point,
    #[serde(with = "crate::ratio_str::pair")]
    pub to: Point,
    pub coefficient: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct OneOneCycle {
    pub segments: Vec<Segment>,
}

impl OneOneCycle {
    pub fn check_chart(&self) -> Result<(), HomologyError> {
        for s in &self.segments {
            for p in [&s.from, &s.to] {
                if p.iter().any(|c| c.abs() > Ratio::one()) {
                    return Err(HomologyError::OutsideChart(show(p)));
                }
            }
            if s.from == s.to {
                return Err(HomologyError::DegenerateSegment(show(&s.from)));
            }
        }
        Ok(())
    }

    /// `∂ = Σ β (to - from)` as a 0-chain. With a domain, points on glued
    /// sides are identified and their coefficients carried along; without
    /// one the chart is the open square and points on its frame are dropped.
    pub fn boundary(&self, domain: Option<&SquareDomain>) -> BTreeMap<Point, [i64; 2]> {
        let mut out: BTreeMap<Point, [i64; 2]> = BTreeMap::new();
        for s in &self.segments {
            for (p, sign) in [(s.to, 1), (s.from, -1)] {
                let (p, m) = match domain {
                    Some(d) => d.canonical(p),
                    None if on_frame(&p) => continue,
                    None => (p, [[1, 0], [0, 1]]),
                };
                let b = apply(m, s.coefficient);
                let e = out.entry(p).or_insert([0, 0]);
                e[0] += sign * b[0];
                e[1] += sign * b[1];
            }
        }
        out.retain(|_, v| *v != [0, 0]);
        out
    }

    pub fn is_closed(&self, domain: Option<&SquareDomain>) -> bool {
        self.boundary(domain).is_empty()
    }

    pub fn require_closed(&self, domain: Option<&SquareDomain>) -> Result<(), HomologyError> {
        self.check_chart()?;
        let b = self.boundary(domain);
        if b.is_empty() {
            Ok(())
        } else {
            Err(HomologyError::NotClosed(describe(&b)))
        }
    }

    pub fn scale(&self, k: i64) -> OneOneCycle {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment { coefficient: [k * s.coefficient[0], k * s.coefficient[1]], ..s.clone() })
            .collect();
        OneOneCycle { segments }
    }
}

fn describe(b: &BTreeMap<Point, [i64; 2]>) -> String {
    let parts: Vec<String> = b.iter().map(|(p, v)| format!("{v:?} at {}", show(p))).collect();
    parts.join(", ")
}

/// `γ₁ · γ₂ = Σ_x sign(det(t₁, t₂)) det(β₁, β₂)` over the crossings `x`,
/// with `t_i` the directions of the segments through `x`.
pub fn intersection_pairing(g1: &OneOneCycle, g2: &OneOneCycle) -> Result<i64, HomologyError> {
    g1.check_chart()?;
    g2.check_chart()?;
    let zero = Ratio::zero();
    let one = Ratio::one();
    let mut total = 0;
    for a in &g1.segments {
        for b in &g2.segments {
            let (t1, t2) = (sub(a.to, a.from), sub(b.to, b.from));
            let w = sub(b.from, a.from);
            let d = det_q(t1, t2);
            if d.is_zero() {
                if det_q(t1, w).is_zero() && collinear_overlap(a, b, t1) {
                    return Err(HomologyError::NonTransversal(format!(
                        "segments from {} and {} overlap",
                        show(&a.from),
                        show(&b.from)
                    )));
                }
                continue;
            }
            // a.from + s t1 = b.from + u t2
            let s = det_q(w, t2) / d;
            let u = det_q(w, t1) / d;
            if s < zero || s > one || u < zero || u > one {
                continue;
            }
            let x = [a.from[0] + s * t1[0], a.from[1] + s * t1[1]];
            if s == zero || s == one || u == zero || u == one || on_frame(&x) {
                return Err(HomologyError::NonTransversal(format!("cycles meet at a segment end {}", show(&x))));
            }
            let beta = a.coefficient[0] * b.coefficient[1] - a.coefficient[1] * b.coefficient[0];
            total += if d.is_positive() { beta } else { -beta };
        }
    }
    Ok(total)
}

fn collinear_overlap(a: &Segment, b: &Segment, t: Point) -> bool {
    // project onto t and compare parameter ranges
    let dot = |p: Point| p[0] * t[0] + p[1] * t[1];
    let (a0, a1) = (dot(a.from), dot(a.to));
    let (b0, b1) = (dot(b.from), dot(b.to));
    let (alo, ahi) = (a0.min(a1), a0.max(a1));
    let (blo, bhi) = (b0.min(b1), b0.max(b1));
    alo <= bhi && blo <= ahi
}

/// An edge of a tropical curve drawn in the chart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedEdge {
    #[serde(with = "crate::ratio_str::pair")]
    pub from: Point,
    #[serde(with = "crate::ratio_str::pair")]
    pub to: Point,
    pub weight: i64,
}

fn primitive_direction(v: Point) -> [i64; 2] {
    let l = v[0].denom().lcm(v[1].denom());
    let x = [(v[0] * l).to_integer(), (v[1] * l).to_integer()];
    let g = x[0].gcd(&x[1]);
    [x[0] / g, x[1] / g]
}

/// Each edge becomes a segment with coefficient `weight` times its primitive
/// direction; balancing of the curve is exactly closedness of the result.
pub fn cycle_map(edges: &[WeightedEdge], domain: Option<&SquareDomain>) -> Result<OneOneCycle, HomologyError> {
    let mut segments = Vec::new();
    for e in edges.iter().filter(|e| e.weight != 0) {
        if e.from == e.to {
            return Err(HomologyError::DegenerateSegment(show(&e.from)));
        }
        let u = primitive_direction(sub(e.to, e.from));
        segments.push(Segment { from: e.from, to: e.to, coefficient: [e.weight * u[0], e.weight * u[1]] });
    }
    let c = OneOneCycle { segments };
    c.check_chart()?;
    let b = c.boundary(domain);
    if !b.is_empty() {
        return Err(HomologyError::Unbalanced(describe(&b)));
    }
    Ok(c)
}

/// A cycle together with a transverse copy of it, so that self-pairings
/// can be evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCycle {
    pub name: String,
    pub cycle: OneOneCycle,
    pub pushoff: OneOneCycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramReport {
    pub names: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub signature: i64,
}

/// Gram matrix `G_ij = γ_i · γ_j'` (with `γ_j'` the pushoff) and its
/// signature. Requires every cycle closed and `G` symmetric.
pub fn signature_1_1(basis: &[NamedCycle], domain: Option<&SquareDomain>) -> Result<GramReport, HomologyError> {
    for c in basis {
        c.cycle.require_closed(domain)?;
        c.pushoff.require_closed(domain)?;
    }
    let n = basis.len();
    let mut gram = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = intersection_pairing(&basis[i].cycle, &basis[j].pushoff)?;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if gram[i][j] != gram[j][i] {
                return Err(HomologyError::AsymmetricGram(i, j));
            }
        }
    }
    let signature = symmetric_signature(&gram);
    Ok(GramReport { names: basis.iter().map(|c| c.name.clone()).collect(), gram, signature })
}

/// Signature of a symmetric integer matrix by congruence diagonalization.
pub fn symmetric_signature(m: &[Vec<i64>]) -> i64 {
    type Q = Ratio<i128>;
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect();
    let mut sig = 0;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row_k += row_j, col_k += col_j gives a_kk = 2 a_kj
                for c in 0..n {
                    let x = a[j][c];
                    a[k][c] += x;
                }
                for r in 0..n {
                    let x = a[r][j];
                    a[r][k] += x;
                }
            } else {
                continue;
            }
        }
        let piv = a[k][k];
        sig += if piv.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            let f = a[i][k] / piv;
            if f.is_zero() {
                continue;
            }
            for c in 0..n {
                let x = f * a[k][c];
                a[i][c] -= x;
            }
            for r in 0..n {
                let x = f * a[r][k];
                a[r][i] -= x;
            }
        }
    }
    sig
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix { rows: rows.len(), cols: rows.first().map_or(0, Vec::len), entries: rows }
    }

    fn factors(rows: Vec<Vec<i64>>) -> Vec<i64> {
        invariant_factors(&m(rows)).iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn smith() {
        assert_eq!(factors(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(factors(vec![vec![1, 1, 1], vec![-1, -1, 1]]), vec![1, 2]);
        assert_eq!(factors(vec![vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(factors(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
    }

    #[test]
    fn exterior_powers() {
        let a = m(vec![vec![1, 0], vec![0, -1]]);
        assert_eq!(exterior_power(&a, 2).entries, vec![vec![-1]]);
        assert_eq!(exterior_power(&a, 0).entries, vec![vec![1]]);
        let b = m(vec![vec![1, 2, 0], vec![0, 1, 1], vec![3, 0, 1]]);
        assert_eq!(exterior_power(&b, 3).entries, vec![vec![7]]);
        assert_eq!(exterior_power(&b, 2).rows, 3);
    }

    #[test]
    fn group_display() {
        let g = HomologyGroup { free_rank: 2, torsion: vec![2] };
        assert_eq!(g.to_string(), "ℤ₂ ⊕ ℤ²");
        assert_eq!(g.ascii(), "Z2+Z^2");
        assert_eq!(HomologyGroup::default().to_string(), "0");
        let s = HomologyGroup { free_rank: 0, torsion: vec![2] }.direct_sum(&HomologyGroup { free_rank: 1, torsion: vec![3] });
        assert_eq!(s, HomologyGroup { free_rank: 1, torsion: vec![6] });
    }

    #[test]
    fn signatures() {
        assert_eq!(symmetric_signature(&[vec![0, 1], vec![1, 0]]), 0);
        assert_eq!(symmetric_signature(&[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(symmetric_signature(&[vec![1, 2], vec![2, 1]]), 0);
        assert_eq!(symmetric_signature(&[vec![-1, 0, 0], vec![0, 0, 0], vec![0, 0, -3]]), -2);
        assert_eq!(symmetric_signature(&[]), 0);
    }

    #[test]
    fn gluing() {
        let d = SquareDomain { glue_x: Glue::Flip, glue_y: Glue::Same };
        let r = |a: i64, b: i64| Ratio::new(a, b);
        let (p, g) = d.canonical([r(1, 1), r(1, 4)]);
        assert_eq!(p, [r(-1, 1), r(-1, 4)]);
        assert_eq!(g, [[1, 0], [0, -1]]);
        let (p, _) = d.canonical([r(1, 1), r(1, 1)]);
        assert_eq!(p, [r(-1, 1), r(-1, 1)]);
    }
}
