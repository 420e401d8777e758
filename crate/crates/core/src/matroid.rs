//! Matroids given by their lattice of flats.
//!
//! For a rank-3 simple matroid the rank-1 flats are the *lines* of the
//! associated arrangement (one per element) and the rank-2 flats are its
//! *points*. A point of size 2 is an ordinary double point, larger points are
//! multiple points.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::poly::IntPolynomial;

/// Largest ground set for operations that enumerate all subsets.
pub const MAX_ENUMERATION: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("invalid uniform matroid parameters r={r}, n={n}")]
    InvalidUniform { r: usize, n: usize },
    #[error("ground set of {0} elements is too large")]
    TooLarge(usize),
    #[error("element {0} is outside the ground set")]
    OutOfRange(usize),
    #[error("flat axiom violated: {0}")]
    Axiom(String),
    #[error("elements {0} and {1} lie on two different points")]
    DuplicatePair(usize, usize),
    #[error("point {0} has fewer than two elements")]
    ShortPoint(ElementSet),
    #[error("expected a rank-3 matroid, got rank {0}")]
    NotRankThree(usize),
    #[error("matroid is not simple")]
    NotSimple,
    #[error("matroid has a loop")]
    NotLoopless,
    #[error("{0} is not a rank-2 flat")]
    NotAPoint(ElementSet),
    #[error("chosen points {0} and {1} share an element")]
    PointsOverlap(ElementSet, ElementSet),
    #[error("base element {0} is not in both ground sets")]
    LabelCollision(usize),
    #[error("characteristic polynomial is not divisible by t - 1")]
    NotDivisible,
}

/// A subset of `{0, ..., 31}` stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(pub u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            ElementSet(u32::MAX)
        } else {
            ElementSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        ElementSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn with(self, i: usize) -> Self {
        ElementSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        ElementSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image under an element map.
    pub fn map(self, f: &[usize]) -> Self {
        self.iter().map(|i| f[i]).collect()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = ElementSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&i| i >= 32) {
            return Err(serde::de::Error::custom(format!("element {bad} exceeds 31")));
        }
        Ok(v.into_iter().collect())
    }
}

/// A matroid on `{0, ..., n-1}` stored as its flats, grouped by rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matroid {
    n: usize,
    flats: Vec<Vec<ElementSet>>,
}

fn subsets_of_size(n: usize, k: usize) -> Vec<ElementSet> {
    (0u32..(1u32 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(ElementSet)
        .collect()
}

impl Matroid {
    /// Builds a matroid from flats listed by rank and checks the flat axioms.
    pub fn from_flats(n: usize, mut flats: Vec<Vec<ElementSet>>) -> Result<Self, MatroidError> {
        if n > 31 {
            return Err(MatroidError::TooLarge(n));
        }
        let ground = ElementSet::full(n);
        for level in &mut flats {
            level.sort();
            level.dedup();
        }
        let m = Matroid { n, flats };
        m.validate(ground)?;
        Ok(m)
    }

    fn validate(&self, ground: ElementSet) -> Result<(), MatroidError> {
        let ax = |s: String| Err(MatroidError::Axiom(s));
        let r = match self.flats.len() {
            0 => return ax("no flats".into()),
            l => l - 1,
        };
        if self.flats[0].len() != 1 {
            return ax("rank 0 must have exactly one flat".into());
        }
        if self.flats[r] != [ground] {
            return ax("the ground set must be the unique top flat".into());
        }
        let mut rank_of: HashMap<ElementSet, usize> = HashMap::new();
        for (k, level) in self.flats.iter().enumerate() {
            for &f in level {
                if !f.is_subset(ground) {
                    return ax(format!("flat {f} leaves the ground set"));
                }
                if rank_of.insert(f, k).is_some() {
                    return ax(format!("flat {f} listed at two ranks"));
                }
            }
        }
        let all: Vec<(ElementSet, usize)> = rank_of.iter().map(|(&f, &k)| (f, k)).collect();
        for &(a, ra) in &all {
            for &(b, rb) in &all {
                if !rank_of.contains_key(&a.intersection(b)) {
                    return ax(format!("{a} and {b} meet in a non-flat"));
                }
                if a != b && a.is_subset(b) && ra >= rb {
                    return ax(format!("{a} inside {b} without rank increase"));
                }
            }
        }
        for k in 0..r {
            for &f in &self.flats[k] {
                let mut seen = f;
                for &g in &self.flats[k + 1] {
                    if f.is_subset(g) {
                        let extra = g.difference(f);
                        if !seen.intersection(extra).is_empty() {
                            return ax(format!("flats covering {f} overlap"));
                        }
                        seen = seen.union(extra);
                    }
                }
                if seen != ground {
                    return ax(format!("flats covering {f} miss elements"));
                }
            }
            for &g in &self.flats[k + 1] {
                if !self.flats[k].iter().any(|f| f.is_subset(g)) {
                    return ax(format!("{g} covers no flat of rank {k}"));
                }
            }
        }
        Ok(())
    }

    /// Derives flats from a rank function by subset enumeration.
    pub fn from_rank_fn(n: usize, rank: impl Fn(ElementSet) -> usize) -> Result<Self, MatroidError> {
        if n > MAX_ENUMERATION {
            return Err(MatroidError::TooLarge(n));
        }
        let ranks: Vec<usize> = (0u32..(1u32 << n)).map(|m| rank(ElementSet(m))).collect();
        let top = ranks[(1usize << n) - 1];
        let mut flats = vec![Vec::new(); top + 1];
        for m in 0..(1usize << n) {
            let closed = (0..n).all(|e| m & (1 << e) != 0 || ranks[m | (1 << e)] > ranks[m]);
            if closed {
                if ranks[m] > top {
                    return Err(MatroidError::Axiom("rank function is not monotone".into()));
                }
                flats[ranks[m]].push(ElementSet(m as u32));
            }
        }
        Matroid::from_flats(n, flats)
    }

    pub fn uniform(r: usize, n: usize) -> Result<Self, MatroidError> {
        if r == 0 || r > n {
            return Err(MatroidError::InvalidUniform { r, n });
        }
        if n > MAX_ENUMERATION {
            return Err(MatroidError::TooLarge(n));
        }
        let mut flats: Vec<Vec<ElementSet>> = (0..r).map(|k| subsets_of_size(n, k)).collect();
        flats.push(vec![ElementSet::full(n)]);
        Matroid::from_flats(n, flats)
    }

    /// The rank-3 simple matroid whose points are `points` plus every pair
    /// of elements not already on a common point.
    pub fn from_lines(n: usize, points: &[ElementSet]) -> Result<Self, MatroidError> {
        if n > 31 {
            return Err(MatroidError::TooLarge(n));
        }
        if n < 3 {
            return Err(MatroidError::NotRankThree(n.min(2)));
        }
        let ground = ElementSet::full(n);
        let mut covered = vec![vec![false; n]; n];
        let mut rank2 = Vec::new();
        for &p in points {
            if p.len() < 2 {
                return Err(MatroidError::ShortPoint(p));
            }
            if let Some(e) = p.iter().find(|&e| e >= n) {
                return Err(MatroidError::OutOfRange(e));
            }
            if p == ground {
                return Err(MatroidError::NotRankThree(2));
            }
            let v = p.to_vec();
            for (a, &i) in v.iter().enumerate() {
                for &j in &v[a + 1..] {
                    if covered[i][j] {
                        return Err(MatroidError::DuplicatePair(i, j));
                    }
                    covered[i][j] = true;
                }
            }
            rank2.push(p);
        }
        for i in 0..n {
            for j in i + 1..n {
                if !covered[i][j] {
                    rank2.push(ElementSet::singleton(i).with(j));
                }
            }
        }
        let flats = vec![
            vec![ElementSet::EMPTY],
            (0..n).map(ElementSet::singleton).collect(),
            rank2,
            vec![ground],
        ];
        Matroid::from_flats(n, flats)
    }

    pub fn n_elements(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn flats(&self) -> &[Vec<ElementSet>] {
        &self.flats
    }

    pub fn flats_of_rank(&self, k: usize) -> &[ElementSet] {
        self.flats.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Rank-2 flats, the points of the arrangement when the rank is 3.
    pub fn points(&self) -> &[ElementSet] {
        self.flats_of_rank(2)
    }

    pub fn rank_of(&self, s: ElementSet) -> usize {
        self.flats
            .iter()
            .position(|level| level.iter().any(|&f| s.is_subset(f)))
            .unwrap_or(self.rank())
    }

    pub fn closure(&self, s: ElementSet) -> ElementSet {
        self.flats
            .iter()
            .flatten()
            .filter(|&&f| s.is_subset(f))
            .fold(self.ground(), |acc, &f| acc.intersection(f))
    }

    pub fn is_loopless(&self) -> bool {
        self.flats[0][0].is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.is_loopless()
            && self.flats.len() > 1
            && (0..self.n).all(|i| self.flats[1].contains(&ElementSet::singleton(i)))
    }

    /// Checks the preconditions shared by all rank-3 constructions.
    pub fn require_simple_rank3(&self) -> Result<(), MatroidError> {
        if self.rank() != 3 {
            return Err(MatroidError::NotRankThree(self.rank()));
        }
        if !self.is_simple() {
            return Err(MatroidError::NotSimple);
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        let n1 = self.n;
        let mask1 = self.ground();
        Matroid::from_rank_fn(n1 + other.n, |s| {
            self.rank_of(s.intersection(mask1)) + other.rank_of(ElementSet(s.0 >> n1))
        })
    }

    /// Parallel connection at `base`. Elements of `self` keep their labels;
    /// `base` of `other` is identified with `base` of `self` and the remaining
    /// elements of `other` are numbered `n1, n1 + 1, ...` in order.
    pub fn parallel_connection(&self, other: &Matroid, base: usize) -> Result<Matroid, MatroidError> {
        if base >= self.n || base >= other.n {
            return Err(MatroidError::LabelCollision(base));
        }
        if !self.is_loopless() || !other.is_loopless() {
            return Err(MatroidError::NotLoopless);
        }
        let n1 = self.n;
        let n = n1 + other.n - 1;
        // position in `other` of each new label >= n1
        let others: Vec<usize> = (0..other.n).filter(|&e| e != base).collect();
        let split = |s: ElementSet| {
            let s1 = s.intersection(self.ground());
            let mut s2 = ElementSet::EMPTY;
            if s.contains(base) {
                s2.insert(base);
            }
            for (k, &e) in others.iter().enumerate() {
                if s.contains(n1 + k) {
                    s2.insert(e);
                }
            }
            (s1, s2)
        };
        Matroid::from_rank_fn(n, |s| {
            let (s1, s2) = split(s);
            let plain = self.rank_of(s1) + other.rank_of(s2);
            let joined = self.rank_of(s1.with(base)) + other.rank_of(s2.with(base)) - 1;
            plain.min(joined)
        })
    }

    /// Deletes element `e`; larger labels shift down by one.
    pub fn delete(&self, e: usize) -> Result<Matroid, MatroidError> {
        if e >= self.n {
            return Err(MatroidError::OutOfRange(e));
        }
        Matroid::from_rank_fn(self.n - 1, |s| {
            let low = s.0 & ((1u32 << e) - 1);
            let high = (s.0 >> e) << (e + 1);
            self.rank_of(ElementSet(low | high))
        })
    }

    /// Single-element extension of a rank-3 simple matroid by a new line
    /// (element `n`) passing through the chosen points.
    pub fn extend_by_line(&self, through: &[ElementSet]) -> Result<Matroid, MatroidError> {
        self.require_simple_rank3()?;
        for (a, &p) in through.iter().enumerate() {
            if !self.points().contains(&p) {
                return Err(MatroidError::NotAPoint(p));
            }
            for &q in &through[..a] {
                if !p.intersection(q).is_empty() || p == q {
                    return Err(MatroidError::PointsOverlap(q, p));
                }
            }
        }
        let e = self.n;
        let points: Vec<ElementSet> = self
            .points()
            .iter()
            .map(|&p| if through.contains(&p) { p.with(e) } else { p })
            .collect();
        Matroid::from_lines(self.n + 1, &points)
    }

    /// Rank-2 flats of `self` containing element `e`.
    pub fn points_through(&self, e: usize) -> Vec<ElementSet> {
        self.points().iter().copied().filter(|p| p.contains(e)).collect()
    }

    fn mobius_from_bottom(&self) -> Vec<Vec<i64>> {
        let mut mu: Vec<Vec<i64>> = Vec::with_capacity(self.flats.len());
        for (k, level) in self.flats.iter().enumerate() {
            let row = level
                .iter()
                .map(|&f| {
                    if k == 0 {
                        return 1;
                    }
                    let below: i64 = (0..k)
                        .flat_map(|j| self.flats[j].iter().zip(&mu[j]))
                        .filter(|(g, _)| g.is_subset(f))
                        .map(|(_, &m)| m)
                        .sum();
                    -below
                })
                .collect();
            mu.push(row);
        }
        mu
    }

    /// χ_M(t) = Σ_F μ(∅, F) t^(r − rank F); zero when M has a loop.
    pub fn char_poly(&self) -> IntPolynomial {
        if !self.is_loopless() {
            return IntPolynomial::zero();
        }
        let r = self.rank();
        let mu = self.mobius_from_bottom();
        let mut coeffs = vec![0i64; r + 1];
        for (k, row) in mu.iter().enumerate() {
            coeffs[r - k] += row.iter().sum::<i64>();
        }
        IntPolynomial::new(coeffs)
    }

    /// χ_M(t) / (t − 1).
    pub fn reduced_char_poly(&self) -> Result<IntPolynomial, MatroidError> {
        if !self.is_loopless() {
            return Err(MatroidError::NotLoopless);
        }
        self.char_poly().div_linear(1).ok_or(MatroidError::NotDivisible)
    }

    /// χ̄_M(1), the second Chern multiplicity of a vertex modelled on M.
    pub fn c2_point_multiplicity(&self) -> Result<i64, MatroidError> {
        Ok(self.reduced_char_poly()?.eval(1))
    }

    /// Searches for a bijection of ground sets carrying flats to flats.
    /// The witness maps element `i` of `self` to `witness[i]` of `other`.
    pub fn isomorphism(&self, other: &Matroid) -> Option<Vec<usize>> {
        if self.n != other.n || self.flats.len() != other.flats.len() {
            return None;
        }
        let profile = |m: &Matroid| -> Vec<Vec<usize>> {
            m.flats
                .iter()
                .map(|l| {
                    let mut s: Vec<usize> = l.iter().map(|f| f.len()).collect();
                    s.sort();
                    s
                })
                .collect()
        };
        if profile(self) != profile(other) {
            return None;
        }
        let signature = |m: &Matroid, e: usize| -> Vec<(usize, usize)> {
            let mut s: Vec<(usize, usize)> = m
                .flats
                .iter()
                .enumerate()
                .flat_map(|(k, l)| l.iter().filter(|f| f.contains(e)).map(move |f| (k, f.len())))
                .collect();
            s.sort();
            s
        };
        let sig_a: Vec<_> = (0..self.n).map(|e| signature(self, e)).collect();
        let sig_b: Vec<_> = (0..other.n).map(|e| signature(other, e)).collect();
        let targets: Vec<HashSet<ElementSet>> =
            other.flats.iter().map(|l| l.iter().copied().collect()).collect();
        // flats of self grouped by their largest element, checked once it is placed
        let mut due: Vec<Vec<(usize, ElementSet)>> = vec![Vec::new(); self.n];
        for (k, level) in self.flats.iter().enumerate() {
            for &f in level {
                if let Some(m) = f.max_element() {
                    due[m].push((k, f));
                }
            }
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; other.n];
        fn search(
            e: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            sig_a: &[Vec<(usize, usize)>],
            sig_b: &[Vec<(usize, usize)>],
            due: &[Vec<(usize, ElementSet)>],
            targets: &[HashSet<ElementSet>],
        ) -> bool {
            if e == map.len() {
                return true;
            }
            for t in 0..used.len() {
                if used[t] || sig_a[e] != sig_b[t] {
                    continue;
                }
                map[e] = t;
                let ok = due[e].iter().all(|&(k, f)| targets[k].contains(&f.map(map)));
                if ok {
                    used[t] = true;
                    if search(e + 1, map, used, sig_a, sig_b, due, targets) {
                        return true;
                    }
                    used[t] = false;
                }
            }
            map[e] = usize::MAX;
            false
        }
        search(0, &mut map, &mut used, &sig_a, &sig_b, &due, &targets).then_some(map)
    }

    pub fn is_isomorphic(&self, other: &Matroid) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Applies an element permutation: element `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Matroid, MatroidError> {
        let flats = self
            .flats
            .iter()
            .map(|l| l.iter().map(|f| f.map(perm)).collect())
            .collect();
        Matroid::from_flats(self.n, flats)
    }

    /// Three lines and three points, each line on the two points not
    /// opposite it, with the points covering the ground set.
    pub fn has_saturated_triangle(&self) -> bool {
        if self.rank() != 3 {
            return false;
        }
        let pts = self.points();
        let ground = self.ground();
        for (a, &pi) in pts.iter().enumerate() {
            for (b, &pj) in pts.iter().enumerate().skip(a + 1) {
                for &pk in &pts[b + 1..] {
                    if pi.union(pj).union(pk) != ground {
                        continue;
                    }
                    // the three pairwise intersections are the three lines
                    let l = [pi.intersection(pj), pi.intersection(pk), pj.intersection(pk)];
                    if l.iter().all(|s| s.len() == 1) && l[0] != l[1] && l[0] != l[2] && l[1] != l[2] {
                        return true;
                    }
                }
            }
        }
        false
    }
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matroid on {} elements, rank {}", self.n, self.rank())?;
        for (k, level) in self.flats.iter().enumerate() {
            write!(f, "\n  rank {k}:")?;
            for s in level {
                write!(f, " {s}")?;
            }
        }
        Ok(())
    }
}

/// JSON form: either full flats by rank or, for rank-3 simple matroids,
/// the list of points of size at least two.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatroidSpec {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flats: Option<BTreeMap<String, Vec<ElementSet>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lines: Option<Vec<ElementSet>>,
}

impl MatroidSpec {
    pub fn build(&self) -> Result<Matroid, MatroidError> {
        match (&self.flats, &self.lines) {
            (Some(by_rank), None) => {
                let mut levels: Vec<(usize, Vec<ElementSet>)> = Vec::new();
                for (k, v) in by_rank {
                    let k: usize = k
                        .parse()
                        .map_err(|_| MatroidError::Axiom(format!("rank key {k:?} is not an integer")))?;
                    levels.push((k, v.clone()));
                }
                levels.sort_by_key(|(k, _)| *k);
                if levels.iter().enumerate().any(|(i, (k, _))| i != *k) {
                    return Err(MatroidError::Axiom("ranks must be 0..r without gaps".into()));
                }
                Matroid::from_flats(self.n, levels.into_iter().map(|(_, v)| v).collect())
            }
            (None, Some(lines)) => Matroid::from_lines(self.n, lines),
            _ => Err(MatroidError::Axiom("give exactly one of \"flats\" or \"lines\"".into())),
        }
    }

    pub fn from_matroid(m: &Matroid) -> Self {
        let flats = m
            .flats()
            .iter()
            .enumerate()
            .map(|(k, l)| (k.to_string(), l.clone()))
            .collect();
        MatroidSpec { n: m.n_elements(), flats: Some(flats), lines: None }
    }
}

/// All simple rank-3 matroids on `n` elements up to isomorphism, for
/// `3 <= n <= max_n`. Entry `k` of the result holds those on `k` elements.
///
/// Every such matroid on `n + 1` elements is a single-element extension of
/// one on `n` elements, except the near pencil, whose deletions have rank 2.
pub fn simple_rank3_library(max_n: usize) -> Vec<Vec<Matroid>> {
    let mut lib: Vec<Vec<Matroid>> = vec![Vec::new(); max_n + 1];
    if max_n < 3 {
        return lib;
    }
    lib[3].push(Matroid::uniform(3, 3).expect("U(3,3)"));
    for n in 3..max_n {
        let mut found: Vec<Matroid> = Vec::new();
        let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        let mut add = |m: Matroid, found: &mut Vec<Matroid>| {
            let mut key: Vec<usize> = m.points().iter().map(|p| p.len()).collect();
            key.sort();
            let bucket = buckets.entry(key).or_default();
            if bucket.iter().any(|&i| found[i].is_isomorphic(&m)) {
                return;
            }
            bucket.push(found.len());
            found.push(m);
        };
        for m in &lib[n] {
            for family in disjoint_point_families(m.points()) {
                let ext = m.extend_by_line(&family).expect("disjoint family");
                add(ext, &mut found);
            }
        }
        let pencil = Matroid::from_lines(n + 1, &[ElementSet::full(n)]).expect("near pencil");
        add(pencil, &mut found);
        lib[n + 1] = found;
    }
    lib
}

/// Every family of pairwise disjoint points, the empty family included.
pub fn disjoint_point_families(points: &[ElementSet]) -> Vec<Vec<ElementSet>> {
    fn go(points: &[ElementSet], start: usize, used: ElementSet, cur: &mut Vec<ElementSet>, out: &mut Vec<Vec<ElementSet>>) {
        out.push(cur.clone());
        for i in start..points.len() {
            if points[i].intersection(used).is_empty() {
                cur.push(points[i]);
                go(points, i + 1, used.union(points[i]), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(points, 0, ElementSet::EMPTY, &mut Vec::new(), &mut out);
    out
}

/// The braid arrangement, the matroid of the complete graph on four vertices.
pub fn braid() -> Matroid {
    let pts = [[0, 1, 3], [1, 2, 4], [0, 2, 5], [3, 4, 5]];
    let pts: Vec<ElementSet> = pts.iter().map(|p| p.iter().copied().collect()).collect();
    Matroid::from_lines(6, &pts).expect("braid arrangement")
}
