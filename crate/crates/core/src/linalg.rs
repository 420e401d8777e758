//! Small exact integer and rational linear algebra.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i128>;

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides by the gcd of the entries; returns the primitive vector and the gcd.
pub fn primitive(v: &[i64]) -> (Vec<i64>, i64) {
    let g = gcd_all(v);
    if g == 0 {
        return (v.to_vec(), 0);
    }
    (v.iter().map(|x| x / g).collect(), g)
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

pub fn neg(a: &[i64]) -> Vec<i64> {
    scale(a, -1)
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

pub fn det2(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Determinant of a square matrix given by rows (fraction-free elimination).
pub fn det(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    (sign * m[n - 1][n - 1]) as i64
}

/// Solves `Σ x_k cols[k] = v` when the columns are linearly independent.
/// Returns `None` when `v` is outside their span or the columns are dependent.
pub fn solve_in_span(cols: &[Vec<i64>], v: &[i64]) -> Option<Vec<Q>> {
    let rows = v.len();
    let k = cols.len();
    let mut m: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = cols.iter().map(|c| Q::from_integer(c[r] as i128)).collect();
            row.push(Q::from_integer(v[r] as i128));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..k {
        let p = (pivot_row..rows).find(|&r| !m[r][c].is_zero())?;
        m.swap(pivot_row, p);
        let inv = Q::one() / m[pivot_row][c];
        for x in m[pivot_row].iter_mut() {
            *x *= inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][c].is_zero() {
                let f = m[r][c];
                for j in 0..=k {
                    let d = f * m[pivot_row][j];
                    m[r][j] -= d;
                }
            }
        }
        pivot_row += 1;
    }
    if m[pivot_row..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|c| m[c][k]).collect())
}

/// Integer coordinates of `v` in the given basis, `None` if not integral.
pub fn integer_coords(cols: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    solve_in_span(cols, v)?
        .into_iter()
        .map(|q| q.is_integer().then(|| *q.numer() as i64))
        .collect()
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = m[i][c] / m[r][c];
                for j in c..cols {
                    let d = f * m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// `v = a x + b y` with `a, b >= 0`, for independent or parallel `x`, `y`.
pub fn in_cone2(x: &[i64], y: &[i64], v: &[i64]) -> bool {
    match solve_in_span(&[x.to_vec(), y.to_vec()], v) {
        Some(c) => c.iter().all(|q| !q.is_negative()),
        None => on_ray(x, v) || on_ray(y, v),
    }
}

/// `v` is a nonnegative multiple of `x`.
pub fn on_ray(x: &[i64], v: &[i64]) -> bool {
    match solve_in_span(&[x.to_vec()], v) {
        Some(c) => !c[0].is_negative(),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        assert_eq!(det(&[vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(det(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), -1);
        assert_eq!(det(&[vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(det(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]), 6);
    }

    #[test]
    fn spans_and_cones() {
        let x = vec![1, 0, 0];
        let y = vec![0, 1, 0];
        let c = solve_in_span(&[x.clone(), y.clone()], &[2, 3, 0]).unwrap();
        assert_eq!(c, vec![Q::from_integer(2), Q::from_integer(3)]);
        assert!(solve_in_span(&[x.clone(), y.clone()], &[0, 0, 1]).is_none());
        assert!(in_cone2(&x, &y, &[1, 1, 0]));
        assert!(!in_cone2(&x, &y, &[1, -1, 0]));
        assert_eq!(primitive(&[4, -6, 0]), (vec![2, -3, 0], 2));
        assert_eq!(rank(&[vec![1, 2], vec![2, 4], vec![0, 1]]), 2);
    }
}
