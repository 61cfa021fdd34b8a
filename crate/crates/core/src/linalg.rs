//! Small dense linear algebra over exact rationals.

use num_traits::{One, Zero};

use crate::exact::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the right null space `{ x : m x = 0 }` for a matrix with `cols` columns.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Rational>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -work[r][f].clone();
            }
            v
        })
        .collect()
}

/// Affine solution set of `m x = rhs` as `(particular, null space basis)`, or
/// `None` when inconsistent.
pub fn solve_affine(m: &Matrix, rhs: &[Rational], cols: usize) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut aug: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some((x, nullspace(m, cols)))
}

pub fn determinant(m: &Matrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let delta = &f * &a[c][j];
                    a[i][j] -= delta;
                }
            }
        }
    }
    det
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Affine dimension of a point set (`-1` for the empty set is reported as `None`).
pub fn affine_dimension(points: &[Vec<Rational>]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Matrix = rest.iter().map(|p| sub(p, first)).collect();
    Some(rank(&diffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    #[test]
    fn determinant_and_rank() {
        assert_eq!(determinant(&m(&[&[1, 2], &[3, 4]])), rat(-2, 1));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), rat(-1, 1));
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn nullspace_of_row() {
        let ns = nullspace(&m(&[&[1, 2]]), 2);
        assert_eq!(ns, vec![vec![rat(-2, 1), rat(1, 1)]]);
    }

    #[test]
    fn affine_solve() {
        let (x, ns) = solve_affine(&m(&[&[1, 1]]), &[rat(3, 1)], 2).unwrap();
        assert_eq!(dot(&x, &[rat(1, 1), rat(1, 1)]), rat(3, 1));
        assert_eq!(ns.len(), 1);
        assert!(solve_affine(&m(&[&[1, 1], &[1, 1]]), &[rat(1, 1), rat(2, 1)], 2).is_none());
    }
}
