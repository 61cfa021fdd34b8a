//! Named polytopes used throughout the examples and tests.

use crate::exact::{rat, rvec, RationalVector};
use crate::polytope::Polytope;

fn build(points: &[RationalVector]) -> Polytope {
    Polytope::from_vertices(points).expect("fixture polytope is full-dimensional")
}

/// conv{(0,0), (1,0), (2,1), (0,1)}.
pub fn trapezoid() -> Polytope {
    build(&[rvec(&[(0, 1), (0, 1)]), rvec(&[(1, 1), (0, 1)]), rvec(&[(2, 1), (1, 1)]), rvec(&[(0, 1), (1, 1)])])
}

/// conv{(±1, 0), (0, ±1/2)}.
pub fn rhombus() -> Polytope {
    rhombus_n(2)
}

/// conv{(±1, 0), (0, ±1/n)}.
pub fn rhombus_n(n: i64) -> Polytope {
    build(&[rvec(&[(1, 1), (0, 1)]), rvec(&[(-1, 1), (0, 1)]), rvec(&[(0, 1), (1, n)]), rvec(&[(0, 1), (-1, n)])])
}

/// conv{(0,0), (1,0), (1,3), (2,3)}.
pub fn parallelogram() -> Polytope {
    build(&[rvec(&[(0, 1), (0, 1)]), rvec(&[(1, 1), (0, 1)]), rvec(&[(1, 1), (3, 1)]), rvec(&[(2, 1), (3, 1)])])
}

pub fn unit_square() -> Polytope {
    build(&[rvec(&[(0, 1), (0, 1)]), rvec(&[(1, 1), (0, 1)]), rvec(&[(0, 1), (1, 1)]), rvec(&[(1, 1), (1, 1)])])
}

/// The segment `[0, 1]` in `R^1`.
pub fn unit_segment() -> Polytope {
    build(&[vec![rat(0, 1)], vec![rat(1, 1)]])
}

/// The translation vector `(17/100, 52/100)` used with the trapezoid.
pub fn trapezoid_shift() -> RationalVector {
    rvec(&[(17, 100), (52, 100)])
}
