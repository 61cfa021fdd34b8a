//! Brute-force lattice-point enumerators for `tP + v`.
//!
//! Every quasi-polynomial in the crate is fitted from these counts, so they are
//! kept deliberately simple: integer thresholds per facet, a bounding box over
//! the first `d − 1` coordinates, and an exact integer range for the last one.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot_int_rat, rational_ceil, rational_floor, Integer, Rational};
use crate::polytope::{Facet, Polytope};

/// Which directional boundary `∂_i^∓ P` to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundarySide {
    /// `∂_i^− P`: facets whose inner normal has positive `i`-th coordinate.
    Lower,
    /// `∂_i^+ P`: facets whose inner normal has negative `i`-th coordinate.
    Upper,
}

#[derive(Debug, Clone)]
struct Row {
    normal: Vec<i128>,
    /// Integer lower bound on `(normal, x)` for integer `x`.
    bound: i128,
}

fn to_i128(x: &Integer) -> i128 {
    x.to_i128().expect("value exceeds desk-scale range")
}

/// `t·b + (a, v)` for each facet.
fn shifted_offsets(p: &Polytope, v: &[Rational], t: u64) -> Vec<Rational> {
    let t = Rational::from_integer(Integer::from(t));
    p.halfspaces()
        .iter()
        .map(|h| &t * Rational::from_integer(h.offset.clone()) + dot_int_rat(&h.normal, v))
        .collect()
}

fn check_dims(p: &Polytope, v: &[Rational]) -> Result<()> {
    if v.len() != p.dimension() {
        return Err(Error::DimensionMismatch { expected: p.dimension(), found: v.len() });
    }
    Ok(())
}

fn rows(p: &Polytope, rhs: &[Rational], strict: bool) -> Vec<Row> {
    p.halfspaces()
        .iter()
        .zip(rhs)
        .map(|(h, r)| {
            let bound = if strict { rational_floor(r) + 1 } else { rational_ceil(r) };
            Row { normal: h.normal.iter().map(to_i128).collect(), bound: to_i128(&bound) }
        })
        .collect()
}

/// Integer bounding box of `tP + v`.
fn bounding_box(p: &Polytope, v: &[Rational], t: u64) -> Vec<(i128, i128)> {
    let t = Rational::from_integer(Integer::from(t));
    (0..p.dimension())
        .map(|j| {
            let coords = p.vertices().iter().map(|vert| &t * &vert[j] + &v[j]);
            let (mut lo, mut hi) = (None::<Rational>, None::<Rational>);
            for c in coords {
                lo = Some(match lo {
                    Some(l) if l <= c => l,
                    _ => c.clone(),
                });
                hi = Some(match hi {
                    Some(h) if h >= c => h,
                    _ => c,
                });
            }
            (to_i128(&rational_ceil(&lo.unwrap())), to_i128(&rational_floor(&hi.unwrap())))
        })
        .collect()
}

fn div_ceil(a: i128, b: i128) -> i128 {
    let q = a.div_euclid(b);
    if b > 0 {
        if q * b == a { q } else { q + 1 }
    } else {
        // b < 0: ceil(a / b) = −floor(a / −b)
        -((a).div_euclid(-b))
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    -div_ceil(-a, b)
}

/// Calls `visit(prefix, lo, hi)` for every feasible prefix of the first `d − 1`
/// coordinates, where `[lo, hi]` is the nonempty range of the last coordinate.
fn for_each_fiber(rows: &[Row], bbox: &[(i128, i128)], visit: &mut dyn FnMut(&[i128], i128, i128)) {
    let d = bbox.len();
    let mut prefix = vec![0i128; d - 1];
    fn rec(
        level: usize,
        rows: &[Row],
        bbox: &[(i128, i128)],
        prefix: &mut Vec<i128>,
        visit: &mut dyn FnMut(&[i128], i128, i128),
    ) {
        let d = bbox.len();
        if level == d - 1 {
            let (mut lo, mut hi) = bbox[d - 1];
            for r in rows {
                let partial: i128 = r.normal[..d - 1].iter().zip(prefix.iter()).map(|(a, x)| a * x).sum();
                let need = r.bound - partial;
                let a = r.normal[d - 1];
                if a > 0 {
                    lo = lo.max(div_ceil(need, a));
                } else if a < 0 {
                    hi = hi.min(div_floor(need, a));
                } else if need > 0 {
                    return;
                }
                if lo > hi {
                    return;
                }
            }
            visit(prefix, lo, hi);
            return;
        }
        let (lo, hi) = bbox[level];
        for x in lo..=hi {
            prefix[level] = x;
            rec(level + 1, rows, bbox, prefix, visit);
        }
    }
    rec(0, rows, bbox, &mut prefix, visit);
}

fn count_rows(rows: &[Row], bbox: &[(i128, i128)]) -> u64 {
    let mut total: u64 = 0;
    for_each_fiber(rows, bbox, &mut |_, lo, hi| total += (hi - lo + 1) as u64);
    total
}

/// `TL_{P,v}(t) = #((tP + v) ∩ Z^d)`.
pub fn count(p: &Polytope, v: &[Rational], t: u64) -> Result<u64> {
    check_dims(p, v)?;
    let rhs = shifted_offsets(p, v, t);
    Ok(count_rows(&rows(p, &rhs, false), &bounding_box(p, v, t)))
}

/// `#(int(tP + v) ∩ Z^d)` for `t ≥ 1`.
pub fn count_interior(p: &Polytope, v: &[Rational], t: u64) -> Result<u64> {
    check_dims(p, v)?;
    if t == 0 {
        return Err(Error::ZeroDilation);
    }
    let rhs = shifted_offsets(p, v, t);
    Ok(count_rows(&rows(p, &rhs, true), &bounding_box(p, v, t)))
}

/// Lattice points of `t·∂_i^∓P + v`, i.e. points of `tP + v` on at least one
/// facet whose inner normal has `i`-th coordinate of the selected sign.
pub fn count_partial_boundary(p: &Polytope, v: &[Rational], t: u64, i: usize, side: BoundarySide) -> Result<u64> {
    check_dims(p, v)?;
    if i >= p.dimension() {
        return Err(Error::IndexOutOfRange { index: i, dimension: p.dimension() });
    }
    let rhs = shifted_offsets(p, v, t);
    // Selected facets whose hyperplane can carry lattice points at all.
    let selected: Vec<(Vec<i128>, i128)> = p
        .halfspaces()
        .iter()
        .zip(&rhs)
        .filter(|(h, r)| {
            let c = &h.normal[i];
            let on_side = match side {
                BoundarySide::Lower => c > &Integer::zero(),
                BoundarySide::Upper => c < &Integer::zero(),
            };
            on_side && r.is_integer()
        })
        .map(|(h, r)| (h.normal.iter().map(to_i128).collect(), to_i128(&r.to_integer())))
        .collect();
    if selected.is_empty() {
        return Ok(0);
    }
    let mut total = 0u64;
    let d = p.dimension();
    for_each_fiber(&rows(p, &rhs, false), &bounding_box(p, v, t), &mut |prefix, lo, hi| {
        for last in lo..=hi {
            let hit = selected.iter().any(|(a, level)| {
                let dot: i128 = a[..d - 1].iter().zip(prefix).map(|(x, y)| x * y).sum::<i128>() + a[d - 1] * last;
                dot == *level
            });
            if hit {
                total += 1;
            }
        }
    });
    Ok(total)
}

/// Lattice points of `tF + v` for a facet `F` of `p`.
pub fn count_facet(p: &Polytope, facet: &Facet, v: &[Rational], t: u64) -> Result<u64> {
    check_dims(p, v)?;
    let rhs = shifted_offsets(p, v, t);
    let level = &rhs[facet.index];
    if !level.is_integer() {
        return Ok(0);
    }
    let mut rs = rows(p, &rhs, false);
    let h = &p.halfspaces()[facet.index];
    rs.push(Row { normal: h.normal.iter().map(|x| -to_i128(x)).collect(), bound: -to_i128(&level.to_integer()) });
    Ok(count_rows(&rs, &bounding_box(p, v, t)))
}
