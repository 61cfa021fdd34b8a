//! Exact rational and integer-lattice arithmetic.
//!
//! Rationals are `num_rational::BigRational`, always in lowest terms with a
//! positive denominator. Integer lattices are kept in row-style Hermite normal
//! form so that coset representatives are canonical.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = num_rational::BigRational;
pub type IntegerVector = Vec<Integer>;
pub type RationalVector = Vec<Rational>;

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

pub fn rat_int(n: impl Into<Integer>) -> Rational {
    Rational::from_integer(n.into())
}

/// Builds a rational vector from `(numerator, denominator)` pairs.
pub fn rvec(entries: &[(i64, i64)]) -> RationalVector {
    entries.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn ivec(entries: &[i64]) -> IntegerVector {
    entries.iter().copied().map(Integer::from).collect()
}

/// `min { a ∈ Z | a ≥ x }`.
pub fn rational_ceil(x: &Rational) -> Integer {
    x.ceil().to_integer()
}

/// `max { a ∈ Z | a ≤ x }`.
pub fn rational_floor(x: &Rational) -> Integer {
    x.floor().to_integer()
}

pub fn is_integral_vector(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let trimmed = s.trim();
    Rational::from_str(trimmed).map_err(|_| Error::Parse(format!("invalid rational `{trimmed}`")))
}

/// Parses a comma separated literal such as `17/100,52/100`.
pub fn parse_rational_vector(s: &str) -> Result<RationalVector> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

pub fn format_rational_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn gcd_of(v: &[Integer]) -> Integer {
    v.iter().fold(Integer::zero(), |g, x| g.gcd(x))
}

pub fn lcm_of<'a>(values: impl IntoIterator<Item = &'a Integer>) -> Integer {
    values.into_iter().fold(Integer::one(), |l, x| l.lcm(x))
}

/// Least common multiple of the denominators of a rational vector.
pub fn denominator_of(v: &[Rational]) -> Integer {
    lcm_of(v.iter().map(|x| x.denom()))
}

/// Divides a nonzero integer vector by the gcd of its entries, preserving direction.
pub fn primitive(v: &[Integer]) -> Result<IntegerVector> {
    let g = gcd_of(v);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Scales a nonzero rational vector to the unique primitive integer vector with
/// the same direction.
pub fn primitive_from_rational(v: &[Rational]) -> Result<IntegerVector> {
    let l = denominator_of(v);
    let scaled: IntegerVector = v
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    primitive(&scaled)
}

pub fn dot_int_rat(a: &[Integer], x: &[Rational]) -> Rational {
    a.iter()
        .zip(x)
        .fold(Rational::zero(), |acc, (ai, xi)| acc + xi * Rational::from_integer(ai.clone()))
}

pub fn dot_int(a: &[Integer], x: &[Integer]) -> Integer {
    a.iter().zip(x).fold(Integer::zero(), |acc, (ai, xi)| acc + ai * xi)
}

/// A sublattice of `Z^n` given by generator rows, together with its row-style
/// Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice {
    ambient: usize,
    generators: Vec<IntegerVector>,
    basis: Vec<IntegerVector>,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[IntegerVector] {
        &self.generators
    }

    /// HNF rows; row `r` has its leading positive entry at column `pivots()[r]`.
    pub fn basis(&self) -> &[IntegerVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Integer]) -> bool {
        match canonical_coset_rep(v, self) {
            Ok(r) => r.iter().all(Zero::is_zero),
            Err(_) => false,
        }
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows` in `Z^ambient`.
///
/// Pivots are positive and the entries above each pivot lie in `[0, pivot)`.
/// Zero and dependent rows disappear; an empty input gives the zero lattice.
pub fn hnf(rows: &[IntegerVector], ambient: usize) -> Result<IntegerLattice> {
    if let Some(bad) = rows.iter().find(|r| r.len() != ambient) {
        return Err(Error::DimensionMismatch { expected: ambient, found: bad.len() });
    }
    let mut work: Vec<IntegerVector> = rows.to_vec();
    let mut basis: Vec<IntegerVector> = Vec::new();
    let mut pivots = Vec::new();
    for col in 0..ambient {
        // Euclid on the column entries of the remaining rows.
        loop {
            let mut nonzero: Vec<usize> = (0..work.len()).filter(|&i| !work[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by(|&i, &j| work[i][col].abs().cmp(&work[j][col].abs()));
            let p = nonzero[0];
            let pivot_row = work[p].clone();
            for &i in &nonzero[1..] {
                let q = work[i][col].div_floor(&pivot_row[col]);
                for (x, y) in work[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(i) = work.iter().position(|r| !r[col].is_zero()) {
            let mut row = work.swap_remove(i);
            if row[col].is_negative() {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            basis.push(row);
            pivots.push(col);
        }
        work.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    // Reduce entries above each pivot into [0, pivot).
    for r in 0..basis.len() {
        let col = pivots[r];
        let pivot_row = basis[r].clone();
        for above in 0..r {
            let q = basis[above][col].div_floor(&pivot_row[col]);
            if !q.is_zero() {
                for (x, y) in basis[above].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
    }
    Ok(IntegerLattice { ambient, generators: rows.to_vec(), basis, pivots })
}

/// The unique representative of `c + L` whose pivot coordinates lie in
/// `[0, pivot)`, reduced in HNF pivot order.
pub fn canonical_coset_rep(c: &[Integer], lattice: &IntegerLattice) -> Result<IntegerVector> {
    if c.len() != lattice.ambient {
        return Err(Error::DimensionMismatch { expected: lattice.ambient, found: c.len() });
    }
    let mut out = c.to_vec();
    for (row, &col) in lattice.basis.iter().zip(&lattice.pivots) {
        let q = out[col].div_floor(&row[col]);
        if !q.is_zero() {
            for (x, y) in out.iter_mut().zip(row) {
                *x -= &q * y;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_examples() {
        assert_eq!(rational_ceil(&rat(17, 100)), int(1));
        assert_eq!(rational_ceil(&rat(-1, 2)), int(0));
        assert_eq!(rational_ceil(&rat(3, 1)), int(3));
        assert_eq!(rational_floor(&rat(-1, 2)), int(-1));
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&ivec(&[2, -4])).unwrap(), ivec(&[1, -2]));
        assert_eq!(primitive(&ivec(&[1, 0])).unwrap(), ivec(&[1, 0]));
        assert_eq!(primitive(&ivec(&[0, -3, 6])).unwrap(), ivec(&[0, -1, 2]));
        assert_eq!(primitive(&ivec(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn hnf_examples() {
        let l = hnf(&[ivec(&[2, 0]), ivec(&[0, 2])], 2).unwrap();
        assert_eq!(l.basis(), &[ivec(&[2, 0]), ivec(&[0, 2])]);

        let l = hnf(&[ivec(&[1, 2]), ivec(&[0, 0])], 2).unwrap();
        assert_eq!(l.basis(), &[ivec(&[1, 2])]);

        // Image of Z^2 under w ↦ ((1,0)·w, (0,1)·w, (0,-1)·w, (-1,1)·w).
        let l = hnf(&[ivec(&[1, 0, 0, -1]), ivec(&[0, 1, -1, 1])], 4).unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(l.pivots(), &[0, 1]);
        assert_eq!(l.basis(), &[ivec(&[1, 0, 0, -1]), ivec(&[0, 1, -1, 1])]);
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let l = hnf(&[ivec(&[3, 5]), ivec(&[0, 2]), ivec(&[6, 1])], 2).unwrap();
        for g in l.generators() {
            assert!(l.contains(g));
        }
        for (r, &p) in l.pivots().iter().enumerate() {
            assert!(l.basis()[r][p] > int(0));
            for above in 0..r {
                let e = &l.basis()[above][p];
                assert!(*e >= int(0) && *e < l.basis()[r][p]);
            }
        }
    }

    #[test]
    fn empty_lattice() {
        let l = hnf(&[], 3).unwrap();
        assert_eq!(l.rank(), 0);
        assert_eq!(canonical_coset_rep(&ivec(&[1, -2, 3]), &l).unwrap(), ivec(&[1, -2, 3]));
    }

    #[test]
    fn coset_examples() {
        let l = hnf(&[ivec(&[2, 0])], 2).unwrap();
        assert_eq!(canonical_coset_rep(&ivec(&[0, 0]), &l).unwrap(), ivec(&[0, 0]));
        assert_eq!(canonical_coset_rep(&ivec(&[5, 0]), &l).unwrap(), ivec(&[1, 0]));
        assert_eq!(canonical_coset_rep(&ivec(&[5, 0, 1]), &l), Err(Error::DimensionMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn serialization_is_lowest_terms() {
        assert_eq!(rat(6, -4).to_string(), "-3/2");
        assert_eq!(rat(4, 2).to_string(), "2");
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
