//! Generating functions of translated lattice-point counts.
//!
//! `Σ_t #((tP+v) ∩ Z^d) z^t = z^α Q(z) / (1 − z^q)^{d+1}` with `α = 0`; the
//! numerator `Q` is recovered by multiplying the truncated series by the
//! denominator.

use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::counting::{count, count_interior};
use crate::error::{Error, Result};
use crate::exact::{is_integral_vector, Integer, Rational};
use crate::polytope::Polytope;
use crate::theorems::CheckReport;

/// Rational-function data `z^alpha · Q(z) / (1 − z^period)^{dimension+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertSeriesData {
    pub dimension: usize,
    pub period: u64,
    pub alpha: i64,
    /// Coefficients of `Q`, ascending, without trailing zeros.
    #[serde(serialize_with = "serialize_integers")]
    pub numerator: Vec<Integer>,
}

fn serialize_integers<S: serde::Serializer>(v: &[Integer], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl HilbertSeriesData {
    /// Series coefficients for `t = 0..terms`.
    pub fn expand(&self, terms: usize) -> Vec<Integer> {
        let q = self.period as usize;
        let d = self.dimension;
        (0..terms)
            .map(|t| {
                let mut total = Integer::zero();
                for (m, c) in self.numerator.iter().enumerate().take(t + 1) {
                    let gap = t - m;
                    if gap % q == 0 {
                        total += c * binomial(Integer::from(gap / q + d), Integer::from(d));
                    }
                }
                total
            })
            .collect()
    }

    /// Bound `q(d+1)` on the degree of the numerator.
    pub fn degree_bound(&self) -> usize {
        self.period as usize * (self.dimension + 1)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.numerator.iter().all(|c| !c.is_negative())
    }
}

fn trim(mut v: Vec<Integer>) -> Vec<Integer> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Multiplies the series by `(1 − z^q)^{d+1}`, requiring every coefficient
/// above degree `q(d+1) − 1 + extra` to vanish.
fn numerator_from_counts(counts: &[Integer], q: u64, d: usize, extra: usize) -> Result<Vec<Integer>> {
    let q = q as usize;
    let bound = q * (d + 1) + extra;
    let mut out = vec![Integer::zero(); counts.len()];
    for j in 0..=d + 1 {
        let c = binomial(Integer::from(d + 1), Integer::from(j));
        let c = if j % 2 == 0 { c } else { -c };
        for m in q * j..counts.len() {
            out[m] += &c * &counts[m - q * j];
        }
    }
    if out[bound.min(out.len())..].iter().any(|x| !x.is_zero()) {
        return Err(Error::NonterminatingNumerator { bound });
    }
    out.truncate(bound);
    Ok(trim(out))
}

fn sample_count(p: &Polytope) -> usize {
    let q = p.period() as usize;
    q * (p.dimension() + 1) + 2 * q + 1
}

pub fn hilbert_numerator(p: &Polytope, v: &[Rational]) -> Result<HilbertSeriesData> {
    let counts: Vec<Integer> =
        (0..sample_count(p) as u64).map(|t| count(p, v, t).map(Integer::from)).collect::<Result<_>>()?;
    Ok(HilbertSeriesData {
        dimension: p.dimension(),
        period: p.period(),
        alpha: 0,
        numerator: numerator_from_counts(&counts, p.period(), p.dimension(), 0)?,
    })
}

/// Series of interior counts, with the `t = 0` term equal to 0. Its numerator
/// may reach degree `q(d+1)`.
pub fn interior_numerator(p: &Polytope, v: &[Rational]) -> Result<HilbertSeriesData> {
    let counts: Vec<Integer> = (0..sample_count(p) as u64)
        .map(|t| if t == 0 { Ok(Integer::zero()) } else { count_interior(p, v, t).map(Integer::from) })
        .collect::<Result<_>>()?;
    Ok(HilbertSeriesData {
        dimension: p.dimension(),
        period: p.period(),
        alpha: 0,
        numerator: numerator_from_counts(&counts, p.period(), p.dimension(), 1)?,
    })
}

/// The interior numerator at `v` against `z^{q(d+1)} Q_{−v}(1/z)`.
pub fn check_hilbert_reciprocity(p: &Polytope, v: &[Rational]) -> Result<CheckReport> {
    let neg: Vec<Rational> = v.iter().map(|x| -x).collect();
    let closed = hilbert_numerator(p, &neg)?;
    let interior = interior_numerator(p, v)?;
    let bound = closed.degree_bound();
    let mut report = CheckReport::new("Hilbert series reciprocity");
    for m in 0..=bound {
        let lhs = interior.numerator.get(m).cloned().unwrap_or_default();
        let rhs = closed.numerator.get(bound - m).cloned().unwrap_or_default();
        report.record(format!("coefficient of z^{m}"), lhs == rhs, format!("interior {lhs}, reversed {rhs}"));
    }
    Ok(report)
}

/// `(h_0, …, h_d)` for a lattice polytope.
pub fn h_vector(p: &Polytope, v: &[Rational]) -> Result<Vec<Integer>> {
    if !p.is_lattice() {
        return Err(Error::NotLatticePolytope { denominator: p.period() });
    }
    let mut h = hilbert_numerator(p, v)?.numerator;
    h.resize(p.dimension() + 1, Integer::zero());
    Ok(h)
}

/// `h_0 = [v ∈ Z^d]`, `Σ h_i = d!·vol(P)` and nonnegativity.
pub fn h_vector_constraints(p: &Polytope, v: &[Rational]) -> Result<CheckReport> {
    let h = h_vector(p, v)?;
    let d = p.dimension();
    let mut report = CheckReport::new("h-vector constraints");
    let h0 = if is_integral_vector(v) { Integer::one() } else { Integer::zero() };
    report.record("h_0", h[0] == h0, format!("h_0 = {}, expected {}", h[0], h0));
    let sum: Integer = h.iter().sum();
    let normalized = Rational::from_integer(factorial(d)) * p.volume();
    report.record(
        "sum",
        Rational::from_integer(sum.clone()) == normalized,
        format!("Σh = {sum}, d!·vol = {normalized}"),
    );
    report.record("nonnegativity", h.iter().all(|x| !x.is_negative()), format!("{h:?}"));
    Ok(report)
}

fn factorial(d: usize) -> Integer {
    (1..=d).fold(Integer::one(), |acc, k| acc * Integer::from(k))
}

/// All nonnegative `(h_0, …, h_d)` with `Σ h_i = d!·volume` and `h_0`
/// fixed by `v_integral` (`None` merges both cases).
pub fn enumerate_admissible_h(volume: &Rational, d: usize, v_integral: Option<bool>) -> Result<Vec<Vec<u64>>> {
    let normalized = Rational::from_integer(factorial(d)) * volume;
    if !normalized.is_integer() {
        return Err(Error::NonIntegralNormalizedVolume { value: normalized.to_string() });
    }
    let total = normalized.to_integer().to_u64().ok_or(Error::NonIntegralNormalizedVolume { value: normalized.to_string() })?;
    let heads: Vec<u64> = match v_integral {
        Some(true) => vec![1],
        Some(false) => vec![0],
        None => vec![1, 0],
    };
    let mut out = Vec::new();
    for h0 in heads {
        if h0 > total {
            continue;
        }
        let mut tails = Vec::new();
        compositions(total - h0, d, &mut Vec::new(), &mut tails);
        for t in tails {
            let mut h = vec![h0];
            h.extend(t);
            out.push(h);
        }
    }
    Ok(out)
}

/// Weak compositions of `n` into `parts` parts, lexicographically descending.
fn compositions(n: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if parts == 0 {
        if n == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if parts == 1 {
        prefix.push(n);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=n).rev() {
        prefix.push(first);
        compositions(n - first, parts - 1, prefix, out);
        prefix.pop();
    }
}
