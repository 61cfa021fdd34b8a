//! Polynomials and quasi-polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};
use crate::linalg::{solve_affine, Matrix};

/// Polynomial in one variable, coefficients in ascending degree with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polynomial {
    coefficients: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Polynomial { coefficients }
    }

    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Polynomial::new(pairs.iter().map(|&(n, d)| crate::exact::rat(n, d)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coefficient(&self, i: usize) -> Rational {
        self.coefficients.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn eval_int(&self, t: i64) -> Rational {
        self.eval(&Rational::from_integer(Integer::from(t)))
    }

    /// `t ↦ p(a·t + b)`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> Self {
        let mut out = Polynomial::zero();
        let lin = Polynomial::new(vec![b.clone(), a.clone()]);
        for c in self.coefficients.iter().rev() {
            out = out.mul(&lin).add(&Polynomial::constant(c.clone()));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coefficients.len().max(other.coefficients.len());
        Polynomial::new((0..n).map(|i| self.coefficient(i) + other.coefficient(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Polynomial::new(self.coefficients.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    /// Exact interpolation through `(x_j, y_j)`; degree at most `points.len() − 1`.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        let n = points.len();
        let m: Matrix = points
            .iter()
            .map(|(x, _)| {
                let mut row = Vec::with_capacity(n);
                let mut p = Rational::one();
                for _ in 0..n {
                    row.push(p.clone());
                    p *= x;
                }
                row
            })
            .collect();
        let rhs: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        let (coeffs, _) = solve_affine(&m, &rhs, n).expect("distinct interpolation nodes");
        Polynomial::new(coeffs)
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &Rational, power: usize, first: bool) -> fmt::Result {
    let negative = c.is_negative();
    let abs = c.abs();
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    let unit = abs.is_one();
    if power == 0 || !unit {
        write!(f, "{}", abs)?;
    }
    match power {
        0 => Ok(()),
        1 => write!(f, "t"),
        _ => write!(f, "t^{}", power),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_coefficient(f, c, power, first)?;
            first = false;
        }
        Ok(())
    }
}

/// A function on `Z` that agrees with the polynomial `constituents[k mod q]`
/// on every residue class `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasiPolynomial {
    constituents: Vec<Polynomial>,
}

fn residue(k: i64, q: u64) -> usize {
    k.rem_euclid(q as i64) as usize
}

impl QuasiPolynomial {
    /// Panics when `constituents` is empty.
    pub fn new(constituents: Vec<Polynomial>) -> Self {
        assert!(!constituents.is_empty(), "a quasi-polynomial needs at least one constituent");
        QuasiPolynomial { constituents }
    }

    pub fn polynomial(p: Polynomial) -> Self {
        QuasiPolynomial::new(vec![p])
    }

    pub fn zero() -> Self {
        QuasiPolynomial::polynomial(Polynomial::zero())
    }

    pub fn period(&self) -> u64 {
        self.constituents.len() as u64
    }

    pub fn constituents(&self) -> &[Polynomial] {
        &self.constituents
    }

    /// Constituent for any integer residue, negative ones included.
    pub fn constituent(&self, k: i64) -> &Polynomial {
        &self.constituents[residue(k, self.period())]
    }

    pub fn eval(&self, t: i64) -> Rational {
        self.constituent(t).eval_int(t)
    }

    /// Largest degree among the constituents.
    pub fn degree(&self) -> Option<usize> {
        self.constituents.iter().filter_map(Polynomial::degree).max()
    }

    /// Fits samples `samples[t]` for `t = 0, 1, …` with period `q` and degree at most `d`.
    pub fn fit(samples: &[Rational], q: u64, d: usize) -> Result<Self> {
        let available = samples.len() as u64;
        QuasiPolynomial::fit_with(
            |t| {
                samples.get(t as usize).cloned().ok_or(Error::InsufficientSamples { needed: t, available })
            },
            q,
            d,
            0,
        )
    }

    /// Fits a sampler on `t ≥ first`. Each residue class uses `d + 1`
    /// interpolation nodes and two further validation nodes.
    pub fn fit_with(mut sample: impl FnMut(u64) -> Result<Rational>, q: u64, d: usize, first: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroScale);
        }
        let mut constituents = Vec::with_capacity(q as usize);
        for k in 0..q {
            let start = first + (k + q - first % q) % q;
            let nodes: Vec<u64> = (0..d as u64 + 3).map(|j| start + j * q).collect();
            let mut points = Vec::with_capacity(nodes.len());
            for &t in &nodes {
                points.push((Rational::from_integer(Integer::from(t)), sample(t)?));
            }
            let poly = Polynomial::interpolate(&points[..=d]);
            for (x, y) in &points[d + 1..] {
                if &poly.eval(x) != y {
                    return Err(Error::ValidationFailed { residue: k, t: x.to_integer().try_into().unwrap_or(0) });
                }
            }
            constituents.push(poly);
        }
        Ok(QuasiPolynomial::new(constituents))
    }

    /// Smallest divisor `p` of the period with `f_k = f_{k+p}` for all `k`.
    pub fn minimal_period(&self) -> u64 {
        let q = self.period();
        (1..=q)
            .filter(|p| q.is_multiple_of(*p))
            .find(|&p| (0..q as usize).all(|k| self.constituents[k] == self.constituents[k % p as usize]))
            .unwrap_or(q)
    }

    /// Same function expressed with its minimal period.
    pub fn minimize(&self) -> Self {
        let p = self.minimal_period() as usize;
        QuasiPolynomial::new(self.constituents[..p].to_vec())
    }

    /// Same function expressed with period `q`, which must be a multiple of the current one.
    pub fn with_period(&self, q: u64) -> Option<Self> {
        if q == 0 || !q.is_multiple_of(self.period()) {
            return None;
        }
        Some(QuasiPolynomial::new((0..q as i64).map(|k| self.constituent(k).clone()).collect()))
    }

    /// Equality as functions on `Z`, independent of the stored period.
    pub fn same_function(&self, other: &Self) -> bool {
        self.minimize() == other.minimize()
    }

    /// `f_k = f_{−k}` for every `k`.
    pub fn is_symmetric(&self) -> bool {
        (0..self.period() as i64).all(|k| self.constituent(k) == self.constituent(-k))
    }

    /// `f_k` depends only on `gcd(k, p)` where `p` is the minimal period.
    pub fn has_gcd_property(&self) -> bool {
        let f = self.minimize();
        let p = f.period();
        let mut by_gcd: BTreeMap<u64, &Polynomial> = BTreeMap::new();
        for k in 0..p {
            let g = k.gcd(&p);
            let c = &f.constituents[k as usize];
            match by_gcd.get(&g) {
                Some(prev) if *prev != c => return false,
                Some(_) => {}
                None => {
                    by_gcd.insert(g, c);
                }
            }
        }
        true
    }

    /// `g_k(t) = (−1)^d f_{−k}(−t)`.
    pub fn reciprocity_transform(&self, d: usize) -> Self {
        let sign = if d.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
        let q = self.period() as i64;
        QuasiPolynomial::new(
            (0..q)
                .map(|k| self.constituent(-k).compose_linear(&-Rational::one(), &Rational::zero()).scale(&sign))
                .collect(),
        )
    }

    /// `s ↦ f(q·s)`.
    pub fn rescale_argument(&self, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroScale);
        }
        let p = self.period();
        let new_period = p / p.gcd(&q);
        let factor = Rational::from_integer(Integer::from(q));
        Ok(QuasiPolynomial::new(
            (0..new_period)
                .map(|j| self.constituents[((q * j) % p) as usize].compose_linear(&factor, &Rational::zero()))
                .collect(),
        ))
    }

    pub fn add(&self, other: &Self) -> Self {
        let q = self.period().lcm(&other.period());
        QuasiPolynomial::new((0..q as i64).map(|k| self.constituent(k).add(other.constituent(k))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let q = self.period().lcm(&other.period());
        QuasiPolynomial::new((0..q as i64).map(|k| self.constituent(k).sub(other.constituent(k))).collect())
    }

    /// Residue classes grouped by constituent, in order of first appearance.
    pub fn classes(&self) -> Vec<(Vec<u64>, &Polynomial)> {
        let mut out: Vec<(Vec<u64>, &Polynomial)> = Vec::new();
        for (k, c) in self.constituents.iter().enumerate() {
            match out.iter_mut().find(|(_, p)| *p == c) {
                Some((ks, _)) => ks.push(k as u64),
                None => out.push((vec![k as u64], c)),
            }
        }
        out
    }
}

impl fmt::Display for QuasiPolynomial {
    /// One line per distinct constituent: `t ≡ a, b (mod q): polynomial`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.period();
        for (i, (ks, poly)) in self.classes().into_iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let list: Vec<String> = ks.iter().map(u64::to_string).collect();
            write!(f, "t ≡ {} (mod {}): {}", list.join(", "), q, poly)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn p(pairs: &[(i64, i64)]) -> Polynomial {
        Polynomial::from_pairs(pairs)
    }

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn polynomial_canonical_form() {
        assert_eq!(p(&[(1, 1), (0, 1), (0, 1)]).coefficients().len(), 1);
        assert!(p(&[(0, 1)]).is_zero());
        assert_eq!(p(&[(1, 1), (5, 2), (3, 2)]).to_string(), "3/2t^2 + 5/2t + 1");
        assert_eq!(p(&[(0, 1), (-1, 2), (1, 1)]).to_string(), "t^2 - 1/2t");
        assert_eq!(p(&[(-1, 1), (0, 1), (1, 1)]).to_string(), "t^2 - 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn compose_linear_substitutes() {
        let f = p(&[(1, 1), (1, 1), (1, 1)]);
        let g = f.compose_linear(&rat(2, 1), &rat(0, 1));
        assert_eq!(g, p(&[(1, 1), (2, 1), (4, 1)]));
    }

    #[test]
    fn fit_trapezoid_counts() {
        // 3/2 t^2 + 5/2 t + 1 evaluated at t = 0..
        let samples: Vec<Rational> = (0..5).map(|t| rat(3 * t * t + 5 * t + 2, 2)).collect();
        assert_eq!(samples[..4], ints(&[1, 5, 12, 22])[..]);
        let f = QuasiPolynomial::fit(&samples, 1, 2).unwrap();
        assert_eq!(f.constituents(), &[p(&[(1, 1), (5, 2), (3, 2)])]);
    }

    #[test]
    fn fit_constant() {
        let f = QuasiPolynomial::fit(&ints(&[1, 1, 1]), 1, 0).unwrap();
        assert_eq!(f.constituents(), &[p(&[(1, 1)])]);
    }

    #[test]
    fn fit_detects_wrong_period() {
        let samples: Vec<Rational> = (0..20).map(|t: i64| rat(t % 2, 1)).collect();
        assert!(matches!(QuasiPolynomial::fit(&samples, 1, 1), Err(Error::ValidationFailed { .. })));
        assert!(QuasiPolynomial::fit(&samples, 2, 1).is_ok());
        assert!(matches!(QuasiPolynomial::fit(&samples[..3], 2, 1), Err(Error::InsufficientSamples { .. })));
    }

    #[test]
    fn constituent_indexing() {
        let f = QuasiPolynomial::new(vec![p(&[(0, 1)]), p(&[(1, 1)]), p(&[(2, 1)])]);
        assert_eq!(f.constituent(7), &p(&[(1, 1)]));
        assert_eq!(f.constituent(-1), &p(&[(2, 1)]));
        assert_eq!(f.constituent(0), &p(&[(0, 1)]));
    }

    fn rhombus_shift_eighth() -> QuasiPolynomial {
        let a = p(&[(1, 1), (1, 1), (1, 1)]);
        let b = p(&[(0, 1), (0, 1), (1, 1)]);
        let c = p(&[(-1, 1), (0, 1), (1, 1)]);
        QuasiPolynomial::new(vec![a, b.clone(), b.clone(), c.clone(), b.clone(), c, b.clone(), b])
    }

    #[test]
    fn symmetry_and_gcd() {
        let f = rhombus_shift_eighth();
        assert!(f.is_symmetric());
        assert!(!f.has_gcd_property());

        let a = p(&[(1, 1), (2, 1), (3, 1)]);
        let r = p(&[(0, 1), (0, 1), (3, 1)]);
        let e = p(&[(0, 1), (1, 1), (3, 1)]);
        let g = QuasiPolynomial::new(vec![a, r.clone(), r.clone(), e, r.clone(), r]);
        assert!(g.has_gcd_property());
        assert!(g.is_symmetric());

        let k = QuasiPolynomial::new(vec![p(&[(4, 1)]); 5]);
        assert!(k.has_gcd_property());
        assert!(QuasiPolynomial::polynomial(p(&[(1, 1), (1, 1)])).is_symmetric());
    }

    #[test]
    fn minimal_period_patterns() {
        let a = p(&[(1, 1)]);
        let b = p(&[(2, 1)]);
        let c = p(&[(3, 1)]);
        let f = QuasiPolynomial::new(vec![a.clone(), c.clone(), b.clone(), a.clone(), b, c]);
        assert_eq!(f.minimal_period(), 6);
        let g = QuasiPolynomial::new(vec![a.clone(), a]);
        assert_eq!(g.minimal_period(), 1);
    }

    #[test]
    fn reciprocity_examples() {
        let f = QuasiPolynomial::polynomial(p(&[(1, 1), (5, 2), (3, 2)]));
        assert_eq!(f.reciprocity_transform(2).constituents(), &[p(&[(1, 1), (-5, 2), (3, 2)])]);
        let f1 = QuasiPolynomial::polynomial(p(&[(0, 1), (-1, 2), (3, 2)]));
        assert_eq!(f1.reciprocity_transform(2).constituents(), &[p(&[(0, 1), (1, 2), (3, 2)])]);
        assert_eq!(QuasiPolynomial::zero().reciprocity_transform(3), QuasiPolynomial::zero());
    }

    #[test]
    fn rescale_examples() {
        let f = QuasiPolynomial::polynomial(p(&[(0, 1), (1, 1)]));
        assert_eq!(f.rescale_argument(2).unwrap().constituents(), &[p(&[(0, 1), (2, 1)])]);
        let f0 = p(&[(1, 1), (1, 1)]);
        let g = QuasiPolynomial::new(vec![f0.clone(), p(&[(7, 1)])]).rescale_argument(2).unwrap();
        assert_eq!(g.constituents(), &[f0.compose_linear(&rat(2, 1), &rat(0, 1))]);
        let v1 = p(&[(1, 1), (1, 1), (1, 1)]);
        let ehr_q = QuasiPolynomial::new(vec![v1.clone(), v1]);
        let h = ehr_q.rescale_argument(2).unwrap();
        for s in 0..6 {
            assert_eq!(h.eval(s), rat(4 * s * s + 2 * s + 1, 1));
        }
        assert_eq!(f.rescale_argument(0), Err(Error::ZeroScale));
    }

    #[test]
    fn display_groups_residues() {
        let f = rhombus_shift_eighth();
        let s = f.to_string();
        assert!(s.starts_with("t ≡ 0 (mod 8): t^2 + t + 1"));
        assert!(s.contains("t ≡ 1, 2, 4, 6, 7 (mod 8): t^2"));
        assert!(s.contains("t ≡ 3, 5 (mod 8): t^2 - 1"));
    }
}
