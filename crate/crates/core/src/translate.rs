//! Translated lattice-point enumerators and Ehrhart quasi-polynomials of
//! translated polytopes.

use std::collections::BTreeSet;

use num_integer::Integer as _;
use num_traits::ToPrimitive;

use crate::cells::{CellKey, CellTable};
use crate::counting::{count, count_interior};
use crate::error::{Error, Result};
use crate::exact::{denominator_of, Integer, Rational, RationalVector};
use crate::polytope::Polytope;
use crate::quasipoly::{Polynomial, QuasiPolynomial};

fn as_rational(n: u64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

fn scaled(v: &[Rational], k: u64) -> RationalVector {
    let k = as_rational(k);
    v.iter().map(|x| x * &k).collect()
}

/// `t ↦ #((tP + v) ∩ Z^d)` as a quasi-polynomial of period `den(P)`.
pub fn tl(p: &Polytope, v: &[Rational]) -> Result<QuasiPolynomial> {
    QuasiPolynomial::fit_with(|t| Ok(as_rational(count(p, v, t)?)), p.period(), p.dimension(), 0)
}

/// `t ↦ #(int(tP + v) ∩ Z^d)`, fitted on `t ≥ 1`.
pub fn tl_interior(p: &Polytope, v: &[Rational]) -> Result<QuasiPolynomial> {
    QuasiPolynomial::fit_with(|t| Ok(as_rational(count_interior(p, v, t)?)), p.period(), p.dimension(), 1)
}

/// The Ehrhart quasi-polynomial `ehr_P`.
pub fn ehrhart(p: &Polytope) -> Result<QuasiPolynomial> {
    tl(p, &vec![Rational::from_integer(Integer::from(0)); p.dimension()])
}

/// `TL_{P,C}` for a canonical cell key.
pub fn tl_cell(table: &CellTable, key: &CellKey) -> Result<QuasiPolynomial> {
    table.tl(key)
}

/// Period `lcm(den(P), den(v))` that is guaranteed for `ehr_{P+v}`.
pub fn safe_period(p: &Polytope, v: &[Rational]) -> u64 {
    let r = denominator_of(v).to_u64().expect("denominator fits in u64");
    p.period().lcm(&r)
}

/// `ehr_{P+v}` assembled from cell enumerators: the `k`-th constituent is the
/// `k`-th constituent of `TL_{P,[kv]}`. Every assembly is checked against
/// direct counts for `t = 0..=2Q`, and the result is given with its minimal period.
pub fn ehr_translated(p: &Polytope, v: &[Rational]) -> Result<QuasiPolynomial> {
    ehr_translated_with(&CellTable::lazy(p.clone()), v)
}

/// As [`ehr_translated`], reusing the enumerators cached in `table`.
pub fn ehr_translated_with(table: &CellTable, v: &[Rational]) -> Result<QuasiPolynomial> {
    let p = table.polytope();
    if v.len() != p.dimension() {
        return Err(Error::DimensionMismatch { expected: p.dimension(), found: v.len() });
    }
    let period = safe_period(p, v);
    let mut constituents = Vec::with_capacity(period as usize);
    for k in 0..period {
        let f = table.tl_at(&scaled(v, k))?;
        constituents.push(f.constituent(k as i64).clone());
    }
    let assembled = QuasiPolynomial::new(constituents);
    for t in 0..=2 * period {
        let direct = count(p, &scaled(v, t), t)?;
        if assembled.eval(t as i64) != as_rational(direct) {
            return Err(Error::CrossValidationFailed { t });
        }
    }
    Ok(assembled.minimize())
}

/// Every polynomial that occurs as a constituent of some `ehr_{P+v}`, `v` rational.
pub fn constituent_universe(p: &Polytope) -> Result<BTreeSet<Polynomial>> {
    let table = CellTable::exhaustive(p.clone())?;
    constituent_universe_with(&table)
}

pub fn constituent_universe_with(table: &CellTable) -> Result<BTreeSet<Polynomial>> {
    let mut out = BTreeSet::new();
    for cell in table.cells() {
        out.extend(table.tl(&cell.key)?.constituents().iter().cloned());
    }
    Ok(out)
}
