//! Executable checks of the structural identities satisfied by translated
//! lattice-point enumerators.
//!
//! Checks never prove anything: they evaluate both sides of an identity on
//! concrete data and report the outcome with witnesses.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cells::{Arrangement, CellTable, KeyKind, DEFAULT_SOLVE_LIMIT};
use crate::counting::{count, count_facet, count_partial_boundary, BoundarySide};
use crate::error::{Error, Result};
use crate::exact::{
    dot_int, dot_int_rat, format_rational_vector, is_integral_vector, primitive, rational_ceil, rational_floor,
    Integer, IntegerVector, Rational, RationalVector,
};
use crate::linalg::{determinant, Matrix};
use crate::polytope::Polytope;
use crate::quasipoly::QuasiPolynomial;
use crate::translate::{ehr_translated_with, tl};

/// One evaluated instance of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of a named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub findings: Vec<Finding>,
}

impl CheckReport {
    pub(crate) fn new(check: &str) -> Self {
        CheckReport { check: check.to_string(), passed: true, findings: Vec::new() }
    }

    pub(crate) fn record(&mut self, subject: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.findings.push(Finding { subject: subject.into(), passed, detail: detail.into() });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| !f.passed)
    }
}

fn rint(n: impl Into<Integer>) -> Rational {
    Rational::from_integer(n.into())
}

fn neg(v: &[Rational]) -> RationalVector {
    v.iter().map(|x| -x).collect()
}

fn full_cells(table: &CellTable) -> Vec<crate::cells::Cell> {
    let d = table.polytope().dimension();
    table.cells().into_iter().filter(|c| c.dimension == d).collect()
}

/// `TL_{P,C}(t) = (−1)^d TL_{P,−C}(−t)` for every full-dimensional cell.
pub fn check_maximal_cell_reciprocity(p: &Polytope) -> Result<CheckReport> {
    let table = CellTable::exhaustive(p.clone())?;
    check_maximal_cell_reciprocity_with(&table)
}

pub fn check_maximal_cell_reciprocity_with(table: &CellTable) -> Result<CheckReport> {
    let d = table.polytope().dimension();
    let mut report = CheckReport::new("maximal-cell reciprocity");
    for cell in full_cells(table) {
        let f = table.tl(&cell.key)?;
        let minus = table.negate(&cell.key)?;
        let g = table.tl(&minus)?.reciprocity_transform(d);
        report.record(
            format!("cell at {}", format_rational_vector(&cell.representative)),
            f == g,
            format!("TL = {}; transformed TL of −C = {}", one_line(&f), one_line(&g)),
        );
    }
    Ok(report)
}

fn one_line(f: &QuasiPolynomial) -> String {
    f.to_string().replace('\n', "; ")
}

/// `−P = P + u` for some integer `u`, returned as `u`.
pub fn integral_central_shift(p: &Polytope) -> Option<IntegerVector> {
    let sym = p.central_symmetry()?;
    let u: RationalVector = sym.center.iter().map(|c| -(c * rint(2))).collect();
    is_integral_vector(&u).then(|| u.iter().map(|x| x.to_integer()).collect())
}

/// `f(t) = (−1)^d f(−t)`.
fn has_parity(f: &crate::quasipoly::Polynomial, d: usize) -> bool {
    f.coefficients().iter().enumerate().all(|(i, c)| c.is_zero() || (i + d).is_multiple_of(2))
}

/// Parity of constituents on full-dimensional cells of a polytope with
/// `−P = P + u`, `u` integral.
pub fn check_cs_parity(p: &Polytope) -> Result<CheckReport> {
    integral_central_shift(p).ok_or(Error::NotCentrallySymmetricOverZ)?;
    let d = p.dimension();
    let table = CellTable::exhaustive(p.clone())?;
    let mut report = CheckReport::new("centrally symmetric parity");
    let two_p_integral = p.period() <= 2;
    for cell in full_cells(&table) {
        let f = table.tl(&cell.key)?;
        let at = format_rational_vector(&cell.representative);
        let q = f.period() as i64;
        for k in 0..q {
            let lhs = f.constituent(k);
            let rhs = f.constituent(-k).compose_linear(&-Rational::one(), &Rational::zero());
            let rhs = if d.is_multiple_of(2) { rhs } else { rhs.scale(&-Rational::one()) };
            report.record(format!("cell at {at}, k = {k}"), *lhs == rhs, format!("f_k = {lhs}; (−1)^d f_(−k)(−t) = {rhs}"));
        }
        let mut ks = vec![0];
        if two_p_integral {
            ks.push(1);
        }
        for k in ks {
            let c = f.constituent(k);
            report.record(format!("cell at {at}, parity of constituent {k}"), has_parity(c, d), c.to_string());
        }
    }
    Ok(report)
}

/// Points of `(1/n)Z^d ∩ [0,1)^d` in lexicographic order.
pub fn grid(dimension: usize, n: u64) -> Vec<RationalVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..dimension {
        out = out
            .into_iter()
            .flat_map(|prefix: RationalVector| {
                (0..n).map(move |j| {
                    let mut next = prefix.clone();
                    next.push(Rational::new(Integer::from(j), Integer::from(n)));
                    next
                })
            })
            .collect();
    }
    out
}

/// Outcome of comparing the geometric criterion for symmetric translated
/// Ehrhart quasi-polynomials with grid sampling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryVerdict {
    /// Central symmetry with `v − v*` integral for every vertex.
    pub geometric: bool,
    /// Every sampled `ehr_{P+v}` was symmetric.
    pub sampled: bool,
    /// A grid point with asymmetric `ehr_{P+v}`, if one was found.
    pub witness: Option<String>,
    pub samples: usize,
}

impl SymmetryVerdict {
    pub fn consistent(&self) -> bool {
        self.geometric == self.sampled
    }
}

/// The geometric side: `P` centrally symmetric and `v − v*` integral for every vertex.
pub fn symmetric_vertex_pairing(p: &Polytope) -> bool {
    let Some(sym) = p.central_symmetry() else {
        return false;
    };
    p.vertices().iter().enumerate().all(|(i, v)| {
        let partner = &p.vertices()[sym.pairing[i]];
        is_integral_vector(&crate::linalg::sub(v, partner))
    })
}

pub fn check_symmetry_characterization(p: &Polytope, sample_denominator: u64) -> Result<SymmetryVerdict> {
    let table = CellTable::lazy(p.clone());
    let geometric = symmetric_vertex_pairing(p);
    let mut samples = 0;
    for v in grid(p.dimension(), sample_denominator) {
        samples += 1;
        let f = ehr_translated_with(&table, &v)?;
        if !f.is_symmetric() {
            return Ok(SymmetryVerdict {
                geometric,
                sampled: false,
                witness: Some(format_rational_vector(&v)),
                samples,
            });
        }
    }
    Ok(SymmetryVerdict { geometric, sampled: true, witness: None, samples })
}

/// `constituent_k(TL_{P,v}) = constituent_{−k}(TL_{P,−v})` for every `k`.
pub fn constituent_criterion(p: &Polytope, v: &[Rational]) -> Result<bool> {
    let f = tl(p, v)?;
    let g = tl(p, &neg(v))?;
    Ok((0..f.period() as i64).all(|k| f.constituent(k) == g.constituent(-k)))
}

/// Offsets `s ∈ [0, 1)` at which `v + sign·s·e_i` meets a hyperplane
/// `(a, x) ∈ Z` of a normal with `a_i ≠ 0`.
pub fn crossing_offsets(p: &Polytope, i: usize, v: &[Rational], sign: i64) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for h in p.halfspaces() {
        let ai = &h.normal[i] * Integer::from(sign);
        if ai.is_zero() {
            continue;
        }
        let base = dot_int_rat(&h.normal, v);
        let end = &base + rint(ai.clone());
        let (lo, hi) = if base <= end { (base.clone(), end) } else { (end, base.clone()) };
        let mut k = rational_ceil(&lo);
        while rint(k.clone()) <= hi {
            let s = (rint(k.clone()) - &base) / rint(ai.clone());
            if !s.is_negative() && s < Rational::one() {
                out.insert(s);
            }
            k += 1;
        }
    }
    out
}

fn shift_coordinate(v: &[Rational], i: usize, by: &Rational) -> RationalVector {
    let mut w = v.to_vec();
    w[i] += by;
    w
}

fn drop_coordinate(v: &[Rational], i: usize) -> RationalVector {
    v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect()
}

/// Counts of `π_i(P)` against sums of directional boundary counts, both for
/// the lower boundary along `v + s e_i` and the upper one along `v − s e_i`.
pub fn check_projection_identity(p: &Polytope, i: usize, v: &[Rational], t_max: u64) -> Result<CheckReport> {
    let projected = p.project(i)?;
    let pv = drop_coordinate(v, i);
    let lower = crossing_offsets(p, i, v, 1);
    let upper = crossing_offsets(p, i, v, -1);
    let mut report = CheckReport::new("projection identity");
    for t in 0..=t_max {
        let lhs = count(&projected, &pv, t)?;
        let mut minus = 0;
        for s in &lower {
            minus += count_partial_boundary(p, &shift_coordinate(v, i, s), t, i, BoundarySide::Lower)?;
        }
        let mut plus = 0;
        for s in &upper {
            plus += count_partial_boundary(p, &shift_coordinate(v, i, &-s), t, i, BoundarySide::Upper)?;
        }
        let subject = format!("i = {i}, v = {}, t = {t}", format_rational_vector(v));
        report.record(format!("{subject}, lower"), lhs == minus, format!("projection {lhs}, boundary sum {minus}"));
        report.record(format!("{subject}, upper"), lhs == plus, format!("projection {lhs}, boundary sum {plus}"));
    }
    Ok(report)
}

/// Primitive inner facet normals paired with relative facet volumes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinkowskiData {
    entries: Vec<(IntegerVector, Rational)>,
}

impl MinkowskiData {
    pub fn entries(&self) -> &[(IntegerVector, Rational)] {
        &self.entries
    }

    /// Entry for a normal given in any positive scaling.
    pub fn volume_of(&self, normal: &[Integer]) -> Option<&Rational> {
        let a = primitive(normal).ok()?;
        self.entries.iter().find(|(n, _)| *n == a).map(|(_, v)| v)
    }
}

pub fn minkowski_data(p: &Polytope) -> MinkowskiData {
    let mut entries: Vec<(IntegerVector, Rational)> = p
        .facets()
        .into_iter()
        .map(|f| (primitive(&f.halfspace.normal).expect("facet normals are nonzero"), f.relative_volume))
        .collect();
    entries.sort();
    MinkowskiData { entries }
}

fn facet_enumerator(p: &Polytope, facet: usize, v: &[Rational]) -> Result<QuasiPolynomial> {
    let f = p.facet(facet);
    QuasiPolynomial::fit_with(|t| Ok(rint(count_facet(p, &f, v, t)?)), p.period(), p.dimension() - 1, 0)
}

/// Step size keeping `v ± ε·a` off every hyperplane not already through `v`.
fn safe_step(arr: &Arrangement, v: &[Rational], a: &[Integer]) -> Rational {
    let mut best: Option<Rational> = None;
    for n in arr.normals() {
        let speed = dot_int(n, a).abs();
        if speed.is_zero() {
            continue;
        }
        let phi = dot_int_rat(n, v);
        let up = rint(rational_ceil(&phi)) - &phi;
        let down = &phi - rint(rational_floor(&phi));
        let gap = if phi.is_integer() { Rational::one() } else { up.min(down) };
        let step = gap / rint(speed);
        if best.as_ref().is_none_or(|b| &step < b) {
            best = Some(step);
        }
    }
    best.unwrap_or_else(Rational::one) / rint(2)
}

/// For each facet `F` with normal `a`: at a generic `v` on `H_{a,0}`,
/// `TL_{P,v} − TL_{P,v+εa} = TL_{F,v} ≠ 0`, `TL_{P,v−εa} = TL_{P,v}` when no
/// facet normal is a negative multiple of `a`, and the degree `d − 1`
/// coefficient of the 0th constituent of `TL_{F,v}` is the relative volume of `F`.
pub fn check_codim1(p: &Polytope) -> Result<CheckReport> {
    let d = p.dimension();
    let arr = Arrangement::new(p);
    let cells = arr.enumerate_delta(DEFAULT_SOLVE_LIMIT)?;
    let mut report = CheckReport::new("codimension-one cells");
    let normals = arr.normals().to_vec();
    for (i, a) in normals.iter().enumerate() {
        let g = crate::exact::gcd_of(a);
        let Some(cell) = cells.iter().find(|c| {
            c.dimension + 1 == d
                && c.key.on_hyperplane().is_some_and(|e| e[i])
                && (dot_int_rat(a, &c.representative) / rint(g.clone())).is_integer()
        }) else {
            report.record(format!("facet {i}"), false, "no generic point on the linear hyperplane");
            continue;
        };
        let v = &cell.representative;
        let subject = format!("facet {i}, v = {}", format_rational_vector(v));
        let eps = safe_step(&arr, v, a);
        let ar: RationalVector = a.iter().map(|x| rint(x.clone())).collect();
        let plus: RationalVector = v.iter().zip(&ar).map(|(x, y)| x + y * &eps).collect();
        let minus: RationalVector = v.iter().zip(&ar).map(|(x, y)| x - y * &eps).collect();

        let before = arr.delta_key(v)?;
        let after = arr.delta_key(&plus)?;
        let expected: Vec<bool> = before
            .on_hyperplane()
            .unwrap()
            .iter()
            .zip(&normals)
            .map(|(&e, n)| e && dot_int(n, a).is_zero())
            .collect();
        report.record(
            format!("{subject}, step {eps}"),
            after.on_hyperplane() == Some(expected.as_slice()),
            "only hyperplanes through v transverse to a are left",
        );

        let base = tl(p, v)?;
        let facet_tl = facet_enumerator(p, i, v)?;
        let diff = base.sub(&tl(p, &plus)?);
        report.record(
            format!("{subject}, difference"),
            diff.same_function(&facet_tl) && facet_tl.degree().is_some(),
            format!("TL_P,v − TL_P,v+εa = {}; TL_F,v = {}", one_line(&diff), one_line(&facet_tl)),
        );
        let opposite = normals.iter().any(|n| {
            let m: Matrix = vec![
                n.iter().map(|x| rint(x.clone())).collect(),
                a.iter().map(|x| rint(x.clone())).collect(),
            ];
            crate::linalg::rank(&m) == 1 && dot_int(n, a).is_negative()
        });
        if !opposite {
            let same = base.same_function(&tl(p, &minus)?);
            report.record(format!("{subject}, backward step"), same, "TL_P,v−εa = TL_P,v");
        }
        let lead = facet_tl.constituent(0).coefficient(d - 1);
        let vol = p.facet(i).relative_volume;
        report.record(
            format!("{subject}, facet volume"),
            lead == vol,
            format!("leading coefficient {lead}, relative volume {vol}"),
        );
    }
    Ok(report)
}

/// The integer `w` with `P = Q + w`, if one exists.
pub fn equivalent_up_to_integer_translation(p: &Polytope, q: &Polytope) -> Option<IntegerVector> {
    translation_between(p.vertices(), q.vertices())
}

/// Integer `w` with `a = b + w` as vertex sets (both sorted lexicographically).
fn translation_between(a: &[RationalVector], b: &[RationalVector]) -> Option<IntegerVector> {
    if a.len() != b.len() || a.is_empty() || a[0].len() != b[0].len() {
        return None;
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort();
    sb.sort();
    let w = crate::linalg::sub(&sa[0], &sb[0]);
    if !is_integral_vector(&w) {
        return None;
    }
    let ok = sa.iter().zip(&sb).all(|(x, y)| crate::linalg::sub(x, y) == w);
    ok.then(|| w.iter().map(|x| x.to_integer()).collect())
}

/// Result of comparing translated counts of two polytopes on a grid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Fingerprint {
    Indistinguishable,
    Separated { v: String, t: u64, left: u64, right: u64 },
}

/// Looks for `(v, t)` with `#((tP+v) ∩ Z^d) ≠ #((tQ+v) ∩ Z^d)` over
/// `v ∈ (1/n)Z^d ∩ [0,1)^d` and `t = 0..=t_max`.
pub fn fingerprint_distinguishes(p: &Polytope, q: &Polytope, sample_denominator: u64, t_max: u64) -> Result<Fingerprint> {
    if p.dimension() != q.dimension() {
        return Err(Error::DimensionMismatch { expected: p.dimension(), found: q.dimension() });
    }
    for t in 0..=t_max {
        for v in grid(p.dimension(), sample_denominator) {
            let (left, right) = (count(p, &v, t)?, count(q, &v, t)?);
            if left != right {
                return Ok(Fingerprint::Separated { v: format_rational_vector(&v), t, left, right });
            }
        }
    }
    Ok(Fingerprint::Indistinguishable)
}

/// Square integer matrix with determinant `±1`, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodularMatrix {
    rows: Vec<IntegerVector>,
}

impl UnimodularMatrix {
    pub fn new(rows: Vec<IntegerVector>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotUnimodular);
        }
        let m: Matrix = rows.iter().map(|r| r.iter().map(|x| rint(x.clone())).collect()).collect();
        if determinant(&m).abs() != Rational::one() {
            return Err(Error::NotUnimodular);
        }
        Ok(UnimodularMatrix { rows })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        UnimodularMatrix::new(rows.iter().map(|r| crate::exact::ivec(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| Integer::from((i == j) as i64)).collect()).collect();
        UnimodularMatrix { rows }
    }

    pub fn rows(&self) -> &[IntegerVector] {
        &self.rows
    }

    pub fn apply(&self, v: &[Rational]) -> RationalVector {
        self.rows.iter().map(|r| dot_int_rat(r, v)).collect()
    }
}

/// Unimodular `g` with entries in `[−bound, bound]` and `g(P) = P + w`, `w` integral.
pub fn automorphisms(p: &Polytope, entry_bound: i64) -> Vec<UnimodularMatrix> {
    let d = p.dimension();
    let values: Vec<i64> = (-entry_bound..=entry_bound).collect();
    let cells = d * d;
    let mut out = Vec::new();
    let mut idx = vec![0usize; cells];
    loop {
        let rows: Vec<IntegerVector> =
            (0..d).map(|r| (0..d).map(|c| Integer::from(values[idx[r * d + c]])).collect()).collect();
        if let Ok(g) = UnimodularMatrix::new(rows) {
            let image: Vec<RationalVector> = p.vertices().iter().map(|v| g.apply(v)).collect();
            if translation_between(&image, p.vertices()).is_some() {
                out.push(g);
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == cells {
                out.sort();
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `TL_{P,g·v} = TL_{P,v}` on the given samples.
pub fn check_automorphism_invariance(p: &Polytope, g: &UnimodularMatrix, samples: &[RationalVector]) -> Result<CheckReport> {
    let mut report = CheckReport::new("automorphism invariance");
    for v in samples {
        let gv = g.apply(v);
        let (a, b) = (tl(p, v)?, tl(p, &gv)?);
        report.record(
            format!("v = {}, g·v = {}", format_rational_vector(v), format_rational_vector(&gv)),
            a == b,
            one_line(&a),
        );
    }
    Ok(report)
}

/// Delta and lambda keys separate the given points identically.
pub fn partitions_agree(p: &Polytope, points: &[RationalVector]) -> Result<bool> {
    let arr = Arrangement::new(p);
    let keys: Vec<_> = points.iter().map(|v| Ok((arr.delta_key(v)?, arr.lambda_key(v)?))).collect::<Result<_>>()?;
    for (i, (d1, l1)) in keys.iter().enumerate() {
        for (d2, l2) in &keys[i + 1..] {
            if (d1 == d2) != (l1 == l2) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lambda keys reached from the delta cells, compared against direct region enumeration.
pub fn lambda_refines(p: &Polytope) -> Result<bool> {
    let arr = Arrangement::new(p);
    let from_delta: BTreeSet<_> = arr.enumerate_delta(DEFAULT_SOLVE_LIMIT)?.into_iter().map(|c| c.key.to_lambda()).collect();
    let regions: BTreeSet<_> =
        crate::cells::enumerate_cells(p, KeyKind::Lambda)?.into_iter().map(|c| c.key).collect();
    Ok(from_delta == regions)
}
