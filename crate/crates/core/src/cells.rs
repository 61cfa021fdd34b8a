//! Cells of the toric arrangement cut out by the facet normals of a polytope.
//!
//! A point `v` determines, per facet normal `a_i`, the ceiling `⌈(a_i, v)⌉` and
//! whether `(a_i, v)` is an integer. The set of points sharing both vectors is
//! convex, so it is a single open cell; keys are reduced modulo the image of
//! `Z^d` so that one key names one cell of the torus.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    canonical_coset_rep, dot_int_rat, hnf, rational_ceil, rational_floor, Integer, IntegerLattice, IntegerVector,
    Rational, RationalVector,
};
use crate::linalg::{rank, solve_affine, Matrix};
use crate::polytope::Polytope;
use crate::quasipoly::QuasiPolynomial;

/// Default cap on the number of feasibility problems solved during one enumeration.
pub const DEFAULT_SOLVE_LIMIT: usize = 500_000;

/// Which partition of the torus a key refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KeyKind {
    /// Open cells: ceilings plus on-hyperplane flags.
    Delta,
    /// Upper regions: ceilings only.
    Lambda,
}

/// Canonical identifier of a cell (or region) modulo `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    ceilings: IntegerVector,
    on_hyperplane: Option<Vec<bool>>,
}

impl CellKey {
    /// Builds a key from raw data. The result is not canonical until passed
    /// through [`Arrangement::canonicalize`].
    pub fn new(ceilings: IntegerVector, on_hyperplane: Option<Vec<bool>>) -> Self {
        CellKey { ceilings, on_hyperplane }
    }

    pub fn ceilings(&self) -> &[Integer] {
        &self.ceilings
    }

    pub fn on_hyperplane(&self) -> Option<&[bool]> {
        self.on_hyperplane.as_deref()
    }

    pub fn kind(&self) -> KeyKind {
        if self.on_hyperplane.is_some() { KeyKind::Delta } else { KeyKind::Lambda }
    }

    /// The region key obtained by forgetting the on-hyperplane flags.
    pub fn to_lambda(&self) -> CellKey {
        CellKey { ceilings: self.ceilings.clone(), on_hyperplane: None }
    }
}

impl fmt::Display for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.ceilings.iter().map(Integer::to_string).collect();
        write!(f, "c=({})", c.join(","))?;
        if let Some(eps) = &self.on_hyperplane {
            let e: String = eps.iter().map(|&b| if b { '1' } else { '0' }).collect();
            write!(f, " ε={}", e)?;
        }
        Ok(())
    }
}

/// A cell of the torus with a relative-interior representative in `[0, 1)^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub key: CellKey,
    pub representative: RationalVector,
    pub dimension: usize,
}

/// Facet normals of a polytope together with the lattice `φ(Z^d)` used for
/// canonicalization.
#[derive(Debug, Clone)]
pub struct Arrangement {
    dimension: usize,
    normals: Vec<IntegerVector>,
    lattice: IntegerLattice,
}

impl Arrangement {
    pub fn new(p: &Polytope) -> Self {
        let normals = p.normals();
        let d = p.dimension();
        let generators: Vec<IntegerVector> = (0..d).map(|j| normals.iter().map(|a| a[j].clone()).collect()).collect();
        let lattice = hnf(&generators, normals.len()).expect("generator lengths match facet count");
        Arrangement { dimension: d, normals, lattice }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn normals(&self) -> &[IntegerVector] {
        &self.normals
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    fn check_point(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, found: v.len() });
        }
        Ok(())
    }

    fn values(&self, v: &[Rational]) -> Vec<Rational> {
        self.normals.iter().map(|a| dot_int_rat(a, v)).collect()
    }

    /// Reduces the ceilings modulo `φ(Z^d)`; flags are untouched.
    pub fn canonicalize(&self, key: &CellKey) -> Result<CellKey> {
        self.check_key(key)?;
        let ceilings = canonical_coset_rep(&key.ceilings, &self.lattice)?;
        Ok(CellKey { ceilings, on_hyperplane: key.on_hyperplane.clone() })
    }

    fn check_key(&self, key: &CellKey) -> Result<()> {
        let m = self.normals.len();
        if key.ceilings.len() != m || key.on_hyperplane.as_ref().is_some_and(|e| e.len() != m) {
            return Err(Error::ForeignKey);
        }
        Ok(())
    }

    pub fn delta_key(&self, v: &[Rational]) -> Result<CellKey> {
        self.check_point(v)?;
        let phi = self.values(v);
        let key = CellKey {
            ceilings: phi.iter().map(rational_ceil).collect(),
            on_hyperplane: Some(phi.iter().map(Rational::is_integer).collect()),
        };
        self.canonicalize(&key)
    }

    pub fn lambda_key(&self, v: &[Rational]) -> Result<CellKey> {
        Ok(self.delta_key(v)?.to_lambda())
    }

    /// Dimension of the open cell named by a delta key.
    pub fn cell_dimension(&self, key: &CellKey) -> Result<usize> {
        self.check_key(key)?;
        let eps = key.on_hyperplane.as_ref().ok_or(Error::ForeignKey)?;
        let active: Matrix = self
            .normals
            .iter()
            .zip(eps)
            .filter(|(_, &e)| e)
            .map(|(a, _)| a.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        Ok(self.dimension - rank(&active))
    }

    /// A relative-interior point of the cell, reduced into `[0, 1)^d`.
    /// Fails with [`Error::EmptyCell`] when the key names no points.
    pub fn representative(&self, key: &CellKey) -> Result<RationalVector> {
        self.check_key(key)?;
        let mut system = System::new(self.dimension);
        for (i, a) in self.normals.iter().enumerate() {
            match &key.on_hyperplane {
                Some(eps) => system.push_facet(a, &key.ceilings[i], eps[i]),
                None => system.push_region(a, &key.ceilings[i]),
            }
        }
        let point = system.solve().ok_or(Error::EmptyCell)?.point;
        Ok(reduce_mod_one(&point))
    }

    /// Key of the cell `−C`.
    pub fn negate(&self, key: &CellKey) -> Result<CellKey> {
        let rep = self.representative(key)?;
        let neg: RationalVector = rep.iter().map(|x| -x).collect();
        let k = self.delta_key(&neg)?;
        Ok(if key.kind() == KeyKind::Lambda { k.to_lambda() } else { k })
    }

    /// Every open cell of the torus, sorted by dimension and key.
    pub fn enumerate_delta(&self, limit: usize) -> Result<Vec<Cell>> {
        let d = self.dimension;
        let ranges: Vec<(Integer, Integer)> = self
            .normals
            .iter()
            .map(|a| {
                let lo: Integer = a.iter().filter(|x| x.is_negative()).sum();
                let hi: Integer = a.iter().filter(|x| x.is_positive()).sum();
                (lo, hi)
            })
            .collect();
        let mut found: BTreeMap<CellKey, RationalVector> = BTreeMap::new();
        let mut solves = 0usize;
        let mut choice: Vec<(Integer, bool)> = Vec::new();
        self.dfs(&ranges, &mut choice, &mut found, &mut solves, limit)?;
        let mut cells: Vec<Cell> = found
            .into_iter()
            .map(|(key, rep)| {
                let dimension = self.cell_dimension(&key).expect("enumerated key matches arrangement");
                Cell { key, representative: rep, dimension }
            })
            .collect();
        cells.sort_by(|x, y| x.dimension.cmp(&y.dimension).then_with(|| x.key.cmp(&y.key)));
        debug_assert!(cells.iter().all(|c| c.dimension <= d));
        Ok(cells)
    }

    fn dfs(
        &self,
        ranges: &[(Integer, Integer)],
        choice: &mut Vec<(Integer, bool)>,
        found: &mut BTreeMap<CellKey, RationalVector>,
        solves: &mut usize,
        limit: usize,
    ) -> Result<()> {
        let depth = choice.len();
        if depth == self.normals.len() {
            return Ok(());
        }
        let (lo, hi) = &ranges[depth];
        let mut c = lo.clone();
        while &c <= hi {
            for eps in [true, false] {
                choice.push((c.clone(), eps));
                *solves += 1;
                if *solves > limit {
                    return Err(Error::EnumerationLimit { limit });
                }
                let mut system = System::new(self.dimension);
                system.push_unit_cube();
                for (i, (ci, ei)) in choice.iter().enumerate() {
                    system.push_facet(&self.normals[i], ci, *ei);
                }
                if let Some(sol) = system.solve() {
                    if choice.len() == self.normals.len() {
                        let raw = CellKey {
                            ceilings: choice.iter().map(|(c, _)| c.clone()).collect(),
                            on_hyperplane: Some(choice.iter().map(|(_, e)| *e).collect()),
                        };
                        let key = self.canonicalize(&raw)?;
                        found.entry(key).or_insert_with(|| reduce_mod_one(&sol.point));
                    } else {
                        self.dfs(ranges, choice, found, solves, limit)?;
                    }
                }
                choice.pop();
            }
            c += 1;
        }
        Ok(())
    }

    /// Upper regions of the torus, each with the representative of its
    /// highest-dimensional open cell.
    pub fn enumerate_lambda(&self, limit: usize) -> Result<Vec<Cell>> {
        let mut regions: BTreeMap<CellKey, Cell> = BTreeMap::new();
        for cell in self.enumerate_delta(limit)? {
            let key = cell.key.to_lambda();
            let replace = regions.get(&key).is_none_or(|r| r.dimension < cell.dimension);
            if replace {
                regions.insert(key.clone(), Cell { key, ..cell });
            }
        }
        let mut out: Vec<Cell> = regions.into_values().collect();
        out.sort_by(|x, y| x.dimension.cmp(&y.dimension).then_with(|| x.key.cmp(&y.key)));
        Ok(out)
    }
}

fn reduce_mod_one(v: &[Rational]) -> RationalVector {
    v.iter().map(|x| x - Rational::from_integer(rational_floor(x))).collect()
}

/// Canonical delta key of `v`.
pub fn delta_key(p: &Polytope, v: &[Rational]) -> Result<CellKey> {
    Arrangement::new(p).delta_key(v)
}

/// Canonical upper-region key of `v`.
pub fn lambda_key(p: &Polytope, v: &[Rational]) -> Result<CellKey> {
    Arrangement::new(p).lambda_key(v)
}

/// Exhaustive enumeration of open cells or upper regions.
pub fn enumerate_cells(p: &Polytope, kind: KeyKind) -> Result<Vec<Cell>> {
    let arr = Arrangement::new(p);
    match kind {
        KeyKind::Delta => arr.enumerate_delta(DEFAULT_SOLVE_LIMIT),
        KeyKind::Lambda => arr.enumerate_lambda(DEFAULT_SOLVE_LIMIT),
    }
}

pub fn negate_cell(p: &Polytope, key: &CellKey) -> Result<CellKey> {
    Arrangement::new(p).negate(key)
}

/// Delta keys of `[k·v]` for `k = 0..=k_max`.
pub fn orbit_classify(p: &Polytope, v: &[Rational], k_max: u64) -> Result<Vec<(u64, CellKey)>> {
    let arr = Arrangement::new(p);
    (0..=k_max)
        .map(|k| {
            let kv: RationalVector = v.iter().map(|x| x * Rational::from_integer(Integer::from(k))).collect();
            Ok((k, arr.delta_key(&kv)?))
        })
        .collect()
}

/// Conventional name for the cells of a listing: `V`, `E`, `F` in dimensions
/// 0, 1, 2 and `C<dim>` above, numbered from 1 in listing order.
pub fn cell_labels(cells: &[Cell]) -> Vec<String> {
    let mut counters: HashMap<usize, usize> = HashMap::new();
    cells
        .iter()
        .map(|c| {
            let n = counters.entry(c.dimension).or_insert(0);
            *n += 1;
            match c.dimension {
                0 => format!("V{}", n),
                1 => format!("E{}", n),
                2 => format!("F{}", n),
                k => format!("C{}_{}", k, n),
            }
        })
        .collect()
}

/// One inequality `coeffs·y + lam·λ ≥ rhs`.
#[derive(Debug, Clone)]
struct Row {
    coeffs: Vec<Rational>,
    lam: Rational,
    rhs: Rational,
}

struct Solution {
    point: RationalVector,
}

/// Linear system in `x ∈ R^d` with equalities and slack-relaxed strict
/// inequalities, solved by Fourier–Motzkin elimination.
struct System {
    dimension: usize,
    equalities: Vec<(Vec<Rational>, Rational)>,
    rows: Vec<Row>,
}

fn to_rat(a: &[Integer]) -> Vec<Rational> {
    a.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

impl System {
    fn new(dimension: usize) -> Self {
        // λ ≤ 1 keeps the slack bounded.
        let cap = Row { coeffs: vec![Rational::zero(); dimension], lam: -Rational::one(), rhs: -Rational::one() };
        System { dimension, equalities: Vec::new(), rows: vec![cap] }
    }

    fn push(&mut self, coeffs: Vec<Rational>, lam: Rational, rhs: Rational) {
        self.rows.push(Row { coeffs, lam, rhs });
    }

    fn push_unit_cube(&mut self) {
        for j in 0..self.dimension {
            let mut e = vec![Rational::zero(); self.dimension];
            e[j] = Rational::one();
            self.push(e.clone(), Rational::zero(), Rational::zero());
            self.push(e.iter().map(|x| -x).collect(), Rational::zero(), -Rational::one());
        }
    }

    /// `(a, x) = c` when `on`, otherwise `c − 1 < (a, x) < c`.
    fn push_facet(&mut self, a: &[Integer], c: &Integer, on: bool) {
        let a = to_rat(a);
        let c = Rational::from_integer(c.clone());
        if on {
            self.equalities.push((a, c));
        } else {
            self.push(a.clone(), -Rational::one(), &c - Rational::one());
            self.push(a.iter().map(|x| -x).collect(), -Rational::one(), -c);
        }
    }

    /// `c − 1 < (a, x) ≤ c`.
    fn push_region(&mut self, a: &[Integer], c: &Integer) {
        let a = to_rat(a);
        let c = Rational::from_integer(c.clone());
        self.push(a.clone(), -Rational::one(), &c - Rational::one());
        self.push(a.iter().map(|x| -x).collect(), Rational::zero(), -c);
    }

    /// A point satisfying every constraint with the strict ones strict, or
    /// `None` when the maximal slack is not positive.
    fn solve(&self) -> Option<Solution> {
        let (m_eq, rhs_eq): (Matrix, Vec<Rational>) = self.equalities.iter().cloned().unzip();
        let (x0, basis) = solve_affine(&m_eq, &rhs_eq, self.dimension)?;
        let k = basis.len();
        // Substitute x = x0 + N y.
        let rows: Vec<Row> = self
            .rows
            .iter()
            .map(|r| Row {
                coeffs: basis.iter().map(|col| crate::linalg::dot(&r.coeffs, col)).collect(),
                lam: r.lam.clone(),
                rhs: &r.rhs - crate::linalg::dot(&r.coeffs, &x0),
            })
            .collect();
        let mut levels = vec![prune(rows)?];
        for j in 0..k {
            let next = eliminate(levels.last().unwrap(), j);
            levels.push(prune(next)?);
        }
        // Only upper bounds on λ can remain.
        let mut lam = Rational::one();
        for r in levels.last().unwrap() {
            if r.lam.is_negative() {
                let bound = &r.rhs / &r.lam;
                if bound < lam {
                    lam = bound;
                }
            } else if r.lam.is_positive() {
                // never produced: no row carries a positive slack coefficient
                let bound = &r.rhs / &r.lam;
                if bound > lam {
                    return None;
                }
            }
        }
        if !lam.is_positive() {
            return None;
        }
        let mut y = vec![Rational::zero(); k];
        for j in (0..k).rev() {
            let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
            for r in &levels[j] {
                let a = &r.coeffs[j];
                if a.is_zero() {
                    continue;
                }
                let mut rest = &r.rhs - &r.lam * &lam;
                for (i, yi) in y.iter().enumerate().skip(j + 1) {
                    rest -= &r.coeffs[i] * yi;
                }
                let bound = rest / a;
                if a.is_positive() {
                    if lo.as_ref().is_none_or(|l| &bound > l) {
                        lo = Some(bound);
                    }
                } else if hi.as_ref().is_none_or(|h| &bound < h) {
                    hi = Some(bound);
                }
            }
            y[j] = match (lo, hi) {
                (Some(l), Some(h)) => (l + h) / Rational::from_integer(Integer::from(2)),
                (Some(l), None) => l,
                (None, Some(h)) => h,
                (None, None) => Rational::zero(),
            };
        }
        let mut point = x0;
        for (col, yj) in basis.iter().zip(&y) {
            for (p, c) in point.iter_mut().zip(col) {
                *p += c * yj;
            }
        }
        Some(Solution { point })
    }
}

/// Eliminates variable `j`, which must be the lowest remaining one.
fn eliminate(rows: &[Row], j: usize) -> Vec<Row> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for r in rows {
        if r.coeffs[j].is_positive() {
            pos.push(r);
        } else if r.coeffs[j].is_negative() {
            neg.push(r);
        } else {
            out.push(r.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let sp = Rational::one() / &p.coeffs[j];
            let sn = Rational::one() / -&n.coeffs[j];
            out.push(Row {
                coeffs: p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| a * &sp + b * &sn).collect(),
                lam: &p.lam * &sp + &n.lam * &sn,
                rhs: &p.rhs * &sp + &n.rhs * &sn,
            });
        }
    }
    out
}

/// Normalizes rows, keeps the tightest of parallel duplicates and drops
/// trivially satisfied ones. `None` signals a row `0 ≥ rhs` with `rhs > 0`.
fn prune(rows: Vec<Row>) -> Option<Vec<Row>> {
    let mut best: BTreeMap<(Vec<Rational>, Rational), Rational> = BTreeMap::new();
    for r in rows {
        let lead = r.coeffs.iter().chain(std::iter::once(&r.lam)).find(|x| !x.is_zero()).map(|x| x.abs());
        let Some(s) = lead else {
            if r.rhs.is_positive() {
                return None;
            }
            continue;
        };
        let coeffs: Vec<Rational> = r.coeffs.iter().map(|x| x / &s).collect();
        let lam = &r.lam / &s;
        let rhs = &r.rhs / &s;
        let entry = best.entry((coeffs, lam)).or_insert_with(|| rhs.clone());
        if rhs > *entry {
            *entry = rhs;
        }
    }
    Some(best.into_iter().map(|((coeffs, lam), rhs)| Row { coeffs, lam, rhs }).collect())
}

/// How a [`CellTable`] treats keys it has not seen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableMode {
    /// Unknown keys are checked for nonemptiness and cached on first use.
    Lazy,
    /// All cells are enumerated up front; unknown keys are rejected.
    Exhaustive,
}

#[derive(Debug, Clone)]
struct Entry {
    representative: RationalVector,
    dimension: usize,
    tl: Option<QuasiPolynomial>,
}

/// Cache of translated enumerators keyed by canonical delta keys.
///
/// Lookups take a read lock; a miss computes outside any lock and inserts
/// idempotently, so racing threads may duplicate work but never disagree.
#[derive(Debug)]
pub struct CellTable {
    polytope: Polytope,
    arrangement: Arrangement,
    mode: TableMode,
    entries: RwLock<HashMap<CellKey, Entry>>,
}

impl CellTable {
    pub fn lazy(polytope: Polytope) -> Self {
        let arrangement = Arrangement::new(&polytope);
        CellTable { polytope, arrangement, mode: TableMode::Lazy, entries: RwLock::new(HashMap::new()) }
    }

    pub fn exhaustive(polytope: Polytope) -> Result<Self> {
        let table = CellTable::lazy(polytope);
        let cells = table.arrangement.enumerate_delta(DEFAULT_SOLVE_LIMIT)?;
        {
            let mut map = table.entries.write().expect("cell table lock poisoned");
            for c in cells {
                map.insert(c.key, Entry { representative: c.representative, dimension: c.dimension, tl: None });
            }
        }
        Ok(CellTable { mode: TableMode::Exhaustive, ..table })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn mode(&self) -> TableMode {
        self.mode
    }

    pub fn key_of(&self, v: &[Rational]) -> Result<CellKey> {
        self.arrangement.delta_key(v)
    }

    fn entry(&self, key: &CellKey) -> Result<(CellKey, Entry)> {
        if key.kind() != KeyKind::Delta {
            return Err(Error::ForeignKey);
        }
        let key = self.arrangement.canonicalize(key)?;
        if let Some(e) = self.entries.read().expect("cell table lock poisoned").get(&key) {
            return Ok((key, e.clone()));
        }
        if self.mode == TableMode::Exhaustive {
            return Err(Error::UnknownCell);
        }
        let representative = self.arrangement.representative(&key)?;
        let dimension = self.arrangement.cell_dimension(&key)?;
        let entry = Entry { representative, dimension, tl: None };
        let mut map = self.entries.write().expect("cell table lock poisoned");
        let stored = map.entry(key.clone()).or_insert(entry);
        Ok((key, stored.clone()))
    }

    /// Representative point and dimension of a cell.
    pub fn cell(&self, key: &CellKey) -> Result<Cell> {
        let (key, e) = self.entry(key)?;
        Ok(Cell { key, representative: e.representative, dimension: e.dimension })
    }

    /// `TL_{P,C}` for the cell `C`.
    pub fn tl(&self, key: &CellKey) -> Result<QuasiPolynomial> {
        let (key, e) = self.entry(key)?;
        if let Some(q) = e.tl {
            return Ok(q);
        }
        let q = crate::translate::tl(&self.polytope, &e.representative)?;
        let mut map = self.entries.write().expect("cell table lock poisoned");
        if let Some(slot) = map.get_mut(&key) {
            slot.tl.get_or_insert_with(|| q.clone());
        }
        Ok(q)
    }

    /// `TL_{P,v}` through the cell containing `v`.
    pub fn tl_at(&self, v: &[Rational]) -> Result<QuasiPolynomial> {
        self.tl(&self.key_of(v)?)
    }

    pub fn negate(&self, key: &CellKey) -> Result<CellKey> {
        let cell = self.cell(key)?;
        let neg: RationalVector = cell.representative.iter().map(|x| -x).collect();
        self.key_of(&neg)
    }

    /// Cells currently known, sorted by dimension and key. In exhaustive mode
    /// this is the whole torus.
    pub fn cells(&self) -> Vec<Cell> {
        let map = self.entries.read().expect("cell table lock poisoned");
        let mut out: Vec<Cell> = map
            .iter()
            .map(|(k, e)| Cell { key: k.clone(), representative: e.representative.clone(), dimension: e.dimension })
            .collect();
        out.sort_by(|x, y| x.dimension.cmp(&y.dimension).then_with(|| x.key.cmp(&y.key)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ivec, rvec};
    use crate::fixtures;

    fn eps(key: &CellKey) -> Vec<bool> {
        key.on_hyperplane().unwrap().to_vec()
    }

    fn canonical_of(p: &Polytope, c: &[i64]) -> CellKey {
        Arrangement::new(p).canonicalize(&CellKey::new(ivec(c), None)).unwrap()
    }

    #[test]
    fn delta_key_flags() {
        let t = fixtures::trapezoid();
        assert_eq!(eps(&delta_key(&t, &rvec(&[(1, 2), (1, 2)])).unwrap()), vec![false, false, false, true]);
        assert_eq!(eps(&delta_key(&t, &rvec(&[(0, 1), (0, 1)])).unwrap()), vec![true; 4]);
        assert_eq!(eps(&delta_key(&t, &fixtures::trapezoid_shift()).unwrap()), vec![false; 4]);
    }

    #[test]
    fn lambda_keys_match_named_regions() {
        let t = fixtures::trapezoid();
        assert_eq!(lambda_key(&t, &rvec(&[(1, 2), (1, 2)])).unwrap(), canonical_of(&t, &[1, 1, 0, 0]));
        assert_eq!(lambda_key(&t, &fixtures::trapezoid_shift()).unwrap(), canonical_of(&t, &[1, 1, 0, 1]));
        assert_eq!(lambda_key(&t, &rvec(&[(0, 1), (0, 1)])).unwrap(), canonical_of(&t, &[0, 0, 0, 0]));
    }

    #[test]
    fn keys_are_translation_invariant() {
        let t = fixtures::trapezoid();
        let v = fixtures::trapezoid_shift();
        let w: RationalVector = v.iter().zip(rvec(&[(3, 1), (-5, 1)])).map(|(a, b)| a + b).collect();
        assert_eq!(delta_key(&t, &v).unwrap(), delta_key(&t, &w).unwrap());
    }

    fn dims(cells: &[Cell]) -> Vec<usize> {
        cells.iter().map(|c| c.dimension).collect()
    }

    #[test]
    fn trapezoid_cells() {
        let t = fixtures::trapezoid();
        let cells = enumerate_cells(&t, KeyKind::Delta).unwrap();
        assert_eq!(dims(&cells), vec![0, 1, 1, 1, 2, 2]);
        assert_eq!(enumerate_cells(&t, KeyKind::Lambda).unwrap().len(), 4);
        for c in &cells {
            assert_eq!(delta_key(&t, &c.representative).unwrap(), c.key);
            assert!(c.representative.iter().all(|x| !x.is_negative() && x < &Rational::one()));
        }
    }

    #[test]
    fn rhombus_cells() {
        let q = fixtures::rhombus();
        let cells = enumerate_cells(&q, KeyKind::Delta).unwrap();
        assert_eq!(dims(&cells).iter().filter(|&&d| d == 0).count(), 4);
        assert_eq!(dims(&cells).iter().filter(|&&d| d == 1).count(), 8);
        assert_eq!(dims(&cells).iter().filter(|&&d| d == 2).count(), 4);
    }

    #[test]
    fn parallelogram_cells() {
        let cells = enumerate_cells(&fixtures::parallelogram(), KeyKind::Delta).unwrap();
        assert_eq!(dims(&cells), vec![0, 0, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2]);
    }

    #[test]
    fn negation_on_trapezoid() {
        let t = fixtures::trapezoid();
        let f1 = delta_key(&t, &rvec(&[(17, 100), (52, 100)])).unwrap();
        let f2 = delta_key(&t, &rvec(&[(34, 100), (4, 100)])).unwrap();
        assert_ne!(f1, f2);
        assert_eq!(negate_cell(&t, &f1).unwrap(), f2);
        let v1 = delta_key(&t, &rvec(&[(0, 1), (0, 1)])).unwrap();
        assert_eq!(negate_cell(&t, &v1).unwrap(), v1);
        let e3 = delta_key(&t, &rvec(&[(1, 4), (0, 1)])).unwrap();
        assert_eq!(negate_cell(&t, &e3).unwrap(), e3);
    }

    #[test]
    fn orbit_on_trapezoid() {
        let t = fixtures::trapezoid();
        let v = fixtures::trapezoid_shift();
        let orbit = orbit_classify(&t, &v, 99).unwrap();
        let v1 = delta_key(&t, &rvec(&[(0, 1), (0, 1)])).unwrap();
        let e3 = delta_key(&t, &rvec(&[(1, 4), (0, 1)])).unwrap();
        let e2 = delta_key(&t, &rvec(&[(2, 5), (2, 5)])).unwrap();
        assert_eq!(orbit[0].1, v1);
        for k in [25, 50, 75] {
            assert_eq!(orbit[k].1, e3);
        }
        for k in [20, 40, 60, 80] {
            assert_eq!(orbit[k].1, e2);
        }
        assert_eq!(orbit[1].1, delta_key(&t, &v).unwrap());
        let zero = orbit_classify(&t, &rvec(&[(0, 1), (0, 1)]), 5).unwrap();
        assert!(zero.iter().all(|(_, k)| *k == v1));
    }

    #[test]
    fn representative_rejects_empty_and_foreign_keys() {
        let t = fixtures::trapezoid();
        let arr = Arrangement::new(&t);
        // x = 0 and y = 0 force the slant value to 0, so flag 0 there is empty.
        let bad = CellKey::new(ivec(&[0, 0, 0, 1]), Some(vec![true, true, true, false]));
        assert_eq!(arr.representative(&bad), Err(Error::EmptyCell));
        let short = CellKey::new(ivec(&[0, 0]), Some(vec![true, true]));
        assert_eq!(arr.representative(&short), Err(Error::ForeignKey));
    }

    #[test]
    fn euler_characteristic_of_torus() {
        for p in [fixtures::trapezoid(), fixtures::rhombus(), fixtures::parallelogram(), fixtures::rhombus_n(3)] {
            let cells = enumerate_cells(&p, KeyKind::Delta).unwrap();
            let chi: i64 = cells.iter().map(|c| if c.dimension % 2 == 0 { 1 } else { -1 }).sum();
            assert_eq!(chi, 0);
        }
    }

    #[test]
    fn exhaustive_table_rejects_unknown() {
        let table = CellTable::exhaustive(fixtures::trapezoid()).unwrap();
        assert_eq!(table.cells().len(), 6);
        let bad = CellKey::new(ivec(&[0, 0, 0, 1]), Some(vec![true, true, true, false]));
        assert_eq!(table.cell(&bad), Err(Error::UnknownCell));
        let lazy = CellTable::lazy(fixtures::trapezoid());
        assert_eq!(lazy.cell(&bad), Err(Error::EmptyCell));
    }

    #[test]
    fn labels_follow_dimension() {
        let cells = enumerate_cells(&fixtures::trapezoid(), KeyKind::Delta).unwrap();
        assert_eq!(cell_labels(&cells), vec!["V1", "E1", "E2", "E3", "F1", "F2"]);
    }
}
