//! Planar pictures of the cell decomposition of the torus `R^2 / Z^2`.
//!
//! The fundamental square `[0, 1]^2` is cut by every hyperplane trace. Each
//! resulting convex piece, edge segment and crossing point is attached to its
//! cell through the canonical delta key, and cells are coloured by a hash of
//! their translated enumerator, so cells with equal enumerators share a colour.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use sha2::{Digest, Sha256};

use crate::cells::{cell_labels, CellKey, CellTable};
use crate::error::{Error, Result};
use crate::exact::{gcd_of, Integer, Rational, RationalVector};
use crate::io::quasi_polynomial_to_json;
use crate::polytope::Polytope;
use crate::quasipoly::QuasiPolynomial;

const SCALE: f64 = 480.0;
const MARGIN: f64 = 32.0;

/// The line `(normal, x) = level` with a primitive normal whose first
/// nonzero entry is positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Trace {
    pub normal: [Integer; 2],
    pub level: Rational,
}

impl Trace {
    fn value(&self, x: &[Rational]) -> Rational {
        Rational::from_integer(self.normal[0].clone()) * &x[0]
            + Rational::from_integer(self.normal[1].clone()) * &x[1]
            - &self.level
    }

    /// Endpoints of the trace inside the unit square, if it crosses it
    /// in more than one point.
    fn clip(&self) -> Option<[RationalVector; 2]> {
        let zero = Rational::zero();
        let one = Rational::from_integer(Integer::from(1));
        let [n0, n1] = [Rational::from_integer(self.normal[0].clone()), Rational::from_integer(self.normal[1].clone())];
        let mut hits: BTreeSet<RationalVector> = BTreeSet::new();
        for side in [&zero, &one] {
            if !n1.is_zero() {
                let y = (&self.level - &n0 * side) / &n1;
                if y >= zero && y <= one {
                    hits.insert(vec![side.clone(), y]);
                }
            }
            if !n0.is_zero() {
                let x = (&self.level - &n1 * side) / &n0;
                if x >= zero && x <= one {
                    hits.insert(vec![x, side.clone()]);
                }
            }
        }
        let first = hits.iter().next()?.clone();
        let last = hits.iter().next_back()?.clone();
        (first != last).then_some([first, last])
    }
}

fn intersection(a: &Trace, b: &Trace) -> Option<RationalVector> {
    let r = |x: &Integer| Rational::from_integer(x.clone());
    let det = r(&a.normal[0]) * r(&b.normal[1]) - r(&a.normal[1]) * r(&b.normal[0]);
    if det.is_zero() {
        return None;
    }
    let x = (&a.level * r(&b.normal[1]) - r(&a.normal[1]) * &b.level) / &det;
    let y = (r(&a.normal[0]) * &b.level - &a.level * r(&b.normal[0])) / &det;
    Some(vec![x, y])
}

fn in_unit_square(p: &[Rational]) -> bool {
    let one = Rational::from_integer(Integer::from(1));
    p.iter().all(|x| !x.is_negative() && *x <= one)
}

fn midpoint(a: &[Rational], b: &[Rational]) -> RationalVector {
    let two = Rational::from_integer(Integer::from(2));
    a.iter().zip(b).map(|(x, y)| (x + y) / &two).collect()
}

fn average(points: &[RationalVector]) -> RationalVector {
    let n = Rational::from_integer(Integer::from(points.len()));
    (0..2).map(|j| points.iter().map(|p| p[j].clone()).sum::<Rational>() / &n).collect()
}

/// Splits a convex polygon along a trace; pieces of zero area are dropped.
fn split(poly: &[RationalVector], line: &Trace) -> Vec<Vec<RationalVector>> {
    let s: Vec<Rational> = poly.iter().map(|p| line.value(p)).collect();
    if s.iter().all(|x| !x.is_negative()) || s.iter().all(|x| !x.is_positive()) {
        return vec![poly.to_vec()];
    }
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for j in 0..poly.len() {
        let k = (j + 1) % poly.len();
        if !s[j].is_negative() {
            pos.push(poly[j].clone());
        }
        if !s[j].is_positive() {
            neg.push(poly[j].clone());
        }
        if (s[j].is_positive() && s[k].is_negative()) || (s[j].is_negative() && s[k].is_positive()) {
            let t = &s[j] / (&s[j] - &s[k]);
            let cut: RationalVector = poly[j].iter().zip(&poly[k]).map(|(a, b)| a + (b - a) * &t).collect();
            pos.push(cut.clone());
            neg.push(cut);
        }
    }
    [pos, neg].into_iter().filter(|p| p.len() >= 3).collect()
}

fn reduce_mod_one(v: &[Rational]) -> RationalVector {
    v.iter().map(|x| x - x.floor()).collect()
}

fn color(tl: &QuasiPolynomial) -> String {
    let digest = Sha256::digest(quasi_polynomial_to_json(tl).as_bytes());
    let channel = |b: u8| 96 + (b as u32 * 160) / 256;
    format!("#{:02x}{:02x}{:02x}", channel(digest[0]), channel(digest[1]), channel(digest[2]))
}

/// A cell drawn as one or more pieces.
#[derive(Debug, Clone)]
pub struct Region {
    pub label: String,
    pub key: CellKey,
    pub tl: QuasiPolynomial,
    pub color: String,
    /// Polygons for faces, two-point segments for edges, one point for vertices.
    pub pieces: Vec<Vec<RationalVector>>,
}

/// All drawable data for a planar polytope and an optional orbit.
#[derive(Debug, Clone)]
pub struct CellMap {
    pub traces: Vec<(Trace, [RationalVector; 2])>,
    pub faces: Vec<Region>,
    pub edges: Vec<Region>,
    pub vertices: Vec<Region>,
    /// `(k, [k·v])` for `k = 0..=k_max`.
    pub orbit: Vec<(u64, RationalVector)>,
}

fn traces(p: &Polytope) -> Vec<Trace> {
    let mut out: BTreeSet<Trace> = BTreeSet::new();
    for a in p.normals() {
        let g = gcd_of(&a);
        let mut n: Vec<Integer> = a.iter().map(|x| x / &g).collect();
        if n.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            n.iter_mut().for_each(|x| *x = -x.clone());
        }
        let corners = [Integer::zero(), n[0].clone(), n[1].clone(), &n[0] + &n[1]];
        let lo = corners.iter().min().expect("four corners") * &g;
        let hi = corners.iter().max().expect("four corners") * &g;
        let mut k = lo;
        while k <= hi {
            out.insert(Trace { normal: [n[0].clone(), n[1].clone()], level: Rational::new(k.clone(), g.clone()) });
            k += 1;
        }
    }
    out.into_iter().collect()
}

impl CellMap {
    /// Fails unless `p` is planar.
    pub fn new(p: &Polytope, v: Option<&[Rational]>, k_max: u64) -> Result<Self> {
        if p.dimension() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: p.dimension() });
        }
        if let Some(v) = v {
            if v.len() != 2 {
                return Err(Error::DimensionMismatch { expected: 2, found: v.len() });
            }
        }
        let table = CellTable::exhaustive(p.clone())?;
        let cells = table.cells();
        let labels: BTreeMap<CellKey, String> =
            cells.iter().map(|c| c.key.clone()).zip(cell_labels(&cells)).collect();
        let lines = traces(p);

        let one = Rational::from_integer(Integer::from(1));
        let zero = Rational::zero();
        let square = vec![
            vec![zero.clone(), zero.clone()],
            vec![one.clone(), zero.clone()],
            vec![one.clone(), one.clone()],
            vec![zero.clone(), one.clone()],
        ];
        let mut polygons = vec![square];
        for line in &lines {
            polygons = polygons.iter().flat_map(|poly| split(poly, line)).collect();
        }
        let mut face_pieces: BTreeMap<CellKey, Vec<Vec<RationalVector>>> = BTreeMap::new();
        for poly in polygons {
            let key = table.key_of(&average(&poly))?;
            face_pieces.entry(key).or_default().push(poly);
        }

        let segments: Vec<(Trace, [RationalVector; 2])> =
            lines.iter().filter_map(|l| l.clip().map(|s| (l.clone(), s))).collect();
        let mut edge_pieces: BTreeMap<CellKey, Vec<Vec<RationalVector>>> = BTreeMap::new();
        for (line, [a, b]) in &segments {
            let mut cuts: BTreeSet<RationalVector> = [a.clone(), b.clone()].into_iter().collect();
            cuts.extend(lines.iter().filter_map(|o| intersection(line, o)).filter(|x| in_unit_square(x)));
            let cuts: Vec<RationalVector> = cuts.into_iter().collect();
            for w in cuts.windows(2) {
                let key = table.key_of(&midpoint(&w[0], &w[1]))?;
                edge_pieces.entry(key).or_default().push(w.to_vec());
            }
        }

        let mut vertex_keys: BTreeSet<CellKey> = BTreeSet::new();
        for (i, a) in lines.iter().enumerate() {
            for b in &lines[i + 1..] {
                if let Some(x) = intersection(a, b).filter(|x| in_unit_square(x)) {
                    vertex_keys.insert(table.key_of(&x)?);
                }
            }
        }
        let vertex_pieces: BTreeMap<CellKey, Vec<Vec<RationalVector>>> = vertex_keys
            .into_iter()
            .map(|k| Ok((k.clone(), vec![vec![table.cell(&k)?.representative]])))
            .collect::<Result<_>>()?;

        let regions = |pieces: BTreeMap<CellKey, Vec<Vec<RationalVector>>>, dim: usize| -> Result<Vec<Region>> {
            let mut out = Vec::new();
            for (key, pieces) in pieces {
                let cell = table.cell(&key)?;
                debug_assert_eq!(cell.dimension, dim);
                let tl = table.tl(&key)?;
                out.push(Region {
                    label: labels.get(&key).cloned().unwrap_or_default(),
                    color: color(&tl),
                    key,
                    tl,
                    pieces,
                });
            }
            out.sort_by(|x, y| x.label.cmp(&y.label));
            Ok(out)
        };

        let orbit = match v {
            Some(v) => (0..=k_max)
                .map(|k| {
                    let kk = Rational::from_integer(Integer::from(k));
                    (k, reduce_mod_one(&v.iter().map(|x| x * &kk).collect::<Vec<_>>()))
                })
                .collect(),
            None => Vec::new(),
        };

        Ok(CellMap {
            traces: segments,
            faces: regions(face_pieces, 2)?,
            edges: regions(edge_pieces, 1)?,
            vertices: regions(vertex_pieces, 0)?,
            orbit,
        })
    }

    pub fn to_svg(&self) -> String {
        let size = SCALE + 2.0 * MARGIN;
        let xy = |p: &[Rational]| {
            let x = MARGIN + SCALE * p[0].to_f64().unwrap_or(0.0);
            let y = MARGIN + SCALE * (1.0 - p[1].to_f64().unwrap_or(0.0));
            (x, y)
        };
        let path = |pieces: &[Vec<RationalVector>], close: bool| {
            let mut d = String::new();
            for piece in pieces {
                for (i, p) in piece.iter().enumerate() {
                    let (x, y) = xy(p);
                    let _ = write!(d, "{}{:.2},{:.2} ", if i == 0 { 'M' } else { 'L' }, x, y);
                }
                if close {
                    d.push_str("Z ");
                }
            }
            d.trim_end().to_string()
        };

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(
            s,
            r#"<rect class="frame" x="{MARGIN}" y="{MARGIN}" width="{SCALE}" height="{SCALE}" fill="none" stroke="black"/>"#
        );
        for r in &self.faces {
            let _ = writeln!(
                s,
                r#"<path class="face" data-cell="{}" data-tl="{}" fill="{}" stroke="none" d="{}"/>"#,
                r.label,
                r.tl.to_string().replace('\n', "; "),
                r.color,
                path(&r.pieces, true)
            );
        }
        for (_, [a, b]) in &self.traces {
            let ((x0, y0), (x1, y1)) = (xy(a), xy(b));
            let _ = writeln!(
                s,
                r##"<polyline class="trace" points="{x0:.2},{y0:.2} {x1:.2},{y1:.2}" fill="none" stroke="#888888" stroke-width="0.5"/>"##
            );
        }
        for r in &self.edges {
            let _ = writeln!(
                s,
                r#"<path class="edge" data-cell="{}" stroke="{}" stroke-width="3" fill="none" d="{}"/>"#,
                r.label,
                r.color,
                path(&r.pieces, false)
            );
        }
        for r in &self.vertices {
            let (x, y) = xy(&r.pieces[0][0]);
            let _ = writeln!(
                s,
                r#"<circle class="vertex" data-cell="{}" cx="{x:.2}" cy="{y:.2}" r="5" fill="{}" stroke="black"/>"#,
                r.label, r.color
            );
        }
        for (k, p) in &self.orbit {
            let (x, y) = xy(p);
            let _ = writeln!(s, r#"<circle class="orbit" cx="{x:.2}" cy="{y:.2}" r="2" fill="black"/>"#);
            let _ = writeln!(
                s,
                r#"<text class="orbit-label" x="{:.2}" y="{:.2}" font-size="8">{k}</text>"#,
                x + 3.0,
                y - 3.0
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

/// SVG picture of the torus cells of a planar polytope with the orbit `[k·v]`.
pub fn render(p: &Polytope, v: Option<&[Rational]>, k_max: u64) -> Result<String> {
    Ok(CellMap::new(p, v, k_max)?.to_svg())
}
