//! Full-dimensional rational polytopes: vertices, the irredundant primitive
//! half-space description, denominator, exact volume, projections and
//! central symmetry.

use std::collections::BTreeSet;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    denominator_of, dot_int_rat, lcm_of, primitive, primitive_from_rational, Integer, IntegerVector, Rational,
    RationalVector,
};
use crate::linalg::{self, Matrix};

/// The half-space `(normal, x) ≥ offset`, with `(normal, offset)` jointly primitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: IntegerVector,
    pub offset: Integer,
}

impl Halfspace {
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        dot_int_rat(&self.normal, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.evaluate(x) >= Rational::from_integer(self.offset.clone())
    }

    pub fn is_tight(&self, x: &[Rational]) -> bool {
        self.evaluate(x) == Rational::from_integer(self.offset.clone())
    }
}

/// Irredundant inner-normal description `P = ⋂ { x : (a_i, x) ≥ b_i }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetDescription {
    halfspaces: Vec<Halfspace>,
}

impl FacetDescription {
    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn len(&self) -> usize {
        self.halfspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halfspaces.is_empty()
    }

    /// The normal set `N(P)` in facet order.
    pub fn normals(&self) -> Vec<IntegerVector> {
        self.halfspaces.iter().map(|h| h.normal.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub index: usize,
    pub halfspace: Halfspace,
    pub vertices: Vec<RationalVector>,
    /// Volume measured against the lattice `H ∩ Z^d` of the facet hyperplane.
    pub relative_volume: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSymmetry {
    pub center: RationalVector,
    /// `pairing[i]` is the index of the vertex `2·center − vertices[i]`.
    pub pairing: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dimension: usize,
    vertices: Vec<RationalVector>,
    facets: FacetDescription,
    facet_vertices: Vec<Vec<usize>>,
    denominator: Integer,
    volume: Rational,
}

impl Polytope {
    /// Convex hull of `points`, which must affinely span `R^d`.
    pub fn from_vertices(points: &[RationalVector]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyInput)?;
        let dimension = first.len();
        if dimension == 0 {
            return Err(Error::NotFullDimensional { dimension });
        }
        if let Some(bad) = points.iter().find(|p| p.len() != dimension) {
            return Err(Error::DimensionMismatch { expected: dimension, found: bad.len() });
        }
        let points: Vec<RationalVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if linalg::affine_dimension(&points) != Some(dimension) {
            return Err(Error::NotFullDimensional { dimension });
        }

        let mut found: BTreeSet<Halfspace> = BTreeSet::new();
        for subset in combinations(points.len(), dimension) {
            let base = &points[subset[0]];
            let diffs: Matrix = subset[1..].iter().map(|&i| linalg::sub(&points[i], base)).collect();
            let ns = linalg::nullspace(&diffs, dimension);
            if ns.len() != 1 {
                continue;
            }
            let mut normal = ns.into_iter().next().unwrap();
            let level = linalg::dot(&normal, base);
            let sides: Vec<Rational> = points.iter().map(|p| linalg::dot(&normal, p) - &level).collect();
            let all_nonneg = sides.iter().all(|s| !s.is_negative());
            let all_nonpos = sides.iter().all(|s| !s.is_positive());
            if !(all_nonneg || all_nonpos) {
                continue;
            }
            if !all_nonneg {
                normal.iter_mut().for_each(|x| *x = -x.clone());
            }
            let level = linalg::dot(&normal, base);
            let mut joint = normal;
            joint.push(level);
            let prim = primitive_from_rational(&joint)?;
            let (a, b) = prim.split_at(dimension);
            found.insert(Halfspace { normal: a.to_vec(), offset: b[0].clone() });
        }
        let mut halfspaces: Vec<Halfspace> = found.into_iter().collect();
        halfspaces.reverse();

        let vertices: Vec<RationalVector> = points
            .into_iter()
            .filter(|p| {
                let tight: Matrix = halfspaces
                    .iter()
                    .filter(|h| h.is_tight(p))
                    .map(|h| h.normal.iter().map(|x| Rational::from_integer(x.clone())).collect())
                    .collect();
                linalg::rank(&tight) == dimension
            })
            .collect();
        let facet_vertices: Vec<Vec<usize>> = halfspaces
            .iter()
            .map(|h| (0..vertices.len()).filter(|&i| h.is_tight(&vertices[i])).collect())
            .collect();
        let denominator = lcm_of(vertices.iter().map(|v| denominator_of(v)).collect::<Vec<_>>().iter());

        let mut polytope = Polytope {
            dimension,
            vertices,
            facets: FacetDescription { halfspaces },
            facet_vertices,
            denominator,
            volume: Rational::zero(),
        };
        polytope.volume = polytope.triangulated_volume();
        Ok(polytope)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn facet_description(&self) -> &FacetDescription {
        &self.facets
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        self.facets.halfspaces()
    }

    pub fn normals(&self) -> Vec<IntegerVector> {
        self.facets.normals()
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// Vertex indices lying on facet `i`.
    pub fn facet_vertex_indices(&self, i: usize) -> &[usize] {
        &self.facet_vertices[i]
    }

    /// Least `k > 0` with `kP` integral.
    pub fn denominator(&self) -> &Integer {
        &self.denominator
    }

    pub fn period(&self) -> u64 {
        self.denominator.to_u64().expect("denominator fits in u64")
    }

    pub fn volume(&self) -> &Rational {
        &self.volume
    }

    pub fn is_lattice(&self) -> bool {
        self.denominator.is_one()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.halfspaces().iter().all(|h| h.contains(x))
    }

    pub fn contains_strictly(&self, x: &[Rational]) -> bool {
        self.halfspaces().iter().all(|h| h.evaluate(x) > Rational::from_integer(h.offset.clone()))
    }

    pub fn centroid(&self) -> RationalVector {
        let n = Rational::from_integer(Integer::from(self.vertices.len()));
        (0..self.dimension)
            .map(|j| self.vertices.iter().fold(Rational::zero(), |acc, v| acc + &v[j]) / &n)
            .collect()
    }

    pub fn facet(&self, i: usize) -> Facet {
        let halfspace = self.halfspaces()[i].clone();
        let vertices: Vec<RationalVector> = self.facet_vertices[i].iter().map(|&j| self.vertices[j].clone()).collect();
        let relative_volume = relative_volume(&halfspace.normal, &vertices);
        Facet { index: i, halfspace, vertices, relative_volume }
    }

    pub fn facets(&self) -> Vec<Facet> {
        (0..self.num_facets()).map(|i| self.facet(i)).collect()
    }

    pub fn translate(&self, w: &[Rational]) -> Result<Polytope> {
        let moved: Vec<RationalVector> = self.vertices.iter().map(|v| linalg::add(v, w)).collect();
        Polytope::from_vertices(&moved)
    }

    /// Image under the integer matrix `g` acting on column vectors.
    pub fn transform(&self, g: &[IntegerVector]) -> Result<Polytope> {
        let moved: Vec<RationalVector> = self
            .vertices
            .iter()
            .map(|v| g.iter().map(|row| dot_int_rat(row, v)).collect())
            .collect();
        Polytope::from_vertices(&moved)
    }

    pub fn negate(&self) -> Polytope {
        let neg: Vec<RationalVector> = self.vertices.iter().map(|v| v.iter().map(|x| -x).collect()).collect();
        Polytope::from_vertices(&neg).expect("negation preserves full dimension")
    }

    /// `π_i(P)`: drop coordinate `i` (0-based) and rebuild the hull.
    pub fn project(&self, i: usize) -> Result<Polytope> {
        if self.dimension < 2 {
            return Err(Error::DimensionTooSmall { required: 2 });
        }
        if i >= self.dimension {
            return Err(Error::IndexOutOfRange { index: i, dimension: self.dimension });
        }
        let pts: Vec<RationalVector> = self
            .vertices
            .iter()
            .map(|v| v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect())
            .collect();
        Polytope::from_vertices(&pts)
    }

    /// Center `c` with `2c − v` a vertex for every vertex `v`, if any.
    pub fn central_symmetry(&self) -> Option<CentralSymmetry> {
        let center = self.centroid();
        let two = Rational::from_integer(Integer::from(2));
        let pairing: Option<Vec<usize>> = self
            .vertices
            .iter()
            .map(|v| {
                let mirror: RationalVector = center.iter().zip(v).map(|(c, x)| &two * c - x).collect();
                self.vertices.iter().position(|w| *w == mirror)
            })
            .collect();
        pairing.map(|pairing| CentralSymmetry { center, pairing })
    }

    /// Vertex sets of the `(k−1)`-faces of the `k`-face spanned by `face`.
    fn subfaces(&self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for fv in &self.facet_vertices {
            let s: Vec<usize> = face.iter().copied().filter(|i| fv.contains(i)).collect();
            if s.len() < k || s.len() == face.len() {
                continue;
            }
            let pts: Vec<RationalVector> = s.iter().map(|&i| self.vertices[i].clone()).collect();
            if linalg::affine_dimension(&pts) == Some(k - 1) {
                out.insert(s);
            }
        }
        out.into_iter().collect()
    }

    /// Pulling triangulation of a `k`-face from its smallest vertex index.
    fn triangulate(&self, face: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![face[0]]];
        }
        let apex = *face.iter().min().expect("nonempty face");
        let mut simplices = Vec::new();
        for sub in self.subfaces(face, k) {
            if sub.contains(&apex) {
                continue;
            }
            for mut s in self.triangulate(&sub, k - 1) {
                s.insert(0, apex);
                simplices.push(s);
            }
        }
        simplices
    }

    fn triangulated_volume(&self) -> Rational {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let factorial: Integer = (1..=self.dimension).map(Integer::from).product();
        self.triangulate(&all, self.dimension)
            .iter()
            .map(|s| {
                let base = &self.vertices[s[0]];
                let m: Matrix = s[1..].iter().map(|&i| linalg::sub(&self.vertices[i], base)).collect();
                linalg::determinant(&m).abs()
            })
            .fold(Rational::zero(), |acc, x| acc + x)
            / Rational::from_integer(factorial)
    }
}

/// Relative volume of the polytope spanned by `vertices` inside the hyperplane
/// with integer normal `normal`, measured in a basis of the hyperplane's
/// integer lattice.
pub fn relative_volume(normal: &[Integer], vertices: &[RationalVector]) -> Rational {
    let d = normal.len();
    if d == 1 {
        return Rational::one();
    }
    let basis = hyperplane_lattice_basis(normal);
    // d equations, d−1 unknowns: sum_j y_j basis_j = x − x0.
    let m: Matrix = (0..d)
        .map(|row| basis.iter().map(|b| Rational::from_integer(b[row].clone())).collect())
        .collect();
    let base = &vertices[0];
    let coords: Vec<RationalVector> = vertices
        .iter()
        .map(|x| {
            let rhs = linalg::sub(x, base);
            linalg::solve_affine(&m, &rhs, d - 1).expect("facet vertices lie in the hyperplane").0
        })
        .collect();
    Polytope::from_vertices(&coords).expect("facet is full-dimensional in its hyperplane").volume
}

/// A basis of `{ x ∈ Z^d : (a, x) = 0 }`, from unimodular column operations
/// reducing `a` to a single nonzero entry.
pub fn hyperplane_lattice_basis(normal: &[Integer]) -> Vec<IntegerVector> {
    let d = normal.len();
    let a = primitive(normal).expect("facet normal is nonzero");
    let mut row = a;
    let mut cols: Vec<IntegerVector> = (0..d)
        .map(|j| (0..d).map(|i| if i == j { Integer::one() } else { Integer::zero() }).collect())
        .collect();
    loop {
        let nonzero: Vec<usize> = (0..d).filter(|&j| !row[j].is_zero()).collect();
        if nonzero.len() <= 1 {
            let keep = nonzero[0];
            return cols.into_iter().enumerate().filter(|&(j, _)| j != keep).map(|(_, c)| c).collect();
        }
        let p = *nonzero.iter().min_by_key(|&&j| row[j].abs()).unwrap();
        for &j in &nonzero {
            if j == p {
                continue;
            }
            let q = num_integer::Integer::div_floor(&row[j], &row[p]);
            row[j] = &row[j] - &q * &row[p];
            let cp = cols[p].clone();
            for (x, y) in cols[j].iter_mut().zip(&cp) {
                *x -= &q * y;
            }
        }
    }
}

/// All increasing `k`-subsets of `0..n`.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ivec, rat, rvec};
    use crate::fixtures;

    fn hs(a: &[i64], b: i64) -> Halfspace {
        Halfspace { normal: ivec(a), offset: int(b) }
    }

    fn shoelace(vs: &[RationalVector]) -> Rational {
        // Sort by angle around the centroid using exact cross products.
        let n = Rational::from_integer(Integer::from(vs.len()));
        let cx = vs.iter().fold(Rational::zero(), |a, v| a + &v[0]) / &n;
        let cy = vs.iter().fold(Rational::zero(), |a, v| a + &v[1]) / &n;
        let mut pts: Vec<(f64, RationalVector)> = vs
            .iter()
            .map(|v| {
                let dx = (&v[0] - &cx).to_f64().unwrap();
                let dy = (&v[1] - &cy).to_f64().unwrap();
                (dy.atan2(dx), v.clone())
            })
            .collect();
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut twice = Rational::zero();
        for i in 0..pts.len() {
            let p = &pts[i].1;
            let q = &pts[(i + 1) % pts.len()].1;
            twice += &p[0] * &q[1] - &q[0] * &p[1];
        }
        twice.abs() / rat(2, 1)
    }

    #[test]
    fn construction_examples() {
        let t = fixtures::trapezoid();
        assert_eq!(t.vertices().len(), 4);
        assert_eq!(t.denominator(), &int(1));
        let q = fixtures::rhombus();
        assert_eq!(q.denominator(), &int(2));
        let p = fixtures::parallelogram();
        assert_eq!(p.denominator(), &int(1));
        let s = Polytope::from_vertices(&[rvec(&[(0, 1), (0, 1)]), rvec(&[(1, 3), (0, 1)]), rvec(&[(0, 1), (1, 5)])]).unwrap();
        assert_eq!(s.denominator(), &int(15));
    }

    #[test]
    fn redundant_points_removed() {
        let p = Polytope::from_vertices(&[
            rvec(&[(0, 1), (0, 1)]),
            rvec(&[(2, 1), (0, 1)]),
            rvec(&[(0, 1), (2, 1)]),
            rvec(&[(2, 1), (2, 1)]),
            rvec(&[(1, 1), (1, 1)]),
            rvec(&[(1, 1), (0, 1)]),
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.volume(), &rat(4, 1));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Polytope::from_vertices(&[]), Err(Error::EmptyInput));
        let collinear = [rvec(&[(0, 1), (0, 1)]), rvec(&[(1, 1), (1, 1)]), rvec(&[(2, 1), (2, 1)])];
        assert_eq!(Polytope::from_vertices(&collinear), Err(Error::NotFullDimensional { dimension: 2 }));
        let ragged = [rvec(&[(0, 1), (0, 1)]), rvec(&[(1, 1)])];
        assert!(matches!(Polytope::from_vertices(&ragged), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn facet_descriptions() {
        let t = fixtures::trapezoid();
        assert_eq!(t.normals(), vec![ivec(&[1, 0]), ivec(&[0, 1]), ivec(&[0, -1]), ivec(&[-1, 1])]);
        assert_eq!(t.halfspaces()[2], hs(&[0, -1], -1));
        assert_eq!(t.halfspaces()[3], hs(&[-1, 1], -1));

        let q = fixtures::rhombus();
        let expected = vec![hs(&[1, 2], -1), hs(&[1, -2], -1), hs(&[-1, 2], -1), hs(&[-1, -2], -1)];
        assert_eq!(q.halfspaces(), expected.as_slice());

        let square = fixtures::unit_square();
        let got: BTreeSet<Halfspace> = square.halfspaces().iter().cloned().collect();
        let want: BTreeSet<Halfspace> =
            [hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-1, 0], -1), hs(&[0, -1], -1)].into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn non_primitive_normal_from_joint_primitivity() {
        // [0, 1/2]: −2x ≥ −1 keeps (a, b) jointly primitive while a = −2.
        let seg = Polytope::from_vertices(&[rvec(&[(0, 1)]), rvec(&[(1, 2)])]).unwrap();
        assert!(seg.halfspaces().contains(&hs(&[-2], -1)));
    }

    #[test]
    fn volumes() {
        assert_eq!(fixtures::trapezoid().volume(), &rat(3, 2));
        assert_eq!(fixtures::rhombus().volume(), &rat(1, 1));
        assert_eq!(fixtures::parallelogram().volume(), &rat(3, 1));
        for p in [fixtures::trapezoid(), fixtures::rhombus(), fixtures::parallelogram()] {
            assert_eq!(p.volume(), &shoelace(p.vertices()));
        }
        let cube = Polytope::from_vertices(
            &(0..8).map(|m| (0..3).map(|b| rat((m >> b) & 1, 1)).collect()).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(cube.volume(), &rat(1, 1));
        assert_eq!(cube.num_facets(), 6);
        let simplex = Polytope::from_vertices(&[
            rvec(&[(0, 1), (0, 1), (0, 1)]),
            rvec(&[(1, 1), (0, 1), (0, 1)]),
            rvec(&[(0, 1), (1, 1), (0, 1)]),
            rvec(&[(0, 1), (0, 1), (1, 1)]),
        ])
        .unwrap();
        assert_eq!(simplex.volume(), &rat(1, 6));
    }

    #[test]
    fn segment_sanity() {
        let seg = Polytope::from_vertices(&[rvec(&[(-1, 3)]), rvec(&[(5, 4)])]).unwrap();
        assert_eq!(seg.denominator(), &int(12));
        assert_eq!(seg.volume(), &rat(19, 12));
    }

    #[test]
    fn relative_volumes_of_trapezoid_edges() {
        let t = fixtures::trapezoid();
        let by_normal = |a: &[i64]| t.facets().into_iter().find(|f| f.halfspace.normal == ivec(a)).unwrap();
        assert_eq!(by_normal(&[0, -1]).relative_volume, rat(2, 1));
        assert_eq!(by_normal(&[-1, 1]).relative_volume, rat(1, 1));
        assert_eq!(by_normal(&[0, 1]).relative_volume, rat(1, 1));
        assert_eq!(by_normal(&[1, 0]).relative_volume, rat(1, 1));
    }

    #[test]
    fn relative_volume_in_three_dimensions() {
        // Facet x + y + z = 1 of the standard simplex: the triangle has normalized area 1/2.
        let simplex = Polytope::from_vertices(&[
            rvec(&[(0, 1), (0, 1), (0, 1)]),
            rvec(&[(1, 1), (0, 1), (0, 1)]),
            rvec(&[(0, 1), (1, 1), (0, 1)]),
            rvec(&[(0, 1), (0, 1), (1, 1)]),
        ])
        .unwrap();
        let f = simplex.facets().into_iter().find(|f| f.halfspace.normal == ivec(&[-1, -1, -1])).unwrap();
        assert_eq!(f.relative_volume, rat(1, 2));
    }

    #[test]
    fn projections() {
        let t = fixtures::trapezoid();
        let px = t.project(1).unwrap();
        assert_eq!(px.vertices(), &[rvec(&[(0, 1)]), rvec(&[(2, 1)])]);
        let py = t.project(0).unwrap();
        assert_eq!(py.vertices(), &[rvec(&[(0, 1)]), rvec(&[(1, 1)])]);
        let qy = fixtures::rhombus().project(0).unwrap();
        assert_eq!(qy.vertices(), &[rvec(&[(-1, 2)]), rvec(&[(1, 2)])]);
        assert_eq!(t.project(2), Err(Error::IndexOutOfRange { index: 2, dimension: 2 }));
        assert_eq!(px.project(0), Err(Error::DimensionTooSmall { required: 2 }));
    }

    #[test]
    fn central_symmetries() {
        let q = fixtures::rhombus();
        let cs = q.central_symmetry().unwrap();
        assert_eq!(cs.center, rvec(&[(0, 1), (0, 1)]));
        let i = q.vertices().iter().position(|v| *v == rvec(&[(1, 1), (0, 1)])).unwrap();
        assert_eq!(q.vertices()[cs.pairing[i]], rvec(&[(-1, 1), (0, 1)]));
        assert!(fixtures::trapezoid().central_symmetry().is_none());
        assert_eq!(fixtures::parallelogram().central_symmetry().unwrap().center, rvec(&[(1, 1), (3, 2)]));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
    }
}
