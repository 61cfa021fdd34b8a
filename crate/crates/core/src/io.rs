//! JSON documents for polytopes, quasi-polynomials and cell listings.
//!
//! Rationals travel as strings (`"3/2"`, `"-1"`) so that no precision is
//! lost. A polytope document looks like
//!
//! ```json
//! {"dimension": 2, "vertices": [["0", "0"], ["1", "0"], ["2", "1"], ["0", "1"]]}
//! ```

use serde::{Deserialize, Serialize};

use crate::cells::Cell;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rational, RationalVector};
use crate::polytope::Polytope;
use crate::quasipoly::{Polynomial, QuasiPolynomial};

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(Rational::to_string).collect()
}

fn rationals(v: &[String]) -> Result<RationalVector> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub dimension: usize,
    pub vertices: Vec<Vec<String>>,
}

impl PolytopeDocument {
    pub fn from_polytope(p: &Polytope) -> Self {
        PolytopeDocument { dimension: p.dimension(), vertices: p.vertices().iter().map(|v| strings(v)).collect() }
    }

    pub fn to_polytope(&self) -> Result<Polytope> {
        let points = self
            .vertices
            .iter()
            .map(|row| {
                if row.len() != self.dimension {
                    return Err(Error::Parse(format!(
                        "vertex has {} coordinates, document declares dimension {}",
                        row.len(),
                        self.dimension
                    )));
                }
                rationals(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Polytope::from_vertices(&points)
    }
}

pub fn parse_polytope(text: &str) -> Result<Polytope> {
    let doc: PolytopeDocument = serde_json::from_str(text).map_err(json_error)?;
    doc.to_polytope()
}

/// Vertices in canonical order, one vertex per line.
pub fn polytope_to_json(p: &Polytope) -> String {
    let doc = PolytopeDocument::from_polytope(p);
    let rows: Vec<String> = doc
        .vertices
        .iter()
        .map(|v| format!("    {}", serde_json::to_string(v).expect("strings serialize")))
        .collect();
    format!("{{\n  \"dimension\": {},\n  \"vertices\": [\n{}\n  ]\n}}\n", doc.dimension, rows.join(",\n"))
}

/// Constituent `k` is the coefficient list of `f_k`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomialDocument {
    pub period: u64,
    pub constituents: Vec<Vec<String>>,
}

impl QuasiPolynomialDocument {
    pub fn from_quasi_polynomial(f: &QuasiPolynomial) -> Self {
        QuasiPolynomialDocument {
            period: f.period(),
            constituents: f.constituents().iter().map(|c| strings(c.coefficients())).collect(),
        }
    }

    pub fn to_quasi_polynomial(&self) -> Result<QuasiPolynomial> {
        if self.constituents.is_empty() || self.constituents.len() as u64 != self.period {
            return Err(Error::Parse(format!(
                "period {} but {} constituents",
                self.period,
                self.constituents.len()
            )));
        }
        let polys = self.constituents.iter().map(|c| rationals(c).map(Polynomial::new)).collect::<Result<Vec<_>>>()?;
        Ok(QuasiPolynomial::new(polys))
    }
}

pub fn parse_quasi_polynomial(text: &str) -> Result<QuasiPolynomial> {
    let doc: QuasiPolynomialDocument = serde_json::from_str(text).map_err(json_error)?;
    doc.to_quasi_polynomial()
}

pub fn quasi_polynomial_to_json(f: &QuasiPolynomial) -> String {
    serde_json::to_string(&QuasiPolynomialDocument::from_quasi_polynomial(f)).expect("strings serialize")
}

/// A residue class group in a quasi-polynomial listing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub residues: Vec<u64>,
    pub polynomial: String,
}

/// A quasi-polynomial together with its grouped display.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomialReport {
    pub period: u64,
    pub constituents: Vec<Vec<String>>,
    pub minimal_period: u64,
    pub classes: Vec<ClassRecord>,
}

impl QuasiPolynomialReport {
    pub fn new(f: &QuasiPolynomial) -> Self {
        let doc = QuasiPolynomialDocument::from_quasi_polynomial(f);
        let classes = f
            .classes()
            .into_iter()
            .map(|(residues, poly)| ClassRecord { residues, polynomial: poly.to_string() })
            .collect();
        QuasiPolynomialReport {
            period: doc.period,
            constituents: doc.constituents,
            minimal_period: f.minimal_period(),
            classes,
        }
    }
}

/// One line of a cell listing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellRecord {
    pub label: String,
    pub ceilings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub on_hyperplane: Option<Vec<bool>>,
    pub dimension: usize,
    pub representative: Vec<String>,
    pub tl: QuasiPolynomialDocument,
}

impl CellRecord {
    pub fn new(label: String, cell: &Cell, tl: &QuasiPolynomial) -> Self {
        CellRecord {
            label,
            ceilings: cell.key.ceilings().iter().map(|c| c.to_string()).collect(),
            on_hyperplane: cell.key.on_hyperplane().map(<[bool]>::to_vec),
            dimension: cell.dimension,
            representative: strings(&cell.representative),
            tl: QuasiPolynomialDocument::from_quasi_polynomial(tl),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::translate::ehr_translated;

    #[test]
    fn polytope_round_trip() {
        for p in [fixtures::trapezoid(), fixtures::rhombus(), fixtures::parallelogram(), fixtures::unit_segment()] {
            let text = polytope_to_json(&p);
            let back = parse_polytope(&text).unwrap();
            assert_eq!(back, p);
            assert_eq!(polytope_to_json(&back), text);
        }
    }

    #[test]
    fn polytope_accepts_integers_and_fractions() {
        let p = parse_polytope(r#"{"dimension":2,"vertices":[["-1","0"],["1/1","0"],["0","1/2"],["0","-2/4"]]}"#)
            .unwrap();
        assert_eq!(p, fixtures::rhombus());
    }

    #[test]
    fn malformed_documents_are_parse_errors() {
        let bad = [
            "not json",
            r#"{"dimension":2}"#,
            r#"{"dimension":2,"vertices":[["0","0","0"]]}"#,
            r#"{"dimension":1,"vertices":[["x"],["1"]]}"#,
        ];
        for text in bad {
            assert!(matches!(parse_polytope(text), Err(Error::Parse(_))), "{text}");
        }
        let flat = r#"{"dimension":2,"vertices":[["0","0"],["1","1"],["2","2"]]}"#;
        assert!(matches!(parse_polytope(flat), Err(Error::NotFullDimensional { .. })));
    }

    #[test]
    fn quasi_polynomial_round_trip() {
        let f = ehr_translated(&fixtures::rhombus(), &crate::exact::rvec(&[(1, 8), (1, 8)])).unwrap();
        let text = quasi_polynomial_to_json(&f);
        assert_eq!(parse_quasi_polynomial(&text).unwrap(), f);
        let report = serde_json::to_string(&QuasiPolynomialReport::new(&f)).unwrap();
        assert_eq!(parse_quasi_polynomial(&report).unwrap(), f);
    }

    #[test]
    fn quasi_polynomial_shape_is_checked() {
        assert!(parse_quasi_polynomial(r#"{"period":2,"constituents":[["1"]]}"#).is_err());
        assert!(parse_quasi_polynomial(r#"{"period":0,"constituents":[]}"#).is_err());
        let f = parse_quasi_polynomial(r#"{"period":1,"constituents":[["1","5/2","3/2"]]}"#).unwrap();
        assert_eq!(f.constituent(0).to_string(), "3/2t^2 + 5/2t + 1");
    }
}
