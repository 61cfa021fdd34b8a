//! Property tests for the invariants of the library.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_ehrhart::cells::{Arrangement, CellTable};
use toric_ehrhart::counting::{count, count_interior};
use toric_ehrhart::exact::{rat, Integer, Rational, RationalVector};
use toric_ehrhart::hilbert::hilbert_numerator;
use toric_ehrhart::io::{parse_polytope, parse_quasi_polynomial, polytope_to_json, quasi_polynomial_to_json};
use toric_ehrhart::polytope::Polytope;
use toric_ehrhart::quasipoly::{Polynomial, QuasiPolynomial};
use toric_ehrhart::theorems::minkowski_data;
use toric_ehrhart::translate::{ehr_translated, tl};

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rational(), 0..=max_degree + 1).prop_map(Polynomial::new)
}

fn quasi_polynomial() -> impl Strategy<Value = QuasiPolynomial> {
    (1usize..=4, 0usize..=3).prop_flat_map(|(q, d)| {
        prop::collection::vec(polynomial(d), q).prop_map(QuasiPolynomial::new)
    })
}

/// A random small polytope, driven by a seed so shrinking stays cheap.
fn polytope(d: usize, max_den: i64) -> impl Strategy<Value = Polytope> {
    any::<u64>().prop_map(move |seed| common::random_polytope(&mut ChaCha8Rng::seed_from_u64(seed), d, max_den, 6))
}

fn point(d: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec(rational(), d)
}

fn integer_point(d: usize) -> impl Strategy<Value = RationalVector> {
    prop::collection::vec((-3i64..=3).prop_map(|n| rat(n, 1)), d)
}

fn neg(v: &[Rational]) -> RationalVector {
    v.iter().map(|x| -x).collect()
}

fn add(a: &[Rational], b: &[Rational]) -> RationalVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fit_recovers_quasi_polynomial(f in quasi_polynomial()) {
        let q = f.period();
        let d = f.degree().unwrap_or(0);
        let samples: Vec<Rational> = (0..(d as u64 + 3) * q).map(|t| f.eval(t as i64)).collect();
        let g = QuasiPolynomial::fit(&samples, q, d).unwrap();
        prop_assert!(g.same_function(&f));
    }

    #[test]
    fn constituents_are_indexed_modulo_period(f in quasi_polynomial(), k in -50i64..50, m in -5i64..5) {
        let q = f.period() as i64;
        prop_assert_eq!(f.constituent(k), f.constituent(k + m * q));
        prop_assert_eq!(f.eval(k), f.constituent(k).eval_int(k));
    }

    #[test]
    fn minimize_keeps_the_function(f in quasi_polynomial()) {
        let g = f.minimize();
        prop_assert_eq!(f.period() % g.period(), 0);
        prop_assert!(g.same_function(&f));
        prop_assert_eq!(g.minimal_period(), g.period());
    }

    #[test]
    fn gcd_property_implies_symmetry(q in 1u64..=12, seed in prop::collection::vec(polynomial(2), 12)) {
        let f = QuasiPolynomial::new((0..q).map(|k| seed[num_integer::gcd(k, q) as usize % 12].clone()).collect());
        prop_assert!(f.has_gcd_property());
        prop_assert!(f.is_symmetric());
    }

    #[test]
    fn reciprocity_transform_is_an_involution(f in quasi_polynomial(), d in 0usize..4) {
        prop_assert_eq!(f.reciprocity_transform(d).reciprocity_transform(d), f);
    }

    #[test]
    fn polytope_documents_round_trip(p in polytope(2, 4)) {
        let text = polytope_to_json(&p);
        prop_assert_eq!(&parse_polytope(&text).unwrap(), &p);
    }

    #[test]
    fn quasi_polynomial_documents_round_trip(f in quasi_polynomial()) {
        prop_assert_eq!(parse_quasi_polynomial(&quasi_polynomial_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn counts_are_invariant_under_integer_shifts(p in polytope(2, 3), v in point(2), z in integer_point(2), t in 0u64..6) {
        prop_assert_eq!(count(&p, &v, t).unwrap(), count(&p, &add(&v, &z), t).unwrap());
    }

    #[test]
    fn mcmullen_reciprocity(p in polytope(2, 3), v in point(2), t in 1u64..8) {
        let closed = tl(&p, &neg(&v)).unwrap();
        let interior = count_interior(&p, &v, t).unwrap();
        prop_assert_eq!(rat(interior as i64, 1), closed.eval(-(t as i64)));
    }

    #[test]
    fn mcmullen_reciprocity_in_dimension_one(p in polytope(1, 4), v in point(1), t in 1u64..12) {
        let closed = tl(&p, &neg(&v)).unwrap();
        let interior = count_interior(&p, &v, t).unwrap();
        prop_assert_eq!(rat(interior as i64, 1), -closed.eval(-(t as i64)));
    }

    #[test]
    fn enumerator_depends_only_on_the_cell(p in polytope(2, 3), v in point(2)) {
        let table = CellTable::lazy(p.clone());
        let key = table.key_of(&v).unwrap();
        let rep = table.cell(&key).unwrap().representative;
        prop_assert_eq!(table.key_of(&rep).unwrap(), key);
        prop_assert_eq!(tl(&p, &v).unwrap(), tl(&p, &rep).unwrap());
    }

    #[test]
    fn negation_is_an_involution(p in polytope(2, 3), v in point(2)) {
        let arr = Arrangement::new(&p);
        let key = arr.delta_key(&v).unwrap();
        prop_assert_eq!(arr.negate(&arr.negate(&key).unwrap()).unwrap(), key.clone());
        prop_assert_eq!(arr.negate(&key).unwrap(), arr.delta_key(&neg(&v)).unwrap());
    }

    #[test]
    fn lambda_key_forgets_flags(p in polytope(2, 3), v in point(2)) {
        let arr = Arrangement::new(&p);
        prop_assert_eq!(arr.lambda_key(&v).unwrap(), arr.delta_key(&v).unwrap().to_lambda());
    }

    #[test]
    fn minkowski_data_ignores_translation(p in polytope(2, 4), w in point(2)) {
        prop_assert_eq!(minkowski_data(&p), minkowski_data(&p.translate(&w).unwrap()));
    }

    #[test]
    fn leading_coefficient_is_volume(p in polytope(2, 3), v in point(2)) {
        let f = tl(&p, &v).unwrap();
        for c in f.constituents() {
            prop_assert_eq!(&c.coefficient(2), p.volume());
        }
    }

    #[test]
    fn hilbert_numerator_is_nonnegative_and_expands_to_counts(p in polytope(2, 2), v in point(2)) {
        let data = hilbert_numerator(&p, &v).unwrap();
        prop_assert!(data.is_nonnegative());
        prop_assert!(data.numerator.len() <= data.degree_bound());
        let terms = 3 * data.period as usize + 4;
        let direct: Vec<Integer> = (0..terms as u64).map(|t| Integer::from(count(&p, &v, t).unwrap())).collect();
        prop_assert_eq!(data.expand(terms), direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn translated_ehrhart_matches_direct_counts(p in polytope(2, 2), k in 1i64..=4, a in 0i64..4, b in 0i64..4) {
        let v = vec![rat(a, k), rat(b, k)];
        let f = ehr_translated(&p, &v).unwrap();
        for t in 0..=3 * f.period() {
            let scaled: RationalVector = v.iter().map(|x| x * rat(t as i64, 1)).collect();
            prop_assert_eq!(f.eval(t as i64), rat(count(&p, &scaled, t).unwrap() as i64, 1));
        }
    }
}
