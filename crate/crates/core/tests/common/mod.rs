#![allow(dead_code)]

use rand::Rng;
use toric_ehrhart::exact::{rat, Rational, RationalVector};
use toric_ehrhart::polytope::Polytope;

/// Rational in `[-span, span]` with denominator at most `max_den`.
pub fn random_rational<R: Rng>(rng: &mut R, max_den: i64, span: i64) -> Rational {
    let den = rng.gen_range(1..=max_den);
    rat(rng.gen_range(-span * den..=span * den), den)
}

pub fn random_vector<R: Rng>(rng: &mut R, d: usize, max_den: i64, span: i64) -> RationalVector {
    (0..d).map(|_| random_rational(rng, max_den, span)).collect()
}

/// Hull of a few random points of `(1/k)Z^d ∩ [-1, 1]^d` for one random
/// `k ≤ max_den`, retried until full-dimensional with at most `max_facets` facets.
pub fn random_polytope<R: Rng>(rng: &mut R, d: usize, max_den: i64, max_facets: usize) -> Polytope {
    loop {
        let k = rng.gen_range(1..=max_den);
        let n = rng.gen_range(d + 1..=d + 3);
        let points: Vec<RationalVector> =
            (0..n).map(|_| (0..d).map(|_| rat(rng.gen_range(-k..=k), k)).collect()).collect();
        if let Ok(p) = Polytope::from_vertices(&points) {
            if p.num_facets() <= max_facets {
                return p;
            }
        }
    }
}

/// Random lattice polytope with coordinates in `[-span, span]`.
pub fn random_lattice_polytope<R: Rng>(rng: &mut R, d: usize, span: i64, max_facets: usize) -> Polytope {
    loop {
        let n = rng.gen_range(d + 1..=d + 3);
        let points: Vec<RationalVector> =
            (0..n).map(|_| (0..d).map(|_| rat(rng.gen_range(-span..=span), 1)).collect()).collect();
        if let Ok(p) = Polytope::from_vertices(&points) {
            if p.num_facets() <= max_facets {
                return p;
            }
        }
    }
}
