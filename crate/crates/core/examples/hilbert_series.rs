//! Generating-function numerators of translated counts and h-vectors.
//!
//! cargo run --example hilbert_series

use toric_ehrhart::exact::{rat, rvec};
use toric_ehrhart::fixtures;
use toric_ehrhart::hilbert::{enumerate_admissible_h, h_vector, hilbert_numerator, interior_numerator};

fn main() -> toric_ehrhart::Result<()> {
    let t = fixtures::trapezoid();
    println!("admissible h-vectors for a lattice polygon of area 3/2:");
    for h in enumerate_admissible_h(&rat(3, 2), 2, None)? {
        println!("  {h:?}");
    }
    println!("trapezoid:");
    for v in [rvec(&[(0, 1), (0, 1)]), rvec(&[(1, 2), (0, 1)]), rvec(&[(1, 2), (1, 2)]), fixtures::trapezoid_shift()] {
        println!("  v = ({}, {}): h = {:?}", v[0], v[1], h_vector(&t, &v)?);
    }

    let q = fixtures::rhombus();
    let v = rvec(&[(1, 8), (1, 8)]);
    let closed = hilbert_numerator(&q, &v)?;
    let open = interior_numerator(&q, &v)?;
    println!("rhombus at (1/8, 1/8), denominator (1 - z^{})^{}", closed.period, closed.dimension + 1);
    println!("  closed numerator   {:?}", closed.numerator);
    println!("  interior numerator {:?}", open.numerator);
    println!("  first terms        {:?}", closed.expand(8));
    Ok(())
}
