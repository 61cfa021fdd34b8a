//! Translated counts tell a polygon apart from its non-integral translates.
//!
//! cargo run --example fingerprints

use toric_ehrhart::exact::rvec;
use toric_ehrhart::fixtures;
use toric_ehrhart::theorems::{equivalent_up_to_integer_translation, fingerprint_distinguishes};

fn main() -> toric_ehrhart::Result<()> {
    let t = fixtures::trapezoid();
    for w in [rvec(&[(2, 1), (-1, 1)]), rvec(&[(1, 2), (0, 1)]), rvec(&[(1, 3), (2, 3)])] {
        let moved = t.translate(&w)?;
        let verdict = fingerprint_distinguishes(&t, &moved, 6, 3 * moved.period())?;
        println!(
            "w = ({}, {}): integer translate {:?}, fingerprint {:?}",
            w[0],
            w[1],
            equivalent_up_to_integer_translation(&t, &moved),
            verdict
        );
    }
    let flipped = t.negate();
    println!("-T: {:?}", fingerprint_distinguishes(&t, &flipped, 4, 3)?);
    Ok(())
}
