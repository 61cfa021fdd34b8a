//! Fitting quasi-polynomials from counts, reciprocity and period reduction.
//!
//! cargo run --example quasi_polynomials

use toric_ehrhart::counting::count;
use toric_ehrhart::exact::{rat, rvec};
use toric_ehrhart::fixtures;
use toric_ehrhart::quasipoly::QuasiPolynomial;
use toric_ehrhart::translate::{tl, tl_interior};

fn main() -> toric_ehrhart::Result<()> {
    let q = fixtures::rhombus_n(3);
    let v = rvec(&[(1, 4), (0, 1)]);
    let samples: Vec<_> = (0..15).map(|t| count(&q, &v, t).map(|n| rat(n as i64, 1))).collect::<Result<_, _>>()?;
    let fitted = QuasiPolynomial::fit(&samples, q.period(), 2)?;
    println!("TL from 15 samples:\n{fitted}\n");

    let closed = tl(&q, &rvec(&[(-1, 4), (0, 1)]))?;
    println!("interior enumerator:\n{}", tl_interior(&q, &v)?);
    println!("reciprocity transform of TL at -v:\n{}\n", closed.reciprocity_transform(2));

    let doubled = QuasiPolynomial::new([fitted.constituents(), fitted.constituents()].concat());
    println!("period {} reduces to {}", doubled.period(), doubled.minimize().period());
    Ok(())
}
