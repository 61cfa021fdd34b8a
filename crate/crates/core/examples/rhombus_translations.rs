//! Translates of the rhombus conv{(±1, 0), (0, ±1/2)}: the minimal period of
//! `ehr_{Q+v}` need not equal the denominator of `v`.
//!
//! cargo run --example rhombus_translations

use toric_ehrhart::exact::rvec;
use toric_ehrhart::fixtures;
use toric_ehrhart::translate::{ehr_translated, safe_period};

fn main() -> toric_ehrhart::Result<()> {
    let q = fixtures::rhombus();
    for v in [rvec(&[(1, 8), (1, 8)]), rvec(&[(1, 3), (1, 3)]), rvec(&[(1, 2), (0, 1)]), rvec(&[(1, 5), (2, 5)])] {
        let f = ehr_translated(&q, &v)?;
        println!(
            "v = ({}, {}): safe period {}, minimal period {}, symmetric {}, gcd property {}",
            v[0],
            v[1],
            safe_period(&q, &v),
            f.minimal_period(),
            f.is_symmetric(),
            f.has_gcd_property()
        );
        println!("{f}\n");
    }
    Ok(())
}
