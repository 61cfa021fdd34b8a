//! Runs the identity checks on a few polygons and prints a summary.
//!
//! cargo run --example verify_identities

use toric_ehrhart::exact::rvec;
use toric_ehrhart::fixtures;
use toric_ehrhart::theorems::{
    automorphisms, check_codim1, check_cs_parity, check_maximal_cell_reciprocity, check_projection_identity,
    check_symmetry_characterization, minkowski_data, CheckReport,
};

fn show(r: &CheckReport) {
    println!("  {:<28} {} ({} findings)", r.check, if r.passed { "pass" } else { "FAIL" }, r.findings.len());
}

fn main() -> toric_ehrhart::Result<()> {
    for (name, p) in [("trapezoid", fixtures::trapezoid()), ("rhombus", fixtures::rhombus())] {
        println!("{name}");
        show(&check_maximal_cell_reciprocity(&p)?);
        show(&check_codim1(&p)?);
        for i in 0..2 {
            show(&check_projection_identity(&p, i, &rvec(&[(1, 5), (2, 7)]), 8)?);
        }
        match check_cs_parity(&p) {
            Ok(r) => show(&r),
            Err(e) => println!("  parity check skipped: {e}"),
        }
        for (normal, volume) in minkowski_data(&p).entries() {
            println!("  facet normal {normal:?}: relative volume {volume}");
        }
        println!("  {} automorphisms with entries in [-2, 2]", automorphisms(&p, 2).len());
    }

    println!("\nsymmetry of ehr(Q_n + v) over the 1/2n grid");
    for n in 1..=4 {
        let verdict = check_symmetry_characterization(&fixtures::rhombus_n(n), 2 * n as u64)?;
        println!(
            "  n = {n}: geometric {}, sampled {}, witness {}",
            verdict.geometric,
            verdict.sampled,
            verdict.witness.unwrap_or_else(|| "-".into())
        );
    }
    Ok(())
}
