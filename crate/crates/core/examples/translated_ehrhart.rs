//! Ehrhart quasi-polynomial of a translated trapezoid, assembled from the
//! cells visited by the orbit `[k·v]`.
//!
//! cargo run --example translated_ehrhart

use std::collections::BTreeMap;

use toric_ehrhart::cells::{cell_labels, orbit_classify, CellTable};
use toric_ehrhart::fixtures;
use toric_ehrhart::translate::{ehr_translated_with, safe_period};

fn main() -> toric_ehrhart::Result<()> {
    let t = fixtures::trapezoid();
    let v = fixtures::trapezoid_shift();
    let table = CellTable::exhaustive(t.clone())?;
    let cells = table.cells();
    let names: BTreeMap<_, _> = cells.iter().map(|c| c.key.clone()).zip(cell_labels(&cells)).collect();

    let mut visits: BTreeMap<_, Vec<u64>> = BTreeMap::new();
    for (k, key) in orbit_classify(&t, &v, safe_period(&t, &v) - 1)? {
        visits.entry(key).or_default().push(k);
    }
    for (key, ks) in &visits {
        let f = table.tl(key)?;
        println!("{} ({f}) visited {} times, first at k = {}", names[key], ks.len(), ks[0]);
    }

    let f = ehr_translated_with(&table, &v)?;
    println!("\nminimal period {}\n{f}", f.minimal_period());
    Ok(())
}
