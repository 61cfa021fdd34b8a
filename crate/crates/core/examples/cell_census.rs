//! Cells of the toric arrangement of three polygons, with their enumerators.
//!
//! cargo run --example cell_census

use toric_ehrhart::cells::{cell_labels, enumerate_cells, CellTable, KeyKind};
use toric_ehrhart::exact::format_rational_vector;
use toric_ehrhart::fixtures;

fn main() -> toric_ehrhart::Result<()> {
    for (name, p) in [
        ("trapezoid", fixtures::trapezoid()),
        ("rhombus", fixtures::rhombus()),
        ("parallelogram", fixtures::parallelogram()),
    ] {
        let table = CellTable::exhaustive(p.clone())?;
        let cells = table.cells();
        let regions = enumerate_cells(&p, KeyKind::Lambda)?.len();
        println!("{name}: {} cells, {regions} upper regions", cells.len());
        for (label, cell) in cell_labels(&cells).iter().zip(&cells) {
            let f = table.tl(&cell.key)?.to_string().replace('\n', "; ");
            let minus = table.negate(&cell.key)?;
            let partner = cells.iter().position(|c| c.key == minus).map(|i| cell_labels(&cells)[i].clone());
            println!(
                "  {label:<3} {}  at {}  -C = {}  TL: {f}",
                cell.key,
                format_rational_vector(&cell.representative),
                partner.unwrap_or_default()
            );
        }
    }
    Ok(())
}
