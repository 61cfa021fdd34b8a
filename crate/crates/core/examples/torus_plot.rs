//! Writes SVG cell maps of the torus for the three standard polygons.
//!
//! cargo run --example torus_plot -- [output-dir]

use std::path::PathBuf;

use toric_ehrhart::exact::rvec;
use toric_ehrhart::fixtures;
use toric_ehrhart::svg::CellMap;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let jobs = [
        ("trapezoid.svg", fixtures::trapezoid(), fixtures::trapezoid_shift(), 99),
        ("rhombus.svg", fixtures::rhombus(), rvec(&[(1, 8), (1, 8)]), 7),
        ("parallelogram.svg", fixtures::parallelogram(), rvec(&[(1, 3), (1, 6)]), 5),
    ];
    for (file, p, v, k_max) in jobs {
        let map = CellMap::new(&p, Some(&v), k_max)?;
        let path = dir.join(file);
        std::fs::write(&path, map.to_svg())?;
        println!(
            "{}: {} faces, {} edges, {} vertices, {} orbit points",
            path.display(),
            map.faces.len(),
            map.edges.len(),
            map.vertices.len(),
            map.orbit.len()
        );
    }
    Ok(())
}
