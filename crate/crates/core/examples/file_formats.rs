//! Fan and polytope files, dataset rows and SVG output.

use toric_mmp::io::{emit_dataset, emit_fan, emit_polytope, emit_svg, parse_fan, parse_fan_with, parse_polytope, ParseMode};
use toric_mmp::fano_data::load_builtin_table;

fn main() -> toric_mmp::Result<()> {
    let fan = parse_fan(r#"{"rank": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]]}"#)?;
    print!("canonical fan:\n{}", emit_fan(&fan)?);

    let loose = r#"{"rank": 2, "rays": [[2, 4], [0, -1], [-1, 0]], "max_cones": [[0, 1], [1, 2], [0, 2]]}"#;
    println!("strict: {}", parse_fan(loose).unwrap_err());
    let (_, warnings) = parse_fan_with(loose, ParseMode::Lenient)?;
    println!("lenient: {warnings:?}");

    let p = parse_polytope(r#"{"dim": 2, "normals": [[1, 0], [0, 1], [-1, -1]], "constants": ["0", "0", "3/2"]}"#)?;
    print!("polytope:\n{}", emit_polytope(&p));
    let svg = emit_svg(&p)?;
    println!("svg: {} bytes, {} shapes", svg.len(), svg.lines().filter(|l| l.starts_with("<polygon") || l.starts_with("<circle")).count());

    let first = &load_builtin_table()[..1];
    print!("dataset:\n{}", emit_dataset(first)?);
    Ok(())
}
