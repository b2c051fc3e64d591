//! Top-degree map `ψ: D -> R` from the resolved shifted dual, and the
//! uniqueness of its class up to a scalar.

use pemb::cli::{corpus, parse_problem};
use pemb::duality::{verify_scalar_uniqueness, TopDegreeMap};
use pemb::module::ModuleMap;
use pemb::pipeline;

fn main() -> Result<(), pemb::Error> {
    let pf = parse_problem(corpus::find("cp2_in_s8").unwrap().text, None)?;
    let p = pf.problem()?;
    let resolved = pipeline::resolve_duals(p)?;
    let psi = &resolved.branch_maps[0];
    println!("D generators: {:?}", resolved.generators);
    println!("H^{}(ψ) = {}", psi.n, psi.scalar());
    let field = p.field();
    let scaled = ModuleMap::new(psi.map.source.clone(), psi.map.target.clone(), psi.map.map.scale(&field.int(-3)))?;
    let other = TopDegreeMap::certify(scaled, psi.n)?;
    let (u, _) = verify_scalar_uniqueness(psi, &other)?;
    println!("[ψ] = {u}·[-3ψ]");
    Ok(())
}
