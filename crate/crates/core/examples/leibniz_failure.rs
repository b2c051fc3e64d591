//! A semi-trivial cone that is not a CDGA: R = H^*(S^2), X free on two
//! degree-2 generators both sent to the top class.

use std::collections::BTreeMap;
use std::sync::Arc;

use pemb::cli::parse_problem;
use pemb::cone::semi_trivial_cone;
use pemb::module::{solve_chain_maps, DgModule, Generator, SemifreeModule};

fn main() -> Result<(), pemb::Error> {
    let pf = parse_problem("window 0 4\ncdga R { generator e deg 2; relation e^2 }", None)?;
    let r = pf.algebra("R").unwrap().clone();
    let gens = ["u", "w"].map(|label| Generator { label: label.into(), degree: 2, stage: 0, d: BTreeMap::new() });
    let x = SemifreeModule::build("X", r.clone(), gens.to_vec(), 4)?.module;
    let rm = Arc::new(DgModule::regular(r.clone()));
    let sol = solve_chain_maps(&x, &rm, &[])?;
    let mut f = sol.particular;
    for h in &sol.homogeneous {
        f = pemb::module::ModuleMap::new(x.clone(), rm.clone(), f.map.add(&h.map))?;
    }
    let cone = semi_trivial_cone(&f, "C")?;
    println!("admissible k: {}", cone.bounds().describe());
    println!("{}", cone.leibniz.summary());
    Ok(())
}
