//! Minimal semifree resolution of H^*(CP^1) as a module over H^*(CP^2).

use std::sync::Arc;

use pemb::cli::{corpus, parse_problem};
use pemb::module::semifree_resolution;

fn main() -> Result<(), pemb::Error> {
    let pf = parse_problem(corpus::find("cp1_in_cp2_gysin").unwrap().text, None)?;
    let q = pf.problem()?.branch_modules()?.remove(0);
    let res = semifree_resolution(&Arc::clone(&q), true, 8)?;
    for g in &res.generators {
        println!("generator {} in degree {} (stage {})", g.label, g.degree, g.stage);
    }
    println!("minimal: {}", res.minimal);
    println!("resolution dims: {:?}", res.module.space().dims());
    Ok(())
}
