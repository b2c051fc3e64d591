//! Gysin map of CP^1 in CP^2: the shifted dual of the restriction.

use pemb::cli::{corpus, parse_problem, report};
use pemb::pipeline;

fn main() -> Result<(), pemb::Error> {
    let pf = parse_problem(corpus::find("cp1_in_cp2_gysin").unwrap().text, None)?;
    let p = pf.problem()?;
    let g = pipeline::gysin(p)?;
    let b = p.single()?;
    print!("{}", report::gysin(&g.map, &p.ambient.name, &b.name, g.k, &g.ambient, &g.embedded));
    Ok(())
}
