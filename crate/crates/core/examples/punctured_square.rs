//! Square of truncated models with the ambient punctured, for S^2 in S^6.

use pemb::cli::{corpus, parse_problem, report};
use pemb::pipeline;

fn main() -> Result<(), pemb::Error> {
    let pf = parse_problem(corpus::find("s2_in_s6").unwrap().text, None)?;
    let res = pipeline::punctured_square(pf.problem()?, true)?;
    print!("{}", report::punctured(&res));
    Ok(())
}
