//! Cohomology of the complement from the dual of the restriction map.
//! Works for several components, here two 7-spheres in S^15.

use pemb::cli::{corpus, parse_problem, report};
use pemb::pipeline;

fn main() -> Result<(), pemb::Error> {
    let pf = parse_problem(corpus::find("two_s7_in_s15").unwrap().text, None)?;
    let res = pipeline::lefschetz(pf.problem()?)?;
    print!("{}", report::lefschetz(&res));
    Ok(())
}
