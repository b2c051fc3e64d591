//! CDGA square in the stable range for S^2 in S^9; the bottom-right corner
//! models the boundary S^2 × S^6.

use pemb::cli::{corpus, parse_problem, report};
use pemb::pipeline;

fn main() -> Result<(), pemb::Error> {
    let pf = parse_problem(corpus::find("s2_in_s9_stable").unwrap().text, None)?;
    let sq = pipeline::stable_square(pf.problem()?)?;
    print!("{}", report::square(&sq));
    for c in sq.corners() {
        println!("{:>24}: {}", c.label, pipeline::format_dims(&c.dims()));
    }
    Ok(())
}
