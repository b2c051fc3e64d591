//! DG-module square for two 7-spheres in S^15, over Q and over F_2.

use pemb::cli::{corpus, parse_problem, report};
use pemb::linalg::Field;
use pemb::pipeline;

fn main() -> Result<(), pemb::Error> {
    let text = corpus::find("two_s7_in_s15").unwrap().text;
    for field in [Field::Rational, Field::prime(2)?] {
        let pf = parse_problem(text, Some(field))?;
        let sq = pipeline::dgmodule_square(pf.problem()?)?;
        println!("field {field}");
        print!("{}", report::square(&sq));
    }
    Ok(())
}
