//! Complement model of an embedding, with its Alexander duality check.
//!
//! `cargo run --example complement [FILE]` (defaults to S^2 in S^6).

use pemb::cli::{parse_problem, read_input, report};
use pemb::pipeline;

fn main() -> Result<(), pemb::Error> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "s2_in_s6".into());
    let pf = parse_problem(&read_input(&path)?, None)?;
    let res = pipeline::complement_model(pf.problem()?)?;
    print!("{}", report::complement(&res));
    println!("model C has {} basis elements", res.model.space().total_dim());
    Ok(())
}
