//! Writes a problem in the machine format and reads it back.

use pemb::cli::report::{machine_problem, same_structure};
use pemb::cli::{corpus, parse_problem};

fn main() -> Result<(), pemb::Error> {
    let pf = parse_problem(corpus::find("wedge_in_s8").unwrap().text, None)?;
    let text = machine_problem(&pf);
    print!("{text}");
    let again = parse_problem(&text, None)?;
    let same = pf.algebras.iter().zip(&again.algebras).all(|(a, b)| same_structure(a, b));
    println!("# round trip preserves every algebra: {same}");
    Ok(())
}
