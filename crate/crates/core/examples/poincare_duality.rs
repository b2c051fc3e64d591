//! Poincaré duality certificates, and a failure for a wedge of spheres.

use pemb::cli::parse_problem;

fn main() -> Result<(), pemb::Error> {
    let cases = [
        ("CP2", 4, "window 0 4\ncdga CP2 { generator x deg 2; relation x^3 }"),
        ("T", 2, "window 0 2\ncdga T { generator a deg 1; generator b deg 1 }"),
        ("W", 4, "window 0 4\ncdga W { generator a deg 2; generator b deg 4; relation a^2; relation a*b }"),
    ];
    for (name, n, text) in cases {
        let pf = parse_problem(text, None)?;
        let a = pf.algebra(name).unwrap();
        match a.check_poincare_duality(n) {
            Ok(cert) => println!("{name}: {}", cert.summary()),
            Err(fail) => println!("{name}: no duality in dimension {n}: {fail}"),
        }
    }
    Ok(())
}
