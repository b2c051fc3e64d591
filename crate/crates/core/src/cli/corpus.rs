//! Problem files shipped inside the binary.

pub struct Example {
    pub name: &'static str,
    pub text: &'static str,
    /// Subcommand `examples run` uses.
    pub command: &'static str,
    pub about: &'static str,
}

macro_rules! example {
    ($name:literal, $cmd:literal, $about:literal) => {
        Example {
            name: $name,
            text: include_str!(concat!("../../examples/corpus/", $name, ".pemb")),
            command: $cmd,
            about: $about,
        }
    };
}

pub const CORPUS: &[Example] = &[
    example!("s2_in_s6", "complement", "S^2 in S^6, the unknot baseline"),
    example!("wedge_in_s8", "complement", "S^2 ∨ S^4 in S^8, unknotting with equality"),
    example!("cp2_in_s8", "complement", "CP^2 in S^8"),
    example!("two_s7_in_s15", "lefschetz", "two 7-spheres in S^15 (menorah, r = 0)"),
    example!("cp1_in_cp2_gysin", "gysin", "CP^1 in CP^2, Gysin map"),
    example!("s2_in_s9_stable", "stable-square", "S^2 in S^9, stable range"),
    example!("point_in_sn", "complement", "a point in S^5"),
    example!("hopf_torus", "complement", "S^1 × S^7 in S^15, unknotting fails"),
];

pub fn find(name: &str) -> Option<&'static Example> {
    let stem = std::path::Path::new(name)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(name);
    CORPUS.iter().find(|e| e.name == stem)
}
