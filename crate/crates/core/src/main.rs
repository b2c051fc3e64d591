fn main() {
    let out = pemb::cli::run(std::env::args().skip(1));
    if out.code == 0 {
        print!("{}", out.text);
    } else {
        eprint!("{}", out.text);
    }
    std::process::exit(out.code);
}
