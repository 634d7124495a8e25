fn main() {
    let (code, out) = vantrace::cli::run(std::env::args_os());
    if code == 2 || out.starts_with("error:") {
        eprint!("{out}");
    } else {
        print!("{out}");
    }
    std::process::exit(code);
}
