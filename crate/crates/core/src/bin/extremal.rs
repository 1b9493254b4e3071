use std::io;

fn main() {
    let code = extremal::cli::main_with_args(std::env::args().skip(1), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
