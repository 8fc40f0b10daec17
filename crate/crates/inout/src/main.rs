use std::io::Write;

fn main() {
    let mut stdout = std::io::stdout().lock();
    let code = inout::cli::run(std::env::args().skip(1), &mut stdout);
    let _ = stdout.flush();
    std::process::exit(code);
}
