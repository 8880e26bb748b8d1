use std::io;

fn main() {
    let code = ontoforge::cli::run_from(
        std::env::args_os(),
        &mut io::stdin().lock(),
        &mut io::stdout(),
        &mut io::stderr(),
    );
    std::process::exit(code);
}
