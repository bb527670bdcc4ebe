use std::io::Write;

fn main() {
    let out = matinv_cli::run(std::env::args_os());
    let stream: &mut dyn Write = if out.code == matinv_cli::EXIT_INPUT {
        &mut std::io::stderr()
    } else {
        &mut std::io::stdout()
    };
    let _ = stream.write_all(out.stdout.as_bytes());
    std::process::exit(out.code);
}
