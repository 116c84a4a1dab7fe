use lpn_detect::io::run_cli;

fn main() {
    let out = run_cli(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
