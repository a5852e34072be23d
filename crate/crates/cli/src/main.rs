fn main() {
    std::process::exit(lgroup_cli::run(std::env::args_os()));
}
