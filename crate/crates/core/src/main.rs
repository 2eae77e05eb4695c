fn main() {
    std::process::exit(tate_workbench::cli::run());
}
