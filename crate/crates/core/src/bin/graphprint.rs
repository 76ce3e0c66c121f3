fn main() -> std::process::ExitCode {
    graphprint::cli::main()
}
