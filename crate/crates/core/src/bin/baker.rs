fn main() -> std::process::ExitCode {
    openbaker::cli::main()
}
