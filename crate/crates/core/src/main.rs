fn main() -> std::process::ExitCode {
    sprawl::cli::main()
}
