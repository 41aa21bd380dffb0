fn main() -> std::process::ExitCode {
    seshadri::cli::run()
}
