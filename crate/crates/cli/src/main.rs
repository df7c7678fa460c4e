fn main() -> std::process::ExitCode {
    std::process::ExitCode::from(mcfsol_cli::main_with(std::env::args_os()))
}
