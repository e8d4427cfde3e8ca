use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env_config = std::env::var_os(photon_kick_cli::CONFIG_ENV).map(PathBuf::from);
    let stdout = io::stdout();
    let stderr = io::stderr();
    let code = photon_kick_cli::main_with(
        std::env::args_os(),
        env_config,
        &mut stdout.lock(),
        &mut stderr.lock(),
    );
    ExitCode::from(code)
}
