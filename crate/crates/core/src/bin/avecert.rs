use std::process::ExitCode;

use avecert::cli::{run, Io, CAP_ENV_VAR};

fn main() -> ExitCode {
    let env_cap = std::env::var(CAP_ENV_VAR).ok();
    let code = run(
        std::env::args_os(),
        env_cap.as_deref(),
        Io {
            out: &mut std::io::stdout().lock(),
            err: &mut std::io::stderr().lock(),
        },
    );
    ExitCode::from(code as u8)
}
