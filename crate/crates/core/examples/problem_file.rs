//! Parses a problem file, solves it and emits it back losslessly.
//!
//! Run with `cargo run --example problem_file`.

use avecert::solvers::{DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use avecert::{generalized_newton, ProblemFile, Vector};

/// The second row is one entry short.
const MALFORMED: &str = "2\n1 2\n3\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("rejected: {}", ProblemFile::parse(MALFORMED).unwrap_err());

    let text = "2\n3 0.1\n-0.2 4\n1 2\n";
    let file = ProblemFile::parse(text)?;
    let emitted = file.emit();
    println!("emitted:\n{emitted}");
    assert_eq!(ProblemFile::parse(&emitted)?, file);

    let problem = file.into_problem()?;
    let result = generalized_newton(
        &problem,
        &Vector::zeros(2),
        DEFAULT_TOLERANCE,
        DEFAULT_MAX_ITER,
    )?;
    println!("{result}");
    Ok(())
}
