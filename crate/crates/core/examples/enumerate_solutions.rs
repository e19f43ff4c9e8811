//! Lists every solution of `Ax − |x| = b` by solving each sign-pattern system.
//!
//! Run with `cargo run --example enumerate_solutions`.

use avecert::{enumerate_solutions, AveProblem, DenseMatrix, Vector};

fn main() -> avecert::Result<()> {
    let zero = DenseMatrix::from_rows(&[[0.0]])?;
    for b in [-1.0, 0.0, 1.0] {
        let problem = AveProblem::new(zero.clone(), Vector::new(vec![b])?)?;
        println!("A = [0], b = {b}:\n{}", enumerate_solutions(&problem)?);
    }

    let a = DenseMatrix::from_rows(&[[2.0, -1.0], [0.5, 0.0]])?;
    let problem = AveProblem::new(a, Vector::new(vec![1.0, -0.5])?)?;
    println!(
        "A = [[2, -1], [0.5, 0]], b = (1, -0.5):\n{}",
        enumerate_solutions(&problem)?
    );

    let swap = DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]])?;
    let problem = AveProblem::new(swap, Vector::zeros(2))?;
    println!(
        "A = [[0, 1], [1, 0]], b = 0:\n{}",
        enumerate_solutions(&problem)?
    );
    Ok(())
}
