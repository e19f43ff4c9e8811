//! Compares the two Picard schemes with generalized Newton on one system.
//!
//! The Picard contraction estimate is the condition statistic, so a scheme
//! is guaranteed to converge exactly when its estimate is below one.
//!
//! Run with `cargo run --example solve_ave`.

use avecert::solvers::{DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use avecert::{generalized_newton, picard_minus, picard_plus, AveProblem, DenseMatrix, Vector};

fn main() -> avecert::Result<()> {
    let a = DenseMatrix::from_rows(&[[6.0, 1.0, -1.0], [0.5, -5.0, 1.0], [1.0, 0.0, 7.0]])?;
    let x_true = Vector::new(vec![1.0, -2.0, 0.5])?;
    let ax = a.mul_vec(&x_true);
    let b: Vec<f64> = ax
        .iter()
        .zip(x_true.iter())
        .map(|(l, r)| l - r.abs())
        .collect();
    let problem = AveProblem::new(a, Vector::new(b)?)?;
    let x0 = Vector::zeros(3);

    let runs = [
        (
            "picard (+)",
            picard_plus(&problem, &x0, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?,
        ),
        (
            "picard (-)",
            picard_minus(&problem, &x0, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?,
        ),
        (
            "newton",
            generalized_newton(&problem, &x0, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?,
        ),
    ];
    for (label, result) in &runs {
        println!("== {label}\n{result}");
        println!(
            "error to known solution: {:.3e}\n",
            result.x.dist_inf(&x_true)
        );
    }
    Ok(())
}
