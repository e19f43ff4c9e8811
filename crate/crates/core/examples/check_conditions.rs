//! Evaluates every sufficient condition on a few small matrices.
//!
//! Run with `cargo run --example check_conditions`.

use avecert::{check_all, DenseMatrix};

fn main() -> avecert::Result<()> {
    let cases = [
        ("3I", DenseMatrix::from_rows(&[[3.0, 0.0], [0.0, 3.0]])?),
        ("swap", DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]])?),
        ("[0]", DenseMatrix::from_rows(&[[0.0]])?),
    ];
    for (label, a) in &cases {
        println!("A = {label}");
        for verdict in check_all(a)? {
            println!("  {verdict}");
        }
    }
    Ok(())
}
