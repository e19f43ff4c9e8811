//! Exact certification by vertex enumeration, with witness checking.
//!
//! Run with `cargo run --example certify_uniqueness`.

use avecert::oracle::DEFAULT_CAP;
use avecert::{certify_uniqueness, CertificateStatus, DenseMatrix};

fn main() -> avecert::Result<()> {
    let cases = [
        DenseMatrix::from_rows(&[[4.0, 1.0, 0.0], [1.0, 4.0, 1.0], [0.0, 1.0, 4.0]])?,
        DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]])?,
        DenseMatrix::from_rows(&[[3.0, 0.0], [0.0, -3.0]])?,
        DenseMatrix::identity(20).scaled(3.0),
    ];
    for a in &cases {
        let cert = certify_uniqueness(a, DEFAULT_CAP)?;
        println!("n = {:2}: {cert}", a.order());
        if cert.status() != CertificateStatus::CapExceeded {
            println!("        witness re-checked: {}", cert.verify(a));
        }
    }
    Ok(())
}
