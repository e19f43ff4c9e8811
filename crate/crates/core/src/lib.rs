//! Certificates and solvers for the absolute value equation `Ax − |x| = b`.
//!
//! * [`conditions`]: cheap sufficient conditions for unique solvability, each
//!   evaluated to `HOLDS`, `FAILS` or `MARGINAL`.
//! * [`oracle`]: exact certification for small `n` by enumerating the `2ⁿ`
//!   vertex matrices `A + diag(t)`, `t ∈ {±1}ⁿ`, plus full solution-set
//!   enumeration for a fixed `b`.
//! * [`solvers`]: Picard schemes whose contraction factors are the
//!   conditions' statistics, and a generalized Newton baseline.
//! * [`ensemble`]: seeded campaigns scoring every condition against the oracle.
//! * [`cli`]: the `avecert` command line and its problem-file format.

pub mod cli;
pub mod conditions;
pub mod counterexample;
pub mod ensemble;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod problem_file;
pub mod solvers;

pub use conditions::{
    check_all, check_condition, ConditionId, ConditionVerdict, Outcome, Soundness,
};
pub use counterexample::{demonstrate_counterexample, CounterexampleReport};
pub use ensemble::{
    generate, run_campaign, write_report, Campaign, CampaignRow, EnsembleKind, EnsembleSpec,
};
pub use error::{Error, Result};
pub use matrix::{
    det_sign, identity, shifted, singular_stats, solve_linear, DenseMatrix, DetSign, SingularStats,
    Vector,
};
pub use oracle::{
    certify_uniqueness, enumerate_solutions, CertificateStatus, SignPattern, SolutionSet,
    UniquenessCertificate,
};
pub use problem_file::ProblemFile;
pub use solvers::{
    generalized_newton, picard_minus, picard_plus, residual, AveProblem, Method, SolveResult,
};
