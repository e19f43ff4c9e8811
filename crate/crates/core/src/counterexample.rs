//! The scalar matrix `A = 0`: both inverse-norm conditions with factor ½ hold,
//! yet `−|x| = b` has two solutions for `b < 0` and none for `b > 0`.

use std::fmt;

use crate::conditions::{check_all, ConditionId, ConditionVerdict};
use crate::matrix::{DenseMatrix, Vector};
use crate::oracle::{
    certify_uniqueness, enumerate_solutions, SolutionSet, UniquenessCertificate, DEFAULT_CAP,
};
use crate::solvers::AveProblem;

#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleReport {
    pub matrix: DenseMatrix,
    /// All six verdicts in `ConditionId::ALL` order.
    pub verdicts: Vec<ConditionVerdict>,
    pub certificate: UniquenessCertificate,
    /// Solutions of `−|x| = −1`.
    pub negative_rhs: SolutionSet,
    /// Solutions of `−|x| = 1`.
    pub positive_rhs: SolutionSet,
}

impl CounterexampleReport {
    pub fn verdict(&self, id: ConditionId) -> &ConditionVerdict {
        self.verdicts
            .iter()
            .find(|v| v.id == id)
            .expect("every condition is evaluated")
    }

    pub fn wu_plus(&self) -> &ConditionVerdict {
        self.verdict(ConditionId::WuPlusIncorrect)
    }

    pub fn wu_minus(&self) -> &ConditionVerdict {
        self.verdict(ConditionId::WuMinusIncorrect)
    }

    /// Solution set for `b = ±1`; `None` for other right-hand sides.
    pub fn solutions(&self, b: f64) -> Option<&SolutionSet> {
        if b == -1.0 {
            Some(&self.negative_rhs)
        } else if b == 1.0 {
            Some(&self.positive_rhs)
        } else {
            None
        }
    }
}

pub fn demonstrate_counterexample() -> CounterexampleReport {
    let matrix = DenseMatrix::zeros(1);
    let solve = |b: f64| {
        let problem = AveProblem::new(matrix.clone(), Vector::new(vec![b]).expect("finite"))
            .expect("matching dimensions");
        enumerate_solutions(&problem).expect("n = 1 is below every cap")
    };
    CounterexampleReport {
        verdicts: check_all(&matrix).expect("1x1 singular values always converge"),
        certificate: certify_uniqueness(&matrix, DEFAULT_CAP).expect("default cap is valid"),
        negative_rhs: solve(-1.0),
        positive_rhs: solve(1.0),
        matrix,
    }
}

impl fmt::Display for CounterexampleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "A = {} (n = 1), equation -|x| = b", self.matrix)?;
        writeln!(f)?;
        writeln!(f, "conditions:")?;
        for v in &self.verdicts {
            writeln!(f, "  {v}")?;
        }
        writeln!(f)?;
        writeln!(f, "oracle:")?;
        for line in self.certificate.to_string().lines() {
            writeln!(f, "  {line}")?;
        }
        for (b, set) in [(-1.0, &self.negative_rhs), (1.0, &self.positive_rhs)] {
            writeln!(f)?;
            let xs: Vec<String> = set.points().map(|x| format!("{:+}", x[0])).collect();
            if xs.is_empty() {
                writeln!(f, "b = {b:+}: no solution")?;
            } else {
                writeln!(f, "b = {b:+}: {} solutions: {}", xs.len(), xs.join(", "))?;
            }
        }
        writeln!(f)?;
        write!(
            f,
            "both KNOWN-INCORRECT conditions hold, yet the solution is not unique for every b"
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::Outcome;
    use crate::oracle::CertificateStatus;

    #[test]
    fn report_contents() {
        let r = demonstrate_counterexample();
        assert_eq!(r.wu_plus().statistic, 0.5);
        assert_eq!(r.wu_minus().statistic, 0.5);
        assert_eq!(r.wu_plus().outcome, Outcome::Holds);
        assert_eq!(r.certificate.status(), CertificateStatus::NotUnique);
        let mut xs: Vec<f64> = r.solutions(-1.0).unwrap().points().map(|x| x[0]).collect();
        xs.sort_by(f64::total_cmp);
        assert_eq!(xs, vec![-1.0, 1.0]);
        assert!(r.solutions(1.0).unwrap().is_empty());
        assert!(r.solutions(0.0).is_none());
    }

    #[test]
    fn report_text() {
        let text = demonstrate_counterexample().to_string();
        assert_eq!(text.matches("KNOWN-INCORRECT").count(), 3);
        assert!(text.contains("b = -1: 2 solutions: -1, +1"));
        assert!(text.contains("b = +1: no solution"));
    }
}
