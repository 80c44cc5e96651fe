//! Corpus sweeps.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::report::{analyze, AlgebraDocument, Status};
use crate::verdict::Slack;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteViolation {
    pub index: usize,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub instances: usize,
    /// `f = rk - count`.
    pub equality: usize,
    /// `f > rk - count`, finite.
    pub strict: usize,
    pub infinite_f: usize,
    pub capability_skips: usize,
    pub invalid: usize,
    pub violations: Vec<SuiteViolation>,
}

impl SuiteSummary {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(mut self, other: SuiteSummary) -> SuiteSummary {
        self.instances += other.instances;
        self.equality += other.equality;
        self.strict += other.strict;
        self.infinite_f += other.infinite_f;
        self.capability_skips += other.capability_skips;
        self.invalid += other.invalid;
        self.violations.extend(other.violations);
        self
    }
}

fn classify(index: usize, doc: &AlgebraDocument) -> SuiteSummary {
    let mut s = SuiteSummary {
        instances: 1,
        ..SuiteSummary::default()
    };
    let report = match analyze(doc) {
        Ok(r) => r,
        Err(Error::Capability(_)) => {
            s.capability_skips = 1;
            return s;
        }
        Err(Error::Internal(m)) => {
            s.violations.push(SuiteViolation { index, message: m });
            return s;
        }
        Err(_) => {
            s.invalid = 1;
            return s;
        }
    };
    match report.status {
        Status::Invalid => s.invalid = 1,
        Status::Capability => s.capability_skips = 1,
        Status::Violation => s.violations.push(SuiteViolation {
            index,
            message: report.errors.iter().map(|e| format!("{}: {}", e.stage, e.message)).collect::<Vec<_>>().join("; "),
        }),
        Status::Ok => match report.verdict.map(|v| v.slack) {
            Some(Slack::Infinite) => s.infinite_f = 1,
            Some(Slack::Finite(0)) => s.equality = 1,
            Some(Slack::Finite(_)) => s.strict = 1,
            None => s.violations.push(SuiteViolation {
                index,
                message: "analysis finished without a verdict".into(),
            }),
        },
    }
    s
}

/// Analyzes every document in parallel. Instance failures are tallied, never
/// propagated.
pub fn run_suite(corpus: &[AlgebraDocument]) -> SuiteSummary {
    let mut s = corpus
        .par_iter()
        .enumerate()
        .map(|(i, d)| classify(i, d))
        .reduce(SuiteSummary::default, SuiteSummary::merge);
    s.violations.sort_by_key(|v| v.index);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{AlgebraSpec, ScalarValue};
    use crate::scalars::DvrDescriptor;

    fn mono(p: u64, c: &[i64]) -> AlgebraDocument {
        AlgebraDocument {
            dvr: DvrDescriptor::Zp { p },
            algebra: AlgebraSpec::Monogenic {
                poly: c.iter().map(|&x| ScalarValue::Int(x)).collect(),
            },
        }
    }

    #[test]
    fn spot_corpus() {
        let s = run_suite(&[mono(3, &[-3, 0, 1]), mono(3, &[1, 0, 1]), mono(2, &[-2, 0, 1])]);
        assert_eq!((s.instances, s.equality, s.strict, s.infinite_f), (3, 2, 1, 0));
        assert!(s.ok());
    }

    #[test]
    fn empty_and_mixed() {
        assert_eq!(run_suite(&[]), SuiteSummary::default());
        let kut = AlgebraDocument {
            dvr: DvrDescriptor::Kut { p: 2 },
            algebra: AlgebraSpec::Monogenic {
                poly: vec![ScalarValue::Text("u".into()), ScalarValue::Int(0), ScalarValue::Int(1)],
            },
        };
        let bad = AlgebraDocument {
            dvr: DvrDescriptor::Zp { p: 2 },
            algebra: AlgebraSpec::Table {
                rank: 2,
                constants: vec![],
                unit: vec![ScalarValue::Int(1), ScalarValue::Int(0)],
            },
        };
        let s = run_suite(&[kut, bad]);
        assert_eq!((s.infinite_f, s.invalid, s.violations.len()), (1, 1, 0));
    }
}
