//! The three equivalent conditions for equality in `f >= rk - |Spec(A (x) kbar)|`,
//! each evaluated from its own ingredients.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::FiniteFlatAlgebra;
use crate::error::Result;
use crate::fiber::{analyze_fiber, FiberReport};
use crate::invariants::{cotangent_report, trace_profile, CotangentReport, TraceProfile};
use crate::scalars::Valuation;

/// `f - (rk - count)`; infinite when `f` is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slack {
    Finite(i64),
    Infinite,
}

impl Slack {
    pub fn is_nonnegative(self) -> bool {
        !matches!(self, Slack::Finite(s) if s < 0)
    }
}

impl fmt::Display for Slack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slack::Finite(s) => write!(f, "{s}"),
            Slack::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Slack {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Slack::Finite(v) => s.serialize_i64(*v),
            Slack::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub rank: usize,
    pub f: Valuation,
    pub geometric_point_count: usize,
    pub slack: Slack,
    pub regular: bool,
    pub tame: bool,
    pub separable: bool,
    pub cokernel_defined_over_residue: bool,
    /// Equality `f = rk - count`.
    pub cond1: bool,
    /// Regular, tame, separable residue fields.
    pub cond2: bool,
    /// Tame, separable residue fields, `m_R Q = 0`.
    pub cond3: bool,
    pub consistent: bool,
}

impl TheoremVerdict {
    /// A verdict that breaks the inequality or the equivalence.
    pub fn is_violation(&self) -> bool {
        !self.consistent || !self.slack.is_nonnegative()
    }
}

pub fn verdict_from_parts(fiber: &FiberReport, trace: &TraceProfile, cotangent: &CotangentReport) -> TheoremVerdict {
    let rank = fiber.rank;
    let count = fiber.geometric_point_count;
    let slack = match trace.f {
        Valuation::Finite(f) => Slack::Finite(f as i64 - (rank as i64 - count as i64)),
        Valuation::Infinite => Slack::Infinite,
    };
    let cond1 = slack == Slack::Finite(0);
    let cond2 = cotangent.regular && fiber.tame && fiber.separable;
    let cond3 = fiber.tame && fiber.separable && trace.cokernel_defined_over_residue;
    TheoremVerdict {
        rank,
        f: trace.f,
        geometric_point_count: count,
        slack,
        regular: cotangent.regular,
        tame: fiber.tame,
        separable: fiber.separable,
        cokernel_defined_over_residue: trace.cokernel_defined_over_residue,
        cond1,
        cond2,
        cond3,
        consistent: cond1 == cond2 && cond2 == cond3,
    }
}

/// Runs fiber analysis, the trace profile and the cotangent report, then
/// combines them. Capability errors from the fiber propagate.
pub fn theorem_verdict(a: &FiniteFlatAlgebra) -> Result<TheoremVerdict> {
    let b = a.base_change_fiber();
    let fiber = analyze_fiber(&b)?;
    let trace = trace_profile(a)?;
    let cot = cotangent_report(a, &b, &fiber)?;
    Ok(verdict_from_parts(&fiber, &trace, &cot))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;
    use crate::scalars::Dvr;

    fn verdict(dvr: &Dvr, c: &[&str]) -> TheoremVerdict {
        let f = PolyRing::new(dvr.clone(), "x").from_coeffs(c.iter().map(|s| dvr.parse(s).unwrap()).collect());
        theorem_verdict(&FiniteFlatAlgebra::from_monogenic(dvr, &f).unwrap()).unwrap()
    }

    fn conds(v: &TheoremVerdict) -> (bool, bool, bool, bool) {
        (v.cond1, v.cond2, v.cond3, v.consistent)
    }

    #[test]
    fn spot_checks() {
        let z3 = Dvr::integers_at(3).unwrap();
        let z2 = Dvr::integers_at(2).unwrap();
        let v = verdict(&z3, &["-3", "0", "1"]);
        assert_eq!((v.f, v.geometric_point_count, v.slack), (Valuation::Finite(1), 1, Slack::Finite(0)));
        assert_eq!(conds(&v), (true, true, true, true));
        let v = verdict(&z2, &["-2", "0", "1"]);
        assert_eq!((v.f, v.slack, v.regular), (Valuation::Finite(3), Slack::Finite(2), true));
        assert_eq!(conds(&v), (false, false, false, true));
        let v = verdict(&z2, &["-2", "-2", "1"]);
        assert_eq!((v.f, v.slack), (Valuation::Finite(2), Slack::Finite(1)));
        assert!(v.cokernel_defined_over_residue && !v.tame);
        assert_eq!(conds(&v), (false, false, false, true));
        let v = verdict(&z3, &["1", "0", "1"]);
        assert_eq!((v.f, v.geometric_point_count, v.slack), (Valuation::Finite(0), 2, Slack::Finite(0)));
        assert_eq!(conds(&v), (true, true, true, true));
    }

    #[test]
    fn degenerate_trace_form() {
        let kut = Dvr::function_series(2).unwrap();
        let v = verdict(&kut, &["u", "0", "1"]);
        assert_eq!((v.f, v.slack), (Valuation::Infinite, Slack::Infinite));
        assert_eq!(conds(&v), (false, false, false, true));
        assert!(!v.is_violation());
        let one = verdict(&Dvr::integers_at(5).unwrap(), &["3", "1"]);
        assert_eq!(conds(&one), (true, true, true, true));
    }
}
