//! Discriminant valuations of finite flat algebras over discrete valuation
//! rings, checked against the closed fiber and the cotangent spaces.
//!
//! Supported bases are `Z_(p)`, `F_q[t]_(t)` and `F_p(u)[t]_(t)`. Start with
//! [`report::analyze`] for a full pipeline on one input document, or
//! [`verdict::theorem_verdict`] for an algebra built in code.

pub mod algebra;
pub mod corpus;
pub mod error;
pub mod fiber;
pub mod grid;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod ring;
pub mod scalars;
pub mod selftest;
pub mod suite;
pub mod verdict;

pub use algebra::{FiberAlgebra, FiniteFlatAlgebra, TableAlgebra};
pub use corpus::{generate_corpus, CorpusSpec, Mix};
pub use error::{Error, Result};
pub use fiber::{analyze_fiber, FiberReport, LocalFactor};
pub use invariants::{cotangent_report, smith_exponents, smith_over_dvr, trace_profile, CotangentReport, SmithProfile, TraceProfile};
pub use poly::{Poly, PolyRing};
pub use report::{analyze, render_text, AlgebraDocument, AlgebraSpec, AnalysisReport, ScalarValue, Status};
pub use ring::{Field, Ring};
pub use scalars::{Dvr, DvrDescriptor, DvrScalar, ResidueField, ResidueScalar, Valuation};
pub use selftest::{run_selftest, LemmaSuite};
pub use suite::{run_suite, SuiteSummary};
pub use verdict::{theorem_verdict, Slack, TheoremVerdict};
