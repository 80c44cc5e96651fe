//! Input documents and the analysis report.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteFlatAlgebra, Provenance, TableAlgebra};
use crate::error::{Error, Result};
use crate::fiber::{analyze_fiber, fiber_trace_check, FactorSummary};
use crate::invariants::{cotangent_report, trace_profile, CotangentReport};
use crate::poly::PolyRing;
use crate::ring::Ring;
use crate::scalars::{Dvr, DvrDescriptor, DvrScalar, Valuation};
use crate::verdict::{verdict_from_parts, TheoremVerdict};

/// A scalar in a document: a JSON integer or an expression string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarValue {
    Int(i64),
    Text(String),
}

impl ScalarValue {
    pub fn parse(&self, dvr: &Dvr) -> Result<DvrScalar> {
        match self {
            ScalarValue::Int(n) => Ok(dvr.from_int(*n)),
            ScalarValue::Text(s) => dvr.parse(s),
        }
    }

    pub fn from_scalar(dvr: &Dvr, x: &DvrScalar) -> Self {
        let s = dvr.render(x);
        match s.parse::<i64>() {
            Ok(n) => ScalarValue::Int(n),
            Err(_) => ScalarValue::Text(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraSpec {
    Monogenic {
        poly: Vec<ScalarValue>,
    },
    Product {
        factors: Vec<AlgebraSpec>,
    },
    Table {
        rank: usize,
        constants: Vec<Vec<Vec<ScalarValue>>>,
        unit: Vec<ScalarValue>,
    },
}

/// `{"dvr": ..., "algebra": ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub dvr: DvrDescriptor,
    pub algebra: AlgebraSpec,
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn build(&self) -> Result<FiniteFlatAlgebra> {
        let dvr = Dvr::new(self.dvr.clone())?;
        build_spec(&dvr, &self.algebra)
    }

    pub fn from_algebra(a: &FiniteFlatAlgebra) -> Self {
        AlgebraDocument {
            dvr: a.dvr().descriptor().clone(),
            algebra: spec_of(a),
        }
    }
}

fn build_spec(dvr: &Dvr, spec: &AlgebraSpec) -> Result<FiniteFlatAlgebra> {
    let scalars = |v: &[ScalarValue]| v.iter().map(|x| x.parse(dvr)).collect::<Result<Vec<_>>>();
    match spec {
        AlgebraSpec::Monogenic { poly } => {
            let f = PolyRing::new(dvr.clone(), "x").from_coeffs(scalars(poly)?);
            FiniteFlatAlgebra::from_monogenic(dvr, &f)
        }
        AlgebraSpec::Product { factors } => {
            let mut parts = factors.iter().map(|s| build_spec(dvr, s));
            let first = parts
                .next()
                .ok_or_else(|| Error::invalid("product needs at least one factor"))??;
            parts.try_fold(first, |acc, p| FiniteFlatAlgebra::product(&acc, &p?))
        }
        AlgebraSpec::Table {
            rank,
            constants,
            unit,
        } => {
            if unit.len() != *rank {
                return Err(Error::invalid(format!("unit has length {}, rank is {rank}", unit.len())));
            }
            let c = constants
                .iter()
                .map(|row| row.iter().map(|v| scalars(v)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(FiniteFlatAlgebra::from_table(TableAlgebra::new(dvr.clone(), c, scalars(unit)?)?))
        }
    }
}

fn spec_of(a: &FiniteFlatAlgebra) -> AlgebraSpec {
    let dvr = a.dvr();
    let sv = |x: &DvrScalar| ScalarValue::from_scalar(dvr, x);
    match a.provenance() {
        Provenance::Monogenic(f) => AlgebraSpec::Monogenic {
            poly: f.coeffs().iter().map(sv).collect(),
        },
        Provenance::Product(fs) => AlgebraSpec::Product {
            factors: fs.iter().map(spec_of).collect(),
        },
        Provenance::Table => AlgebraSpec::Table {
            rank: a.rank(),
            constants: a
                .table()
                .constants()
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(sv).collect()).collect())
                .collect(),
            unit: a.table().unit().iter().map(sv).collect(),
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationSection {
    pub ok: bool,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberSection {
    pub residue_field: String,
    pub factors: Vec<FactorSummary>,
    pub rank: usize,
    pub geometric_point_count: usize,
    pub tame: bool,
    pub separable: bool,
    pub trace_formula_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceSection {
    pub gram: Vec<Vec<String>>,
    pub det: String,
    pub f: Valuation,
    pub exponents: Vec<u64>,
    pub rank_deficiency: usize,
    pub generically_etale: bool,
    pub etale: bool,
    pub cokernel_defined_over_residue: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Invalid,
    Capability,
    Violation,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageError {
    pub stage: String,
    pub class: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub input: AlgebraDocument,
    pub backend: String,
    pub rank: usize,
    pub status: Status,
    pub validation: ValidationSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<FiberSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cotangent: Option<CotangentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<TheoremVerdict>,
    pub errors: Vec<StageError>,
    pub timing_ms: f64,
}

impl AnalysisReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// The report without wall-clock timing, for replay comparisons.
    pub fn replay_value(&self) -> serde_json::Value {
        let mut v = self.to_json();
        v.as_object_mut().expect("object").remove("timing_ms");
        v
    }
}

fn stage_error(stage: &str, e: &Error) -> StageError {
    let class = match e {
        Error::Parse(_) => "parse",
        Error::InvalidInput(_) => "invalid",
        Error::Capability(_) => "capability",
        Error::Internal(_) => "internal",
    };
    StageError {
        stage: stage.into(),
        class: class.into(),
        message: e.to_string(),
    }
}

/// parse, validate, fiber analysis, trace profile, cotangent report and
/// verdict. Parse and construction failures are returned as errors; later
/// failures are recorded per stage in the report.
pub fn analyze(doc: &AlgebraDocument) -> Result<AnalysisReport> {
    let start = Instant::now();
    let a = doc.build()?;
    let dvr = a.dvr();
    let violations: Vec<String> = a.validate().iter().map(ToString::to_string).collect();
    let mut report = AnalysisReport {
        input: doc.clone(),
        backend: dvr.descriptor().to_string(),
        rank: a.rank(),
        status: Status::Ok,
        validation: ValidationSection {
            ok: violations.is_empty(),
            violations,
        },
        fiber: None,
        trace: None,
        cotangent: None,
        verdict: None,
        errors: Vec::new(),
        timing_ms: 0.0,
    };
    if !report.validation.ok {
        report.status = Status::Invalid;
        report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
        return Ok(report);
    }
    let record = |report: &mut AnalysisReport, stage: &str, e: Error| {
        report.status = match (&report.status, &e) {
            (_, Error::Internal(_)) | (Status::Violation, _) => Status::Violation,
            (_, Error::Capability(_)) => Status::Capability,
            _ => Status::Invalid,
        };
        report.errors.push(stage_error(stage, &e));
    };
    let trace = match trace_profile(&a) {
        Ok(t) => {
            report.trace = Some(TraceSection {
                gram: t.gram.iter().map(|r| r.iter().map(|x| dvr.render(x)).collect()).collect(),
                det: dvr.render(&t.det),
                f: t.f,
                exponents: t.smith.exponents.clone(),
                rank_deficiency: t.smith.rank_deficiency,
                generically_etale: t.generically_etale,
                etale: t.etale,
                cokernel_defined_over_residue: t.cokernel_defined_over_residue,
                note: t.note.clone(),
            });
            Some(t)
        }
        Err(e) => {
            record(&mut report, "trace", e);
            None
        }
    };
    let b = a.base_change_fiber();
    let fiber = match analyze_fiber(&b) {
        Ok(f) => Some(f),
        Err(e) => {
            record(&mut report, "fiber", e);
            None
        }
    };
    if let Some(fr) = &fiber {
        let mut holds = true;
        for factor in &fr.factors {
            match fiber_trace_check(b.table(), factor) {
                Ok(ok) => holds &= ok,
                Err(e) => record(&mut report, "fiber", e),
            }
        }
        if !holds {
            record(&mut report, "fiber", Error::internal("fiber trace formula fails"));
        }
        report.fiber = Some(FiberSection {
            residue_field: b.field().describe(),
            factors: fr.summaries(b.field()),
            rank: fr.rank,
            geometric_point_count: fr.geometric_point_count,
            tame: fr.tame,
            separable: fr.separable,
            trace_formula_holds: holds,
        });
        match cotangent_report(&a, &b, fr) {
            Ok(c) => report.cotangent = Some(c),
            Err(e) => record(&mut report, "cotangent", e),
        }
    }
    if let (Some(fr), Some(t), Some(c)) = (&fiber, &trace, &report.cotangent) {
        let v = verdict_from_parts(fr, t, c);
        if v.is_violation() {
            record(
                &mut report,
                "verdict",
                Error::internal(format!(
                    "theorem check failed: slack {}, conditions {} {} {}",
                    v.slack, v.cond1, v.cond2, v.cond3
                )),
            );
        }
        report.verdict = Some(v);
    }
    report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Plain-text rendering of a report.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "backend    {}", r.backend);
    let _ = writeln!(s, "rank       {}", r.rank);
    let _ = writeln!(s, "status     {:?}", r.status);
    if !r.validation.ok {
        for v in &r.validation.violations {
            let _ = writeln!(s, "violation  {v}");
        }
    }
    if let Some(t) = &r.trace {
        let _ = writeln!(s, "gram       {}", t.gram.iter().map(|row| format!("[{}]", row.join(", "))).collect::<Vec<_>>().join(" "));
        let _ = writeln!(s, "det        {}", t.det);
        let _ = writeln!(s, "f          {}", t.f);
        let _ = writeln!(s, "exponents  {:?}", t.exponents);
        if let Some(n) = &t.note {
            let _ = writeln!(s, "note       {n}");
        }
    }
    if let Some(f) = &r.fiber {
        let _ = writeln!(s, "fiber      over {}, {} geometric point(s)", f.residue_field, f.geometric_point_count);
        for (i, x) in f.factors.iter().enumerate() {
            let _ = writeln!(
                s,
                "  factor {i}: dim {} e {} [k(p):k] {} sep {} h {} tame {} separable {} ({})",
                x.dim, x.e, x.residue_degree, x.separable_degree, x.h, x.tame, x.separable, x.residue_poly
            );
        }
    }
    if let Some(c) = &r.cotangent {
        let dims: Vec<String> = c.entries.iter().map(|e| e.dimension.to_string()).collect();
        let _ = writeln!(s, "cotangent  dims [{}], regular {}", dims.join(", "), c.regular);
    }
    if let Some(v) = &r.verdict {
        let _ = writeln!(s, "slack      {}", v.slack);
        let _ = writeln!(s, "conditions {} {} {} (consistent {})", v.cond1, v.cond2, v.cond3, v.consistent);
    }
    for e in &r.errors {
        let _ = writeln!(s, "error      [{}] {}", e.stage, e.message);
    }
    s
}
