//! Suite reports: running the applicable analyses on an algebra and
//! serializing the outcome as stable, diffable JSON or plain text.

use crate::algebra::{Algebra, AlgebraKind, IdentityVerdict};
use crate::catalog::Expected;
use crate::Result;
use lsa_exact::RingTag;
use serde_json::{json, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckStatus {
    Pass,
    Fail,
    Info,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Info => "info",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub witness: Option<String>,
    pub residual: Option<f64>,
    pub details: Option<String>,
}

impl CheckResult {
    pub fn new(name: &str, status: CheckStatus) -> Self {
        CheckResult { name: name.to_string(), status, witness: None, residual: None, details: None }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_details(mut self, d: impl Into<String>) -> Self {
        self.details = Some(d.into());
        self
    }

    fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("name".into(), json!(self.name));
        obj.insert("status".into(), json!(self.status.as_str()));
        if let Some(w) = &self.witness {
            obj.insert("witness".into(), json!(w));
        }
        if let Some(r) = self.residual {
            obj.insert("residual".into(), json!(r));
        }
        if let Some(d) = &self.details {
            obj.insert("details".into(), json!(d));
        }
        Value::Object(obj)
    }
}

/// A whole-algebra verification report; checks are ordered by name so the
/// serialized output is stable.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub target: String,
    pub seed: Option<u64>,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn new(target: &str, seed: Option<u64>) -> Self {
        SuiteReport { target: target.to_string(), seed, checks: Vec::new() }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    /// JSON with sorted keys (serde_json's map is ordered), so re-parsing
    /// and re-serializing is byte-identical.
    pub fn to_json(&self) -> Value {
        let mut obj = serde_json::Map::new();
        obj.insert("tool_version".into(), json!(TOOL_VERSION));
        obj.insert("target".into(), json!(self.target));
        if let Some(seed) = self.seed {
            obj.insert("seed".into(), json!(seed));
        }
        obj.insert(
            "checks".into(),
            Value::Array(self.checks.iter().map(|c| c.to_json()).collect()),
        );
        Value::Object(obj)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("target: {}\n", self.target));
        for c in &self.checks {
            out.push_str(&format!("{:<5} {}", c.status.as_str().to_uppercase(), c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {w}"));
            }
            if let Some(r) = c.residual {
                out.push_str(&format!("  residual: {r:e}"));
            }
            if let Some(d) = &c.details {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
        out
    }
}

fn identity_check(name: &str, verdict: &IdentityVerdict) -> CheckResult {
    match verdict {
        IdentityVerdict::Pass => CheckResult::new(name, CheckStatus::Pass),
        IdentityVerdict::Counterexample { triple, .. } => {
            CheckResult::new(name, CheckStatus::Fail)
                .with_witness(format!("basis triple {triple:?}"))
        }
    }
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(
    name: &str,
    actual: T,
    expected: Option<&T>,
) -> CheckResult {
    match expected {
        Some(e) if *e == actual => CheckResult::new(name, CheckStatus::Pass)
            .with_details(format!("{actual:?} as recorded")),
        Some(e) => CheckResult::new(name, CheckStatus::Fail)
            .with_details(format!("got {actual:?}, recorded {e:?}")),
        None => CheckResult::new(name, CheckStatus::Info).with_details(format!("{actual:?}")),
    }
}

/// Run every analysis applicable to the algebra's kind, comparing against a
/// regression record when one is supplied.
pub fn run_suite(a: &Algebra, expected: Option<&Expected>, seed: Option<u64>) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(&a.name, seed);
    let field = a.ring().is_field();
    match a.kind() {
        AlgebraKind::LeftSymmetric => {
            report.push(identity_check("left-symmetry", &a.check_left_symmetric()));
            let lie = a.associated_lie()?;
            report.push(identity_check("jacobi-of-associated-lie", &lie.check_jacobi()));

            let completeness = a.is_complete()?;
            let exp_complete = expected.and_then(|e| e.complete);
            let mut c = expect_eq("complete", completeness.complete, exp_complete.as_ref());
            if let Some((witness, traces)) = &completeness.witness {
                let coords: Vec<String> = witness.iter().map(|s| s.to_string()).collect();
                let tr: Vec<String> = traces.iter().map(|s| s.to_string()).collect();
                c = c.with_witness(format!(
                    "element ({}) with power traces [{}]",
                    coords.join(", "),
                    tr.join(", ")
                ));
            }
            report.push(c);

            let novikov = a.check_novikov();
            let exp_nov = expected.and_then(|e| e.novikov);
            let mut n = expect_eq("novikov", novikov.passed(), exp_nov.as_ref());
            if let IdentityVerdict::Counterexample { triple, .. } = &novikov {
                n = n.with_witness(format!("basis triple {triple:?}"));
            }
            report.push(n);

            if field {
                let t = a.translation_ideal()?;
                report.push(
                    CheckResult::new("translation-ideal", CheckStatus::Info)
                        .with_details(format!("dimension {}", t.dim())),
                );
                let c = a.lsa_center()?;
                report.push(
                    CheckResult::new("center", CheckStatus::Info)
                        .with_details(format!("dimension {}", c.dim())),
                );
                let inv = lie.lie_invariants()?;
                report.push(expect_eq(
                    "lie-center-dim",
                    inv.center_dim,
                    expected.and_then(|e| e.center_dim).as_ref(),
                ));
                report.push(expect_eq(
                    "lie-derived-dims",
                    inv.derived_dims.clone(),
                    expected.and_then(|e| e.derived_dims.clone()).as_ref(),
                ));
                report.push(expect_eq(
                    "lie-solvable",
                    inv.solvable,
                    expected.and_then(|e| e.solvable).as_ref(),
                ));
                report.push(expect_eq(
                    "lie-nilpotent",
                    inv.nilpotent,
                    expected.and_then(|e| e.nilpotent).as_ref(),
                ));
            } else {
                report.push(
                    CheckResult::new("translation-ideal", CheckStatus::Info)
                        .with_details("skipped: symbolic parameters".to_string()),
                );
            }
        }
        AlgebraKind::Lie => {
            report.push(identity_check("antisymmetry", &a.check_antisymmetry()));
            report.push(identity_check("jacobi", &a.check_jacobi()));
            if field {
                let inv = a.lie_invariants()?;
                report.push(expect_eq(
                    "lie-center-dim",
                    inv.center_dim,
                    expected.and_then(|e| e.center_dim).as_ref(),
                ));
                report.push(expect_eq(
                    "lie-derived-dims",
                    inv.derived_dims.clone(),
                    expected.and_then(|e| e.derived_dims.clone()).as_ref(),
                ));
                report.push(expect_eq(
                    "lie-solvable",
                    inv.solvable,
                    expected.and_then(|e| e.solvable).as_ref(),
                ));
                report.push(expect_eq(
                    "lie-nilpotent",
                    inv.nilpotent,
                    expected.and_then(|e| e.nilpotent).as_ref(),
                ));
            }
        }
        AlgebraKind::Bilinear => {
            report.push(identity_check("left-symmetry", &a.check_left_symmetric()));
            report.push(identity_check("jacobi", &a.check_jacobi()));
        }
    }
    // gaussian algebras get their complex-specific checks through realified
    // completeness above; nothing extra here
    let _ = RingTag::Gaussian;
    Ok(report)
}
