//! Machine-readable pipeline report. Numbers that are not small counts are
//! rendered as exact strings; there is no timing, so reports are reproducible.

use num_bigint::BigInt;
use num_traits::Num;
use serde::Serialize;

use crate::check::Check;
use crate::exact::matrix::Matrix;
use crate::exact::rational::{format_rational, Rational};

pub const REPORT_SCHEMA: &str = "conecrafter-report/1";

pub fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn integer_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn matrix_strings<T: ToString + Clone + Num>(m: &Matrix<T>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect()
}

pub fn rational_matrix_strings(m: &Matrix<Rational>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| rational_strings(row))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        CheckRecord {
            name: c.name.to_string(),
            passed: c.passed,
            detail: c.detail.clone(),
        }
    }
}

impl From<Check> for CheckRecord {
    fn from(c: Check) -> Self {
        CheckRecord::from(&c)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ElementRecord {
    pub index: usize,
    pub translation: Vec<String>,
    pub is_translation: bool,
    pub free: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub torus: Vec<CheckRecord>,
    pub sign_normalized: bool,
    pub group: Vec<CheckRecord>,
    pub group_order: Option<usize>,
    pub elements: Vec<ElementRecord>,
    pub polarization_averaged: bool,
    /// The polarization used downstream (after sign normalization and averaging).
    pub polarization: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GhvReport {
    pub is_ghv: bool,
    pub reasons: Vec<String>,
    /// `"quotient"` when the action is free, `"abelian"` otherwise.
    pub mode: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ranks {
    pub end: usize,
    pub end_invariant: usize,
    pub rho: usize,
    pub rho_invariant: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TracePositivityRecord {
    pub samples: usize,
    pub failures: usize,
    pub gram_positive_definite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoReport {
    pub end_rank: usize,
    pub end_invariant_rank: usize,
    pub involution: Vec<CheckRecord>,
    pub trace_positivity: TracePositivityRecord,
    pub trace_positivity_invariant: TracePositivityRecord,
    pub rosati_inverts_group: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorRecord {
    pub kind: String,
    pub places: usize,
    pub dim_q: usize,
    pub fixed_dim: usize,
    pub center_polynomial: String,
    pub center_signature: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub center_dim: usize,
    pub used_fallback: bool,
    pub factors: Vec<FactorRecord>,
    /// One entry per real simple factor.
    pub real_factors: Vec<String>,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeFactorRecord {
    pub kind: String,
    pub places: usize,
    pub cone_type: String,
    pub dim: usize,
    pub subspace: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipRecord {
    pub class: Vec<String>,
    pub ample: bool,
    pub nef: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub rho: usize,
    pub rho_invariant: usize,
    pub factors: Vec<ConeFactorRecord>,
    pub simplicial: bool,
    pub polarization_class: Vec<String>,
    pub ray_generators: Option<Vec<Vec<String>>>,
    pub test_classes: Vec<MembershipRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub source: String,
    pub lattice: Vec<Vec<String>>,
    pub action: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomainReport {
    /// `"constructed"` or `"verifier-only"`.
    pub status: String,
    pub construction: Vec<String>,
    pub rays: Vec<Vec<String>>,
    pub facets: Vec<Vec<String>>,
    pub generators: Vec<GeneratorRecord>,
    pub eta: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub index: usize,
    pub class: Vec<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapRecord {
    pub point: Vec<String>,
    pub word: String,
    pub image: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TilingSummary {
    pub samples: usize,
    pub successes: usize,
    pub success_rate: String,
    pub max_steps: usize,
    pub max_steps_used: usize,
    pub mean_steps: String,
    pub recheck_passed: bool,
    /// At most the first ten failures.
    pub failures: Vec<FailureRecord>,
    pub failure_count: usize,
    pub overlap_samples: usize,
    pub overlap_witness: Option<OverlapRecord>,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushdownReport {
    pub group_order: usize,
    pub checks: Vec<CheckRecord>,
    pub rays: Vec<Vec<String>>,
    pub ray_forms: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionRecord {
    pub class: Vec<String>,
    pub word: String,
    pub reduced: Vec<String>,
    pub steps: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Status {
    pub exit_code: i32,
    pub failing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub schema: String,
    pub name: String,
    pub command: String,
    pub seed: u64,
    pub validation: ValidationReport,
    pub ghv: Option<GhvReport>,
    pub ranks: Option<Ranks>,
    pub endo: Option<EndoReport>,
    pub decomposition: Option<DecompositionReport>,
    pub cone: Option<ConeReport>,
    pub domain: Option<DomainReport>,
    pub tiling: Option<TilingSummary>,
    pub pushdown: Option<PushdownReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduction: Option<ReductionRecord>,
    pub invariants: Vec<CheckRecord>,
    pub structural: Vec<String>,
    pub notes: Vec<String>,
    pub status: Status,
}

impl PipelineReport {
    pub fn new(name: &str, command: &str, seed: u64) -> Self {
        PipelineReport {
            schema: REPORT_SCHEMA.into(),
            name: name.into(),
            command: command.into(),
            seed,
            validation: ValidationReport::default(),
            ghv: None,
            ranks: None,
            endo: None,
            decomposition: None,
            cone: None,
            domain: None,
            tiling: None,
            pushdown: None,
            reduction: None,
            invariants: Vec::new(),
            structural: Vec::new(),
            notes: Vec::new(),
            status: Status::default(),
        }
    }

    /// Every failing check, validation first.
    pub fn failing_checks(&self) -> Vec<String> {
        let validation = self
            .validation
            .torus
            .iter()
            .chain(&self.validation.group)
            .filter(|c| !c.passed)
            .map(|c| c.name.clone());
        let invariants = self
            .invariants
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.clone());
        validation.chain(invariants).collect()
    }

    /// 0 when everything passes, 2 on a validation or invariant failure,
    /// 3 when the tiling verification is incomplete.
    pub fn compute_status(&mut self) {
        let mut failing = self.failing_checks();
        let tiling_incomplete = self.tiling.as_ref().is_some_and(|t| !t.complete);
        let exit_code = if !failing.is_empty() {
            2
        } else if tiling_incomplete {
            failing.push("tiling_complete".into());
            3
        } else {
            0
        };
        self.status = Status { exit_code, failing };
    }
}
