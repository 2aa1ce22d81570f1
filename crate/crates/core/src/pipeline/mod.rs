//! End-to-end orchestration: validate, endomorphisms, Wedderburn factors,
//! invariant cone, fundamental domain, tiling verification and pushdown.

pub mod document;
pub mod report;

use std::fmt;

use num_traits::Zero;

use crate::algebra::MatrixAlgebra;
use crate::check::Check;
use crate::cone::{
    compute_ns, cone_structure, invariant_ns, symmetric_part_check, ConeStructure, ConeType,
    InvariantNS,
};
use crate::endo::{compute_end, invariant_subalgebra, rosati_inverts_group};
use crate::error::Result;
use crate::exact::matrix::{IntegerMatrix, RationalMatrix};
use crate::exact::rational::{format_rational, Rational};
use crate::reduction::hyperbolic::{hyperbolic_domain, pell_unit};
use crate::reduction::polyhedral::PolyhedralCone;
use crate::reduction::pushdown::pushdown_domain;
use crate::reduction::tiling::{
    dirichlet_domain, find_eta, reduce_class, verify_tiling, ActionSet, TilingProblem,
    TilingReport, TilingSettings,
};
use crate::reduction::ReductionResult;
use crate::torus::{
    close_group, invariant_polarization, primitive_form, validate_torus, AffineAuto, GroupAction,
    PolarizedTorus, DEFAULT_MAX_ORDER,
};
use crate::wedderburn::{decompose, CenterSignature, Decomposition};

pub use document::{parse_document, ParsedDocument, ProblemDocument, SCHEMA};
pub use report::PipelineReport;
use report::*;

/// Samples per algebra for the trace-positivity check.
pub const TRACE_SAMPLES: usize = 500;
/// Word length for the truncated Dirichlet cone of Hermitian factors.
pub const DIRICHLET_WORD_LENGTH: usize = 2;

/// How far the pipeline runs; each stage includes the previous ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Check,
    Endo,
    Cone,
    Funddom,
    Verify,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Check => "check",
            Stage::Endo => "endo",
            Stage::Cone => "cone",
            Stage::Funddom => "funddom",
            Stage::Verify => "verify",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The constructed domain with what is needed to reduce further classes.
pub struct Fundamental {
    pub domain: PolyhedralCone,
    pub actions: ActionSet,
    pub eta: Vec<Rational>,
    pub invariant_ns: InvariantNS,
}

impl Fundamental {
    pub fn is_ample(&self, x: &[Rational]) -> bool {
        self.invariant_ns.lattice.is_ample(x)
    }

    /// Reduces one invariant class into the domain.
    pub fn reduce(
        &self,
        class: &[Rational],
        settings: &TilingSettings,
    ) -> std::result::Result<ReductionResult, String> {
        if class.len() != self.domain.dim() {
            return Err(format!(
                "class has {} coordinates, the invariant classes have {}",
                class.len(),
                self.domain.dim()
            ));
        }
        if !self.is_ample(class) {
            return Err("class is not ample".into());
        }
        let oracle = |x: &[Rational]| self.is_ample(x);
        let problem = TilingProblem {
            domain: &self.domain,
            actions: &self.actions,
            eta: &self.eta,
            is_ample: &oracle,
        };
        reduce_class(&problem, class, settings)
    }
}

pub struct Run {
    pub report: PipelineReport,
    pub fundamental: Option<Fundamental>,
}

fn record(checks: &[Check]) -> Vec<CheckRecord> {
    checks.iter().map(CheckRecord::from).collect()
}

fn finish(mut report: PipelineReport, fundamental: Option<Fundamental>) -> Run {
    report.compute_status();
    Run {
        report,
        fundamental,
    }
}

/// Runs the pipeline on a parsed document up to `stage`.
pub fn run(doc: &ParsedDocument, stage: Stage) -> Run {
    let settings = doc.settings;
    let mut report = PipelineReport::new(&doc.name, stage.name(), settings.seed);

    // Torus.
    let validation = match validate_torus(&doc.complex_structure, &doc.polarization) {
        Ok(v) => v,
        Err(e) => {
            report.validation.torus.push(CheckRecord::from(Check::new(
                "torus_shape",
                false,
                e.to_string(),
            )));
            return finish(report, None);
        }
    };
    report.validation.torus = record(&validation.checks);
    report.validation.sign_normalized = validation.sign_normalized;
    if !validation.passed() {
        return finish(report, None);
    }
    let (mut torus, _) =
        PolarizedTorus::new(doc.complex_structure.clone(), doc.polarization.clone())
            .expect("validated torus");
    let dim = torus.lattice_rank();

    // Group.
    let j = torus.complex_structure().clone();
    let mut group_checks = Vec::new();
    for (k, g) in doc.group.iter().enumerate() {
        let unimodular = g.linear().is_unimodular();
        group_checks.push(Check::new(
            "group_generator_unimodular",
            unimodular,
            format!("generator {k}: det = {}", g.linear().determinant()),
        ));
        let a = g.linear().to_rational();
        let holomorphic = &a * &j == &j * &a;
        let verb = if holomorphic {
            "commutes"
        } else {
            "does not commute"
        };
        group_checks.push(Check::new(
            "group_generator_holomorphic",
            holomorphic,
            format!("generator {k} {verb} with J"),
        ));
    }
    if !group_checks.iter().all(|c| c.passed) {
        report.validation.group = record(&group_checks);
        return finish(report, None);
    }
    let group = match close_group(dim, &doc.group, DEFAULT_MAX_ORDER) {
        Ok(g) => g,
        Err(e) => {
            group_checks.push(Check::new("group_finite", false, e.to_string()));
            report.validation.group = record(&group_checks);
            return finish(report, None);
        }
    };
    group_checks.push(Check::new(
        "group_finite",
        true,
        format!("order {}", group.order()),
    ));
    group_checks.push(Check::new(
        "group_associative",
        group.is_associative(),
        "multiplication table",
    ));
    if !torus.preserves_polarization(&group) {
        let averaged = primitive_form(&invariant_polarization(torus.polarization(), &group));
        match torus.with_polarization(averaged) {
            Ok((t, _)) => {
                torus = t;
                report.validation.polarization_averaged = true;
            }
            Err(e) => {
                group_checks.push(Check::new("polarization_invariant", false, e.to_string()));
                report.validation.group = record(&group_checks);
                return finish(report, None);
            }
        }
    }
    group_checks.push(Check::new(
        "polarization_invariant",
        torus.preserves_polarization(&group),
        if report.validation.polarization_averaged {
            "averaged over the group"
        } else {
            "preserved as given"
        },
    ));
    report.validation.group_order = Some(group.order());
    report.validation.polarization = matrix_strings(torus.polarization());
    let freeness = group.freeness();
    report.validation.elements = freeness
        .iter()
        .map(|&(i, free)| {
            let g = &group.elements()[i];
            ElementRecord {
                index: i,
                translation: g.translation_strings(),
                is_translation: g.is_translation(),
                free,
            }
        })
        .collect();

    let ghv = ghv_verdict(&group);
    if let Some(expected) = doc.expect_ghv {
        group_checks.push(Check::new(
            "ghv_expectation",
            expected == ghv.is_ghv,
            format!("expected is_ghv = {expected}, computed {}", ghv.is_ghv),
        ));
    }
    report.validation.group = record(&group_checks);
    report.validation.passed = report.failing_checks().is_empty();
    report.ghv = Some(ghv);
    if !report.validation.passed || stage == Stage::Check {
        return finish(report, None);
    }

    match run_algebra(doc, stage, &torus, &group, &settings, &mut report) {
        Ok(fundamental) => finish(report, fundamental),
        Err(e) => {
            report.invariants.push(CheckRecord::from(Check::new(
                "pipeline_consistent",
                false,
                e.to_string(),
            )));
            finish(report, None)
        }
    }
}

fn ghv_verdict(group: &GroupAction) -> GhvReport {
    let mut reasons = Vec::new();
    if group.order() == 1 {
        reasons.push("group is trivial".to_string());
    }
    if group.has_translations() {
        reasons.push("contains translation".to_string());
    }
    let fixed: Vec<String> = group
        .freeness()
        .iter()
        .filter(|(_, free)| !free)
        .map(|(i, _)| i.to_string())
        .collect();
    if !fixed.is_empty() {
        reasons.push(format!("elements with fixed points: {}", fixed.join(", ")));
    }
    let is_ghv = reasons.is_empty();
    GhvReport {
        is_ghv,
        reasons,
        mode: if is_ghv { "quotient" } else { "abelian" }.into(),
    }
}

fn signature_name(s: CenterSignature) -> &'static str {
    match s {
        CenterSignature::TotallyReal => "totally_real",
        CenterSignature::TotallyComplex => "totally_complex",
    }
}

fn run_algebra(
    doc: &ParsedDocument,
    stage: Stage,
    torus: &PolarizedTorus,
    group: &GroupAction,
    settings: &TilingSettings,
    report: &mut PipelineReport,
) -> Result<Option<Fundamental>> {
    let seed = settings.seed;
    let end = compute_end(torus)?;
    let end_g = invariant_subalgebra(torus, &end, group)?;
    let ns = compute_ns(torus)?;
    let inv = invariant_ns(torus, &ns, group)?;

    let mut involution = Vec::new();
    for (label, alg) in [("End", &end.algebra), ("End^G", &end_g.algebra)] {
        involution.push(Check::new(
            "rosati_anti_automorphism",
            alg.involution_is_anti_automorphism(),
            label,
        ));
        involution.push(Check::new(
            "rosati_involutive",
            alg.involution_is_involutive(),
            label,
        ));
        involution.push(Check::new(
            "rosati_adjoint",
            alg.involution_is_adjoint(),
            label,
        ));
    }
    involution.push(Check::new(
        "invariant_subalgebra_fixed",
        end_g.is_invariant(group),
        "g' phi g = phi",
    ));
    let positivity = end.algebra.trace_positivity_check(TRACE_SAMPLES, seed);
    let positivity_g = end_g.algebra.trace_positivity_check(TRACE_SAMPLES, seed);
    let inverts = rosati_inverts_group(&end.algebra, group);
    involution.push(Check::new(
        "trace_positive",
        positivity.passed() && positivity_g.passed(),
        format!(
            "{} + {} samples, {} failures",
            positivity.samples,
            positivity_g.samples,
            positivity.failures + positivity_g.failures
        ),
    ));
    involution.push(Check::new("rosati_inverts_group", inverts, "g' = g^-1"));
    report.invariants.extend(record(&involution));
    let tp = |t: &crate::algebra::TracePositivity| TracePositivityRecord {
        samples: t.samples,
        failures: t.failures,
        gram_positive_definite: t.gram_positive_definite,
    };
    report.endo = Some(EndoReport {
        end_rank: end.rank(),
        end_invariant_rank: end_g.rank(),
        involution: record(&involution),
        trace_positivity: tp(&positivity),
        trace_positivity_invariant: tp(&positivity_g),
        rosati_inverts_group: inverts,
    });
    report.ranks = Some(Ranks {
        end: end.rank(),
        end_invariant: end_g.rank(),
        rho: ns.rank(),
        rho_invariant: inv.rank(),
    });

    let dec = decompose(&end_g.algebra, seed)?;
    let dec_checks = dec.verify(&end_g.algebra);
    report.invariants.extend(record(&dec_checks));
    report.decomposition = Some(DecompositionReport {
        center_dim: dec.center_dim,
        used_fallback: dec.used_fallback,
        factors: dec
            .factors
            .iter()
            .map(|f| FactorRecord {
                kind: f.kind.to_string(),
                places: f.places,
                dim_q: f.dim_q,
                fixed_dim: f.fixed_dim,
                center_polynomial: f.center_poly.to_string(),
                center_signature: signature_name(f.signature).into(),
            })
            .collect(),
        real_factors: dec.real_factors().iter().map(ToString::to_string).collect(),
        checks: record(&dec_checks),
    });
    if stage == Stage::Endo {
        return Ok(None);
    }

    // Cone.
    let mut cone_checks = vec![
        Check::new(
            "ns_embedding_symmetric",
            ns.embedding_is_symmetric(),
            "(E^-1 F)' = E^-1 F",
        ),
        symmetric_part_check(&ns, &end.algebra),
    ];
    let equivariant = group
        .linear_parts()
        .iter()
        .all(|a| ns.equivariance_holds(a));
    cone_checks.push(Check::new(
        "pullback_equivariance",
        equivariant,
        "f(A^T F A) = A' f(F) A",
    ));
    cone_checks.push(Check::new(
        "invariant_trace_pairing_definite",
        inv.lattice.gram().is_positive_definite(),
        "Tr(f(x) f(y)) on invariant classes",
    ));
    let polarization = inv.lattice.polarization_class();
    let polarization_ample = polarization
        .as_ref()
        .is_some_and(|d| inv.lattice.is_ample(d));
    cone_checks.push(Check::new(
        "polarization_ample",
        polarization_ample,
        "E is an invariant ample class",
    ));
    let structure = cone_structure(&inv, &end_g.algebra, &dec);
    cone_checks.push(Check::new(
        "cone_factor_dimensions",
        structure.is_ok(),
        match &structure {
            Ok(_) => "factor fixed dimensions add up to the invariant Picard number".to_string(),
            Err(e) => e.to_string(),
        },
    ));
    let rho_g = inv.rank();
    let mut memberships = Vec::new();
    for (k, c) in doc.test_classes.iter().enumerate() {
        if c.len() != rho_g {
            cone_checks.push(Check::new(
                "test_class_dimension",
                false,
                format!(
                    "test class {k} has {} coordinates, expected {rho_g}",
                    c.len()
                ),
            ));
            continue;
        }
        memberships.push(MembershipRecord {
            class: rational_strings(c),
            ample: inv.lattice.is_ample(c),
            nef: inv.lattice.is_nef(c),
        });
    }
    report.invariants.extend(record(&cone_checks));
    let (Ok(structure), Some(d)) = (structure, polarization) else {
        return Ok(None);
    };
    report.cone = Some(ConeReport {
        rho: ns.rank(),
        rho_invariant: rho_g,
        factors: structure
            .factors
            .iter()
            .map(|f| ConeFactorRecord {
                kind: f.kind.to_string(),
                places: f.places,
                cone_type: f.cone_type.to_string(),
                dim: f.dim,
                subspace: f.subspace.iter().map(|v| rational_strings(v)).collect(),
            })
            .collect(),
        simplicial: structure.is_simplicial(),
        polarization_class: rational_strings(&d),
        ray_generators: structure
            .ray_generators(&d)
            .map(|rays| rays.iter().map(|r| integer_strings(r)).collect()),
        test_classes: memberships,
    });
    if stage == Stage::Cone {
        return Ok(None);
    }

    // Fundamental domain.
    let built = build_domain(
        torus,
        group,
        &end_g.algebra,
        &dec,
        &inv,
        &structure,
        &doc.normalizer_generators,
        &d,
        settings,
    );
    report.invariants.extend(record(&built.checks));
    let mut fundamental = None;
    let mut domain_report = DomainReport {
        status: if built.domain.is_some() {
            "constructed"
        } else {
            "verifier-only"
        }
        .into(),
        construction: built.construction.clone(),
        rays: Vec::new(),
        facets: Vec::new(),
        generators: built.generators.clone(),
        eta: None,
    };
    if let Some((domain, actions)) = built.domain {
        domain_report.rays = domain.rays().iter().map(|r| integer_strings(r)).collect();
        domain_report.facets = domain.facets().iter().map(|f| integer_strings(f)).collect();
        let domain_checks = vec![
            Check::new(
                "domain_consistent",
                domain.is_consistent(),
                "ray/facet pairings and support",
            ),
            Check::new(
                "domain_duality",
                domain.duality_holds(),
                "facets recomputed from rays",
            ),
            Check::new(
                "domain_rays_nef",
                domain.rational_rays().iter().all(|r| inv.lattice.is_nef(r)),
                "every ray is nef",
            ),
        ];
        report.invariants.extend(record(&domain_checks));
        let oracle = |x: &[Rational]| inv.lattice.is_ample(x);
        match find_eta(&inv.lattice.gram(), &d, &oracle, &actions, seed) {
            Ok(eta) => {
                domain_report.eta = Some(rational_strings(&eta));
                let problem = TilingProblem {
                    domain: &domain,
                    actions: &actions,
                    eta: &eta,
                    is_ample: &oracle,
                };
                let tiling = verify_tiling(&problem, settings);
                report.tiling = Some(tiling_summary(&tiling, &actions, settings));
                fundamental = Some(Fundamental {
                    domain: domain.clone(),
                    actions,
                    eta,
                    invariant_ns: inv.clone(),
                });
            }
            Err(e) => {
                report.invariants.push(CheckRecord::from(Check::new(
                    "eta_found",
                    false,
                    e.to_string(),
                )));
            }
        }
    } else {
        report.notes.push(
            "verifier-only: no fundamental domain was constructed for at least one factor".into(),
        );
    }
    report.domain = Some(domain_report);

    // Pushdown.
    let ghv = report
        .ghv
        .as_ref()
        .filter(|g| !g.is_ghv)
        .map(|g| g.reasons.join("; "));
    if let Some(reasons) = ghv {
        report.notes.push(format!(
            "abelian mode ({reasons}): no quotient pushdown is computed"
        ));
    } else {
        let domain = fundamental.as_ref().map(|f| &f.domain);
        let push = pushdown_domain(&inv, &ns, group, domain)?;
        report.invariants.extend(record(&push.checks));
        report.pushdown = Some(PushdownReport {
            group_order: group.order(),
            checks: record(&push.checks),
            rays: push.rays.iter().map(|r| integer_strings(r)).collect(),
            ray_forms: push.ray_forms.iter().map(matrix_strings).collect(),
        });
        report.structural.push(
            "Nef(Y)^e = Nef(Y)^+ = Nef(Y) for the quotient Y = X/G (known structural fact; \
             reported, not tested)"
                .into(),
        );
    }
    Ok(fundamental)
}

fn tiling_summary(
    t: &TilingReport,
    actions: &ActionSet,
    settings: &TilingSettings,
) -> TilingSummary {
    let frac = |n: usize, d: usize| {
        if d == 0 {
            "0".to_string()
        } else {
            format_rational(&Rational::new((n as i64).into(), (d as i64).into()))
        }
    };
    TilingSummary {
        samples: t.samples,
        successes: t.successes,
        success_rate: if t.samples == 0 {
            "1".into()
        } else {
            frac(t.successes, t.samples)
        },
        max_steps: settings.max_steps,
        max_steps_used: t.max_steps_used,
        mean_steps: frac(t.total_steps, t.successes),
        recheck_passed: t.recheck_passed,
        failures: t
            .failures
            .iter()
            .take(10)
            .map(|f| FailureRecord {
                index: f.index,
                class: rational_strings(&f.class),
                reason: f.reason.clone(),
            })
            .collect(),
        failure_count: t.failures.len(),
        overlap_samples: t.overlap_samples,
        overlap_witness: t.overlap.as_ref().map(|w| OverlapRecord {
            point: rational_strings(&w.point),
            word: w.word.render(actions.names()),
            image: rational_strings(&w.image),
        }),
        complete: t.complete(),
    }
}

struct BuiltDomain {
    domain: Option<(PolyhedralCone, ActionSet)>,
    construction: Vec<String>,
    generators: Vec<GeneratorRecord>,
    checks: Vec<Check>,
}

/// `n` normalizes the group: `n g n^-1` is again an element for every `g`.
fn normalizes(n: &IntegerMatrix, group: &GroupAction) -> bool {
    let Some(n_inv) = n.unimodular_inverse() else {
        return false;
    };
    let conj = AffineAuto::linear_only(n.clone());
    let conj_inv = AffineAuto::linear_only(n_inv);
    group.elements().iter().all(|g| {
        group
            .index_of(&conj.compose(g).compose(&conj_inv))
            .is_some()
    })
}

#[allow(clippy::too_many_arguments)]
fn build_domain(
    torus: &PolarizedTorus,
    group: &GroupAction,
    end_g: &MatrixAlgebra,
    dec: &Decomposition,
    inv: &InvariantNS,
    structure: &ConeStructure,
    supplied: &[IntegerMatrix],
    d: &[Rational],
    settings: &TilingSettings,
) -> BuiltDomain {
    let rho = inv.rank();
    let j = torus.complex_structure();
    let mut checks = Vec::new();
    let mut construction = Vec::new();
    let mut generators: Vec<GeneratorRecord> = Vec::new();
    let mut actions: Vec<RationalMatrix> = Vec::new();
    let mut names: Vec<String> = Vec::new();
    let mut rays: Vec<Vec<Rational>> = Vec::new();
    let mut complete = true;

    for (k, n) in supplied.iter().enumerate() {
        let nr = n.to_rational();
        let holomorphic = &nr * j == j * &nr;
        let valid = n.is_unimodular() && holomorphic && normalizes(n, group);
        let action = if valid {
            inv.lattice.pullback_matrix(n).ok()
        } else {
            None
        };
        checks.push(Check::new(
            "normalizer_generator_valid",
            action.is_some(),
            format!("supplied generator {k}: unimodular, holomorphic, normalizes G, preserves invariant classes"),
        ));
        if let Some(action) = action {
            let name = format!("n{}", k + 1);
            generators.push(GeneratorRecord {
                name: name.clone(),
                source: "supplied".into(),
                lattice: matrix_strings(n),
                action: rational_matrix_strings(&action),
            });
            names.push(name);
            actions.push(action);
        }
    }

    let mut hermitian = Vec::new();
    for (i, (factor, simple)) in structure.factors.iter().zip(&dec.factors).enumerate() {
        let d_e = factor.projection.mul_vec(d);
        match factor.cone_type {
            ConeType::Ray => {
                construction.push(format!("factor {i} ({}): ray", factor.kind));
                rays.push(d_e);
            }
            ConeType::Hyperbolic => {
                let unit = pell_unit(end_g, simple).filter(|u| normalizes(&u.automorphism, group));
                let Some(unit) = unit else {
                    construction.push(format!(
                        "factor {i} ({}): hyperbolic, no unit derivable; verifier-only",
                        factor.kind
                    ));
                    complete = false;
                    continue;
                };
                let action = match inv.lattice.pullback_matrix(&unit.automorphism) {
                    Ok(a) => a,
                    Err(e) => {
                        construction.push(format!(
                            "factor {i}: unit does not act on invariant classes ({e})"
                        ));
                        complete = false;
                        continue;
                    }
                };
                let rest: Vec<Rational> = d.iter().zip(&d_e).map(|(a, b)| a - b).collect();
                let oracle = |v: &[Rational]| {
                    let full: Vec<Rational> = rest.iter().zip(v).map(|(a, b)| a + b).collect();
                    inv.lattice.is_ample(&full)
                };
                match hyperbolic_domain(&action, &d_e, &oracle) {
                    Ok(cone) => {
                        let name = format!("u{}", i + 1);
                        construction.push(format!(
                            "factor {i} ({}): hyperbolic, cone(D, gamma D) with gamma from the Pell solution \
                             x^2 - {} y^2 = {} raised to the power {}",
                            factor.kind, unit.d, unit.solution.norm, unit.power
                        ));
                        rays.extend(cone.rational_rays());
                        generators.push(GeneratorRecord {
                            name: name.clone(),
                            source: format!("pell D={}", unit.d),
                            lattice: matrix_strings(&unit.automorphism),
                            action: rational_matrix_strings(&action),
                        });
                        names.push(name);
                        actions.push(action);
                    }
                    Err(e) => {
                        construction.push(format!(
                            "factor {i} ({}): hyperbolic, {e}; verifier-only",
                            factor.kind
                        ));
                        complete = false;
                    }
                }
            }
            ConeType::Hermitian => hermitian.push(i),
        }
    }

    let action_set =
        ActionSet::new(rho, actions, names).expect("pullbacks of automorphisms are invertible");
    if !complete {
        return BuiltDomain {
            domain: None,
            construction,
            generators,
            checks,
        };
    }
    if !hermitian.is_empty() {
        let label = hermitian
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ");
        if supplied.is_empty() {
            construction.push(format!(
                "factors {label}: Hermitian cone without supplied generators; verifier-only"
            ));
            return BuiltDomain {
                domain: None,
                construction,
                generators,
                checks,
            };
        }
        let oracle = |x: &[Rational]| inv.lattice.is_ample(x);
        let nef = |x: &[Rational]| inv.lattice.is_nef(x);
        let attempt = find_eta(&inv.lattice.gram(), d, &oracle, &action_set, settings.seed)
            .and_then(|eta| dirichlet_domain(&eta, &action_set, DIRICHLET_WORD_LENGTH, &nef));
        return match attempt {
            Ok(cone) => {
                construction.push(format!(
                    "factors {label}: Hermitian, truncated Dirichlet cone over words of length {DIRICHLET_WORD_LENGTH}"
                ));
                BuiltDomain {
                    domain: Some((cone, action_set)),
                    construction,
                    generators,
                    checks,
                }
            }
            Err(e) => {
                construction.push(format!(
                    "factors {label}: Hermitian, Dirichlet attempt failed ({e}); verifier-only"
                ));
                BuiltDomain {
                    domain: None,
                    construction,
                    generators,
                    checks,
                }
            }
        };
    }
    let rays: Vec<Vec<Rational>> = rays
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    match PolyhedralCone::from_rays(rho, &rays) {
        Ok(cone) => BuiltDomain {
            domain: Some((cone, action_set)),
            construction,
            generators,
            checks,
        },
        Err(e) => {
            checks.push(Check::new("domain_assembled", false, e.to_string()));
            BuiltDomain {
                domain: None,
                construction,
                generators,
                checks,
            }
        }
    }
}
