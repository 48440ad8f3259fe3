//! The verification run behind `cutspec verify`: axioms, the units
//! condition, the min-formula checks and the spectral property suite for
//! each instance, plus the list of theorem-conformance checks whose failure
//! makes the run fail.

use rand::Rng;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::algebra::sampling::{rng, sample_nonnegative, DEFAULT_SPREAD};
use crate::algebra::{sample_elements, Algebra, AlgebraInstance, ConditionB, ValidationReport};
use crate::error::Result;
use crate::field_model::ModelElem;
use crate::fixtures::Fixture;
use crate::json::{cut_or_infty_to_json, ideal_to_json, instance_to_json};
use crate::ordered_values::{Cut, CutOrInfty, GroupElem};
use crate::quasival::{
    check_axioms, check_v_qv, containment_witnesses, coordinates_divisible, entry_min_qv, filter,
    image_scan, in_r_tensor_one, min_formula_qv, minimal_generators, natural_extension, ow_member,
    AxiomReport, ExtendedElem, ImageReport, MinimalBasis, QuasiValuation, VqvReport,
};
use crate::spectrum::{check_properties, enumerate_spec, ContractionMap, PropertyReport};
use crate::verdict::Verdict;

pub const SCHEMA: &str = "cutspec/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub bound: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { samples: 1000, seed: 7, bound: crate::spectrum::DEFAULT_BOUND }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MapEntry {
    pub ideal: Vec<Value>,
    pub over: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinFormulaReport {
    pub basis_size: usize,
    pub axioms: AxiomReport,
    pub v_qv: VqvReport,
    pub image: ImageReport,
    /// `W(x) ≥ 0` iff `x ∈ R ⊗ 1` on every sampled extended element.
    pub ow_equals_r: Verdict,
    /// `W(x) ≥ 0` iff every basis coordinate is divisible by the denominator.
    pub matches_divisibility: Verdict,
    pub extended_checked: usize,
}

/// How `O_W` for the entry-min quasi-valuation compares with `R ⊗ 1`.
#[derive(Clone, Debug, Serialize)]
pub struct ContainmentReport {
    pub in_ow_not_r: Option<String>,
    pub in_r_not_ow: Option<String>,
    pub r_in_ow_on_samples: bool,
    pub relation: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Conformance {
    pub check: &'static str,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub fixture: String,
    pub digest: String,
    pub validation: ValidationReport,
    pub condition_b: ConditionB,
    pub filter_axioms: AxiomReport,
    pub filter_v_qv: VqvReport,
    pub filter_image: ImageReport,
    pub min_formula: Option<MinFormulaReport>,
    pub containment: Option<ContainmentReport>,
    pub spec_size: Option<usize>,
    pub map: Vec<MapEntry>,
    pub verdicts: Option<PropertyReport>,
    pub notes: Vec<String>,
    pub conformance: Vec<Conformance>,
}

impl FixtureReport {
    pub fn failures(&self) -> impl Iterator<Item = &Conformance> {
        self.conformance.iter().filter(|c| c.verdict.is_fail())
    }

    pub fn ok(&self) -> bool {
        self.failures().next().is_none()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub samples: usize,
    pub seed: u64,
    pub bound: u64,
    pub ok: bool,
    pub fixtures: Vec<FixtureReport>,
}

impl RunReport {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// SHA-256 of the canonical instance JSON.
pub fn instance_digest(r: &AlgebraInstance) -> String {
    let canonical = serde_json::to_string(&instance_to_json(r)).expect("json");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub fn verify_all(fixtures: &[Fixture], opts: VerifyOptions) -> Result<RunReport> {
    let reports = fixtures.iter().map(|f| verify_fixture(f, opts)).collect::<Result<Vec<_>>>()?;
    Ok(RunReport {
        schema: SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION"),
        samples: opts.samples,
        seed: opts.seed,
        bound: opts.bound,
        ok: reports.iter().all(FixtureReport::ok),
        fixtures: reports,
    })
}

/// Theorem conformance: a `Fail` only when the hypothesis holds and the
/// conclusion does not.
fn when(hypothesis: bool, reason: &str, v: &Verdict) -> Verdict {
    if hypothesis {
        v.clone()
    } else {
        Verdict::not_applicable(reason)
    }
}

fn axioms_verdict(a: &AxiomReport) -> Verdict {
    [&a.b1, &a.b2, &a.b3, &a.nonnegative, &a.homogeneity]
        .into_iter()
        .find(|v| v.is_fail())
        .cloned()
        .unwrap_or(Verdict::Pass)
}

pub fn verify_fixture(fx: &Fixture, opts: VerifyOptions) -> Result<FixtureReport> {
    let r = &fx.algebra;
    let VerifyOptions { samples, seed, bound } = opts;
    let validation = r.validate_report();
    let condition_b = r.condition_b();
    let torsion_free = r.is_torsion_free();
    let w = filter(r);
    let filter_axioms = check_axioms(&w, r, samples, seed);
    let filter_v_qv = check_v_qv(&w, r, samples, seed);
    let filter_image = image_scan(&w, r, samples.min(200), seed)?;
    let mut notes = fx.notes.clone();

    let basis = match &fx.generators {
        Some(gs) => crate::quasival::minimal_generators_from(r, gs),
        None => minimal_generators(r),
    };
    let min_formula = match basis {
        Ok(b) => Some(min_formula_report(r, b, samples, seed)?),
        Err(e) => {
            notes.push(format!("no minimal basis: {e}"));
            None
        }
    };
    let containment = containment_report(r, samples, seed)?;

    let (spec_size, map, verdicts) = if r.is_unital() {
        let m = enumerate_spec(r, bound)?;
        let props = check_properties(r, &m, samples.min(200), seed)?;
        (Some(m.len()), map_entries(&m), Some(props))
    } else {
        notes.push("not unital: contraction to Spec(Ov) is undefined, spectral suite skipped".into());
        (None, vec![], None)
    };

    let mut conformance = vec![
        Conformance { check: "filter_qv_axioms", verdict: axioms_verdict(&filter_axioms) },
        Conformance {
            check: "units_condition_gives_w(a1)=v(a)",
            verdict: when(condition_b.holds, "units condition fails", &filter_v_qv.extends_v),
        },
    ];
    if let Some(mf) = &min_formula {
        conformance.push(Conformance { check: "min_formula_axioms", verdict: axioms_verdict(&mf.axioms) });
        conformance.push(Conformance { check: "min_formula_extends_v", verdict: mf.v_qv.extends_v.clone() });
        conformance.push(Conformance { check: "min_formula_w(1)=0", verdict: mf.v_qv.one_is_zero.clone() });
        conformance.push(Conformance {
            check: "min_formula_values_in_group",
            verdict: Verdict::from_witness(
                (!mf.image.is_cancellative_evidence())
                    .then(|| mf.image.non_cancellative_witness.clone().unwrap_or_else(|| "∞ on a nonzero element".into())),
            ),
        });
        conformance.push(Conformance { check: "natural_extension_ow_equals_r", verdict: mf.ow_equals_r.clone() });
        conformance.push(Conformance { check: "natural_extension_divisibility", verdict: mf.matches_divisibility.clone() });
    }
    if let Some(p) = &verdicts {
        let fin = "finite-dimensional";
        let tf = "algebra has Ov-torsion";
        let d = &p.bound_details;
        conformance.extend([
            Conformance { check: "gd_torsion_free", verdict: when(torsion_free, tf, &p.gd) },
            Conformance { check: "sgb", verdict: p.sgb.clone() },
            Conformance { check: "inc_torsion_free", verdict: when(torsion_free, &format!("{tf} or not {fin}"), &p.inc) },
            Conformance { check: "lo_units_condition", verdict: when(condition_b.holds, "units condition fails", &p.lo) },
            Conformance { check: "gu_finitely_generated", verdict: p.fg_gu.clone() },
            Conformance { check: "ggd_torsion_free", verdict: when(torsion_free, tf, &p.ggd) },
            Conformance { check: "gd_iff_minimal_primes_over_zero", verdict: gd_criterion(p) },
            Conformance { check: "max_over_iv_torsion_free", verdict: when(torsion_free, tf, &p.max_over_iv) },
            Conformance { check: "fiber_bound", verdict: when(torsion_free, tf, &d.fiber) },
            Conformance { check: "spec_size_bound", verdict: when(torsion_free, tf, &d.total) },
            Conformance { check: "spec_lower_bound", verdict: d.lower_cardinality.clone() },
            Conformance { check: "krull_dimension_equality", verdict: d.krull_eq.clone() },
            Conformance { check: "chain_bijection", verdict: p.chain_bijection.clone() },
            Conformance { check: "gu_lift", verdict: p.gu_lift.clone() },
            Conformance { check: "gd_separation", verdict: p.gd_separation.clone() },
        ]);
    }

    Ok(FixtureReport {
        fixture: fx.name.clone(),
        digest: instance_digest(r),
        validation,
        condition_b,
        filter_axioms,
        filter_v_qv,
        filter_image,
        min_formula,
        containment,
        spec_size,
        map,
        verdicts,
        notes,
        conformance,
    })
}

fn gd_criterion(p: &PropertyReport) -> Verdict {
    if p.gd.is_pass() == p.minimal_over_zero.is_pass() {
        Verdict::Pass
    } else {
        Verdict::fail(format!("GD is {} but minimal primes over zero is {}", p.gd, p.minimal_over_zero))
    }
}

pub fn map_entries(m: &ContractionMap) -> Vec<MapEntry> {
    m.nodes()
        .iter()
        .map(|n| MapEntry {
            ideal: n.grid.iter().map(ideal_to_json).collect(),
            over: ideal_to_json(&m.base()[n.over]),
        })
        .collect()
}

/// Extended elements `x ⊗ 1/t^d`: half with `x = t^d z`, so that they lie
/// in `R ⊗ 1`, half with `x` random.
pub fn sample_extended<A: Algebra + ?Sized>(r: &A, count: usize, seed: u64) -> Vec<ExtendedElem> {
    let rank = r.rank();
    let xs = sample_elements(r, count, seed);
    let mut g = rng(seed ^ 0xe7);
    xs.into_iter()
        .enumerate()
        .map(|(i, x)| {
            let d = sample_nonnegative(rank, &mut g, DEFAULT_SPREAD / 2, false).expect("always some");
            let d = if g.gen_ratio(1, 4) { GroupElem::epsilon(rank).scale(g.gen_range(0..=3)) } else { d };
            let num = if i % 2 == 0 { r.scalar(&ModelElem::t_pow(d.clone()), &x) } else { x };
            ExtendedElem::new(num, d).expect("nonnegative denominator")
        })
        .collect()
}

fn min_formula_report<A: Algebra + ?Sized>(
    r: &A,
    basis: MinimalBasis,
    samples: usize,
    seed: u64,
) -> Result<MinFormulaReport> {
    let basis_size = basis.len();
    let w = min_formula_qv(r, basis.clone());
    let axioms = check_axioms(&w, r, samples, seed);
    let v_qv = check_v_qv(&w, r, samples, seed);
    let image = image_scan(&w, r, samples.min(200), seed)?;
    let zero = CutOrInfty::Finite(Cut::zero(r.rank()));
    let ext_count = samples.max(500);
    let (mut ow_equals_r, mut matches_divisibility) = (Verdict::Pass, Verdict::Pass);
    match natural_extension(&w, r, samples.min(200), seed) {
        Ok(big_w) => {
            for x in sample_extended(r, ext_count, seed) {
                let member = ow_member(&big_w, &x)?;
                if ow_equals_r.is_pass() && member != in_r_tensor_one(r, &x) {
                    ow_equals_r = Verdict::fail(format!("{x:?}: W = {}", big_w.evaluate(&x)?));
                }
                if matches_divisibility.is_pass() && member != coordinates_divisible(&basis, &x) {
                    matches_divisibility = Verdict::fail(format!("{x:?}: W = {}", big_w.evaluate(&x)?));
                }
            }
            for x in sample_elements(r, samples.min(200), seed) {
                if ow_equals_r.is_pass() && w.evaluate(&x)? < zero {
                    ow_equals_r = Verdict::fail(format!("{x:?} ∈ R has negative value"));
                }
            }
        }
        Err(e) => {
            ow_equals_r = Verdict::fail(format!("natural extension unavailable: {e}"));
            matches_divisibility = ow_equals_r.clone();
        }
    }
    Ok(MinFormulaReport {
        basis_size,
        axioms,
        v_qv,
        image,
        ow_equals_r,
        matches_divisibility,
        extended_checked: ext_count,
    })
}

/// Entry-min natural extension against `R ⊗ 1`, for torsion-free pattern
/// algebras where it is defined.
fn containment_report<A: Algebra + ?Sized>(r: &A, samples: usize, seed: u64) -> Result<Option<ContainmentReport>> {
    if r.kind() != "pattern" {
        return Ok(None);
    }
    let w = entry_min_qv(r);
    let Ok(big_w) = natural_extension(&w, r, samples.min(200), seed) else {
        return Ok(None);
    };
    let c = containment_witnesses(r, &big_w, samples.min(200), seed)?;
    let relation = match (c.in_ow_not_r.is_some(), c.in_r_not_ow.is_some()) {
        (true, true) => "incomparable",
        (true, false) => "r_strictly_inside_ow",
        (false, true) => "ow_strictly_inside_r",
        (false, false) => "no_difference_found",
    };
    Ok(Some(ContainmentReport {
        in_ow_not_r: c.in_ow_not_r.map(|x| format!("{x:?}")),
        in_r_not_ow: c.in_r_not_ow.map(|x| format!("{x:?}")),
        r_in_ow_on_samples: c.r_in_ow_on_samples,
        relation,
    }))
}

/// A value rendered in the report schema.
pub fn value_json(v: &CutOrInfty) -> Value {
    cut_or_infty_to_json(v)
}
