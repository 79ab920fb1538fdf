//! Machine-readable report types shared by the CLI and the FFI layer.
//! Every report embeds its run configuration so it can be reproduced
//! from the report alone.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::builder::EPolyReport;
use crate::criterion::{ChiReport, CriterionVerdict, PthPowerTestResult};
use crate::fingerprint::GroupFingerprint;
use crate::poly::RatPoly;
use crate::tower::{Tower, TowerReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Clone, Default)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_trials: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprint_budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search_box: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub override_ideal_test: Option<bool>,
}

#[derive(Serialize)]
pub struct TowerDoc {
    pub schema: u32,
    pub config: RunConfig,
    pub tower: TowerReport,
    pub period_min_poly: String,
    pub period_min_poly_coeffs: Vec<String>,
}

#[derive(Serialize)]
pub struct ChiDoc {
    pub q: u64,
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betas: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_mod_p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<u64>,
}

#[derive(Serialize)]
pub struct McDoc {
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<u64>,
    pub trials: u64,
    pub seed: u64,
}

pub fn mc_doc(result: &PthPowerTestResult, trials: u64, seed: u64) -> McDoc {
    match result {
        PthPowerTestResult::NotPthPower(q) => McDoc {
            result: "not_pth_power".into(),
            witness: Some(*q),
            trials,
            seed,
        },
        PthPowerTestResult::ProbablyPthPower(n) => McDoc {
            result: "probably_pth_power".into(),
            witness: None,
            trials: *n,
            seed,
        },
    }
}

#[derive(Serialize)]
pub struct VerdictDoc {
    pub schema: u32,
    pub config: RunConfig,
    pub tower: TowerReport,
    pub x: String,
    pub norm: String,
    pub primes: Vec<ChiDoc>,
    pub ideal_criterion: bool,
    pub h27_ok: bool,
    pub c9c3_ok: bool,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_h27: Option<McDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_c9c3: Option<McDoc>,
}

fn chi_docs(v: &CriterionVerdict) -> Vec<ChiDoc> {
    v.per_prime
        .iter()
        .map(|(q, class, chi)| {
            let chi: Option<&ChiReport> = chi.as_ref();
            ChiDoc {
                q: *q,
                class: class.label().to_string(),
                betas: chi.map(|c| c.betas.clone()),
                chi: chi.map(|c| c.chi),
                chi_mod_p: chi.map(|c| c.chi_mod_p),
                a1: chi.map(|c| c.a1),
            }
        })
        .collect()
}

pub fn verdict_doc(
    t: &Tower,
    config: RunConfig,
    x_text: &str,
    v: &CriterionVerdict,
    mc_h27: Option<McDoc>,
    mc_c9c3: Option<McDoc>,
) -> VerdictDoc {
    VerdictDoc {
        schema: SCHEMA_VERSION,
        config,
        tower: t.report(),
        x: x_text.to_string(),
        norm: v.factorization.display(),
        primes: chi_docs(v),
        ideal_criterion: v.ideal_criterion_holds,
        h27_ok: v.heisenberg_ok,
        c9c3_ok: v.semidirect_ok,
        notes: v.notes.clone(),
        mc_h27,
        mc_c9c3,
    }
}

#[derive(Serialize)]
pub struct FingerprintDoc {
    pub samples: u64,
    pub skipped: u64,
    pub patterns: BTreeMap<String, u64>,
    pub verdict: String,
}

pub fn fingerprint_doc(fp: &GroupFingerprint) -> FingerprintDoc {
    FingerprintDoc {
        samples: fp.sampled_primes,
        skipped: fp.skipped,
        patterns: fp
            .patterns
            .iter()
            .map(|(k, v)| {
                let key = k
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                (key, *v)
            })
            .collect(),
        verdict: fp.verdict.label().to_string(),
    }
}

#[derive(Serialize)]
pub struct PolyDoc {
    pub text: String,
    /// Source of truth for tests: coefficients ascending by degree.
    pub coeffs: Vec<String>,
}

pub fn poly_doc(p: &RatPoly) -> PolyDoc {
    PolyDoc {
        text: p.to_string(),
        coeffs: p.coeff_strings(),
    }
}

#[derive(Serialize)]
pub struct BuildDoc {
    pub schema: u32,
    pub config: RunConfig,
    pub tower: TowerReport,
    pub group: String,
    pub x: String,
    pub omega: String,
    pub trace_cubic: PolyDoc,
    pub e_poly: PolyDoc,
    pub ideal_criterion: bool,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<FingerprintDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrimination: Option<String>,
}

pub fn build_doc(
    t: &Tower,
    config: RunConfig,
    x_text: &str,
    report: &EPolyReport,
    discrimination: Option<String>,
) -> BuildDoc {
    BuildDoc {
        schema: SCHEMA_VERSION,
        config,
        tower: t.report(),
        group: report.group.label().to_string(),
        x: x_text.to_string(),
        omega: report.omega.to_string(),
        trace_cubic: poly_doc(&report.trace_cubic),
        e_poly: poly_doc(&report.e_poly),
        ideal_criterion: report.verdict.ideal_criterion_holds,
        notes: report.verdict.notes.clone(),
        fingerprint: report.fingerprint.as_ref().map(fingerprint_doc),
        discrimination,
    }
}

#[derive(Serialize)]
pub struct SearchHitDoc {
    pub u: i64,
    pub v: i64,
    pub w: i64,
    pub x: String,
    pub norm: String,
    pub ideal_criterion: bool,
}

#[derive(Serialize)]
pub struct SearchDoc {
    pub schema: u32,
    pub config: RunConfig,
    pub tower: TowerReport,
    pub hits: Vec<SearchHitDoc>,
}

#[derive(Serialize)]
pub struct FingerprintCmdDoc {
    pub schema: u32,
    pub config: RunConfig,
    pub poly: PolyDoc,
    pub fingerprint: FingerprintDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrimination: Option<String>,
}
