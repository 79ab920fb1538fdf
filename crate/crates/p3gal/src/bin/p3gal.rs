//! Command-line front end: tower | check | build | search | fingerprint.
//! All output is JSON by default (schema 1); every report embeds the run
//! configuration needed to reproduce it.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::process::ExitCode;

use p3gal::builder::{build, default_theta_3_7, verify_theta, GroupTarget};
use p3gal::criterion::{criterion_verdict, pth_power_mc_test, search_candidates};
use p3gal::error::Error;
use p3gal::expr::parse_element;
use p3gal::fingerprint::{discriminate, survey, Discrimination};
use p3gal::phinorm::{compute_b, GroupVariant};
use p3gal::poly::{BigRat, RatPoly};
use p3gal::report::{
    build_doc, fingerprint_doc, mc_doc, poly_doc, verdict_doc, FingerprintCmdDoc, RunConfig,
    SearchDoc, SearchHitDoc, TowerDoc, SCHEMA_VERSION,
};
use p3gal::tower::{build_tower, period_min_poly, Tower};

#[derive(Parser)]
#[command(name = "p3gal", version, about = "Non-abelian order-p^3 Galois extensions of Q: tower arithmetic, the suitability criterion, and degree-9 polynomial synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct TowerFlags {
    /// Odd prime p
    #[arg(short, long)]
    p: u64,
    /// Prime r with r = 1 (mod p)
    #[arg(short, long)]
    r: u64,
    /// Primitive root mod p, or -1 (builder mode)
    #[arg(short, long, allow_hyphen_values = true)]
    e: Option<i64>,
}

#[derive(Args, Clone)]
struct OutputFlags {
    /// Write the JSON report to a file instead of stdout
    #[arg(long)]
    out: Option<String>,
    /// Output format
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Construct the tower and print its period minimal polynomial
    Tower {
        #[command(flatten)]
        tower: TowerFlags,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Run the suitability criterion on an element of L
    Check {
        #[command(flatten)]
        tower: TowerFlags,
        /// Element expression in zp, zr, d
        #[arg(short, long)]
        x: String,
        /// Monte-Carlo trials for the p-th-power tests
        #[arg(long, default_value_t = 40)]
        mc_trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Build the degree-9 polynomial for a target group (p = 3)
    Build {
        #[command(flatten)]
        tower: TowerFlags,
        #[arg(short, long)]
        x: String,
        /// Target group: h27 or c9c3
        #[arg(long)]
        group: String,
        /// Kummer generator expression (c9c3 only; defaults to the
        /// built-in value on the (3,7) tower)
        #[arg(long)]
        theta: Option<String>,
        /// Proceed even when the ideal criterion fails
        #[arg(long)]
        override_ideal_test: bool,
        /// Sample this many primes to fingerprint the Galois group
        #[arg(long)]
        fingerprint: Option<u64>,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Scan x = u*d + v + w*zp over a coefficient box for passing elements
    Search {
        #[command(flatten)]
        tower: TowerFlags,
        /// Coefficient box bound for u, v, w
        #[arg(long = "box", default_value_t = 2)]
        box_bound: i64,
        #[arg(long, default_value_t = 100)]
        limit: u64,
        #[command(flatten)]
        output: OutputFlags,
    },
    /// Frobenius cycle-type survey of a monic polynomial
    Fingerprint {
        /// Polynomial: path to a file, or inline. Accepts a JSON array of
        /// coefficients (ascending) or a comma-separated list, rationals
        /// as "num/den".
        #[arg(long)]
        poly: String,
        /// Claimed group to test against: h27 or c9c3
        #[arg(long)]
        claimed: Option<String>,
        #[arg(long, default_value_t = 100)]
        budget: u64,
        #[arg(long, default_value_t = 2)]
        start: u64,
        #[command(flatten)]
        output: OutputFlags,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::CongruenceViolation { .. } | Error::BadGenerator(_) => 2,
        Error::Parse(_) => 3,
        Error::FactorizationIncomplete(_) => 4,
        Error::CriterionNotSatisfied => 5,
        _ => 6,
    }
}

fn emit<T: Serialize>(doc: &T, output: &OutputFlags, text: Option<String>) -> ExitCode {
    let json = serde_json::to_string_pretty(doc).expect("reports serialize");
    if let Some(path) = &output.out {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("error: cannot write {path}: {e}");
            return ExitCode::from(6);
        }
        if output.format == "text" {
            if let Some(t) = text {
                println!("{t}");
            }
        }
        return ExitCode::SUCCESS;
    }
    match (output.format.as_str(), text) {
        ("text", Some(t)) => println!("{t}"),
        _ => println!("{json}"),
    }
    ExitCode::SUCCESS
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(&err))
}

fn make_tower(flags: &TowerFlags) -> Result<Tower, Error> {
    build_tower(flags.p, flags.r, flags.e, None)
}

fn parse_group(s: &str) -> Result<GroupTarget, Error> {
    match s {
        "h27" => Ok(GroupTarget::H27),
        "c9c3" => Ok(GroupTarget::C9xC3),
        other => Err(Error::Parse(format!("unknown group '{other}'"))),
    }
}

fn parse_rational(s: &str) -> Result<BigRat, Error> {
    let s = s.trim().trim_matches('"');
    let parse_int = |t: &str| {
        t.trim()
            .parse::<num_bigint::BigInt>()
            .map_err(|_| Error::Parse(format!("bad rational '{s}'")))
    };
    match s.split_once('/') {
        Some((n, d)) => Ok(BigRat::new(parse_int(n)?, parse_int(d)?)),
        None => Ok(BigRat::from_integer(parse_int(s)?)),
    }
}

fn parse_poly_arg(arg: &str) -> Result<RatPoly, Error> {
    let content = if std::path::Path::new(arg).exists() {
        std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    let content = content.trim();
    // either a JSON document with a "coeffs" array, a bare JSON array,
    // or a comma-separated list
    if let Ok(v) = serde_json::from_str::<serde_json::Value>(content) {
        let arr = v
            .get("e_poly")
            .and_then(|e| e.get("coeffs"))
            .or_else(|| v.get("coeffs"))
            .and_then(|c| c.as_array())
            .or_else(|| v.as_array());
        if let Some(arr) = arr {
            let coeffs = arr
                .iter()
                .map(|item| match item {
                    serde_json::Value::String(s) => parse_rational(s),
                    serde_json::Value::Number(n) => parse_rational(&n.to_string()),
                    _ => Err(Error::Parse("bad coefficient entry".into())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(RatPoly::new(coeffs));
        }
    }
    let coeffs = content
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RatPoly::new(coeffs))
}

fn run() -> Result<ExitCode, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Tower { tower, output } => {
            let t = make_tower(&tower)?;
            let f = period_min_poly(&t)?;
            let doc = TowerDoc {
                schema: SCHEMA_VERSION,
                config: RunConfig {
                    command: "tower".into(),
                    p: Some(t.p),
                    r: Some(t.r),
                    e: Some(t.e),
                    ..Default::default()
                },
                tower: t.report(),
                period_min_poly: f.to_string(),
                period_min_poly_coeffs: f.coeff_strings(),
            };
            Ok(emit(&doc, &output, Some(format!("period minimal polynomial: {f}"))))
        }
        Command::Check {
            tower,
            x,
            mc_trials,
            seed,
            output,
        } => {
            let t = make_tower(&tower)?;
            let elem = parse_element(&t, &x)?;
            let v = criterion_verdict(&t, &elem)?;
            let bh = compute_b(&t, &elem, GroupVariant::Heisenberg)?;
            let bs = compute_b(&t, &elem, GroupVariant::Semidirect)?;
            let mc_h = pth_power_mc_test(&t, &bh, mc_trials, seed)?;
            let mc_s = pth_power_mc_test(&t, &bs, mc_trials, seed)?;
            let config = RunConfig {
                command: "check".into(),
                p: Some(t.p),
                r: Some(t.r),
                e: Some(t.e),
                x: Some(x.clone()),
                mc_trials: Some(mc_trials),
                seed: Some(seed),
                ..Default::default()
            };
            let doc = verdict_doc(
                &t,
                config,
                &x,
                &v,
                Some(mc_doc(&mc_h, mc_trials, seed)),
                Some(mc_doc(&mc_s, mc_trials, seed)),
            );
            let text = format!(
                "norm {} | ideal criterion: {} | h27_ok: {} | c9c3_ok: {}",
                doc.norm, doc.ideal_criterion, doc.h27_ok, doc.c9c3_ok
            );
            Ok(emit(&doc, &output, Some(text)))
        }
        Command::Build {
            tower,
            x,
            group,
            theta,
            override_ideal_test,
            fingerprint,
            output,
        } => {
            let mut flags = tower.clone();
            if flags.e.is_none() {
                flags.e = Some(-1); // the composition trick needs e = -1
            }
            let t = make_tower(&flags)?;
            let elem = parse_element(&t, &x)?;
            let target = parse_group(&group)?;
            let theta_cert = match (target, &theta) {
                (GroupTarget::C9xC3, Some(expr)) => {
                    Some(verify_theta(&t, &parse_element(&t, expr)?)?)
                }
                (GroupTarget::C9xC3, None) if (t.p, t.r) == (3, 7) => {
                    Some(verify_theta(&t, &default_theta_3_7(&t)?)?)
                }
                (GroupTarget::C9xC3, None) => return Err(Error::MissingTheta),
                _ => None,
            };
            let report = build(
                &t,
                &elem,
                target,
                theta_cert.as_ref(),
                override_ideal_test,
                fingerprint,
            )?;
            let disc = report
                .fingerprint
                .as_ref()
                .map(|fp| discriminate(fp, target));
            let config = RunConfig {
                command: "build".into(),
                p: Some(t.p),
                r: Some(t.r),
                e: Some(t.e),
                x: Some(x.clone()),
                group: Some(group.clone()),
                theta: theta.clone(),
                fingerprint_budget: fingerprint,
                override_ideal_test: Some(override_ideal_test),
                ..Default::default()
            };
            let doc = build_doc(
                &t,
                config,
                &x,
                &report,
                disc.map(|d| format!("{d:?}").to_lowercase()),
            );
            let text = format!("{}", report.e_poly);
            let code = emit(&doc, &output, Some(text));
            if disc == Some(Discrimination::Refuted) {
                eprintln!("error: fingerprint refutes the claimed group");
                return Ok(ExitCode::from(6));
            }
            Ok(code)
        }
        Command::Search {
            tower,
            box_bound,
            limit,
            output,
        } => {
            let t = make_tower(&tower)?;
            let hits = search_candidates(&t, box_bound, limit as usize);
            let doc = SearchDoc {
                schema: SCHEMA_VERSION,
                config: RunConfig {
                    command: "search".into(),
                    p: Some(t.p),
                    r: Some(t.r),
                    e: Some(t.e),
                    search_box: Some(box_bound),
                    limit: Some(limit),
                    ..Default::default()
                },
                tower: t.report(),
                hits: hits
                    .iter()
                    .map(|(u, v, w, _x, verdict)| SearchHitDoc {
                        u: *u,
                        v: *v,
                        w: *w,
                        x: format_candidate(*u, *v, *w),
                        norm: verdict.factorization.display(),
                        ideal_criterion: verdict.ideal_criterion_holds,
                    })
                    .collect(),
            };
            let text = format!("{} passing candidates", doc.hits.len());
            Ok(emit(&doc, &output, Some(text)))
        }
        Command::Fingerprint {
            poly,
            claimed,
            budget,
            start,
            output,
        } => {
            let f = parse_poly_arg(&poly)?;
            let fp = survey(&f, budget, start);
            let disc = claimed
                .as_deref()
                .map(parse_group)
                .transpose()?
                .map(|g| discriminate(&fp, g));
            let doc = FingerprintCmdDoc {
                schema: SCHEMA_VERSION,
                config: RunConfig {
                    command: "fingerprint".into(),
                    fingerprint_budget: Some(budget),
                    group: claimed.clone(),
                    ..Default::default()
                },
                poly: poly_doc(&f),
                fingerprint: fingerprint_doc(&fp),
                claimed,
                discrimination: disc.map(|d| format!("{d:?}").to_lowercase()),
            };
            let text = format!("verdict: {}", doc.fingerprint.verdict);
            Ok(emit(&doc, &output, Some(text)))
        }
    }
}

fn format_candidate(u: i64, v: i64, w: i64) -> String {
    let mut parts = Vec::new();
    if u != 0 {
        parts.push(match u {
            1 => "d".to_string(),
            -1 => "-d".to_string(),
            _ => format!("{u}*d"),
        });
    }
    if v != 0 {
        parts.push(v.to_string());
    }
    if w != 0 {
        parts.push(match w {
            1 => "zp".to_string(),
            -1 => "-zp".to_string(),
            _ => format!("{w}*zp"),
        });
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if let Some(stripped) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(stripped);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => fail(e),
    }
}
