//! `lsa-forge`: command-line front end over the library. Loads catalog
//! algebras or definition files, runs verification suites, cohomology,
//! extensions, the A4 conjugacy decision, and the affine harness; emits
//! stable text or JSON reports.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage/parse error.

use clap::{Parser, Subcommand};
use lsa_forge::affine::{
    group_closure_check, row4_check, simply_transitive_check, translation_component_report,
    AffineRealization, CaseKind,
};
use lsa_forge::algebra::Algebra;
use lsa_forge::catalog::{self, ParamBindings};
use lsa_forge::classify::a4_conjugate;
use lsa_forge::extension::{
    cohomology_h2, lie_extend, lsa_extend, BilinearMap, BimoduleCtx, LieExtensionData,
    LsaExtensionData,
};
use lsa_forge::report::{run_suite, CheckResult, CheckStatus, SuiteReport};
use lsa_forge::textfmt::{self, ExtensionKind};
use lsa_forge::{Rat, RingTag, Scalar};
use serde_json::json;
use std::collections::BTreeMap;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lsa-forge", version, about = "left-symmetric algebra workbench")]
struct Cli {
    /// output format: text or json
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// seed for all sampled numerics
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// tolerance for numeric checks
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// run the verification suite on a catalog algebra or definition file
    Check {
        target: String,
        /// parameter binding, e.g. --param s=1 --param t=1/2
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// second cohomology with a trivial one-dimensional bimodule
    Cohomology {
        target: String,
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// build and validate extension data from a definition file
    Extend { file: String },
    /// decide conjugacy of A4(s,t) and A4(s',t')
    #[command(name = "classify-a4")]
    ClassifyA4 {
        /// the pair s,t,s',t' (rationals, e.g. 1,1,3,1 or 1/2,0,2,0)
        #[arg(long)]
        pair: String,
    },
    /// numeric verification of the affine realizations
    #[command(name = "affine-verify")]
    AffineVerify {
        /// g4 (isolated case) or g4st (two-parameter case)
        #[arg(long, default_value = "g4st")]
        case: String,
        #[arg(long, default_value = "1")]
        s: String,
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// catalog inspection
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// list every named algebra with its parameters
    List,
}

fn parse_rat(text: &str) -> Result<Rat, String> {
    Scalar::parse(text)
        .ok()
        .and_then(|s| s.as_rat())
        .ok_or_else(|| format!("expected a rational number, got {text}"))
}

fn parse_params(params: &[String]) -> Result<ParamBindings, String> {
    let mut out = ParamBindings::new();
    for p in params {
        let (key, value) = p
            .split_once('=')
            .ok_or_else(|| format!("parameter {p} is not of the form name=value"))?;
        out.insert(key.trim().to_string(), parse_rat(value.trim())?);
    }
    Ok(out)
}

/// A target is a definition file when it points at an existing path,
/// otherwise a catalog name.
fn resolve_target(target: &str, params: &ParamBindings) -> lsa_forge::Result<(Algebra, bool)> {
    if std::path::Path::new(target).exists() {
        let text = std::fs::read_to_string(target).map_err(|e| {
            lsa_forge::Error::Precondition(format!("cannot read {target}: {e}"))
        })?;
        let parsed = textfmt::parse_file(&text)?;
        let algebra = parsed.single_algebra()?;
        let algebra = if params.is_empty() {
            algebra
        } else {
            let map: BTreeMap<String, Scalar> = params
                .iter()
                .map(|(k, v)| (k.clone(), Scalar::Rat(v.clone())))
                .collect();
            algebra.substitute_params(&map)?
        };
        Ok((algebra, false))
    } else {
        Ok((catalog::named_algebra(target, params)?, true))
    }
}

fn emit(format: &str, report: &SuiteReport) {
    if format == "json" {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
    } else {
        print!("{}", report.to_text());
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(failed) => {
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Check { target, params } => {
            let bindings = parse_params(params)?;
            let (algebra, from_catalog) =
                resolve_target(target, &bindings).map_err(|e| e.to_string())?;
            let expected = if from_catalog && bindings.is_empty() {
                catalog::find(target).map(|e| &e.expected)
            } else {
                // parameter overrides can change recorded properties
                None
            };
            let report =
                run_suite(&algebra, expected, Some(cli.seed)).map_err(|e| e.to_string())?;
            emit(&cli.format, &report);
            Ok(report.any_failed())
        }
        Command::Cohomology { target, params } => {
            let bindings = parse_params(params)?;
            let (algebra, _) = resolve_target(target, &bindings).map_err(|e| e.to_string())?;
            if !algebra.ring().is_field() {
                return Err("cohomology needs specialized (rational) parameters".into());
            }
            let ctx = BimoduleCtx::trivial(algebra.clone(), 1);
            let coh = cohomology_h2(&ctx).map_err(|e| e.to_string())?;
            let mut report = SuiteReport::new(&algebra.name, None);
            report.push(
                CheckResult::new("z2-dim", CheckStatus::Info)
                    .with_details(coh.z2.dim().to_string()),
            );
            report.push(
                CheckResult::new("b2-dim", CheckStatus::Info)
                    .with_details(coh.b2.dim().to_string()),
            );
            report.push(
                CheckResult::new("h2-dim", CheckStatus::Info)
                    .with_details(coh.h2_dim.to_string()),
            );
            for (idx, rep) in coh.representatives.iter().enumerate() {
                let m = rep.to_matrix().map_err(|e| e.to_string())?;
                let rows: Vec<String> = (0..m.rows())
                    .map(|i| {
                        let row: Vec<String> =
                            m.row(i).iter().map(|s| s.to_string()).collect();
                        format!("[{}]", row.join(", "))
                    })
                    .collect();
                report.push(
                    CheckResult::new(&format!("representative-{idx}"), CheckStatus::Info)
                        .with_details(rows.join(" ")),
                );
            }
            emit(&cli.format, &report);
            Ok(false)
        }
        Command::Extend { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| e.to_string())?;
            let parsed = textfmt::parse_file(&text).map_err(|e| e.to_string())?;
            let spec = parsed
                .extension
                .clone()
                .ok_or_else(|| "no extend section in the file".to_string())?;
            let lookup = |name: &str| -> Result<Algebra, String> {
                if let Some(a) = parsed.algebra_named(name) {
                    return Ok(a.clone());
                }
                catalog::named_algebra(name, &ParamBindings::new()).map_err(|e| e.to_string())
            };
            let base = lookup(&spec.base)?;
            let fiber = match &spec.fiber {
                Some(name) => lookup(name)?,
                None => {
                    let kind = match spec.kind {
                        ExtensionKind::Lie => lsa_forge::algebra::AlgebraKind::Lie,
                        ExtensionKind::Lsa => lsa_forge::algebra::AlgebraKind::LeftSymmetric,
                    };
                    Algebra::bilinear("I0", 1, base.ring(), vec![Scalar::zero()], vec![])
                        .and_then(|a| a.certify(kind))
                        .map_err(|e| e.to_string())?
                }
            };
            let nf = fiber.dim();
            if nf != 1 && !spec.cocycle.is_empty() {
                return Err("text cocycles are scalar-valued: fiber must be 1-dimensional".into());
            }
            let mut g = BilinearMap::zero(base.dim(), nf);
            for ((i, j), v) in &spec.cocycle {
                if *i >= base.dim() || *j >= base.dim() {
                    return Err(format!("cocycle index e{} out of range", i.max(j) + 1));
                }
                let mut val = vec![Scalar::zero(); nf];
                val[0] = v.clone();
                g.set(*i, *j, val);
            }
            let action_vec = |slots: &BTreeMap<usize, lsa_forge::ExactMatrix>|
             -> Result<Vec<lsa_forge::ExactMatrix>, String> {
                let mut out = Vec::with_capacity(base.dim());
                for i in 0..base.dim() {
                    match slots.get(&i) {
                        Some(m) => {
                            if m.rows() != nf || m.cols() != nf {
                                return Err(format!(
                                    "action matrix for e{} must be {nf}x{nf}",
                                    i + 1
                                ));
                            }
                            out.push(m.clone());
                        }
                        None => out.push(lsa_forge::ExactMatrix::zeros(nf, nf, RingTag::Rational)),
                    }
                }
                Ok(out)
            };
            let mut report = SuiteReport::new(file, None);
            let failed;
            let phi = action_vec(&spec.phi)?;
            let lambda = action_vec(&spec.lambda)?;
            let rho = action_vec(&spec.rho)?;
            match spec.kind {
                ExtensionKind::Lie => {
                    let data =
                        LieExtensionData::new(fiber, base, phi, g).map_err(|e| e.to_string())?;
                    let (built, verdict) = lie_extend(&data).map_err(|e| e.to_string())?;
                    report.push(status_check("acts-by-derivations", verdict.acts_by_derivations));
                    report.push(status_check("factor-identity", verdict.factor_identity));
                    report.push(status_check("cocycle-identity", verdict.cocycle_identity));
                    report.push(status_check("jacobi", verdict.jacobi));
                    report.push(status_check("conditions-match-jacobi", verdict.consistent));
                    report.push(
                        CheckResult::new("built-algebra", CheckStatus::Info)
                            .with_details(textfmt::serialize_algebra(&built).replace('\n', "; ")),
                    );
                    failed = !verdict.jacobi || !verdict.consistent;
                }
                ExtensionKind::Lsa => {
                    let data = LsaExtensionData::new(fiber, base, lambda, rho, g)
                        .map_err(|e| e.to_string())?;
                    let (built, verdict) = lsa_extend(&data).map_err(|e| e.to_string())?;
                    for (idx, ok) in verdict.conditions.iter().enumerate() {
                        report.push(status_check(&format!("condition-{}", idx + 1), *ok));
                    }
                    report.push(status_check("left-symmetry", verdict.left_symmetric));
                    report.push(status_check("conditions-match-identity", verdict.consistent));
                    report.push(
                        CheckResult::new("built-algebra", CheckStatus::Info)
                            .with_details(textfmt::serialize_algebra(&built).replace('\n', "; ")),
                    );
                    failed = !verdict.left_symmetric || !verdict.consistent;
                }
            }
            emit(&cli.format, &report);
            Ok(failed)
        }
        Command::ClassifyA4 { pair } => {
            let parts: Vec<&str> = pair.split(',').collect();
            if parts.len() != 4 {
                return Err("expected --pair s,t,s',t'".into());
            }
            let vals: Vec<Rat> =
                parts.iter().map(|p| parse_rat(p.trim())).collect::<Result<_, _>>()?;
            let decision =
                a4_conjugate(&vals[0], &vals[1], &vals[2], &vals[3]).map_err(|e| e.to_string())?;
            if cli.format == "json" {
                let value = serde_json::to_value(&decision.report).map_err(|e| e.to_string())?;
                // route through an ordered map for stable output
                let stable: serde_json::Value = serde_json::from_str(&value.to_string()).unwrap();
                println!("{}", serde_json::to_string_pretty(&stable).unwrap());
            } else {
                println!("decision: {}", decision.report.decision);
                println!("paper criterion:   {}", decision.report.paper_criterion);
                println!("derived criterion: {}", decision.report.derived_criterion);
                if let Some(w) = &decision.report.witness {
                    println!(
                        "witness: mu = {}, eps = {}, r = {} (b = {}, c = {}{})",
                        w.mu,
                        w.eps,
                        w.r,
                        w.b,
                        w.c,
                        if w.symbolic_radical { ", symbolic radical" } else { "" }
                    );
                }
                for o in &decision.report.obstructions {
                    println!("obstruction: {o}");
                }
            }
            Ok(false)
        }
        Command::AffineVerify { case, s, t, samples } => {
            let case = CaseKind::parse(case).ok_or_else(|| format!("unknown case {case}"))?;
            let (s_rat, t_rat) = (parse_rat(s)?, parse_rat(t)?);
            let algebra = match case {
                CaseKind::G4 => catalog::named_algebra("b4", &ParamBindings::new()),
                CaseKind::G4St => catalog::named_algebra(
                    "a4",
                    &catalog::bindings(&[("s", s_rat.clone()), ("t", t_rat.clone())]),
                ),
            }
            .map_err(|e| e.to_string())?;
            let realization = AffineRealization::new(&algebra).map_err(|e| e.to_string())?;
            let s_f = Scalar::Rat(s_rat).to_f64().unwrap();
            let t_f = Scalar::Rat(t_rat).to_f64().unwrap();
            let mut reports = vec![
                group_closure_check(&realization, case, s_f, t_f, *samples, cli.seed, cli.tol),
                simply_transitive_check(&realization, *samples, cli.seed, 1e-10),
                translation_component_report(&realization, *samples, cli.seed, cli.tol),
            ];
            if case == CaseKind::G4St {
                reports.push(row4_check(&realization, s_f, t_f, *samples, cli.seed, cli.tol));
            }
            let failed = reports.iter().any(|r| r.pass == Some(false));
            if cli.format == "json" {
                let value = serde_json::to_value(&reports).map_err(|e| e.to_string())?;
                let stable: serde_json::Value = serde_json::from_str(&value.to_string()).unwrap();
                println!("{}", serde_json::to_string_pretty(&stable).unwrap());
            } else {
                for r in &reports {
                    println!(
                        "{:<5} {}  max residual {:e} (tol {:e}, {} samples, seed {})",
                        match r.pass {
                            Some(true) => "PASS",
                            Some(false) => "FAIL",
                            None => "INFO",
                        },
                        r.test,
                        r.max_residual,
                        r.tol,
                        r.samples,
                        r.seed
                    );
                    for regime in &r.regimes {
                        println!(
                            "      {}: {} samples, max residual {:e}",
                            regime.name, regime.count, regime.max_residual
                        );
                    }
                    for n in &r.notes {
                        println!("      note: {n}");
                    }
                }
            }
            Ok(failed)
        }
        Command::Catalog { action: CatalogAction::List } => {
            if cli.format == "json" {
                let items: Vec<serde_json::Value> = catalog::entries()
                    .iter()
                    .map(|e| {
                        json!({
                            "name": e.name,
                            "kind": format!("{}", e.kind),
                            "params": e.params,
                            "description": e.description,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&items).unwrap());
            } else {
                for e in catalog::entries() {
                    let params = if e.params.is_empty() {
                        String::new()
                    } else {
                        format!("({})", e.params.join(", "))
                    };
                    println!("{:<14}{params:<18}{:<9} {}", e.name, e.kind, e.description);
                }
            }
            Ok(false)
        }
    }
}

fn status_check(name: &str, ok: bool) -> CheckResult {
    CheckResult::new(name, if ok { CheckStatus::Pass } else { CheckStatus::Info })
        .with_details(ok.to_string())
}
