//! Command-line front end. `execute` does all the work and returns what
//! would be printed, so tests can drive it without spawning a process.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::arith;
use crate::bounds::{build_certificate, AbelianVarietyDesc, BoundCertificate, SelmerInput};
use crate::cyclotomic;
use crate::error::{Error, Result};
use crate::fixtures::{fixture, FixtureId};
use crate::report;
use crate::reproduce::{reproduce, verify_factorization};
use crate::tower::{
    build_tower_plan, AssumptionChecklist, BaseField, GammaFamily, GammaSpec, LayerCounts, PlanRequest, Provenance,
    SelmerRequest, TowerPlan,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ranktower", version, about = "Class-group and fine Selmer rank growth in Kummer towers")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Last layer n of per-layer tables.
    #[arg(long, global = true, default_value_t = 3)]
    pub n_max: u32,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rerun a worked example and diff against its printed data.
    Reproduce {
        /// example1, example2 or example3
        example: String,
    },
    /// Build a tower plan and its bound certificate.
    Construct(ConstructArgs),
    /// Multiply factors in Q(ζ_m) and compare with a rational prime.
    VerifyFactorization {
        #[arg(long)]
        conductor: u64,
        #[arg(long)]
        prime: u64,
        /// Factors such as "ζ₇⁵ + 2ζ₇³ + 1" or "z^5 + 2*z^3 + 1".
        #[arg(required = true, allow_hyphen_values = true)]
        factors: Vec<String>,
    },
    /// Decomposition of q in Q(ζ_m).
    Split { q: u64, m: u64 },
    /// Smallest primes inert in Q(ζ_m).
    InertPrimes {
        m: u64,
        #[arg(long)]
        count: usize,
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<u64>,
    },
    /// Bound certificate only.
    Certificate(ConstructArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub ell: u64,
    #[arg(long)]
    pub p: u64,
    #[arg(long = "N", default_value_t = 1)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub d: u64,
    #[arg(long, default_value_t = 2)]
    pub m: u64,
    /// abelian, gamma<s> (e.g. gamma1) for the nilpotent Γ(s).
    #[arg(long, default_value = "abelian")]
    pub family: String,
    /// Conductor c of the cyclotomic field Q(ζ_c) (default: p).
    #[arg(long)]
    pub conductor: Option<u64>,
    /// Defining polynomial of F over Q(ζ_c) for m > 2.
    #[arg(long)]
    pub poly: Option<String>,
    /// Class number of F (m > 2); its p-part decides the last base-field condition.
    #[arg(long)]
    pub class_number: Option<u64>,
    /// Number of primes of F above p (m > 2).
    #[arg(long)]
    pub primes_above_p: Option<u64>,
    /// Rational primes to use instead of the ascending search.
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// Finite places in S; enables the fine Selmer columns.
    #[arg(long)]
    pub s0: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub dim_a: u64,
    /// Abelian variety label (informational).
    #[arg(long, default_value = "A")]
    pub variety: String,
    /// Build with N + 2·s0 so the fine Selmer bound keeps N.
    #[arg(long)]
    pub apply_reserve: bool,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    validation: Option<&'a crate::tower::ValidationReport>,
}

#[derive(Serialize)]
struct ConstructDoc<'a> {
    plan: &'a TowerPlan,
    layers: Vec<LayerCounts>,
    certificate: &'a BoundCertificate,
}

#[derive(Serialize)]
struct InertDoc<'a> {
    m: u64,
    count: usize,
    exclude: &'a BTreeSet<u64>,
    primes: &'a [u64],
}

fn parse_family(text: &str, p: u64, d: u64, m: u64) -> Result<GammaSpec> {
    if text == "abelian" {
        return Ok(GammaSpec::abelian(p, d, m));
    }
    if let Some(s) = text.strip_prefix("gamma") {
        let s: u64 = s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("family '{text}': expected gamma<s> with s >= 1")))?;
        return Ok(GammaSpec { p, d, m, family: GammaFamily::Nilpotent { s } });
    }
    Err(Error::InvalidInput(format!("unknown family '{text}' (expected abelian or gamma<s>)")))
}

/// The request described by the flags. With m > 2 and no `--poly`, an
/// embedded example with the same conductor and m supplies F and its facts.
pub fn plan_request(args: &ConstructArgs) -> Result<PlanRequest> {
    let gamma = parse_family(&args.family, args.p, args.d, args.m)?;
    let conductor = args.conductor.unwrap_or(args.p);
    let (base, checklist) = if args.m <= 2 {
        (BaseField::Cyclotomic { conductor }, None)
    } else {
        match &args.poly {
            Some(text) => {
                let defining_poly = text.parse()?;
                let checklist = AssumptionChecklist {
                    m: args.m,
                    base_field_desc: format!("F₀ = Q(ζ_{conductor}), F = F₀(θ), θ root of {text}"),
                    f0_totally_imaginary: conductor > 2,
                    contains_mu_p: conductor.is_multiple_of(args.p),
                    unique_prime_above_p: args.primes_above_p == Some(1),
                    p_part_of_p_class_group_trivial: args.class_number.is_some_and(|h| h % args.p != 0),
                    provenance: Provenance::Asserted,
                };
                (BaseField::RelativeCyclotomic { conductor, defining_poly }, Some(checklist))
            }
            None => {
                let fx = FixtureId::ALL
                    .into_iter()
                    .map(fixture)
                    .find(|f| f.relative.is_some() && f.parameters.base_conductor == conductor && f.parameters.m == args.m)
                    .ok_or_else(|| Error::InvalidInput(format!("m = {} needs --poly", args.m)))?;
                (fx.base(), fx.checklist())
            }
        }
    };
    Ok(PlanRequest {
        ell: args.ell,
        p: args.p,
        n: args.n,
        gamma,
        base,
        checklist,
        selmer: args.s0.map(|s0| SelmerRequest { s0, apply_reserve: args.apply_reserve }),
        explicit_primes: args.primes.clone(),
    })
}

fn variety(args: &ConstructArgs) -> AbelianVarietyDesc {
    AbelianVarietyDesc {
        label: args.variety.clone(),
        dim_a: args.dim_a,
        torsion_nontrivial_at_ell: true,
        bad_primes: BTreeSet::new(),
        provenance: Provenance::Asserted,
    }
}

fn plan_and_certificate(args: &ConstructArgs, n_max: u32) -> Result<(TowerPlan, BoundCertificate)> {
    let plan = build_tower_plan(&plan_request(args)?)?;
    let a = variety(args);
    let selmer = args.s0.map(|s0| SelmerInput { variety: &a, s0 });
    let cert = build_certificate(&plan, selmer, n_max)?;
    Ok((plan, cert))
}

/// (exit code, report) for a parsed command line.
fn dispatch(cli: &Cli) -> Result<(i32, String)> {
    let json = cli.json;
    let n_max = cli.n_max;
    match &cli.command {
        Command::Reproduce { example } => {
            let id: FixtureId = example.parse()?;
            let r = reproduce(id, n_max)?;
            let code = if r.passed() { EXIT_OK } else { EXIT_FAILURE };
            let text = if json { report::to_json("reproduction", &r) } else { report::reproduction_text(&r) };
            Ok((code, text))
        }
        Command::Construct(args) => {
            let (plan, cert) = plan_and_certificate(args, n_max)?;
            let text = if json {
                let doc = ConstructDoc { layers: plan.layers(n_max), plan: &plan, certificate: &cert };
                report::to_json("construct", &doc)
            } else {
                let mut s = report::plan_text(&plan, n_max);
                s.push_str(&report::certificate_text(&cert));
                s
            };
            Ok((EXIT_OK, text))
        }
        Command::Certificate(args) => {
            let (_, cert) = plan_and_certificate(args, n_max)?;
            let text = if json { report::to_json("certificate", &cert) } else { report::certificate_text(&cert) };
            Ok((EXIT_OK, text))
        }
        Command::VerifyFactorization { conductor, prime, factors } => {
            let r = verify_factorization(*conductor, *prime, factors)?;
            let code = if r.passed { EXIT_OK } else { EXIT_FAILURE };
            let text = if json { report::to_json("factorization", &r) } else { report::factorization_text(&r) };
            Ok((code, text))
        }
        Command::Split { q, m } => {
            let s = cyclotomic::splitting_data(*q, *m)?;
            let text = if json { report::to_json("splitting", &s) } else { report::splitting_text(&s) };
            Ok((EXIT_OK, text))
        }
        Command::InertPrimes { m, count, exclude } => {
            if *m == 0 {
                return Err(Error::InvalidInput("conductor must be >= 1".into()));
            }
            let exclude: BTreeSet<u64> = exclude.iter().copied().collect();
            let primes = arith::primes_ascending(|q| cyclotomic::is_inert(q, *m).unwrap_or(false), &exclude, *count)?;
            let text = if json {
                report::to_json("inert-primes", &InertDoc { m: *m, count: *count, exclude: &exclude, primes: &primes })
            } else {
                let words: Vec<String> = primes.iter().map(u64::to_string).collect();
                format!("{}\n", words.join(" "))
            };
            Ok((EXIT_OK, text))
        }
    }
}

pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK { (rendered, String::new()) } else { (String::new(), rendered) };
            return Outcome { code, stdout, stderr };
        }
    };
    let (code, text) = match dispatch(&cli) {
        Ok(done) => done,
        Err(err) => {
            let code = if err.is_usage() { EXIT_USAGE } else { EXIT_FAILURE };
            let stderr = format!("error[{}]: {err}\n", err.kind());
            let stdout = if cli.json {
                let validation = match &err {
                    Error::ValidationFailed(r) => Some(r),
                    _ => None,
                };
                report::to_json("error", &ErrorDoc { error: err.kind(), message: err.to_string(), validation })
            } else {
                String::new()
            };
            return Outcome { code, stdout, stderr };
        }
    };
    match &cli.out {
        None => Outcome { code, stdout: text, stderr: String::new() },
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome {
                code: EXIT_FAILURE,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        execute(std::iter::once("ranktower").chain(args.iter().copied()))
    }

    #[test]
    fn split_and_inert() {
        let o = run(&["split", "43", "7"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "e=1 f=1 g=6 (splits completely)\n"));
        let o = run(&["split", "3", "9"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("RamifiedPrime"));
        let o = run(&["inert-primes", "3", "--count", "5", "--exclude", "3"]);
        assert_eq!(o.stdout, "2 5 11 17 23\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&["split", "x", "7"]).code, 2);
        assert_eq!(run(&["frobnicate"]).code, 2);
        assert_eq!(run(&["reproduce", "example9"]).code, 2);
        assert_eq!(run(&["construct", "--ell", "5", "--p", "3", "--family", "weird"]).code, 2);
        assert_eq!(run(&["verify-factorization", "--conductor", "7", "--prime", "43", "ζ₇^^"]).code, 2);
    }

    #[test]
    fn construct_examples() {
        let o = run(&["construct", "--ell", "5", "--p", "5"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("EqualPrimes"));
        let o = run(&["--json", "construct", "--ell", "5", "--p", "3", "--N", "2", "--d", "1", "--m", "2"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["plan"]["t"], "42");
        let o = run(&["construct", "--ell", "3", "--p", "7", "--N", "6", "--d", "3", "--m", "3", "--family", "gamma1"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("t = 60"));
        let o = run(&["construct", "--ell", "3", "--p", "5", "--N", "6", "--d", "3", "--m", "3", "--family", "gamma1", "--conductor", "5", "--poly", "x^3 - x^2 - 4*x - 1"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("gamma.gamma1-p-mod-3"));
    }

    #[test]
    fn json_is_deterministic() {
        let args = ["--json", "--n-max", "2", "reproduce", "example1"];
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}
