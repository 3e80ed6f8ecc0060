use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use kummer_genus::genus::{
    genus_field, peng_n1, BezoutMode, GenusCertificate, GenusInstance, GenusOptions, InstanceFile,
};
use kummer_genus::verify::{
    check_certificate, generator_subgroup, oracle_genus, oracle_k_genus, random_instance, selftest,
    CheckReport, GoldenExample, OracleLimits, RandomParams, SelftestSizes,
};
use kummer_genus::{ff::PrimeField, Error};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "kgenus",
    version,
    about = "Genus fields of cyclic Kummer extensions of F_q(T)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Table {
    Corrected,
    Published,
}

#[derive(Subcommand)]
enum Command {
    /// Build the certificate for an instance file.
    Compute {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
        /// Run the certificate checks and embed the reports.
        #[arg(long)]
        verify: bool,
        /// Also compare against the brute-force oracles (small instances only).
        #[arg(long)]
        oracle: bool,
        /// Seed for polynomial factoring.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use this Bézout pair `a,b` instead of the computed one.
        #[arg(long, value_name = "A,B")]
        bezout: Option<BezoutArg>,
        /// Use this index as the pivot i0 (it must attain m).
        #[arg(long)]
        i0: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate file.
    Verify {
        certificate: PathBuf,
        /// `json` prints the report array, `text` one line per check.
        #[arg(long, value_enum, default_value = "json")]
        emit: Emit,
        /// Print the certificate with the reports embedded instead.
        #[arg(long)]
        embed: bool,
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the worked example and the fixed corpora.
    Selftest {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Smaller corpora.
        #[arg(long)]
        quick: bool,
        /// Which table of expected values to compare the worked example against.
        #[arg(long, value_enum, default_value = "corrected")]
        table: Table,
    },
    /// Random instances through every check.
    Random {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 19)]
        q: u64,
        #[arg(long, default_value_t = 3)]
        ell: u64,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        max_r: usize,
        #[arg(long, default_value_t = 12)]
        max_deg: u64,
        /// Skip the oracle and n = 1 cross-checks.
        #[arg(long)]
        no_oracle: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Debug)]
struct BezoutArg(BigInt, BigInt);

impl FromStr for BezoutArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(',').ok_or("expected a,b")?;
        let parse =
            |x: &str| BigInt::from_str(x.trim()).map_err(|_| format!("{x:?} is not an integer"));
        Ok(BezoutArg(parse(a)?, parse(b)?))
    }
}

/// Exit status 2 for bad input, 1 for failed checks.
enum Failure {
    Input(String),
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_out(out: &Option<PathBuf>, text: &str) -> CliResult {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn oracle_reports(inst: &GenusInstance, cert: &GenusCertificate) -> Vec<CheckReport> {
    let limits = OracleLimits::default();
    let mut out = Vec::new();
    let compare = |name: &str, ours: &[kummer_genus::genus::Generator], theirs| match (
        generator_subgroup(inst, ours),
        theirs,
    ) {
        (Ok(a), Ok(b)) => CheckReport::new(name, a == b, "subgroup equality with the oracle"),
        (_, Err(Error::OracleLimit(msg))) => {
            CheckReport::pass(name, format!("skipped, too large: {msg}"))
        }
        (Err(e), _) | (_, Err(e)) => CheckReport::fail(name, e.to_string()),
    };
    out.push(compare(
        "oracle.E_ge",
        &cert.e_ge,
        oracle_genus(inst, &limits),
    ));
    out.push(compare(
        "oracle.K_ge",
        &cert.k_ge,
        oracle_k_genus(inst, &limits),
    ));
    if inst.n() == 1 {
        let r = peng_n1(inst).and_then(|p| {
            Ok(inst.space().subgroup(&p.generators)? == generator_subgroup(inst, &cert.k_ge)?)
        });
        out.push(match r {
            Ok(ok) => CheckReport::new("oracle.n1", ok, "agreement with the n = 1 construction"),
            Err(e) => CheckReport::fail("oracle.n1", e.to_string()),
        });
    }
    out
}

fn failed_summary(reports: &[CheckReport]) -> Option<String> {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{}: {}", r.name, r.details))
        .collect();
    (!failed.is_empty()).then(|| failed.join("\n"))
}

fn report_lines(reports: &[CheckReport]) -> String {
    reports
        .iter()
        .map(|r| {
            let tag = if r.passed() { "PASS" } else { "FAIL" };
            format!("{tag} {}: {}\n", r.name, r.details)
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn compute(
    instance: &Path,
    emit: Emit,
    verify: bool,
    oracle: bool,
    seed: u64,
    bezout: Option<BezoutArg>,
    i0: Option<usize>,
    out: &Option<PathBuf>,
) -> CliResult {
    let file = InstanceFile::from_json(&read(instance)?)?;
    let inst = file.build(seed)?;
    let opts = GenusOptions {
        bezout: match bezout {
            Some(BezoutArg(a, b)) => BezoutMode::Explicit { a, b },
            None => BezoutMode::Balanced,
        },
        i0,
    };
    let mut cert = genus_field(&inst, &opts)?;
    if verify || oracle {
        let mut reports = check_certificate(&cert);
        if oracle {
            reports.extend(oracle_reports(&inst, &cert));
        }
        cert.checks = reports;
    }
    let text = match emit {
        Emit::Json => cert.to_json() + "\n",
        Emit::Text => cert.render_text(),
    };
    write_out(out, &text)?;
    match failed_summary(&cert.checks) {
        Some(msg) => Err(Failure::Checks(msg)),
        None => Ok(()),
    }
}

fn verify(path: &Path, emit: Emit, embed: bool, oracle: bool, out: &Option<PathBuf>) -> CliResult {
    let mut cert = GenusCertificate::from_json(&read(path)?)?;
    let mut reports = check_certificate(&cert);
    if oracle {
        let inst = GenusInstance::from_record(&cert.instance)?;
        reports.extend(oracle_reports(&inst, &cert));
    }
    let text = match (embed, emit) {
        (true, Emit::Json) => {
            cert.checks = reports.clone();
            cert.to_json() + "\n"
        }
        (true, Emit::Text) => {
            cert.checks = reports.clone();
            cert.render_text()
        }
        (false, Emit::Json) => json(&reports),
        (false, Emit::Text) => report_lines(&reports),
    };
    write_out(out, &text)?;
    match failed_summary(&reports) {
        Some(msg) => Err(Failure::Checks(msg)),
        None => Ok(()),
    }
}

fn run_selftest(json_out: bool, seed: u64, quick: bool, table: Table) -> CliResult {
    let sizes = if quick {
        SelftestSizes {
            oracle_r3_per_config: 3,
            peng: 50,
            invariants: 100,
            factor: 50,
            mutation: 10,
        }
    } else {
        SelftestSizes::default()
    };
    let mut reports = selftest(seed, &sizes);
    if table == Table::Published {
        reports[0] = kummer_genus::verify::reproduce_example(&GoldenExample::as_published());
    }
    if json_out {
        print!("{}", json(&reports));
    } else {
        print!("{}", report_lines(&reports));
    }
    match failed_summary(&reports) {
        Some(msg) => Err(Failure::Checks(msg)),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct TrialRecord {
    trial: usize,
    instance: kummer_genus::genus::InstanceRecord,
    m: u32,
    t: u32,
    alpha: u32,
    checks: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct RandomSummary {
    seed: u64,
    trials: usize,
    failed_trials: usize,
    records: Vec<TrialRecord>,
}

fn random(
    params: RandomParams,
    seed: u64,
    trials: usize,
    oracle: bool,
    json_out: bool,
    out: &Option<PathBuf>,
) -> CliResult {
    PrimeField::new(params.q, params.ell, params.n)?;
    if params.max_r == 0 || params.max_deg == 0 {
        return Err(Failure::Input(
            "--max-r and --max-deg must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(trials);
    for trial in 0..trials {
        let inst = random_instance(&params, &mut rng)?;
        let (reports, m, t, alpha) = match genus_field(&inst, &GenusOptions::default()) {
            Ok(cert) => {
                let mut r = check_certificate(&cert);
                if oracle {
                    r.extend(oracle_reports(&inst, &cert));
                }
                (r, cert.m, cert.t, cert.alpha)
            }
            Err(e) => (
                vec![CheckReport::fail("genus_field", e.to_string())],
                0,
                0,
                0,
            ),
        };
        let failures = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| format!("{}: {}", r.name, r.details))
            .collect();
        records.push(TrialRecord {
            trial,
            instance: inst.record(),
            m,
            t,
            alpha,
            checks: reports.len(),
            failures,
        });
    }
    let failed_trials = records.iter().filter(|r| !r.failures.is_empty()).count();
    let summary = RandomSummary {
        seed,
        trials,
        failed_trials,
        records,
    };
    let text = if json_out {
        json(&summary)
    } else {
        let mut s = format!(
            "seed {seed}: {trials} trials over F_{} with ℓ = {}, n = {}; {failed_trials} failed\n",
            params.q, params.ell, params.n
        );
        for r in summary.records.iter().filter(|r| !r.failures.is_empty()) {
            s.push_str(&format!("trial {}: {}\n", r.trial, r.failures.join("; ")));
        }
        s
    };
    write_out(out, &text)?;
    if failed_trials > 0 {
        Err(Failure::Checks(format!("{failed_trials} trials failed")))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute {
            instance,
            emit,
            verify,
            oracle,
            seed,
            bezout,
            i0,
            out,
        } => compute(&instance, emit, verify, oracle, seed, bezout, i0, &out),
        Command::Verify {
            certificate,
            emit,
            embed,
            oracle,
            out,
        } => verify(&certificate, emit, embed, oracle, &out),
        Command::Selftest {
            json,
            seed,
            quick,
            table,
        } => run_selftest(json, seed, quick, table),
        Command::Random {
            seed,
            trials,
            q,
            ell,
            n,
            max_r,
            max_deg,
            no_oracle,
            json,
            out,
        } => random(
            RandomParams {
                q,
                ell,
                n,
                max_r,
                max_deg,
            },
            seed,
            trials,
            !no_oracle,
            json,
            &out,
        ),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Checks(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
