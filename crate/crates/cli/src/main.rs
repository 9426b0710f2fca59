//! `squeeze`: evaluation, classification and verification from the command line.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use squeeze_core::classifier::{classify, QuadHamiltonian, SpectrumClassification, DEFAULT_TOL};
use squeeze_core::one_mode::{
    j2_nrep, j2_qrep, j2_zrep, kplus_nrep, kplus_qrep, kplus_zrep, Parity,
};
use squeeze_core::pollaczek::{moment, pollaczek_eval, PollaczekWeight};
use squeeze_core::two_mode::{
    j2_nrep_2, j2_qrep_2_delta0, j2_zrep_2, kplus_nrep_2, kplus_zrep_2, TwoModeLabel,
};
use squeeze_core::verify::{
    run_all, run_suite, Suite, VerificationReport, VerifyConfig, DEFAULT_SEED,
};

use output::{complex, int, num, raw_array, raw_object, text, to_json, Input, OutputRecord, Raw};

#[derive(Parser)]
#[command(
    name = "squeeze",
    version,
    about = "Generalized eigenvectors of squeezing generators and quadratic-Hamiltonian spectra"
)]
struct Cli {
    /// Output format; `table` applies to `verify` only.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Orthonormal Pollaczek polynomial P_n(λ, b) on a grid of λ.
    Pollaczek {
        #[arg(long)]
        n: usize,
        /// Single value or "start:stop:count".
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_grid)]
        lambda: Grid,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
    },
    /// Weight density ρ_b(λ) on a grid of λ.
    Weight {
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_grid)]
        lambda: Grid,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
    },
    /// Moments ∫λ^k ρ_b dλ for k = 0..=max-order.
    Moments {
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 12)]
        max_order: usize,
    },
    /// Generalized eigenvector of J₂ or K₊ in the n-, z- or q-representation.
    Eigvec(EigvecArgs),
    /// Spectral classification of A(a†a + aa†) + B e^{iΦ}a² + h.c. + C e^{iΨ}a + h.c. + D.
    Classify {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        d: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        psi: f64,
        /// Relative tolerance for A = B.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Run a verification suite, or "all". Exits with 2 if any case fails.
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random states (parseval) and instances (classifier, at least 10).
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Replace every case tolerance.
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
        /// Include wall-clock runtime in the report.
        #[arg(long)]
        runtime: bool,
    },
}

#[derive(Args)]
struct EigvecArgs {
    #[arg(long, value_enum)]
    generator: GeneratorArg,
    #[arg(long, value_enum, default_value = "one")]
    mode: ModeArg,
    /// J₂ eigenvalue.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// K₊ eigenvalue, positive.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<f64>,
    /// One-mode parity sector.
    #[arg(long, value_enum, default_value = "even")]
    parity: ParityArg,
    /// Two-mode photon-number difference n₁ − n₂.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    delta_n: i64,
    #[arg(long, value_enum, default_value = "n")]
    rep: RepArg,
    /// Number of n-representation coefficients.
    #[arg(long, default_value_t = 32)]
    len: usize,
    /// z point "re,im" (repeatable); the first mode in two-mode runs.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    z: Vec<Complex64>,
    /// Second-mode z point "re,im" (repeatable, paired with --z).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    z2: Vec<Complex64>,
    /// q grid; q₁ in two-mode runs.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
    q: Option<Grid>,
    /// Fixed q₂ for two-mode runs.
    #[arg(long, allow_hyphen_values = true)]
    q2: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeneratorArg {
    J2,
    Kplus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    One,
    Two,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RepArg {
    N,
    Z,
    Q,
}

#[derive(Debug, Clone, PartialEq)]
struct Grid(Vec<f64>);

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("'{t}' is not a number"))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [x] => Ok(Grid(vec![parse(x)?])),
        [a, b, n] => {
            let (a, b) = (parse(a)?, parse(b)?);
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| format!("'{n}' is not a point count"))?;
            if n == 0 {
                return Err("grid needs at least one point".into());
            }
            if n == 1 {
                return Ok(Grid(vec![a]));
            }
            Ok(Grid(
                (0..n)
                    .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
                    .collect(),
            ))
        }
        _ => Err(format!("grid '{s}' is not of the form start:stop:count")),
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("'{t}' is not a number"))
    };
    match s.split(',').collect::<Vec<_>>().as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(format!("'{s}' is not of the form re,im")),
    }
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<squeeze_core::Error> for Failure {
    fn from(e: squeeze_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn table_output(record: &OutputRecord, format: Format) -> CmdResult {
    match format {
        Format::Json => Ok(record.to_json()),
        Format::Csv => Ok(record.to_csv()),
        Format::Table => Err(usage("--format table is only available for verify")),
    }
}

fn cmd_pollaczek(n: usize, lambda: &Grid, b: f64, format: Format) -> CmdResult {
    PollaczekWeight::new(b)?;
    let mut rec = OutputRecord::new("pollaczek");
    rec.param("n", int(n as i64)).param("b", num(b));
    for &x in &lambda.0 {
        rec.push(
            Input::real(x),
            Complex64::new(pollaczek_eval(n, x, b)?, 0.0),
        );
    }
    rec.metadata.truncation = Some(n + 1);
    table_output(&rec, format)
}

fn cmd_weight(lambda: &Grid, b: f64, format: Format) -> CmdResult {
    let w = PollaczekWeight::new(b)?;
    let mut rec = OutputRecord::new("weight");
    rec.param("b", num(b));
    for &x in &lambda.0 {
        rec.push(Input::real(x), Complex64::new(w.density(x), 0.0));
    }
    table_output(&rec, format)
}

fn cmd_moments(b: f64, max_order: usize, format: Format) -> CmdResult {
    let mut rec = OutputRecord::new("moments");
    rec.param("b", num(b))
        .param("max_order", int(max_order as i64));
    for k in 0..=max_order {
        rec.push(Input::index(k), Complex64::new(moment(k, b)?, 0.0));
    }
    table_output(&rec, format)
}

fn eigenvalue(args: &EigvecArgs) -> Result<f64, Failure> {
    match args.generator {
        GeneratorArg::J2 => args
            .lambda
            .ok_or_else(|| usage("--lambda is required for generator j2")),
        GeneratorArg::Kplus => args
            .eta
            .ok_or_else(|| usage("--eta is required for generator kplus")),
    }
}

fn cmd_eigvec(args: &EigvecArgs, format: Format) -> CmdResult {
    let value = eigenvalue(args)?;
    let parity = match args.parity {
        ParityArg::Even => Parity::Even,
        ParityArg::Odd => Parity::Odd,
    };
    let label = TwoModeLabel::new(args.delta_n);
    let generator = match args.generator {
        GeneratorArg::J2 => "j2",
        GeneratorArg::Kplus => "kplus",
    };
    let mut rec = OutputRecord::new("eigvec");
    rec.param("generator", text(generator));
    rec.param(
        if args.generator == GeneratorArg::J2 {
            "lambda"
        } else {
            "eta"
        },
        num(value),
    );
    match args.mode {
        ModeArg::One => rec
            .param("mode", text("one"))
            .param("parity", text(parity_name(parity))),
        ModeArg::Two => rec
            .param("mode", text("two"))
            .param("delta_n", int(args.delta_n)),
    };
    let two = args.mode == ModeArg::Two;
    match args.rep {
        RepArg::N => {
            rec.param("rep", text("n"));
            rec.metadata.truncation = Some(args.len);
            if two {
                let v = match args.generator {
                    GeneratorArg::J2 => j2_nrep_2(value, label, args.len)?,
                    GeneratorArg::Kplus => kplus_nrep_2(value, label, args.len)?,
                };
                for (n, c) in v.coeffs.iter().enumerate() {
                    let (n1, n2) = label.ket(n);
                    rec.push(Input::pair(n1, n2), *c);
                }
            } else {
                let v = match args.generator {
                    GeneratorArg::J2 => j2_nrep(value, parity, args.len)?,
                    GeneratorArg::Kplus => kplus_nrep(value, parity, args.len)?,
                };
                for (n, c) in v.coeffs.iter().enumerate() {
                    rec.push(Input::index(n), *c);
                }
            }
        }
        RepArg::Z => {
            rec.param("rep", text("z"));
            if args.z.is_empty() {
                return Err(usage("--z is required for rep z"));
            }
            if two {
                if args.z2.len() != args.z.len() {
                    return Err(usage(
                        "two-mode rep z needs as many --z2 points as --z points",
                    ));
                }
                for (&z1, &z2) in args.z.iter().zip(&args.z2) {
                    let v = match args.generator {
                        GeneratorArg::J2 => j2_zrep_2(value, label, z1, z2)?,
                        GeneratorArg::Kplus => kplus_zrep_2(value, label, z1, z2)?,
                    };
                    rec.push(Input::complex_pair(z1, z2), v);
                }
            } else {
                for &z in &args.z {
                    let v = match args.generator {
                        GeneratorArg::J2 => j2_zrep(value, parity, z)?,
                        GeneratorArg::Kplus => kplus_zrep(value, parity, z)?,
                    };
                    rec.push(Input::complex(z), v);
                }
            }
        }
        RepArg::Q => {
            rec.param("rep", text("q"));
            if args.generator == GeneratorArg::Kplus {
                if two {
                    return Err(usage(
                        "the two-mode K+ eigenvector has no pointwise q-representation here",
                    ));
                }
                return delta_pair_output(rec, value, parity, format);
            }
            let q = args
                .q
                .as_ref()
                .ok_or_else(|| usage("--q is required for rep q"))?;
            if two {
                if args.delta_n != 0 {
                    return Err(usage(
                        "the two-mode q-representation is available for delta-n = 0 only",
                    ));
                }
                let q2 = args
                    .q2
                    .ok_or_else(|| usage("--q2 is required for two-mode rep q"))?;
                rec.param("q2", num(q2));
                for &q1 in &q.0 {
                    rec.push(Input::reals(&[q1, q2]), j2_qrep_2_delta0(value, q1, q2)?);
                }
            } else {
                for &x in &q.0 {
                    rec.push(Input::real(x), j2_qrep(value, parity, x)?);
                }
            }
        }
    }
    table_output(&rec, format)
}

fn parity_name(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

/// The K₊ position eigenfunction is a pair of delta functions; report its
/// locations, common amplitude and signs instead of samples.
fn delta_pair_output(rec: OutputRecord, eta: f64, parity: Parity, format: Format) -> CmdResult {
    let d = kplus_qrep(eta, parity)?;
    let x = d.support();
    let (locations, signs) = ([-x, x], [d.sign, 1.0]);
    match format {
        Format::Json => {
            let params: Vec<(&str, Raw)> = rec
                .parameters
                .iter()
                .map(|(k, v)| (k.as_str(), v.clone()))
                .collect();
            let body = raw_object(&[
                ("command", text(&rec.command)),
                ("parameters", raw_object(&params)),
                (
                    "delta_pair",
                    raw_object(&[
                        (
                            "locations",
                            raw_array(locations.iter().map(|&v| num(v)).collect()),
                        ),
                        ("amplitude", num(d.amplitude)),
                        ("signs", raw_array(signs.iter().map(|&v| num(v)).collect())),
                    ]),
                ),
                (
                    "metadata",
                    raw_object(&[("version", text(env!("CARGO_PKG_VERSION")))]),
                ),
            ]);
            Ok(to_json(&body))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["location", "amplitude", "sign"])
                .expect("in-memory write");
            for (l, s) in locations.iter().zip(signs) {
                w.write_record([
                    format!("{l:.16e}"),
                    format!("{:.16e}", d.amplitude),
                    format!("{s:.16e}"),
                ])
                .expect("in-memory write");
            }
            Ok(output::into_string(w))
        }
        Format::Table => Err(usage("--format table is only available for verify")),
    }
}

fn kind_name(c: &SpectrumClassification) -> &'static str {
    use squeeze_core::classifier::SpectrumKind::*;
    match c.kind {
        DiscreteEquidistant => "DiscreteEquidistant",
        DoubledRealLine => "DoubledRealLine",
        DoubledHalfAxis => "DoubledHalfAxis",
        FullRealLine => "FullRealLine",
    }
}

fn cmd_classify(h: QuadHamiltonian, tol: f64, format: Format) -> CmdResult {
    let r = classify(&h, tol)?;
    let alpha = match r.alpha {
        Some(z) => complex(z),
        None => serde_json::value::RawValue::from_string("null".into()).expect("valid JSON"),
    };
    match format {
        Format::Json => {
            let body = raw_object(&[
                ("command", text("classify")),
                (
                    "parameters",
                    raw_object(&[
                        ("a", num(h.a)),
                        ("b", num(h.b)),
                        ("c", num(h.c)),
                        ("d", num(h.d)),
                        ("phi", num(h.phi)),
                        ("psi", num(h.psi)),
                    ]),
                ),
                (
                    "result",
                    raw_object(&[
                        ("kind", text(kind_name(&r))),
                        ("scale", num(r.scale)),
                        ("shift", num(r.shift)),
                        ("alpha", alpha),
                        ("multiplicity", int(r.multiplicity as i64)),
                        ("degenerate", raw_bool(r.degenerate)),
                    ]),
                ),
                (
                    "metadata",
                    raw_object(&[
                        ("tolerance", num(tol)),
                        ("version", text(env!("CARGO_PKG_VERSION"))),
                    ]),
                ),
            ]);
            Ok(to_json(&body))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["field", "value"]).expect("in-memory write");
            let alpha = r
                .alpha
                .map(|z| format!("{:.16e}{:+.16e}i", z.re, z.im))
                .unwrap_or_default();
            let rows = [
                ("kind", kind_name(&r).to_string()),
                ("scale", format!("{:.16e}", r.scale)),
                ("shift", format!("{:.16e}", r.shift)),
                ("alpha", alpha),
                ("multiplicity", r.multiplicity.to_string()),
                ("degenerate", r.degenerate.to_string()),
            ];
            for (k, v) in rows {
                w.write_record([k, v.as_str()]).expect("in-memory write");
            }
            Ok(output::into_string(w))
        }
        Format::Table => Err(usage("--format table is only available for verify")),
    }
}

fn raw_bool(b: bool) -> Raw {
    serde_json::value::RawValue::from_string(b.to_string()).expect("valid JSON")
}

fn report_json(r: &VerificationReport) -> Raw {
    let cases: Vec<Raw> = r
        .cases
        .iter()
        .map(|c| {
            raw_object(&[
                ("description", text(&c.description)),
                ("error", num(c.error)),
                ("tolerance", num(c.tolerance)),
                ("pass", raw_bool(c.pass)),
            ])
        })
        .collect();
    let mut fields = vec![("suite", text(&r.suite))];
    if let Some(seed) = r.seed {
        fields.push((
            "seed",
            serde_json::value::RawValue::from_string(seed.to_string()).expect("valid JSON"),
        ));
    }
    fields.push(("pass", raw_bool(r.passed())));
    fields.push(("cases", raw_array(cases)));
    if let Some(t) = r.runtime_seconds {
        fields.push(("runtime_seconds", num(t)));
    }
    raw_object(&fields)
}

fn cmd_verify(
    suite: &str,
    config: VerifyConfig,
    format: Format,
) -> Result<(String, bool), Failure> {
    if let Some(t) = config.tolerance_override {
        if !(t >= 0.0) {
            return Err(usage(format!(
                "tolerance override must be non-negative, got {t}"
            )));
        }
    }
    let reports = if suite == "all" {
        run_all(&config)?
    } else {
        let s: Suite = suite.parse()?;
        vec![run_suite(s, &config)?]
    };
    let passed = reports.iter().all(|r| r.passed());
    let body = match format {
        Format::Json => {
            if reports.len() == 1 {
                to_json(&report_json(&reports[0]))
            } else {
                to_json(&raw_object(&[
                    ("pass", raw_bool(passed)),
                    (
                        "reports",
                        raw_array(reports.iter().map(report_json).collect()),
                    ),
                ]))
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "description", "error", "tolerance", "pass"])
                .expect("in-memory write");
            for r in &reports {
                for c in &r.cases {
                    w.write_record([
                        r.suite.clone(),
                        c.description.clone(),
                        format!("{:.16e}", c.error),
                        format!("{:.16e}", c.tolerance),
                        c.pass.to_string(),
                    ])
                    .expect("in-memory write");
                }
            }
            output::into_string(w)
        }
        Format::Table => {
            let mut s = reports
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join("\n\n");
            s.push('\n');
            s
        }
    };
    Ok((body, passed))
}

fn run(cli: &Cli) -> Result<String, (Failure, Option<String>)> {
    let plain = |r: CmdResult| r.map_err(|f| (f, None));
    match &cli.command {
        Command::Pollaczek { n, lambda, b } => plain(cmd_pollaczek(*n, lambda, *b, cli.format)),
        Command::Weight { lambda, b } => plain(cmd_weight(lambda, *b, cli.format)),
        Command::Moments { b, max_order } => plain(cmd_moments(*b, *max_order, cli.format)),
        Command::Eigvec(args) => plain(cmd_eigvec(args, cli.format)),
        Command::Classify {
            a,
            b,
            c,
            d,
            phi,
            psi,
            tol,
        } => {
            let h =
                QuadHamiltonian::new(*a, *b, *c, *d, *phi, *psi).map_err(|e| (e.into(), None))?;
            plain(cmd_classify(h, *tol, cli.format))
        }
        Command::Verify {
            suite,
            seed,
            trials,
            tol,
            runtime,
        } => {
            let config = VerifyConfig {
                seed: *seed,
                trials: *trials,
                tolerance_override: *tol,
                record_runtime: *runtime,
            };
            match cmd_verify(suite, config, cli.format) {
                Ok((body, true)) => Ok(body),
                Ok((body, false)) => Err((Failure::Verification, Some(body))),
                Err(f) => Err((f, None)),
            }
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => {
            fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(body) => match emit(&cli, &body) {
            Ok(()) => ExitCode::SUCCESS,
            Err(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        },
        Err((Failure::Usage(msg), _)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err((Failure::Verification, body)) => {
            if let Some(body) = body {
                if let Err(msg) = emit(&cli, &body) {
                    eprintln!("error: {msg}");
                }
            }
            eprintln!("verification failed");
            ExitCode::from(2)
        }
    }
}
