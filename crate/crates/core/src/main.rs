use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use hyperchow::certificate::{SectionRegistry, SuiteConfig};
use hyperchow::corr::verify_ms_decomposition;
use hyperchow::dvariety::{
    bb_cells, bb_generating_polynomial, DLabel, DModel, DModelConfig, BB_CONVENTION,
    DEFAULT_WEIGHTS,
};
use hyperchow::expr::{eval_d, eval_gr};
use hyperchow::report::Report;
use hyperchow::schubert::{chern_tangent, poincare_polynomial};
use hyperchow::steenrod::{verify_d_invariance, verify_km_identity};
use hyperchow::{Error, Modulus, Result};

#[derive(Parser, Debug)]
#[command(name = "hyperchow", version, about = "Exact Chow-ring computations on Gr(3,6) and its hyperplane section D")]
struct Cli {
    /// Coefficients: 0 for the integers, 3 for Z/3.
    #[arg(long = "mod", global = true, value_parser = ["0", "3"])]
    modulus: Option<String>,

    /// Self-intersection `d^2 = delta pt`; must be prime to 3.
    #[arg(long, global = true, default_value_t = 2, allow_negative_numbers = true)]
    delta: i64,

    /// Torus weights for the fixed-point census.
    #[arg(long, global = true, value_parser = parse_weights, default_value = "1,5,6,2,3,7")]
    weights: [i64; 6],

    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schubert calculus on Gr(k, n).
    #[command(subcommand)]
    Gr(GrCommand),
    /// The Chow ring of D.
    #[command(subcommand)]
    Dring(DringCommand),
    /// Torus-fixed points of D and their cell dimensions.
    Bb,
    /// Motivic decomposition checks.
    #[command(subcommand)]
    Motive(MotiveCommand),
    /// Reduced-power checks.
    #[command(subcommand)]
    Steenrod(SteenrodCommand),
    /// Run every check and write the certificate.
    Certify(CertifyArgs),
}

#[derive(Args, Debug)]
struct GrShape {
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 6)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum GrCommand {
    Mult {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[command(flatten)]
        shape: GrShape,
    },
    Degree {
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        shape: GrShape,
    },
    Poincare {
        #[command(flatten)]
        shape: GrShape,
    },
}

#[derive(Subcommand, Debug)]
enum DringCommand {
    Mult {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Degree {
        #[arg(long)]
        expr: String,
    },
    /// Gram matrix in one codimension, as CSV.
    Gram {
        #[arg(long)]
        codim: u32,
    },
    Chern,
}

#[derive(Subcommand, Debug)]
enum MotiveCommand {
    Verify,
}

#[derive(Subcommand, Debug)]
enum SteenrodCommand {
    DInvariance,
    Km,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn parse_weights(s: &str) -> std::result::Result<[i64; 6], String> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| format!("`{p}` is not an integer")))
        .collect::<std::result::Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|v: Vec<i64>| format!("expected 6 weights, got {}", v.len()))
}

enum Outcome {
    Ok,
    Fail,
}

struct Ctx {
    modulus: Option<Modulus>,
    delta: i64,
    weights: [i64; 6],
    json: bool,
}

impl Ctx {
    fn modulus_or(&self, default: Modulus) -> Modulus {
        self.modulus.unwrap_or(default)
    }

    fn model(&self, default: Modulus) -> Result<DModel> {
        DModel::new(DModelConfig::with_delta(self.delta), self.modulus_or(default))
    }

    fn print<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
        } else {
            print!("{}", text());
        }
    }

    fn print_report(&self, report: &Report) -> Outcome {
        #[derive(Serialize)]
        struct Out<'a> {
            verdict: String,
            first_failure: Option<&'a str>,
            records: &'a Report,
        }
        let out = Out {
            verdict: report.status().to_string(),
            first_failure: report.first_failure().map(|r| r.id.as_str()),
            records: report,
        };
        self.print(&out, || {
            let mut s = String::new();
            for r in &report.records {
                let _ = writeln!(s, "{r}");
            }
            let _ = writeln!(s, "verdict: {}", report.status());
            s
        });
        if report.passed() {
            Outcome::Ok
        } else {
            Outcome::Fail
        }
    }
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn run(cli: Cli) -> Result<Outcome> {
    let ctx = Ctx {
        modulus: cli
            .modulus
            .as_deref()
            .map(|m| Modulus::from_value(m.parse().expect("validated by clap")))
            .transpose()?,
        delta: cli.delta,
        weights: cli.weights,
        json: cli.json,
    };
    let z = Modulus::Integral;
    match cli.command {
        Command::Gr(cmd) => match cmd {
            GrCommand::Mult { a, b, shape } => {
                let m = ctx.modulus_or(z);
                let x = eval_gr(&a, shape.k, shape.n, m)?;
                let y = eval_gr(&b, shape.k, shape.n, m)?;
                let p = (&x * &y).to_string();
                ctx.print(&p, || line(&p));
            }
            GrCommand::Degree { expr, shape } => {
                let d = eval_gr(&expr, shape.k, shape.n, ctx.modulus_or(z))?.degree();
                ctx.print(&d, || line(d));
            }
            GrCommand::Poincare { shape } => {
                if shape.k > shape.n {
                    return Err(Error::Unsupported(format!("Gr({},{}) is empty", shape.k, shape.n)));
                }
                let p = poincare_polynomial(shape.k, shape.n);
                ctx.print(&p, || line(join(&p)));
            }
        },
        Command::Dring(cmd) => match cmd {
            DringCommand::Mult { a, b } => {
                let m = ctx.model(z)?;
                let p = (&eval_d(&a, m)? * &eval_d(&b, m)?).to_string();
                ctx.print(&p, || line(&p));
            }
            DringCommand::Degree { expr } => {
                let d = eval_d(&expr, ctx.model(z)?)?.degree();
                ctx.print(&d, || line(d));
            }
            DringCommand::Gram { codim } => {
                if codim > hyperchow::dvariety::DIM {
                    return Err(Error::Unsupported(format!("D has no classes in codimension {codim}")));
                }
                let m = ctx.model(z)?;
                let g = m.gram_matrix(codim)?;
                let rows: Vec<String> = DModel::basis_in_codim(codim).iter().map(DLabel::to_string).collect();
                let cols: Vec<String> = DModel::basis_in_codim(hyperchow::dvariety::DIM - codim)
                    .iter()
                    .map(DLabel::to_string)
                    .collect();
                ctx.print(&g, || {
                    let mut s = format!(",{}\n", cols.join(","));
                    for (label, row) in rows.iter().zip(&g) {
                        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                        let _ = writeln!(s, "{label},{}", cells.join(","));
                    }
                    s
                });
            }
            DringCommand::Chern => {
                let m = ctx.model(Modulus::Three)?;
                m.modulus().require_three()?;
                let ambient = m.pullback(&chern_tangent(3, 6, Modulus::Three))?.to_string();
                let tangent = m.chern_tangent()?.to_string();
                let negative = m.chern_negative_tangent()?.to_string();
                #[derive(Serialize)]
                struct Out<'a> {
                    ambient: &'a str,
                    tangent: &'a str,
                    negative_tangent: &'a str,
                }
                let out = Out {
                    ambient: &ambient,
                    tangent: &tangent,
                    negative_tangent: &negative,
                };
                ctx.print(&out, || {
                    format!("i^*c(T Gr) = {ambient}\nc(T_D) = {tangent}\nc(-T_D) = {negative}\n")
                });
            }
        },
        Command::Bb => {
            let cells = bb_cells(&ctx.weights)?;
            let poly = bb_generating_polynomial(&ctx.weights)?;
            #[derive(Serialize)]
            struct Out<'a> {
                convention: &'a str,
                weights: [i64; 6],
                count: usize,
                fixed_points: &'a [hyperchow::dvariety::BBFixedPoint],
                polynomial: &'a [u64],
            }
            let out = Out {
                convention: BB_CONVENTION,
                weights: ctx.weights,
                count: cells.len(),
                fixed_points: &cells,
                polynomial: &poly,
            };
            ctx.print(&out, || {
                let mut s = String::new();
                for c in &cells {
                    let _ = writeln!(
                        s,
                        "{{{},{},{}}} dim {} removed ({},{}) weight {}",
                        c.subset[0],
                        c.subset[1],
                        c.subset[2],
                        c.cell_dim,
                        c.removed_swap.0,
                        c.removed_swap.1,
                        c.removed_weight
                    );
                }
                let _ = writeln!(s, "fixed points: {}", cells.len());
                let _ = writeln!(s, "g: {}", join(&poly));
                s
            });
        }
        Command::Motive(MotiveCommand::Verify) => {
            let rep = verify_ms_decomposition(ctx.model(Modulus::Three)?)?;
            return Ok(ctx.print_report(&rep.report));
        }
        Command::Steenrod(cmd) => {
            let m = ctx.model(Modulus::Three)?;
            let report = match cmd {
                SteenrodCommand::DInvariance => verify_d_invariance(m)?,
                SteenrodCommand::Km => verify_km_identity(m)?,
            };
            return Ok(ctx.print_report(&report));
        }
        Command::Certify(args) => {
            ctx.modulus_or(Modulus::Three).require_three()?;
            let config = SuiteConfig {
                d: DModelConfig {
                    delta: ctx.delta,
                    gram_fault: args.inject_fault,
                },
                weights: ctx.weights,
            };
            DModel::new(config.d, Modulus::Three)?;
            if ctx.weights != DEFAULT_WEIGHTS {
                bb_cells(&ctx.weights)?;
            }
            let doc = SectionRegistry::builtin().run(&config)?;
            let json = doc.to_json();
            match &args.out {
                Some(path) => {
                    std::fs::write(path, &json).map_err(|e| {
                        Error::Unsupported(format!("cannot write {}: {e}", path.display()))
                    })?;
                    println!("verdict: {} ({} records)", doc.verdict, doc.record_count);
                    if let Some(id) = &doc.first_failure {
                        println!("first failure: {id}");
                    }
                }
                None => print!("{json}"),
            }
            return Ok(if doc.passed() { Outcome::Ok } else { Outcome::Fail });
        }
    }
    Ok(Outcome::Ok)
}

fn join(xs: &[u64]) -> String {
    let parts: Vec<String> = xs.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
