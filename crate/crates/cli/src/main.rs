#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use xlag_core::xlaguerre::{FamilyKind, XFamily};
use xlag_core::Error;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "xlag", version, about = "Exceptional Laguerre systems, translations and extremal constants")]
struct Cli {
    /// Output format; tables are written as CSV rows.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
enum Kind {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    Laguerre,
    Bessel,
}

#[derive(Args, Debug, Clone, Serialize)]
struct FamilyArgs {
    /// Family kind.
    #[arg(long, value_enum, default_value = "I")]
    kind: Kind,
    /// Codimension (exceptional kinds only).
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Bessel frequencies, comma separated (default: the first zeros of J_α).
    #[arg(long, value_delimiter = ',')]
    frequencies: Option<Vec<f64>>,
}

impl FamilyArgs {
    fn build(&self) -> Result<XFamily, Error> {
        let kind = match self.kind {
            Kind::I => FamilyKind::TypeI,
            Kind::II => FamilyKind::TypeII,
            Kind::Laguerre => FamilyKind::ClassicalLaguerre,
            Kind::Bessel => FamilyKind::Bessel,
        };
        match (&self.frequencies, kind) {
            (Some(f), FamilyKind::Bessel) => XFamily::bessel_with_frequencies(self.alpha, f.clone()),
            (Some(_), _) => Err(Error::InvalidParams("--frequencies only applies to --kind bessel".into())),
            (None, k) => XFamily::from_kind(k, self.m, self.alpha),
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
struct GridArgs {
    /// Right end of the radial grid.
    #[arg(long)]
    x_max: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
enum Command {
    /// Evaluate ũ_n at x, or tabulate it with --x-max/--step.
    Eval {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// ξ_1 < … < ξ_m with S(-ξ_i) = 0, i.e. the zeros of L_m^{(α-1)}.
    Roots {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Gauss-Laguerre nodes and weights for x^α e^{-x}.
    Quad {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
    },
    /// Normalized inner products ⟨ũ_j, ũ_k⟩/(σ_jσ_k) for j, k ≤ n.
    Ortho {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
    },
    /// Differential-equation and eigen-equation residuals of ũ_n at radial x.
    Residual {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: f64,
    },
    /// Grid maximum of |ũ_n| and where it is attained.
    Supnorm {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        grid: GridArgs,
        /// Also output the sampled profile.
        #[arg(long)]
        profile: bool,
    },
    /// T_t f(x) for f = Σ a_k ũ_k, or the translated profile over a grid.
    Translate {
        #[command(flatten)]
        family: FamilyArgs,
        /// Coefficients a_0, a_1, … (comma separated).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        coeffs: Vec<f64>,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        x: Option<f64>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Closed-form Bessel translation of j_α(λ·) against the product j_α(λx)j_α(λt).
    BesselTranslate {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        x: f64,
    },
    /// Certificate that g'(s) > 0 for the type I potential.
    Positivity {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Right end of the certified interval in s (default 50 + max ξ).
        #[arg(long)]
        s_max: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
    /// Hypotheses and identities for the auxiliary function v = x^{1+α}t^{1+α}.
    Vcert {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 10.0)]
        x_max: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
    /// Compares the sup of T_t f over the quadrant with the sup of f.
    Maxprinciple {
        #[command(flatten)]
        family: FamilyArgs,
        /// Coefficients of f; omit to draw a seeded random span of degree n.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        coeffs: Option<Vec<f64>>,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long)]
        step: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lower bounds (or the exact value) for ‖T_t‖ on the degree-n span.
    NormProbe {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        t: f64,
        #[arg(long, value_enum, default_value = "l2w")]
        norm: Norm,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Nikol'skii constant D_{n,q}(point), optionally its supremum over x.
    Nikolskii {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        point: f64,
        /// Also compute M_{n,q} = sup_x D_{n,q}(x) on a grid.
        #[arg(long)]
        sup: bool,
        /// Output D_{n,q}(x) over the grid as a table.
        #[arg(long)]
        curve: bool,
        #[command(flatten)]
        grid: GridArgs,
        /// Seed of the second (random) start used for the uniqueness check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the acceptance suite (all criteria, or the listed ones).
    Report {
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<usize>>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
enum Norm {
    L2w,
    Linf,
    L1w,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Roots { .. } => "roots",
            Command::Quad { .. } => "quad",
            Command::Ortho { .. } => "ortho",
            Command::Residual { .. } => "residual",
            Command::Supnorm { .. } => "supnorm",
            Command::Translate { .. } => "translate",
            Command::BesselTranslate { .. } => "bessel-translate",
            Command::Positivity { .. } => "positivity",
            Command::Vcert { .. } => "vcert",
            Command::Maxprinciple { .. } => "maxprinciple",
            Command::NormProbe { .. } => "norm-probe",
            Command::Nikolskii { .. } => "nikolskii",
            Command::Report { .. } => "report",
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParams(_) | Error::InvalidDomain(_) | Error::UnsupportedFamily(_) => 2,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let reason = e.kind().as_str().unwrap_or("invalid arguments").to_string();
            let detail = e.to_string();
            let first = detail.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            let doc = output::error_document(None, &serde_json::Value::Null, "Usage", &first);
            println!("{doc}");
            eprintln!("{}", detail.trim_end());
            eprintln!("reason: Usage: {reason}");
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    let params = serde_json::to_value(&cli.command).unwrap_or(serde_json::Value::Null);
    match commands::run(&cli.command) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&output::document(name, &params, &out)).unwrap()),
                Format::Csv => output::render_csv(&out),
            };
            if let Err(e) = output::emit(&text, cli.out.as_deref()) {
                eprintln!("reason: Io: {e}");
                return ExitCode::from(2);
            }
            if out.pass == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let reason = e.to_string();
            let doc = output::error_document(Some(name), &params, e.kind(), &reason);
            println!("{doc}");
            eprintln!("reason: {}: {reason}", e.kind());
            ExitCode::from(exit_code(&e))
        }
    }
}
