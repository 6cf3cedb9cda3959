use clap::{Args, Parser, Subcommand};

use pkahler::cli::{
    self, cmd_classify, cmd_cohomology, cmd_cones, cmd_verify_example, CliError, OutputFormat,
    RunConfig,
};

#[derive(Parser)]
#[command(
    name = "pkk",
    about = "Exact positivity cones, invariant cohomology and generalized p-Kähler detection",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Bundled model name (torus2, torus3, iwasawa, sl2c) or a JSON file.
    #[arg(long, default_value = "sl2c")]
    model: String,
    /// Output format.
    #[arg(long, default_value = "table", value_parser = ["table", "json"])]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact identity regression on the SL(2,ℂ) quotient model.
    VerifyExample {
        #[arg(long, default_value = "sl2c")]
        model: String,
    },
    /// Classify generalized p-Kähler structures with certificates.
    Classify {
        #[command(flatten)]
        common: CommonOpts,
        /// Degrees p to test (default: all of 1..n−1). Repeatable.
        #[arg(long = "p")]
        p: Vec<usize>,
        /// Classes to test: pk, pwk, ps, ppl, e1, e2, e3, e4. Repeatable.
        #[arg(long = "class")]
        class: Vec<String>,
        /// Transversality margin tolerance.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Search seed (PKK_SEED overrides the default).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Cone membership tests for a real (p,p)-form (JSON inline or file).
    Cones {
        /// The form: inline JSON or a path to a JSON file.
        #[arg(long)]
        form: String,
        /// Which cone: sp, p, wp, transverse. Repeatable; default all.
        #[arg(long = "cone")]
        cone: Vec<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "table", value_parser = ["table", "json"])]
        format: String,
    },
    /// Invariant cohomology dimension tables.
    Cohomology {
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn parse_format(s: &str) -> OutputFormat {
    if s == "json" {
        OutputFormat::Json
    } else {
        OutputFormat::Table
    }
}

fn run() -> Result<String, CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::VerifyExample { model } => cmd_verify_example(&model),
        Command::Classify { common, p, class, tol, seed } => {
            let classes = if class.is_empty() { None } else { Some(cli::parse_classes(&class)?) };
            let cfg = RunConfig {
                model: common.model,
                p: if p.is_empty() { None } else { Some(p) },
                classes,
                tol,
                seed: cli::resolve_seed(seed)?,
                format: parse_format(&common.format),
            };
            cmd_classify(&cfg)
        }
        Command::Cones { form, cone, tol, seed, format } => {
            let parsed = cli::load_form(&form)?;
            let which: Vec<&str> = if cone.is_empty() {
                vec!["sp", "p", "wp", "transverse"]
            } else {
                cone.iter().map(String::as_str).collect()
            };
            cmd_cones(&parsed, &which, tol, cli::resolve_seed(seed)?, parse_format(&format))
        }
        Command::Cohomology { common } => {
            cmd_cohomology(&common.model, parse_format(&common.format))
        }
    }
}

fn main() {
    match run() {
        Ok(output) => {
            print!("{output}");
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
