use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rblie::envelope::{LiePresentation, Weight};
use rblie::io::commands::{self, SystemKind};
use rblie::io::{load_presentation, parse_rational};
use rblie::oplie::RlsEnumerationBounds;
use rblie::words::Alphabet;

#[derive(Parser)]
#[command(name = "rblie", version, about = "Rota–Baxter envelopes of Lie algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemArg {
    Rb,
    Ra,
    S0,
}

impl From<SystemArg> for SystemKind {
    fn from(s: SystemArg) -> Self {
        match s {
            SystemArg::Rb => SystemKind::Rb,
            SystemArg::Ra => SystemKind::Ra,
            SystemArg::S0 => SystemKind::S0,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Lyndon–Shirshov words over an alphabet.
    Lswords {
        /// Generators, greatest first.
        #[arg(long, value_delimiter = ',', required = true)]
        alphabet: Vec<String>,
        #[arg(long)]
        max_deg: usize,
    },
    /// Basis words of the free operated Lie algebra.
    Rlswords {
        #[arg(long, value_delimiter = ',', required = true)]
        alphabet: Vec<String>,
        #[arg(long)]
        max_deg: usize,
        #[arg(long)]
        max_rdeg: usize,
        /// Degree bound for operator arguments; defaults to --max-deg.
        #[arg(long)]
        arg_deg: Option<usize>,
        #[arg(long)]
        max_level: Option<usize>,
        /// Only words without descending adjacent operator letters.
        #[arg(long)]
        rals: bool,
    },
    /// Normal form of a polynomial.
    Nf {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        term: String,
        #[arg(long)]
        max_rdeg: Option<usize>,
        #[arg(long, value_enum, default_value = "rb")]
        system: SystemArg,
    },
    /// Check closure under compositions.
    GsbCheck {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_enum, default_value = "rb")]
        system: SystemArg,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Compare terminal words of the Rota–Baxter and abelian-image envelopes.
    Pbw {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Check the Rota–Baxter identity on pairs of terminal words.
    RbVerify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
}

#[derive(Args)]
struct AlgebraArgs {
    /// JSON presentation file.
    #[arg(long)]
    algebra: PathBuf,
    /// Overrides the weight given in the file.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
}

impl AlgebraArgs {
    fn load(&self) -> anyhow::Result<(LiePresentation, Weight)> {
        let text = std::fs::read_to_string(&self.algebra)
            .with_context(|| format!("reading {}", self.algebra.display()))?;
        let (p, mut w) = load_presentation(&text)
            .with_context(|| format!("loading {}", self.algebra.display()))?;
        if let Some(s) = &self.weight {
            w = Weight(parse_rational(s)?);
        }
        Ok((p, w))
    }
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    max_deg: usize,
    #[arg(long)]
    max_rdeg: usize,
}

impl BoundArgs {
    fn bounds(&self) -> RlsEnumerationBounds {
        RlsEnumerationBounds::new(self.max_deg, self.max_rdeg)
    }
}

struct Outcome {
    text: String,
    json: String,
    pass: bool,
}

fn outcome<T: Serialize>(report: &T, text: String, pass: bool) -> Outcome {
    Outcome {
        text,
        json: serde_json::to_string_pretty(report).expect("plain data") + "\n",
        pass,
    }
}

fn run(command: &Command) -> anyhow::Result<Outcome> {
    Ok(match command {
        Command::Lswords { alphabet, max_deg } => {
            let a = Alphabet::new(alphabet.iter().map(String::as_str))?;
            let r = commands::lswords(&a, *max_deg);
            outcome(&r, r.text(), true)
        }
        Command::Rlswords {
            alphabet,
            max_deg,
            max_rdeg,
            arg_deg,
            max_level,
            rals,
        } => {
            let a = Alphabet::new(alphabet.iter().map(String::as_str))?;
            let mut b = RlsEnumerationBounds::new(*max_deg, *max_rdeg);
            b.max_arg_degree = *arg_deg;
            b.max_level = *max_level;
            let r = commands::rlswords(&a, &b, *rals);
            outcome(&r, r.text(), true)
        }
        Command::Nf {
            algebra,
            term,
            max_rdeg,
            system,
        } => {
            let (p, w) = algebra.load()?;
            let r = commands::nf(&p, &w, (*system).into(), term, *max_rdeg)?;
            outcome(&r, r.text(), true)
        }
        Command::GsbCheck {
            algebra,
            system,
            bounds,
        } => {
            let (p, w) = algebra.load()?;
            let r = commands::gsb_check(&p, &w, (*system).into(), &bounds.bounds())?;
            outcome(&r, r.text(), r.pass)
        }
        Command::Pbw { algebra, bounds } => {
            let (p, w) = algebra.load()?;
            let r = commands::pbw(&p, &w, &bounds.bounds())?;
            outcome(&r, r.text(), r.equal)
        }
        Command::RbVerify { algebra, bounds } => {
            let (p, w) = algebra.load()?;
            let r = commands::rb_verify(&p, &w, &bounds.bounds())?;
            outcome(&r, r.text(), r.pass)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => print!("{}", out.json),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            if cli.format == Format::Json {
                let msg = serde_json::json!({ "error": format!("{e:#}") });
                println!("{}", serde_json::to_string_pretty(&msg).expect("plain data"));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
