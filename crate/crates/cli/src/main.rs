mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "finstoch", version, about = "Exact computations on finite stochastic maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Logarithm base for entropies.
    #[arg(long, global = true, default_value_t = 2.0, value_name = "B")]
    pub base: f64,
}

#[derive(Args, Debug)]
pub struct MapArg {
    #[arg(value_name = "FILE")]
    pub file: PathBuf,
    #[arg(value_name = "MAP")]
    pub map: String,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(value_name = "FILE")]
    pub file: PathBuf,
    /// Applied first.
    #[arg(value_name = "F")]
    pub first: String,
    /// Applied second.
    #[arg(value_name = "G")]
    pub second: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Shannon entropy H(p) of a declared space.
    Entropy {
        #[arg(value_name = "FILE")]
        file: PathBuf,
        #[arg(value_name = "SPACE")]
        space: String,
    },
    /// Conditional entropy H(f|p).
    Condent(MapArg),
    /// Conditional information loss K(f), by definition and in closed form.
    Closs(MapArg),
    /// The canonical Bayesian inverse, in declaration syntax.
    Invert(MapArg),
    /// The composite G∘F.
    Compose(PairArgs),
    /// Whether (F, G) admits a mediator; exits 1 when it does not.
    Coalescable(PairArgs),
    /// Deviation of conditional entropy from functoriality on (F, G).
    Deviation(PairArgs),
    /// The bloom X ⇝ X×Y of a map.
    Bloom(MapArg),
    /// Bloom and projection factors with the joint distribution between them.
    Factorize(MapArg),
    /// Whether the code of a map is correctable; exits 1 when it is not.
    Correctable(MapArg),
    /// Runs property suites; exits 1 on any failure.
    Propcheck {
        /// Run only this suite.
        #[arg(long, value_name = "NAME")]
        suite: Option<String>,
        #[arg(long, value_name = "N", default_value_t = 500)]
        trials: u64,
        #[arg(long, value_name = "S", default_value_t = 0)]
        seed: u64,
        /// Largest label set generated.
        #[arg(long, value_name = "K", default_value_t = 4)]
        size: usize,
        /// Run trials on the current thread only.
        #[arg(long)]
        sequential: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
