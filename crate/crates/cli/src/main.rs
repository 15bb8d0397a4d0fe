//! `equiconf`: command-line front end for the `equiconf` library.

mod commands;
mod output;
mod suites;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Failure;

#[derive(Parser, Debug)]
#[command(name = "equiconf", version, about = "Exact equivariant cohomology of configuration spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write output to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Torus,
    So,
    O,
    U,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Standard,
    Paper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Arnold,
    LerayHirsch,
    Weyl,
    EvenPage,
    Decalage,
    Purity,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Non-equivariant cohomology of Conf_k(ℝⁿ).
    #[command(subcommand)]
    Conf(ConfCmd),
    /// Torus and Weyl-fixed equivariant rings for Conf_ℓ(ℝ^{2n+1}).
    #[command(subcommand)]
    Equi(EquiCmd),
    /// Page model for Conf_ℓ(ℝ^{2n}).
    #[command(subcommand)]
    Even(EvenCmd),
    /// Filtered complexes and their spectral sequences.
    #[command(subcommand)]
    Ss(SsCmd),
    /// Run a verification suite (all suites when --suite is omitted).
    Verify {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render an element or complex read from JSON.
    Render {
        #[arg(long, value_name = "FILE")]
        input: std::path::PathBuf,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct ConfArgs {
    #[arg(long)]
    pub points: usize,
    /// Ambient dimension n of ℝⁿ.
    #[arg(long)]
    pub dim: usize,
}

#[derive(Subcommand, Debug)]
pub enum ConfCmd {
    /// Poincaré polynomial.
    Poincare {
        #[command(flatten)]
        args: ConfArgs,
    },
    /// Admissible basis in one degree.
    Basis {
        #[command(flatten)]
        args: ConfArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Normal form of a word such as "1,3;2,3".
    NormalForm {
        #[command(flatten)]
        args: ConfArgs,
        word: String,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GroupArgs {
    #[arg(long)]
    pub points: usize,
    /// n, for ℝ^{2n+1} or ℝ^{2n}.
    #[arg(long)]
    pub halfdim: usize,
    #[arg(long, value_enum, default_value_t = GroupArg::Torus)]
    pub group: GroupArg,
    #[arg(long, value_enum, default_value_t = ConventionArg::Standard)]
    pub weyl_convention: ConventionArg,
}

#[derive(Subcommand, Debug)]
pub enum EquiCmd {
    /// Dimensions in even degrees up to --max-degree.
    Hilbert {
        #[command(flatten)]
        args: GroupArgs,
        #[arg(long)]
        max_degree: u32,
    },
    /// Basis in one degree.
    Basis {
        #[command(flatten)]
        args: GroupArgs,
        #[arg(long)]
        degree: u32,
    },
    /// Normal form of a word such as "1,2;1,2".
    NormalForm {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        halfdim: usize,
        word: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum EvenCmd {
    /// Dimensions and basis of the cohomology model.
    Model {
        #[command(flatten)]
        args: GroupArgs,
        #[arg(long)]
        max_degree: u32,
    },
    /// Compare the page cohomology against the model; exits 1 on mismatch.
    Page {
        #[command(flatten)]
        args: GroupArgs,
        #[arg(long)]
        max_degree: u32,
    },
    /// The kernel K of the contraction on H*(Conf_ℓ(ℝ^{2n})).
    Kernel {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        halfdim: usize,
        #[arg(long)]
        max_degree: u32,
    },
}

#[derive(Args, Debug, Clone)]
pub struct WeightArgs {
    /// ξ as P/Q.
    #[arg(long)]
    pub xi: String,
    /// α as P/Q.
    #[arg(long, default_value = "1")]
    pub alpha: String,
}

#[derive(Subcommand, Debug)]
pub enum SsCmd {
    /// One page E_R with its differentials.
    Page {
        #[arg(long, value_name = "FILE")]
        input: std::path::PathBuf,
        #[arg(long, default_value_t = 1)]
        page: usize,
    },
    /// Décalage of the filtration.
    Decalage {
        #[arg(long, value_name = "FILE")]
        input: std::path::PathBuf,
    },
    /// Check the weights ξ^{α((1−r)i + rj)} on E_R, r = R − 1; exits 1 on a violation.
    Purity {
        #[arg(long, value_name = "FILE")]
        input: std::path::PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, default_value_t = 1)]
        page: usize,
    },
    /// Formality witness for the canonical filtration; exits 1 when refused.
    Witness {
        #[arg(long, value_name = "FILE")]
        input: std::path::PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
    },
    /// A random filtered complex with an automorphism.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Upper bound on the total dimension.
        #[arg(long, default_value_t = 10)]
        dim: usize,
    },
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
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(report)) => {
            if let Err(e) = output::emit(&cli, &report) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
