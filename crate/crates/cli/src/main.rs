//! Command-line front end: polynomial expression parsing, JSON I/O, and
//! orchestration of the verification suites.
//!
//! Exit codes: `0` all checks passed, `1` a verification returned false,
//! `2` input error.

mod commands;
mod parse;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "isofib",
    about = "Exact two-isogeny, torsor, and Kodaira-fiber toolkit for elliptic families over the rational function field",
    version
)]
pub struct Cli {
    /// Emit canonical JSON instead of text
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text (the default)
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Classify the singular fibers of a family given as a spec file
    Classify {
        /// Path to a family spec JSON document ({"family": ..., "params": ...})
        #[arg(long)]
        spec: PathBuf,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verify the curve-level isogeny identities (symbolically, plus an
    /// optional rational specialization)
    IsogenyVerify {
        /// Rational a of an explicit triple
        #[arg(long, requires = "b", requires = "c")]
        a: Option<String>,
        /// Rational b
        #[arg(long)]
        b: Option<String>,
        /// Rational c
        #[arg(long)]
        c: Option<String>,
    },
    /// Build a named family from inline parameters and report its fiber data
    Family {
        /// Family tag: Generic | FourI4 | FourI0star | Kummer17 | SixLines16 | SixLinesParams | CHL14
        #[arg(long)]
        tag: String,
        /// Family parameters as JSON; polynomial values may be expression
        /// strings like "t^4 - 1" or {"expr": "...", "homdeg": n}
        #[arg(long)]
        params: String,
    },
    /// Nine-tuple moduli operations
    Chl {
        #[command(subcommand)]
        sub: ChlCmd,
    },
    /// Rosenhain / mu-moduli operations
    Kummer {
        #[command(subcommand)]
        sub: KummerCmd,
    },
    /// Run the bundled verification corpus (optionally extended from a file)
    VerifyAll {
        /// Extra corpus entries: a JSON array of {name, kind, expect_x, expect_y, expect_z}
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum ChlCmd {
    /// Transpose the nine-tuple
    Dualize {
        /// Nine rationals "a2,a1,a0;b2,b1,b0;g2,g1,g0"
        #[arg(long)]
        moduli: String,
    },
    /// Normalize to alpha2 = gamma0 = 1 (and alpha1 = 1 when possible)
    Normalize {
        #[arg(long)]
        moduli: String,
    },
    /// Check that interchanging base and fiber of the pulled-back torsor
    /// family lands on the dual moduli
    Equiv {
        #[arg(long)]
        moduli: String,
    },
    /// Assemble the duality report
    Report {
        #[arg(long)]
        moduli: String,
        /// Which half of the I2 fibers is marked: alpha (default) or gamma
        #[arg(long, default_value = "alpha")]
        choice: String,
    },
}

#[derive(Subcommand)]
pub enum KummerCmd {
    /// Compute the mu-triple of a Rosenhain triple (L is verified, not computed)
    Mu {
        /// Three rationals "l1,l2,l3"
        #[arg(long)]
        lambda: String,
        /// The verified square root L of 4 l1 l2 l3
        #[arg(long)]
        l: String,
    },
    /// The dual mu-triple
    Dual {
        /// Three rationals "m1,m2,m3"
        #[arg(long)]
        mu: String,
    },
    /// Build the rank-17 models for a mu-triple and verify the dualities
    Models {
        #[arg(long)]
        mu: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match commands::run(cli.command, json) {
        Ok(out) => {
            print!("{}", out.text);
            if out.all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
