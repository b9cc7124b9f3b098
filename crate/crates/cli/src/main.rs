use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hodgekit_cli::app::{format, run_file, run_suite};
use hodgekit_cli::commands::{Command, Limit, Names};

/// Exact computations with mixed Hodge structures, nilpotent orbits and
/// their limits. Reads a JSON problem file and writes a JSON result.
///
/// Exit status: 0 computed, 1 negative verdict, 2 input error,
/// 3 unsupported regime, 4 internal consistency failure.
#[derive(Parser)]
#[command(name = "hodgekit", version)]
struct Cli {
    /// Aligned plain-text tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the result to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Treat INPUT as a directory and run on every *.json file in it.
    #[arg(long, global = true)]
    suite: bool,
    #[command(subcommand)]
    group: Group,
}

#[derive(Args)]
struct Input {
    /// Problem file (or directory with --suite).
    input: PathBuf,
    /// Name of the decreasing (Hodge) filtration.
    #[arg(long, default_value = "F")]
    hodge: String,
    /// Name of the increasing (weight) filtration.
    #[arg(long, default_value = "W")]
    weight: String,
    /// Name of the nilpotent operator.
    #[arg(long, default_value = "N")]
    log: String,
}

impl Input {
    fn names(&self) -> Names {
        Names { hodge: self.hodge.clone(), weight: self.weight.clone(), log: self.log.clone() }
    }
}

#[derive(Subcommand)]
enum Group {
    /// Mixed Hodge structures.
    #[command(subcommand)]
    Mhs(MhsCmd),
    /// Monodromy and relative weight filtrations.
    #[command(subcommand)]
    Filt(FiltCmd),
    /// sl2-triples and the Deligne grading.
    #[command(subcommand)]
    Sl2(Sl2Cmd),
    /// Intersection cohomology of local systems and extensions.
    #[command(subcommand)]
    Ih(IhCmd),
    /// Nilpotent orbits in local normal form.
    #[command(subcommand)]
    Orbit(OrbitCmd),
    /// Zero loci of normal functions.
    #[command(subcommand)]
    Zloc(ZlocCmd),
}

#[derive(Subcommand)]
enum MhsCmd {
    /// Check that (F, W) is a mixed Hodge structure.
    Check(Input),
    /// The Deligne bigrading.
    Bigrading(Input),
    /// The Deligne grading.
    Grading(Input),
    /// The delta-splitting and the split filtration.
    Delta(Input),
    /// The sl2-splitting of (F, M).
    Sl2split {
        #[command(flatten)]
        input: Input,
        /// Proceed when the (-1,-1) subalgebra is not abelian.
        #[arg(long)]
        allow_nonabelian: bool,
    },
}

#[derive(Subcommand)]
enum FiltCmd {
    /// The relative weight filtration M(N, W) or an obstruction.
    Rwf(Input),
    /// The monodromy weight filtration of N centered at params.center.
    Monodromy(Input),
}

#[derive(Subcommand)]
enum Sl2Cmd {
    /// The grading Y(N, Y_M) and its sl2-triple.
    DeligneY(Input),
    /// Complete (N, H) to an sl2-triple.
    Triple {
        #[command(flatten)]
        input: Input,
        /// Name of the neutral element.
        #[arg(long, default_value = "H")]
        neutral: String,
    },
}

#[derive(Subcommand)]
enum IhCmd {
    /// Dimensions and representatives of IH^p.
    Dims(Input),
    /// The singularity class of an extension.
    Sing(Input),
    /// The torsion group G and the class sigma.
    Torsion(Input),
    /// Verify the long exact sequence of an extension.
    Les(Input),
}

#[derive(Subcommand)]
enum OrbitCmd {
    /// Admissibility of the limit data.
    Check(Input),
    /// The filtration F(z, s).
    Eval(Input),
    /// Horizontality of the normal form.
    Horizontal(Input),
    /// Limit gradings along the first divisor.
    Limit {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with = "untwisted")]
        twisted: bool,
        #[arg(long)]
        untwisted: bool,
    },
    /// Sampled gradings against the predicted limit.
    Probe {
        #[command(flatten)]
        input: Input,
        /// Emit CSV rows instead of JSON.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Subcommand)]
enum ZlocCmd {
    /// Whether a point lies in the zero locus.
    Test(Input),
    /// Integrality of the limit grading.
    Limit(Input),
    /// The defining polynomial system near the boundary.
    Equation(Input),
    /// Whether the zero locus can accumulate on the boundary.
    Accumulation(Input),
}

fn resolve(group: Group) -> (Command, Input) {
    match group {
        Group::Mhs(c) => match c {
            MhsCmd::Check(i) => (Command::MhsCheck, i),
            MhsCmd::Bigrading(i) => (Command::MhsBigrading, i),
            MhsCmd::Grading(i) => (Command::MhsGrading, i),
            MhsCmd::Delta(i) => (Command::MhsDelta, i),
            MhsCmd::Sl2split { input, allow_nonabelian } => (Command::MhsSl2Split { allow_nonabelian }, input),
        },
        Group::Filt(c) => match c {
            FiltCmd::Rwf(i) => (Command::FiltRwf, i),
            FiltCmd::Monodromy(i) => (Command::FiltMonodromy, i),
        },
        Group::Sl2(c) => match c {
            Sl2Cmd::DeligneY(i) => (Command::Sl2DeligneY, i),
            Sl2Cmd::Triple { input, neutral } => (Command::Sl2Triple { neutral }, input),
        },
        Group::Ih(c) => match c {
            IhCmd::Dims(i) => (Command::IhDims, i),
            IhCmd::Sing(i) => (Command::IhSing, i),
            IhCmd::Torsion(i) => (Command::IhTorsion, i),
            IhCmd::Les(i) => (Command::IhLes, i),
        },
        Group::Orbit(c) => match c {
            OrbitCmd::Check(i) => (Command::OrbitCheck, i),
            OrbitCmd::Eval(i) => (Command::OrbitEval, i),
            OrbitCmd::Horizontal(i) => (Command::OrbitHorizontal, i),
            OrbitCmd::Limit { input, twisted, untwisted } => {
                let which = match (twisted, untwisted) {
                    (true, _) => Limit::Twisted,
                    (_, true) => Limit::Untwisted,
                    _ => Limit::Both,
                };
                (Command::OrbitLimit(which), input)
            }
            OrbitCmd::Probe { input, csv } => (Command::OrbitProbe { csv }, input),
        },
        Group::Zloc(c) => match c {
            ZlocCmd::Test(i) => (Command::ZlocTest, i),
            ZlocCmd::Limit(i) => (Command::ZlocLimit, i),
            ZlocCmd::Equation(i) => (Command::ZlocEquation, i),
            ZlocCmd::Accumulation(i) => (Command::ZlocAccumulation, i),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, input) = resolve(cli.group);
    let names = input.names();
    let outcome = if cli.suite { run_suite(&cmd, &names, &input.input) } else { run_file(&cmd, &names, &input.input) };
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("hodgekit: {msg}");
    }
    let text = format(&outcome.body, cli.pretty);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("hodgekit: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code)
}
