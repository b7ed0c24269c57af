use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde_json::json;

use primegraph::groups::{GroupDescriptor, DEFAULT_CAP};
use primegraph::liedata::{cyclic_subgroup_bound, cyclic_subgroup_count, out_structure};
use primegraph::theorems::{
    count_bound_pipeline, enumerate_simple_with_pi, parse_primes, run_corpus, Caps,
};
use primegraph::{gk, spectrum_bruteforce, Claim, GroupError, GroupSpec, TheoremError, Verdict};

const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Parser)]
#[command(
    version,
    about = "Element-order spectra and prime graphs of finite groups"
)]
struct Cli {
    /// Largest group order to enumerate; clamped to the compiled-in limit.
    #[arg(long, global = true, env = "PRIMEGRAPH_CAP", default_value_t = DEFAULT_GROUP_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the maximal element orders of a group as JSON.
    Spectrum { descriptor: String },
    /// Export the prime graph of a group.
    #[command(group(ArgGroup::new("format").args(["dot", "json"])))]
    Graph {
        descriptor: String,
        #[arg(long)]
        dot: bool,
        /// Default when no format is given.
        #[arg(long)]
        json: bool,
    },
    /// Run a verifier over a corpus file, one JSON report per line.
    Verify { claim: String, corpus: PathBuf },
    /// List isomorphism classes of simple groups whose primes lie in a set.
    Enumerate {
        primes: String,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Per-spec cyclic-subgroup counts of `Out S` against `6(n+1)d(l)`.
    Bound {
        primes: String,
        #[command(flatten)]
        caps: CapArgs,
        /// Print the whole report as one JSON object.
        #[arg(long)]
        json: bool,
    },
    /// Symbolic data about simple groups of Lie type.
    Liedata {
        #[command(subcommand)]
        command: LiedataCommand,
    },
}

#[derive(Subcommand)]
enum LiedataCommand {
    /// Order, primes and outer automorphism structure, e.g. `A2(4)`.
    Show { spec: String },
}

#[derive(clap::Args)]
struct CapArgs {
    #[arg(long, default_value_t = 64)]
    qcap: u64,
    #[arg(long, default_value_t = 4)]
    ncap: u32,
    #[arg(long, default_value_t = 16)]
    altcap: u32,
}

impl From<&CapArgs> for Caps {
    fn from(c: &CapArgs) -> Self {
        Caps {
            qcap: c.qcap,
            ncap: c.ncap,
            altcap: c.altcap,
        }
    }
}

/// Failure with its exit code: 1 refuted, 2 bad input, 3 cap exceeded.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let code = match e {
            GroupError::CapExceeded { .. } => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::Group(g) => g.into(),
            other => Failure::input(other),
        }
    }
}

fn build(descriptor: &str, cap: usize) -> Result<primegraph::ConcreteGroup, Failure> {
    let d: GroupDescriptor = descriptor.parse()?;
    Ok(d.build(cap)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cap = if cli.cap > DEFAULT_CAP {
        eprintln!("cap {} lowered to the limit {DEFAULT_CAP}", cli.cap);
        DEFAULT_CAP
    } else {
        cli.cap
    };
    match cli.command {
        Command::Spectrum { descriptor } => {
            let g = build(&descriptor, cap)?;
            let s = spectrum_bruteforce(&g);
            println!("{}", serde_json::to_string(&s).expect("plain data"));
        }
        Command::Graph {
            descriptor, dot, ..
        } => {
            let g = build(&descriptor, cap)?;
            let graph = gk(&spectrum_bruteforce(&g)).map_err(Failure::input)?;
            if dot {
                println!("{}", graph.to_dot());
            } else {
                println!("{}", graph.to_json());
            }
        }
        Command::Verify { claim, corpus } => {
            let claim: Claim = claim.parse()?;
            let text = fs::read_to_string(&corpus)
                .map_err(|e| Failure::input(format!("{}: {e}", corpus.display())))?;
            let reports = run_corpus(claim, &text, cap)?;
            let mut refuted = 0;
            for r in &reports {
                println!("{}", r.to_json_line());
                if r.verdict == Verdict::Refuted {
                    refuted += 1;
                }
            }
            if refuted > 0 {
                return Err(Failure {
                    code: 1,
                    message: format!("{refuted} of {} reports refuted {claim}", reports.len()),
                });
            }
        }
        Command::Enumerate { primes, caps } => {
            let primes = parse_primes(&primes)?;
            for class in enumerate_simple_with_pi(&primes, (&caps).into())? {
                println!("{}", serde_json::to_string(&class).expect("plain data"));
            }
        }
        Command::Bound { primes, caps, json } => {
            let primes = parse_primes(&primes)?;
            let report = count_bound_pipeline(&primes, (&caps).into())?;
            if json {
                println!("{}", serde_json::to_string(&report).expect("plain data"));
            } else {
                for s in &report.specs {
                    println!(
                        "{}\tclass={}\tcount={}\tbound={}",
                        s.spec, s.class, s.count, s.bound
                    );
                }
                println!(
                    "total\tclasses={}\tcount={}\tbound={}\tbound/x^5={:.6}",
                    report.classes,
                    report.total_count,
                    report.total_bound,
                    report.bound_ratio_to_x5
                );
            }
            if !report.holds {
                return Err(Failure {
                    code: 1,
                    message: "a cyclic-subgroup count exceeds its bound".into(),
                });
            }
        }
        Command::Liedata {
            command: LiedataCommand::Show { spec },
        } => {
            let spec: GroupSpec = spec.parse().map_err(Failure::input)?;
            let order = spec.order().map_err(Failure::input)?;
            let out = out_structure(&spec).map_err(Failure::input)?;
            let count = cyclic_subgroup_count(&out).map_err(Failure::input)?;
            let shown = json!({
                "spec": spec,
                "order": order.to_biguint().to_string(),
                "primes": order.primes().collect::<Vec<_>>(),
                "out": out,
                "cyclic_subgroups": count,
                "cyclic_subgroup_bound": cyclic_subgroup_bound(&spec),
            });
            println!("{shown}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
