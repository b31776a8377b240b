//! `simctl`: similarity-control checks and supervisor synthesis.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{CapFlags, Format, RunConfig};

/// Exit status for a check that ran and found the property false, or for
/// a failed precondition.
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "simctl", version, about = "Similarity control of nondeterministic discrete-event systems")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalArgs {
    /// Config file of `key = value` lines.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Cap on reachable supervisor states [env: SIMCTL_MAX_STATES].
    #[arg(long, global = true)]
    max_states: Option<usize>,
    /// Cap on covers per (W, σ) [env: SIMCTL_MAX_COVERS].
    #[arg(long, global = true)]
    max_covers: Option<usize>,
    /// Cap on initial choice functions [env: SIMCTL_MAX_CHOICES].
    #[arg(long, global = true)]
    max_choices: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Label width in DOT output; 0 keeps full labels.
    #[arg(long, global = true)]
    dot_width: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    /// Σ_uc-simulation.
    Uc,
    /// Ordinary simulation.
    Full,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    Takai,
    Variant1,
    Variant2,
}

#[derive(Subcommand)]
enum Command {
    /// Decide G ⊑_uc R (or G ⊑ R) and print the greatest relation.
    Check {
        plant: PathBuf,
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "uc")]
        mode: ModeArg,
    },
    /// Build a supervisor for (G, R).
    Synthesize {
        plant: PathBuf,
        spec: PathBuf,
        #[arg(long, value_enum, conflicts_with = "partial")]
        variant: Option<VariantArg>,
        /// Remove states that deadlock in the closed loop.
        #[arg(long)]
        prune_deadlocks: bool,
        /// Use the partial-observation construction over triples.
        #[arg(long)]
        partial: bool,
        /// Supervisor file; the JSON sidecar goes next to it.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Sidecar path (default: OUTPUT with `.json` appended).
        #[arg(long)]
        sidecar: Option<PathBuf>,
        /// Also write a DOT rendering.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Check a supervisor: admissibility, SP membership, (G,R)-automaton
    /// clauses and permissiveness against a freshly built one.
    Verify {
        supervisor: PathBuf,
        plant: PathBuf,
        spec: PathBuf,
    },
    /// Synchronous composition S||G.
    Compose {
        left: PathBuf,
        right: PathBuf,
        /// Keep every state pair, not only the reachable ones.
        #[arg(long)]
        full: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a seeded random plant/spec pair.
    Random {
        #[arg(long)]
        seed: Option<u64>,
        /// Directory receiving `plant.aut` and `spec.aut`.
        #[arg(short, long, value_name = "DIR")]
        out_dir: PathBuf,
        #[arg(long)]
        plant_states: Option<usize>,
        #[arg(long)]
        spec_states: Option<usize>,
        #[arg(long)]
        uc_events: Option<usize>,
        #[arg(long)]
        c_events: Option<usize>,
        #[arg(long)]
        unobservable_events: Option<usize>,
        #[arg(long)]
        plant_density: Option<f64>,
        #[arg(long)]
        spec_density: Option<f64>,
        #[arg(long)]
        plant_initial: Option<usize>,
        #[arg(long)]
        spec_initial: Option<usize>,
        /// Redraw until G ⊑_uc R holds.
        #[arg(long)]
        uc_simulated: bool,
        #[arg(long, default_value_t = 1000)]
        max_attempts: usize,
    },
    /// Render an automaton file as Graphviz DOT.
    ExportDot {
        automaton: PathBuf,
        #[arg(long)]
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<simctl_core::Error>() {
            return match e {
                simctl_core::Error::Guard { .. } => EXIT_GUARD,
                e if e.is_input_error() => EXIT_INPUT,
                _ => EXIT_FAILS,
            };
        }
    }
    EXIT_INPUT
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let g = cli.global;
    let caps = CapFlags {
        max_states: g.max_states,
        max_covers: g.max_covers,
        max_choices: g.max_choices,
    };
    let seed = match &cli.command {
        Command::Random { seed, .. } => *seed,
        _ => None,
    };
    let cfg = RunConfig::resolve(g.config.as_deref(), caps, seed, g.format, g.dot_width)?;
    match cli.command {
        Command::Check { plant, spec, mode } => commands::check(&cfg, &plant, &spec, mode),
        Command::Synthesize {
            plant,
            spec,
            variant,
            prune_deadlocks,
            partial,
            output,
            sidecar,
            dot,
        } => commands::synthesize(
            &cfg,
            &commands::SynthesizeArgs {
                plant,
                spec,
                variant: if partial { None } else { Some(variant.unwrap_or(VariantArg::Takai)) },
                prune: prune_deadlocks,
                output,
                sidecar,
                dot,
            },
        ),
        Command::Verify {
            supervisor,
            plant,
            spec,
        } => commands::verify(&cfg, &supervisor, &plant, &spec),
        Command::Compose {
            left,
            right,
            full,
            output,
        } => commands::compose(&cfg, &left, &right, full, output.as_deref()),
        Command::Random {
            out_dir,
            plant_states,
            spec_states,
            uc_events,
            c_events,
            unobservable_events,
            plant_density,
            spec_density,
            plant_initial,
            spec_initial,
            uc_simulated,
            max_attempts,
            ..
        } => {
            let mut params = cfg.random.clone();
            macro_rules! set {
                ($($field:ident),*) => {
                    $(if let Some(v) = $field { params.$field = v; })*
                };
            }
            set!(
                plant_states,
                spec_states,
                uc_events,
                c_events,
                unobservable_events,
                plant_density,
                spec_density,
                plant_initial,
                spec_initial
            );
            commands::random(&cfg, &params, &out_dir, uc_simulated.then_some(max_attempts))
        }
        Command::ExportDot {
            automaton,
            name,
            output,
        } => commands::export_dot(&cfg, &automaton, name, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
