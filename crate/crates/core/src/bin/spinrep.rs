use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spinrep::app::{run, Command, OperatorSpec, OutputFormat, QrepAction, RunConfig};
use spinrep::{ConstantConvention, CycleType, Permutation, SpinQuantum, Suite};

#[derive(Parser)]
#[command(
    name = "spinrep",
    version,
    about = "Exchange operators and verified spectra for spin systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an operator and print it as a matrix dump.
    Build(OperatorArgs),
    /// Diagonalize an operator and snap its spectrum to exact values.
    Spectrum(OperatorArgs),
    /// Clebsch–Gordan multiplicities of (spin S)^N with the dimension sum rule.
    Multiplets(Common),
    /// Run a claim suite and report PASS / FAIL / DISCREPANCY_WITH_PAPER per claim.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Q-representation reports: Lie closure, J operators, dual family.
    Qrep {
        action: QrepCmd,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        epsilon: i32,
        /// Coefficients on the two kernel directions, as `a,b`.
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        kernel: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum QrepCmd {
    Closure,
    Jops,
    Dual,
}

#[derive(Args)]
struct Common {
    /// Spin S, e.g. `1/2`, `1`, `3/2`.
    #[arg(long, default_value = "1")]
    spin: String,
    #[arg(long, default_value_t = 3)]
    sites: usize,
    /// Constant convention for the Heisenberg Hamiltonian.
    #[arg(long, default_value = "casimir_sum")]
    convention: String,
    /// Interaction graph as `1-2,2-3`, or `complete`.
    #[arg(long, default_value = "complete")]
    graph: String,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// `json` or `csv-table`.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Leave the timestamp out so identical runs give identical bytes.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args)]
struct OperatorArgs {
    /// heisenberg, schroedinger, exchange, class, swap, vrep, q_lift, j1 or j3.
    #[arg(long, visible_alias = "op", default_value = "schroedinger")]
    hamiltonian: String,
    /// Site pair for `exchange`, as `i,j`.
    #[arg(long, default_value = "1,2")]
    pair: String,
    /// Permutation in cycle notation for `swap`, `vrep` and `q_lift`.
    #[arg(long, default_value = "()")]
    perm: String,
    /// Cycle type for `class`, e.g. `2+1`.
    #[arg(long)]
    cycle_type: Option<String>,
    /// Representation for `class`: P or Q.
    #[arg(long, default_value = "P")]
    rep: String,
    #[command(flatten)]
    common: Common,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once([',', '-'])
        .ok_or_else(|| format!("expected `i,j`, got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((p(a)?, p(b)?))
}

fn parse_graph(s: &str) -> Result<Option<Vec<(usize, usize)>>, String> {
    if s == "complete" {
        return Ok(None);
    }
    s.split(',')
        .map(|e| {
            let (a, b) = e
                .split_once('-')
                .ok_or_else(|| format!("edge `{e}` should look like `1-2`"))?;
            let p = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|err| format!("`{x}`: {err}"))
            };
            Ok((p(a)?, p(b)?))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn parse_kernel(s: &str) -> Result<[f64; 2], String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}"));
    Ok([p(a)?, p(b)?])
}

fn operator(args: &OperatorArgs, spin: SpinQuantum, sites: usize) -> Result<OperatorSpec, String> {
    let perm_on = |n: usize| Permutation::parse_cycles(n, &args.perm).map_err(|e| e.to_string());
    Ok(match args.hamiltonian.as_str() {
        "heisenberg" => OperatorSpec::Heisenberg,
        "schroedinger" => OperatorSpec::Schroedinger,
        "exchange" => {
            let (i, j) = parse_pair(&args.pair)?;
            OperatorSpec::Exchange { i, j }
        }
        "class" => {
            let text = args
                .cycle_type
                .as_deref()
                .ok_or("`class` needs --cycle-type, e.g. 2+1")?;
            OperatorSpec::Class {
                cycle_type: text.parse::<CycleType>().map_err(|e| e.to_string())?,
                rep: args
                    .rep
                    .parse()
                    .map_err(|e: spinrep::Error| e.to_string())?,
            }
        }
        "swap" => OperatorSpec::Swap {
            perm: perm_on(sites)?,
        },
        "vrep" => OperatorSpec::Vrep {
            perm: perm_on(sites)?,
        },
        "q_lift" | "qlift" => OperatorSpec::QLift {
            perm: perm_on(spin.local_dim())?,
        },
        "j1" => OperatorSpec::J1,
        "j3" => OperatorSpec::J3,
        other => return Err(format!("unknown operator `{other}`")),
    })
}

fn config(command: Command, common: &Common, spin: SpinQuantum) -> Result<RunConfig, String> {
    let mut cfg = RunConfig::new(command, spin, common.sites);
    cfg.convention = common
        .convention
        .parse::<ConstantConvention>()
        .map_err(|e| e.to_string())?;
    cfg.graph = parse_graph(&common.graph)?;
    cfg.tol = common.tol;
    cfg.samples = common.samples;
    cfg.seed = common.seed;
    cfg.format = common
        .format
        .parse::<OutputFormat>()
        .map_err(|e| e.to_string())?;
    cfg.timestamp = !common.no_timestamp;
    Ok(cfg)
}

fn spin_of(common: &Common) -> Result<SpinQuantum, String> {
    common
        .spin
        .parse::<SpinQuantum>()
        .map_err(|e| e.to_string())
}

fn build_config(cli: &Cli) -> Result<(RunConfig, Option<PathBuf>), String> {
    let (cfg, common) = match &cli.command {
        Cmd::Build(args) | Cmd::Spectrum(args) => {
            let spin = spin_of(&args.common)?;
            let op = operator(args, spin, args.common.sites)?;
            let command = if matches!(cli.command, Cmd::Build(_)) {
                Command::Build { operator: op }
            } else {
                Command::Spectrum { operator: op }
            };
            (config(command, &args.common, spin)?, &args.common)
        }
        Cmd::Multiplets(common) => (
            config(Command::Multiplets, common, spin_of(common)?)?,
            common,
        ),
        Cmd::Verify { suite, common } => {
            let suite = suite.parse::<Suite>().map_err(|e| e.to_string())?;
            (
                config(Command::Verify { suite }, common, spin_of(common)?)?,
                common,
            )
        }
        Cmd::Qrep {
            action,
            epsilon,
            kernel,
            common,
        } => {
            let action = match action {
                QrepCmd::Closure => QrepAction::Closure,
                QrepCmd::Jops => QrepAction::Jops,
                QrepCmd::Dual => QrepAction::Dual,
            };
            let command = Command::Qrep {
                action,
                epsilon: *epsilon,
                kernel: parse_kernel(kernel)?,
            };
            (config(command, common, spin_of(common)?)?, common)
        }
    };
    Ok((cfg, common.output.clone()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cfg, output) = match build_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let out = match run(&cfg) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &out.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", out.text),
    }
    ExitCode::from(out.exit_code as u8)
}
