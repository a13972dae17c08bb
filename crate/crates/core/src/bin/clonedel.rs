//! Command-line front end: figure datasets, per-state measures, the
//! printed-formula compatibility report and the acceptance suite.
//!
//! Exit codes: 0 success, 1 acceptance/runtime failure, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use clonedel::correlations::{
    average_discord, correlation_report, geometric_discord_oracle, OptimizerConfig,
};
use clonedel::machines::{
    bh_clone, clone_delete_nm, clone_then_delete, delete_2to1, delete_then_clone, gm_clone,
    mode_fidelity, MachineParams,
};
use clonedel::qmat::{DensityMatrix, QubitState};
use clonedel::sweep::{acceptance, compat_report, figure_data, validate_csv_file, SweepConfig};
use clonedel::Error;

#[derive(Parser)]
#[command(
    name = "clonedel",
    version,
    about = "Cloning/deleting machine sweeps and quantum-correlation measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate one figure dataset (fig1..fig9) as CSV
    Figure {
        /// Figure id: fig1..fig9
        id: String,
        #[command(flatten)]
        opts: SweepOpts,
    },
    /// Correlation measures of one machine output state
    ///
    /// State specs: clone:xi=0.25,alpha=0.6 · delete:alpha=0.7 ·
    /// cd:xi=0.2,alpha=0.5 · dc:xi=0.2,alpha=0.5 · gm:n=3,alpha=0.5[,m=1]
    Measures {
        spec: String,
        #[command(flatten)]
        opts: SweepOpts,
    },
    /// Audit every printed closed form against the numeric pipeline
    Compat {
        #[command(flatten)]
        opts: SweepOpts,
    },
    /// Run the acceptance suite (exit 1 on any criterion failure)
    Accept {
        #[command(flatten)]
        opts: SweepOpts,
    },
}

#[derive(Args)]
struct SweepOpts {
    /// Points on the α axis
    #[arg(long, default_value_t = 101)]
    alpha_steps: usize,
    /// Points on the machine-parameter axis
    #[arg(long, default_value_t = 101)]
    param_steps: usize,
    /// Seed for the deterministic optimizer start jitter
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory for datasets and reports
    #[arg(long, default_value = "datasets")]
    out: PathBuf,
    /// Multistart count for the discord optimizer
    #[arg(long, default_value_t = 5)]
    starts: usize,
    /// Convergence tolerance of the discord optimizer, in bits
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

impl SweepOpts {
    fn to_config(&self) -> SweepConfig {
        SweepConfig {
            alpha_steps: self.alpha_steps,
            param_steps: self.param_steps,
            optimizer: OptimizerConfig {
                starts: self.starts,
                tol_bits: self.tol,
                ..OptimizerConfig::default()
            },
            seed: self.seed,
            out_dir: self.out.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Error::Parse(msg)) | Err(Error::Config(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> clonedel::Result<ExitCode> {
    match cli.command {
        Command::Figure { id, opts } => {
            let cfg = opts.to_config();
            let figure = id.parse()?;
            let dataset = figure_data(figure, &cfg)?;
            let path = dataset.write(&cfg.out_dir)?;
            validate_csv_file(&path)?;
            println!("wrote {} ({} rows)", path.display(), dataset.rows.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Measures { spec, opts } => {
            let cfg = opts.to_config();
            print_measures(&spec, &cfg)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compat { opts } => {
            let cfg = opts.to_config();
            let report = compat_report(&cfg)?;
            print!("{}", report.to_text());
            let path = report.write(&cfg.out_dir)?;
            println!("wrote {}", path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Accept { opts } => {
            let cfg = opts.to_config();
            let results = acceptance::run_all(&cfg)?;
            let mut all_ok = true;
            for r in &results {
                println!("{}", r.status_line());
                for line in &r.details {
                    println!("      {line}");
                }
                all_ok &= r.passed;
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if all_ok {
                println!("acceptance: all {} criteria passed", results.len());
                Ok(ExitCode::SUCCESS)
            } else {
                println!("acceptance: {failed} of {} criteria failed", results.len());
                Ok(ExitCode::from(1))
            }
        }
    }
}

/// Parses `key=value` pairs from a comma-separated list.
fn parse_kv(body: &str) -> clonedel::Result<Vec<(String, f64)>> {
    body.split(',')
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got '{pair}'")))?;
            let value: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("numeric value in '{pair}'")))?;
            Ok((k.trim().to_ascii_lowercase(), value))
        })
        .collect()
}

fn lookup(kv: &[(String, f64)], key: &str) -> Option<f64> {
    kv.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
}

fn require(kv: &[(String, f64)], key: &str, spec: &str) -> clonedel::Result<f64> {
    lookup(kv, key).ok_or_else(|| Error::Parse(format!("'{spec}' needs {key}=...")))
}

fn print_measures(spec: &str, cfg: &SweepConfig) -> clonedel::Result<()> {
    let (head, body) = spec.split_once(':').unwrap_or((spec, ""));
    let kv = parse_kv(body)?;
    let opt = cfg.optimizer();
    println!("# state: {spec}");
    println!(
        "# seed: {}  config: {}",
        cfg.seed,
        cfg.config_hash("measures")
    );
    match head.to_ascii_lowercase().as_str() {
        "clone" => {
            let psi = QubitState::from_alpha(require(&kv, "alpha", spec)?)?;
            let params = MachineParams::new(require(&kv, "xi", spec)?)?;
            let (rho, f) = bh_clone(&psi, params);
            println!("fidelity: {f:.12}");
            print_two_qubit(&rho, &opt)?;
        }
        "delete" => {
            let psi = QubitState::from_alpha(require(&kv, "alpha", spec)?)?;
            let (rho, f) = delete_2to1(&psi);
            println!("fidelity: {f:.12}");
            print_two_qubit(&rho, &opt)?;
        }
        "cd" => {
            let psi = QubitState::from_alpha(require(&kv, "alpha", spec)?)?;
            let params = MachineParams::new(require(&kv, "xi", spec)?)?;
            let (rho, f3) = clone_then_delete(&psi, params);
            println!("fidelity: {f3:.12}");
            print_two_qubit(&rho, &opt)?;
        }
        "dc" => {
            let psi = QubitState::from_alpha(require(&kv, "alpha", spec)?)?;
            let params = MachineParams::new(require(&kv, "xi", spec)?)?;
            let (aa, bb) = delete_then_clone(&psi, params);
            println!("branch aa'");
            print_two_qubit(&aa, &opt)?;
            println!("branch bb'");
            print_two_qubit(&bb, &opt)?;
        }
        "gm" => {
            let psi = QubitState::from_alpha(require(&kv, "alpha", spec)?)?;
            let n = require(&kv, "n", spec)? as usize;
            match lookup(&kv, "m") {
                Some(m) => {
                    let out = clone_delete_nm(&psi, n, m as usize)?;
                    print_multiqubit(&out.rho, &opt)?;
                }
                None => {
                    let out = gm_clone(&psi, n)?;
                    let f = mode_fidelity(&out.clones.partial_trace(&[0])?, &psi);
                    println!("single-clone fidelity: {f:.12}");
                    print_multiqubit(&out.clones, &opt)?;
                }
            }
        }
        other => {
            return Err(Error::Parse(format!(
                "state spec '{other}' (expected clone | delete | cd | dc | gm)"
            )));
        }
    }
    Ok(())
}

fn print_two_qubit(rho: &DensityMatrix, opt: &OptimizerConfig) -> clonedel::Result<()> {
    let r = correlation_report(rho, opt)?;
    let oracle = geometric_discord_oracle(rho, opt)?;
    println!("negativity:         {:.12}", r.negativity);
    println!("log-negativity:     {:.12}", r.log_negativity);
    println!(
        "discord:            {:.12}  ({} evaluations)",
        r.discord, r.optimizer_evaluations
    );
    println!("geometric discord:  {:.12}", r.geometric_discord);
    println!("dg oracle:          {:.12}", oracle);
    Ok(())
}

fn print_multiqubit(rho: &DensityMatrix, opt: &OptimizerConfig) -> clonedel::Result<()> {
    let diag = rho.diagnostics();
    println!(
        "density checks: hermiticity defect {:.2e}, trace defect {:.2e}, min eigenvalue {:.2e}",
        diag.hermiticity_defect, diag.trace_defect, diag.min_eigenvalue
    );
    let avg = average_discord(rho, opt)?;
    for (i, d) in avg.per_mode.iter().enumerate() {
        println!("discord D({}|rest): {:.12}", i + 1, d.discord);
    }
    println!("average discord:    {:.12}", avg.value);
    Ok(())
}
