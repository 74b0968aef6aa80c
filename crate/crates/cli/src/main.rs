use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pif_weno::harness::{self, output, Integrator, RunConfig};
use pif_weno::stability;
use pif_weno::weno::WenoMode;
use pif_weno::{Error, Execution};

#[derive(Parser)]
#[command(name = "pifweno", version, about = "Picard integral WENO experiment driver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one catalog problem to its final time.
    Run(RunArgs),
    /// Convergence table over a list of meshes.
    Converge(RunArgs),
    /// Amplification-factor sweep and stability boundary of the Taylor scheme.
    Stability(StabilityArgs),
    /// List the problem catalog.
    Catalog,
}

#[derive(Args)]
struct RunArgs {
    /// key = value file; flags given on the command line override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    integrator: Option<Integrator>,
    /// `mx` or `mx x my` for run; comma-separated x-sizes for converge.
    #[arg(long)]
    mesh: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    cfl: Option<f64>,
    #[arg(long = "t-final", allow_hyphen_values = true)]
    t_final: Option<f64>,
    #[arg(long = "weno-mode")]
    weno_mode: Option<WenoMode>,
    /// Output directory (run) or CSV file (converge).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Disable data-parallel loops.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct StabilityArgs {
    #[arg(long, default_value_t = 2048)]
    theta_samples: usize,
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    /// CFL numbers to sample, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 1.2])]
    nu: Vec<f64>,
    /// CSV file for the `nu,theta,abs_g` sweep.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    /// Config file first, then flags. `mesh` is left to the caller.
    fn config(&self) -> Result<RunConfig, Error> {
        let mut c = RunConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.clone(),
                source: e,
            })?;
            c.apply_text(&text)?;
        }
        if let Some(p) = &self.problem {
            c.problem = p.clone();
        }
        if let Some(i) = self.integrator {
            c.integrator = i;
        }
        if let Some(v) = self.cfl {
            c.cfl = v;
        }
        if let Some(t) = self.t_final {
            c.t_final = Some(t);
        }
        if let Some(m) = self.weno_mode {
            c.weno.mode = m;
        }
        if let Some(o) = &self.out {
            c.out = Some(o.clone());
        }
        if self.sequential {
            c.exec = Execution::Sequential;
        }
        Ok(c)
    }
}

fn run(args: &RunArgs) -> Result<(), Error> {
    let mut config = args.config()?;
    if let Some(m) = &args.mesh {
        config.mesh = harness::parse_mesh(m)?;
    }
    let result = harness::run(&config)?;
    print!("{}", output::metrics_text(&result));
    if let Some(dir) = &config.out {
        for path in harness::emit_outputs(&result, dir)? {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn converge(args: &RunArgs) -> Result<(), Error> {
    let config = args.config()?;
    let meshes: Vec<usize> = match &args.mesh {
        Some(m) => m
            .split(',')
            .map(|s| s.trim().parse().map_err(|_| Error::Config(format!("bad mesh list '{m}'"))))
            .collect::<Result<_, _>>()?,
        None if !config.mesh.is_empty() => config.mesh.clone(),
        None => vec![10, 20, 40, 80],
    };
    let rows = harness::converge(&RunConfig { mesh: Vec::new(), ..config.clone() }, &meshes)?;
    print!("{}", output::convergence_csv(&rows));
    if let Some(path) = &config.out {
        harness::write_convergence_csv(path, &rows)?;
    }
    Ok(())
}

fn stability_cmd(args: &StabilityArgs) -> Result<(), Error> {
    let boundary = stability::max_stable_cfl(args.theta_samples, args.tolerance)?;
    println!("max_stable_cfl={boundary:.6}");
    for &nu in &args.nu {
        println!("nu={nu} stable={}", stability::is_stable(nu, args.theta_samples));
    }
    if let Some(path) = &args.out {
        let samples = stability::sweep(&args.nu, args.theta_samples);
        stability::write_sweep_csv(Path::new(path), &samples)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn catalog() {
    println!("id,dims,t_final,desk_mesh,oracle");
    for p in harness::catalog() {
        let oracle = match p.oracle {
            harness::OracleKind::BurgersExact => "burgers-exact",
            harness::OracleKind::Riemann { .. } => "exact-riemann",
            harness::OracleKind::Euler2DSmooth => "exact-wave",
            harness::OracleKind::Reference => "reference-run",
            harness::OracleKind::None => "none",
        };
        let mesh = if p.dims == 1 {
            p.desk_mesh[0].to_string()
        } else {
            format!("{}x{}", p.desk_mesh[0], p.desk_mesh[1])
        };
        println!("{},{},{},{mesh},{oracle}", p.id, p.dims, p.t_final);
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error:usage:{first}");
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.command {
        Command::Run(a) => run(a),
        Command::Converge(a) => converge(a),
        Command::Stability(a) => stability_cmd(a),
        Command::Catalog => {
            catalog();
            Ok(())
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error:{}:{e}", e.category());
            ExitCode::FAILURE
        }
    }
}
