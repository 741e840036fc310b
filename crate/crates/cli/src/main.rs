use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use slowdrift_core::experiments::{run_and_emit, ExperimentConfig, ExperimentKind, Mode};
use slowdrift_core::potential::potential_path;
use slowdrift_core::stable_sampler::{sample_path, Resolution, StreamKey};

#[derive(Parser)]
#[command(name = "slowdrift", version, about = "Monte Carlo checks for a diffusion in a drifted stable potential")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Law of the largest jump and sampler consistency.
    Jumplaw(RunArgs),
    /// Rescaled ascending barrier of the potential.
    Lemma2(RunArgs),
    /// Limit law of the hitting time.
    Theorem(RunArgs),
    /// Fluctuation bounds of the potential.
    Fluctuation(RunArgs),
    /// Every experiment in turn.
    All(RunArgs),
    /// Write one potential path as CSV.
    DumpPath(DumpArgs),
}

#[derive(Args)]
struct RunArgs {
    /// TOML configuration; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (overrides the environment).
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the raw samples.
    #[arg(long)]
    emit_samples: bool,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10.0)]
    horizon: f64,
    /// Resolve jumps above this size; grid increments when omitted.
    #[arg(long)]
    cutoff: Option<f64>,
    /// Directory receiving `values.csv` and `jumps.csv`.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn load(path: Option<&PathBuf>) -> Result<ExperimentConfig> {
    Ok(match path {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    })
}

fn run(kinds: &[ExperimentKind], args: RunArgs) -> Result<bool> {
    let mut cfg = load(args.config.as_ref())?;
    cfg.apply_env()?;
    if let Some(w) = args.workers {
        cfg.workers = w;
    }
    match args.seed {
        Some(s) => cfg.seed = s,
        None if cfg.mode == Mode::Statistical => {
            cfg.seed = SystemTime::now().duration_since(UNIX_EPOCH)?.as_nanos() as u64;
            eprintln!("statistical mode: seed {}", cfg.seed);
        }
        None => {}
    }
    if let Some(out) = args.out {
        cfg.out_dir = out;
    }
    cfg.emit_samples |= args.emit_samples;
    cfg.validate()?;
    let out_dir = cfg.out_dir.clone();
    let reports = run_and_emit(kinds, &cfg, &out_dir)?;
    let mut ok = true;
    for report in &reports {
        print!("{}", report.render());
        ok &= report.passed();
    }
    println!("{} -> {}", if ok { "PASS" } else { "FAIL" }, out_dir.display());
    Ok(ok)
}

fn dump(args: DumpArgs) -> Result<()> {
    let cfg = load(args.config.as_ref())?;
    let params = cfg.params()?;
    let resolution = match args.cutoff {
        Some(cutoff) => Resolution::Jumps { cutoff },
        None => Resolution::Grid,
    };
    let mut rng = StreamKey::new(0, 0, 0, 0, 0).stream(args.seed).rng();
    let path = potential_path(&sample_path(&params, args.horizon, cfg.step, resolution, &mut rng)?, params.delta)?;
    std::fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let open = |name: &str| -> Result<BufWriter<File>> {
        let p = args.out.join(name);
        Ok(BufWriter::new(File::create(&p).with_context(|| format!("creating {}", p.display()))?))
    };
    let (mut values, mut jumps) = (open("values.csv")?, open("jumps.csv")?);
    path.write_columns(&mut values, &mut jumps)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Jumplaw(a) => run(&[ExperimentKind::JumpLaw], a),
        Command::Lemma2(a) => run(&[ExperimentKind::Lemma2], a),
        Command::Theorem(a) => run(&[ExperimentKind::Theorem], a),
        Command::Fluctuation(a) => run(&[ExperimentKind::Fluctuation], a),
        Command::All(a) => run(&ExperimentKind::ALL, a),
        Command::DumpPath(a) => dump(a).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
