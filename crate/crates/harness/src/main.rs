use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clifford_qecc::circuit::run_trajectory;
use clifford_qecc::cwt::FreeEnergyModel;
use clifford_qecc::qecc::contiguous_distance;
use clifford_qecc::{Boundary, CircuitConfig};
use clifford_qecc_harness::experiments::by_size;
use clifford_qecc_harness::{
    fit_log_linear, fit_power_law, read_records, run_ensemble, write_records, ExperimentSpec, Format,
    HarnessError, Observable, Result,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cqecc", version, about = "Hybrid Clifford circuit code experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json (JSON lines for records).
    #[arg(long, default_value = "csv")]
    format: String,
}

impl Output {
    fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout().lock()),
        })
    }

    fn format(&self) -> Result<Format> {
        self.format.parse()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment spec and emit its records.
    Run {
        spec: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Tabulate capillary-wave curves `S(Ā)` and `I(A:R)` in nats.
    Cwt {
        #[arg(long, default_value_t = 0.1)]
        beta_sigma: f64,
        #[arg(long = "L", default_value_t = 1024.0)]
        l: f64,
        /// Depth; defaults to 8L.
        #[arg(long = "T")]
        t: Option<f64>,
        #[arg(long, default_value = "periodic")]
        bc: String,
        /// Generalized variant parameters `chi,gamma,zeta`.
        #[arg(long, value_delimiter = ',', num_args = 3)]
        gcw: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Run one trajectory and scan its contiguous code distance.
    Distance {
        /// Circuit config file (key=value lines).
        config: PathBuf,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Threshold in bits.
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Fit a scaling law to `x,y` points or to per-size means of records.
    Fit {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Model::Power)]
        model: Model,
        /// Observable to fit when the input holds records.
        #[arg(long)]
        observable: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical point from mean-k curves in a record file.
    Pc {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Power,
    Log,
}

fn read_text(path: &PathBuf) -> Result<String> {
    let mut s = String::new();
    File::open(path)?.read_to_string(&mut s)?;
    Ok(s)
}

fn emit_json(value: &serde_json::Value, out: &Option<PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn input_format(path: &PathBuf) -> Format {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json" | "jsonl") => Format::JsonLines,
        _ => Format::Csv,
    }
}

fn xy_points(text: &str) -> Result<Option<Vec<(f64, f64)>>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    if rdr.headers()?.iter().collect::<Vec<_>>() != ["x", "y"] {
        return Ok(None);
    }
    let pts = rdr
        .deserialize::<(f64, f64)>()
        .map(|r| r.map_err(Into::into))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(pts))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run {
            spec,
            seed,
            workers,
            output,
        } => {
            let spec = ExperimentSpec::parse(&read_text(&spec)?)?;
            let format = output.format()?;
            let records = run_ensemble(&spec, seed, workers)?;
            write_records(&records, format, output.writer()?)?;
        }
        Command::Cwt {
            beta_sigma,
            l,
            t,
            bc,
            gcw,
            step,
            output,
        } => {
            let bc: Boundary = bc.parse()?;
            let t = t.unwrap_or(8.0 * l);
            let model = match gcw.as_deref() {
                Some([chi, gamma, zeta]) => FreeEnergyModel::generalized(beta_sigma, *chi, *gamma, *zeta, l, t, bc),
                _ => FreeEnergyModel::capillary(beta_sigma, l, t, bc),
            };
            model.validate()?;
            let a_star = model.a_star()?;
            eprintln!(
                "a_star bisection={:.6} closed_form={:.6}",
                a_star.bisection, a_star.closed_form
            );
            let mut w = output.writer()?;
            let half = (l / 2.0).floor() as usize;
            if output.format()? == Format::JsonLines {
                for a in (1..=half).step_by(step.max(1)) {
                    let a = a as f64;
                    let row = json!({
                        "a": a,
                        "entropy_complement": model.entropy_complement(a)?,
                        "mutual_info_ar": model.mutual_info_ar(a)?,
                    });
                    writeln!(w, "{row}")?;
                }
            } else {
                writeln!(w, "a,entropy_complement,mutual_info_ar")?;
                for a in (1..=half).step_by(step.max(1)) {
                    let a = a as f64;
                    writeln!(w, "{a},{},{}", model.entropy_complement(a)?, model.mutual_info_ar(a)?)?;
                }
            }
        }
        Command::Distance {
            config,
            seed,
            epsilon,
            output,
        } => {
            let mut cfg = CircuitConfig::parse(&read_text(&config)?)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let state = run_trajectory(&cfg, |_, _| {})?;
            let d = contiguous_distance(&state, cfg.bc, epsilon)?;
            eprintln!("k={} d_cont={}", state.num_logical(), d.d_cont);
            let mut w = output.writer()?;
            if output.format()? == Format::JsonLines {
                let scan: Vec<_> = d
                    .scan
                    .iter()
                    .map(|r| json!({"length": r.length, "min_mi": r.min_mi, "mean_mi": r.mean_mi}))
                    .collect();
                let doc = json!({"k": state.num_logical(), "d_cont": d.d_cont, "epsilon": epsilon, "scan": scan});
                writeln!(w, "{doc}")?;
            } else {
                w.write_all(d.to_csv().as_bytes())?;
            }
        }
        Command::Fit {
            input,
            model,
            observable,
            out,
        } => {
            let text = read_text(&input)?;
            let points = match xy_points(&text)? {
                Some(p) => p,
                None => {
                    let obs: Observable = observable
                        .ok_or_else(|| HarnessError::Spec("--observable is required for record input".into()))?
                        .parse()?;
                    let recs = read_records(text.as_bytes(), input_format(&input))?;
                    by_size(&recs, obs)?.into_iter().map(|(l, m)| (l as f64, m.mean)).collect()
                }
            };
            let fit = match model {
                Model::Power => fit_power_law(&points)?,
                Model::Log => fit_log_linear(&points)?,
            };
            emit_json(&serde_json::to_value(fit)?, &out)?;
        }
        Command::Pc { input, out } => {
            let recs = read_records(File::open(&input)?, input_format(&input))?;
            let est = clifford_qecc_harness::experiments::critical_point(&recs)?;
            emit_json(&serde_json::to_value(est)?, &out)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
