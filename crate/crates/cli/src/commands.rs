use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use gsteer_core::analysis::output::{write_json, write_records_csv};
use gsteer_core::analysis::{
    adjudicate_critical_formula, default_adjudication_grid, figure, find_death_birth, sweep,
    verify_ln2_bound, BoundGrid, FigureData, OutputFormat, SweepConfig, Verdict,
};
use gsteer_core::Error;
use serde_json::{json, Map, Value};

use crate::args::{Cli, Command, GlobalOpts, SweepArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: Cli) -> Result<()> {
    let global = cli.global;
    configure_threads(global.jobs)?;
    if let Some(omega) = global.omega {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(CliError::Usage(format!(
                "--omega must be positive, got {omega}"
            )));
        }
    }
    let omega = global.omega.unwrap_or(1.0);
    let format = global.format.unwrap_or_default();

    match cli.command {
        Command::Sweep(args) => run_sweep(&global, args),
        Command::Figure { name } => {
            let data = figure(name, omega)?;
            emit(global.out.as_deref(), |out| data.write(out, format))
        }
        Command::Threshold { s } => {
            let result = find_death_birth(s)?;
            emit(global.out.as_deref(), |out| match format {
                OutputFormat::Csv => write_records_csv(out, &[result]),
                OutputFormat::Json => write_json(out, &result),
            })
        }
        Command::Adjudicate { s_values } => {
            let grid = if s_values.is_empty() {
                default_adjudication_grid()
            } else {
                s_values
            };
            let report = adjudicate_critical_formula(&grid)?;
            emit(global.out.as_deref(), |out| match format {
                OutputFormat::Csv => write_records_csv(out, &report.rows),
                OutputFormat::Json => write_json(out, &report),
            })?;
            let verdict = match report.verdict {
                Verdict::AsPrinted => "s = arccosh(cosh²r/(1-sinh²r))",
                Verdict::Doubled => "2s = arccosh(cosh²r/(1-sinh²r))",
                Verdict::Both => "both readings",
                Verdict::Neither => "neither reading",
            };
            eprintln!(
                "verdict: {verdict} (max residual as printed {:e}, doubled {:e})",
                report.max_residual_as_printed, report.max_residual_doubled
            );
            Ok(())
        }
        Command::BoundCheck { s_max, r_max, step } => {
            let report = verify_ln2_bound(BoundGrid { s_max, r_max, step })?;
            emit(global.out.as_deref(), |out| match format {
                OutputFormat::Csv => write_records_csv(out, &report.pairs),
                OutputFormat::Json => write_json(out, &report),
            })?;
            if report.holds {
                Ok(())
            } else {
                Err(Error::Domain("asymmetry supremum reaches ln 2".into()).into())
            }
        }
    }
}

fn configure_threads(jobs: Option<usize>) -> Result<()> {
    let Some(jobs) = jobs else {
        return Ok(());
    };
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} worker threads: {e}")))
}

fn run_sweep(global: &GlobalOpts, args: SweepArgs) -> Result<()> {
    let config = sweep_config(global, &args)?;
    let table = sweep(&config)?;
    let data = FigureData::Sweep(table);
    emit(config.output_path.as_deref(), |out| {
        data.write(out, config.format)
    })
}

/// Defaults, then the config file, then flags.
fn sweep_config(global: &GlobalOpts, args: &SweepArgs) -> Result<SweepConfig> {
    let mut merged = json!({
        "pair": "ab",
        "s_values": [1.0],
        "r_range": {"min": 0.0, "max": 2.0, "steps": 400},
    });
    let fields = merged.as_object_mut().expect("object literal");
    if let Some(path) = &args.config {
        for (key, value) in read_config(path)? {
            fields.insert(key, value);
        }
    }
    if let Some(pair) = args.pair {
        fields.insert("pair".into(), serde_json::to_value(pair).expect("enum"));
    }
    if !args.s_values.is_empty() {
        fields.insert("s_values".into(), json!(args.s_values));
    }
    if let Some(range) = fields.get_mut("r_range").and_then(Value::as_object_mut) {
        for (key, value) in [
            ("min", args.r_min.map(Value::from)),
            ("max", args.r_max.map(Value::from)),
            ("steps", args.r_steps.map(Value::from)),
        ] {
            if let Some(value) = value {
                range.insert(key.into(), value);
            }
        }
    }
    if let Some(omega) = global.omega {
        fields.insert("omega".into(), json!(omega));
    }
    if let Some(format) = global.format {
        fields.insert("format".into(), serde_json::to_value(format).expect("enum"));
    }
    if let Some(out) = &global.out {
        fields.insert("output_path".into(), json!(out));
    }
    let config: SweepConfig = serde_json::from_value(merged)
        .map_err(|e| CliError::Usage(format!("invalid sweep configuration: {e}")))?;
    config.validate()?;
    Ok(config)
}

fn read_config(path: &Path) -> Result<Map<String, Value>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("cannot read config {}: {e}", path.display())))?;
    match serde_json::from_str(&text) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(CliError::Usage(format!(
            "config {} must hold a JSON object",
            path.display()
        ))),
        Err(e) => Err(CliError::Usage(format!(
            "config {} is not valid JSON: {e}",
            path.display()
        ))),
    }
}

/// Runs `write` against the output file, or stdout when none is given.
fn emit<F>(path: Option<&Path>, write: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> gsteer_core::Result<()>,
{
    match path {
        Some(path) => {
            let file = File::create(path).map_err(|e| io_error(path, e))?;
            let mut out = BufWriter::new(file);
            write(&mut out)?;
            out.flush().map_err(|e| io_error(path, e))?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            write(&mut out)?;
            out.flush().map_err(Error::from)?;
        }
    }
    Ok(())
}

fn io_error(path: &Path, e: io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}
