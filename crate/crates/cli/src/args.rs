use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gsteer_core::analysis::{Figure, OutputFormat};
use gsteer_core::Pair;

/// Gaussian steering across a Hawking-radiation channel.
#[derive(Debug, Parser)]
#[command(name = "gsteer", version, about)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Output format [default: csv].
    #[arg(long, global = true, value_name = "csv|json")]
    pub format: Option<OutputFormat>,

    /// Mode frequency used for the temperature column [default: 1.0].
    #[arg(long, global = true, value_name = "VAL")]
    pub omega: Option<f64>,

    /// Worker threads [default: all cores].
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Steering in both directions and the asymmetry over an (s, r) grid.
    Sweep(SweepArgs),
    /// Data behind one of the figures: fig1a, fig1b, fig2, fig3.
    Figure {
        #[arg(value_name = "NAME")]
        name: Figure,
    },
    /// Sudden-death and sudden-birth roots and asymmetry peaks at one s.
    Threshold {
        #[arg(long, value_name = "VAL", allow_hyphen_values = true)]
        s: f64,
    },
    /// Residuals of both readings of the critical relation over an s grid.
    Adjudicate {
        /// Comma-separated s values in (0, 3] [default: 0.1, 0.2, ..., 3.0].
        #[arg(long = "s", value_name = "LIST", value_delimiter = ',')]
        s_values: Vec<f64>,
    },
    /// Supremum of the asymmetry for both pairs over a square grid.
    BoundCheck {
        #[arg(long, default_value_t = 6.0)]
        s_max: f64,
        #[arg(long, default_value_t = 6.0)]
        r_max: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// JSON file with sweep settings; flags given here take precedence.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long, value_name = "ab|bbbar")]
    pub pair: Option<Pair>,

    /// Comma-separated squeezing values.
    #[arg(long = "s", value_name = "LIST", value_delimiter = ',')]
    pub s_values: Vec<f64>,

    #[arg(long)]
    pub r_min: Option<f64>,

    #[arg(long)]
    pub r_max: Option<f64>,

    #[arg(long)]
    pub r_steps: Option<usize>,
}
