use std::path::PathBuf;
use std::process::ExitCode;

use aquanim_cli::service::{serve, ServiceState};
use aquanim_cli::{cmd_render, cmd_verify, palette_from_env, OutputFormat, DEFAULT_SAMPLES, DEFAULT_TOLERANCE};
use clap::{Parser, Subcommand};

/// Area-preserving animated transitions for area-based charts.
#[derive(Parser)]
#[command(name = "aquanim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render a transition spec to SVG frames, an animated SVG or keyframes.
    Render {
        #[arg(long)]
        spec: PathBuf,
        /// Output directory for `frames`, output file otherwise.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "frames")]
        format: OutputFormat,
    },
    /// Check conservation, occlusion, endpoints and continuity of a spec.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Serve keyframes over HTTP.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        bind: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let palette = match palette_from_env() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let code = match cli.command {
        Command::Render { spec, out, format } => cmd_render(&spec, &out, format, &palette, &mut std::io::stderr()),
        Command::Verify {
            spec,
            samples,
            tolerance,
        } => cmd_verify(
            &spec,
            samples,
            tolerance,
            &palette,
            &mut std::io::stdout(),
            &mut std::io::stderr(),
        ),
        Command::Serve { bind, port } => {
            let state = ServiceState {
                palette,
                data_root: std::env::current_dir().unwrap_or_default(),
            };
            match serve(&bind, port, state) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
    };
    ExitCode::from(code as u8)
}
