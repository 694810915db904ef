use std::fs;
use std::io::Write;
use std::path::Path;

use aquanim::render::{emit_animated_svg, emit_keyframes_doc, emit_svg, sample_frames};
use aquanim::transitions::{verify_script, VerifyReport, Violation};
use aquanim::Palette;
use clap::ValueEnum;

use crate::error::{CliError, EXIT_VIOLATION};
use crate::spec::{compile, parse_spec, Compiled, DatasetRoot};

pub const DEFAULT_SAMPLES: usize = 101;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Numbered SVG files in a directory.
    Frames,
    /// One SVG stepping through all frames.
    AnimatedSvg,
    /// Keyframe JSON document.
    Keyframes,
}

/// Reads, parses and plans a spec file; relative dataset paths are taken
/// from the spec's directory.
pub fn compile_file(spec_path: &Path, palette: &Palette) -> Result<Compiled, CliError> {
    let bytes = fs::read(spec_path).map_err(|e| CliError::Unreadable(format!("{}: {e}", spec_path.display())))?;
    let doc = parse_spec(&bytes)?;
    let dir = spec_path.parent().map(Path::to_path_buf).unwrap_or_default();
    compile(&doc, palette, &DatasetRoot::Relative(dir))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))
}

/// Frame file name with at least three digits.
pub fn frame_file_name(index: usize, count: usize) -> String {
    let digits = count.saturating_sub(1).to_string().len().max(3);
    format!("{index:0digits$}.svg")
}

/// Renders a spec. `frames` writes into the directory `out` (created if
/// needed); the other formats write the single file `out`.
pub fn render_to(spec_path: &Path, out: &Path, format: OutputFormat, palette: &Palette) -> Result<usize, CliError> {
    let Compiled { script, render } = compile_file(spec_path, palette)?;
    let frames = sample_frames(&script, &render);
    match format {
        OutputFormat::Frames => {
            fs::create_dir_all(out).map_err(|e| CliError::Output(format!("{}: {e}", out.display())))?;
            for (i, frame) in frames.iter().enumerate() {
                write(&out.join(frame_file_name(i, frames.len())), &emit_svg(frame, &render))?;
            }
        }
        OutputFormat::AnimatedSvg => write(out, &emit_animated_svg(&frames, &render))?,
        OutputFormat::Keyframes => write(out, &emit_keyframes_doc(&frames, &render))?,
    }
    Ok(frames.len())
}

/// Plans and checks a spec; the outer error is a spec or planning failure.
pub fn verify_file(
    spec_path: &Path,
    samples: usize,
    tolerance: f64,
    palette: &Palette,
) -> Result<Result<VerifyReport, Violation>, CliError> {
    if samples < 2 {
        return Err(CliError::InvalidSpec(format!("samples must be at least 2, got {samples}")));
    }
    if !(tolerance >= 0.0 && tolerance.is_finite()) {
        return Err(CliError::InvalidSpec(format!("tolerance {tolerance} must be non-negative")));
    }
    let compiled = compile_file(spec_path, palette)?;
    Ok(verify_script(&compiled.script, samples, tolerance))
}

fn report_error(err: &CliError, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "error: {err}");
    err.exit_code()
}

/// `render` subcommand: exit 0, 2 (spec), 3 (planning) or 1 (output).
pub fn cmd_render(spec_path: &Path, out: &Path, format: OutputFormat, palette: &Palette, stderr: &mut dyn Write) -> i32 {
    match render_to(spec_path, out, format, palette) {
        Ok(_) => 0,
        Err(e) => report_error(&e, stderr),
    }
}

pub fn describe_violation(v: &Violation) -> String {
    let liquid = v.liquid().map_or_else(|| "-".to_string(), ToString::to_string);
    format!("violation at t={} liquid={liquid}: {v:?}", v.t())
}

/// `verify` subcommand: exit 0 on pass, 4 on a violation, else as render.
pub fn cmd_verify(
    spec_path: &Path,
    samples: usize,
    tolerance: f64,
    palette: &Palette,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    match verify_file(spec_path, samples, tolerance, palette) {
        Ok(Ok(report)) => {
            let _ = writeln!(
                stdout,
                "ok: {} samples, max area drift {:e}, max overlap {:e}",
                report.samples, report.max_area_drift, report.max_overlap
            );
            0
        }
        Ok(Err(v)) => {
            let _ = writeln!(stderr, "{}", describe_violation(&v));
            EXIT_VIOLATION
        }
        Err(e) => report_error(&e, stderr),
    }
}
