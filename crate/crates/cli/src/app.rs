//! Command dispatch. Every command writes to the given sink, so the whole
//! surface can be driven from tests.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use simplex_paths::census::{census, enumerate_atomic};
use simplex_paths::expansion::{self, Expansion};
use simplex_paths::reducer::{reduce, replay, ReduceConfig, ReduceError, Trace};
use simplex_paths::SimplexPath;

use crate::render;

#[derive(Debug, Parser)]
#[command(
    name = "spath",
    version,
    about = "Abstract simplex paths: expansions, reductions and census"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a path: heights, marks, atomic/admissible.
    Validate { file: PathBuf },
    /// Apply an expansion and report its exhaustiveness certificate.
    Expand {
        file: PathBuf,
        /// Expansion JSON, inline or as a file name.
        #[arg(long)]
        spec: String,
    },
    /// Reduce an admissible path to a 0-path.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        simplified_summits: bool,
        /// Write the trace here instead of stdout.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a reduction trace step by step.
    Replay {
        file: PathBuf,
        #[arg(long)]
        trace: PathBuf,
    },
    /// List canonical atomic paths as JSON.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        mod_reflection: bool,
    },
    /// Count atomic paths for all n <= n-max and even k <= k-max.
    Census {
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        k_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Draw a path table or height graph.
    Render {
        file: PathBuf,
        #[arg(long, value_enum)]
        view: View,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum View {
    Height,
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Ascii,
    Svg,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Input(String),
    #[error("{0}")]
    Combinatorial(String),
    #[error("internal invariant breach: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) | CliError::Io(_) => 1,
            CliError::Combinatorial(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

fn load_path(path: &Path) -> Result<SimplexPath, CliError> {
    load_json(&read(path)?, &path.display().to_string())
}

fn to_pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn joined<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn validate(p: &SimplexPath, out: &mut dyn Write) -> Result<(), CliError> {
    let h = p.heights();
    let c = p.classify();
    writeln!(out, "path: {p}")?;
    writeln!(out, "length: {}", p.len())?;
    writeln!(out, "heights: {}", joined(&h.values))?;
    writeln!(
        out,
        "marked edges: {}",
        joined(h.marked.iter().map(|e| format!("{}:{}", e.index, u8::from(e.mark))))
    )?;
    writeln!(out, "height statistics: {}", joined(p.height_stats().counts()))?;
    writeln!(out, "0-path: {}", yes_no(c.is_zero_path))?;
    writeln!(out, "atomic: {}", yes_no(c.is_atomic))?;
    writeln!(out, "admissible: {}", yes_no(c.is_admissible))?;
    match p.decompose() {
        Ok(d) => writeln!(
            out,
            "components: {}",
            joined(d.spans.iter().map(|(a, b)| format!("[{a},{b}]")))
        )?,
        Err(e) => writeln!(out, "components: none ({e})")?,
    }
    Ok(())
}

fn expand(p: &SimplexPath, spec: &str, out: &mut dyn Write) -> Result<(), CliError> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        read(Path::new(spec))?
    };
    let e: Expansion = load_json(&text, "expansion")?;
    let new = expansion::expand(p, &e).map_err(|err| CliError::Combinatorial(format!("invalid expansion: {err}")))?;
    let cert = expansion::is_exhaustive(p, &e).map_err(|err| CliError::Internal(err.to_string()))?;
    let n = p.dim();
    let show = |v: &simplex_paths::CubeVertex| v.display(n).to_string();
    let report = json!({
        "path": new,
        "exhaustive": cert.exhaustive,
        "mono": cert.mono.iter().map(show).collect::<Vec<_>>(),
        "on_path": cert.on_path.iter().map(show).collect::<Vec<_>>(),
        "matching": cert.matching.as_ref().map(|m| m.iter().map(|(a, b)| [show(a), show(b)]).collect::<Vec<_>>()),
    });
    out.write_all(to_pretty(&report).as_bytes())?;
    if !cert.exhaustive {
        let off: Vec<String> = cert.off_path().iter().map(show).collect();
        return Err(CliError::Combinatorial(format!(
            "expansion is not exhaustive: off-path vertices {} admit no covering matching",
            off.join(", ")
        )));
    }
    Ok(())
}

fn reduce_cmd(
    p: &SimplexPath,
    simplified: bool,
    trace_out: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let config = ReduceConfig {
        simplified_summits: simplified,
        max_steps: None,
    };
    let trace = reduce(p, config).map_err(|e| match e {
        ReduceError::NotAdmissible(_) => CliError::Combinatorial(e.to_string()),
        other => CliError::Internal(other.to_string()),
    })?;
    match trace_out {
        Some(file) => {
            fs::write(file, to_pretty(&trace))?;
            writeln!(out, "steps: {}", trace.steps.len())?;
            for (i, s) in trace.steps.iter().enumerate() {
                writeln!(
                    out,
                    "{i:>4} {:<17} component {} length {} -> {}{}",
                    s.move_kind.name(),
                    s.component_index,
                    s.length_before,
                    s.length_after,
                    if s.orientation_flipped { " (reflected)" } else { "" }
                )?;
            }
            writeln!(out, "final: {}", trace.final_path)?;
        }
        None => out.write_all(to_pretty(&trace).as_bytes())?,
    }
    Ok(())
}

fn replay_cmd(p: &SimplexPath, trace_file: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let trace: Trace = load_json(&read(trace_file)?, &trace_file.display().to_string())?;
    let report = replay(p, &trace);
    write!(out, "{report}")?;
    let failed = report.failures().count();
    if failed > 0 {
        return Err(CliError::Combinatorial(format!("{failed} checks failed")));
    }
    writeln!(out, "all {} checks passed", report.checks.len())?;
    Ok(())
}

fn enumerate_cmd(n: usize, k: usize, mod_reflection: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let paths = enumerate_atomic(n, k, mod_reflection).map_err(|e| CliError::Input(e.to_string()))?;
    let lines: Vec<String> = paths
        .iter()
        .map(|p| format!("  {}", serde_json::to_string(p).expect("serializable")))
        .collect();
    if lines.is_empty() {
        writeln!(out, "[]")?;
    } else {
        writeln!(out, "[\n{}\n]", lines.join(",\n"))?;
    }
    Ok(())
}

fn census_cmd(n_max: usize, k_max: usize, as_json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let table = census(n_max, k_max).map_err(|e| CliError::Input(e.to_string()))?;
    if as_json {
        out.write_all(to_pretty(&table).as_bytes())?;
        return Ok(());
    }
    writeln!(out, "{:>3} {:>3} {:>8} {:>15}", "k", "n", "classes", "mod reflection")?;
    for r in &table.rows {
        writeln!(
            out,
            "{:>3} {:>3} {:>8} {:>15}",
            r.k, r.n, r.count, r.count_mod_reflection
        )?;
    }
    Ok(())
}

fn render_cmd(
    p: &SimplexPath,
    view: View,
    format: Format,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let doc = match (view, format) {
        (View::Height, Format::Ascii) => render::height_graph_ascii(p),
        (View::Height, Format::Svg) => render::height_graph_svg(p),
        (View::Table, Format::Ascii) => render::path_table(p),
        (View::Table, Format::Svg) => render::path_table_svg(p),
    };
    match output {
        Some(file) => fs::write(file, doc)?,
        None => out.write_all(doc.as_bytes())?,
    }
    Ok(())
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { file } => validate(&load_path(&file)?, out),
        Command::Expand { file, spec } => expand(&load_path(&file)?, &spec, out),
        Command::Reduce {
            file,
            simplified_summits,
            trace,
        } => reduce_cmd(&load_path(&file)?, simplified_summits, trace.as_deref(), out),
        Command::Replay { file, trace } => replay_cmd(&load_path(&file)?, &trace, out),
        Command::Enumerate { n, k, mod_reflection } => enumerate_cmd(n, k, mod_reflection, out),
        Command::Census { n_max, k_max, json } => census_cmd(n_max, k_max, json, out),
        Command::Render {
            file,
            view,
            format,
            output,
        } => render_cmd(&load_path(&file)?, view, format, output.as_deref(), out),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Help and version requests are written to `out` and succeed.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli, out),
        Err(e) if !e.use_stderr() => {
            write!(out, "{e}")?;
            Ok(())
        }
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}
