use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinsq_core::report::fmt_f64;
use spinsq_core::squeezing::{sssd_scan, SssdDirection, SssdEvent};
use spinsq_core::sweep::{
    audit_summary_path, parse_series, run_audit, run_sssd, run_sweep, run_validation, Options,
};
use spinsq_core::{Error, FrameMode};

const EXIT_USAGE: u8 = 1;
const EXIT_SSSD: u8 = 2;
const EXIT_VALIDATION: u8 = 3;

type Handler = fn(&Options) -> Result<u8, Error>;

#[derive(Parser)]
#[command(name = "spinsq", version, about = "Spin-squeezing sweeps, audits and SSSD scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate ε over a (θ, φ, param) grid and write CSV or JSON.
    Sweep(Flags),
    /// Compare the closed forms against the numerical pipeline.
    Audit(Flags),
    /// Scan ε(param) for squeezing sudden death; exits 2 if any is found.
    Sssd(Flags),
    /// Run channel and state invariant checks; exits 3 on failure.
    Validate(Flags),
}

#[derive(Args, Default)]
struct Flags {
    /// ghz | w | css
    #[arg(long)]
    state: Option<String>,
    /// bitflip | phaseflip | bitphaseflip | ampdamp | phasedamp | depolarize
    #[arg(long)]
    channel: Option<String>,
    /// aligned | explicit
    #[arg(long)]
    frame: Option<String>,
    /// Comma-separated polar angles in degrees
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    theta_deg: Option<String>,
    /// Comma-separated azimuths in degrees
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    phi_deg: Option<String>,
    /// START:STOP:COUNT
    #[arg(long, value_name = "START:STOP:COUNT")]
    param_range: Option<String>,
    /// Number of qubits (default 3)
    #[arg(long, value_name = "N")]
    qubits: Option<usize>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// csv | json
    #[arg(long)]
    format: Option<String>,
    /// key=value file; flags override it
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// CSS polar angle in degrees
    #[arg(long, value_name = "DEG", allow_hyphen_values = true)]
    css_theta_deg: Option<f64>,
    /// CSS azimuth in degrees
    #[arg(long, value_name = "DEG", allow_hyphen_values = true)]
    css_phi_deg: Option<f64>,
    /// Samples along the parameter axis for sssd (default 200)
    #[arg(long, value_name = "COUNT")]
    samples: Option<usize>,
    /// Audit grid as NTHETA,NPHI,NPARAM (default 5,5,11)
    #[arg(long, value_name = "NT,NP,NK")]
    resolution: Option<String>,
    /// Scan a precomputed param,epsilon file instead of computing one
    #[arg(long, value_name = "PATH")]
    series: Option<PathBuf>,
}

impl Flags {
    fn options(self) -> Result<Options, Error> {
        let base = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    msg: e.to_string(),
                })?;
                Options::from_config_text(&text)?
            }
            None => Options::default(),
        };
        Ok(base.overlay(Options {
            state: self.state,
            channel: self.channel,
            frame: self.frame,
            theta_deg: self.theta_deg,
            phi_deg: self.phi_deg,
            param_range: self.param_range,
            qubits: self.qubits,
            out: self.out,
            format: self.format,
            css_theta_deg: self.css_theta_deg,
            css_phi_deg: self.css_phi_deg,
            samples: self.samples,
            resolution: self.resolution,
            series: self.series,
            tolerances: Default::default(),
        }))
    }
}

// A closed pipe (e.g. `| head`) is not an error worth reporting.
fn emit(text: std::fmt::Arguments) {
    let _ = std::io::stdout().lock().write_fmt(text);
}

fn print_events(label: &str, events: &[SssdEvent]) {
    for e in events {
        emit(format_args!(
            "{},{label},{},{},{}\n",
            e.direction.as_str(),
            e.index,
            fmt_f64(e.param_lo),
            fmt_f64(e.param_hi)
        ));
    }
}

fn sweep(opts: &Options) -> Result<u8, Error> {
    let spec = opts.to_sweep_spec()?;
    let rows = run_sweep(&spec)?;
    eprintln!("wrote {rows} rows to {}", spec.output_path.display());
    Ok(0)
}

fn audit(opts: &Options) -> Result<u8, Error> {
    let out = opts.out.clone().unwrap_or_else(|| PathBuf::from("audit.csv"));
    let (report, summary) = run_audit(opts.audit_resolution()?, &out, &opts.tolerances())?;
    emit(format_args!("{summary}"));
    eprintln!("wrote {} and {}", report.display(), audit_summary_path(&report).display());
    Ok(0)
}

fn sssd(opts: &Options) -> Result<u8, Error> {
    let delta = opts.tolerances().squeeze_delta;
    let mut deaths = 0;
    if let Some(path) = &opts.series {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        let events = sssd_scan(&parse_series(&text)?, delta)?;
        deaths = events.iter().filter(|e| e.direction == SssdDirection::Death).count();
        print_events("series", &events);
    } else {
        for s in run_sssd(&opts.to_sssd_request()?)? {
            let label = match s.frame.mode {
                FrameMode::Aligned => "aligned".to_string(),
                FrameMode::Explicit => format!("{}:{}", fmt_f64(s.frame.theta), fmt_f64(s.frame.phi)),
            };
            deaths += s.deaths();
            print_events(&label, &s.events);
        }
    }
    eprintln!("{deaths} death event(s)");
    Ok(if deaths > 0 { EXIT_SSSD } else { 0 })
}

fn validate(opts: &Options) -> Result<u8, Error> {
    let checks = run_validation(opts.qubits.unwrap_or(3), &opts.tolerances())?;
    let mut failed = 0;
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        emit(format_args!("{tag}  {}: {}\n", c.name, c.detail));
        failed += usize::from(!c.passed);
    }
    Ok(if failed > 0 { EXIT_VALIDATION } else { 0 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let (flags, run): (Flags, Handler) = match cli.command {
        Command::Sweep(f) => (f, sweep),
        Command::Audit(f) => (f, audit),
        Command::Sssd(f) => (f, sssd),
        Command::Validate(f) => (f, validate),
    };
    match flags.options().and_then(|o| run(&o)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
