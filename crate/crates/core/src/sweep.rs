//! Drivers behind the command line: parameter sweeps, the formula audit,
//! sudden-death scans and self-validation, plus the `key=value` config
//! format they share.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::channels::{
    apply_product_channel_by_tuples, apply_product_channel_fast, apply_product_channel_with,
    depolarizing_semigroup_residual, kraus_set, validate_kraus, ChannelKind,
};
use crate::error::{Error, Result};
use crate::matrix::DensityMatrix;
use crate::reference::{
    audit_grid, audit_with, default_param_axis, eval_reference, linspace, reference_density,
    summarize, write_audit_csv, AuditSummary, ReferenceCase,
};
use crate::report::fmt_f64;
use crate::spin_frame::{build_collective_operators, FrameMode, FrameSpec};
use crate::squeezing::{squeezing_parameter_with, sssd_scan, SssdDirection, SssdEvent};
use crate::states::{css_state, density_from_pure, ghz_state, w_state, StateKind};
use crate::tolerances::Tolerances;

pub const SWEEP_CSV_HEADER: &str =
    "state,channel,frame_mode,theta_rad,phi_rad,param,epsilon_numeric,epsilon_reference,r,var_min,chi_star_rad";

/// Largest Hilbert-space dimension for which every channel output gets a
/// full eigenvalue check during sweeps. Above it only Hermiticity and
/// trace are checked.
pub const FULL_VALIDATION_MAX_DIM: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Unknown {
                what: "format",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamRange {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl ParamRange {
    /// Parses `START:STOP:COUNT`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let bad = || Error::InvalidSweep(format!("param range {s:?} is not START:STOP:COUNT"));
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(Self {
            start: parts[0].parse().map_err(|_| bad())?,
            stop: parts[1].parse().map_err(|_| bad())?,
            count: parts[2].parse().map_err(|_| bad())?,
        })
    }

    /// A single point requires `start == stop`; otherwise `count ≥ 2` and
    /// `start ≤ stop`.
    pub fn validate(&self) -> Result<()> {
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(Error::InvalidSweep("non-finite param range".into()));
        }
        if self.start > self.stop {
            return Err(Error::InvalidSweep("param range start > stop".into()));
        }
        match self.count {
            0 => Err(Error::InvalidSweep("param count must be positive".into())),
            1 if self.start != self.stop => Err(Error::InvalidSweep(
                "a one-point range needs start == stop".into(),
            )),
            _ => Ok(()),
        }
    }

    pub fn points(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.count)
    }
}

/// Parses a comma-separated list of degrees into radians.
pub fn parse_degree_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map(|deg| deg * (std::f64::consts::PI / 180.0))
                .map_err(|_| Error::InvalidSweep(format!("bad angle {t:?}")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub state: StateKind,
    pub channel: ChannelKind,
    pub frame_mode: FrameMode,
    /// Radians.
    pub theta_list: Vec<f64>,
    /// Radians.
    pub phi_list: Vec<f64>,
    pub param_range: ParamRange,
    pub n_qubits: usize,
    /// Bloch angles of the coherent spin state, radians.
    pub css_theta: f64,
    pub css_phi: f64,
    pub output_path: PathBuf,
    pub format: OutputFormat,
    pub tolerances: Tolerances,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.param_range.validate()?;
        for &p in &[self.param_range.start, self.param_range.stop] {
            self.channel.check_param(p)?;
        }
        if self.frame_mode == FrameMode::Explicit {
            if self.theta_list.is_empty() || self.phi_list.is_empty() {
                return Err(Error::InvalidSweep(
                    "explicit frame needs nonempty theta and phi lists".into(),
                ));
            }
            for &t in &self.theta_list {
                FrameSpec::explicit(t, 0.0)?;
            }
        }
        initial_density(self.state, self.n_qubits, self.css_theta, self.css_phi).map(|_| ())
    }
}

/// Starting density matrix for any supported state.
pub fn initial_density(state: StateKind, n: usize, css_theta: f64, css_phi: f64) -> Result<DensityMatrix> {
    let psi = match state {
        StateKind::Ghz => ghz_state(n)?,
        StateKind::W => w_state(n)?,
        StateKind::Css => css_state(css_theta, css_phi, n)?,
    };
    density_from_pure(&psi)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub state: StateKind,
    pub channel: ChannelKind,
    pub frame_mode: FrameMode,
    pub theta: f64,
    pub phi: f64,
    pub param: f64,
    pub epsilon_numeric: f64,
    pub epsilon_reference: Option<f64>,
    pub r: f64,
    pub var_min: f64,
    pub chi_star: f64,
}

fn decohere(rho0: &DensityMatrix, channel: ChannelKind, param: f64, n: usize, tol: &Tolerances) -> Result<DensityMatrix> {
    let ch = kraus_set(channel, param)?;
    if rho0.dim() <= FULL_VALIDATION_MAX_DIM {
        apply_product_channel_with(rho0, &ch, n, tol)
    } else {
        apply_product_channel_fast(rho0, &ch, n, tol)
    }
}

/// Evaluates the sweep grid in `(θ, φ, param)` lexicographic order. Aligned
/// mode ignores the angle lists and emits one row per parameter.
pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let tol = &spec.tolerances;
    let n = spec.n_qubits;
    let ops = build_collective_operators(n)?;
    let rho0 = initial_density(spec.state, n, spec.css_theta, spec.css_phi)?;
    let params = spec.param_range.points();
    let has_reference = n == 3 && spec.state != StateKind::Css;

    let frames: Vec<FrameSpec> = match spec.frame_mode {
        FrameMode::Aligned => vec![FrameSpec::aligned()],
        FrameMode::Explicit => {
            let mut v = Vec::new();
            for &t in &spec.theta_list {
                for &f in &spec.phi_list {
                    v.push(FrameSpec::explicit(t, f)?);
                }
            }
            v
        }
    };

    let states: Vec<DensityMatrix> = params
        .iter()
        .map(|&p| decohere(&rho0, spec.channel, p, n, tol))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(frames.len() * params.len());
    for frame in &frames {
        for (&param, rho) in params.iter().zip(&states) {
            let res = squeezing_parameter_with(rho, &ops, frame, tol)?;
            let epsilon_reference = if has_reference {
                Some(eval_reference(&ReferenceCase {
                    state: spec.state,
                    channel: spec.channel,
                    theta: res.frame.theta,
                    phi: res.frame.phi,
                    param,
                })?)
            } else {
                None
            };
            rows.push(SweepRow {
                state: spec.state,
                channel: spec.channel,
                frame_mode: spec.frame_mode,
                theta: res.frame.theta,
                phi: res.frame.phi,
                param,
                epsilon_numeric: res.epsilon,
                epsilon_reference,
                r: res.mean.r,
                var_min: res.var_min,
                chi_star: res.chi_star,
            });
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.state,
            r.channel,
            r.frame_mode.as_str(),
            fmt_f64(r.theta),
            fmt_f64(r.phi),
            fmt_f64(r.param),
            fmt_f64(r.epsilon_numeric),
            r.epsilon_reference.map(fmt_f64).unwrap_or_default(),
            fmt_f64(r.r),
            fmt_f64(r.var_min),
            fmt_f64(r.chi_star),
        )?;
    }
    Ok(())
}

fn json_number(x: f64) -> serde_json::Value {
    serde_json::Number::from_f64(x)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}

/// JSON array of flat objects keyed like the CSV columns.
pub fn sweep_json(rows: &[SweepRow]) -> serde_json::Value {
    use serde_json::Value;
    Value::Array(
        rows.iter()
            .map(|r| {
                let mut m = serde_json::Map::new();
                m.insert("state".into(), Value::from(r.state.as_str()));
                m.insert("channel".into(), Value::from(r.channel.as_str()));
                m.insert("frame_mode".into(), Value::from(r.frame_mode.as_str()));
                m.insert("theta_rad".into(), json_number(r.theta));
                m.insert("phi_rad".into(), json_number(r.phi));
                m.insert("param".into(), json_number(r.param));
                m.insert("epsilon_numeric".into(), json_number(r.epsilon_numeric));
                m.insert(
                    "epsilon_reference".into(),
                    r.epsilon_reference.map(json_number).unwrap_or(Value::Null),
                );
                m.insert("r".into(), json_number(r.r));
                m.insert("var_min".into(), json_number(r.var_min));
                m.insert("chi_star_rad".into(), json_number(r.chi_star));
                Value::Object(m)
            })
            .collect(),
    )
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| io_err(path, e))
}

/// Evaluates the sweep and writes it; returns the number of data rows.
pub fn run_sweep(spec: &SweepSpec) -> Result<usize> {
    let rows = sweep_rows(spec)?;
    let path = &spec.output_path;
    let mut out = create(path)?;
    match spec.format {
        OutputFormat::Csv => write_sweep_csv(&rows, &mut out).map_err(|e| io_err(path, e))?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &sweep_json(&rows))
                .map_err(|e| io_err(path, e.into()))?;
            writeln!(out).map_err(|e| io_err(path, e))?;
        }
    }
    out.flush().map_err(|e| io_err(path, e))?;
    Ok(rows.len())
}

/// Path of the text summary written next to an audit CSV.
pub fn audit_summary_path(csv: &Path) -> PathBuf {
    csv.with_extension("summary.txt")
}

/// Runs the formula audit over a `(θ, φ, param)` grid of the given
/// resolution, writes the CSV to `out` and a summary beside it.
pub fn run_audit(resolution: (usize, usize, usize), out: &Path, tol: &Tolerances) -> Result<(PathBuf, AuditSummary)> {
    let (nt, np, nk) = resolution;
    if nt < 2 || np < 2 || nk < 2 {
        return Err(Error::InvalidSweep("audit resolution needs counts >= 2".into()));
    }
    let rows = audit_with(&audit_grid(nt, np, nk), tol)?;
    let mut w = create(out)?;
    write_audit_csv(&rows, &mut w).map_err(|e| io_err(out, e))?;
    w.flush().map_err(|e| io_err(out, e))?;

    let summary = summarize(&rows)?;
    let spath = audit_summary_path(out);
    std::fs::write(&spath, summary.to_string()).map_err(|e| io_err(&spath, e))?;
    Ok((out.to_path_buf(), summary))
}

/// One SSSD series with its detected transitions.
#[derive(Debug, Clone, PartialEq)]
pub struct SssdSeries {
    pub frame: FrameSpec,
    pub series: Vec<(f64, f64)>,
    pub events: Vec<SssdEvent>,
}

impl SssdSeries {
    pub fn deaths(&self) -> usize {
        self.events
            .iter()
            .filter(|e| e.direction == SssdDirection::Death)
            .count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SssdRequest {
    pub state: StateKind,
    pub channel: ChannelKind,
    pub samples: usize,
    pub frame_mode: FrameMode,
    pub theta_list: Vec<f64>,
    pub phi_list: Vec<f64>,
    /// Overrides the default `[0, 1]` or `[0, 5]` axis; its count is
    /// replaced by `samples`.
    pub range: Option<ParamRange>,
    pub n_qubits: usize,
    pub css_theta: f64,
    pub css_phi: f64,
    pub tolerances: Tolerances,
}

impl SssdRequest {
    pub fn new(state: StateKind, channel: ChannelKind, samples: usize) -> Self {
        Self {
            state,
            channel,
            samples,
            frame_mode: FrameMode::Aligned,
            theta_list: Vec::new(),
            phi_list: Vec::new(),
            range: None,
            n_qubits: 3,
            css_theta: 0.0,
            css_phi: 0.0,
            tolerances: Tolerances::default(),
        }
    }
}

/// Sweeps ε over the channel parameter and scans for squeezing
/// transitions, one series per frame.
pub fn run_sssd(req: &SssdRequest) -> Result<Vec<SssdSeries>> {
    if req.samples < 10 {
        return Err(Error::InvalidSweep("sssd needs at least 10 samples".into()));
    }
    let params = match req.range {
        Some(r) => ParamRange {
            count: req.samples,
            ..r
        }
        .points(),
        None => default_param_axis(req.channel, req.samples),
    };
    let spec = SweepSpec {
        state: req.state,
        channel: req.channel,
        frame_mode: req.frame_mode,
        theta_list: req.theta_list.clone(),
        phi_list: req.phi_list.clone(),
        param_range: ParamRange {
            start: params[0],
            stop: params[params.len() - 1],
            count: params.len(),
        },
        n_qubits: req.n_qubits,
        css_theta: req.css_theta,
        css_phi: req.css_phi,
        output_path: PathBuf::new(),
        format: OutputFormat::Csv,
        tolerances: req.tolerances,
    };
    let rows = sweep_rows(&spec)?;
    let mut out = Vec::new();
    for chunk in rows.chunks(params.len()) {
        let series: Vec<(f64, f64)> = chunk.iter().map(|r| (r.param, r.epsilon_numeric)).collect();
        let events = sssd_scan(&series, req.tolerances.squeeze_delta)?;
        let frame = match req.frame_mode {
            FrameMode::Aligned => FrameSpec::aligned(),
            FrameMode::Explicit => FrameSpec::explicit(chunk[0].theta, chunk[0].phi)?,
        };
        out.push(SssdSeries {
            frame,
            series,
            events,
        });
    }
    Ok(out)
}

/// Reads a `param,epsilon` series, skipping blank lines, `#` comments and
/// a non-numeric header.
pub fn parse_series(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split(',').map(str::trim);
        let (a, b) = (it.next(), it.next());
        match (a.and_then(|s| s.parse().ok()), b.and_then(|s| s.parse().ok())) {
            (Some(p), Some(e)) => out.push((p, e)),
            _ if i == 0 => continue,
            _ => {
                return Err(Error::InvalidSeries(format!(
                    "line {}: expected param,epsilon",
                    i + 1
                )))
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Runs the channel and state invariant checks on `n` qubits. Diagnostics
/// that are reported but not required to hold are marked passed.
pub fn run_validation(n: usize, tol: &Tolerances) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut push = |name: String, passed: bool, detail: String| {
        checks.push(Check {
            name,
            passed,
            detail,
        })
    };

    for kind in ChannelKind::ALL {
        let worst = default_param_axis(kind, 20)
            .into_iter()
            .map(|p| kraus_set(kind, p).and_then(|ch| validate_kraus(&ch)))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        push(
            format!("completeness/{kind}"),
            worst <= tol.completeness,
            format!("max residual {worst:e}"),
        );
    }

    let mut initial = Vec::new();
    for state in [StateKind::Ghz, StateKind::W, StateKind::Css] {
        match initial_density(state, n, 0.9, 0.4) {
            Ok(rho) => {
                let ok = rho.validate_with(tol).is_ok();
                push(format!("state/{state}"), ok, "density matrix checks".into());
                initial.push((state, rho));
            }
            Err(e) => push(format!("state/{state}"), false, e.to_string()),
        }
    }

    for kind in ChannelKind::ALL {
        let mut failures = 0;
        let mut total = 0;
        for (_, rho) in &initial {
            for p in default_param_axis(kind, 10) {
                total += 1;
                let ch = kraus_set(kind, p)?;
                if apply_product_channel_with(rho, &ch, n, tol).is_err() {
                    failures += 1;
                }
            }
        }
        push(
            format!("channel_output/{kind}"),
            failures == 0,
            format!("{failures} of {total} outputs invalid"),
        );
    }

    if n <= 4 {
        let mut worst: f64 = 0.0;
        for kind in ChannelKind::ALL {
            let ch = kraus_set(kind, if kind.is_flip() { 0.3 } else { 0.8 })?;
            for (_, rho) in &initial {
                let fast = apply_product_channel_with(rho, &ch, n, tol)?;
                let slow = apply_product_channel_by_tuples(rho, &ch, n)?;
                worst = worst.max(fast.matrix().max_abs_diff(&slow)?);
            }
        }
        push(
            "channel/local_vs_tuple_sum".into(),
            worst <= 1e-12,
            format!("max difference {worst:e}"),
        );
    }

    let ops = build_collective_operators(n)?;
    let i = num_complex::Complex64::new(0.0, 1.0);
    let comm = &(&ops.jx * &ops.jy) - &(&ops.jy * &ops.jx);
    let resid = comm.max_abs_diff(&ops.jz.scale(i))?;
    push("operators/commutator".into(), resid <= 1e-10, format!("residual {resid:e}"));

    if let Some((_, ghz)) = initial.iter().find(|(s, _)| *s == StateKind::Ghz) {
        let res = depolarizing_semigroup_residual(ghz, n, 0.5, 0.5)?;
        push(
            "diagnostic/depolarizing_semigroup".into(),
            true,
            format!("D(0.5)∘D(0.5) vs D(1.0) differ by {res:e}"),
        );
    }
    if n == 3 {
        let w = reference_density(StateKind::W)?;
        let r = crate::spin_frame::mean_spin(&w, &ops)?.r;
        push(
            "diagnostic/w_mean_spin".into(),
            true,
            format!("r = {r} (quoted {})", crate::reference::W_QUOTED_MEAN_SPIN),
        );
    }
    Ok(checks)
}

/// Options gathered from a config file and command-line flags. Every field
/// is optional so the two sources can be layered.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Options {
    pub state: Option<String>,
    pub channel: Option<String>,
    pub frame: Option<String>,
    pub theta_deg: Option<String>,
    pub phi_deg: Option<String>,
    pub param_range: Option<String>,
    pub qubits: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub css_theta_deg: Option<f64>,
    pub css_phi_deg: Option<f64>,
    pub samples: Option<usize>,
    pub resolution: Option<String>,
    pub series: Option<PathBuf>,
    /// `tol.<field>` entries, applied in order.
    pub tolerances: BTreeMap<String, f64>,
}

impl Options {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn from_config_text(text: &str) -> Result<Self> {
        let mut o = Options::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Config {
                line: line_no,
                msg: "expected key=value".into(),
            })?;
            let (key, value) = (key.trim(), value.trim().to_string());
            let num_err = |what: &str| Error::Config {
                line: line_no,
                msg: format!("{key}: expected {what}"),
            };
            match key {
                "state" => o.state = Some(value),
                "channel" => o.channel = Some(value),
                "frame" => o.frame = Some(value),
                "theta-deg" => o.theta_deg = Some(value),
                "phi-deg" => o.phi_deg = Some(value),
                "param-range" => o.param_range = Some(value),
                "qubits" => o.qubits = Some(value.parse().map_err(|_| num_err("integer"))?),
                "out" => o.out = Some(PathBuf::from(value)),
                "format" => o.format = Some(value),
                "css-theta-deg" => o.css_theta_deg = Some(value.parse().map_err(|_| num_err("number"))?),
                "css-phi-deg" => o.css_phi_deg = Some(value.parse().map_err(|_| num_err("number"))?),
                "samples" => o.samples = Some(value.parse().map_err(|_| num_err("integer"))?),
                "resolution" => o.resolution = Some(value),
                "series" => o.series = Some(PathBuf::from(value)),
                k if k.starts_with("tol.") => {
                    let field = &k[4..];
                    let v: f64 = value.parse().map_err(|_| num_err("number"))?;
                    if !Tolerances::default().set(field, v) {
                        return Err(Error::Config {
                            line: line_no,
                            msg: format!("unknown tolerance {field}"),
                        });
                    }
                    o.tolerances.insert(field.to_string(), v);
                }
                _ => {
                    return Err(Error::Config {
                        line: line_no,
                        msg: format!("unknown key {key}"),
                    })
                }
            }
        }
        Ok(o)
    }

    /// Fields set in `top` win over fields in `self`.
    pub fn overlay(self, top: Options) -> Options {
        let mut tolerances = self.tolerances;
        tolerances.extend(top.tolerances);
        Options {
            state: top.state.or(self.state),
            channel: top.channel.or(self.channel),
            frame: top.frame.or(self.frame),
            theta_deg: top.theta_deg.or(self.theta_deg),
            phi_deg: top.phi_deg.or(self.phi_deg),
            param_range: top.param_range.or(self.param_range),
            qubits: top.qubits.or(self.qubits),
            out: top.out.or(self.out),
            format: top.format.or(self.format),
            css_theta_deg: top.css_theta_deg.or(self.css_theta_deg),
            css_phi_deg: top.css_phi_deg.or(self.css_phi_deg),
            samples: top.samples.or(self.samples),
            resolution: top.resolution.or(self.resolution),
            series: top.series.or(self.series),
            tolerances,
        }
    }

    pub fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::default();
        for (k, &v) in &self.tolerances {
            t.set(k, v);
        }
        t
    }

    fn required<'a>(v: &'a Option<String>, name: &str) -> Result<&'a str> {
        v.as_deref()
            .ok_or_else(|| Error::InvalidSweep(format!("missing --{name}")))
    }

    pub fn state_kind(&self) -> Result<StateKind> {
        Self::required(&self.state, "state")?.parse()
    }

    pub fn channel_kind(&self) -> Result<ChannelKind> {
        Self::required(&self.channel, "channel")?.parse()
    }

    pub fn frame_mode(&self) -> Result<FrameMode> {
        self.frame.as_deref().unwrap_or("aligned").parse()
    }

    fn angle_list(v: &Option<String>) -> Result<Vec<f64>> {
        v.as_deref().map(parse_degree_list).unwrap_or(Ok(Vec::new()))
    }

    fn css_angles(&self) -> (f64, f64) {
        let rad = std::f64::consts::PI / 180.0;
        (
            self.css_theta_deg.unwrap_or(0.0) * rad,
            self.css_phi_deg.unwrap_or(0.0) * rad,
        )
    }

    pub fn to_sweep_spec(&self) -> Result<SweepSpec> {
        let channel = self.channel_kind()?;
        let param_range = match &self.param_range {
            Some(s) => ParamRange::parse(s)?,
            None => {
                let axis = default_param_axis(channel, 50);
                ParamRange {
                    start: axis[0],
                    stop: axis[axis.len() - 1],
                    count: axis.len(),
                }
            }
        };
        let (css_theta, css_phi) = self.css_angles();
        let spec = SweepSpec {
            state: self.state_kind()?,
            channel,
            frame_mode: self.frame_mode()?,
            theta_list: Self::angle_list(&self.theta_deg)?,
            phi_list: Self::angle_list(&self.phi_deg)?,
            param_range,
            n_qubits: self.qubits.unwrap_or(3),
            css_theta,
            css_phi,
            output_path: self.out.clone().unwrap_or_else(|| PathBuf::from("sweep.csv")),
            format: self.format.as_deref().unwrap_or("csv").parse()?,
            tolerances: self.tolerances(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_sssd_request(&self) -> Result<SssdRequest> {
        let (css_theta, css_phi) = self.css_angles();
        Ok(SssdRequest {
            state: self.state_kind()?,
            channel: self.channel_kind()?,
            samples: self.samples.unwrap_or(200),
            frame_mode: self.frame_mode()?,
            theta_list: Self::angle_list(&self.theta_deg)?,
            phi_list: Self::angle_list(&self.phi_deg)?,
            range: self.param_range.as_deref().map(ParamRange::parse).transpose()?,
            n_qubits: self.qubits.unwrap_or(3),
            css_theta,
            css_phi,
            tolerances: self.tolerances(),
        })
    }

    /// `NTHETA,NPHI,NPARAM`, default `5,5,11`.
    pub fn audit_resolution(&self) -> Result<(usize, usize, usize)> {
        let Some(s) = self.resolution.as_deref() else {
            return Ok((5, 5, 11));
        };
        let parts: Vec<usize> = s
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidSweep(format!("bad resolution {s:?}")))?;
        match parts[..] {
            [a, b, c] => Ok((a, b, c)),
            _ => Err(Error::InvalidSweep(format!("bad resolution {s:?}"))),
        }
    }
}
