//! The printed closed-form ε expressions for three-qubit GHZ and W states,
//! evaluated verbatim, and an audit that compares them with the
//! density-matrix computation.
//!
//! Nothing here is corrected: a formula that disagrees with the exact
//! computation shows up as a mismatch row, not as a patched expression.

use std::io::Write;

use crate::channels::{apply_product_channel, kraus_set, ChannelKind};
use crate::error::{Error, Result};
use crate::matrix::DensityMatrix;
use crate::report::fmt_f64;
use crate::spin_frame::{build_collective_operators, CollectiveOperators, FrameSpec};
use crate::squeezing::squeezing_parameter;
use crate::states::{density_from_pure, ghz_state, w_state, StateKind};
use crate::tolerances::Tolerances;

/// Upper end of the `γt` axis used for damping and depolarizing grids.
pub const GAMMA_T_MAX: f64 = 5.0;

/// Asymptote of the printed GHZ depolarizing expression, `1/27`.
pub const DEPOLARIZING_REFERENCE_LIMIT: f64 = 1.0 / 27.0;

/// Plateau value quoted in the prose for the GHZ depolarizing curve.
pub const DEPOLARIZING_PROSE_PLATEAU: f64 = 0.2;

/// Mean spin length quoted for the undecohered W state.
pub const W_QUOTED_MEAN_SPIN: f64 = 0.372678;

pub const AUDIT_CSV_HEADER: &str =
    "state,channel,theta_rad,phi_rad,param,eps_reference,eps_numeric,abs_diff,verdict";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceCase {
    pub state: StateKind,
    pub channel: ChannelKind,
    pub theta: f64,
    pub phi: f64,
    pub param: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditRow {
    pub case: ReferenceCase,
    pub eps_reference: f64,
    pub eps_numeric: f64,
    pub abs_diff: f64,
    pub verdict: Verdict,
}

/// Evaluates the printed expression for `(state, channel)` at the case's
/// angles and parameter. Only GHZ and W have printed forms.
pub fn eval_reference(case: &ReferenceCase) -> Result<f64> {
    case.channel.check_param(case.param)?;
    let (t, f, p) = (case.theta, case.phi, case.param);
    let value = match (case.state, case.channel) {
        (StateKind::Ghz, ChannelKind::BitFlip) => ghz_bit_flip(t, p),
        (StateKind::W, ChannelKind::BitFlip) => w_bit_flip(t, f, p),
        (StateKind::Ghz, ChannelKind::PhaseFlip) => ghz_phase_flip(t),
        (StateKind::W, ChannelKind::PhaseFlip) => w_phase_flip(t, f, p),
        (StateKind::Ghz, ChannelKind::BitPhaseFlip) => ghz_bit_phase_flip(t, p),
        (StateKind::W, ChannelKind::BitPhaseFlip) => w_bit_phase_flip(t, f, p),
        (StateKind::Ghz, ChannelKind::AmplitudeDamping) => ghz_amplitude_damping(t, p),
        (StateKind::W, ChannelKind::AmplitudeDamping) => w_amplitude_damping(t, f, p),
        (StateKind::Ghz, ChannelKind::PhaseDamping) => ghz_phase_damping(t),
        (StateKind::W, ChannelKind::PhaseDamping) => w_phase_damping(t, f, p),
        (StateKind::Ghz, ChannelKind::Depolarizing) => ghz_depolarizing(t, p),
        (StateKind::W, ChannelKind::Depolarizing) => w_depolarizing(t, f, p),
        (StateKind::Css, channel) => {
            return Err(Error::NoReference {
                state: case.state.to_string(),
                channel: channel.to_string(),
            })
        }
    };
    Ok(value)
}

fn sq(x: f64) -> f64 {
    x * x
}

fn ghz_bit_flip(t: f64, p: f64) -> f64 {
    0.5 * (-2.0 * sq(2.0 * p - 1.0) * sq(t.sin()) - sq(1.0 - 2.0 * p) * (2.0 * t).cos()
        + 4.0 * (p - 1.0) * p
        + 3.0)
}

fn w_bit_flip(t: f64, f: f64, p: f64) -> f64 {
    let (st, ct) = t.sin_cos();
    let (sf, cf) = f.sin_cos();
    let root = (sq(sf) + 0.25 * sq(2.0 * ct * cf + (2.0 * p - 1.0) * st)).sqrt();
    (2.0 / 3.0)
        * (-st * ct * cf + 3.0 * sq(ct) / 8.0 + (2.0 * (p - 1.0) * p + 7.0 / 8.0) * sq(st)
            + p * (2.0 * t).sin() * cf
            - (2.0 * p - 1.0) * st * root
            + 9.0 / 8.0)
}

fn ghz_phase_flip(t: f64) -> f64 {
    0.5 * (-2.0 * sq(t.sin()) - (2.0 * t).cos() + 3.0)
}

fn w_phase_flip(t: f64, f: f64, p: f64) -> f64 {
    let st = t.sin();
    let (sf, cf) = f.sin_cos();
    let s2t = (2.0 * t).sin();
    let root = (sq(2.0 * p - 1.0) * sq(st) * sq(sf)
        + 0.25 * sq((1.0 - 2.0 * p) * s2t * cf - sq(st)))
    .sqrt();
    (2.0 / 3.0) * (0.25 * (-(2.0 * t).cos() + 2.0 * (2.0 * p - 1.0) * s2t * cf + 7.0) - root)
}

fn ghz_bit_phase_flip(t: f64, p: f64) -> f64 {
    0.5 * ((2.0 * p - 1.0) * (-(2.0 * t).cos() + 8.0 * (p - 1.0) * p + 3.0)
        - 2.0 * (1.0 - 2.0 * p) * sq(t.sin()))
}

fn w_bit_phase_flip(t: f64, f: f64, p: f64) -> f64 {
    let st = t.sin();
    let (sf, cf) = f.sin_cos();
    let s2t = (2.0 * t).sin();
    let root = (sq(st) * sq(sf) + 0.25 * sq(s2t * cf + sq(st))).sqrt();
    (2.0 / 3.0)
        * (0.25 * (2.0 * p - 1.0) * (2.0 * s2t * cf - (2.0 * t).cos() + 24.0 * (p - 1.0) * p + 7.0)
            - (2.0 * p - 1.0) * root)
}

fn ghz_amplitude_damping(t: f64, g: f64) -> f64 {
    let e = g.exp();
    let em2 = (-2.0 * g).exp();
    let s2 = sq(t.sin());
    0.5 * (-2.0 * em2 * (e * (e - 2.0) + 2.0) * s2 - 4.0 * em2 * (e - 1.0) * s2 - (2.0 * t).cos()
        + 3.0)
}

fn w_amplitude_damping(t: f64, f: f64, g: f64) -> f64 {
    let (st, ct) = t.sin_cos();
    let (sf, cf) = f.sin_cos();
    let e = g.exp();
    let em1 = (-g).exp();
    let em2 = (-2.0 * g).exp();
    let em3 = (-3.0 * g).exp();
    let a1 = em3 * sq(e - 2.0) * sq(st) * sq(sf)
        + 0.25
            * em3
            * sq(st)
            * sq(em1.sqrt() * (3.0 * e * (e - 2.0) + 4.0) * st - 2.0 * (e - 2.0) * ct * cf);
    (2.0 / 3.0)
        * (0.25
            * (8.0 * em1.powf(1.5) * st * ct * cf
                - 2.0 * em1.sqrt() * (2.0 * t).sin() * cf
                - 4.0 * em2 * (3.0 * e - 2.0) * sq(st)
                - 3.0 * (2.0 * t).cos()
                + 9.0)
            - a1.sqrt())
}

fn ghz_phase_damping(t: f64) -> f64 {
    0.5 * (-2.0 * sq(t.sin()) - (2.0 * t).cos() + 3.0)
}

fn w_phase_damping(t: f64, f: f64, g: f64) -> f64 {
    let (st, ct) = t.sin_cos();
    let (sf, cf) = f.sin_cos();
    let em1 = (-g).exp();
    let a2 = st * ct * cf * em1 + sq(st) / 2.0;
    // the radicand can go negative; the NaN is reported as printed
    (2.0 / 3.0)
        * (em1 * st * ct * cf - ((-2.0 * g).exp() * sq(st) * sq(sf) - sq(a2)).sqrt()
            - 0.25 * (2.0 * t).cos()
            + 7.0 / 4.0)
}

fn ghz_depolarizing(t: f64, g: f64) -> f64 {
    let k = (-3.0 * g).exp() * (g.exp() + 2.0).powi(3);
    (1.0 / 54.0) * (-2.0 * k * sq(t.sin()) - k * ((2.0 * t).cos() - 3.0))
}

fn w_depolarizing(t: f64, f: f64, g: f64) -> f64 {
    let (st, ct) = t.sin_cos();
    let (sf, cf) = f.sin_cos();
    let k3 = (-3.0 * g).exp() * (g.exp() + 2.0).powi(3);
    let k6 = (-6.0 * g).exp() * (g.exp() + 2.0).powi(6);
    let a3 = k6 * sq(st) * sq(2.0 * ct * cf + st);
    (2.0 / 3.0)
        * (-((1.0 / 729.0) * k6 * sq(st) * sq(sf) + a3 / 2916.0).sqrt()
            - (1.0 / 108.0) * k3 * (-2.0 * (2.0 * t).sin() * cf + (2.0 * t).cos() - 7.0))
}

/// Evenly spaced points on `[lo, hi]`; a single point sits at `lo`.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|i| {
                if i == count - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}

/// Default parameter axis for a channel: `p ∈ [0, 1]` or `γt ∈ [0, 5]`.
pub fn default_param_axis(channel: ChannelKind, count: usize) -> Vec<f64> {
    let hi = if channel.is_flip() { 1.0 } else { GAMMA_T_MAX };
    linspace(0.0, hi, count)
}

/// Every printed `(state, channel)` pair, GHZ first.
pub fn reference_pairs() -> Vec<(StateKind, ChannelKind)> {
    [StateKind::Ghz, StateKind::W]
        .into_iter()
        .flat_map(|s| ChannelKind::ALL.into_iter().map(move |c| (s, c)))
        .collect()
}

/// Cartesian grid over `θ ∈ [0, π/2]`, `φ ∈ [0, π]` and the channel's
/// parameter axis, for all twelve pairs.
pub fn audit_grid(n_theta: usize, n_phi: usize, n_param: usize) -> Vec<ReferenceCase> {
    let thetas = linspace(0.0, std::f64::consts::FRAC_PI_2, n_theta);
    let phis = linspace(0.0, std::f64::consts::PI, n_phi);
    let mut grid = Vec::with_capacity(12 * n_theta * n_phi * n_param);
    for (state, channel) in reference_pairs() {
        for &theta in &thetas {
            for &phi in &phis {
                for &param in &default_param_axis(channel, n_param) {
                    grid.push(ReferenceCase {
                        state,
                        channel,
                        theta,
                        phi,
                        param,
                    });
                }
            }
        }
    }
    grid
}

/// Three-qubit initial density matrix for a printed-formula state.
pub(crate) fn reference_density(state: StateKind) -> Result<DensityMatrix> {
    match state {
        StateKind::Ghz => density_from_pure(&ghz_state(3)?),
        StateKind::W => density_from_pure(&w_state(3)?),
        StateKind::Css => Err(Error::NoReference {
            state: state.to_string(),
            channel: "any".into(),
        }),
    }
}

/// Density-matrix ε for a case, in the explicit frame of its angles.
pub fn eval_numeric(case: &ReferenceCase, ops: &CollectiveOperators) -> Result<f64> {
    let rho0 = reference_density(case.state)?;
    let ch = kraus_set(case.channel, case.param)?;
    let rho = apply_product_channel(&rho0, &ch, 3)?;
    let frame = FrameSpec::explicit(case.theta, case.phi)?;
    Ok(squeezing_parameter(&rho, ops, &frame)?.epsilon)
}

/// Runs every case through both routes. Rows come back sorted by
/// `abs_diff` descending (NaN first), ties kept in grid order.
pub fn audit(grid: &[ReferenceCase]) -> Result<Vec<AuditRow>> {
    audit_with(grid, &Tolerances::default())
}

pub fn audit_with(grid: &[ReferenceCase], tol: &Tolerances) -> Result<Vec<AuditRow>> {
    if grid.is_empty() {
        return Err(Error::InvalidSweep("empty audit grid".into()));
    }
    let ops = build_collective_operators(3)?;
    let mut rows = Vec::with_capacity(grid.len());
    for case in grid {
        let eps_reference = eval_reference(case)?;
        let eps_numeric = eval_numeric(case, &ops)?;
        let abs_diff = (eps_reference - eps_numeric).abs();
        let verdict = if abs_diff <= tol.audit_match {
            Verdict::Match
        } else {
            Verdict::Mismatch
        };
        rows.push(AuditRow {
            case: *case,
            eps_reference,
            eps_numeric,
            abs_diff,
            verdict,
        });
    }
    let key = |r: &AuditRow| {
        if r.abs_diff.is_nan() {
            f64::INFINITY
        } else {
            r.abs_diff
        }
    };
    rows.sort_by(|a, b| key(b).total_cmp(&key(a)));
    Ok(rows)
}

pub fn write_audit_csv<W: Write>(rows: &[AuditRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{AUDIT_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.case.state,
            r.case.channel,
            fmt_f64(r.case.theta),
            fmt_f64(r.case.phi),
            fmt_f64(r.case.param),
            fmt_f64(r.eps_reference),
            fmt_f64(r.eps_numeric),
            fmt_f64(r.abs_diff),
            r.verdict.as_str()
        )?;
    }
    Ok(())
}

/// Match counts for one `(state, channel)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct PairTally {
    pub state: StateKind,
    pub channel: ChannelKind,
    pub matches: usize,
    pub mismatches: usize,
    /// Rows whose printed value is NaN or negative.
    pub invalid_reference: usize,
    pub max_abs_diff: f64,
}

/// The three competing late-time values for GHZ under depolarization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DepolarizingLimits {
    pub reference_limit: f64,
    pub prose_plateau: f64,
    pub gamma_t: f64,
    pub reference_at_gamma_t: f64,
    pub numeric_aligned_at_gamma_t: f64,
}

pub fn depolarizing_limits(gamma_t: f64) -> Result<DepolarizingLimits> {
    let case = ReferenceCase {
        state: StateKind::Ghz,
        channel: ChannelKind::Depolarizing,
        theta: 0.0,
        phi: 0.0,
        param: gamma_t,
    };
    let ops = build_collective_operators(3)?;
    let rho = apply_product_channel(
        &reference_density(StateKind::Ghz)?,
        &kraus_set(ChannelKind::Depolarizing, gamma_t)?,
        3,
    )?;
    Ok(DepolarizingLimits {
        reference_limit: DEPOLARIZING_REFERENCE_LIMIT,
        prose_plateau: DEPOLARIZING_PROSE_PLATEAU,
        gamma_t,
        reference_at_gamma_t: eval_reference(&case)?,
        numeric_aligned_at_gamma_t: squeezing_parameter(&rho, &ops, &FrameSpec::aligned())?.epsilon,
    })
}

/// Companion to the audit CSV: per-pair tallies, the depolarizing limits
/// and the known printed-text discrepancies.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditSummary {
    pub tallies: Vec<PairTally>,
    pub depolarizing: DepolarizingLimits,
    pub w_mean_spin_numeric: f64,
}

pub fn summarize(rows: &[AuditRow]) -> Result<AuditSummary> {
    let tallies = reference_pairs()
        .into_iter()
        .map(|(state, channel)| {
            let mut t = PairTally {
                state,
                channel,
                matches: 0,
                mismatches: 0,
                invalid_reference: 0,
                max_abs_diff: 0.0,
            };
            for r in rows
                .iter()
                .filter(|r| r.case.state == state && r.case.channel == channel)
            {
                match r.verdict {
                    Verdict::Match => t.matches += 1,
                    Verdict::Mismatch => t.mismatches += 1,
                }
                if r.eps_reference.is_nan() || r.eps_reference < 0.0 {
                    t.invalid_reference += 1;
                }
                t.max_abs_diff = if r.abs_diff.is_nan() {
                    f64::NAN
                } else {
                    t.max_abs_diff.max(r.abs_diff)
                };
            }
            t
        })
        .collect();
    let ops = build_collective_operators(3)?;
    let w = reference_density(StateKind::W)?;
    Ok(AuditSummary {
        tallies,
        depolarizing: depolarizing_limits(GAMMA_T_MAX)?,
        w_mean_spin_numeric: crate::spin_frame::mean_spin(&w, &ops)?.r,
    })
}

impl std::fmt::Display for AuditSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "# formula audit summary")?;
        writeln!(f)?;
        writeln!(f, "state,channel,match,mismatch,invalid_reference,max_abs_diff")?;
        for t in &self.tallies {
            writeln!(
                f,
                "{},{},{},{},{},{}",
                t.state,
                t.channel,
                t.matches,
                t.mismatches,
                t.invalid_reference,
                fmt_f64(t.max_abs_diff)
            )?;
        }
        let d = &self.depolarizing;
        writeln!(f)?;
        writeln!(f, "# ghz depolarizing late-time values")?;
        writeln!(f, "reference_limit,{}", fmt_f64(d.reference_limit))?;
        writeln!(f, "prose_plateau,{}", fmt_f64(d.prose_plateau))?;
        writeln!(f, "gamma_t,{}", fmt_f64(d.gamma_t))?;
        writeln!(f, "reference_at_gamma_t,{}", fmt_f64(d.reference_at_gamma_t))?;
        writeln!(f, "numeric_aligned_at_gamma_t,{}", fmt_f64(d.numeric_aligned_at_gamma_t))?;
        writeln!(f)?;
        writeln!(f, "# printed-text discrepancies")?;
        writeln!(
            f,
            "phase_flip_second_operator: printed as sqrt(1-p)*I (identity channel); computed with sqrt(1-p)*Z"
        )?;
        writeln!(
            f,
            "flip_parameter: operators give identity at p=1 and full flip at p=0; prose calls p=0 error-free; operators are followed"
        )?;
        writeln!(
            f,
            "w_mean_spin_length: quoted {}, computed {}",
            W_QUOTED_MEAN_SPIN,
            fmt_f64(self.w_mean_spin_numeric)
        )?;
        writeln!(
            f,
            "bit_phase_flip_ghz: printed form is negative for p<1/2, while epsilon >= 0 for every state"
        )
    }
}
