//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fail.

mod common;

use std::f64::consts::{PI, TAU};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use spinsq_core::channels::{apply_product_channel, kraus_set, validate_kraus, ChannelKind};
use spinsq_core::reference::{
    audit_grid, default_param_axis, eval_reference, reference_pairs, ReferenceCase,
    DEPOLARIZING_PROSE_PLATEAU, DEPOLARIZING_REFERENCE_LIMIT,
};
use spinsq_core::report::fmt_f64;
use spinsq_core::spin_frame::{build_collective_operators, rotated_components, FrameSpec};
use spinsq_core::squeezing::{in_plane_mean, min_variance, squeezing_parameter, MomentCoefficients};
use spinsq_core::states::{css_state, density_from_pure, ghz_state, w_state, StateKind};
use spinsq_core::sweep::{
    audit_summary_path, run_audit, run_sssd, run_sweep, Options, SssdRequest,
};
use spinsq_core::{DensityMatrix, Tolerances};

use common::{grid_min, random_density, random_pure};

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    check(elapsed.as_secs_f64() < limit_s, || {
        format!("runtime {:.2}s exceeds {limit_s}s", elapsed.as_secs_f64())
    })
}

fn tmp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("spinsq-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn ghz3() -> DensityMatrix {
    density_from_pure(&ghz_state(3).unwrap()).unwrap()
}

fn w3() -> DensityMatrix {
    density_from_pure(&w_state(3).unwrap()).unwrap()
}

fn c1_ghz_robustness() -> Outcome {
    let start = Instant::now();
    let ops = build_collective_operators(3).map_err(|e| e.to_string())?;
    let ghz = ghz3();
    let mut worst: f64 = 0.0;
    for kind in [
        ChannelKind::BitFlip,
        ChannelKind::PhaseFlip,
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseDamping,
    ] {
        for p in default_param_axis(kind, 50) {
            let rho = apply_product_channel(&ghz, &kraus_set(kind, p).unwrap(), 3).unwrap();
            let eps = squeezing_parameter(&rho, &ops, &FrameSpec::aligned()).unwrap().epsilon;
            worst = worst.max((eps - 1.0).abs());
            check((eps - 1.0).abs() <= 1e-10, || format!("{kind} at {p}: eps = {eps}"))?;
        }
    }
    within(start.elapsed(), 5.0)?;
    Ok(format!("max |eps-1| = {worst:.2e} over 200 cases"))
}

fn c2_css_baseline() -> Outcome {
    let start = Instant::now();
    let ops = build_collective_operators(3).unwrap();
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let theta = rng.gen_range(0.0..=PI);
        let phi = rng.gen_range(0.0..TAU);
        let rho = density_from_pure(&css_state(theta, phi, 3).unwrap()).unwrap();
        let eps = squeezing_parameter(&rho, &ops, &FrameSpec::aligned()).unwrap().epsilon;
        worst = worst.max((eps - 1.0).abs());
    }
    check(worst <= 1e-9, || format!("max |eps-1| = {worst:e}"))?;
    within(start.elapsed(), 5.0)?;
    Ok(format!("max |eps-1| = {worst:.2e} over 100 states"))
}

fn c3_channel_validity() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for kind in ChannelKind::ALL {
        for p in default_param_axis(kind, 20) {
            let r = validate_kraus(&kraus_set(kind, p).unwrap()).unwrap();
            worst = worst.max(r);
            check(r <= 1e-12, || format!("{kind} at {p}: residual {r:e}"))?;
        }
    }
    let mut rng = StdRng::seed_from_u64(3);
    let mut inputs = vec![ghz3(), w3()];
    inputs.extend((0..20).map(|_| random_density(&mut rng, 3)));
    let mut applied = 0;
    for kind in ChannelKind::ALL {
        for p in default_param_axis(kind, 10) {
            let ch = kraus_set(kind, p).unwrap();
            for rho in &inputs {
                apply_product_channel(rho, &ch, 3)
                    .map_err(|e| format!("{kind} at {p}: {e}"))?;
                applied += 1;
            }
        }
    }
    within(start.elapsed(), 10.0)?;
    Ok(format!(
        "completeness <= {worst:.1e}; {applied} channel outputs valid"
    ))
}

fn c4_variance_optimizer() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst_gap: f64 = 0.0;
    for _ in 0..200 {
        let m = rng.gen_range(-2.0..2.0);
        let n = rng.gen_range(-2.0..2.0);
        let o = f64::hypot(m, n) + rng.gen_range(0.0..2.0);
        let c = MomentCoefficients::new(m, n, o);
        let (lo, _, _) = min_variance(&c);
        let bound = 2.0 * (PI / 3600.0).powi(2) * c.anisotropy();
        let gap = grid_min(m, n, o, 3600) - lo;
        worst_gap = worst_gap.max(gap.abs());
        check(gap >= -1e-12 && gap <= bound, || {
            format!("({m},{n},{o}): grid gap {gap:e} vs bound {bound:e}")
        })?;
    }
    let ops = build_collective_operators(3).unwrap();
    let mut worst_mean: f64 = 0.0;
    let mut states = vec![ghz3(), w3()];
    states.extend((0..20).map(|_| random_density(&mut rng, 3)));
    for (i, rho0) in states.iter().enumerate() {
        let kind = ChannelKind::ALL[i % 6];
        let p = if kind.is_flip() { 0.3 } else { 0.7 };
        let rho = apply_product_channel(rho0, &kraus_set(kind, p).unwrap(), 3).unwrap();
        let res = squeezing_parameter(&rho, &ops, &FrameSpec::aligned()).unwrap();
        let rot = rotated_components(&ops, &res.frame);
        for k in 0..36 {
            let v = in_plane_mean(&rho, &rot, TAU * k as f64 / 36.0).unwrap();
            worst_mean = worst_mean.max(v.abs());
        }
    }
    check(worst_mean <= 1e-10, || format!("max |<J_chi>| = {worst_mean:e}"))?;
    Ok(format!(
        "max grid gap {worst_gap:.2e}; max |<J_chi>| {worst_mean:.2e}"
    ))
}

fn c5_nonnegativity() -> Outcome {
    let ops = build_collective_operators(3).unwrap();
    let mut rng = StdRng::seed_from_u64(5);
    let mut lowest = f64::INFINITY;
    for i in 0..500 {
        let rho0 = match i % 5 {
            0 => ghz3(),
            1 => w3(),
            _ => density_from_pure(&random_pure(&mut rng, 3)).unwrap(),
        };
        let kind = ChannelKind::ALL[rng.gen_range(0..6)];
        let p = if kind.is_flip() {
            rng.gen_range(0.0..=1.0)
        } else {
            rng.gen_range(0.0..6.0)
        };
        let frame = if rng.gen_bool(0.3) {
            FrameSpec::aligned()
        } else {
            FrameSpec::explicit(rng.gen_range(0.0..=PI), rng.gen_range(0.0..TAU)).unwrap()
        };
        let rho = apply_product_channel(&rho0, &kraus_set(kind, p).unwrap(), 3).unwrap();
        let res = squeezing_parameter(&rho, &ops, &frame).unwrap();
        let slack = res.coeffs.o_coef - res.coeffs.anisotropy();
        lowest = lowest.min(res.epsilon);
        check(res.epsilon >= -1e-10 && slack >= -1e-10, || {
            format!("case {i}: eps {} slack {slack}", res.epsilon)
        })?;
    }
    Ok(format!("min eps {lowest:.4} over 500 cases"))
}

struct AuditRun {
    csv: Vec<u8>,
    summary: String,
    elapsed: Duration,
}

fn run_audit_once(tag: &str) -> Result<AuditRun, String> {
    let path = tmp_path(&format!("audit-{tag}.csv"));
    let start = Instant::now();
    run_audit((5, 5, 11), &path, &Tolerances::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    Ok(AuditRun {
        csv: std::fs::read(&path).map_err(|e| e.to_string())?,
        summary: std::fs::read_to_string(audit_summary_path(&path)).map_err(|e| e.to_string())?,
        elapsed,
    })
}

fn c6_depolarization_reference(audit: &AuditRun) -> Outcome {
    let v = eval_reference(&ReferenceCase {
        state: StateKind::Ghz,
        channel: ChannelKind::Depolarizing,
        theta: 0.0,
        phi: 0.0,
        param: 0.0,
    })
    .unwrap();
    check(v == 1.0, || format!("reference at gamma t = 0 is {v:e}"))?;

    let line = |key: &str| {
        audit
            .summary
            .lines()
            .find_map(|l| l.strip_prefix(&format!("{key},")).map(str::to_string))
            .ok_or_else(|| format!("summary lacks {key}"))
    };
    let limit = line("reference_limit")?;
    let prose = line("prose_plateau")?;
    let numeric = line("numeric_aligned_at_gamma_t")?;
    check(line("gamma_t")? == fmt_f64(5.0), || "limits not taken at gamma t = 5".into())?;
    check(limit == fmt_f64(DEPOLARIZING_REFERENCE_LIMIT), || format!("limit {limit}"))?;
    check(prose == fmt_f64(DEPOLARIZING_PROSE_PLATEAU), || format!("prose {prose}"))?;

    let text = String::from_utf8(audit.csv.clone()).unwrap();
    for row in text.lines().skip(1) {
        let f: Vec<&str> = row.split(',').collect();
        let diff: f64 = f[7].parse().unwrap();
        let expect = if diff <= 1e-8 { "match" } else { "mismatch" };
        check(f[8] == expect, || format!("verdict inconsistent: {row}"))?;
    }
    Ok(format!(
        "ref(0)=1; limit {limit}, prose {prose}, numeric(5) {numeric}"
    ))
}

fn c7_audit_completeness(first: &AuditRun, second: &AuditRun) -> Outcome {
    within(first.elapsed, 60.0)?;
    check(first.csv == second.csv, || "audit CSV differs between runs".into())?;
    let text = String::from_utf8(first.csv.clone()).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    check(rows.len() == 3300, || format!("{} rows", rows.len()))?;
    for (state, channel) in reference_pairs() {
        let n = rows
            .iter()
            .filter(|r| r[0] == state.as_str() && r[1] == channel.as_str())
            .count();
        check(n == 275, || format!("{state}/{channel}: {n} rows"))?;
    }
    for channel in ["phaseflip", "ampdamp"] {
        let bad = rows
            .iter()
            .filter(|r| r[0] == "ghz" && r[1] == channel && r[8] != "match")
            .count();
        check(bad == 0, || format!("ghz/{channel}: {bad} mismatches"))?;
    }
    let bpf_small_p = rows
        .iter()
        .filter(|r| r[0] == "ghz" && r[1] == "bitphaseflip" && r[8] == "mismatch")
        .filter(|r| r[4].parse::<f64>().unwrap() < 0.5)
        .count();
    check(bpf_small_p > 0, || "no ghz/bitphaseflip mismatch at p < 1/2".into())?;
    let mismatches = rows.iter().filter(|r| r[8] == "mismatch").count();
    // the grid itself is deterministic too
    check(audit_grid(5, 5, 11) == audit_grid(5, 5, 11), || "grid not deterministic".into())?;
    Ok(format!(
        "3300 rows, {mismatches} mismatches reported, {bpf_small_p} ghz/bitphaseflip p<1/2; {:.2}s",
        first.elapsed.as_secs_f64()
    ))
}

fn c8_sssd_absence() -> Outcome {
    let start = Instant::now();
    let mut deaths = 0;
    let mut min_eps = f64::INFINITY;
    for (state, channel) in reference_pairs() {
        let series = run_sssd(&SssdRequest::new(state, channel, 200)).map_err(|e| e.to_string())?;
        for s in &series {
            deaths += s.deaths();
            min_eps = s.series.iter().map(|x| x.1).fold(min_eps, f64::min);
        }
    }
    check(deaths == 0, || format!("{deaths} death events"))?;
    within(start.elapsed(), 60.0)?;
    Ok(format!(
        "12 pairs x 200 samples, 0 deaths, min eps {min_eps:.6}; {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn c9_w_bit_flip_fixed_point() -> Outcome {
    let ops = build_collective_operators(3).unwrap();
    let rho = apply_product_channel(&w3(), &kraus_set(ChannelKind::BitFlip, 0.5).unwrap(), 3).unwrap();
    let mut worst: f64 = 0.0;
    for t in [10.0f64, 60.0, 90.0] {
        for f in [0.0f64, 90.0, 180.0] {
            let frame = FrameSpec::explicit(t.to_radians(), f.to_radians()).unwrap();
            let eps = squeezing_parameter(&rho, &ops, &frame).unwrap().epsilon;
            worst = worst.max((eps - 1.0).abs());
        }
    }
    check(worst <= 1e-9, || format!("max |eps-1| = {worst:e}"))?;
    Ok(format!("max |eps-1| = {worst:.2e} over 9 frames"))
}

fn c10_determinism() -> Outcome {
    let spec_for = |name: &str| Options {
        state: Some("w".into()),
        channel: Some("bitflip".into()),
        frame: Some("explicit".into()),
        theta_deg: Some("0,10,60,90".into()),
        phi_deg: Some("0,30,60,90,120,150,180".into()),
        param_range: Some("0:1:50".into()),
        out: Some(tmp_path(name)),
        ..Default::default()
    }
    .to_sweep_spec()
    .unwrap();
    let a = spec_for("sweep-a.csv");
    let b = spec_for("sweep-b.csv");
    let rows = run_sweep(&a).map_err(|e| e.to_string())?;
    run_sweep(&b).map_err(|e| e.to_string())?;
    let (x, y) = (std::fs::read(&a.output_path).unwrap(), std::fs::read(&b.output_path).unwrap());
    check(x == y, || "sweep outputs differ".into())?;

    let mut ja = a.clone();
    ja.format = "json".parse().unwrap();
    ja.output_path = tmp_path("sweep-a.json");
    let mut jb = ja.clone();
    jb.output_path = tmp_path("sweep-b.json");
    run_sweep(&ja).map_err(|e| e.to_string())?;
    run_sweep(&jb).map_err(|e| e.to_string())?;
    check(
        std::fs::read(&ja.output_path).unwrap() == std::fs::read(&jb.output_path).unwrap(),
        || "json outputs differ".into(),
    )?;
    Ok(format!("{rows} rows, csv and json byte-identical across runs"))
}

fn main() {
    let mut results: Vec<(&str, Outcome)> = vec![
        ("C1 GHZ robustness", c1_ghz_robustness()),
        ("C2 CSS baseline", c2_css_baseline()),
        ("C3 channel validity", c3_channel_validity()),
        ("C4 variance optimizer", c4_variance_optimizer()),
        ("C5 nonnegativity", c5_nonnegativity()),
    ];
    match (run_audit_once("first"), run_audit_once("second")) {
        (Ok(first), Ok(second)) => {
            results.push(("C6 depolarization reference", c6_depolarization_reference(&first)));
            results.push(("C7 formula audit completeness", c7_audit_completeness(&first, &second)));
        }
        (Err(e), _) | (_, Err(e)) => {
            results.push(("C6 depolarization reference", Err(e.clone())));
            results.push(("C7 formula audit completeness", Err(e)));
        }
    }
    results.push(("C8 SSSD absence", c8_sssd_absence()));
    results.push(("C9 W bit-flip fixed point", c9_w_bit_flip_fixed_point()));
    results.push(("C10 determinism", c10_determinism()));

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(msg) => println!("PASS  {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    let _ = std::fs::remove_dir_all(tmp_path("x").parent().unwrap());
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
