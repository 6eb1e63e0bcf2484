//! Acceptance gate: one test per published claim this artifact reproduces,
//! each printing a PASS/FAIL line per clause (visible with --nocapture, and
//! always visible on failure).
//!
//! Two clauses encode reference values the faithful computation measurably
//! cannot meet (see the per-test comments); they are kept at their stated
//! tolerances and fail honestly rather than being loosened.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use gkp_core::baseline::{self, BaselineParams};
use gkp_core::comb;
use gkp_core::fock;
use gkp_core::metrics;
use gkp_core::protocol::{self, ProtocolParams};

/// Collects clause outcomes; panics at the end if any clause failed.
struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn new() -> Self {
        Gate { failures: Vec::new() }
    }

    fn check(&mut self, label: &str, ok: bool, detail: String) {
        println!("{} {label}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures.push(format!("{label}: {detail}"));
        }
    }

    fn finish(self) {
        if !self.failures.is_empty() {
            panic!("{} clause(s) failed:\n  {}", self.failures.len(), self.failures.join("\n  "));
        }
    }
}

fn ideal(db: f64, m: usize) -> ProtocolParams {
    ProtocolParams::ideal(metrics::squeeze_convert(db), m, 0.0).unwrap()
}

fn central_fidelity(db: f64, m: usize) -> f64 {
    let sweep = metrics::fidelity_curve(&ideal(db, m), &[0.0]).unwrap();
    sweep.rows[0].fidelity
}

#[test]
fn central_fidelity_reference_values() {
    // m = 3, no displacement error, vanishing acceptance window.
    //
    // The computed F(0) measures only envelope truncation of the 7-peak comb
    // and sits within 2e-4 of the reference at 10 and 11 dB. At 12 dB the
    // faithful computation gives 0.9999969 against the reference 0.99938 — a
    // 6.2e-4 discrepancy, outside the stated 2e-4. The reference triple is
    // instead consistent with a 5-peak (m = 2) comb at these squeezing
    // levels; this clause is left at its stated tolerance and fails.
    let mut gate = Gate::new();
    for (db, reference) in [(10.0, 0.99998), (11.0, 0.99986), (12.0, 0.99938)] {
        let start = Instant::now();
        let f = central_fidelity(db, 3);
        let elapsed = start.elapsed();
        let diff = (f - reference).abs();
        gate.check(
            &format!("central fidelity {db} dB"),
            diff <= 2e-4 && elapsed.as_secs_f64() < 1.0,
            format!(
                "F(0) = {f:.9}, reference {reference}, |diff| = {diff:.3e} (tol 2e-4), {} ms",
                elapsed.as_millis()
            ),
        );
    }
    gate.finish();
}

#[test]
fn headline_mean_fidelity_at_five_percent_acceptance() {
    // m = 3, 10 dB: at the window giving 5 % success probability, the mean
    // fidelity over accepted outcomes (exact outcome density) is 0.9998(5).
    let mut gate = Gate::new();
    let p = ideal(10.0, 3);
    let v_star = metrics::find_v_for_success(&p, 0.05).unwrap();
    let p_suc = metrics::success_probability(&p, v_star).unwrap();
    let p_suc_diag = metrics::success_probability_diag(&p, v_star).unwrap();
    let mean_f = metrics::mean_fidelity(&p, v_star).unwrap();
    gate.check(
        "operating point",
        (p_suc - 0.05).abs() <= 0.005 && (v_star - 0.16).abs() <= 0.05,
        format!(
            "v* = {v_star:.4}, P_suc = {p_suc:.5} (diagonal-density variant {p_suc_diag:.5})"
        ),
    );
    gate.check(
        "mean fidelity",
        (mean_f - 0.9998).abs() <= 5e-4,
        format!("mean_F(v*) = {mean_f:.6}, reference 0.9998 ± 5e-4"),
    );
    gate.finish();
}

#[test]
fn fidelity_stability_over_central_window() {
    // m = 2: flat to 0.005 over |x| ≤ 0.1 for 7–10 dB, and ≥ 0.99 out to
    // |x| ≤ 0.2 at 9 dB.
    let mut gate = Gate::new();
    let grid_01: Vec<f64> = (-10..=10).map(|i| i as f64 * 0.01).collect();
    for db in [7.0, 8.0, 9.0, 10.0] {
        let sweep = metrics::fidelity_curve(&ideal(db, 2), &grid_01).unwrap();
        let max = sweep.rows.iter().map(|r| r.fidelity).fold(f64::MIN, f64::max);
        let min = sweep.rows.iter().map(|r| r.fidelity).fold(f64::MAX, f64::min);
        gate.check(
            &format!("stability {db} dB"),
            max - min <= 0.005,
            format!("max-min over |x| ≤ 0.1 = {:.3e} (tol 5e-3)", max - min),
        );
    }
    let grid_02: Vec<f64> = (-20..=20).map(|i| i as f64 * 0.01).collect();
    let sweep = metrics::fidelity_curve(&ideal(9.0, 2), &grid_02).unwrap();
    let min = sweep.rows.iter().map(|r| r.fidelity).fold(f64::MAX, f64::min);
    gate.check(
        "9 dB wide window",
        min >= 0.99,
        format!("min F over |x| ≤ 0.2 = {min:.5} (floor 0.99)"),
    );
    gate.finish();
}

#[test]
fn displacement_error_tolerance() {
    // m = 2, 7–11 dB: a forced displacement error of 0.02 costs at most
    // 0.015 of central fidelity.
    let mut gate = Gate::new();
    for db in [7.0, 8.0, 9.0, 10.0, 11.0] {
        let rows = metrics::delta_sensitivity(&ideal(db, 2), &[0.0, 0.02]).unwrap();
        let drop = rows[0].1 - rows[1].1;
        gate.check(
            &format!("delta sensitivity {db} dB"),
            rows[1].1 >= rows[0].1 - 0.015,
            format!("F(0, δ=0.02) − F(0, 0) = {:.3e} (allowed ≥ -1.5e-2)", -drop),
        );
    }
    gate.finish();
}

#[test]
fn pump_amplitude_threshold() {
    // Chord-approximation residual δ(β) at γ = 4√π, m = 2.
    //
    // δ(314) = 0.0200108: the reference pump amplitude 314 appears to be a
    // round-down of the true δ = 0.02 threshold at β = 314.169, so the first
    // clause misses by 1.1e-5 and is left failing at its stated bound. The
    // bracketing clause below it passes.
    let mut gate = Gate::new();
    let gamma = 4.0 * std::f64::consts::PI.sqrt();
    let at_314 = protocol::delta_error(314.0, gamma, 2).unwrap();
    gate.check(
        "threshold pump amplitude",
        at_314 <= 0.02,
        format!("delta_error(314) = {at_314:.7} (bound 0.02)"),
    );
    let below = protocol::delta_error(313.0 * 0.95, gamma, 2).unwrap();
    gate.check(
        "bracket below threshold",
        below > 0.02 * 0.9,
        format!("delta_error(297.35) = {below:.7} (must exceed 0.018)"),
    );
    gate.finish();
}

#[test]
fn construction_cross_validation() {
    // The anti-drift triangle: closed form vs branch evolution over the full
    // grid at ideal placement, then branch evolution vs photon-number
    // simulation at toy scale with honest finite-pump geometry.
    let mut gate = Gate::new();
    let mut worst = (0.0f64, String::new());
    for m in [1usize, 2, 3] {
        for db in [7.0, 10.0, 12.0] {
            let params = ideal(db, m);
            for x in [0.0, 0.05, -0.05, 0.15, -0.15] {
                let analytic = protocol::run_analytic(&params, x).unwrap();
                let branch = protocol::run_branch_oracle(&params, x).unwrap();
                let infid = (1.0 - comb::comb_fidelity(&analytic, &branch).unwrap()).max(0.0);
                if infid > worst.0 {
                    worst = (infid, format!("m={m}, {db} dB, x={x}"));
                }
            }
        }
    }
    gate.check(
        "closed form vs branch evolution",
        worst.0 <= 1e-9,
        format!("worst infidelity {:.3e} at {} (tol 1e-9)", worst.0, worst.1),
    );

    let toy = ProtocolParams::exact_with_gamma(metrics::squeeze_convert(7.0), 1, 3.0, 1.5, 0.0)
        .unwrap();
    let mut worst_toy = 0.0f64;
    for x in [0.0, 0.15, -0.15] {
        let branch = protocol::run_branch_oracle(&toy, x).unwrap();
        let branch_fock = comb::to_fock(&branch, 64).unwrap();
        let direct = protocol::run_fock_oracle(&toy, x, 64).unwrap();
        let infid = (1.0 - fock::fock_fidelity(&branch_fock, &direct).unwrap()).max(0.0);
        worst_toy = worst_toy.max(infid);
    }
    gate.check(
        "branch evolution vs photon-number simulation",
        worst_toy <= 1e-6,
        format!("worst infidelity {worst_toy:.3e} at toy scale (tol 1e-6)"),
    );
    gate.finish();
}

#[test]
fn output_peak_envelope() {
    // At x = 0 with no displacement error the output peak magnitudes follow
    // the Gaussian envelope e^{-2πκ²u²} of the comb design.
    let mut gate = Gate::new();
    for m in [2usize, 3] {
        for db in [7.0, 8.0, 9.0, 10.0, 11.0, 12.0] {
            let params = ideal(db, m);
            let state = protocol::run_branch_oracle(&params, 0.0).unwrap();
            let kappa2 = params.sp.kappa2();
            let center_mag = state.peaks()[m].weight.norm();
            let mut worst = 0.0f64;
            for (t, peak) in state.peaks().iter().enumerate() {
                let u = t as f64 - m as f64;
                let expected = (-2.0 * std::f64::consts::PI * kappa2 * u * u).exp();
                let rel = (peak.weight.norm() / center_mag / expected - 1.0).abs();
                worst = worst.max(rel);
            }
            gate.check(
                &format!("envelope m={m} {db} dB"),
                worst <= 1e-9,
                format!("worst relative deviation {worst:.3e} (tol 1e-9)"),
            );
        }
    }
    gate.finish();
}

#[test]
fn misidentification_window() {
    // Peak-variance bit-readout error: ~0.01 % at 10 dB, ~1 % at 6.2 dB.
    let mut gate = Gate::new();
    let p10 = metrics::misidentify_prob(metrics::squeeze_convert(10.0).sigma2).unwrap();
    gate.check(
        "10 dB misidentification",
        (5e-5..=1.5e-4).contains(&p10),
        format!("P = {p10:.3e} (window [5e-5, 1.5e-4])"),
    );
    let p62 = metrics::misidentify_prob(metrics::squeeze_convert(6.2).sigma2).unwrap();
    gate.check(
        "6.2 dB misidentification",
        (0.5e-2..=2e-2).contains(&p62),
        format!("P = {p62:.3e} (window [0.5e-2, 2e-2])"),
    );
    gate.finish();
}

#[test]
fn baseline_spacing_mismatch() {
    // The coherent-ancilla scheme at τ = α = 2 produces unequal q/p comb
    // periods, both far from the √π grid; its two profile constructions are
    // a Fourier pair.
    let mut gate = Gate::new();
    let params = BaselineParams::new(2.0, 2.0, 0.0).unwrap();
    let q_grid = baseline::default_q_grid();
    let p_grid = baseline::default_p_grid(&params);
    let phi_q = baseline::conventional_wavefn_q(&params, &q_grid).unwrap();
    let phi_p = baseline::conventional_wavefn_p(&params, &p_grid).unwrap();
    let dens_q: Vec<f64> = phi_q.iter().map(|v| v.norm_sqr()).collect();
    let dens_p: Vec<f64> = phi_p.iter().map(|v| v.norm_sqr()).collect();
    let q_spacing = baseline::peak_spacing(&dens_q, &q_grid).unwrap();
    let p_spacing = baseline::peak_spacing(&dens_p, &p_grid).unwrap();
    let root_pi = std::f64::consts::PI.sqrt();
    gate.check(
        "periods unequal",
        (q_spacing - p_spacing).abs() > 1e-3,
        format!("q period {q_spacing:.3}, p period {p_spacing:.3}"),
    );
    for (name, s) in [("q", q_spacing), ("p", p_spacing)] {
        gate.check(
            &format!("{name} period far from sqrt(pi)"),
            (s - root_pi).abs() / root_pi > 0.5,
            format!("|{s:.3} − √π| / √π = {:.2}", (s - root_pi).abs() / root_pi),
        );
    }
    let residual = baseline::fourier_residual(&params, &q_grid, &p_grid).unwrap();
    gate.check(
        "Fourier pair consistency",
        residual <= 1e-6,
        format!("L² residual {residual:.3e} (tol 1e-6)"),
    );
    gate.finish();
}

#[test]
fn deterministic_output() {
    // Every command, run twice each with --jobs 1 and --jobs 8, produces
    // byte-identical stdout and files.
    let mut gate = Gate::new();
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, Vec<&str>, Vec<&str>); 5] = [
        ("fig3", vec!["fig3"], vec!["fig3.csv"]),
        ("fig4", vec!["fig4"], vec!["fig4.csv"]),
        ("meanfid", vec!["meanfid"], vec!["meanfid.csv"]),
        (
            "oracle-check",
            vec!["oracle-check", "--out", "report.txt"],
            vec!["report.txt"],
        ),
        (
            "baseline",
            vec!["baseline"],
            vec!["baseline.csv", "baseline.profiles.csv"],
        ),
    ];
    for (name, args, files) in &cases {
        let mut snapshots: Vec<(Vec<u8>, Vec<Vec<u8>>)> = Vec::new();
        for jobs in ["1", "8", "1", "8"] {
            let output = Command::new(env!("CARGO_BIN_EXE_gkp"))
                .current_dir(dir.path())
                .args(args.iter())
                .args(["--jobs", jobs])
                .output()
                .expect("spawn gkp");
            assert!(
                output.status.success(),
                "{name} --jobs {jobs} failed: {}",
                String::from_utf8_lossy(&output.stderr)
            );
            let file_bytes: Vec<Vec<u8>> = files
                .iter()
                .map(|f| std::fs::read(dir.path().join(f)).expect("read output file"))
                .collect();
            snapshots.push((output.stdout, file_bytes));
        }
        let identical = snapshots.iter().all(|s| *s == snapshots[0]);
        gate.check(
            &format!("{name} determinism"),
            identical,
            format!("4 runs across --jobs 1/8, {} file(s) compared", files.len()),
        );
    }
    // The sidecar really was exercised.
    assert!(Path::new(&dir.path().join("baseline.profiles.csv")).exists());
    gate.finish();
}
