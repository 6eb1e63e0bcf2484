//! The five subcommands: three sweep tables, the cross-validation report,
//! and the coherent-ancilla baseline.

use std::path::{Path, PathBuf};

use gkp_core::baseline::{self, BaselineParams};
use gkp_core::comb;
use gkp_core::error::Error;
use gkp_core::fock;
use gkp_core::metrics;
use gkp_core::protocol::{self, DeltaMode, ProtocolParams};
use rayon::prelude::*;

use crate::config::{self, ExperimentConfig};
use crate::output::{self, Cell};
use crate::CliError;

fn ideal_params(db: f64, m: usize) -> Result<ProtocolParams, CliError> {
    ProtocolParams::ideal(metrics::squeeze_convert(db), m, 0.0).map_err(CliError::from)
}

fn check_levels(levels: &[f64], what: &str) -> Result<(), CliError> {
    if levels.is_empty() {
        return Err(CliError::Config(format!("{what}.levels_db must not be empty")));
    }
    if levels.iter().any(|v| !v.is_finite()) {
        return Err(CliError::Config(format!("{what}.levels_db has non-finite entries")));
    }
    Ok(())
}

/// Fidelity and outcome densities over the homodyne-outcome grid, one curve
/// per squeezing level.
pub fn fig3(cfg: &ExperimentConfig, out: &Path) -> Result<(), CliError> {
    let c = &cfg.fig3;
    check_levels(&c.levels_db, "fig3")?;
    let grid = config::uniform_grid(c.x_min, c.x_max, c.x_step, "fig3 x grid")?;
    let per_level: Vec<Result<Vec<Vec<Cell>>, CliError>> = c
        .levels_db
        .par_iter()
        .map(|&db| {
            let params = ideal_params(db, c.m)?;
            let sweep = metrics::fidelity_curve(&params, &grid).map_err(CliError::from)?;
            Ok(sweep
                .rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::from(db),
                        Cell::from(c.m),
                        Cell::from(r.x),
                        Cell::from(r.fidelity),
                        Cell::from(r.p_exact),
                        Cell::from(r.p_diag),
                    ]
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for level_rows in per_level {
        rows.extend(level_rows?);
    }
    let doc = output::render_csv(
        &config::section_hash(c)?,
        &["s_db", "m", "x", "F", "p_exact", "p_paper"],
        &rows,
    );
    output::write_file(out, &doc)?;
    println!("wrote {} ({} rows)", out.display(), rows.len());
    Ok(())
}

/// Central fidelity as a function of a forced momentum displacement error.
pub fn fig4(cfg: &ExperimentConfig, out: &Path) -> Result<(), CliError> {
    let c = &cfg.fig4;
    check_levels(&c.levels_db, "fig4")?;
    let grid = config::uniform_grid(c.delta_min, c.delta_max, c.delta_step, "fig4 delta grid")?;
    let per_level: Vec<Result<Vec<Vec<Cell>>, CliError>> = c
        .levels_db
        .par_iter()
        .map(|&db| {
            let params = ideal_params(db, c.m)?;
            let rows = metrics::delta_sensitivity(&params, &grid).map_err(CliError::from)?;
            Ok(rows
                .iter()
                .map(|&(delta, f)| {
                    vec![
                        Cell::from(db),
                        Cell::from(c.m),
                        Cell::from(delta),
                        Cell::from(f),
                    ]
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for level_rows in per_level {
        rows.extend(level_rows?);
    }
    let doc = output::render_csv(
        &config::section_hash(c)?,
        &["s_db", "m", "delta", "F_at_x0"],
        &rows,
    );
    output::write_file(out, &doc)?;
    println!("wrote {} ({} rows)", out.display(), rows.len());
    Ok(())
}

/// Success probability and mean output fidelity over the acceptance-window
/// grid.
pub fn meanfid(cfg: &ExperimentConfig, out: &Path) -> Result<(), CliError> {
    let c = &cfg.meanfid;
    check_levels(&c.levels_db, "meanfid")?;
    let grid = config::uniform_grid(c.v_min, c.v_max, c.v_step, "meanfid v grid")?;
    let per_level: Vec<Result<Vec<Vec<Cell>>, CliError>> = c
        .levels_db
        .par_iter()
        .map(|&db| {
            let params = ideal_params(db, c.m)?;
            let curve = metrics::selection_curve(&params, &grid).map_err(CliError::from)?;
            Ok(curve
                .rows
                .iter()
                .map(|r| {
                    vec![
                        Cell::from(db),
                        Cell::from(c.m),
                        Cell::from(r.v_up),
                        Cell::from(r.p_suc),
                        Cell::from(r.mean_f),
                    ]
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::new();
    for level_rows in per_level {
        rows.extend(level_rows?);
    }
    let doc = output::render_csv(
        &config::section_hash(c)?,
        &["s_db", "m", "v_up", "P_suc", "mean_F"],
        &rows,
    );
    output::write_file(out, &doc)?;
    println!("wrote {} ({} rows)", out.display(), rows.len());
    Ok(())
}

/// Cross-validate the closed-form state, the branch-evolution construction,
/// and the truncated photon-number simulation against each other. Exit code
/// 0 only if every comparison is inside its tolerance.
pub fn oracle_check(
    cfg: &ExperimentConfig,
    out: Option<&Path>,
    wrong_hermite: bool,
) -> Result<(), CliError> {
    let c = &cfg.oracle;
    check_levels(&c.levels_db, "oracle")?;
    if c.m_values.is_empty() || c.x_values.is_empty() {
        return Err(CliError::Config(
            "oracle.m_values and oracle.x_values must not be empty".into(),
        ));
    }
    let mut report = String::new();
    let mut all_ok = true;
    report.push_str("cross-validation report\n");
    if wrong_hermite {
        report.push_str("  (negative control: per-peak orders deliberately flipped)\n");
    }

    // [1] Closed form vs branch evolution at ideal placement.
    let mut worst = (0.0f64, 0usize, 0.0f64, 0.0f64); // (infidelity, m, db, x)
    for &m in &c.m_values {
        for &db in &c.levels_db {
            let params = ideal_params(db, m)?;
            let sp = params.sp;
            for &x in &c.x_values {
                let analytic = if wrong_hermite {
                    comb::generated_comb_flipped_orders(m, &sp, x, 0.0)
                } else {
                    protocol::run_analytic(&params, x)
                }
                .map_err(CliError::from)?;
                let branch = protocol::run_branch_oracle(&params, x).map_err(CliError::from)?;
                let infid =
                    (1.0 - comb::comb_fidelity(&analytic, &branch).map_err(CliError::from)?).max(0.0);
                if infid > worst.0 {
                    worst = (infid, m, db, x);
                }
            }
        }
    }
    let ok1 = worst.0 <= c.analytic_branch_tol;
    all_ok &= ok1;
    report.push_str("  [1] closed form vs branch evolution (ideal placement)\n");
    report.push_str(&format!(
        "      grid: m in {:?}, s_db in {:?}, x in {:?}\n",
        c.m_values, c.levels_db, c.x_values
    ));
    report.push_str(&format!(
        "      worst infidelity {:.3e} at m={}, {} dB, x={} (tolerance {:.1e}) -> {}\n",
        worst.0,
        worst.1,
        worst.2,
        worst.3,
        c.analytic_branch_tol,
        if ok1 { "OK" } else { "FAIL" }
    ));

    // [2] Branch evolution vs photon-number simulation at toy scale, with
    // the honest finite-pump geometry.
    let toy = ProtocolParams::exact_with_gamma(
        metrics::squeeze_convert(c.toy_db),
        1,
        c.toy_beta,
        c.toy_gamma,
        0.0,
    )
    .map_err(CliError::from)?;
    let mut worst_toy = (0.0f64, 0.0f64);
    for &x in &c.x_values {
        let branch = protocol::run_branch_oracle(&toy, x).map_err(CliError::from)?;
        let branch_fock = comb::to_fock(&branch, c.toy_dim).map_err(CliError::from)?;
        let direct = protocol::run_fock_oracle(&toy, x, c.toy_dim).map_err(CliError::from)?;
        let infid =
            (1.0 - fock::fock_fidelity(&branch_fock, &direct).map_err(CliError::from)?).max(0.0);
        if infid > worst_toy.0 {
            worst_toy = (infid, x);
        }
    }
    let ok2 = worst_toy.0 <= c.branch_fock_tol;
    all_ok &= ok2;
    report.push_str("  [2] branch evolution vs photon-number simulation (toy scale)\n");
    report.push_str(&format!(
        "      m=1, {} dB, beta={}, gamma={}, dim={}, x in {:?}\n",
        c.toy_db, c.toy_beta, c.toy_gamma, c.toy_dim, c.x_values
    ));
    report.push_str(&format!(
        "      worst infidelity {:.3e} at x={} (tolerance {:.1e}) -> {}\n",
        worst_toy.0,
        worst_toy.1,
        c.branch_fock_tol,
        if ok2 { "OK" } else { "FAIL" }
    ));

    // [3] Degenerate point: with no pump the two Kerr media cancel exactly,
    // so the heralded signal must still be the input squeezed vacuum.
    let sp = metrics::squeeze_convert(c.toy_db);
    let degenerate = ProtocolParams {
        sp,
        m: 1,
        beta: 0.0,
        gamma: 0.0,
        theta: 0.4,
        v_up: 0.0,
        delta_mode: DeltaMode::ForcedZero,
    };
    let dim = c.toy_dim.max(48);
    let heralded = protocol::run_fock_oracle(&degenerate, 0.3, dim).map_err(CliError::from)?;
    let reference = fock::squeezed_vacuum(sp.squeeze_r(), dim).map_err(CliError::from)?;
    let infid3 =
        (1.0 - fock::fock_fidelity(&heralded, &reference).map_err(CliError::from)?).max(0.0);
    let ok3 = infid3 <= 1e-9;
    all_ok &= ok3;
    report.push_str("  [3] no-pump disentanglement (beta=0, theta=0.4)\n");
    report.push_str(&format!(
        "      infidelity vs squeezed vacuum {:.3e} (tolerance 1.0e-9) -> {}\n",
        infid3,
        if ok3 { "OK" } else { "FAIL" }
    ));

    report.push_str(if all_ok { "PASS\n" } else { "FAIL\n" });
    print!("{report}");
    if let Some(path) = out {
        output::write_file(path, &report)?;
    }
    if all_ok {
        Ok(())
    } else {
        Err(CliError::Numeric(
            "oracle cross-validation failed; see report above".into(),
        ))
    }
}

/// Coherent-ancilla comparison: comb spacings to the main table, sampled
/// density profiles to a `.profiles.csv` sidecar.
pub fn baseline(cfg: &ExperimentConfig, out: &Path) -> Result<(), CliError> {
    let c = &cfg.baseline;
    let params = BaselineParams::new(c.alpha, c.tau, c.x).map_err(CliError::from)?;
    let q_grid = baseline::default_q_grid();
    let p_grid = baseline::default_p_grid(&params);
    let phi_q = baseline::conventional_wavefn_q(&params, &q_grid).map_err(CliError::from)?;
    let phi_p = baseline::conventional_wavefn_p(&params, &p_grid).map_err(CliError::from)?;
    let dens_q: Vec<f64> = phi_q.iter().map(|v| v.norm_sqr()).collect();
    let dens_p: Vec<f64> = phi_p.iter().map(|v| v.norm_sqr()).collect();

    // A comb that collapses to one peak is reported, not an error.
    let spacing_cell = |r: Result<f64, Error>| -> Result<Cell, CliError> {
        match r {
            Ok(s) => Ok(Cell::from(s)),
            Err(Error::InsufficientPeaks { .. }) => Ok(Cell::from("single_peak")),
            Err(e) => Err(CliError::from(e)),
        }
    };
    let q_spacing = spacing_cell(baseline::peak_spacing(&dens_q, &q_grid))?;
    let p_spacing = spacing_cell(baseline::peak_spacing(&dens_p, &p_grid))?;

    let hash = config::section_hash(c)?;
    let row = vec![
        Cell::from(c.tau),
        Cell::from(c.alpha),
        Cell::from(c.x),
        q_spacing,
        p_spacing,
    ];
    let doc = output::render_csv(
        &hash,
        &["tau", "alpha", "x", "q_spacing", "p_spacing"],
        &[row],
    );
    output::write_file(out, &doc)?;

    let mut profile_rows = Vec::with_capacity(q_grid.len() + p_grid.len());
    for (&coord, &d) in q_grid.iter().zip(dens_q.iter()) {
        profile_rows.push(vec![Cell::from("q"), Cell::from(coord), Cell::from(d)]);
    }
    for (&coord, &d) in p_grid.iter().zip(dens_p.iter()) {
        profile_rows.push(vec![Cell::from("p"), Cell::from(coord), Cell::from(d)]);
    }
    let sidecar = sidecar_path(out);
    let profile_doc = output::render_csv(&hash, &["kind", "coord", "density"], &profile_rows);
    output::write_file(&sidecar, &profile_doc)?;
    println!(
        "wrote {} and {} ({} profile rows)",
        out.display(),
        sidecar.display(),
        profile_rows.len()
    );
    Ok(())
}

/// `foo.csv` → `foo.profiles.csv` alongside it.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "baseline".to_string());
    out.with_file_name(format!("{stem}.profiles.csv"))
}
