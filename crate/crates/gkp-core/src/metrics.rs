//! Quantitative figures of merit: fidelity sweeps over the homodyne outcome,
//! displacement-error sensitivity, post-selection success probability, mean
//! fidelity, squeezing-unit conversions, and the bit-misidentification
//! probability of a finitely squeezed comb.
//!
//! Fidelities here are always measured against the envelope-converged
//! logical-0 target, so that both peak distortion (x ≠ 0) and envelope
//! truncation (small m at high squeezing) register as infidelity.

use crate::comb::{self, GaussianComb, SqueezeParams};
use crate::error::{Error, Result};
use crate::protocol::{self, ProtocolParams};
use crate::quad;
use statrs::function::erf::erfc;
use std::f64::consts::PI;

/// One fidelity-sweep sample.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub x: f64,
    pub fidelity: f64,
    /// Exact outcome density (with cross-branch terms).
    pub p_exact: f64,
    /// Diagonal-approximation density (no cross terms).
    pub p_diag: f64,
}

/// Fidelity and density as functions of the homodyne outcome.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub params: ProtocolParams,
}

/// One post-selection operating point.
#[derive(Debug, Clone, Copy)]
pub struct SelectionRow {
    pub v_up: f64,
    pub p_suc: f64,
    pub mean_f: f64,
}

/// Success probability and mean fidelity along a v_up sweep.
#[derive(Debug, Clone)]
pub struct SelectionCurve {
    pub rows: Vec<SelectionRow>,
    pub params: ProtocolParams,
}

/// Squeezing level in dB → full parameter set (σ², Δ², κ²).
pub fn squeeze_convert(s_db: f64) -> SqueezeParams {
    SqueezeParams::from_db(s_db)
}

/// Position variance σ² → squeezing level in dB.
pub fn squeeze_db(sigma2: f64) -> Result<f64> {
    Ok(SqueezeParams::from_sigma2(sigma2)?.db)
}

/// Probability of misreading the bit of a comb state whose peaks have
/// position variance σ²: the chance a zero-mean Gaussian of that variance
/// strays more than √π/2 from its peak center.
pub fn misidentify_prob(sigma2: f64) -> Result<f64> {
    if !sigma2.is_finite() || sigma2 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "variance must be positive and finite, got {sigma2}"
        )));
    }
    // P(|X| > √π/2) = erfc( (√π/2) / (σ√2) ).
    Ok(erfc(PI.sqrt() / (2.0 * std::f64::consts::SQRT_2 * sigma2.sqrt())))
}

/// Precomputed context for repeated per-outcome evaluations. Construction
/// performs all fallible validation so the per-point closures are total.
struct Evaluator {
    params: ProtocolParams,
    target: GaussianComb,
}

impl Evaluator {
    fn new(params: &ProtocolParams) -> Result<Self> {
        let target = comb::converged_target(&params.sp)?;
        // Trial evaluation surfaces any parameter problem (geometry, m cap)
        // up front; afterwards evaluation cannot fail at any finite x.
        let _ = protocol::run_analytic(params, 0.0)?;
        let _ = protocol::homodyne_density(params, 0.0)?;
        Ok(Self {
            params: *params,
            target,
        })
    }

    fn fidelity(&self, x: f64) -> f64 {
        let state = protocol::run_analytic(&self.params, x).expect("validated in new()");
        comb::comb_fidelity(&self.target, &state).expect("normalized combs")
    }

    fn density(&self, x: f64) -> f64 {
        protocol::homodyne_density(&self.params, x).expect("validated in new()")
    }
}

fn check_increasing(grid: &[f64], what: &str) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument(format!("{what} grid is empty")));
    }
    if grid.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("{what} grid has non-finite entries")));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "{what} grid must be strictly increasing"
        )));
    }
    Ok(())
}

/// Fidelity and densities over a grid of homodyne outcomes.
pub fn fidelity_curve(params: &ProtocolParams, x_grid: &[f64]) -> Result<SweepResult> {
    check_increasing(x_grid, "x")?;
    let ev = Evaluator::new(params)?;
    let rows = x_grid
        .iter()
        .map(|&x| {
            let p_diag = protocol::diagonal_density(params, x).expect("validated");
            SweepRow {
                x,
                fidelity: ev.fidelity(x),
                p_exact: ev.density(x),
                p_diag,
            }
        })
        .collect();
    Ok(SweepResult {
        rows,
        params: *params,
    })
}

/// F(x=0) as a function of an imposed displacement error δ.
pub fn delta_sensitivity(params: &ProtocolParams, delta_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_increasing(delta_grid, "delta")?;
    if delta_grid[0] < 0.0 {
        return Err(Error::InvalidArgument("delta grid must be nonnegative".into()));
    }
    let mut out = Vec::with_capacity(delta_grid.len());
    for &d in delta_grid {
        let forced = ProtocolParams::with_forced_delta(params.sp, params.m, d, params.v_up)?;
        let ev = Evaluator::new(&forced)?;
        out.push((d, ev.fidelity(0.0)));
    }
    Ok(out)
}

/// Post-selection success probability P(|x| ≤ v_up), from the exact density.
pub fn success_probability(params: &ProtocolParams, v_up: f64) -> Result<f64> {
    success_probability_with(params, v_up, false)
}

/// Success probability from the diagonal-approximation density, kept for
/// comparison with the exact value.
pub fn success_probability_diag(params: &ProtocolParams, v_up: f64) -> Result<f64> {
    success_probability_with(params, v_up, true)
}

/// Past the outermost comb peak plus many peak widths the density is zero to
/// double precision; integrating to here captures the full line.
fn comb_extent(m: usize) -> f64 {
    2.0 * m as f64 * PI.sqrt() + 15.0
}

fn success_probability_with(params: &ProtocolParams, v_up: f64, diagonal: bool) -> Result<f64> {
    if v_up.is_nan() || v_up < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "v_up must be nonnegative, got {v_up}"
        )));
    }
    let ev = Evaluator::new(params)?;
    let dens = |x: f64| {
        if diagonal {
            protocol::diagonal_density(&ev.params, x).expect("validated")
        } else {
            ev.density(x)
        }
    };
    // The density is even in x, so integrate [0, ·] and double.
    let total = 2.0 * quad::integrate(&dens, 0.0, comb_extent(params.m), 1e-10)?.value;
    if v_up == 0.0 {
        return Ok(0.0);
    }
    if v_up.is_infinite() {
        return Ok(1.0);
    }
    let accepted = 2.0 * quad::integrate(&dens, 0.0, v_up, 1e-10)?.value;
    Ok((accepted / total).clamp(0.0, 1.0))
}

/// Probability-weighted conditional mean of F over the acceptance window:
/// ∫_{−v}^{v} F(x)p(x)dx / ∫_{−v}^{v} p(x)dx.
pub fn mean_fidelity(params: &ProtocolParams, v_up: f64) -> Result<f64> {
    if !v_up.is_finite() || v_up <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "acceptance window must be positive and finite, got {v_up}"
        )));
    }
    let ev = Evaluator::new(params)?;
    let weighted = |x: f64| ev.fidelity(x) * ev.density(x);
    let dens = |x: f64| ev.density(x);
    // Even integrands: the doubling cancels in the ratio.
    let num = quad::integrate(&weighted, 0.0, v_up, 1e-12)?.value;
    let den = quad::integrate(&dens, 0.0, v_up, 1e-12)?.value;
    if den <= 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok((num / den).clamp(0.0, 1.0))
}

/// (P_suc, mean_F) along a grid of acceptance windows, accumulated interval
/// by interval so the sweep costs one pass.
pub fn selection_curve(params: &ProtocolParams, v_grid: &[f64]) -> Result<SelectionCurve> {
    check_increasing(v_grid, "v_up")?;
    if v_grid[0] <= 0.0 {
        return Err(Error::InvalidArgument("v_up grid must be positive".into()));
    }
    let ev = Evaluator::new(params)?;
    let dens = |x: f64| ev.density(x);
    let weighted = |x: f64| ev.fidelity(x) * ev.density(x);
    let total = 2.0 * quad::integrate(&dens, 0.0, comb_extent(params.m), 1e-10)?.value;
    let mut rows = Vec::with_capacity(v_grid.len());
    let mut lo = 0.0;
    let mut cum_p = 0.0;
    let mut cum_fp = 0.0;
    for &v in v_grid {
        cum_p += quad::integrate(&dens, lo, v, 1e-12)?.value;
        cum_fp += quad::integrate(&weighted, lo, v, 1e-12)?.value;
        lo = v;
        if cum_p <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        rows.push(SelectionRow {
            v_up: v,
            p_suc: (2.0 * cum_p / total).clamp(0.0, 1.0),
            mean_f: (cum_fp / cum_p).clamp(0.0, 1.0),
        });
    }
    Ok(SelectionCurve {
        rows,
        params: *params,
    })
}

/// Smallest acceptance window whose success probability reaches the target,
/// found by bisection (P_suc is continuous and nondecreasing in v_up).
pub fn find_v_for_success(params: &ProtocolParams, target: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&target) || target <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "target success probability must lie in (0, 1), got {target}"
        )));
    }
    let mut hi = 1.0;
    while success_probability(params, hi)? < target {
        hi *= 2.0;
        if hi > 64.0 {
            return Err(Error::InvalidArgument(format!(
                "success probability never reaches {target}"
            )));
        }
    }
    let mut lo = 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if success_probability(params, mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
