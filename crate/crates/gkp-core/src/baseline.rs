//! Comb generation by repeated weak cross-Kerr pumping with a coherent
//! ancilla. Homodyning the ancilla of
//! e^{iχt n̂_a n̂_b} |α⟩_a |β⟩_b at outcome x leaves the signal in
//! Σ_n η_n(α, x) |β e^{−inχt}⟩ — for small χt a train of displaced peaks
//! with repetition parameter τ, whose position-space profile is
//! φ_q(q) ∝ Σ_n η_n e^{−q²/2} e^{iπnτq}.
//!
//! The interest here is diagnostic: the peak spacings this scheme produces
//! are fixed by τ and do not land on the √π grid a logical comb needs.

use crate::error::{Error, Result};
use crate::hermite;
use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

/// Cumulative Poisson weight allowed beyond the series cutoff.
const SERIES_TAIL: f64 = 1e-12;

/// Parameters of the coherent-ancilla comb scheme.
#[derive(Debug, Clone, Copy)]
pub struct BaselineParams {
    /// Ancilla coherent amplitude (real, positive).
    pub alpha: f64,
    /// Repetition parameter: successive photon-number branches are displaced
    /// by πτ in momentum.
    pub tau: f64,
    /// Homodyne outcome on the ancilla.
    pub x: f64,
    /// Series cutoff: photon numbers 0..=n_max are kept.
    pub n_max: usize,
}

impl BaselineParams {
    /// Chooses the cutoff so the neglected Poisson(α²) weight is below 1e−12.
    pub fn new(alpha: f64, tau: f64, x: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "ancilla amplitude must be positive and finite, got {alpha}"
            )));
        }
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "repetition parameter must be nonnegative and finite, got {tau}"
            )));
        }
        if !x.is_finite() {
            return Err(Error::NonFinite("homodyne outcome".into()));
        }
        let lambda = alpha * alpha;
        let mut term = (-lambda).exp();
        let mut cdf = term;
        let mut n = 0usize;
        while 1.0 - cdf >= SERIES_TAIL {
            n += 1;
            if n > hermite::MAX_RAW_ORDER {
                return Err(Error::UnsupportedOrder {
                    n,
                    max: hermite::MAX_RAW_ORDER,
                });
            }
            term *= lambda / n as f64;
            cdf += term;
        }
        Ok(Self {
            alpha,
            tau,
            x,
            n_max: n,
        })
    }
}

/// Branch coefficient η_n(α, x) = α^n H_n(x) / (2^{n/2} n!) · e^{(α²+x²)/2},
/// evaluated in log space so the factorial never overflows.
pub fn eta_n(alpha: f64, x: f64, n: usize) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "ancilla amplitude must be positive and finite, got {alpha}"
        )));
    }
    let h = hermite::hermite_raw(n, x)?;
    let ln_scale = n as f64 * alpha.ln() - 0.5 * n as f64 * std::f64::consts::LN_2
        - ln_gamma(n as f64 + 1.0)
        + 0.5 * (alpha * alpha + x * x);
    Ok(h * ln_scale.exp())
}

fn grid_step(grid: &[f64], what: &str) -> Result<f64> {
    if grid.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "{what} grid needs at least 3 points"
        )));
    }
    let h = grid[1] - grid[0];
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "{what} grid must be strictly increasing"
        )));
    }
    for w in grid.windows(2) {
        if (w[1] - w[0] - h).abs() > 1e-9 * h.max(1.0) {
            return Err(Error::InvalidArgument(format!("{what} grid must be uniform")));
        }
    }
    Ok(h)
}

fn normalize_on_grid(values: &mut [Complex64], step: f64) -> Result<()> {
    let norm2: f64 = values.iter().map(|c| c.norm_sqr()).sum::<f64>() * step;
    if norm2 <= 0.0 {
        return Err(Error::ZeroNorm);
    }
    let scale = norm2.sqrt().recip();
    for v in values.iter_mut() {
        *v *= scale;
    }
    Ok(())
}

/// Position-space profile Σ_n η_n e^{−q²/2} e^{iπnτq}, grid-normalized.
pub fn conventional_wavefn_q(params: &BaselineParams, q_grid: &[f64]) -> Result<Vec<Complex64>> {
    let h = grid_step(q_grid, "q")?;
    let etas = all_etas(params)?;
    let mut out = Vec::with_capacity(q_grid.len());
    for &q in q_grid {
        let envelope = (-0.5 * q * q).exp();
        let mut sum = Complex64::new(0.0, 0.0);
        for (n, &eta) in etas.iter().enumerate() {
            sum += eta * Complex64::from_polar(1.0, PI * params.tau * n as f64 * q);
        }
        out.push(envelope * sum);
    }
    normalize_on_grid(&mut out, h)?;
    Ok(out)
}

/// Momentum-space profile Σ_n η_n e^{−(p−πnτ)²/2}, grid-normalized.
pub fn conventional_wavefn_p(params: &BaselineParams, p_grid: &[f64]) -> Result<Vec<Complex64>> {
    let h = grid_step(p_grid, "p")?;
    let etas = all_etas(params)?;
    let mut out = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        let mut sum = 0.0;
        for (n, &eta) in etas.iter().enumerate() {
            let d = p - PI * params.tau * n as f64;
            sum += eta * (-0.5 * d * d).exp();
        }
        out.push(Complex64::new(sum, 0.0));
    }
    normalize_on_grid(&mut out, h)?;
    Ok(out)
}

fn all_etas(params: &BaselineParams) -> Result<Vec<f64>> {
    (0..=params.n_max)
        .map(|n| eta_n(params.alpha, params.x, n))
        .collect()
}

/// L² distance between the Fourier transform of the position profile and the
/// directly constructed momentum profile, on a ≥ 0.1-step decimation of the
/// momentum grid. The two are an exact transform pair analytically, so this
/// measures only discretization error and validates both constructions.
pub fn fourier_residual(params: &BaselineParams, q_grid: &[f64], p_grid: &[f64]) -> Result<f64> {
    let hq = grid_step(q_grid, "q")?;
    let hp = grid_step(p_grid, "p")?;
    let phi_q = conventional_wavefn_q(params, q_grid)?;
    let phi_p = conventional_wavefn_p(params, p_grid)?;
    let stride = (0.1 / hp).ceil().max(1.0) as usize;
    let scale = hq / (2.0 * PI).sqrt();
    let mut resid2 = 0.0;
    let mut idx = 0;
    while idx < p_grid.len() {
        let p = p_grid[idx];
        // ψ̃(p) = (2π)^{−1/2} ∫ φ_q(q) e^{−ipq} dq, rectangle rule.
        let mut ft = Complex64::new(0.0, 0.0);
        for (&q, &v) in q_grid.iter().zip(phi_q.iter()) {
            ft += v * Complex64::from_polar(1.0, -p * q);
        }
        ft *= scale;
        resid2 += (ft - phi_p[idx]).norm_sqr() * (hp * stride as f64);
        idx += stride;
    }
    Ok(resid2.sqrt())
}

/// Median spacing between local maxima of a sampled density that rise above
/// 10 % of the global maximum. Fewer than two such peaks is an error.
pub fn peak_spacing(density: &[f64], grid: &[f64]) -> Result<f64> {
    if density.len() != grid.len() {
        return Err(Error::ShapeMismatch(format!(
            "density has {} samples but grid has {}",
            density.len(),
            grid.len()
        )));
    }
    grid_step(grid, "peak-search")?;
    let max = density.iter().cloned().fold(f64::MIN, f64::max);
    if !(max > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let floor = 0.1 * max;
    let mut peaks = Vec::new();
    for i in 1..density.len() - 1 {
        if density[i] > density[i - 1] && density[i] >= density[i + 1] && density[i] >= floor {
            peaks.push(grid[i]);
        }
    }
    if peaks.len() < 2 {
        return Err(Error::InsufficientPeaks { found: peaks.len() });
    }
    let mut gaps: Vec<f64> = peaks.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = gaps.len() / 2;
    Ok(if gaps.len() % 2 == 1 {
        gaps[mid]
    } else {
        0.5 * (gaps[mid - 1] + gaps[mid])
    })
}

/// Standard position grid: [−9, 9] in steps of 0.01.
pub fn default_q_grid() -> Vec<f64> {
    (0..=1800).map(|i| -9.0 + 0.01 * i as f64).collect()
}

/// Standard momentum grid: [−8, πτ·n_max + 8] in steps of 0.1, covering every
/// populated branch with room for its Gaussian tails.
pub fn default_p_grid(params: &BaselineParams) -> Vec<f64> {
    let lower = -8.0;
    let upper = PI * params.tau * params.n_max as f64 + 8.0;
    let n = ((upper - lower) / 0.1).ceil() as usize;
    (0..=n).map(|i| lower + 0.1 * i as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::{self, SqueezeParams};
    use crate::quad;
    use approx::assert_relative_eq;

    fn reference() -> BaselineParams {
        BaselineParams::new(2.0, 2.0, 0.0).unwrap()
    }

    #[test]
    fn eta_low_orders_match_closed_forms() {
        // n = 0: H_0 = 1 and every n-dependent factor drops out.
        let e0 = eta_n(2.0, 0.3, 0).unwrap();
        assert_relative_eq!(e0, (0.5f64 * (4.0 + 0.09)).exp(), max_relative = 1e-13);
        // Odd orders vanish at x = 0.
        assert_eq!(eta_n(2.0, 0.0, 1).unwrap(), 0.0);
        assert_eq!(eta_n(2.0, 0.0, 5).unwrap(), 0.0);
        // n = 5 against the explicit polynomial H_5 = 32x⁵ − 160x³ + 120x.
        let x: f64 = 0.4;
        let h5 = 32.0 * x.powi(5) - 160.0 * x.powi(3) + 120.0 * x;
        let direct = 2.0f64.powi(5) * h5 / (2.0f64.powf(2.5) * 120.0)
            * (0.5 * (4.0 + x * x)).exp();
        assert_relative_eq!(eta_n(2.0, x, 5).unwrap(), direct, max_relative = 1e-12);
    }

    #[test]
    fn cutoff_captures_poisson_mass() {
        let p = reference();
        assert!(p.n_max >= 20, "n_max = {}", p.n_max);
        // Kept weight covers all but < 1e−12, and the cutoff is minimal.
        let lambda = 4.0;
        let weight_through = |k: usize| -> f64 {
            let mut term = (-lambda as f64).exp();
            let mut cdf = term;
            for n in 1..=k {
                term *= lambda / n as f64;
                cdf += term;
            }
            cdf
        };
        assert!(1.0 - weight_through(p.n_max) < 1e-12);
        assert!(1.0 - weight_through(p.n_max - 1) >= 1e-12);
    }

    #[test]
    fn profiles_are_grid_normalized() {
        let p = reference();
        let qg = default_q_grid();
        let pg = default_p_grid(&p);
        let fq = conventional_wavefn_q(&p, &qg).unwrap();
        let fp = conventional_wavefn_p(&p, &pg).unwrap();
        let nq: f64 = fq.iter().map(|c| c.norm_sqr()).sum::<f64>() * 0.01;
        let np: f64 = fp.iter().map(|c| c.norm_sqr()).sum::<f64>() * 0.1;
        assert!((nq - 1.0).abs() <= 1e-8, "q norm {nq}");
        assert!((np - 1.0).abs() <= 1e-8, "p norm {np}");
    }

    #[test]
    fn position_peaks_sit_on_the_quarter_grid() {
        let p = reference();
        let qg = default_q_grid();
        let fq = conventional_wavefn_q(&p, &qg).unwrap();
        let dens: Vec<f64> = fq.iter().map(|c| c.norm_sqr()).collect();
        let spacing = peak_spacing(&dens, &qg).unwrap();
        assert!((spacing - 0.5).abs() <= 0.011, "q spacing {spacing}");
        // The brightest peaks sit at ±1/4, not at the origin.
        let imax = dens
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert!((qg[imax].abs() - 0.25).abs() <= 0.011, "peak at {}", qg[imax]);
    }

    #[test]
    fn momentum_peaks_skip_odd_branches_at_central_outcome() {
        // At x = 0 the odd-n coefficients vanish, so the populated branches
        // sit at even multiples of πτ: spacing 2πτ = 4π here.
        let p = reference();
        let pg = default_p_grid(&p);
        let fp = conventional_wavefn_p(&p, &pg).unwrap();
        let dens: Vec<f64> = fp.iter().map(|c| c.norm_sqr()).collect();
        let spacing = peak_spacing(&dens, &pg).unwrap();
        assert!((spacing - 4.0 * PI).abs() <= 0.11, "p spacing {spacing}");
    }

    #[test]
    fn neither_spacing_is_anywhere_near_sqrt_pi() {
        let root_pi = PI.sqrt();
        for s in [0.5, 4.0 * PI] {
            assert!((s - root_pi).abs() / root_pi > 0.5, "spacing {s}");
        }
    }

    #[test]
    fn position_and_momentum_profiles_are_a_transform_pair() {
        let p = reference();
        let r = fourier_residual(&p, &default_q_grid(), &default_p_grid(&p)).unwrap();
        assert!(r <= 1e-6, "residual {r}");
    }

    #[test]
    fn logical_comb_spacing_detected_for_comparison() {
        // The same peak finder applied to a finite logical comb reports the
        // 2√π period of the logical-0 grid.
        let comb = comb::gkp_finite(2, &SqueezeParams::from_db(10.0), 0).unwrap();
        let qg: Vec<f64> = (0..=1600).map(|i| -8.0 + 0.01 * i as f64).collect();
        let dens: Vec<f64> = qg.iter().map(|&q| comb.eval(q).norm_sqr()).collect();
        let spacing = peak_spacing(&dens, &qg).unwrap();
        assert!((spacing - 2.0 * PI.sqrt()).abs() <= 0.011, "spacing {spacing}");
    }

    #[test]
    fn zero_repetition_collapses_to_a_single_peak() {
        let p = BaselineParams::new(2.0, 0.0, 0.0).unwrap();
        let qg = default_q_grid();
        let fq = conventional_wavefn_q(&p, &qg).unwrap();
        let dens: Vec<f64> = fq.iter().map(|c| c.norm_sqr()).collect();
        match peak_spacing(&dens, &qg) {
            Err(Error::InsufficientPeaks { found }) => assert_eq!(found, 1),
            other => panic!("expected InsufficientPeaks, got {other:?}"),
        }
    }

    #[test]
    fn series_profile_matches_quadrature_normalization() {
        // The grid normalization should agree with adaptive quadrature of the
        // same (unnormalized) density to high accuracy.
        let p = reference();
        let etas = all_etas(&p).unwrap();
        let raw = |q: f64| -> f64 {
            let mut sum = Complex64::new(0.0, 0.0);
            for (n, &eta) in etas.iter().enumerate() {
                sum += eta * Complex64::from_polar(1.0, PI * p.tau * n as f64 * q);
            }
            ((-0.5 * q * q).exp() * sum).norm_sqr()
        };
        let integral = quad::integrate(&raw, -9.0, 9.0, 1e-10).unwrap().value;
        let grid_sum: f64 = default_q_grid().iter().map(|&q| raw(q)).sum::<f64>() * 0.01;
        assert_relative_eq!(integral, grid_sum, max_relative = 1e-8);
    }

    #[test]
    fn parameter_validation() {
        assert!(BaselineParams::new(0.0, 2.0, 0.0).is_err());
        assert!(BaselineParams::new(-1.0, 2.0, 0.0).is_err());
        assert!(BaselineParams::new(2.0, -0.5, 0.0).is_err());
        assert!(BaselineParams::new(2.0, 2.0, f64::NAN).is_err());
        assert!(eta_n(-2.0, 0.0, 1).is_err());
        let p = reference();
        let qg = default_q_grid();
        assert!(peak_spacing(&[1.0, 2.0], &qg).is_err());
        let bad_grid = [0.0, 0.1, 0.15];
        assert!(conventional_wavefn_q(&p, &bad_grid).is_err());
    }
}
