//! The five-step generation protocol: ancilla preparation, cross-Kerr
//! entangling, displacement D₁, inverse Kerr, conditional homodyne on the
//! ancilla, and the centering displacement D₂ — implemented three independent
//! ways that cross-validate each other:
//!
//! * [`run_analytic`] — the closed-form output comb (idealized peak placement
//!   with the alternating residual pattern),
//! * [`run_branch_oracle`] — exact Gaussian evolution of every ancilla-tagged
//!   branch, valid for arbitrarily large β, tracking all accumulated phases,
//! * [`run_fock_oracle`] — a literal truncated-Fock pipeline, usable at toy
//!   scale only.

use crate::comb::{self, GaussianComb, Peak, SqueezeParams};
use crate::error::{Error, Result};
use crate::fock::{self, FockVector, Mode};
use crate::hermite;
use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

/// Largest supported peak-pair count: the ancilla then occupies Fock states
/// up to |4m⟩, which must stay within the supported Hermite orders.
pub const MAX_M: usize = 50;

/// How the p-quadrature displacement error δ is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaMode {
    /// δ from the chord geometry of the actual β and γ; branch placement uses
    /// the exact circle (honest centers, residuals, and phases).
    ExactFromBeta,
    /// δ = 0 with ideal peak placement (the clean-protocol assumption).
    ForcedZero,
    /// δ imposed directly with ideal peak placement and the alternating
    /// residual pattern (used for error-sensitivity sweeps).
    Forced(f64),
}

/// Full parameter set of one protocol configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolParams {
    pub sp: SqueezeParams,
    /// Peak-pair count: the output comb has 2m+1 peaks.
    pub m: usize,
    /// Circle radius of the branch geometry (magnitude of D₁).
    pub beta: f64,
    /// Target q-extent of the branch fan; 2m√π unless overridden.
    pub gamma: f64,
    /// Rotation step per ancilla Fock pair; satisfies sinθ = γ/(mβ) when the
    /// geometry is exact.
    pub theta: f64,
    /// Post-selection window: a run is accepted when |x| ≤ v_up.
    pub v_up: f64,
    pub delta_mode: DeltaMode,
}

impl ProtocolParams {
    fn validate(m: usize, v_up: f64) -> Result<()> {
        if m > MAX_M {
            return Err(Error::InvalidArgument(format!(
                "m = {m} exceeds the supported maximum {MAX_M}"
            )));
        }
        if !v_up.is_finite() || v_up < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "v_up must be finite and nonnegative, got {v_up}"
            )));
        }
        Ok(())
    }

    /// Default q-extent parameter γ = 2m√π.
    pub fn default_gamma(m: usize) -> f64 {
        2.0 * m as f64 * PI.sqrt()
    }

    /// Clean protocol: δ = 0, ideal peak placement.
    pub fn ideal(sp: SqueezeParams, m: usize, v_up: f64) -> Result<Self> {
        Self::validate(m, v_up)?;
        Ok(Self {
            sp,
            m,
            beta: 0.0,
            gamma: Self::default_gamma(m),
            theta: 0.0,
            v_up,
            delta_mode: DeltaMode::ForcedZero,
        })
    }

    /// Ideal placement with an imposed displacement error δ.
    pub fn with_forced_delta(sp: SqueezeParams, m: usize, delta: f64, v_up: f64) -> Result<Self> {
        Self::validate(m, v_up)?;
        if !delta.is_finite() {
            return Err(Error::InvalidArgument("delta must be finite".into()));
        }
        Ok(Self {
            sp,
            m,
            beta: 0.0,
            gamma: Self::default_gamma(m),
            theta: 0.0,
            v_up,
            delta_mode: DeltaMode::Forced(delta),
        })
    }

    /// Exact geometry for a given β with the default γ = 2m√π.
    pub fn exact_from_beta(sp: SqueezeParams, m: usize, beta: f64, v_up: f64) -> Result<Self> {
        Self::exact_with_gamma(sp, m, beta, Self::default_gamma(m), v_up)
    }

    /// Exact geometry for explicit β and γ: θ = asin(γ/(mβ)).
    pub fn exact_with_gamma(
        sp: SqueezeParams,
        m: usize,
        beta: f64,
        gamma: f64,
        v_up: f64,
    ) -> Result<Self> {
        Self::validate(m, v_up)?;
        if m == 0 {
            return Err(Error::InvalidArgument(
                "exact geometry needs m ≥ 1 (the rotation step is γ/(mβ))".into(),
            ));
        }
        if !beta.is_finite() || beta <= 0.0 || !gamma.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "need finite β > 0 and finite γ, got β={beta}, γ={gamma}"
            )));
        }
        let ratio = gamma / (m as f64 * beta);
        if ratio.abs() > 1.0 {
            return Err(Error::Geometry { ratio });
        }
        Ok(Self {
            sp,
            m,
            beta,
            gamma,
            theta: ratio.asin(),
            v_up,
            delta_mode: DeltaMode::ExactFromBeta,
        })
    }

    /// The effective displacement error for this configuration.
    pub fn delta(&self) -> Result<f64> {
        match self.delta_mode {
            DeltaMode::ForcedZero => Ok(0.0),
            DeltaMode::Forced(d) => Ok(d),
            DeltaMode::ExactFromBeta => delta_error(self.beta, self.gamma, self.m),
        }
    }
}

/// Displacement error δ = β(1 − cosθ) with sinθ = γ/(mβ), evaluated in the
/// cancellation-free form δ = g/(β + √(β² − g)), g = (γ/m)².
pub fn delta_error(beta: f64, gamma: f64, m: usize) -> Result<f64> {
    if gamma == 0.0 {
        return Ok(0.0);
    }
    if m == 0 {
        return Err(Error::InvalidArgument(
            "nonzero γ with m = 0 has no chord geometry".into(),
        ));
    }
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "β must be positive and finite, got {beta}"
        )));
    }
    let ratio = gamma / (m as f64 * beta);
    if ratio.abs() > 1.0 {
        return Err(Error::Geometry { ratio });
    }
    let g = (gamma / m as f64).powi(2);
    Ok(g / (beta + (beta * beta - g).sqrt()))
}

/// Ancilla Fock superposition Σ c_t |2t⟩, t = 0..2m, with signed coefficients
/// chosen so that the x = 0 conditional output carries the GKP envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct AncillaSpec {
    pub m: usize,
    pub kappa2: f64,
    /// Signed coefficients c_0..c_{2m} (sign (−1)^t from the Hermite zeros).
    pub coeffs: Vec<f64>,
    /// Normalization N = (Σ c_t²)^(−1/2).
    pub norm: f64,
}

impl AncillaSpec {
    /// Normalized Fock amplitudes N·c_t on the even states |2t⟩.
    pub fn amplitudes(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| self.norm * c).collect()
    }

    /// Embed as a single-mode Fock vector of the given dimension.
    pub fn to_fock(&self, dim: usize) -> Result<FockVector> {
        if dim < 4 * self.m + 1 {
            return Err(Error::ShapeMismatch(format!(
                "ancilla reaches |{}⟩ but dim is {dim}",
                4 * self.m
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        for (t, &c) in self.coeffs.iter().enumerate() {
            amps[2 * t] = Complex64::new(self.norm * c, 0.0);
        }
        FockVector::single(amps)
    }
}

/// Ancilla coefficients c_t = e^(−2πκ²(t−m)²)·√(2^{2t}(2t)!)/H_{2t}(0),
/// computed in log space. Because H_{2t}(0) = (−1)^t (2t)!/t!, this is
/// (−1)^t e^(−2πκ²(t−m)²) exp(t·ln2 + lnΓ(t+1) − lnΓ(2t+1)/2), whose
/// magnitude grows only like t^(1/4) before the envelope cuts it off.
pub fn ancilla_coefficients(m: usize, kappa2: f64) -> Result<AncillaSpec> {
    if m > MAX_M {
        return Err(Error::InvalidArgument(format!(
            "m = {m} exceeds the supported maximum {MAX_M}"
        )));
    }
    if !kappa2.is_finite() || kappa2 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "κ² must be positive and finite, got {kappa2}"
        )));
    }
    let mut coeffs = Vec::with_capacity(2 * m + 1);
    for t in 0..=(2 * m) {
        let u = t as f64 - m as f64;
        let tf = t as f64;
        let ln_mag = -2.0 * PI * kappa2 * u * u + tf * std::f64::consts::LN_2
            + ln_gamma(tf + 1.0)
            - 0.5 * ln_gamma(2.0 * tf + 1.0);
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign * ln_mag.exp();
        if !c.is_finite() {
            return Err(Error::NonFinite(format!("ancilla coefficient c_{t}")));
        }
        coeffs.push(c);
    }
    let sum2: f64 = coeffs.iter().map(|c| c * c).sum();
    if !(sum2 > 0.0) || !sum2.is_finite() {
        return Err(Error::ZeroNorm);
    }
    Ok(AncillaSpec {
        m,
        kappa2,
        coeffs,
        norm: 1.0 / sum2.sqrt(),
    })
}

/// One protocol run evaluated at homodyne outcome x.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub x: f64,
    /// Whether the run passes post-selection (|x| ≤ v_up).
    pub accepted: bool,
    pub state: GaussianComb,
    /// Exact outcome density p(x).
    pub density: f64,
    /// Fidelity against the envelope-converged logical-0 target.
    pub fidelity: f64,
}

/// Closed-form output state for outcome x (idealized peak placement).
pub fn run_analytic(params: &ProtocolParams, x: f64) -> Result<GaussianComb> {
    comb::generated_comb(params.m, &params.sp, x, params.delta()?)
}

/// Unnormalized branch superposition: each ancilla component |2t⟩ tags one
/// Gaussian branch of weight N·c_t·⟨x|2t⟩ whose (center, momentum, phase)
/// follow the configured geometry. Its squared norm is the outcome density.
fn branch_comb_raw(params: &ProtocolParams, x: f64) -> Result<GaussianComb> {
    let anc = ancilla_coefficients(params.m, params.sp.kappa2())?;
    let width = params.sp.delta2;
    // Each branch is a unit-norm Gaussian, so the comb's squared norm is the
    // physical outcome density.
    let unit_norm = (PI * width).powf(-0.25);
    let delta = params.delta()?;
    let sqrt_pi = PI.sqrt();
    let mm = params.m as i64;
    let mut peaks = Vec::with_capacity(2 * params.m + 1);
    for t in 0..=(2 * params.m) {
        let u = t as i64 - mm;
        let amp = anc.norm * anc.coeffs[t] * hermite::psi(2 * t, x)?;
        // (center, mean momentum, accumulated constant phase) per branch.
        let (center, momentum, phase) = match params.delta_mode {
            DeltaMode::ForcedZero => (2.0 * u as f64 * sqrt_pi, 0.0, 0.0),
            DeltaMode::Forced(d) => (
                2.0 * u as f64 * sqrt_pi,
                comb::residual_pattern(u, d),
                0.0,
            ),
            DeltaMode::ExactFromBeta => {
                // Rotation sandwich: branch t is displaced to the circle
                // point (β sin uθ, β cos uθ); D₂ lowers p by β+δ. Composing
                // the two displacements leaves the constant phase −q·p/2.
                let angle = u as f64 * params.theta;
                let (q_t, p_t) = (params.beta * angle.sin(), params.beta * angle.cos());
                let p_res = p_t - (params.beta + delta);
                (q_t, p_res, -0.5 * q_t * p_t)
            }
        };
        peaks.push(Peak {
            weight: Complex64::from_polar(unit_norm * amp, phase),
            center,
            width,
            phase_slope: -momentum,
        });
    }
    GaussianComb::new(peaks)
}

/// Exact branch-resolved output state for outcome x; every branch evolves as
/// an exact Gaussian transformation, so no truncation error exists at any β.
pub fn run_branch_oracle(params: &ProtocolParams, x: f64) -> Result<GaussianComb> {
    let mut c = branch_comb_raw(params, x)?;
    c.normalize()?;
    Ok(c)
}

/// Exact homodyne outcome density p(x), including cross-branch overlap
/// terms; integrates to exactly 1 over the real line.
pub fn homodyne_density(params: &ProtocolParams, x: f64) -> Result<f64> {
    Ok(branch_comb_raw(params, x)?.self_overlap())
}

/// Diagonal approximation of the density: Σ (N·c_t·⟨x|2t⟩)², dropping
/// cross-branch overlaps. Also integrates to exactly 1.
pub fn diagonal_density(params: &ProtocolParams, x: f64) -> Result<f64> {
    let anc = ancilla_coefficients(params.m, params.sp.kappa2())?;
    let mut p = 0.0;
    for (t, &c) in anc.coeffs.iter().enumerate() {
        let a = anc.norm * c * hermite::psi(2 * t, x)?;
        p += a * a;
    }
    Ok(p)
}

/// Literal truncated-Fock pipeline: squeezed vacuum ⊗ ancilla, Kerr,
/// D₁ on the signal, inverse Kerr, homodyne projection of the ancilla at x,
/// then D₂; normalized. Toy scale only — β must fit the truncation.
pub fn run_fock_oracle(params: &ProtocolParams, x: f64, dim: usize) -> Result<FockVector> {
    let anc = ancilla_coefficients(params.m, params.sp.kappa2())?;
    let dim_b = 4 * params.m + 2;
    let signal = fock::squeezed_vacuum(params.sp.squeeze_r(), dim)?;
    let ancilla = anc.to_fock(dim_b)?;
    let joint = signal.tensor(&ancilla)?;
    // Per-photon Kerr phase −θ/2: ancilla component |2t⟩ then rotates the
    // signal displacement clockwise by tθ, which is the orientation that
    // pairs branch t with position 2(t−m)√π.
    let half = 0.5 * params.theta;
    let joint = fock::cross_kerr(&joint, -half)?;
    let tilt = params.m as f64 * params.theta;
    let d1 = Complex64::new(-params.beta * tilt.sin(), params.beta * tilt.cos())
        / Complex64::new(2.0_f64.sqrt(), 0.0);
    let joint = fock::displace_signal(&joint, d1)?;
    let joint = fock::cross_kerr(&joint, half)?;
    let (signal_out, _weight) = fock::homodyne_project(&joint, Mode::B, x)?;
    let delta = params.delta()?;
    let d2 = Complex64::new(0.0, -(params.beta + delta)) / Complex64::new(2.0_f64.sqrt(), 0.0);
    let out = fock::displace(&signal_out, d2)?;
    out.normalized()
}

/// Evaluate one outcome: analytic state, exact density, fidelity against the
/// envelope-converged target, and the post-selection verdict.
pub fn run_record(params: &ProtocolParams, x: f64) -> Result<RunRecord> {
    let state = run_analytic(params, x)?;
    let target = comb::converged_target(&params.sp)?;
    let fidelity = comb::comb_fidelity(&target, &state)?;
    let density = homodyne_density(params, x)?;
    Ok(RunRecord {
        x,
        accepted: x.abs() <= params.v_up,
        state,
        density,
        fidelity,
    })
}
