//! Gaussian-comb wavefunctions: finite GKP states, the comb produced by the
//! cross-Kerr protocol, and exact closed-form overlaps between combs.
//!
//! A comb is a finite sum of Gaussian peaks with complex weights and linear
//! phases. All overlap integrals reduce to Gaussian moments, so fidelities at
//! this layer need no numerical quadrature at all — the quadrature-based
//! `to_fock` bridge exists only to cross-check against the Fock-space route.

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::hermite;
use crate::quad;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Squeezing level in its three interchangeable parameterizations.
///
/// A level of s dB below vacuum noise means a position variance
/// σ² = 10^(−s/10)/2 (vacuum: 1/2). Comb peaks and envelopes both use
/// Δ² = κ² = 2σ², so a single number fixes the whole geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    /// Squeezing in dB below vacuum noise.
    pub db: f64,
    /// Position variance σ² of the squeezed vacuum.
    pub sigma2: f64,
    /// Peak-width parameter Δ² = κ² = 2σ².
    pub delta2: f64,
}

impl SqueezeParams {
    /// From a squeezing level in dB.
    pub fn from_db(db: f64) -> Self {
        let sigma2 = 0.5 * 10f64.powf(-db / 10.0);
        Self {
            db,
            sigma2,
            delta2: 2.0 * sigma2,
        }
    }

    /// From a position variance σ² (must be positive and finite).
    pub fn from_sigma2(sigma2: f64) -> Result<Self> {
        if !sigma2.is_finite() || sigma2 <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "variance must be positive and finite, got {sigma2}"
            )));
        }
        Ok(Self {
            db: -10.0 * (2.0 * sigma2).log10(),
            sigma2,
            delta2: 2.0 * sigma2,
        })
    }

    /// Squeezing parameter r with σ² = e^(−2r)/2.
    pub fn squeeze_r(&self) -> f64 {
        -0.5 * self.delta2.ln()
    }

    /// Envelope parameter κ² (identical to Δ² under the convention above).
    pub fn kappa2(&self) -> f64 {
        self.delta2
    }
}

/// One Gaussian peak: weight · exp(−(q−center)²/(2·width)) · exp(−i·phase_slope·q).
///
/// A peak describing a wavepacket with mean momentum p carries
/// phase_slope = −p, so that the amplitude contains exp(+ipq).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub weight: Complex64,
    pub center: f64,
    pub width: f64,
    pub phase_slope: f64,
}

impl Peak {
    /// Amplitude contribution at position q.
    pub fn amplitude(&self, q: f64) -> Complex64 {
        let d = q - self.center;
        let gauss = (-d * d / (2.0 * self.width)).exp();
        self.weight * gauss * Complex64::from_polar(1.0, -self.phase_slope * q)
    }
}

/// A finite sum of Gaussian peaks representing a position wavefunction.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianComb {
    peaks: Vec<Peak>,
}

impl GaussianComb {
    /// Build from peaks; every width must be positive and all fields finite.
    pub fn new(peaks: Vec<Peak>) -> Result<Self> {
        if peaks.is_empty() {
            return Err(Error::InvalidArgument("comb needs at least one peak".into()));
        }
        for p in &peaks {
            if !(p.width > 0.0) || !p.width.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "peak width must be positive and finite, got {}",
                    p.width
                )));
            }
            if !p.center.is_finite()
                || !p.phase_slope.is_finite()
                || !p.weight.re.is_finite()
                || !p.weight.im.is_finite()
            {
                return Err(Error::NonFinite("peak parameters must be finite".into()));
            }
        }
        Ok(Self { peaks })
    }

    /// Peak list, ordered as constructed.
    pub fn peaks(&self) -> &[Peak] {
        &self.peaks
    }

    /// Wavefunction value at position q.
    pub fn eval(&self, q: f64) -> Complex64 {
        self.peaks.iter().map(|p| p.amplitude(q)).sum()
    }

    /// ∫|ψ(q)|² dq, evaluated in closed form.
    pub fn self_overlap(&self) -> f64 {
        overlap(self, self).re
    }

    /// Rescale all weights so that the comb has unit norm.
    pub fn normalize(&mut self) -> Result<()> {
        let n = self.self_overlap();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let scale = Complex64::new(1.0 / n.sqrt(), 0.0);
        for p in &mut self.peaks {
            p.weight *= scale;
        }
        Ok(())
    }
}

/// Exact overlap ⟨a|b⟩ = ∫ conj(a(q))·b(q) dq over all peak pairs.
///
/// Each pair contributes a Gaussian·Gaussian·linear-phase integral:
/// with A = 1/(2w₁)+1/(2w₂), B = c₁/w₁+c₂/w₂+i(s₁−s₂),
/// C = −c₁²/(2w₁)−c₂²/(2w₂), the term is conj(W₁)·W₂·√(π/A)·exp(B²/(4A)+C).
pub fn overlap(a: &GaussianComb, b: &GaussianComb) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for pj in &a.peaks {
        for pk in &b.peaks {
            let aa = 0.5 / pj.width + 0.5 / pk.width;
            let bb = Complex64::new(
                pj.center / pj.width + pk.center / pk.width,
                pj.phase_slope - pk.phase_slope,
            );
            let cc = -pj.center * pj.center / (2.0 * pj.width)
                - pk.center * pk.center / (2.0 * pk.width);
            let exponent = bb * bb / (4.0 * aa) + cc;
            total += pj.weight.conj() * pk.weight * (PI / aa).sqrt() * exponent.exp();
        }
    }
    total
}

/// Fidelity |⟨a|b⟩|²/(⟨a|a⟩⟨b|b⟩); both inputs are normalized internally.
pub fn comb_fidelity(a: &GaussianComb, b: &GaussianComb) -> Result<f64> {
    let na = overlap(a, a).re;
    let nb = overlap(b, b).re;
    if !(na > 0.0) || !(nb > 0.0) || !na.is_finite() || !nb.is_finite() {
        return Err(Error::ZeroNorm);
    }
    Ok((overlap(a, b).norm_sqr() / (na * nb)).min(1.0))
}

/// Finite GKP logical state: Gaussian peaks of width Δ² spaced √π apart
/// under the envelope exp(−πκ²j²/2) at center j√π.
///
/// Logical 0 uses even j = 2t, t ∈ [−m, m] (2m+1 peaks); logical 1 uses odd
/// j = 2t+1, t ∈ [−m, m−1] (2m peaks, so m ≥ 1). The result is normalized.
pub fn gkp_finite(m: usize, sp: &SqueezeParams, logical: u8) -> Result<GaussianComb> {
    let mm = m as i64;
    let js: Vec<i64> = match logical {
        0 => (-mm..=mm).map(|t| 2 * t).collect(),
        1 => {
            if m == 0 {
                return Err(Error::InvalidArgument(
                    "logical 1 needs at least one peak pair (m ≥ 1)".into(),
                ));
            }
            (-mm..mm).map(|t| 2 * t + 1).collect()
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "logical index must be 0 or 1, got {other}"
            )))
        }
    };
    let k2 = sp.kappa2();
    let sqrt_pi = PI.sqrt();
    let peaks = js
        .iter()
        .map(|&j| Peak {
            weight: Complex64::new((-0.5 * PI * k2 * (j * j) as f64).exp(), 0.0),
            center: j as f64 * sqrt_pi,
            width: sp.delta2,
            phase_slope: 0.0,
        })
        .collect();
    let mut comb = GaussianComb::new(peaks)?;
    comb.normalize()?;
    Ok(comb)
}

/// Residual momentum left on peak u after the final centering displacement,
/// for a phase error δ: peaks reached by an odd number of rotation steps sit
/// on the displaced chord (zero residual), even steps alternate ±δ outward —
/// (−δ, 0, δ, 0, −δ) across u = −2..2.
pub fn residual_pattern(u: i64, delta: f64) -> f64 {
    if u.rem_euclid(2) == 1 {
        0.0
    } else if (u / 2).rem_euclid(2) == 0 {
        delta
    } else {
        -delta
    }
}

/// State produced by the protocol for homodyne outcome x and phase error δ,
/// in the idealized-geometry description: peak u ∈ [−m, m] at 2u√π with real
/// weight e^(−2πκ²u²)·H_{2(u+m)}(x)/H_{2(u+m)}(0), width Δ², and momentum
/// residual from `residual_pattern`. Normalized.
pub fn generated_comb(m: usize, sp: &SqueezeParams, x: f64, delta: f64) -> Result<GaussianComb> {
    build_generated(m, sp, x, delta, false)
}

/// Deliberately wrong variant pairing peak u with Hermite order 2(m−u)
/// instead of 2(u+m). Coincides with `generated_comb` at x = 0 and diverges
/// for x ≠ 0 — a negative control for the oracle cross-checks.
pub fn generated_comb_flipped_orders(
    m: usize,
    sp: &SqueezeParams,
    x: f64,
    delta: f64,
) -> Result<GaussianComb> {
    build_generated(m, sp, x, delta, true)
}

fn build_generated(
    m: usize,
    sp: &SqueezeParams,
    x: f64,
    delta: f64,
    flip: bool,
) -> Result<GaussianComb> {
    if !x.is_finite() || !delta.is_finite() {
        return Err(Error::InvalidArgument(
            "homodyne outcome and phase error must be finite".into(),
        ));
    }
    let mm = m as i64;
    let k2 = sp.kappa2();
    let two_sqrt_pi = 2.0 * PI.sqrt();
    let mut peaks = Vec::with_capacity(2 * m + 1);
    for u in -mm..=mm {
        let order_half = if flip { (mm - u) as usize } else { (u + mm) as usize };
        let envelope = (-2.0 * PI * k2 * (u * u) as f64).exp();
        let hermite_factor = hermite::hermite_even_ratio(order_half, x)?;
        peaks.push(Peak {
            weight: Complex64::new(envelope * hermite_factor, 0.0),
            center: two_sqrt_pi * u as f64,
            width: sp.delta2,
            phase_slope: -residual_pattern(u, delta),
        });
    }
    let mut comb = GaussianComb::new(peaks)?;
    comb.normalize()?;
    Ok(comb)
}

/// Number of peak pairs after which growing the envelope no longer changes
/// the comb at double precision (edge weight below 1e−18).
pub fn converged_peak_count(sp: &SqueezeParams) -> usize {
    let k2 = sp.kappa2();
    (18.0 * std::f64::consts::LN_10 / (2.0 * PI * k2)).sqrt().ceil() as usize + 1
}

/// Envelope-converged logical-0 state: the fixed point of gkp_finite in m,
/// used as the fidelity target so that envelope truncation of the generated
/// state registers as infidelity.
pub fn converged_target(sp: &SqueezeParams) -> Result<GaussianComb> {
    gkp_finite(converged_peak_count(sp), sp, 0)
}

/// Expand a comb in the number basis: a_n = ∫⟨n|q⟩ψ(q)dq by adaptive
/// quadrature over the comb's support. Errors if the dimension captures less
/// than 1 − 1e−6 of the comb's norm.
pub fn to_fock(comb: &GaussianComb, dim: usize) -> Result<FockVector> {
    if dim == 0 {
        return Err(Error::InvalidArgument("dim must be positive".into()));
    }
    if dim - 1 > hermite::MAX_PSI_ORDER {
        return Err(Error::UnsupportedOrder {
            n: dim - 1,
            max: hermite::MAX_PSI_ORDER,
        });
    }
    // Outside ±6 widths from the outermost centers every peak is below
    // e^(−18) in amplitude; the truncation check below guards the choice.
    let lo = comb
        .peaks
        .iter()
        .map(|p| p.center - 6.0 * p.width.sqrt())
        .fold(f64::INFINITY, f64::min);
    let hi = comb
        .peaks
        .iter()
        .map(|p| p.center + 6.0 * p.width.sqrt())
        .fold(f64::NEG_INFINITY, f64::max);
    let mut amps = Vec::with_capacity(dim);
    for n in 0..dim {
        let f = |q: f64| {
            let psi = hermite::psi(n, q).expect("order bound checked above");
            comb.eval(q) * psi
        };
        let (value, _err) = quad::integrate_complex(&f, lo, hi, 1e-11)?;
        amps.push(value);
    }
    let state = FockVector::single(amps)?;
    let target = comb.self_overlap();
    let captured = state.norm2();
    let missing = (target - captured) / target;
    if missing > 1e-6 {
        return Err(Error::Truncation {
            dim,
            tail: missing,
            limit: 1e-6,
            suggested: dim * 2,
        });
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn squeeze_params_10db() {
        let sp = SqueezeParams::from_db(10.0);
        assert_relative_eq!(sp.sigma2, 0.05, max_relative = 1e-14);
        assert_relative_eq!(sp.delta2, 0.1, max_relative = 1e-14);
        assert_relative_eq!(sp.kappa2(), 0.1, max_relative = 1e-14);
        // σ² = e^(−2r)/2 with r = ln(10)/2 at 10 dB.
        assert_relative_eq!(sp.squeeze_r(), std::f64::consts::LN_10 / 2.0, max_relative = 1e-13);
        let back = SqueezeParams::from_sigma2(sp.sigma2).unwrap();
        assert_relative_eq!(back.db, 10.0, max_relative = 1e-12);
    }

    #[test]
    fn squeeze_params_rejects_bad_variance() {
        assert!(SqueezeParams::from_sigma2(0.0).is_err());
        assert!(SqueezeParams::from_sigma2(-0.1).is_err());
        assert!(SqueezeParams::from_sigma2(f64::NAN).is_err());
    }

    #[test]
    fn overlap_two_peaks_hand_formula() {
        // Unit weights, same width w, centers 0 and d, no phases:
        // ⟨g₀|g_d⟩ = √(πw)·e^(−d²/(4w)).
        let w = 0.3;
        let d = 1.7;
        let a = GaussianComb::new(vec![Peak {
            weight: c(1.0, 0.0),
            center: 0.0,
            width: w,
            phase_slope: 0.0,
        }])
        .unwrap();
        let b = GaussianComb::new(vec![Peak {
            weight: c(1.0, 0.0),
            center: d,
            width: w,
            phase_slope: 0.0,
        }])
        .unwrap();
        let expected = (PI * w).sqrt() * (-d * d / (4.0 * w)).exp();
        let got = overlap(&a, &b);
        assert_relative_eq!(got.re, expected, max_relative = 1e-14);
        assert!(got.im.abs() < 1e-18);
    }

    fn sample_comb_a() -> GaussianComb {
        GaussianComb::new(vec![
            Peak {
                weight: c(0.8, 0.3),
                center: -1.1,
                width: 0.21,
                phase_slope: 0.7,
            },
            Peak {
                weight: c(-0.2, 0.5),
                center: 0.9,
                width: 0.44,
                phase_slope: -1.3,
            },
        ])
        .unwrap()
    }

    fn sample_comb_b() -> GaussianComb {
        GaussianComb::new(vec![
            Peak {
                weight: c(0.4, -0.6),
                center: 0.2,
                width: 0.17,
                phase_slope: 2.1,
            },
            Peak {
                weight: c(1.1, 0.0),
                center: -0.5,
                width: 0.35,
                phase_slope: 0.0,
            },
        ])
        .unwrap()
    }

    #[test]
    fn overlap_conjugate_symmetry() {
        let a = sample_comb_a();
        let b = sample_comb_b();
        let ab = overlap(&a, &b);
        let ba = overlap(&b, &a);
        assert!((ab - ba.conj()).norm() <= 1e-14 * ab.norm().max(1.0));
    }

    #[test]
    fn overlap_matches_grid_quadrature() {
        let a = sample_comb_a();
        let b = sample_comb_b();
        let f = |q: f64| a.eval(q).conj() * b.eval(q);
        let (numeric, _) = quad::integrate_complex(&f, -15.0, 15.0, 1e-12).unwrap();
        let analytic = overlap(&a, &b);
        assert!((numeric - analytic).norm() <= 1e-10, "analytic {analytic}, numeric {numeric}");
    }

    #[test]
    fn normalize_gives_unit_self_overlap() {
        let mut a = sample_comb_a();
        a.normalize().unwrap();
        assert_relative_eq!(a.self_overlap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn normalize_rejects_zero_comb() {
        let mut z = GaussianComb::new(vec![Peak {
            weight: c(0.0, 0.0),
            center: 0.0,
            width: 0.5,
            phase_slope: 0.0,
        }])
        .unwrap();
        assert!(matches!(z.normalize(), Err(Error::ZeroNorm)));
    }

    #[test]
    fn comb_new_rejects_bad_width() {
        let bad = GaussianComb::new(vec![Peak {
            weight: c(1.0, 0.0),
            center: 0.0,
            width: 0.0,
            phase_slope: 0.0,
        }]);
        assert!(bad.is_err());
    }

    #[test]
    fn gkp_finite_peak_layout() {
        let sp = SqueezeParams::from_db(10.0);
        let l0 = gkp_finite(2, &sp, 0).unwrap();
        assert_eq!(l0.peaks().len(), 5);
        let sqrt_pi = PI.sqrt();
        for (p, j) in l0.peaks().iter().zip([-4i64, -2, 0, 2, 4]) {
            assert_relative_eq!(p.center, j as f64 * sqrt_pi, max_relative = 1e-15);
            assert_eq!(p.phase_slope, 0.0);
            assert_relative_eq!(p.width, 0.1, max_relative = 1e-14);
        }
        // Envelope ratio between neighbor peaks of logical 0: e^(−2πκ²).
        let ratio = l0.peaks()[3].weight.re / l0.peaks()[2].weight.re;
        assert_relative_eq!(ratio, (-2.0 * PI * 0.1).exp(), max_relative = 1e-12);

        let l1 = gkp_finite(2, &sp, 1).unwrap();
        assert_eq!(l1.peaks().len(), 4);
        for (p, j) in l1.peaks().iter().zip([-3i64, -1, 1, 3]) {
            assert_relative_eq!(p.center, j as f64 * sqrt_pi, max_relative = 1e-15);
        }
        let ratio1 = l1.peaks()[3].weight.re / l1.peaks()[2].weight.re;
        assert_relative_eq!(ratio1, (-0.5 * PI * 0.1 * 8.0).exp(), max_relative = 1e-12);
    }

    #[test]
    fn gkp_finite_rejects_bad_logical() {
        let sp = SqueezeParams::from_db(10.0);
        assert!(gkp_finite(2, &sp, 2).is_err());
        assert!(gkp_finite(0, &sp, 1).is_err());
    }

    #[test]
    fn gkp_finite_m0_is_squeezed_vacuum() {
        let sp = SqueezeParams::from_db(10.0);
        let comb = gkp_finite(0, &sp, 0).unwrap();
        assert_eq!(comb.peaks().len(), 1);
        // 10 dB of squeezing needs ~100 Fock levels before the photon-number
        // tail of the truncated expansion drops below the library's gate.
        let state = to_fock(&comb, 128).unwrap();
        let reference = fock::squeezed_vacuum(sp.squeeze_r(), 128).unwrap();
        let f = fock::fock_fidelity(&state, &reference).unwrap();
        assert!(f >= 1.0 - 1e-9, "fidelity {f}");
    }

    #[test]
    fn logical_pair_fidelity_matches_fock_route() {
        let sp = SqueezeParams::from_db(10.0);
        let l0 = gkp_finite(2, &sp, 0).unwrap();
        let l1 = gkp_finite(2, &sp, 1).unwrap();
        let direct = comb_fidelity(&l0, &l1).unwrap();
        let f0 = to_fock(&l0, 120).unwrap();
        let f1 = to_fock(&l1, 120).unwrap();
        let via_fock = fock::fock_fidelity(&f0, &f1).unwrap();
        assert!((direct - via_fock).abs() <= 1e-8, "comb {direct}, fock {via_fock}");
        // Finite squeezing → small but strictly positive confusion.
        assert!(direct > 0.0 && direct < 1e-3);
    }

    #[test]
    fn residual_pattern_m2_values() {
        let d = 0.02;
        let got: Vec<f64> = (-2..=2).map(|u| residual_pattern(u, d)).collect();
        let expected = [-d, 0.0, d, 0.0, -d];
        for (g, e) in got.iter().zip(expected) {
            assert_relative_eq!(*g, e, epsilon = 1e-18);
        }
    }

    #[test]
    fn generated_comb_at_origin_equals_gkp_finite() {
        for m in [1usize, 2, 3] {
            for db in [7.0, 10.0, 12.0] {
                let sp = SqueezeParams::from_db(db);
                let gen = generated_comb(m, &sp, 0.0, 0.0).unwrap();
                let target = gkp_finite(m, &sp, 0).unwrap();
                let f = comb_fidelity(&gen, &target).unwrap();
                assert!(f >= 1.0 - 1e-12, "m={m} db={db}: {f}");
            }
        }
    }

    #[test]
    fn generated_comb_is_even_in_outcome() {
        let sp = SqueezeParams::from_db(9.0);
        let plus = generated_comb(2, &sp, 0.27, 0.0).unwrap();
        let minus = generated_comb(2, &sp, -0.27, 0.0).unwrap();
        for (p, q) in plus.peaks().iter().zip(minus.peaks()) {
            assert_relative_eq!(p.weight.re, q.weight.re, max_relative = 1e-12);
        }
    }

    #[test]
    fn flipped_orders_agree_at_origin_but_not_off_origin() {
        let sp = SqueezeParams::from_db(10.0);
        let std0 = generated_comb(2, &sp, 0.0, 0.0).unwrap();
        let flip0 = generated_comb_flipped_orders(2, &sp, 0.0, 0.0).unwrap();
        assert!(comb_fidelity(&std0, &flip0).unwrap() >= 1.0 - 1e-12);
        let stdx = generated_comb(2, &sp, 0.3, 0.0).unwrap();
        let flipx = generated_comb_flipped_orders(2, &sp, 0.3, 0.0).unwrap();
        let f = comb_fidelity(&stdx, &flipx).unwrap();
        assert!(f < 1.0 - 1e-3, "negative control too close: {f}");
    }

    #[test]
    fn fidelity_is_invariant_under_phase_and_scale() {
        let sp = SqueezeParams::from_db(10.0);
        let a = generated_comb(2, &sp, 0.1, 0.01).unwrap();
        let b = gkp_finite(2, &sp, 0).unwrap();
        let f0 = comb_fidelity(&a, &b).unwrap();
        let scale = Complex64::from_polar(0.37, 0.9);
        let rescaled = GaussianComb::new(
            a.peaks()
                .iter()
                .map(|p| Peak {
                    weight: p.weight * scale,
                    ..*p
                })
                .collect(),
        )
        .unwrap();
        let f1 = comb_fidelity(&rescaled, &b).unwrap();
        assert_relative_eq!(f0, f1, epsilon = 1e-12);
    }

    #[test]
    fn off_center_outcome_keeps_high_fidelity() {
        let sp = SqueezeParams::from_db(10.0);
        let gen = generated_comb(2, &sp, 0.2, 0.0).unwrap();
        let target = gkp_finite(2, &sp, 0).unwrap();
        assert!(comb_fidelity(&gen, &target).unwrap() >= 0.99);
    }

    #[test]
    fn converged_peak_count_10db() {
        let sp = SqueezeParams::from_db(10.0);
        assert_eq!(converged_peak_count(&sp), 10);
        // The fixed point really is fixed: one more pair changes nothing.
        let a = converged_target(&sp).unwrap();
        let b = gkp_finite(converged_peak_count(&sp) + 1, &sp, 0).unwrap();
        assert!(comb_fidelity(&a, &b).unwrap() >= 1.0 - 1e-15);
    }

    #[test]
    fn to_fock_even_photon_support() {
        let sp = SqueezeParams::from_db(10.0);
        let comb = gkp_finite(1, &sp, 0).unwrap();
        let state = to_fock(&comb, 90).unwrap();
        for n in (1..90).step_by(2) {
            assert!(state.amp(n).norm() <= 1e-10, "odd amplitude {n} = {}", state.amp(n));
        }
    }

    #[test]
    fn to_fock_rejects_insufficient_dim() {
        let sp = SqueezeParams::from_db(10.0);
        let comb = gkp_finite(2, &sp, 0).unwrap();
        assert!(matches!(to_fock(&comb, 16), Err(Error::Truncation { .. })));
    }
}
