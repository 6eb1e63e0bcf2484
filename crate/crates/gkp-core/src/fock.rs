//! Truncated Fock-space numerics: states, elementary operators, the
//! cross-Kerr propagator, and homodyne projection.
//!
//! This layer is the brute-force end of the cross-validation chain. States
//! are dense complex arrays — a length-`dim` vector for one mode or a
//! `dim_a × dim_b` matrix for a signal/ancilla pair (row index = mode a).
//! Every operation is a pure function; nothing here depends on global state.

use crate::error::{Error, Result};
use crate::hermite;
use ndarray::{Array2, Axis};
use num_complex::Complex64;

/// Default tail-mass ceiling used by constructors and displacement.
const TAIL_LIMIT: f64 = 1e-6;

/// How many trailing entries per axis count as "the tail".
const TAIL_ENTRIES: usize = 4;

/// Which mode of a joint state an operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Signal mode (row index).
    A,
    /// Ancilla mode (column index).
    B,
}

/// Complex amplitude vector in a truncated number basis.
///
/// Stored uniformly as a matrix of shape `(dim_a, dim_b)`; single-mode states
/// have `dim_b == 1`. Number states run 0..dim−1 along each axis.
#[derive(Debug, Clone)]
pub struct FockVector {
    amps: Array2<Complex64>,
}

impl FockVector {
    /// Single-mode state from a raw amplitude vector.
    pub fn single(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::ShapeMismatch("empty amplitude vector".into()));
        }
        let dim = amps.len();
        let arr = Array2::from_shape_vec((dim, 1), amps)
            .map_err(|e| Error::ShapeMismatch(e.to_string()))?;
        Self::from_array(arr)
    }

    /// Two-mode joint state from a `dim_a × dim_b` amplitude matrix.
    pub fn joint(amps: Array2<Complex64>) -> Result<Self> {
        if amps.nrows() == 0 || amps.ncols() < 2 {
            return Err(Error::ShapeMismatch(
                "joint state needs a dim_a × dim_b matrix with dim_b ≥ 2".into(),
            ));
        }
        Self::from_array(amps)
    }

    fn from_array(amps: Array2<Complex64>) -> Result<Self> {
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite("amplitude entries must be finite".into()));
        }
        Ok(Self { amps })
    }

    /// Number state |n⟩ in a dim-dimensional single-mode space.
    pub fn number_state(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::ShapeMismatch(format!(
                "|{n}⟩ does not fit in dim {dim}"
            )));
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[n] = Complex64::new(1.0, 0.0);
        Self::single(v)
    }

    /// Vacuum |0⟩.
    pub fn vacuum(dim: usize) -> Result<Self> {
        Self::number_state(0, dim)
    }

    /// True if this is a single-mode state.
    pub fn is_single(&self) -> bool {
        self.amps.ncols() == 1
    }

    /// Truncation along mode a.
    pub fn dim_a(&self) -> usize {
        self.amps.nrows()
    }

    /// Truncation along mode b (1 for single-mode states).
    pub fn dim_b(&self) -> usize {
        self.amps.ncols()
    }

    /// Raw amplitude matrix.
    pub fn amps(&self) -> &Array2<Complex64> {
        &self.amps
    }

    /// Single-mode amplitude accessor.
    pub fn amp(&self, n: usize) -> Complex64 {
        self.amps[[n, 0]]
    }

    /// Squared norm Σ|amp|².
    pub fn norm2(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Whether the squared norm is within 1e−10 of one.
    pub fn is_normalized(&self) -> bool {
        (self.norm2() - 1.0).abs() <= 1e-10
    }

    /// Rescaled copy with unit norm.
    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm2();
        if n2 <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let scale = Complex64::new(1.0 / n2.sqrt(), 0.0);
        Ok(Self {
            amps: self.amps.mapv(|a| a * scale),
        })
    }

    /// Probability mass in the last `k` entries of either axis (an axis of
    /// length 1 is skipped): the quantity truncation checks look at.
    pub fn tail_mass(&self, k: usize) -> f64 {
        let (na, nb) = (self.dim_a(), self.dim_b());
        let mut mass = 0.0;
        for ((i, j), a) in self.amps.indexed_iter() {
            let in_a_tail = na > 1 && i + k >= na;
            let in_b_tail = nb > 1 && j + k >= nb;
            if in_a_tail || in_b_tail {
                mass += a.norm_sqr();
            }
        }
        mass
    }

    /// Probability mass in the last `k` entries along one mode only. Used by
    /// operations that grow support along a single axis, so that a finitely
    /// supported partner mode never trips the check.
    pub fn tail_mass_axis(&self, mode: Mode, k: usize) -> f64 {
        let limit = match mode {
            Mode::A => self.dim_a(),
            Mode::B => self.dim_b(),
        };
        let mut mass = 0.0;
        for ((i, j), a) in self.amps.indexed_iter() {
            let idx = match mode {
                Mode::A => i,
                Mode::B => j,
            };
            if idx + k >= limit {
                mass += a.norm_sqr();
            }
        }
        mass
    }

    /// Tensor product of two single-mode states: self ⊗ other (self = mode a).
    pub fn tensor(&self, other: &FockVector) -> Result<FockVector> {
        if !self.is_single() || !other.is_single() {
            return Err(Error::ShapeMismatch(
                "tensor product expects two single-mode states".into(),
            ));
        }
        let (na, nb) = (self.dim_a(), other.dim_a());
        let mut amps = Array2::from_elem((na, nb), Complex64::new(0.0, 0.0));
        for i in 0..na {
            for j in 0..nb {
                amps[[i, j]] = self.amp(i) * other.amp(j);
            }
        }
        FockVector::joint(amps)
    }
}

/// Position amplitude ⟨x|n⟩ of the n-th number state (ħ = 1, ⟨q²⟩_vac = 1/2).
pub fn quad_amplitude(n: usize, x: f64) -> Result<f64> {
    hermite::psi(n, x)
}

/// Squeezed vacuum in the number basis: amplitudes
/// c_{2k} = (cosh r)^(−1/2) (−tanh r)ᵏ √((2k)!)/(2ᵏ k!), odd entries zero.
///
/// The returned state has q-quadrature variance e^(−2r)/2. Errors if the
/// truncation cannot hold the state (tail mass above 1e−8).
pub fn squeezed_vacuum(r: f64, dim: usize) -> Result<FockVector> {
    if dim == 0 {
        return Err(Error::ShapeMismatch("dim must be positive".into()));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let mut c = 1.0 / r.cosh().sqrt();
    let t = r.tanh();
    let mut k = 0usize;
    while 2 * k < dim {
        amps[2 * k] = Complex64::new(c, 0.0);
        // c_{2(k+1)} / c_{2k} = −tanh r · √((2k+1)/(2k+2))
        let kf = k as f64;
        c *= -t * ((2.0 * kf + 1.0) / (2.0 * kf + 2.0)).sqrt();
        k += 1;
    }
    let state = FockVector::single(amps)?;
    let tail = state.tail_mass(TAIL_ENTRIES);
    let limit = 1e-8;
    if tail > limit {
        // Tail decays like tanh(r)^{2k}/√(πk) per even entry; doubling the
        // dimension is a safe, simple suggestion.
        return Err(Error::Truncation {
            dim,
            tail,
            limit,
            suggested: 2 * dim,
        });
    }
    Ok(state)
}

/// Apply exp(α a† − α* a) along one axis of the amplitude matrix via
/// scaling-and-squaring with a truncated Taylor series on the vector.
fn apply_displacement(amps: &mut Array2<Complex64>, axis_dim: usize, on_rows: bool, alpha: Complex64) {
    if alpha.norm() == 0.0 {
        return;
    }
    // Crude spectral bound ‖α a† − α* a‖ ≤ 2|α|√dim; halve until ≤ 0.5.
    let bound = 2.0 * alpha.norm() * (axis_dim as f64).sqrt();
    let steps = bound.log2().ceil().max(0.0) as u32 + 1; // 2^steps ≥ 2·bound
    let alpha_step = alpha / 2.0_f64.powi(steps as i32);

    // Generator application: (A v)_n = α√n v_{n−1} − α* √(n+1) v_{n+1}.
    let gen_apply = |v: &Array2<Complex64>| -> Array2<Complex64> {
        let mut out = Array2::from_elem(v.raw_dim(), Complex64::new(0.0, 0.0));
        let (rows, cols) = (v.nrows(), v.ncols());
        if on_rows {
            for j in 0..cols {
                for n in 0..rows {
                    let mut acc = Complex64::new(0.0, 0.0);
                    if n > 0 {
                        acc += alpha_step * (n as f64).sqrt() * v[[n - 1, j]];
                    }
                    if n + 1 < rows {
                        acc -= alpha_step.conj() * ((n + 1) as f64).sqrt() * v[[n + 1, j]];
                    }
                    out[[n, j]] = acc;
                }
            }
        } else {
            for i in 0..rows {
                for n in 0..cols {
                    let mut acc = Complex64::new(0.0, 0.0);
                    if n > 0 {
                        acc += alpha_step * (n as f64).sqrt() * v[[i, n - 1]];
                    }
                    if n + 1 < cols {
                        acc -= alpha_step.conj() * ((n + 1) as f64).sqrt() * v[[i, n + 1]];
                    }
                    out[[i, n]] = acc;
                }
            }
        }
        out
    };

    for _ in 0..(1u64 << steps) {
        let mut result = amps.clone();
        let mut term = amps.clone();
        for j in 1..=40 {
            term = gen_apply(&term) / Complex64::new(j as f64, 0.0);
            result += &term;
            let tnorm: f64 = term.iter().map(|a| a.norm_sqr()).sum();
            if tnorm < 1e-36 {
                break;
            }
        }
        *amps = result;
    }
}

/// Displacement D(α) = exp(α a† − α* a) on a single-mode state.
///
/// Norm is preserved to 1e−8; errors if the displaced state no longer fits
/// the truncation (tail mass above 1e−6).
pub fn displace(state: &FockVector, alpha: Complex64) -> Result<FockVector> {
    if !state.is_single() {
        return Err(Error::ShapeMismatch("displace expects single-mode state".into()));
    }
    let mut amps = state.amps.clone();
    apply_displacement(&mut amps, state.dim_a(), true, alpha);
    let out = FockVector { amps };
    let tail = out.tail_mass(TAIL_ENTRIES);
    if tail > TAIL_LIMIT {
        return Err(Error::Truncation {
            dim: out.dim_a(),
            tail,
            limit: TAIL_LIMIT,
            suggested: out.dim_a() * 2,
        });
    }
    Ok(out)
}

/// Displacement of the signal mode (mode a) of a joint state. Only the
/// signal axis is tail-checked — the ancilla axis is untouched and may
/// legitimately occupy its top Fock levels.
pub fn displace_signal(joint: &FockVector, alpha: Complex64) -> Result<FockVector> {
    if joint.is_single() {
        return Err(Error::ShapeMismatch("displace_signal expects a joint state".into()));
    }
    let mut amps = joint.amps.clone();
    apply_displacement(&mut amps, joint.dim_a(), true, alpha);
    let out = FockVector { amps };
    let tail = out.tail_mass_axis(Mode::A, TAIL_ENTRIES);
    if tail > TAIL_LIMIT {
        return Err(Error::Truncation {
            dim: out.dim_a(),
            tail,
            limit: TAIL_LIMIT,
            suggested: out.dim_a() * 2,
        });
    }
    Ok(out)
}

/// Cross-Kerr propagator: multiplies each amplitude by exp(−i θ_ph n_a n_b).
///
/// The minus sign makes a positive per-photon phase rotate coherent states
/// clockwise in phase space; every higher layer inherits this one constant.
/// Exactly diagonal, so the norm is unchanged to the last bit.
pub fn cross_kerr(joint: &FockVector, theta_ph: f64) -> Result<FockVector> {
    if joint.is_single() {
        return Err(Error::ShapeMismatch("cross_kerr expects a joint state".into()));
    }
    let mut amps = joint.amps.clone();
    for ((na, nb), a) in amps.indexed_iter_mut() {
        let phase = -theta_ph * (na as f64) * (nb as f64);
        *a *= Complex64::from_polar(1.0, phase);
    }
    Ok(FockVector { amps })
}

/// Project one mode of a joint state onto the position eigenbra ⟨x|.
///
/// Returns the unnormalized conditional state of the other mode together with
/// the outcome density value (its squared norm).
pub fn homodyne_project(joint: &FockVector, mode: Mode, x: f64) -> Result<(FockVector, f64)> {
    if joint.is_single() {
        return Err(Error::ShapeMismatch("homodyne_project expects a joint state".into()));
    }
    let (na, nb) = (joint.dim_a(), joint.dim_b());
    let residual = match mode {
        Mode::B => {
            let psi = hermite::psi_array(nb - 1, x)?;
            let mut v = vec![Complex64::new(0.0, 0.0); na];
            for (i, out) in v.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, &p) in psi.iter().enumerate() {
                    acc += joint.amps[[i, j]] * p;
                }
                *out = acc;
            }
            v
        }
        Mode::A => {
            let psi = hermite::psi_array(na - 1, x)?;
            let mut v = vec![Complex64::new(0.0, 0.0); nb];
            for (j, out) in v.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (i, &p) in psi.iter().enumerate() {
                    acc += joint.amps[[i, j]] * p;
                }
                *out = acc;
            }
            v
        }
    };
    let state = FockVector::single(residual)?;
    let weight = state.norm2();
    Ok((state, weight))
}

/// Squared overlap |⟨a|b⟩|² of two states of identical shape.
///
/// States are normalized internally, so slightly truncated inputs behave as
/// the physical states they approximate.
pub fn fock_fidelity(a: &FockVector, b: &FockVector) -> Result<f64> {
    if a.dim_a() != b.dim_a() || a.dim_b() != b.dim_b() {
        return Err(Error::ShapeMismatch(format!(
            "({}, {}) vs ({}, {})",
            a.dim_a(),
            a.dim_b(),
            b.dim_a(),
            b.dim_b()
        )));
    }
    let (na2, nb2) = (a.norm2(), b.norm2());
    if na2 <= 0.0 || nb2 <= 0.0 {
        return Err(Error::ZeroNorm);
    }
    let ip: Complex64 = a
        .amps
        .iter()
        .zip(b.amps.iter())
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(ip.norm_sqr() / (na2 * nb2))
}

/// Largest Schmidt coefficient of a joint state (power iteration on the
/// signal-mode Gram matrix). For a normalized product state this is 1.
pub fn largest_schmidt_coefficient(joint: &FockVector) -> Result<f64> {
    if joint.is_single() {
        return Err(Error::ShapeMismatch("Schmidt decomposition needs a joint state".into()));
    }
    let m = &joint.amps;
    // Deterministic start: row norms (the dominant Schmidt vector has full
    // overlap with this for product states).
    let mut v: Vec<f64> = m
        .axis_iter(Axis(0))
        .map(|row| row.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let norm0: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm0 <= 0.0 {
        return Err(Error::ZeroNorm);
    }
    v.iter_mut().for_each(|x| *x /= norm0);
    let mut vc: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let mut lambda = 0.0_f64;
    for _ in 0..500 {
        // w = M† v (length nb), u = M w (length na)
        let mut w = vec![Complex64::new(0.0, 0.0); m.ncols()];
        for j in 0..m.ncols() {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..m.nrows() {
                acc += m[[i, j]].conj() * vc[i];
            }
            w[j] = acc;
        }
        let mut u = vec![Complex64::new(0.0, 0.0); m.nrows()];
        for i in 0..m.nrows() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..m.ncols() {
                acc += m[[i, j]] * w[j];
            }
            u[i] = acc;
        }
        let new_lambda: f64 = u.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if new_lambda <= 0.0 {
            return Ok(0.0);
        }
        for a in u.iter_mut() {
            *a /= new_lambda;
        }
        let converged = (new_lambda - lambda).abs() <= 1e-15 * new_lambda.max(1.0);
        lambda = new_lambda;
        vc = u;
        if converged {
            break;
        }
    }
    // λ is the largest eigenvalue of M M†; the Schmidt coefficient is its root.
    Ok(lambda.sqrt())
}
