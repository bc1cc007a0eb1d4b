//! Discrete-time system attached to a disk atomic measure: `A` =
//! multiplication by `z` on `L²(𝔻, μ)` (a normal contraction), `C` =
//! integration against `μ`. Resolvent functionals, the discrete weighted
//! admissibility constant, and the embedding ratio into the weighted
//! Dirichlet scale all reduce to sums over atoms.

use crate::error::{Error, Result};
use crate::linalg::PowerIteration;
use crate::measure::{cantor_intervals, Ambient, AtomicMeasure};
use crate::spaces::{dirichlet_norm, TaylorCoefficients};
use crate::C64;

/// Discrete-time observation system over a disk measure. Zero-weight atoms
/// are dropped on construction.
#[derive(Debug, Clone)]
pub struct DiskSystem {
    positions: Vec<C64>,
    weights: Vec<f64>,
}

impl DiskSystem {
    pub fn new(measure: &AtomicMeasure) -> Result<Self> {
        if measure.ambient() != Ambient::Disk {
            return Err(Error::AmbientMismatch(
                "disk system needs a disk measure".to_string(),
            ));
        }
        let mut positions = Vec::new();
        let mut weights = Vec::new();
        for a in measure.atoms() {
            if a.weight > 0.0 {
                positions.push(a.position);
                weights.push(a.weight);
            }
        }
        Ok(DiskSystem { positions, weights })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[C64] {
        &self.positions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// State norm `sqrt(Σ w_j |x_j|²)`.
    pub fn state_norm(&self, x: &[C64]) -> f64 {
        self.weights
            .iter()
            .zip(x)
            .map(|(w, v)| w * v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// `Σ_j w_j / |1 - conj(ω) z_j|² = ||C (I - conj(ω) A)^{-1}||²` for `|ω| < 1`.
pub fn disk_resolvent_integral(sys: &DiskSystem, omega: C64) -> Result<f64> {
    if !(omega.norm() < 1.0) {
        return Err(Error::invalid(format!(
            "resolvent integral needs |omega| < 1, got {}",
            omega.norm()
        )));
    }
    Ok(sys
        .positions
        .iter()
        .zip(&sys.weights)
        .map(|(z, w)| w / (C64::new(1.0, 0.0) - omega.conj() * z).norm_sqr())
        .sum())
}

/// Sample points for disk suprema: radii `1 - 2^{-k}`, `k = 0..=depth`
/// (the origin appears once), crossed with uniform angles `2πi/n`.
#[derive(Debug, Clone)]
pub struct OmegaGrid {
    points: Vec<C64>,
}

impl OmegaGrid {
    pub fn new(depth: usize, angles: usize) -> Result<Self> {
        if angles == 0 {
            return Err(Error::invalid(
                "omega grid needs at least one angle".to_string(),
            ));
        }
        let mut points = vec![C64::new(0.0, 0.0)];
        for k in 1..=depth {
            let r = 1.0 - 0.5f64.powi(k as i32);
            for i in 0..angles {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / angles as f64;
                points.push(C64::from_polar(r, theta));
            }
        }
        Ok(OmegaGrid { points })
    }

    /// Depth 10 (radii up to `1 - 2^{-10}`), 128 angles.
    pub fn standard() -> Self {
        OmegaGrid::new(10, 128).expect("standard grid parameters are valid")
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }
}

/// Result of a disk supremum scan: value and attaining grid point.
#[derive(Debug, Clone, Copy)]
pub struct OmegaSup {
    pub value: f64,
    pub at: C64,
}

/// `sup (1-|ω|²)^{(1-α)/2} ||C (I - conj(ω) A)^{-1}||` over the grid.
pub fn disk_resolvent_sup(sys: &DiskSystem, alpha: f64, grid: &OmegaGrid) -> Result<OmegaSup> {
    if !(alpha > -1.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "weight exponent must lie in (-1, 1), got {alpha}"
        )));
    }
    if grid.points().is_empty() {
        return Err(Error::invalid("empty omega grid".to_string()));
    }
    let mut best = OmegaSup {
        value: 0.0,
        at: grid.points()[0],
    };
    for &omega in grid.points() {
        let v = (1.0 - omega.norm_sqr()).powf((1.0 - alpha) / 2.0)
            * disk_resolvent_integral(sys, omega)?.sqrt();
        if v > best.value {
            best = OmegaSup {
                value: v,
                at: omega,
            };
        }
    }
    Ok(best)
}

/// Truncated constant together with a convergence indicator.
#[derive(Debug, Clone, Copy)]
pub struct TruncationEstimate {
    /// Value at the requested truncation.
    pub value: f64,
    /// `(value at 2N - value at N) / value at 2N`; small means converged.
    pub relative_change: f64,
}

fn admissibility_at(sys: &DiskSystem, alpha: f64, n_trunc: usize) -> PowerOutcomeCompact {
    let j = sys.len();
    let rows = n_trunc + 1;
    let sqrt_w: Vec<f64> = sys.weights.iter().map(|w| w.sqrt()).collect();
    let row_scale: Vec<f64> = (0..rows)
        .map(|n| (1.0 + n as f64).powf(alpha / 2.0))
        .collect();
    let out = PowerIteration::default().largest_singular_value(
        rows,
        j,
        |v, outv| {
            // out[n] = (1+n)^{α/2} Σ_j sqrt(w_j) z_j^n v_j, powers kept
            // incrementally.
            let mut p: Vec<C64> = sqrt_w.iter().zip(v).map(|(s, x)| s * x).collect();
            for (n, o) in outv.iter_mut().enumerate() {
                let sum: C64 = p.iter().sum();
                *o = row_scale[n] * sum;
                if n + 1 < rows {
                    for (pi, z) in p.iter_mut().zip(&sys.positions) {
                        *pi *= z;
                    }
                }
            }
        },
        |u, outv| {
            // out_j = sqrt(w_j) Σ_n (1+n)^{α/2} conj(z_j)^n u_n, by Horner.
            for ((o, z), s) in outv.iter_mut().zip(&sys.positions).zip(&sqrt_w) {
                let q = z.conj();
                let mut acc = C64::new(0.0, 0.0);
                for n in (0..rows).rev() {
                    acc = acc * q + row_scale[n] * u[n];
                }
                *o = *s * acc;
            }
        },
    );
    PowerOutcomeCompact {
        value: out.value,
        vector: out.vector,
    }
}

struct PowerOutcomeCompact {
    value: f64,
    vector: Vec<C64>,
}

/// Discrete weighted admissibility constant: smallest `M` with
/// `Σ_{n≤N} (1+n)^α |C Aⁿ x|² ≤ M² ||x||²`, computed matrix-free as the
/// largest singular value of the row-weighted Vandermonde map; the
/// estimate is recomputed at `2N` for the convergence indicator.
pub fn discrete_admissibility_constant(
    sys: &DiskSystem,
    alpha: f64,
    n_trunc: usize,
) -> Result<TruncationEstimate> {
    if n_trunc == 0 {
        return Err(Error::invalid("truncation must be >= 1".to_string()));
    }
    if sys.is_empty() {
        return Ok(TruncationEstimate {
            value: 0.0,
            relative_change: 0.0,
        });
    }
    let at_n = admissibility_at(sys, alpha, n_trunc).value;
    let at_2n = admissibility_at(sys, alpha, 2 * n_trunc).value;
    let relative_change = if at_2n > 0.0 {
        (at_2n - at_n).max(0.0) / at_2n
    } else {
        0.0
    };
    Ok(TruncationEstimate {
        value: at_n,
        relative_change,
    })
}

/// Extremal state of the truncated admissibility problem (the final power
/// iterate); used by oracle tests to realize the constant.
pub fn admissibility_extremal_state(sys: &DiskSystem, alpha: f64, n_trunc: usize) -> Vec<C64> {
    // The iterate lives in the sqrt(w)-scaled coordinates; undo the scaling
    // to get a state x with Σ w_j |x_j|² = Σ |v_j|².
    admissibility_at(sys, alpha, n_trunc)
        .vector
        .iter()
        .zip(&sys.weights)
        .map(|(v, w)| v / w.sqrt())
        .collect()
}

/// Direct evaluation of `sqrt( Σ_{n≤N} (1+n)^α |C Aⁿ x|² ) / ||x||`.
pub fn admissibility_quotient(
    sys: &DiskSystem,
    alpha: f64,
    n_trunc: usize,
    x: &[C64],
) -> Result<f64> {
    if x.len() != sys.len() {
        return Err(Error::invalid(format!(
            "state has {} coordinates for {} atoms",
            x.len(),
            sys.len()
        )));
    }
    let norm = sys.state_norm(x);
    if norm <= 0.0 {
        return Err(Error::invalid(
            "admissibility quotient needs a nonzero state".to_string(),
        ));
    }
    let mut p: Vec<C64> = sys.weights.iter().zip(x).map(|(w, v)| w * v).collect();
    let mut acc = 0.0;
    for n in 0..=n_trunc {
        let c: C64 = p.iter().sum();
        acc += (1.0 + n as f64).powf(alpha) * c.norm_sqr();
        if n < n_trunc {
            for (pi, z) in p.iter_mut().zip(&sys.positions) {
                *pi *= z;
            }
        }
    }
    Ok(acc.sqrt() / norm)
}

/// `( Σ_j w_j |f(z_j)|² )^{1/2} / ||f||_{-α}`: how much of the weighted
/// Dirichlet norm the measure sees. Never exceeds the discrete
/// admissibility constant at truncations covering `deg f`.
pub fn disk_embedding_ratio(sys: &DiskSystem, f: &TaylorCoefficients, alpha: f64) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::invalid(
            "embedding ratio needs a nonzero function".to_string(),
        ));
    }
    let num = sys
        .positions
        .iter()
        .zip(&sys.weights)
        .map(|(z, w)| w * f.evaluate(*z).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(num / dirichlet_norm(f, -alpha))
}

/// Test family adapted to a layered Cantor measure: for every layer depth
/// `γ_m` resolvable at the given degree, the sum of truncated weighted
/// reproducing kernels `Σ_n (1+n)^α (conj(ω) z)^n` anchored at the level-m
/// Cantor interval midpoints at radius `1-γ_m`. Each member concentrates
/// on the measure's columns down to its layer scale, so deeper stacked
/// measures push its embedding ratio up.
pub fn adapted_kernel_family(
    ratio: f64,
    base_level: usize,
    heights: &[f64],
    alpha: f64,
    degree: usize,
) -> Result<Vec<TaylorCoefficients>> {
    if degree < 16 {
        return Err(Error::invalid(
            "kernel family needs degree >= 16".to_string(),
        ));
    }
    let mut family = Vec::new();
    for (idx, &gamma) in heights.iter().enumerate() {
        let m = idx + 1;
        if gamma < 2.0 / degree as f64 {
            continue; // truncated kernels cannot resolve this layer
        }
        let (starts, len) = cantor_intervals(ratio, m.min(base_level))?;
        let mut coeffs = vec![C64::new(0.0, 0.0); degree + 1];
        for &s in &starts {
            let theta = 2.0 * std::f64::consts::PI * (s + len / 2.0);
            let omega_bar = C64::from_polar(1.0 - gamma, -theta);
            let mut pow = C64::new(1.0, 0.0);
            for (n, c) in coeffs.iter_mut().enumerate() {
                *c += (1.0 + n as f64).powf(alpha) * pow;
                pow *= omega_bar;
            }
        }
        family.push(TaylorCoefficients::new(coeffs));
    }
    if family.is_empty() {
        return Err(Error::invalid(
            "no layer is resolvable at the requested degree".to_string(),
        ));
    }
    Ok(family)
}
