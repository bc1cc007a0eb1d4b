//! The continuous-time system attached to a half-plane atomic measure:
//! `A` = multiplication by `iz` on `L²(Π₊, μ)`, `C` = integration against
//! `μ`. Everything reduces to closed forms over the atoms: the semigroup is
//! the diagonal `e^{izt}`, the resolvent functional norm is
//! `sqrt(Σ w_j / |λ - iz_j|²)`, and the weighted admissibility constant is
//! the largest eigenvalue of an explicit Gram matrix obtained from the
//! Laplace integral `∫₀^∞ t^α e^{i(z_j - conj(z_k)) t} dt`.
//!
//! Summation over atoms is always in atom index order, so results are
//! bitwise reproducible.

use crate::capacity::DensityVector;
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::linalg::dense_largest_eigenvalue;
use crate::measure::{Ambient, AtomicMeasure};
use crate::C64;

/// Continuous-time observation system over a half-plane measure. Zero-weight
/// atoms contribute nothing to any functional and are dropped on
/// construction.
#[derive(Debug, Clone)]
pub struct HalfPlaneSystem {
    positions: Vec<C64>,
    weights: Vec<f64>,
}

impl HalfPlaneSystem {
    pub fn new(measure: &AtomicMeasure) -> Result<Self> {
        if measure.ambient() != Ambient::HalfPlane {
            return Err(Error::AmbientMismatch(
                "half-plane system needs a half-plane measure".to_string(),
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
        Ok(HalfPlaneSystem { positions, weights })
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

/// Strictly increasing positive sample times with trapezoid quadrature in
/// `ln t` (the substitution that tames both the `t^α` endpoint singularity
/// and the long tail).
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    points: Vec<f64>,
}

impl TimeGrid {
    /// Log-uniform grid; the default window `[1e-6, 1e3]` with 4096 points
    /// is [`TimeGrid::standard`].
    pub fn log_uniform(t_min: f64, t_max: f64, n: usize) -> Result<Self> {
        if !(t_min > 0.0 && t_max > t_min) {
            return Err(Error::invalid(format!(
                "time grid needs 0 < t_min < t_max, got [{t_min}, {t_max}]"
            )));
        }
        if n < 2 {
            return Err(Error::invalid(format!(
                "time grid needs >= 2 points, got {n}"
            )));
        }
        let (a, b) = (t_min.ln(), t_max.ln());
        let points = (0..n)
            .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
            .collect();
        Ok(TimeGrid { points })
    }

    pub fn standard() -> Self {
        TimeGrid::log_uniform(1e-6, 1e3, 4096).expect("standard grid parameters are valid")
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Trapezoid weights for `∫ f(t) dt = ∫ f(t) t d(ln t)`.
    pub fn quad_weights(&self) -> Vec<f64> {
        let n = self.points.len();
        let mut w = vec![0.0; n];
        for i in 0..n - 1 {
            let du = self.points[i + 1].ln() - self.points[i].ln();
            w[i] += 0.5 * du * self.points[i];
            w[i + 1] += 0.5 * du * self.points[i + 1];
        }
        w
    }
}

/// Complex-valued signal sampled on a [`TimeGrid`], tagged with the weight
/// exponent `a` of the space `L²(ℝ₊, t^{-a} dt)` it is measured in.
#[derive(Debug, Clone)]
pub struct WeightedSignal {
    pub grid: TimeGrid,
    pub samples: Vec<C64>,
    pub exponent: f64,
}

impl WeightedSignal {
    pub fn new(grid: TimeGrid, samples: Vec<C64>, exponent: f64) -> Result<Self> {
        if samples.len() != grid.points().len() {
            return Err(Error::invalid(format!(
                "signal has {} samples for {} grid points",
                samples.len(),
                grid.points().len()
            )));
        }
        Ok(WeightedSignal {
            grid,
            samples,
            exponent,
        })
    }

    /// Squared norm in `L²(t^{-exponent} dt)` by trapezoid quadrature.
    pub fn norm_sq(&self) -> f64 {
        let qw = self.grid.quad_weights();
        self.grid
            .points()
            .iter()
            .zip(&qw)
            .zip(&self.samples)
            .map(|((t, q), s)| q * t.powf(-self.exponent) * s.norm_sqr())
            .sum()
    }

    /// Reweight to a different exponent: multiplying samples by
    /// `t^{(target - exponent)/2}` preserves the norm
    /// (`t^{-a}|w|² = t^{-b}|v|²` for `v = t^{(b-a)/2} w`).
    pub fn with_exponent(&self, target: f64) -> WeightedSignal {
        let samples = self
            .grid
            .points()
            .iter()
            .zip(&self.samples)
            .map(|(t, s)| s * t.powf((target - self.exponent) / 2.0))
            .collect();
        WeightedSignal {
            grid: self.grid.clone(),
            samples,
            exponent: target,
        }
    }
}

/// Diagonal semigroup action: coordinates become `e^{i z_j t} x_j`. Since
/// `Im z_j > 0`, every factor has modulus `e^{-t Im z_j} <= 1`.
pub fn semigroup_apply(sys: &HalfPlaneSystem, t: f64, x: &[C64]) -> Result<Vec<C64>> {
    if !(t >= 0.0) {
        return Err(Error::invalid(format!(
            "semigroup time must be >= 0, got {t}"
        )));
    }
    if x.len() != sys.len() {
        return Err(Error::invalid(format!(
            "state has {} coordinates for {} atoms",
            x.len(),
            sys.len()
        )));
    }
    Ok(sys
        .positions
        .iter()
        .zip(x)
        .map(|(z, v)| (C64::new(0.0, 1.0) * z * t).exp() * v)
        .collect())
}

/// Observation functional `Cx = Σ w_j x_j`.
pub fn observe(sys: &HalfPlaneSystem, x: &[C64]) -> Result<C64> {
    if x.len() != sys.len() {
        return Err(Error::invalid(format!(
            "state has {} coordinates for {} atoms",
            x.len(),
            sys.len()
        )));
    }
    Ok(sys
        .weights
        .iter()
        .zip(x)
        .map(|(w, v)| w * v)
        .fold(C64::new(0.0, 0.0), |a, b| a + b))
}

/// `||C R(λ, A)|| = sqrt(Σ w_j / |λ - i z_j|²)` for `Re λ > 0`.
pub fn resolvent_functional_norm(sys: &HalfPlaneSystem, lambda: C64) -> Result<f64> {
    if !(lambda.re > 0.0) {
        return Err(Error::invalid(format!(
            "resolvent needs Re lambda > 0, got {}",
            lambda.re
        )));
    }
    Ok(sys
        .positions
        .iter()
        .zip(&sys.weights)
        .map(|(z, w)| w / (lambda - C64::new(0.0, 1.0) * z).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

/// Sample grid for resolvent suprema: `Re λ` log-spaced over
/// `[1e-4, 1e4]`, `Im λ` zero plus symmetric log-spaced values.
#[derive(Debug, Clone)]
pub struct LambdaGrid {
    points: Vec<C64>,
}

impl LambdaGrid {
    pub fn new(re_points: usize, im_points_per_side: usize) -> Result<Self> {
        if re_points < 2 {
            return Err(Error::invalid(
                "lambda grid needs >= 2 real points".to_string(),
            ));
        }
        let mut res = Vec::with_capacity(re_points);
        let (a, b) = ((1e-4f64).ln(), (1e4f64).ln());
        for i in 0..re_points {
            res.push((a + (b - a) * i as f64 / (re_points - 1) as f64).exp());
        }
        let mut ims = vec![0.0f64];
        if im_points_per_side > 0 {
            for i in 0..im_points_per_side {
                let v =
                    (a + (b - a) * i as f64 / (im_points_per_side.max(2) - 1).max(1) as f64).exp();
                ims.push(v);
                ims.push(-v);
            }
        }
        let mut points = Vec::with_capacity(res.len() * ims.len());
        for &re in &res {
            for &im in &ims {
                points.push(C64::new(re, im));
            }
        }
        Ok(LambdaGrid { points })
    }

    /// 48 real abscissae with 16 imaginary offsets per side.
    pub fn standard() -> Self {
        LambdaGrid::new(48, 16).expect("standard grid parameters are valid")
    }

    pub fn points(&self) -> &[C64] {
        &self.points
    }
}

/// Result of a resolvent-supremum scan: the value and the grid point where
/// it was attained.
#[derive(Debug, Clone, Copy)]
pub struct ResolventSup {
    pub value: f64,
    pub at: C64,
}

/// `sup (Re λ)^{(1-α)/2} ||C R(λ, A)||` over the grid.
pub fn resolvent_sup(sys: &HalfPlaneSystem, alpha: f64, grid: &LambdaGrid) -> Result<ResolventSup> {
    check_alpha_open(alpha)?;
    if grid.points().is_empty() {
        return Err(Error::invalid("empty lambda grid".to_string()));
    }
    let mut best = ResolventSup {
        value: 0.0,
        at: grid.points()[0],
    };
    for &l in grid.points() {
        let v = l.re.powf((1.0 - alpha) / 2.0) * resolvent_functional_norm(sys, l)?;
        if v > best.value {
            best = ResolventSup { value: v, at: l };
        }
    }
    Ok(best)
}

fn check_alpha_open(alpha: f64) -> Result<()> {
    if !(alpha > -1.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "weight exponent must lie in (-1, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// Gram matrix of the weighted output map:
/// `G_{jk} = sqrt(w_j w_k) Γ(1+α) s_{jk}^{-(1+α)}` with
/// `s_{jk} = -i (z_j - conj(z_k))`; `Re s = Im z_j + Im z_k > 0`, so the
/// principal power never crosses the branch cut.
pub fn admissibility_gram(sys: &HalfPlaneSystem, alpha: f64) -> Result<Vec<Vec<C64>>> {
    check_alpha_open(alpha)?;
    let gam = gamma(1.0 + alpha);
    let n = sys.len();
    let mut rows = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            let s = -C64::new(0.0, 1.0) * (sys.positions[j] - sys.positions[k].conj());
            let val = (sys.weights[j] * sys.weights[k]).sqrt() * gam * s.powf(-(1.0 + alpha));
            row.push(val);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Smallest `M` with `∫₀^∞ t^α |C T(t) x|² dt <= M² ||x||²`:
/// `sqrt(λ_max)` of the admissibility Gram matrix.
pub fn admissibility_constant(sys: &HalfPlaneSystem, alpha: f64) -> Result<f64> {
    check_alpha_open(alpha)?;
    if sys.is_empty() {
        return Ok(0.0);
    }
    let gram = admissibility_gram(sys, alpha)?;
    let out = dense_largest_eigenvalue(&gram);
    Ok(out.value.max(0.0).sqrt())
}

/// Ratio `( ∫ |∫₀^∞ e^{izt} t^{α/2} v(t) dt|² dμ(z) )^{1/2} / ||v||_{L²}`
/// for an unweighted signal `v`; by the necessity of the Dirichlet
/// embedding this never exceeds the admissibility constant.
pub fn laplace_embedding_ratio(
    sys: &HalfPlaneSystem,
    alpha: f64,
    v: &WeightedSignal,
) -> Result<f64> {
    check_alpha_open(alpha)?;
    if v.exponent != 0.0 {
        return Err(Error::invalid(format!(
            "embedding test needs an exponent-0 signal, got exponent {}",
            v.exponent
        )));
    }
    let denom_sq = v.norm_sq();
    if denom_sq <= 0.0 {
        return Err(Error::invalid(
            "embedding test needs a nonzero signal".to_string(),
        ));
    }
    let qw = v.grid.quad_weights();
    let ts = v.grid.points();
    let mut total = 0.0;
    for (z, w) in sys.positions.iter().zip(&sys.weights) {
        let mut f = C64::new(0.0, 0.0);
        for ((t, q), s) in ts.iter().zip(&qw).zip(&v.samples) {
            f += q * t.powf(alpha / 2.0) * (C64::new(0.0, 1.0) * z * *t).exp() * s;
        }
        total += w * f.norm_sqr();
    }
    Ok(total.sqrt() / denom_sq.sqrt())
}

/// Boundary-to-signal constant in the analytic representation: with the
/// convention `(ℱf)(t) = ∫ f(x) e^{-ixt} dx`, the harmonic extension of
/// `f = I_β * g` is the real part of `G(z) = ∫₀^∞ e^{izt} w(t) dt` for
/// `w(t) = (1/π) · 2 Γ(β) cos(πβ/2) · t^{-β} (ℱg)(t)`, `β = -α/2`. The
/// numeric constant is convention-bound; only ratios are contractual.
pub fn witness_constant(alpha: f64) -> Result<f64> {
    if !(alpha > -1.0 && alpha < 0.0) {
        return Err(Error::invalid(format!(
            "analytic witness needs alpha in (-1, 0), got {alpha}"
        )));
    }
    let beta = -alpha / 2.0;
    Ok(2.0 * gamma(beta) * (std::f64::consts::PI * beta / 2.0).cos() / std::f64::consts::PI)
}

/// Signal `w(t)` of the analytic representation of the capacity density
/// `g`: `w(t) = (1/π) 2Γ(β) cos(πβ/2) t^{α/2} (ℱg)(t)` on the time grid,
/// with `(ℱg)(t) = Σ_cells g_j e^{-i(a_j+b_j)t/2} · 2 sin((b_j-a_j)t/2)/t`
/// summed in closed form per cell. The result carries weight exponent `α`.
pub fn analytic_witness(g: &DensityVector, alpha: f64, grid: &TimeGrid) -> Result<WeightedSignal> {
    let c = witness_constant(alpha)?;
    let h = g.grid.h();
    let samples: Vec<C64> = grid
        .points()
        .iter()
        .map(|&t| {
            // 2 sin(ht/2)/t is the exact cell Fourier factor; it tends to h
            // as t -> 0 and stays stable for all t > 0.
            let cell_factor = 2.0 * (h * t / 2.0).sin() / t;
            let mut ft = C64::new(0.0, 0.0);
            for (j, &v) in g.values.iter().enumerate() {
                if v != 0.0 {
                    let mid = g.grid.center(j);
                    ft += v * C64::from_polar(cell_factor, -mid * t);
                }
            }
            ft * c * t.powf(alpha / 2.0)
        })
        .collect();
    WeightedSignal::new(grid.clone(), samples, alpha)
}

/// `G(z) = ∫₀^∞ e^{izt} w(t) dt` by trapezoid quadrature on the signal's
/// grid; requires `Im z > 0` for the integral to converge.
pub fn witness_transform(w: &WeightedSignal, z: C64) -> Result<C64> {
    if !(z.im > 0.0) {
        return Err(Error::invalid(format!(
            "witness transform needs Im z > 0, got {}",
            z.im
        )));
    }
    let qw = w.grid.quad_weights();
    Ok(w.grid
        .points()
        .iter()
        .zip(&qw)
        .zip(&w.samples)
        .map(|((t, q), s)| q * (C64::new(0.0, 1.0) * z * *t).exp() * s)
        .fold(C64::new(0.0, 0.0), |a, b| a + b))
}
