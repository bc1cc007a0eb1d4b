//! The unilateral-shift side: generalized Hankel matrices
//! `(Γ_c^α)_{n,m} = (1+n)^{α/2} c_{n+m}`, their operator norms (dense and
//! FFT-accelerated), the weighted admissibility sum they encode, and the
//! explicit resolvent formula for observation functionals on `H²(𝔻)`.

use crate::disk::OmegaGrid;
use crate::error::{Error, Result};
use crate::linalg::PowerIteration;
use crate::spaces::{
    bloch_seminorm, fractional_derivative, lacunary_witness, DiskGrid, TaylorCoefficients,
};
use crate::C64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// A truncated generalized Hankel operator: coefficients `c`, row weight
/// exponent `α ∈ [0, 1)` (`α = 0` is the classical Hankel matrix), and
/// truncation `N` (matrix is `N × N`; `c` is zero-padded as needed).
#[derive(Debug, Clone)]
pub struct HankelSpec {
    pub c: TaylorCoefficients,
    pub alpha: f64,
    pub truncation: usize,
}

impl HankelSpec {
    pub fn new(c: TaylorCoefficients, alpha: f64, truncation: usize) -> Result<Self> {
        if !((0.0..1.0).contains(&alpha)) {
            return Err(Error::invalid(format!(
                "Hankel row weight needs alpha in [0, 1), got {alpha}"
            )));
        }
        if truncation == 0 {
            return Err(Error::invalid("Hankel truncation must be >= 1".to_string()));
        }
        Ok(HankelSpec {
            c,
            alpha,
            truncation,
        })
    }

    fn coeff(&self, k: usize) -> C64 {
        self.c.coeffs.get(k).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    fn row_scale(&self, n: usize) -> f64 {
        (1.0 + n as f64).powf(self.alpha / 2.0)
    }
}

/// Dense `N × N` matrix with entries `(1+n)^{α/2} c_{n+m}`.
pub fn hankel_matrix(spec: &HankelSpec) -> Vec<Vec<C64>> {
    let n = spec.truncation;
    (0..n)
        .map(|row| {
            let s = spec.row_scale(row);
            (0..n).map(|col| s * spec.coeff(row + col)).collect()
        })
        .collect()
}

/// Largest singular value of a dense matrix by power iteration on `A*A`
/// with a seeded deterministic start.
pub fn operator_norm(matrix: &[Vec<C64>], iterations: usize, seed: u64) -> Result<f64> {
    if iterations < 50 {
        return Err(Error::invalid(format!(
            "operator norm needs >= 50 iterations, got {iterations}"
        )));
    }
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 {
        return Ok(0.0);
    }
    let params = PowerIteration {
        max_iter: iterations,
        tol: 1e-10,
        seed,
    };
    let out = params.largest_singular_value(
        rows,
        cols,
        |v, out| {
            for (o, row) in out.iter_mut().zip(matrix) {
                *o = row.iter().zip(v).map(|(m, x)| m * x).sum();
            }
        },
        |u, out| {
            for (j, o) in out.iter_mut().enumerate() {
                *o = matrix.iter().zip(u).map(|(row, y)| row[j].conj() * y).sum();
            }
        },
    );
    Ok(out.value)
}

/// FFT-backed application of a Hankel spec: `(Γv)_n` is a correlation of
/// `c` with `v`, so one forward/inverse transform pair per product.
struct FastHankel {
    n: usize,
    len: usize,
    row_scale: Vec<f64>,
    c_hat: Vec<C64>,
    c_bar_hat: Vec<C64>,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
}

impl FastHankel {
    fn new(spec: &HankelSpec) -> Self {
        let n = spec.truncation;
        let len = (2 * n).next_power_of_two();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(len);
        let ifft = planner.plan_fft_inverse(len);
        let mut c_pad = vec![C64::new(0.0, 0.0); len];
        let mut c_bar_pad = vec![C64::new(0.0, 0.0); len];
        for k in 0..(2 * n - 1) {
            let c = spec.coeff(k);
            c_pad[k] = c;
            c_bar_pad[k] = c.conj();
        }
        fft.process(&mut c_pad);
        fft.process(&mut c_bar_pad);
        FastHankel {
            n,
            len,
            row_scale: (0..n).map(|r| spec.row_scale(r)).collect(),
            c_hat: c_pad,
            c_bar_hat: c_bar_pad,
            fft,
            ifft,
        }
    }

    /// Correlation `out_k = Σ_m kernel_{k+m} src_m` for `k < n`, through a
    /// circular convolution with the reversed source.
    fn correlate(&self, kernel_hat: &[C64], src: &[C64], buf: &mut Vec<C64>) {
        buf.clear();
        buf.resize(self.len, C64::new(0.0, 0.0));
        for (k, &s) in src.iter().enumerate() {
            buf[self.n - 1 - k] = s;
        }
        self.fft.process(buf);
        for (b, k) in buf.iter_mut().zip(kernel_hat) {
            *b *= k;
        }
        self.ifft.process(buf);
        let scale = 1.0 / self.len as f64;
        for b in buf.iter_mut() {
            *b *= scale;
        }
    }

    fn apply(&self, v: &[C64], out: &mut [C64], buf: &mut Vec<C64>) {
        self.correlate(&self.c_hat, v, buf);
        for (row, o) in out.iter_mut().enumerate() {
            *o = self.row_scale[row] * buf[row + self.n - 1];
        }
    }

    fn apply_adjoint(&self, u: &[C64], out: &mut [C64], buf: &mut Vec<C64>) {
        let scaled: Vec<C64> = u.iter().zip(&self.row_scale).map(|(x, s)| s * x).collect();
        self.correlate(&self.c_bar_hat, &scaled, buf);
        for (col, o) in out.iter_mut().enumerate() {
            *o = buf[col + self.n - 1];
        }
    }
}

/// Largest singular value of `Γ_c^α` using the FFT product (`O(N log N)`)
/// per iteration; matches [`operator_norm`] of the dense matrix to well
/// below 1e-8.
pub fn hankel_norm(spec: &HankelSpec) -> Result<f64> {
    let fast = FastHankel::new(spec);
    let mut buf = Vec::new();
    let mut buf2 = Vec::new();
    let out = PowerIteration::default().largest_singular_value(
        spec.truncation,
        spec.truncation,
        |v, out| fast.apply(v, out, &mut buf),
        |u, out| fast.apply_adjoint(u, out, &mut buf2),
    );
    Ok(out.value)
}

/// `Σ_{n=0}^{N} (1+n)^α |⟨Sⁿ f, c⟩|²` with `⟨Sⁿ f, c⟩ = Σ_m f_m conj(c_{n+m})`,
/// computed directly; equals `||Γ_c^α conj(f)||²` exactly on truncations.
pub fn admissibility_sum(
    c: &TaylorCoefficients,
    alpha: f64,
    f: &TaylorCoefficients,
    n_trunc: usize,
) -> f64 {
    let mut acc = 0.0;
    for n in 0..=n_trunc {
        let mut inner = C64::new(0.0, 0.0);
        for (m, fm) in f.coeffs.iter().enumerate() {
            if let Some(cq) = c.coeffs.get(n + m) {
                inner += fm * cq.conj();
            }
        }
        acc += (1.0 + n as f64).powf(alpha) * inner.norm_sqr();
    }
    acc
}

/// `||C (I - conj(ω) S)^{-1}||` for the observation functional with symbol
/// `c`: the norm of `(z c(z) - ω c(ω)) / (z - ω)` in `H²`, whose Taylor
/// coefficients are `a_k = Σ_{m ≥ k} c_m ω^{m-k}` (backward recurrence
/// `a_k = c_k + ω a_{k+1}`, exact for polynomial `c`). The sum is taken
/// over `k ≤ N`.
pub fn shift_resolvent_norm(c: &TaylorCoefficients, omega: C64, n_trunc: usize) -> Result<f64> {
    if !(omega.norm() < 1.0) {
        return Err(Error::invalid(format!(
            "shift resolvent needs |omega| < 1, got {}",
            omega.norm()
        )));
    }
    let mut acc = 0.0;
    let mut a = C64::new(0.0, 0.0);
    let top = c.coeffs.len().saturating_sub(1);
    for k in (0..=top).rev() {
        a = c.coeffs[k] + omega * a;
        if k <= n_trunc {
            acc += a.norm_sqr();
        }
    }
    Ok(acc.sqrt())
}

/// `sup (1-|ω|²)^{(1-α)/2} ||C (I - conj(ω) S)^{-1}||` over the grid.
pub fn shift_resolvent_sup(
    c: &TaylorCoefficients,
    alpha: f64,
    n_trunc: usize,
    grid: &OmegaGrid,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "shift resolvent weight needs alpha in (0, 1), got {alpha}"
        )));
    }
    let mut best = 0.0f64;
    for &omega in grid.points() {
        let v = (1.0 - omega.norm_sqr()).powf((1.0 - alpha) / 2.0)
            * shift_resolvent_norm(c, omega, n_trunc)?;
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// One row of the shift counterexample sweep.
#[derive(Debug, Clone, Copy)]
pub struct ShiftRow {
    pub blocks: usize,
    pub bloch: f64,
    pub resolvent_sup: f64,
    pub hankel_alpha: f64,
    pub hankel_beta_half: f64,
    pub hankel_beta_zero: f64,
}

/// For each block count `K`: build the lacunary witness, measure the Bloch
/// profile of `I_1 c` at weight `2 - α/2`, the weighted resolvent
/// supremum, and the Hankel norms at row weights `α`, `α/2`, and `0`, all
/// at the given truncation.
pub fn shift_sweep(alpha: f64, k_list: &[usize], n_trunc: usize) -> Result<Vec<ShiftRow>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "shift sweep needs alpha in (0, 1), got {alpha}"
        )));
    }
    let grid = DiskGrid::standard();
    let omega_grid = OmegaGrid::standard();
    let mut rows = Vec::with_capacity(k_list.len());
    for &k in k_list {
        let c = lacunary_witness(alpha, k)?;
        let bloch = bloch_seminorm(&fractional_derivative(&c, 1.0), 2.0 - alpha / 2.0, &grid)?;
        let resolvent = shift_resolvent_sup(&c, alpha, n_trunc, &omega_grid)?;
        let norm_at =
            |beta: f64| -> Result<f64> { hankel_norm(&HankelSpec::new(c.clone(), beta, n_trunc)?) };
        rows.push(ShiftRow {
            blocks: k,
            bloch,
            resolvent_sup: resolvent,
            hankel_alpha: norm_at(alpha)?,
            hankel_beta_half: norm_at(alpha / 2.0)?,
            hankel_beta_zero: norm_at(0.0)?,
        });
    }
    Ok(rows)
}
