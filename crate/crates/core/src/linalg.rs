//! Power iteration for largest eigenvalues of Hermitian positive semidefinite
//! operators, given only as matrix-vector products.
//!
//! Every caller in the crate needs the top of the spectrum of a Gram-type
//! operator (admissibility Grams, Hankel normal forms `A*A`). Operators may be
//! dense matrices or matrix-free closures; the iteration never materializes
//! anything beyond two work vectors.

use crate::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Parameters of the iteration. Defaults follow the crate-wide convention:
/// fixed cap of 300 iterations, relative Rayleigh-quotient stopping at 1e-10,
/// deterministic seeded start vector.
#[derive(Debug, Clone, Copy)]
pub struct PowerIteration {
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for PowerIteration {
    fn default() -> Self {
        PowerIteration {
            max_iter: 300,
            tol: 1e-10,
            seed: 0,
        }
    }
}

/// Outcome of a power iteration run.
#[derive(Debug, Clone)]
pub struct PowerOutcome {
    /// Largest eigenvalue estimate (Rayleigh quotient of the final iterate).
    pub value: f64,
    /// Iterations actually performed.
    pub iterations: usize,
    /// Whether the relative Rayleigh-quotient change dropped below tolerance.
    pub converged: bool,
    /// Final unit iterate; callers use it as an extremal direction.
    pub vector: Vec<C64>,
}

impl PowerIteration {
    /// Largest eigenvalue of a Hermitian PSD operator of dimension `dim`.
    ///
    /// `apply` must compute `out = A v` and may assume `out` is zeroed.
    pub fn largest_eigenvalue<F>(&self, dim: usize, mut apply: F) -> PowerOutcome
    where
        F: FnMut(&[C64], &mut [C64]),
    {
        if dim == 0 {
            return PowerOutcome {
                value: 0.0,
                iterations: 0,
                converged: true,
                vector: vec![],
            };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut v: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        normalize(&mut v);
        let mut av = vec![C64::new(0.0, 0.0); dim];
        let mut rayleigh = 0.0f64;
        let mut iterations = 0;
        let mut converged = false;
        for it in 1..=self.max_iter {
            iterations = it;
            av.iter_mut().for_each(|x| *x = C64::new(0.0, 0.0));
            apply(&v, &mut av);
            // Rayleigh quotient <v, Av>; real for Hermitian A and unit v.
            let rq: f64 = v.iter().zip(&av).map(|(a, b)| (a.conj() * b).re).sum();
            let norm = l2_norm(&av);
            if norm == 0.0 {
                // v is in the kernel; the operator restricted to the iterate is zero.
                return PowerOutcome {
                    value: 0.0,
                    iterations: it,
                    converged: true,
                    vector: v,
                };
            }
            av.iter_mut().for_each(|x| *x /= norm);
            std::mem::swap(&mut v, &mut av);
            let change = (rq - rayleigh).abs() / rq.abs().max(f64::MIN_POSITIVE);
            rayleigh = rq;
            if it > 1 && change < self.tol {
                converged = true;
                break;
            }
        }
        PowerOutcome {
            value: rayleigh.max(0.0),
            iterations,
            converged,
            vector: v,
        }
    }

    /// Largest singular value of a general operator via power iteration on
    /// `A* A`. `apply` computes `out = A v` (dimension `rows`), `apply_adj`
    /// computes `out = A* u` (dimension `cols`).
    pub fn largest_singular_value<F, G>(
        &self,
        rows: usize,
        cols: usize,
        mut apply: F,
        mut apply_adj: G,
    ) -> PowerOutcome
    where
        F: FnMut(&[C64], &mut [C64]),
        G: FnMut(&[C64], &mut [C64]),
    {
        let mut tmp = vec![C64::new(0.0, 0.0); rows];
        let outcome = self.largest_eigenvalue(cols, |v, out| {
            tmp.iter_mut().for_each(|x| *x = C64::new(0.0, 0.0));
            apply(v, &mut tmp);
            apply_adj(&tmp, out);
        });
        PowerOutcome {
            value: outcome.value.max(0.0).sqrt(),
            ..outcome
        }
    }
}

/// Largest eigenvalue of a dense Hermitian PSD matrix in row-major storage.
pub fn dense_largest_eigenvalue(matrix: &[Vec<C64>]) -> PowerOutcome {
    let n = matrix.len();
    PowerIteration::default().largest_eigenvalue(n, |v, out| {
        for (row, out_i) in matrix.iter().zip(out.iter_mut()) {
            *out_i = row.iter().zip(v).map(|(m, x)| m * x).sum();
        }
    })
}

pub(crate) fn l2_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub(crate) fn normalize(v: &mut [C64]) {
    let n = l2_norm(v);
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}
