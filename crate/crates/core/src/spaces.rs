//! Coefficient-level function spaces on the unit disk: weighted Dirichlet
//! norms, fractional derivatives, area-integral norms, Bloch and
//! Green-potential seminorms, a dyadic Carleson test for BMOA-type
//! membership, and the explicit lacunary witness driving the shift
//! experiment.
//!
//! Everything operates on finite Taylor truncations; evaluation happens
//! strictly inside the disk where the series converge absolutely.

use crate::error::{Error, Result};
use crate::measure::{one_box_constant, Ambient, Atom, AtomicMeasure};
use crate::C64;

/// Finite Taylor series `f(z) = Σ_{n=0}^{N} f_n z^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoefficients {
    pub coeffs: Vec<C64>,
}

impl TaylorCoefficients {
    pub fn new(coeffs: Vec<C64>) -> Self {
        TaylorCoefficients { coeffs }
    }

    pub fn zero(truncation: usize) -> Self {
        TaylorCoefficients {
            coeffs: vec![C64::new(0.0, 0.0); truncation + 1],
        }
    }

    /// `z^n` with unit coefficient.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
        coeffs[n] = C64::new(1.0, 0.0);
        TaylorCoefficients { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }

    /// Horner evaluation; callers keep `|z| < 1` by construction.
    pub fn evaluate(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Ordinary derivative by coefficient shift: `(f')_n = (n+1) f_{n+1}`.
    pub fn derivative(&self) -> TaylorCoefficients {
        if self.coeffs.len() <= 1 {
            return TaylorCoefficients::zero(0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * n as f64)
            .collect();
        TaylorCoefficients { coeffs }
    }

    /// Serialize as `{"truncation": N, "coefficients": [[re, im], ...]}`.
    pub fn to_json(&self) -> String {
        let pairs: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|c| serde_json::json!([c.re, c.im]))
            .collect();
        serde_json::json!({ "truncation": self.truncation(), "coefficients": pairs }).to_string()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("coefficient JSON: {e}")))?;
        let arr = v
            .get("coefficients")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::Parse("missing coefficients array".to_string()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for pair in arr {
            let p = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("coefficient entries must be [re, im]".to_string()))?;
            let re = p[0]
                .as_f64()
                .ok_or_else(|| Error::Parse("non-numeric re".to_string()))?;
            let im = p[1]
                .as_f64()
                .ok_or_else(|| Error::Parse("non-numeric im".to_string()))?;
            coeffs.push(C64::new(re, im));
        }
        if let Some(t) = v.get("truncation").and_then(|t| t.as_u64()) {
            // Matches `truncation()`: the empty list also reports degree 0.
            if t as usize != coeffs.len().saturating_sub(1) {
                return Err(Error::Parse(format!(
                    "truncation {t} disagrees with {} coefficients",
                    coeffs.len()
                )));
            }
        }
        Ok(TaylorCoefficients { coeffs })
    }
}

/// `sqrt( Σ (1+n)^α |f_n|² )`.
pub fn dirichlet_norm(f: &TaylorCoefficients, alpha: f64) -> f64 {
    f.coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| (1.0 + n as f64).powf(alpha) * c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Fractional derivative `I_β`: coefficients become `(1+n)^β f_n`; the
/// family is a group: `I_β ∘ I_γ = I_{β+γ}` exactly on coefficients.
pub fn fractional_derivative(f: &TaylorCoefficients, beta: f64) -> TaylorCoefficients {
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c * (1.0 + n as f64).powf(beta))
        .collect();
    TaylorCoefficients { coeffs }
}

/// Polar quadrature grid: dyadic radial bands `[1-2^{-j}, 1-2^{-j-1}]`
/// each split into uniform sub-rings, crossed with uniform angles. Ring
/// edges are kept so weights singular at the boundary can be integrated
/// exactly in the radial variable.
#[derive(Debug, Clone)]
pub struct DiskGrid {
    /// Strictly increasing radial cell edges, `edges[0] = 0`, last < 1.
    edges: Vec<f64>,
    angles: usize,
}

impl DiskGrid {
    pub fn new(depth: usize, subrings: usize, angles: usize) -> Result<Self> {
        if depth == 0 || subrings == 0 || angles == 0 {
            return Err(Error::invalid(
                "disk grid needs positive depth, subrings, and angle count".to_string(),
            ));
        }
        let mut edges = vec![0.0];
        for j in 0..depth {
            let lo = 1.0 - 0.5f64.powi(j as i32);
            let width = 0.5f64.powi(j as i32 + 1);
            for s in 1..=subrings {
                edges.push(lo + width * s as f64 / subrings as f64);
            }
        }
        Ok(DiskGrid { edges, angles })
    }

    /// Depth 12, 8 sub-rings per band, 256 angles (24576 cells).
    pub fn standard() -> Self {
        DiskGrid::new(12, 8, 256).expect("standard grid parameters are valid")
    }

    pub fn angle_count(&self) -> usize {
        self.angles
    }

    pub fn ring_count(&self) -> usize {
        self.edges.len() - 1
    }

    /// Outermost covered radius (strictly below 1).
    pub fn outer_radius(&self) -> f64 {
        *self.edges.last().expect("grid has edges")
    }

    /// Cell center `z` and plain-area weight for every cell, ring-major.
    pub fn nodes(&self) -> Vec<(C64, f64)> {
        let mut out = Vec::with_capacity(self.ring_count() * self.angles);
        for ring in 0..self.ring_count() {
            let (a, b) = (self.edges[ring], self.edges[ring + 1]);
            let r = 0.5 * (a + b);
            let area = std::f64::consts::PI * (b * b - a * a) / self.angles as f64;
            for i in 0..self.angles {
                let theta = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / self.angles as f64;
                out.push((C64::from_polar(r, theta), area));
            }
        }
        out
    }

    fn ring_edges(&self, ring: usize) -> (f64, f64) {
        (self.edges[ring], self.edges[ring + 1])
    }
}

/// `sqrt( ∫_𝔻 |f(z)|² (1-|z|²)^{-(1+β)} dA(z) )` for `β < 0`.
///
/// The radial factor is integrated exactly per ring through the
/// antiderivative `(1-ρ²)^{-β} / (2β)`, with `|f|²` frozen at the ring
/// midradius; the uncovered outer annulus is closed with `|f|²` frozen at
/// the outer edge (its exact radial integral tends to 0 as `β < 0`).
pub fn area_dirichlet_norm(f: &TaylorCoefficients, beta: f64, grid: &DiskGrid) -> Result<f64> {
    if !(beta < 0.0) {
        return Err(Error::invalid(format!(
            "area norm needs beta < 0 for an integrable weight, got {beta}"
        )));
    }
    let radial = |rho: f64| (1.0 - rho * rho).powf(-beta) / (2.0 * beta);
    let dtheta = 2.0 * std::f64::consts::PI / grid.angles as f64;
    let mut acc = 0.0;
    for ring in 0..grid.ring_count() {
        let (a, b) = grid.ring_edges(ring);
        let r = 0.5 * (a + b);
        let w = dtheta * (radial(b) - radial(a));
        for i in 0..grid.angles {
            let theta = dtheta * (i as f64 + 0.5);
            acc += w * f.evaluate(C64::from_polar(r, theta)).norm_sqr();
        }
    }
    // Boundary closure over the uncovered annulus [outer, 1).
    let outer = grid.outer_radius();
    let w_tail = dtheta * (0.0 - radial(outer));
    for i in 0..grid.angles {
        let theta = dtheta * (i as f64 + 0.5);
        acc += w_tail * f.evaluate(C64::from_polar(outer, theta)).norm_sqr();
    }
    Ok(acc.max(0.0).sqrt())
}

/// `sup_z |f'(z)| (1-|z|²)^δ` over grid nodes plus the origin; `δ > 1`.
pub fn bloch_seminorm(f: &TaylorCoefficients, delta: f64, grid: &DiskGrid) -> Result<f64> {
    if !(delta > 1.0) {
        return Err(Error::invalid(format!(
            "Bloch weight needs delta > 1, got {delta}"
        )));
    }
    let df = f.derivative();
    let mut best = df.evaluate(C64::new(0.0, 0.0)).norm();
    for (z, _) in grid.nodes() {
        let v = df.evaluate(z).norm() * (1.0 - z.norm_sqr()).powf(delta);
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

/// Green function `g(z, a) = -ln |(a-z)/(1-conj(a) z)|`, positive on the
/// disk and symmetric in its arguments.
pub fn green(z: C64, a: C64) -> f64 {
    -((a - z).norm() / (C64::new(1.0, 0.0) - a.conj() * z).norm()).ln()
}

/// `sup_a ∫ |f'(z)|² (1-|z|²)^q g(z, a) dA(z)` over the given `a` samples,
/// `q ∈ (0, 2)`. Cells hit by the log singularity (center within one
/// equivalent-area cell radius of `a`) use the exact disk average of
/// `-ln|a-z|`, which is `-(ln ρ - 1/2 + d²/(2ρ²))` for center distance
/// `d < ρ`.
pub fn f_space_seminorm(
    f: &TaylorCoefficients,
    q: f64,
    a_points: &[C64],
    grid: &DiskGrid,
) -> Result<f64> {
    if !(q > 0.0 && q < 2.0) {
        return Err(Error::invalid(format!(
            "F-space exponent must lie in (0, 2), got {q}"
        )));
    }
    if a_points.is_empty() {
        return Err(Error::invalid(
            "F-space seminorm needs at least one a-sample".to_string(),
        ));
    }
    let df = f.derivative();
    let nodes = grid.nodes();
    // Precompute the a-independent factor per node.
    let base: Vec<f64> = nodes
        .iter()
        .map(|(z, w)| w * df.evaluate(*z).norm_sqr() * (1.0 - z.norm_sqr()).powf(q))
        .collect();
    let mut best = 0.0f64;
    for &a in a_points {
        if a.norm() >= 1.0 {
            return Err(Error::invalid(format!(
                "a-sample outside the open disk: |a| = {}",
                a.norm()
            )));
        }
        let mut acc = 0.0;
        for ((z, w), b) in nodes.iter().zip(&base) {
            let rho = (w / std::f64::consts::PI).sqrt();
            let d = (a - z).norm();
            let ln_dist = if d < rho {
                rho.ln() - 0.5 + d * d / (2.0 * rho * rho)
            } else {
                d.ln()
            };
            let g = -ln_dist + (C64::new(1.0, 0.0) - a.conj() * z).norm().ln();
            acc += b * g;
        }
        if acc > best {
            best = acc;
        }
    }
    Ok(best)
}

/// Default `a`-samples: dyadic radii `1-2^{-j}` crossed with 16 uniform
/// angles (plus the origin once). Radii sit on ring edges and angles are
/// not half-offset, so the samples avoid the quadrature nodes.
pub fn standard_a_points(depth: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0)];
    for j in 1..=depth {
        let r = 1.0 - 0.5f64.powi(j as i32);
        for i in 0..16 {
            let theta = 2.0 * std::f64::consts::PI * i as f64 / 16.0;
            out.push(C64::from_polar(r, theta));
        }
    }
    out
}

/// One-box Carleson constant (exponent 1) of the discretized measure
/// `|(I_β f)(z)|² (1-|z|²)^{2β-1} dA(z)` for `β > 0`: a finite-truncation
/// surrogate for the BMOA membership test. The measure is sampled on a
/// fixed polar grid; the scan depth controls how small the probed boxes
/// get.
pub fn carleson_bmoa_test(f: &TaylorCoefficients, beta: f64, depth: usize) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::invalid(format!(
            "Carleson test needs beta > 0, got {beta}"
        )));
    }
    let g = fractional_derivative(f, beta);
    let grid = DiskGrid::new(10, 4, 128).expect("static grid parameters are valid");
    let mut atoms = Vec::new();
    for (z, w) in grid.nodes() {
        let weight = w * g.evaluate(z).norm_sqr() * (1.0 - z.norm_sqr()).powf(2.0 * beta - 1.0);
        if weight > 0.0 {
            atoms.push(Atom {
                position: z,
                weight,
            });
        }
    }
    let mu = AtomicMeasure::new(Ambient::Disk, atoms)?;
    one_box_constant(&mu, 1.0, depth)
}

/// Lacunary coefficient pattern behind the shift counterexample:
/// `c_{2^k} = 2^{k(1-α/2)} / (1+2^k)` for `k = 0..K-1`, zeros elsewhere.
/// Then `I_1 c` has lacunary amplitudes `2^{k(1-α/2)}` (bounded Bloch
/// profile at weight `2-α/2`) while `I_{α/2} c` has near-unit amplitudes
/// in every block, so its coefficient norm grows like `sqrt(K)`.
pub fn lacunary_witness(alpha: f64, blocks: usize) -> Result<TaylorCoefficients> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!(
            "lacunary witness needs alpha in (0, 1), got {alpha}"
        )));
    }
    if blocks == 0 {
        return Err(Error::invalid(
            "lacunary witness needs at least one block".to_string(),
        ));
    }
    let top = 1usize << (blocks - 1);
    let mut coeffs = vec![C64::new(0.0, 0.0); top + 1];
    for k in 0..blocks {
        let n = 1usize << k;
        coeffs[n] = C64::new(
            2f64.powf(k as f64 * (1.0 - alpha / 2.0)) / (1.0 + n as f64),
            0.0,
        );
    }
    Ok(TaylorCoefficients { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> TaylorCoefficients {
        TaylorCoefficients::new(
            (0..=degree)
                .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect(),
        )
    }

    #[test]
    fn dirichlet_norm_examples() {
        let one = TaylorCoefficients::monomial(0);
        assert_eq!(dirichlet_norm(&one, -0.7), 1.0);
        let zn = TaylorCoefficients::monomial(5);
        let alpha = 0.4;
        assert!((dirichlet_norm(&zn, alpha) - 6f64.powf(alpha / 2.0)).abs() < 1e-15);
        // Pythagoras over disjoint coefficient supports.
        let mut both = TaylorCoefficients::zero(5);
        both.coeffs[0] = C64::new(1.0, 0.0);
        both.coeffs[5] = C64::new(1.0, 0.0);
        let total = dirichlet_norm(&both, alpha);
        let a = dirichlet_norm(&one, alpha);
        let b = dirichlet_norm(&zn, alpha);
        assert!((total * total - a * a - b * b).abs() < 1e-14);
    }

    #[test]
    fn fractional_derivative_group_law_and_shift_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_poly(&mut rng, 12);
        // I_0 is the identity.
        assert_eq!(fractional_derivative(&f, 0.0), f);
        // I_{1/2} twice is I_1, exactly on coefficients.
        let twice = fractional_derivative(&fractional_derivative(&f, 0.5), 0.5);
        let once = fractional_derivative(&f, 1.0);
        for (a, b) in twice.coeffs.iter().zip(&once.coeffs) {
            assert!((a - b).norm() < 1e-14 * b.norm().max(1.0));
        }
        // I_1 f has coefficients (1+n) f_n = coefficients of (z f(z))'.
        let f = TaylorCoefficients::new(vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
        let i1 = fractional_derivative(&f, 1.0);
        assert!((i1.coeffs[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((i1.coeffs[1] - C64::new(2.0, 0.0)).norm() < 1e-15);
        // Norm shift: ||I_beta f||_gamma = ||f||_{gamma + 2 beta}.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = random_poly(&mut rng, 20);
        let lhs = dirichlet_norm(&fractional_derivative(&f, 0.3), -0.2);
        let rhs = dirichlet_norm(&f, -0.2 + 0.6);
        assert!((lhs - rhs).abs() < 1e-12 * rhs);
    }

    #[test]
    fn evaluation_matches_direct_sum() {
        let f = TaylorCoefficients::new(vec![
            C64::new(1.0, 0.0),
            C64::new(0.0, 2.0),
            C64::new(-1.5, 0.5),
        ]);
        let z = C64::new(0.3, -0.4);
        let direct = f.coeffs[0] + f.coeffs[1] * z + f.coeffs[2] * z * z;
        assert!((f.evaluate(z) - direct).norm() < 1e-15);
    }

    #[test]
    fn grid_area_converges_to_pi() {
        let coarse: f64 = DiskGrid::new(6, 2, 32)
            .unwrap()
            .nodes()
            .iter()
            .map(|(_, w)| w)
            .sum();
        let fine: f64 = DiskGrid::new(14, 8, 64)
            .unwrap()
            .nodes()
            .iter()
            .map(|(_, w)| w)
            .sum();
        let pi = std::f64::consts::PI;
        assert!((fine - pi).abs() < (coarse - pi).abs());
        assert!((fine - pi).abs() < 1e-3);
    }

    #[test]
    fn area_norm_monomials_match_beta_integral() {
        // ∫ |z^n|² (1-|z|²)^{-(1+β)} dA = π B(n+1, -β).
        let grid = DiskGrid::standard();
        for &beta in &[-0.5, -0.25] {
            for &n in &[0usize, 1, 4, 32] {
                let f = TaylorCoefficients::monomial(n);
                let got = area_dirichlet_norm(&f, beta, &grid).unwrap().powi(2);
                let expect = std::f64::consts::PI * gamma(n as f64 + 1.0) * gamma(-beta)
                    / gamma(n as f64 + 1.0 - beta);
                assert!(
                    (got - expect).abs() < 0.01 * expect,
                    "n={n} beta={beta}: {got} vs {expect}"
                );
            }
        }
        assert!(area_dirichlet_norm(&TaylorCoefficients::monomial(0), 0.0, &grid).is_err());
    }

    #[test]
    fn area_norm_comparable_to_coefficient_norm() {
        // The two norms are equivalent; record the empirical constant and
        // require it stays below 10 across 50 random polynomials.
        let grid = DiskGrid::standard();
        let beta = -0.5;
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut c = 1.0f64;
        for _ in 0..50 {
            let degree = rng.gen_range(1..40);
            let f = random_poly(&mut rng, degree);
            let area = area_dirichlet_norm(&f, beta, &grid).unwrap();
            let coeff = dirichlet_norm(&f, 2.0 * beta);
            let ratio = area / coeff;
            c = c.max(ratio.max(1.0 / ratio));
        }
        assert!(c < 10.0, "equivalence constant blew up: {c}");
    }

    #[test]
    fn bloch_examples() {
        let grid = DiskGrid::standard();
        let delta = 1.75;
        let constant = TaylorCoefficients::monomial(0);
        assert_eq!(bloch_seminorm(&constant, delta, &grid).unwrap(), 0.0);
        // f = z: |f'| = 1, weight maximal at the origin.
        let f = TaylorCoefficients::monomial(1);
        let got = bloch_seminorm(&f, delta, &grid).unwrap();
        assert!((got - 1.0).abs() < 1e-12, "got {got}");
        // f = z²: maximize 2r(1-r²)^δ; calculus places the max at
        // r = (1+2δ)^{-1/2}.
        let f = TaylorCoefficients::monomial(2);
        let got = bloch_seminorm(&f, delta, &grid).unwrap();
        let r = (1.0 + 2.0 * delta).powf(-0.5);
        let expect = 2.0 * r * (1.0 - r * r).powf(delta);
        assert!(
            (got - expect).abs() < 0.01 * expect,
            "got {got}, expect {expect}"
        );
        assert!(bloch_seminorm(&f, 1.0, &grid).is_err());
    }

    #[test]
    fn green_function_positive_and_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let z = C64::from_polar(
                rng.gen_range(0.0..0.95),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let a = C64::from_polar(
                rng.gen_range(0.0..0.95),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            if (z - a).norm() < 1e-6 {
                continue;
            }
            let g = green(z, a);
            assert!(g > 0.0, "green({z}, {a}) = {g}");
            assert!((g - green(a, z)).abs() < 1e-12 * g.max(1.0));
        }
    }

    #[test]
    fn f_space_rotation_covariance() {
        // Rotating coefficients by a grid-aligned angle permutes both the
        // node set and the a-samples, so the sup is unchanged.
        let grid = DiskGrid::new(8, 4, 64).unwrap();
        let a_pts = standard_a_points(6);
        let f = TaylorCoefficients::new(vec![
            C64::new(0.3, 0.0),
            C64::new(1.0, -0.5),
            C64::new(0.0, 0.8),
            C64::new(-0.6, 0.1),
        ]);
        let theta = 2.0 * std::f64::consts::PI * 4.0 / 16.0; // aligned with a-samples
        let rotated = TaylorCoefficients::new(
            f.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * C64::from_polar(1.0, theta * n as f64))
                .collect(),
        );
        let s1 = f_space_seminorm(&f, 0.5, &a_pts, &grid).unwrap();
        let s2 = f_space_seminorm(&rotated, 0.5, &a_pts, &grid).unwrap();
        assert!((s1 - s2).abs() < 1e-2 * s1, "{s1} vs {s2}");
    }

    #[test]
    fn f_space_refinement_stability() {
        let f = TaylorCoefficients::new(vec![
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(0.5, 0.5),
            C64::new(0.0, -0.7),
        ]);
        let a_pts = standard_a_points(6);
        let coarse = f_space_seminorm(&f, 0.7, &a_pts, &DiskGrid::new(8, 4, 64).unwrap()).unwrap();
        let fine = f_space_seminorm(&f, 0.7, &a_pts, &DiskGrid::new(9, 8, 128).unwrap()).unwrap();
        assert!(
            (coarse - fine).abs() < 0.05 * fine,
            "coarse {coarse} vs fine {fine}"
        );
    }

    #[test]
    fn f_space_monotone_in_exponent() {
        // (1-|z|²)^{q2} <= (1-|z|²)^{q1} for q2 > q1 on the disk, so the
        // seminorm can only shrink.
        let grid = DiskGrid::new(8, 4, 64).unwrap();
        let a_pts = standard_a_points(5);
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for _ in 0..5 {
            let f = random_poly(&mut rng, 8);
            let s1 = f_space_seminorm(&f, 0.4, &a_pts, &grid).unwrap();
            let s2 = f_space_seminorm(&f, 1.1, &a_pts, &grid).unwrap();
            assert!(s2 <= s1 * (1.0 + 1e-12), "{s2} > {s1}");
        }
    }

    #[test]
    fn carleson_test_zero_and_beta_consistency() {
        let zero = TaylorCoefficients::zero(4);
        assert_eq!(carleson_bmoa_test(&zero, 0.5, 6).unwrap(), 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = random_poly(&mut rng, 16);
        let c_half = carleson_bmoa_test(&f, 0.5, 8).unwrap();
        let c_one = carleson_bmoa_test(&f, 1.0, 8).unwrap();
        let ratio = (c_half / c_one).max(c_one / c_half);
        assert!(ratio < 10.0, "beta consistency factor {ratio}");
        assert!(carleson_bmoa_test(&f, 0.0, 6).is_err());
    }

    #[test]
    fn carleson_test_separates_square_summable_gaps() {
        // Lacunary series with ℓ² block coefficients stay bounded; the
        // non-ℓ² pattern with unit blocks drifts upward.
        let series = |k_max: usize, summable: bool| {
            let mut coeffs = vec![C64::new(0.0, 0.0); (1usize << k_max) + 1];
            for k in 1..=k_max {
                let amp = if summable { 1.0 / k as f64 } else { 1.0 };
                coeffs[1usize << k] = C64::new(amp, 0.0);
            }
            TaylorCoefficients::new(coeffs)
        };
        let bounded_8 = carleson_bmoa_test(&series(8, true), 0.5, 8).unwrap();
        let bounded_12 = carleson_bmoa_test(&series(12, true), 0.5, 8).unwrap();
        let growing_8 = carleson_bmoa_test(&series(8, false), 0.5, 8).unwrap();
        let growing_12 = carleson_bmoa_test(&series(12, false), 0.5, 8).unwrap();
        assert!(
            bounded_12 < bounded_8 * 1.25,
            "ℓ² pattern should stabilize: {bounded_8} -> {bounded_12}"
        );
        assert!(
            growing_12 > growing_8 * 1.3,
            "non-ℓ² pattern should grow: {growing_8} -> {growing_12}"
        );
    }

    #[test]
    fn lacunary_witness_formula() {
        let c = lacunary_witness(0.5, 1).unwrap();
        assert_eq!(c.coeffs.len(), 2);
        assert!((c.coeffs[1] - C64::new(0.5, 0.0)).norm() < 1e-15);
        let c = lacunary_witness(0.5, 4).unwrap();
        for k in 0..4 {
            let n = 1usize << k;
            let expect = 2f64.powf(k as f64 * 0.75) / (1.0 + n as f64);
            assert!((c.coeffs[n].re - expect).abs() < 1e-14);
        }
        assert!(lacunary_witness(1.5, 4).is_err());
        assert!(lacunary_witness(0.5, 0).is_err());
    }

    #[test]
    fn lacunary_witness_bloch_profile_stabilizes() {
        let alpha = 0.5;
        let grid = DiskGrid::standard();
        let delta = 2.0 - alpha / 2.0;
        let b8 = bloch_seminorm(
            &fractional_derivative(&lacunary_witness(alpha, 8).unwrap(), 1.0),
            delta,
            &grid,
        )
        .unwrap();
        let b16 = bloch_seminorm(
            &fractional_derivative(&lacunary_witness(alpha, 16).unwrap(), 1.0),
            delta,
            &grid,
        )
        .unwrap();
        assert!(
            (b16 - b8).abs() < 0.10 * b8,
            "Bloch profile drifts: {b8} -> {b16}"
        );
    }

    #[test]
    fn lacunary_witness_half_derivative_grows_like_sqrt_blocks() {
        // Block k of I_{α/2} c has amplitude (1+2^k)^{α/2-1} 2^{k(1-α/2)},
        // which tends to 1, so the coefficient norm grows like sqrt(K).
        let alpha = 0.5;
        let norm = |k: usize| {
            let c = lacunary_witness(alpha, k).unwrap();
            dirichlet_norm(&fractional_derivative(&c, alpha / 2.0), 0.0)
        };
        let predicted = |k: usize| {
            (0..k)
                .map(|j| {
                    let n = (1u64 << j) as f64;
                    (2f64.powf(j as f64 * (1.0 - alpha / 2.0)) * (1.0 + n).powf(alpha / 2.0 - 1.0))
                        .powi(2)
                })
                .sum::<f64>()
                .sqrt()
        };
        assert!((norm(16) - predicted(16)).abs() < 1e-12 * predicted(16));
        let ratio = norm(16) / norm(4);
        let expected = predicted(16) / predicted(4);
        assert!(
            (ratio - expected).abs() < 1e-12,
            "ratio {ratio} vs exact {expected}"
        );
        // The sub-unit early blocks push the finite-K ratio slightly above
        // the asymptotic sqrt(16/4) = 2.
        assert!(
            ratio > 1.8 && ratio < 2.6,
            "sqrt-growth trend broken: {ratio}"
        );
    }

    #[test]
    fn json_round_trip() {
        let f = TaylorCoefficients::new(vec![C64::new(1.5, -0.25), C64::new(0.0, 3.25)]);
        let text = f.to_json();
        let back = TaylorCoefficients::from_json(&text).unwrap();
        assert_eq!(f, back);
        assert!(TaylorCoefficients::from_json("{\"coefficients\": [[1]]}").is_err());
        assert!(TaylorCoefficients::from_json("not json").is_err());
        assert!(TaylorCoefficients::from_json(
            "{\"truncation\": 5, \"coefficients\": [[1.0, 2.0]]}"
        )
        .is_err());
    }
}
