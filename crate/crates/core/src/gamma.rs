//! Gamma function on the positive axis.
//!
//! Lanczos approximation (g = 7, 9 terms). The laboratory only needs
//! `gamma(1 + a)` for weight exponents `a` in (-1, 1), i.e. arguments in
//! (0, 2), where this approximation is accurate to well under 1e-12
//! relative error; the implementation is nevertheless valid for all x > 0.

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)] // published coefficients kept verbatim
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma(x) for x > 0. Panics on non-positive or non-finite input: callers
/// validate exponent ranges before reaching this low-level routine.
pub fn gamma(x: f64) -> f64 {
    assert!(x.is_finite() && x > 0.0, "gamma requires x > 0, got {x}");
    if x < 0.5 {
        // Reflection; sin(pi x) > 0 on (0, 1/2].
        std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x))
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
    }
}

#[cfg(test)]
mod tests {
    use super::gamma;

    const SQRT_PI: f64 = 1.772_453_850_905_516;

    #[test]
    fn known_values() {
        assert!((gamma(1.0) - 1.0).abs() < 1e-12);
        assert!((gamma(2.0) - 1.0).abs() < 1e-12);
        assert!((gamma(0.5) - SQRT_PI).abs() < 1e-12);
        assert!((gamma(1.5) - SQRT_PI / 2.0).abs() < 1e-12);
        assert!((gamma(5.0) - 24.0).abs() < 1e-10);
    }

    #[test]
    fn recurrence_on_unit_interval() {
        // Gamma(x+1) = x Gamma(x) across the range the crate cares about.
        let mut x = 0.05;
        while x < 1.0 {
            let lhs = gamma(x + 1.0);
            let rhs = x * gamma(x);
            assert!(
                (lhs - rhs).abs() <= 1e-10 * lhs.abs().max(1.0),
                "recurrence off at {x}: {lhs} vs {rhs}"
            );
            x += 0.05;
        }
    }

    #[test]
    #[should_panic]
    fn rejects_nonpositive() {
        gamma(0.0);
    }
}
