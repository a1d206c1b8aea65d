//! Special functions not covered by `statrs`.

use crate::error::{invalid, Result};

// B_2, B_4, ..., B_16.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Hurwitz zeta `ζ(s, q) = Σ_{k≥0} (q + k)^{-s}` for `s > 1`, `q > 0`,
/// by Euler–Maclaurin summation.
pub fn hurwitz_zeta(s: f64, q: f64) -> Result<f64> {
    if !(s > 1.0) || !(q > 0.0) || !s.is_finite() || !q.is_finite() {
        return Err(invalid(format!("hurwitz zeta needs s > 1 and q > 0, got s={s}, q={q}")));
    }
    let n = 20usize;
    let mut head = 0.0;
    for k in 0..n {
        head += (q + k as f64).powf(-s);
    }
    let a = q + n as f64;
    let mut tail = a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * a^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut pow = a.powf(-s - 1.0);
    for (j, b) in BERNOULLI.iter().enumerate() {
        tail += b / fact * rising * pow;
        let m = 2.0 * (j as f64 + 1.0);
        rising *= (s + m - 1.0) * (s + m);
        fact *= (m + 1.0) * (m + 2.0);
        pow /= a * a;
    }
    Ok(head + tail)
}

/// Riemann zeta for real `s > 1`.
pub fn zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

/// Trigamma `ψ₁(x)` for `x > 0`.
pub fn trigamma(x: f64) -> Result<f64> {
    hurwitz_zeta(2.0, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn even_zeta_values() {
        assert_relative_eq!(zeta(2.0).unwrap(), PI.powi(2) / 6.0, max_relative = 1e-14);
        assert_relative_eq!(zeta(4.0).unwrap(), PI.powi(4) / 90.0, max_relative = 1e-14);
        assert_relative_eq!(zeta(1.2).unwrap(), 5.591_582_441_177_751, max_relative = 1e-12);
    }

    #[test]
    fn trigamma_recurrence() {
        assert_relative_eq!(trigamma(1.0).unwrap(), PI.powi(2) / 6.0, max_relative = 1e-14);
        let x = 2.7;
        assert_relative_eq!(trigamma(x).unwrap(), trigamma(x + 1.0).unwrap() + 1.0 / (x * x), max_relative = 1e-13);
    }

    #[test]
    fn rejects_pole() {
        assert!(zeta(1.0).is_err());
        assert!(hurwitz_zeta(2.0, 0.0).is_err());
    }
}
