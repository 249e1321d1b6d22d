//! Complex log-gamma and digamma for `Re z > 0`, by upward recurrence into the
//! Stirling region followed by the asymptotic series.

use num_complex::Complex;

use crate::scalar::Scalar;

/// B_{2k} / (2k (2k - 1)) for k = 1..=10.
const STIRLING_LNGAMMA: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// B_{2k} / (2k) for k = 1..=10.
const STIRLING_DIGAMMA: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43867.0 / 14364.0,
    -174611.0 / 6600.0,
];

const SHIFT_RADIUS: f64 = 16.0;

fn shift_count<T: Scalar>(z: Complex<T>) -> usize {
    let mut m = 0usize;
    let mut w = z;
    while w.norm() < T::lit(SHIFT_RADIUS) {
        w.re = w.re + T::one();
        m += 1;
    }
    m
}

/// Principal-continuous `ln Γ(z)` for `Re z > 0`.
///
/// The imaginary part is the branch that is continuous along horizontal
/// lines in the right half plane, which is what the Riemann–Siegel phase needs.
pub fn ln_gamma<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let m = shift_count(z);
    let mut correction = Complex::new(T::zero(), T::zero());
    for j in 0..m {
        correction = correction + (z + T::from_usize_lossy(j)).ln();
    }
    let w = z + T::from_usize_lossy(m);
    let half = T::lit(0.5);
    let ln_w = w.ln();
    let mut series = Complex::new(T::zero(), T::zero());
    let inv_w = w.inv();
    let inv_w2 = inv_w * inv_w;
    let mut pow = inv_w;
    for &coef in STIRLING_LNGAMMA.iter() {
        series = series + pow * T::lit(coef);
        pow = pow * inv_w2;
    }
    let ln_sqrt_2pi = T::lit(0.918_938_533_204_672_8);
    (w - half) * ln_w - w + ln_sqrt_2pi + series - correction
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)` for `Re z > 0`.
pub fn digamma<T: Scalar>(z: Complex<T>) -> Complex<T> {
    let m = shift_count(z);
    let mut correction = Complex::new(T::zero(), T::zero());
    for j in 0..m {
        correction = correction + (z + T::from_usize_lossy(j)).inv();
    }
    let w = z + T::from_usize_lossy(m);
    let inv_w = w.inv();
    let inv_w2 = inv_w * inv_w;
    let mut pow = inv_w2;
    let mut series = Complex::new(T::zero(), T::zero());
    for &coef in STIRLING_DIGAMMA.iter() {
        series = series + pow * T::lit(coef);
        pow = pow * inv_w2;
    }
    w.ln() - inv_w * T::lit(0.5) - series - correction
}
