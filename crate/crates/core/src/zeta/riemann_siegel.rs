//! Riemann–Siegel main sum with the Gabcke-form correction terms `C_0 … C_4`.
//!
//! The corrections are combinations of derivatives of
//! `Ψ(p) = cos(2π(p² − p − 1/16)) / cos(2πp)`. `Ψ` is entire, so its Taylor
//! series about `p = 1/2` is obtained once from a Cauchy integral on a circle
//! and the `C_k` are stored as polynomials in `p − 1/2`.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::scalar::Scalar;

/// Highest supported correction order.
pub const MAX_RS_ORDER: usize = 4;

const TAYLOR_DEGREE: usize = 48;
const DERIV_MAX: usize = 12;
const CAUCHY_POINTS: usize = 512;
const CAUCHY_RADIUS: f64 = 1.0;

/// Cached `ln n` and `n^{-1/2}` for the main sum.
const TABLE_LEN: usize = 4096;

struct Tables {
    /// `corrections[k][j]` is the coefficient of `(p - 1/2)^j` in `C_k(p)`.
    corrections: [Vec<f64>; MAX_RS_ORDER + 1],
    ln_n: Vec<f64>,
    inv_sqrt_n: Vec<f64>,
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(build_tables)
}

fn psi(z: Complex64) -> Complex64 {
    let tau = std::f64::consts::TAU;
    let num = ((z * z - z - 1.0 / 16.0) * tau).cos();
    let den = (z * tau).cos();
    num / den
}

fn build_tables() -> Tables {
    let need = TAYLOR_DEGREE + DERIV_MAX + 1;
    // a_n = (1 / M) Σ_j Ψ(1/2 + R e^{iθ_j}) e^{-inθ_j} / R^n
    let mut taylor = vec![0.0f64; need];
    let samples: Vec<(f64, Complex64)> = (0..CAUCHY_POINTS)
        .map(|j| {
            // half-step offset keeps the nodes off the real axis
            let ang = std::f64::consts::TAU * (j as f64 + 0.5) / CAUCHY_POINTS as f64;
            let z = Complex64::new(0.5, 0.0) + Complex64::from_polar(CAUCHY_RADIUS, ang);
            (ang, psi(z))
        })
        .collect();
    for (n, a) in taylor.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(ang, v) in &samples {
            acc += v * Complex64::from_polar(1.0, -(n as f64) * ang);
        }
        *a = acc.re / CAUCHY_POINTS as f64 / CAUCHY_RADIUS.powi(n as i32);
    }

    // coefficients of the j-th derivative: d_j[n] = a_{n+j} (n+j)!/n!
    let deriv = |j: usize| -> Vec<f64> {
        (0..=TAYLOR_DEGREE)
            .map(|n| {
                let falling: f64 = ((n + 1)..=(n + j)).map(|m| m as f64).product();
                taylor[n + j] * falling
            })
            .collect()
    };
    let pi2 = std::f64::consts::PI.powi(2);
    let combine = |terms: &[(usize, f64)]| -> Vec<f64> {
        let mut out = vec![0.0; TAYLOR_DEGREE + 1];
        for &(j, w) in terms {
            for (o, d) in out.iter_mut().zip(deriv(j)) {
                *o += w * d;
            }
        }
        out
    };

    let c0 = combine(&[(0, 1.0)]);
    let c1 = combine(&[(3, -1.0 / (96.0 * pi2))]);
    let c2 = combine(&[(2, 1.0 / (64.0 * pi2)), (6, 1.0 / (18432.0 * pi2 * pi2))]);
    let c3 = combine(&[
        (1, -1.0 / (64.0 * pi2)),
        (5, -1.0 / (3840.0 * pi2 * pi2)),
        (9, -1.0 / (5308416.0 * pi2 * pi2 * pi2)),
    ]);
    let c4 = combine(&[
        (0, 1.0 / (128.0 * pi2)),
        (4, 19.0 / (24576.0 * pi2 * pi2)),
        (8, 11.0 / (5898240.0 * pi2 * pi2 * pi2)),
        (12, 1.0 / (2038431744.0 * pi2 * pi2 * pi2 * pi2)),
    ]);

    let ln_n = (0..TABLE_LEN).map(|n| (n.max(1) as f64).ln()).collect();
    let inv_sqrt_n = (0..TABLE_LEN).map(|n| 1.0 / (n.max(1) as f64).sqrt()).collect();
    Tables {
        corrections: [c0, c1, c2, c3, c4],
        ln_n,
        inv_sqrt_n,
    }
}

/// Correction coefficient `C_k(p)` for `p ∈ [0, 1)`.
pub fn correction_coefficient(k: usize, p: f64) -> f64 {
    let coeffs = &tables().corrections[k];
    let x = p - 0.5;
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Riemann–Siegel evaluation of `Z(t)` given the phase `ϑ(t)`.
///
/// `order` counts the correction terms beyond the main sum: `None` keeps the
/// bare main sum, `Some(k)` adds `C_0 … C_k`.
pub fn riemann_siegel_z<T: Scalar>(t: T, theta: T, order: Option<usize>) -> T {
    let tabs = tables();
    let a = (t / T::TAU()).sqrt();
    let n_terms = a.floor().to_usize().unwrap_or(0);

    let mut main = T::zero();
    for n in 1..=n_terms {
        let (ln_n, w) = if n < TABLE_LEN {
            (T::lit(tabs.ln_n[n]), T::lit(tabs.inv_sqrt_n[n]))
        } else {
            let nf = T::from_usize_lossy(n);
            (nf.ln(), nf.sqrt().recip())
        };
        main = main + w * (theta - t * ln_n).cos();
    }
    main = main + main;

    let Some(order) = order else {
        return main;
    };
    let p = (a - T::from_usize_lossy(n_terms)).as_f64();
    let inv_a = a.recip().as_f64();
    let mut rem = 0.0f64;
    let mut scale = 1.0f64;
    for k in 0..=order.min(MAX_RS_ORDER) {
        rem += correction_coefficient(k, p) * scale;
        scale *= inv_a;
    }
    let sign = if n_terms % 2 == 1 { 1.0 } else { -1.0 };
    main + T::lit(sign * inv_a.sqrt() * rem)
}
