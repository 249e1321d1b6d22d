//! Euler–Maclaurin summation for `ζ(1/2 + it)`.

use num_complex::Complex;

use crate::scalar::Scalar;

/// Bernoulli numbers B_2, B_4, ..., B_40.
const BERNOULLI_EVEN: [f64; 20] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
];

/// Number of Bernoulli correction terms used.
const CORRECTION_TERMS: usize = 16;

/// `ζ(1/2 + it)` for `t ≥ 0`.
///
/// The head length is chosen so that `|s + 2m| / (2πN) ≤ 1/4`, which makes
/// the tail corrections decay at least geometrically by a factor 1/16.
pub fn zeta_critical<T: Scalar>(t: T) -> Complex<T> {
    let s = Complex::new(T::lit(0.5), t);
    let m = CORRECTION_TERMS;
    let reach = (s + T::from_usize_lossy(2 * m)).norm();
    let n_head = ((reach * T::lit(2.0) / T::PI()).ceil().to_usize().unwrap_or(1)).max(8);
    let big_n = T::from_usize_lossy(n_head);

    let mut sum = Complex::new(T::zero(), T::zero());
    for n in 1..n_head {
        sum = sum + n_pow_neg_s(n, t);
    }
    let n_neg_s = n_pow_neg_s(n_head, t);
    let one = Complex::new(T::one(), T::zero());
    sum = sum + n_neg_s * big_n / (s - one) + n_neg_s * T::lit(0.5);

    // T_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let inv_n = big_n.recip();
    let mut rising = s; // s (s+1) ... (s+2k-2)
    let mut factorial = T::lit(2.0); // (2k)!
    let mut n_pow = n_neg_s * inv_n; // N^{-s-2k+1}
    for k in 1..=m {
        let term = rising * n_pow * (T::lit(BERNOULLI_EVEN[k - 1]) / factorial);
        sum = sum + term;
        let kk = T::from_usize_lossy(2 * k);
        rising = rising * (s + (kk - T::one())) * (s + kk);
        factorial = factorial * (kk + T::one()) * (kk + T::lit(2.0));
        n_pow = n_pow * inv_n * inv_n;
    }
    sum
}

/// `n^{-1/2 - it}`.
#[inline]
fn n_pow_neg_s<T: Scalar>(n: usize, t: T) -> Complex<T> {
    let nf = T::from_usize_lossy(n);
    let ln_n = nf.ln();
    let mag = nf.sqrt().recip();
    let (sin, cos) = (t * ln_n).sin_cos();
    Complex::new(mag * cos, -mag * sin)
}
