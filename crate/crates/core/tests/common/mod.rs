//! Reference implementations used only by the test suites.
//!
//! Everything here is written independently of the library: a Lanczos
//! log-gamma, an Euler–Maclaurin zeta with its own term count and Bernoulli
//! numbers (obtained from ζ(2k)), a plain Simpson rule and an odd-only sieve.
#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::OnceLock;

use ladderlab::quadrature::{build_checkpoints, CheckpointTable, IntegrationPolicy};
use num_complex::Complex64;

const LANCZOS_G: f64 = 7.0;
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

/// ln Γ(z) for Re z ≥ ½, continuous in Im z.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

pub fn theta(t: f64) -> f64 {
    ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

/// B₂ₖ/(2k)! for k = 1..=m via B₂ₖ/(2k)! = (−1)^{k+1} 2ζ(2k)/(2π)^{2k}.
fn bernoulli_ratios(m: usize) -> Vec<f64> {
    const N: usize = 10_000;
    (1..=m)
        .map(|k| {
            let p = 2.0 * k as f64;
            let head: f64 = (1..N).rev().map(|n| (n as f64).powf(-p)).sum();
            let nf = N as f64;
            let zeta = head + nf.powf(1.0 - p) / (p - 1.0) + 0.5 * nf.powf(-p) + p / 12.0 * nf.powf(-p - 1.0);
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * 2.0 * zeta / (2.0 * PI).powf(p)
        })
        .collect()
}

fn bernoulli() -> &'static [f64] {
    static B: OnceLock<Vec<f64>> = OnceLock::new();
    B.get_or_init(|| bernoulli_ratios(20))
}

/// ζ(½ + it) by Euler–Maclaurin with N = ⌈|t|/π⌉ + 30 and 20 correction terms.
pub fn zeta_half(t: f64) -> Complex64 {
    let s = Complex64::new(0.5, t);
    let n = (t.abs() / PI).ceil() as usize + 30;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 1..n {
        sum += (-s * (j as f64).ln()).exp();
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp();
    sum += n_pow * nf / (s - 1.0) + 0.5 * n_pow;
    let mut rising = s;
    let mut power = n_pow / nf;
    for (k, b) in bernoulli().iter().enumerate() {
        sum += *b * rising * power;
        let m = 2.0 * k as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        power /= nf * nf;
    }
    sum
}

pub fn hardy_z(t: f64) -> f64 {
    (Complex64::from_polar(1.0, theta(t)) * zeta_half(t)).re
}

/// Composite Simpson rule with (approximately) spacing `h`.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, h: f64) -> f64 {
    let mut n = ((b - a) / h).ceil() as usize;
    if n % 2 == 1 {
        n += 1;
    }
    let h = (b - a) / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let y = f(a + i as f64 * h);
        if i % 2 == 1 {
            odd += y;
        } else {
            even += y;
        }
    }
    h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b))
}

/// Number of primes ≤ n from an odd-only sieve.
pub fn sieve_count(n: u64) -> u64 {
    if n < 2 {
        return 0;
    }
    let half = ((n - 1) / 2) as usize;
    let mut composite = vec![false; half + 1];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p - 1) / 2;
            while j <= half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    1 + (1..=half).filter(|&i| !composite[i]).count() as u64
}

pub const SHARED_TABLE_TOP: f64 = 1.05e6;
pub const SHARED_STEP: f64 = 10.0;

pub fn shared_table_path() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ladderlab-shared-step10.csv")
}

/// Step-10 table to `SHARED_TABLE_TOP`, cached on disk between test binaries.
pub fn shared_table() -> &'static CheckpointTable {
    static TABLE: OnceLock<CheckpointTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let path = shared_table_path();
        if let Ok(table) = CheckpointTable::load(&path, IntegrationPolicy::default()) {
            if table.t_max() >= SHARED_TABLE_TOP && table.step() == SHARED_STEP {
                return table;
            }
        }
        let table = build_checkpoints(SHARED_TABLE_TOP, SHARED_STEP).expect("checkpoint build");
        table.save(&path).expect("cache checkpoint table");
        table
    })
}

/// Allowed gap between an entry and its telescoped value: `energy_via_tower`
/// works with absolute limits, whose rounding `φ₁ˢ` magnifies by `∏ Z̃²`.
pub fn telescoping_slack(ladder: &ladderlab::Ladder<'_>, e: &ladderlab::energies::EnergyEntry, g: f64) -> f64 {
    let density = |x: f64| ladder.iterated_density(x, e.s).map(|d| d.0).unwrap_or(f64::INFINITY);
    e.quad_error + 1e-8 * g.max(1.0) + 4.0 * f64::EPSILON * e.upper * (density(e.lower) + density(e.upper))
}
