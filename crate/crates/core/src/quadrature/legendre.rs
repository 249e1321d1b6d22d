use crate::scalar::Scalar;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on `P_n`.
pub fn gauss_legendre<T: Scalar>(n: usize) -> Vec<(T, T)> {
    let mut out = Vec::with_capacity(n);
    let nf = n as f64;
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((T::lit(x), T::lit(w)));
    }
    out.reverse();
    out
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre rule on `[a, b]` with `panels` equal panels.
pub fn composite_gauss_legendre<T: Scalar>(a: T, b: T, panels: usize, order: usize) -> Vec<(T, T)> {
    let base = gauss_legendre::<T>(order);
    let width = (b - a) / T::from_usize_lossy(panels);
    let half = T::lit(0.5) * width;
    let mut out = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let center = a + width * (T::from_usize_lossy(p) + T::lit(0.5));
        out.extend(base.iter().map(|&(x, w)| (center + half * x, half * w)));
    }
    out
}
