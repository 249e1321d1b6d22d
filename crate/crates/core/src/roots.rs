//! Safeguarded Newton iteration for monotone scalar equations.

use crate::error::{LadderError, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy)]
pub struct RootOptions<T> {
    /// Accept once `|f(x)| ≤ f_tol`.
    pub f_tol: T,
    /// Steps shorter than this end the iteration.
    pub x_tol: T,
    pub max_iter: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root<T> {
    pub x: T,
    pub residual: T,
    pub iterations: usize,
}

/// Solves `f(x) = 0` on `[lo, hi]` where `f` changes sign across the bracket.
///
/// `f` returns the value and derivative. Newton steps that leave the current
/// bracket, or that come from a vanishing derivative, are replaced by
/// bisection.
pub fn newton_bisect<T, F>(
    op: &'static str,
    mut f: F,
    lo: T,
    hi: T,
    x0: T,
    opts: &RootOptions<T>,
) -> Result<Root<T>>
where
    T: Scalar,
    F: FnMut(T) -> Result<(T, T)>,
{
    let (mut lo, mut hi) = (lo, hi);
    let (f_lo, _) = f(lo)?;
    let (f_hi, _) = f(hi)?;
    if f_lo == T::zero() {
        return Ok(Root { x: lo, residual: T::zero(), iterations: 0 });
    }
    if f_hi == T::zero() {
        return Ok(Root { x: hi, residual: T::zero(), iterations: 0 });
    }
    if (f_lo > T::zero()) == (f_hi > T::zero()) {
        return Err(LadderError::NoBracket {
            op,
            target: 0.0,
            lo_value: f_lo.as_f64(),
            hi_value: f_hi.as_f64(),
        });
    }
    let lo_positive = f_lo > T::zero();
    let half = T::lit(0.5);
    let mut x = if x0 > lo && x0 < hi { x0 } else { half * (lo + hi) };
    let mut best = Root { x, residual: T::infinity(), iterations: 0 };

    for iter in 1..=opts.max_iter {
        let (fx, dfx) = f(x)?;
        if fx.abs() < best.residual.abs() {
            best = Root { x, residual: fx, iterations: iter };
        }
        if fx.abs() <= opts.f_tol {
            return Ok(Root { x, residual: fx, iterations: iter });
        }
        if (fx > T::zero()) == lo_positive {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx != T::zero() && newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            half * (lo + hi)
        };
        if (next - x).abs() <= opts.x_tol || hi - lo <= opts.x_tol {
            let (fn_, _) = f(next)?;
            if fn_.abs() <= opts.f_tol {
                return Ok(Root { x: next, residual: fn_, iterations: iter + 1 });
            }
            if best.residual.abs() <= opts.f_tol {
                return Ok(best);
            }
            return Err(LadderError::NonConvergence {
                op,
                iterations: iter + 1,
                residual: fn_.abs().min(best.residual.abs()).as_f64(),
            });
        }
        x = next;
    }
    Err(LadderError::NonConvergence {
        op,
        iterations: opts.max_iter,
        residual: best.residual.abs().as_f64(),
    })
}
