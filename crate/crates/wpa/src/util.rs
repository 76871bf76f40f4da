//! One-dimensional minimization helpers shared by the geometry and potential
//! sweeps: coarse scan followed by golden-section refinement.

use crate::{lit, Scalar};

/// Golden-section minimization of `f` on `[a, b]` to parameter tolerance
/// `tol`. Returns `(x_min, f(x_min))`. Assumes `f` is continuous; with a
/// bracket from a coarse scan the refined value is accurate even when `f` is
/// only piecewise unimodal.
pub fn golden_min<T: Scalar>(f: impl Fn(T) -> T, a: T, b: T, tol: T) -> (T, T) {
    let inv_phi: T = lit::<T>(0.5) * (lit::<T>(5.0).sqrt() - T::one());
    let mut lo = a;
    let mut hi = b;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let xm = lit::<T>(0.5) * (lo + hi);
    let fm = f(xm);
    if f1 <= f2 && f1 <= fm {
        (x1, f1)
    } else if f2 <= fm {
        (x2, f2)
    } else {
        (xm, fm)
    }
}

/// Coarse scan of `f` at `n + 1` equispaced points of `[a, b]` followed by
/// golden-section refinement on the bracket around the scan minimum.
pub fn scan_then_golden<T: Scalar>(
    f: impl Fn(T) -> T,
    a: T,
    b: T,
    n: usize,
    tol: T,
) -> (T, T) {
    debug_assert!(n >= 2);
    let h = (b - a) / lit::<T>(n as f64);
    let mut best_i = 0usize;
    let mut best_f = f(a);
    for i in 1..=n {
        let x = a + h * lit::<T>(i as f64);
        let fx = f(x);
        if fx < best_f {
            best_f = fx;
            best_i = i;
        }
    }
    let lo = if best_i == 0 { a } else { a + h * lit::<T>((best_i - 1) as f64) };
    let hi = if best_i == n { b } else { a + h * lit::<T>((best_i + 1) as f64) };
    let (x, fx) = golden_min(&f, lo, hi, tol);
    if fx < best_f {
        (x, fx)
    } else {
        (a + h * lit::<T>(best_i as f64), best_f)
    }
}

/// Bisection for the root of an increasing function `f` on `[a, b]` with
/// `f(a) < 0 < f(b)`. Returns the lower bracket end after refinement, so the
/// returned point always satisfies `f(x) ≤ 0`.
pub fn bisect_increasing<T: Scalar>(f: impl Fn(T) -> T, a: T, b: T, iters: usize) -> T {
    let mut lo = a;
    let mut hi = b;
    for _ in 0..iters {
        let mid = lit::<T>(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) <= T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_min() {
        let (x, fx) = scan_then_golden(|x: f64| (x - 0.3).powi(2) + 1.0, -1.0, 1.0, 64, 1e-12);
        // Near the minimum the function varies below f64 epsilon of the
        // offset 1.0, so the argmin is only reliable to about sqrt(eps).
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bisect_sqrt2() {
        let x = bisect_increasing(|x: f64| x * x - 2.0, 0.0, 2.0, 200);
        assert!((x - 2f64.sqrt()).abs() < 1e-14);
        assert!(x * x - 2.0 <= 0.0);
    }
}
