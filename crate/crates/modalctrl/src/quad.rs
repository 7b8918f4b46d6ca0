//! Quadrature primitives shared by the Gram and Gramian integrals.

use num_complex::Complex;

use crate::{Complex64, Error, Result};

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on the
/// Legendre recurrence. Deterministic for a given `n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based starting guess for the i-th positive root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' at x
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Fixed-order Gauss–Legendre integral of a complex-valued function on
/// [a, b], summed in node order.
pub fn gauss_legendre_integrate<F>(f: F, a: f64, b: f64, n: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let (nodes, weights) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(&weights) {
        acc += f(mid + half * x) * Complex::new(w * half, 0.0);
    }
    acc
}

/// Adaptive Simpson quadrature for complex integrands.
///
/// Refines until the local Richardson error estimate is below
/// `tol · max(1, |I|)` and reports the worst-converged subinterval on
/// failure instead of silently returning a bad value.
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
        (fa + fm * Complex::new(4.0, 0.0) + fb) * Complex::new(h / 6.0, 0.0)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse<F>(
        f: &F,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> std::result::Result<Complex64, (f64, f64)>
    where
        F: Fn(f64) -> Complex64,
    {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        if delta.norm() <= 15.0 * tol {
            return Ok(left + right + delta / Complex::new(15.0, 0.0));
        }
        if depth == 0 {
            return Err((a, b));
        }
        let l = recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
        let r = recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
        Ok(l + r)
    }

    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(fa, fm, fb, b - a);
    let scale = whole.norm().max(1.0);
    recurse(f, a, b, fa, fm, fb, whole, tol * scale, max_depth)
        .map_err(|interval| Error::QuadratureNonConvergence { interval })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_on_polynomials() {
        // n-point rule integrates degree 2n−1 exactly: the top odd power
        // vanishes on [−1,1], the top even power is 2/(deg+1).
        for n in [2usize, 4, 8, 16] {
            let odd = 2 * n - 1;
            let val =
                gauss_legendre_integrate(|x| Complex::new(x.powi(odd as i32), 0.0), -1.0, 1.0, n);
            assert!(val.re.abs() < 1e-13, "n={n} deg={odd}");
            let even = 2 * n - 2;
            let val2 =
                gauss_legendre_integrate(|x| Complex::new(x.powi(even as i32), 0.0), -1.0, 1.0, n);
            assert!(
                (val2.re - 2.0 / (even as f64 + 1.0)).abs() < 1e-13,
                "n={n} deg={even}"
            );
        }
    }

    #[test]
    fn weights_sum_to_interval_length() {
        let (_, w) = gauss_legendre(24);
        let sum: f64 = w.iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_simpson_handles_oscillatory_exponential() {
        let lam = Complex::new(-0.5, 12.0);
        let val =
            adaptive_simpson(&|t| (lam * Complex::new(t, 0.0)).exp(), 0.0, 2.0, 1e-13, 40).unwrap();
        let exact = ((lam * Complex::new(2.0, 0.0)).exp() - Complex::new(1.0, 0.0)) / lam;
        assert!((val - exact).norm() < 1e-11);
    }

    #[test]
    fn adaptive_simpson_reports_worst_interval_on_failure() {
        // depth 0 on a non-smooth integrand cannot converge
        let err = adaptive_simpson(
            &|t: f64| Complex::new(t.abs().sqrt(), 0.0),
            -1.0,
            1.0,
            1e-14,
            0,
        );
        match err {
            Err(Error::QuadratureNonConvergence { interval }) => {
                assert!(interval.0 >= -1.0 && interval.1 <= 1.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
