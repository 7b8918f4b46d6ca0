//! Ready-made models: the boundary-controlled wave equation on `[0, π]`,
//! scalar delay equations, and finite diagonal ODEs.
//!
//! # Wave preset
//!
//! The wave equation `w_tt = w_θθ` on `[0, π]` with the *same* scalar control
//! applied at both endpoints has spectrum `{0} ∪ {±ik : k ≥ 1}` and is
//! truncated here at `|k| ≤ K` (so `2K + 1` modes, all simple). The expansion
//! onset is `T = 0` and the minimality horizon of the associated exponential
//! family is `ν = 2π`.
//!
//! Couplings are not hardcoded: for each mode the one-dimensional elliptic
//! boundary problem `w'' = μ² w`, `w(0) = w(π) = 1` is solved in closed form,
//!
//! ```text
//! w_μ(θ) = cosh(μθ) + (1 − cosh μπ)/sinh(μπ) · sinh(μθ),
//! ```
//!
//! projected onto the mode's adjoint eigenfunction pair by quadrature, and
//! rescaled by `(μ − λ)` to remove the resolvent factor. The result is
//! independent of the off-spectrum parameter `μ` (up to quadrature noise)
//! even though the intermediate elliptic solution is not; projections below
//! the quadrature noise floor are snapped to exact zeros so that analytic
//! cancellations (the even-`k` modes, which symmetric endpoint forcing cannot
//! reach) register as exact zero couplings.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::quad::gauss_legendre_integrate;
use crate::quasipoly::QuasiPolynomial;
use crate::spectral::{ModalSystem, SpectralMode};
use crate::{Complex64, Error, Result};

/// Relative noise floor below which a projected coupling is an exact zero.
const COUPLING_SNAP_REL: f64 = 1e-12;

/// Boundary-controlled wave truncation with modes `{0} ∪ {±ik : k ≤ K}`.
///
/// `mu` must be real, nonzero (0 is in the spectrum) and finite; any such
/// value yields the same controllability verdicts.
pub fn wave(k_max: usize, mu: f64) -> Result<ModalSystem> {
    if k_max == 0 {
        return Err(Error::invalid("wave preset needs k_max >= 1"));
    }
    if !mu.is_finite() {
        return Err(Error::invalid("mu must be finite"));
    }
    if mu == 0.0 {
        return Err(Error::invalid(
            "mu = 0 lies in the spectrum; pick any nonzero real value",
        ));
    }
    let pi = std::f64::consts::PI;
    let nodes = 64.max(8 * k_max);

    // analytic elliptic solution with unit boundary data at both ends
    let gamma = (1.0 - (mu * pi).cosh()) / (mu * pi).sinh();
    let w_mu = move |theta: f64| (mu * theta).cosh() + gamma * (mu * theta).sinh();

    // raw projections ∫ w_μ sin(kθ) dθ (k ≥ 1) and ∫ w_μ dθ (k = 0)
    let project = |k: usize| -> f64 {
        gauss_legendre_integrate(
            |theta| {
                let weight = if k == 0 {
                    1.0
                } else {
                    (k as f64 * theta).sin()
                };
                Complex::new(w_mu(theta) * weight, 0.0)
            },
            0.0,
            pi,
            nodes,
        )
        .re
    };

    // couplings before the noise-floor snap
    let mut zero_coupling = mu * mu / pi * project(0);
    let mut pair_couplings: Vec<f64> = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        // c(±ik) = (μ² + k²)/(±ikπ) · I_k = ∓ i·(μ² + k²) I_k / (kπ)
        let magnitude = (mu * mu + (k * k) as f64) * project(k) / (k as f64 * pi);
        pair_couplings.push(magnitude);
    }

    let scale = pair_couplings
        .iter()
        .map(|c| c.abs())
        .fold(zero_coupling.abs(), f64::max)
        .max(1.0);
    let snap = |v: &mut f64| {
        if v.abs() < COUPLING_SNAP_REL * scale {
            *v = 0.0;
        }
    };
    snap(&mut zero_coupling);
    pair_couplings.iter_mut().for_each(snap);

    let mut modes = Vec::with_capacity(2 * k_max + 1);
    modes.push(SpectralMode::new(
        Complex::new(0.0, 0.0),
        vec![1],
        DMatrix::from_row_slice(1, 1, &[Complex::new(zero_coupling, 0.0)]),
    )?);
    for (k, &c) in (1..=k_max).zip(&pair_couplings) {
        // conjugate pair built from one real projection, so the symmetry
        // coupling(−ik) = conj(coupling(+ik)) is exact
        modes.push(SpectralMode::new(
            Complex::new(0.0, k as f64),
            vec![1],
            DMatrix::from_row_slice(1, 1, &[Complex::new(0.0, -c)]),
        )?);
        modes.push(SpectralMode::new(
            Complex::new(0.0, -(k as f64)),
            vec![1],
            DMatrix::from_row_slice(1, 1, &[Complex::new(0.0, c)]),
        )?);
    }
    ModalSystem::new(modes, 1, 0.0, 2.0 * pi)
}

/// Diagonal finite ODE: simple modes at the given eigenvalues.
///
/// `couplings` is one row per eigenvalue (defaults to an all-ones column);
/// `nu` is the minimality horizon recorded on the system (finite spectra have
/// exponential type 0, so the default is 0).
pub fn finite_ode(
    lambdas: &[Complex64],
    couplings: Option<DMatrix<Complex64>>,
    nu: f64,
) -> Result<ModalSystem> {
    if lambdas.is_empty() {
        return Err(Error::invalid("need at least one eigenvalue"));
    }
    let coupling = match couplings {
        Some(c) => {
            if c.nrows() != lambdas.len() {
                return Err(Error::invalid(format!(
                    "coupling has {} rows for {} eigenvalues",
                    c.nrows(),
                    lambdas.len()
                )));
            }
            c
        }
        None => DMatrix::from_element(lambdas.len(), 1, Complex::new(1.0, 0.0)),
    };
    let r = coupling.ncols();
    let modes = lambdas
        .iter()
        .enumerate()
        .map(|(i, &lam)| {
            let row = DMatrix::from_row_slice(1, r, coupling.row(i).transpose().as_slice());
            SpectralMode::new(lam, vec![1], row)
        })
        .collect::<Result<Vec<_>>>()?;
    ModalSystem::new(modes, r, 0.0, nu)
}

/// Scalar (possibly neutral) delay equation with characteristic function
/// `Δ(z) = z − neutral_gain·z·e^{−z·delay} − gain·e^{−z·delay}`.
pub fn scalar_delay(gain: f64, delay: f64, neutral_gain: f64) -> Result<QuasiPolynomial> {
    if !(delay > 0.0 && delay.is_finite()) {
        return Err(Error::invalid("delay must be positive"));
    }
    QuasiPolynomial::scalar(
        vec![0.0, delay],
        vec![Complex::new(0.0, 0.0), Complex::new(neutral_gain, 0.0)],
        vec![Complex::new(0.0, 0.0), Complex::new(gain, 0.0)],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::controllability::{controllability_report, eigen_input_nonvanishing};

    #[test]
    fn wave_k1_has_three_modes_in_order() {
        let sys = wave(1, 0.5).unwrap();
        assert_eq!(sys.mode_count(), 3);
        let lambdas: Vec<Complex64> = sys.modes().iter().map(|m| m.lambda()).collect();
        assert_eq!(
            lambdas,
            vec![
                Complex::new(0.0, 0.0),
                Complex::new(0.0, -1.0),
                Complex::new(0.0, 1.0)
            ]
        );
        assert_eq!(sys.minimality_interval(), 2.0 * std::f64::consts::PI);
        assert_eq!(sys.expansion_time(), 0.0);
    }

    #[test]
    fn wave_couplings_are_conjugate_symmetric_exactly() {
        let sys = wave(4, 0.7).unwrap();
        for k in 1..=4 {
            let plus = sys
                .modes()
                .iter()
                .find(|m| m.lambda() == Complex::new(0.0, k as f64))
                .unwrap()
                .input_coupling()[(0, 0)];
            let minus = sys
                .modes()
                .iter()
                .find(|m| m.lambda() == Complex::new(0.0, -(k as f64)))
                .unwrap()
                .input_coupling()[(0, 0)];
            assert_eq!(minus, plus.conj());
        }
    }

    #[test]
    fn wave_even_modes_are_exactly_uncoupled() {
        // symmetric endpoint forcing cannot excite antisymmetric modes
        let sys = wave(4, 0.5).unwrap();
        for mode in sys.modes() {
            let k = mode.lambda().im.abs() as usize;
            let c = mode.input_coupling()[(0, 0)];
            if k >= 1 && k.is_multiple_of(2) {
                assert_eq!(c, Complex::new(0.0, 0.0), "k = {k}");
                assert!(!eigen_input_nonvanishing(mode, 1e-12));
            } else {
                assert!(c.norm() > 1e-3, "k = {k}: {c}");
            }
        }
    }

    #[test]
    fn wave_odd_couplings_match_the_analytic_value() {
        // closed-form projection: I_k = k(1 − (−1)^k)/(μ² + k²), so
        // |c| = 2/π for odd k independently of k and μ.
        for mu in [0.5, 1.5] {
            let sys = wave(5, mu).unwrap();
            for mode in sys.modes() {
                let k = mode.lambda().im.abs() as usize;
                if k % 2 == 1 {
                    let c = mode.input_coupling()[(0, 0)];
                    assert!(
                        (c.norm() - 2.0 / std::f64::consts::PI).abs() < 1e-10,
                        "mu = {mu}, k = {k}: |c| = {}",
                        c.norm()
                    );
                }
            }
        }
    }

    #[test]
    fn wave_verdicts_are_mu_invariant() {
        let report_a = controllability_report(&wave(6, 0.5).unwrap(), 1e-9).unwrap();
        let report_b = controllability_report(&wave(6, 1.5).unwrap(), 1e-9).unwrap();
        assert_eq!(report_a.verdict, report_b.verdict);
        let passes_a: Vec<bool> = report_a.verdicts.iter().map(|v| v.passes).collect();
        let passes_b: Vec<bool> = report_b.verdicts.iter().map(|v| v.passes).collect();
        assert_eq!(passes_a, passes_b);
    }

    #[test]
    fn wave_rejects_spectrum_mu() {
        assert!(wave(3, 0.0).is_err());
        assert!(wave(0, 0.5).is_err());
    }

    #[test]
    fn finite_ode_defaults_to_unit_couplings() {
        let sys = finite_ode(
            &[Complex::new(-1.0, 0.0), Complex::new(-2.0, 0.0)],
            None,
            0.0,
        )
        .unwrap();
        assert_eq!(sys.mode_count(), 2);
        assert!(sys
            .modes()
            .iter()
            .all(|m| m.input_coupling()[(0, 0)] == Complex::new(1.0, 0.0)));
    }

    #[test]
    fn scalar_delay_reproduces_the_classic_characteristic_function() {
        let q = scalar_delay(1.0, 1.0, 0.0).unwrap();
        assert_eq!(
            q.eval(Complex::new(0.0, 0.0)).unwrap(),
            Complex::new(-1.0, 0.0)
        );
    }
}
