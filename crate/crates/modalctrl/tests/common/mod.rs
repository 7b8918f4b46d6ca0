#![allow(dead_code)] // each test target uses its own subset of the oracles

//! Independent oracles for the integration suites. Everything here computes
//! expected values by routes that do not share code with the library paths
//! they check.

use modalctrl::spectral::{ModalSystem, SpectralMode};
use modalctrl::Complex64;
use nalgebra::DMatrix;
use num_complex::Complex;
use rand::Rng;

/// Generic matrix exponential by scaling-and-squaring with a Taylor core.
/// Independent of the Jordan-structured kernel in the library.
pub fn expm(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    let norm = m.iter().map(|z| z.norm()).fold(0.0, f64::max) * n as f64;
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m / Complex::new(2f64.powi(s), 0.0);
    let mut term = DMatrix::<Complex64>::identity(n, n);
    let mut acc = DMatrix::<Complex64>::identity(n, n);
    for k in 1..=40 {
        term = &term * &scaled / Complex::new(k as f64, 0.0);
        acc += &term;
        if term.norm() <= 1e-20 * acc.norm() {
            break;
        }
    }
    for _ in 0..s {
        acc = &acc * &acc;
    }
    acc
}

/// Root of `z − e^{−z}` on [0, 1] by bisection to 1e−12.
pub fn bisect_omega_constant() -> f64 {
    let f = |x: f64| x - (-x).exp();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    assert!(f(lo) < 0.0 && f(hi) > 0.0);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Orthonormal basis of the Kalman controllability subspace
/// `range [B, AB, …, A^{d−1}B]`, with per-power column normalization so the
/// rank decision is scale-free.
pub fn kalman_basis(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    rank_tol: f64,
) -> DMatrix<Complex64> {
    let d = a.nrows();
    let r = b.ncols();
    let mut krylov = DMatrix::<Complex64>::zeros(d, d * r);
    let mut power = b.clone();
    for k in 0..d {
        let scale = power.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let normalized = if scale > 0.0 {
            &power / Complex::new(scale, 0.0)
        } else {
            power.clone()
        };
        krylov.view_mut((0, k * r), (d, r)).copy_from(&normalized);
        power = a * power;
    }
    // column-pivoted QR: rank from the R diagonal, basis from the leading Q
    // columns (backward stable, keeps exactly-zero rows exactly zero)
    let qr = krylov.col_piv_qr();
    let r_mat = qr.r();
    let diag: Vec<f64> = (0..d.min(r_mat.ncols()))
        .map(|i| r_mat[(i, i)].norm())
        .collect();
    let top = diag.first().copied().unwrap_or(0.0);
    let rank = if top == 0.0 {
        0
    } else {
        diag.iter().take_while(|&&v| v > rank_tol * top).count()
    };
    qr.q().columns(0, rank).clone_owned()
}

/// Gap between column spans of two orthonormal bases (dimension mismatch
/// counts as 1), computed directly from the definition.
pub fn basis_gap(u: &DMatrix<Complex64>, v: &DMatrix<Complex64>) -> f64 {
    if u.ncols() != v.ncols() {
        return 1.0;
    }
    if u.ncols() == 0 {
        return 0.0;
    }
    let residual = v - u * (u.adjoint() * v);
    residual
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
        .clamp(0.0, 1.0)
}

/// Fine-step trapezoid approximation of the controllability Gramian, with
/// the integrand evaluated through the generic `expm` oracle.
pub fn trapezoid_gramian(
    a: &DMatrix<Complex64>,
    b: &DMatrix<Complex64>,
    t: f64,
    steps: usize,
) -> DMatrix<Complex64> {
    let d = a.nrows();
    let mut acc = DMatrix::<Complex64>::zeros(d, d);
    let h = t / steps as f64;
    let integrand = |s: f64| {
        let e = expm(&(a * Complex::new(s, 0.0)));
        let eb = &e * b;
        &eb * eb.adjoint()
    };
    for k in 0..=steps {
        let weight = if k == 0 || k == steps { 0.5 } else { 1.0 };
        acc += integrand(k as f64 * h) * Complex::new(weight * h, 0.0);
    }
    acc
}

/// Uniform complex sample in a centered box.
pub fn random_complex(rng: &mut impl Rng, re_span: f64, im_span: f64) -> Complex64 {
    Complex::new(
        rng.random_range(-re_span..=re_span),
        rng.random_range(-im_span..=im_span),
    )
}

/// Random mode with chain structure, optionally salted with exact zeros.
pub fn random_mode(
    rng: &mut impl Rng,
    max_beta: usize,
    max_inputs: usize,
    zero_probability: f64,
) -> SpectralMode {
    let beta_total = rng.random_range(1..=max_beta);
    // random composition of beta_total into chains
    let mut chains = Vec::new();
    let mut left = beta_total;
    while left > 0 {
        let len = rng.random_range(1..=left);
        chains.push(len);
        left -= len;
    }
    let r = rng.random_range(1..=max_inputs);
    let coupling = DMatrix::from_fn(beta_total, r, |_, _| {
        if rng.random_bool(zero_probability) {
            Complex::new(0.0, 0.0)
        } else {
            random_complex(rng, 2.0, 2.0)
        }
    });
    SpectralMode::new(random_complex(rng, 2.0, 2.0), chains, coupling).unwrap()
}

/// Random modal system with distinct, well-separated eigenvalues.
///
/// `freq_span` bounds the imaginary parts; eigenvalues keep a pairwise gap of
/// at least `min_gap` so Gramians stay comfortably conditioned.
pub struct SystemParams {
    pub max_state_dim: usize,
    pub max_chain: usize,
    pub inputs: usize,
    pub re_range: (f64, f64),
    pub freq_span: f64,
    pub min_gap: f64,
    pub zero_probability: f64,
    pub min_coupling: f64,
}

pub fn random_system(rng: &mut impl Rng, params: &SystemParams) -> ModalSystem {
    let mut modes: Vec<SpectralMode> = Vec::new();
    let mut lambdas: Vec<Complex64> = Vec::new();
    let mut dim = 0;
    loop {
        let beta = rng
            .random_range(1..=params.max_chain)
            .min(params.max_state_dim - dim);
        if beta == 0 {
            break;
        }
        // rejection-sample a well-separated eigenvalue
        let lambda = loop {
            let candidate = Complex::new(
                rng.random_range(params.re_range.0..=params.re_range.1),
                rng.random_range(-params.freq_span..=params.freq_span),
            );
            if lambdas
                .iter()
                .all(|l| (l - candidate).norm() >= params.min_gap)
            {
                break candidate;
            }
        };
        lambdas.push(lambda);
        let coupling = DMatrix::from_fn(beta, params.inputs, |_, _| {
            if rng.random_bool(params.zero_probability) {
                Complex::new(0.0, 0.0)
            } else {
                let z = random_complex(rng, 1.0, 1.0);
                let norm = z.norm().max(1e-6);
                z / Complex::new(norm, 0.0)
                    * Complex::new(rng.random_range(params.min_coupling..=1.0), 0.0)
            }
        });
        modes.push(SpectralMode::new(lambda, vec![beta], coupling).unwrap());
        dim += beta;
        if dim >= params.max_state_dim || rng.random_bool(0.25) {
            break;
        }
    }
    ModalSystem::new(modes, params.inputs, 0.0, 1.0).unwrap()
}
