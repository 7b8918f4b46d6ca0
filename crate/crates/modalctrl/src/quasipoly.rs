//! Characteristic quasi-polynomials of neutral delay equations.
//!
//! A [`QuasiPolynomial`] stores the discrete-delay kernel data
//! `(h_j, A_{0j}, A_j)` and evaluates
//!
//! ```text
//! Δ(z) = det( zI − Σ_j A_{0j} z e^{−z h_j} − Σ_j A_j e^{−z h_j} )
//! ```
//!
//! The `j = 0` term (`h_0 = 0`) carries the undelayed coefficients. `Δ` is
//! entire; its zeros are the system eigenvalues, with algebraic multiplicity
//! equal to the local winding number.
//!
//! Root localization uses recursive rectangle subdivision driven by the
//! argument principle (adaptive phase unwrapping along the boundary) followed
//! by Newton polishing with a numerically differentiated `Δ′`. Multiplicities
//! come from the winding numbers. Because `Δ` grows like `e^{n·h·|Re z|}` in
//! the left half-plane, contour work and type estimation run on a decomposed
//! representation `(log|Δ|, Δ/|Δ|)` that cannot overflow.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::spectral::{spectral_order, ModalSystem, SpectralMode};
use crate::{Complex64, Error, Result};

/// Discrete-delay characteristic data for a neutral delay system.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiPolynomial {
    dim: usize,
    delays: Vec<f64>,
    neutral_coeffs: Vec<DMatrix<Complex64>>,
    retarded_coeffs: Vec<DMatrix<Complex64>>,
}

impl QuasiPolynomial {
    /// Validates the kernel data: `delays[0] == 0`, strictly increasing
    /// delays, and one `n×n` matrix per delay in both kernel lists.
    pub fn new(
        dim: usize,
        delays: Vec<f64>,
        neutral_coeffs: Vec<DMatrix<Complex64>>,
        retarded_coeffs: Vec<DMatrix<Complex64>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("state dimension must be >= 1"));
        }
        if delays.is_empty() || delays[0] != 0.0 {
            return Err(Error::invalid("delays must start at h_0 = 0"));
        }
        if delays.iter().any(|h| !h.is_finite() || *h < 0.0) {
            return Err(Error::invalid("delays must be finite and nonnegative"));
        }
        if delays.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("delays must be strictly increasing"));
        }
        if neutral_coeffs.len() != delays.len() || retarded_coeffs.len() != delays.len() {
            return Err(Error::invalid(
                "need exactly one neutral and one retarded matrix per delay",
            ));
        }
        for m in neutral_coeffs.iter().chain(&retarded_coeffs) {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::invalid(format!(
                    "kernel matrices must be {dim}x{dim}"
                )));
            }
            if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::invalid("kernel entries must be finite"));
            }
        }
        Ok(QuasiPolynomial {
            dim,
            delays,
            neutral_coeffs,
            retarded_coeffs,
        })
    }

    /// Scalar convenience: `Δ(z) = z − neutral·z e^{−zh} − retarded e^{−zh}`
    /// plus the undelayed coefficients at `h_0 = 0`.
    pub fn scalar(
        delays: Vec<f64>,
        neutral: Vec<Complex64>,
        retarded: Vec<Complex64>,
    ) -> Result<Self> {
        let wrap = |v: Vec<Complex64>| {
            v.into_iter()
                .map(|z| DMatrix::from_row_slice(1, 1, &[z]))
                .collect()
        };
        QuasiPolynomial::new(1, delays, wrap(neutral), wrap(retarded))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delays(&self) -> &[f64] {
        &self.delays
    }

    pub fn neutral_coeffs(&self) -> &[DMatrix<Complex64>] {
        &self.neutral_coeffs
    }

    pub fn retarded_coeffs(&self) -> &[DMatrix<Complex64>] {
        &self.retarded_coeffs
    }

    /// Largest delay `h`.
    pub fn max_delay(&self) -> f64 {
        *self.delays.last().unwrap()
    }

    /// The matrix inside the determinant, scaled by `e^{−σ}` (σ ≥ 0) so that
    /// no entry overflows for strongly negative `Re z`.
    fn scaled_matrix(&self, z: Complex64, sigma: f64) -> DMatrix<Complex64> {
        let n = self.dim;
        let mut m = DMatrix::zeros(n, n);
        let s = Complex::new(-sigma, 0.0).exp();
        for i in 0..n {
            m[(i, i)] = z * s;
        }
        for (j, &h) in self.delays.iter().enumerate() {
            // e^{−zh−σ} has non-positive real exponent by choice of σ
            let e = (-z * Complex::new(h, 0.0) - Complex::new(sigma, 0.0)).exp();
            let a0 = &self.neutral_coeffs[j];
            let a = &self.retarded_coeffs[j];
            for r in 0..n {
                for c in 0..n {
                    m[(r, c)] -= a0[(r, c)] * z * e + a[(r, c)] * e;
                }
            }
        }
        m
    }

    /// `Δ(z)` by LU determinant with partial pivoting.
    ///
    /// Signals [`Error::RangeOverflow`] instead of returning a non-finite
    /// value when `e^{−z h}` exceeds the `f64` range.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::invalid("evaluation point must be finite"));
        }
        let m = self.scaled_matrix(z, 0.0);
        if m.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::RangeOverflow { z });
        }
        let det = lu_det(m).plain;
        if !det.re.is_finite() || !det.im.is_finite() {
            return Err(Error::RangeOverflow { z });
        }
        Ok(det)
    }

    /// Overflow-safe evaluation as `(log|Δ(z)|, Δ(z)/|Δ(z)|)`.
    ///
    /// At an exact zero the log is `−∞` and the phase is 1.
    pub fn eval_decomposed(&self, z: Complex64) -> Result<(f64, Complex64)> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::invalid("evaluation point must be finite"));
        }
        let sigma = (-z.re).max(0.0) * self.max_delay();
        let m = self.scaled_matrix(z, sigma);
        let det = lu_det(m);
        Ok((det.log_abs + self.dim as f64 * sigma, det.phase))
    }
}

struct LuDet {
    plain: Complex64,
    log_abs: f64,
    phase: Complex64,
}

/// Determinant by in-place LU with partial pivoting, accumulating both the
/// plain product of pivots and its `(log, phase)` decomposition.
fn lu_det(mut m: DMatrix<Complex64>) -> LuDet {
    let n = m.nrows();
    let mut plain = Complex::new(1.0, 0.0);
    let mut log_abs = 0.0f64;
    let mut phase = Complex::new(1.0, 0.0);
    let mut sign = 1.0f64;
    for k in 0..n {
        let mut p = k;
        let mut best = m[(k, k)].norm();
        for i in k + 1..n {
            let v = m[(i, k)].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return LuDet {
                plain: Complex::new(0.0, 0.0),
                log_abs: f64::NEG_INFINITY,
                phase: Complex::new(1.0, 0.0),
            };
        }
        if p != k {
            m.swap_rows(p, k);
            sign = -sign;
        }
        let piv = m[(k, k)];
        plain *= piv;
        log_abs += piv.norm().ln();
        phase *= piv / piv.norm();
        for i in k + 1..n {
            let factor = m[(i, k)] / piv;
            for c in k + 1..n {
                let sub = factor * m[(k, c)];
                m[(i, c)] -= sub;
            }
        }
    }
    LuDet {
        plain: plain * Complex::new(sign, 0.0),
        log_abs,
        phase: phase * Complex::new(sign, 0.0),
    }
}

/// Axis-aligned rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    re_min: f64,
    re_max: f64,
    im_min: f64,
    im_max: f64,
}

impl Region {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if ![re_min, re_max, im_min, im_max]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(Error::invalid("region bounds must be finite"));
        }
        if re_min >= re_max || im_min >= im_max {
            return Err(Error::invalid("region must have positive extent"));
        }
        Ok(Region {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn center(&self) -> Complex64 {
        Complex::new(
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        )
    }

    pub fn diameter(&self) -> f64 {
        let dre = self.re_max - self.re_min;
        let dim = self.im_max - self.im_min;
        (dre * dre + dim * dim).sqrt()
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex::new(self.re_min, self.im_min),
            Complex::new(self.re_max, self.im_min),
            Complex::new(self.re_max, self.im_max),
            Complex::new(self.re_min, self.im_max),
        ]
    }

    /// Splits across the longer side at fraction `frac` (in (0,1)).
    fn split(&self, frac: f64) -> (Region, Region) {
        if self.re_max - self.re_min >= self.im_max - self.im_min {
            let cut = self.re_min + frac * (self.re_max - self.re_min);
            (
                Region {
                    re_max: cut,
                    ..*self
                },
                Region {
                    re_min: cut,
                    ..*self
                },
            )
        } else {
            let cut = self.im_min + frac * (self.im_max - self.im_min);
            (
                Region {
                    im_max: cut,
                    ..*self
                },
                Region {
                    im_min: cut,
                    ..*self
                },
            )
        }
    }
}

/// One localized zero of `Δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootCluster {
    /// Polished root location.
    pub location: Complex64,
    /// Algebraic multiplicity (local winding number).
    pub multiplicity: usize,
    /// `|Δ|` at the polished location.
    pub residual: f64,
}

// Contour phases are accepted per segment only below this bound; larger
// changes force subdivision.
const SEGMENT_PHASE_BOUND: f64 = std::f64::consts::FRAC_PI_3;
const SEGMENT_LOG_BOUND: f64 = 1.0;
const SEGMENT_MAX_DEPTH: u32 = 48;
const LOG_FLOOR: f64 = -600.0;

/// Winding number of `Δ` around the region boundary: the number of enclosed
/// zeros counted with multiplicity.
///
/// Fails with [`Error::BoundaryTooClose`] when the boundary cannot be
/// resolved, i.e. a zero lies on or near it.
pub fn winding_number(q: &QuasiPolynomial, region: &Region) -> Result<i64> {
    let corners = region.corners();
    let mut total = 0.0f64;
    for e in 0..4 {
        let za = corners[e];
        let zb = corners[(e + 1) % 4];
        // Each edge starts from a fixed eight-fold split so that short roots
        // of phase variation are never aliased away.
        let mut prev_z = za;
        let mut prev_v = q.eval_decomposed(prev_z)?;
        for s in 1..=8 {
            let frac = s as f64 / 8.0;
            let z = Complex::new(
                za.re + frac * (zb.re - za.re),
                za.im + frac * (zb.im - za.im),
            );
            let v = q.eval_decomposed(z)?;
            total += segment_phase(q, prev_z, prev_v, z, v, SEGMENT_MAX_DEPTH)?;
            prev_z = z;
            prev_v = v;
        }
    }
    let turns = total / (2.0 * std::f64::consts::PI);
    let rounded = turns.round();
    if (turns - rounded).abs() > 1e-3 {
        return Err(Error::BoundaryTooClose { z: region.center() });
    }
    Ok(rounded as i64)
}

fn segment_phase(
    q: &QuasiPolynomial,
    za: Complex64,
    va: (f64, Complex64),
    zb: Complex64,
    vb: (f64, Complex64),
    depth: u32,
) -> Result<f64> {
    if va.0 < LOG_FLOOR || vb.0 < LOG_FLOOR {
        return Err(Error::BoundaryTooClose { z: za });
    }
    let dphi = (vb.1 / va.1).arg();
    if dphi.abs() <= SEGMENT_PHASE_BOUND && (vb.0 - va.0).abs() <= SEGMENT_LOG_BOUND {
        return Ok(dphi);
    }
    if depth == 0 {
        return Err(Error::BoundaryTooClose {
            z: Complex::new(0.5 * (za.re + zb.re), 0.5 * (za.im + zb.im)),
        });
    }
    let zm = Complex::new(0.5 * (za.re + zb.re), 0.5 * (za.im + zb.im));
    let vm = q.eval_decomposed(zm)?;
    Ok(segment_phase(q, za, va, zm, vm, depth - 1)? + segment_phase(q, zm, vm, zb, vb, depth - 1)?)
}

// Split fractions tried in order when a child boundary lands on a root.
// Deliberately irrational-looking: a cut must never coincide with a root
// coordinate, otherwise an even-multiplicity root sitting exactly on the cut
// produces no phase change along it and would be halved silently.
const SPLIT_FRACTIONS: [f64; 5] = [
    0.518_347_96,
    0.463_912_41,
    0.551_203_17,
    0.432_109_86,
    0.586_471_23,
];
const MAX_SUBDIVISIONS: u32 = 160;

/// All zeros of `Δ` inside `region`, each polished by Newton iteration and
/// carrying its winding-number multiplicity. Roots are sorted by the modal
/// ordering rule and clusters closer than `1e−8·(1+|z|)` are merged.
pub fn find_roots(q: &QuasiPolynomial, region: &Region, tol: f64) -> Result<Vec<RootCluster>> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::invalid("root residual tolerance must be positive"));
    }
    let total = winding_number(q, region)?;
    if total == 0 {
        return Ok(Vec::new());
    }

    let mut work: Vec<(Region, i64, u32)> = vec![(*region, total, 0)];
    let mut localized: Vec<(Complex64, usize, f64)> = Vec::new();
    while let Some((rect, w, depth)) = work.pop() {
        let center = rect.center();
        let merge_radius = 1e-8 * (1.0 + center.norm());
        // Simple zeros are polished from a coarse box; multiple or clustered
        // zeros are pinned down to the merge radius so distinct roots are
        // never conflated.
        let target = if w == 1 {
            (1e-3 * (1.0 + center.norm())).max(merge_radius)
        } else {
            merge_radius
        };
        if rect.diameter() <= target {
            localized.push((center, w as usize, rect.diameter()));
            continue;
        }
        if depth >= MAX_SUBDIVISIONS {
            let residual = q.eval(center).map(|d| d.norm()).unwrap_or(f64::INFINITY);
            return Err(Error::UnresolvedCluster {
                location: center,
                multiplicity: w as usize,
                residual,
            });
        }
        let mut split_ok = false;
        for frac in SPLIT_FRACTIONS {
            let (r1, r2) = rect.split(frac);
            let w1 = match winding_number(q, &r1) {
                Ok(w1) => w1,
                Err(Error::BoundaryTooClose { .. }) => continue,
                Err(e) => return Err(e),
            };
            let w2 = match winding_number(q, &r2) {
                Ok(w2) => w2,
                Err(Error::BoundaryTooClose { .. }) => continue,
                Err(e) => return Err(e),
            };
            if w1 + w2 != w {
                continue;
            }
            if w1 > 0 {
                work.push((r1, w1, depth + 1));
            }
            if w2 > 0 {
                work.push((r2, w2, depth + 1));
            }
            split_ok = true;
            break;
        }
        if !split_ok {
            return Err(Error::BoundaryTooClose { z: center });
        }
    }

    let mut clusters: Vec<RootCluster> = Vec::with_capacity(localized.len());
    for (center, mult, diam) in localized {
        let (mut loc, mut residual) = newton_polish(q, center, mult);
        let leash = 10.0 * diam.max(1e-8 * (1.0 + center.norm()));
        if (loc - center).norm() > leash {
            // Newton escaped the verified box; keep the certified center.
            loc = center;
            residual = q.eval(center).map(|d| d.norm()).unwrap_or(f64::INFINITY);
        }
        if residual > tol {
            return Err(Error::UnresolvedCluster {
                location: loc,
                multiplicity: mult,
                residual,
            });
        }
        clusters.push(RootCluster {
            location: loc,
            multiplicity: mult,
            residual,
        });
    }

    // merge clusters that polished onto the same point
    clusters.sort_by(|a, b| spectral_order(a.location, b.location));
    let mut merged: Vec<RootCluster> = Vec::with_capacity(clusters.len());
    for c in clusters {
        if let Some(last) = merged.last_mut() {
            if (last.location - c.location).norm() <= 1e-8 * (1.0 + c.location.norm()) {
                last.multiplicity += c.multiplicity;
                last.residual = last.residual.max(c.residual);
                continue;
            }
        }
        merged.push(c);
    }

    let found: usize = merged.iter().map(|c| c.multiplicity).sum();
    if found != total as usize {
        return Err(Error::Numerics(format!(
            "subdivision lost roots: winding {total} but localized {found}"
        )));
    }
    Ok(merged)
}

/// Newton polish with numerically differentiated `Δ′`; the step is scaled by
/// the multiplicity so that multiple roots converge quadratically too.
///
/// Iterates to step convergence rather than stopping at the first small
/// residual: under-estimated multiplicities still converge linearly, and
/// driving them to machine precision lets duplicated clusters fall inside
/// the merge radius.
fn newton_polish(q: &QuasiPolynomial, start: Complex64, mult: usize) -> (Complex64, f64) {
    let mut z = start;
    let mut best = (
        start,
        q.eval(start).map(|d| d.norm()).unwrap_or(f64::INFINITY),
    );
    for _ in 0..120 {
        let d = match q.eval(z) {
            Ok(d) => d,
            Err(_) => break,
        };
        if d.norm() < best.1 {
            best = (z, d.norm());
        }
        if d.norm() == 0.0 {
            break;
        }
        let h = 1e-7 * (1.0 + z.norm());
        let (fwd, bwd) = match (
            q.eval(z + Complex::new(h, 0.0)),
            q.eval(z - Complex::new(h, 0.0)),
        ) {
            (Ok(f), Ok(b)) => (f, b),
            _ => break,
        };
        let dp = (fwd - bwd) / Complex::new(2.0 * h, 0.0);
        if dp.norm() == 0.0 {
            break;
        }
        let step = d / dp * Complex::new(mult as f64, 0.0);
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            if let Ok(d) = q.eval(z) {
                if d.norm() < best.1 {
                    best = (z, d.norm());
                }
            }
            break;
        }
    }
    best
}

/// Directional estimate of the exponential type
/// `ω = limsup (1/|z|) log|Δ(z)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialTypeEstimate {
    /// Estimate at the largest radius.
    pub omega: f64,
    /// Absolute difference between the two largest-radius estimates; a
    /// resolution indicator, not a rigorous bound.
    pub spread: f64,
    /// Radius at which `omega` was taken.
    pub radius: f64,
}

/// Samples `max_θ (1/r) log|Δ(r e^{iθ})|` over each radius and reports the
/// value at the largest radius together with the spread against the previous
/// one. `ω` is an asymptotic quantity, so this is an estimate by nature.
pub fn exponential_type(
    q: &QuasiPolynomial,
    radii: &[f64],
    directions: usize,
) -> Result<ExponentialTypeEstimate> {
    if radii.len() < 2 {
        return Err(Error::invalid("need at least two radii"));
    }
    if radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Error::invalid("radii must be positive and finite"));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("radii must be strictly increasing"));
    }
    if directions < 8 {
        return Err(Error::invalid("need at least 8 sample directions"));
    }
    let mut estimates = Vec::with_capacity(radii.len());
    for &r in radii {
        let mut best = f64::NEG_INFINITY;
        for k in 0..directions {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / directions as f64;
            let z = Complex::new(r * theta.cos(), r * theta.sin());
            let (log_abs, _) = q.eval_decomposed(z)?;
            if log_abs.is_finite() {
                best = best.max(log_abs / r);
            }
        }
        estimates.push(best);
    }
    let omega = estimates[estimates.len() - 1];
    let spread = (omega - estimates[estimates.len() - 2]).abs();
    Ok(ExponentialTypeEstimate {
        omega,
        spread,
        radius: radii[radii.len() - 1],
    })
}

/// Options for the spectrum-to-modal bridge.
#[derive(Debug, Clone)]
pub struct BridgeOptions {
    /// Relative safety margin on the estimated type: `ν = ω̂·(1 + margin)`.
    pub margin: f64,
    /// Radii handed to [`exponential_type`].
    pub radii: Vec<f64>,
    /// Direction count handed to [`exponential_type`].
    pub directions: usize,
}

impl Default for BridgeOptions {
    fn default() -> Self {
        BridgeOptions {
            margin: 0.05,
            radii: vec![50.0, 100.0, 200.0],
            directions: 16,
        }
    }
}

/// Assembles a [`ModalSystem`] from localized roots and per-root coupling
/// blocks (one block per root, row count equal to the multiplicity).
///
/// Each root becomes a single Jordan chain of length equal to its
/// multiplicity. The minimality horizon is `ν = max(ω̂, 0)·(1 + margin)` from
/// the estimated exponential type (flagged as an estimate downstream) and
/// the expansion onset is taken as the largest delay `h`.
pub fn to_modal_system(
    q: &QuasiPolynomial,
    roots: &[RootCluster],
    input_couplings: Vec<DMatrix<Complex64>>,
    options: &BridgeOptions,
) -> Result<ModalSystem> {
    if roots.is_empty() {
        return Err(Error::invalid("need at least one root"));
    }
    if input_couplings.len() != roots.len() {
        return Err(Error::invalid(format!(
            "{} coupling blocks for {} roots",
            input_couplings.len(),
            roots.len()
        )));
    }
    for (i, a) in roots.iter().enumerate() {
        for b in roots.iter().skip(i + 1) {
            if (a.location - b.location).norm() <= 1e-8 * (1.0 + a.location.norm()) {
                return Err(Error::invalid(format!(
                    "roots must be pairwise distinct; {} and {} coincide",
                    a.location, b.location
                )));
            }
        }
    }
    let input_dim = input_couplings[0].ncols();
    let mut modes = Vec::with_capacity(roots.len());
    for (root, coupling) in roots.iter().zip(input_couplings) {
        if coupling.nrows() != root.multiplicity {
            return Err(Error::invalid(format!(
                "coupling for root {} has {} rows, expected multiplicity {}",
                root.location,
                coupling.nrows(),
                root.multiplicity
            )));
        }
        if coupling.ncols() != input_dim {
            return Err(Error::invalid(
                "all coupling blocks must have the same column count",
            ));
        }
        modes.push(SpectralMode::new(
            root.location,
            vec![root.multiplicity],
            coupling,
        )?);
    }
    let estimate = exponential_type(q, &options.radii, options.directions)?;
    let nu = estimate.omega.max(0.0) * (1.0 + options.margin);
    ModalSystem::new(modes, input_dim, q.max_delay(), nu)
}
