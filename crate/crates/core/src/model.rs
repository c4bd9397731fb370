// SPDX-License-Identifier: MIT OR Apache-2.0

//! Piecewise stationary VAR model specifications and observed series.
//!
//! A specification describes `m0 + 1` stationary VAR(q) regimes on a time
//! axis `t = 1..=T`, separated by break times `0 = t_0 < t_1 < ... < t_{m0}
//! < t_{m0+1} = T + 1`. The regime switching at break time `t_j` governs the
//! observations from `t_j` onward.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Noise model for one segment: the innovation covariance of the VAR recursion.
#[derive(Debug, Clone, PartialEq)]
pub enum NoiseVariant {
    /// Independent coordinates, common variance `sigma2`.
    Diagonal { sigma2: f64 },
    /// Cross-sectional AR(1) correlation profile: `cov[i, j] = sigma2 * rho^|i - j|`.
    Ar1Profile { sigma2: f64, rho: f64 },
}

impl NoiseVariant {
    /// Materializes the p x p covariance matrix.
    pub fn covariance(&self, p: usize) -> DMatrix<f64> {
        match *self {
            NoiseVariant::Diagonal { sigma2 } => DMatrix::identity(p, p) * sigma2,
            NoiseVariant::Ar1Profile { sigma2, rho } => DMatrix::from_fn(p, p, |i, j| {
                sigma2 * rho.powi((i as i32 - j as i32).abs())
            }),
        }
    }

    fn check(&self, label: &str, violations: &mut Vec<String>) {
        let (sigma2, rho) = match *self {
            NoiseVariant::Diagonal { sigma2 } => (sigma2, 0.0),
            NoiseVariant::Ar1Profile { sigma2, rho } => (sigma2, rho),
        };
        if !(sigma2 > 0.0) || !sigma2.is_finite() {
            violations.push(format!("{label}: sigma2 must be positive and finite"));
        }
        if !(rho.abs() < 1.0) {
            violations.push(format!("{label}: |rho| must be < 1"));
        }
    }
}

/// Per-segment noise specification with an optional per-segment override list.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSpec {
    pub default: NoiseVariant,
    pub per_segment: Option<Vec<NoiseVariant>>,
}

impl NoiseSpec {
    pub fn diagonal(sigma2: f64) -> Self {
        NoiseSpec {
            default: NoiseVariant::Diagonal { sigma2 },
            per_segment: None,
        }
    }

    pub fn ar1_profile(sigma2: f64, rho: f64) -> Self {
        NoiseSpec {
            default: NoiseVariant::Ar1Profile { sigma2, rho },
            per_segment: None,
        }
    }

    /// Noise variant in effect for segment `j` (0-based).
    pub fn segment_variant(&self, j: usize) -> &NoiseVariant {
        self.per_segment
            .as_ref()
            .and_then(|v| v.get(j))
            .unwrap_or(&self.default)
    }
}

/// Ground-truth generative model: break times, per-segment coefficient blocks
/// and the innovation covariance.
///
/// Each coefficient block stacks the lag matrices side by side,
/// `phi = [Phi_1 ... Phi_q]`, giving a `p x (p*q)` matrix per segment.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseVarSpec {
    /// Total number of time points `T`.
    pub t_len: usize,
    /// Series dimension `p`.
    pub p: usize,
    /// Lag order `q`.
    pub q: usize,
    /// Strictly increasing break times, each in `(q, T]`.
    pub breaks: Vec<usize>,
    /// `m0 + 1` coefficient blocks, each `p x (p*q)`.
    pub segment_coeffs: Vec<DMatrix<f64>>,
    pub noise: NoiseSpec,
}

/// Derived quantities reported by a successful validation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecSummary {
    /// Minimum distance between consecutive break fences (`t_0 = 0`,
    /// `t_{m0+1} = T + 1` included).
    pub min_segment_gap: usize,
    /// Total count of nonzero coefficient entries over all segments.
    pub total_sparsity: usize,
    /// Largest coefficient magnitude over all segments.
    pub max_coeff: f64,
    /// Companion spectral radius per segment.
    pub spectral_radii: Vec<f64>,
}

impl PiecewiseVarSpec {
    /// Number of segments `m0 + 1`.
    pub fn segments(&self) -> usize {
        self.breaks.len() + 1
    }

    /// Segment index (0-based) governing the observation at time `t` (1-based).
    pub fn segment_of(&self, t: usize) -> usize {
        self.breaks.iter().take_while(|&&b| b <= t).count()
    }

    /// Break fences `0, t_1, ..., t_m0, T + 1`.
    pub fn fences(&self) -> Vec<usize> {
        let mut f = Vec::with_capacity(self.breaks.len() + 2);
        f.push(0);
        f.extend_from_slice(&self.breaks);
        f.push(self.t_len + 1);
        f
    }
}

/// Observed `T x p` series plus the lag order used downstream when building
/// regression designs.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub values: DMatrix<f64>,
    pub q: usize,
}

impl TimeSeries {
    pub fn new(values: DMatrix<f64>, q: usize) -> Result<Self> {
        if values.nrows() <= q {
            return Err(Error::invalid_input(format!(
                "series length {} must exceed the lag order {q}",
                values.nrows()
            )));
        }
        if q == 0 {
            return Err(Error::invalid_input("lag order q must be at least 1"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid_input("series contains non-finite entries"));
        }
        Ok(TimeSeries { values, q })
    }

    pub fn t_len(&self) -> usize {
        self.values.nrows()
    }

    pub fn p(&self) -> usize {
        self.values.ncols()
    }

    /// Observation at 1-based time `t` as a column vector.
    pub fn at(&self, t: usize) -> DVector<f64> {
        self.values.row(t - 1).transpose()
    }

    /// Average per-coordinate sample variance; data-scale factor for tuning.
    pub fn mean_variance(&self) -> f64 {
        let n = self.values.nrows() as f64;
        if n < 2.0 {
            return 0.0;
        }
        let mut acc = 0.0;
        for k in 0..self.values.ncols() {
            let col = self.values.column(k);
            let mean = col.sum() / n;
            acc += col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        }
        acc / self.values.ncols() as f64
    }

    /// Applies `order` rounds of first differencing.
    pub fn difference(&self, order: usize) -> Result<TimeSeries> {
        let mut values = self.values.clone();
        for _ in 0..order {
            if values.nrows() < 2 {
                return Err(Error::invalid_input("series too short to difference"));
            }
            let mut out = DMatrix::zeros(values.nrows() - 1, values.ncols());
            for r in 0..out.nrows() {
                for c in 0..out.ncols() {
                    out[(r, c)] = values[(r + 1, c)] - values[(r, c)];
                }
            }
            values = out;
        }
        TimeSeries::new(values, self.q)
    }
}

/// Companion-form lift of a `p x (p*q)` coefficient block to a `(p*q) x (p*q)`
/// VAR(1) transition matrix.
pub fn companion_matrix(phi: &DMatrix<f64>, p: usize, q: usize) -> DMatrix<f64> {
    let d = p * q;
    let mut c = DMatrix::zeros(d, d);
    c.view_mut((0, 0), (p, d)).copy_from(phi);
    for l in 1..q {
        for i in 0..p {
            c[(l * p + i, (l - 1) * p + i)] = 1.0;
        }
    }
    c
}

/// Spectral radius of a square matrix.
pub fn spectral_radius(m: &DMatrix<f64>) -> f64 {
    m.complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Checks every model invariant and returns derived quantities, or the full
/// list of violations.
pub fn validate_spec(spec: &PiecewiseVarSpec) -> Result<SpecSummary> {
    let mut violations = Vec::new();
    let (t_len, p, q) = (spec.t_len, spec.p, spec.q);

    if p == 0 {
        violations.push("series dimension p must be at least 1".into());
    }
    if q == 0 {
        violations.push("lag order q must be at least 1".into());
    }
    if t_len <= q {
        violations.push(format!("T = {t_len} must exceed the lag order q = {q}"));
    }

    for w in spec.breaks.windows(2) {
        if w[1] <= w[0] {
            violations.push(format!(
                "break times must be strictly increasing: {} then {}",
                w[0], w[1]
            ));
        }
    }
    for &b in &spec.breaks {
        if b <= q || b > t_len {
            violations.push(format!("break time {b} outside the admissible range ({q}, {t_len}]"));
        }
    }

    if spec.segment_coeffs.len() != spec.segments() {
        violations.push(format!(
            "expected {} coefficient blocks, found {}",
            spec.segments(),
            spec.segment_coeffs.len()
        ));
    }

    let mut spectral_radii = Vec::with_capacity(spec.segment_coeffs.len());
    let mut total_sparsity = 0usize;
    let mut max_coeff: f64 = 0.0;
    for (j, phi) in spec.segment_coeffs.iter().enumerate() {
        if phi.nrows() != p || phi.ncols() != p * q {
            violations.push(format!(
                "segment {j}: coefficient block is {}x{}, expected {p}x{}",
                phi.nrows(),
                phi.ncols(),
                p * q
            ));
            continue;
        }
        if phi.iter().any(|v| !v.is_finite()) {
            violations.push(format!("segment {j}: non-finite coefficient"));
            continue;
        }
        total_sparsity += phi.iter().filter(|v| **v != 0.0).count();
        max_coeff = max_coeff.max(phi.iter().fold(0.0f64, |a, v| a.max(v.abs())));
        let radius = spectral_radius(&companion_matrix(phi, p, q));
        if radius >= 1.0 {
            violations.push(format!(
                "segment {j}: companion spectral radius {radius:.6} >= 1 (non-stationary)"
            ));
        }
        spectral_radii.push(radius);
    }

    let n_segments = spec.segments();
    for j in 0..n_segments {
        let variant = spec.noise.segment_variant(j);
        variant.check(&format!("noise segment {j}"), &mut violations);
        if p > 0 {
            let cov = variant.covariance(p);
            if cov.clone().cholesky().is_none() {
                violations.push(format!("noise segment {j}: covariance not positive definite"));
            }
        }
    }
    if let Some(per) = &spec.noise.per_segment {
        if per.len() != n_segments {
            violations.push(format!(
                "noise overrides list has {} entries, expected {n_segments}",
                per.len()
            ));
        }
    }

    if !violations.is_empty() {
        return Err(Error::InvalidSpec(violations));
    }

    let fences = spec.fences();
    let min_segment_gap = fences.windows(2).map(|w| w[1] - w[0]).min().unwrap_or(0);

    Ok(SpecSummary {
        min_segment_gap,
        total_sparsity,
        max_coeff,
        spectral_radii,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_off(p: usize, value: f64) -> DMatrix<f64> {
        DMatrix::from_fn(p, p, |i, j| if j == i + 1 { value } else { 0.0 })
    }

    #[test]
    fn one_off_diagonal_specs_are_stationary() {
        let spec = PiecewiseVarSpec {
            t_len: 300,
            p: 20,
            q: 1,
            breaks: vec![100, 200],
            segment_coeffs: vec![one_off(20, -0.6), one_off(20, 0.75), one_off(20, -0.8)],
            noise: NoiseSpec::diagonal(0.01),
        };
        let summary = validate_spec(&spec).unwrap();
        assert!(summary.spectral_radii.iter().all(|r| *r < 1.0));
        assert_eq!(summary.total_sparsity, 3 * 19);
        assert_eq!(summary.min_segment_gap, 100);
        assert!((summary.max_coeff - 0.8).abs() < 1e-12);
    }

    #[test]
    fn unit_diagonal_is_rejected() {
        let spec = PiecewiseVarSpec {
            t_len: 100,
            p: 4,
            q: 1,
            breaks: vec![],
            segment_coeffs: vec![DMatrix::identity(4, 4)],
            noise: NoiseSpec::diagonal(1.0),
        };
        let err = validate_spec(&spec).unwrap_err();
        match err {
            Error::InvalidSpec(v) => {
                assert!(v.iter().any(|m| m.contains("spectral radius")));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn duplicate_breaks_are_rejected() {
        let spec = PiecewiseVarSpec {
            t_len: 300,
            p: 2,
            q: 1,
            breaks: vec![100, 100],
            segment_coeffs: vec![one_off(2, 0.1); 3],
            noise: NoiseSpec::diagonal(1.0),
        };
        let err = validate_spec(&spec).unwrap_err();
        match err {
            Error::InvalidSpec(v) => {
                assert!(v.iter().any(|m| m.contains("strictly increasing")));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn companion_lift_matches_var2() {
        // VAR(2) with p = 2: companion is 4x4 with identity on the sub-block.
        let phi = DMatrix::from_row_slice(2, 4, &[0.5, 0.0, 0.1, 0.0, 0.0, 0.4, 0.0, 0.2]);
        let c = companion_matrix(&phi, 2, 2);
        assert_eq!(c[(0, 0)], 0.5);
        assert_eq!(c[(0, 2)], 0.1);
        assert_eq!(c[(2, 0)], 1.0);
        assert_eq!(c[(3, 1)], 1.0);
        assert_eq!(c[(2, 2)], 0.0);
        assert!(spectral_radius(&c) < 1.0);
    }

    #[test]
    fn noise_profile_covariance() {
        let cov = NoiseVariant::Ar1Profile { sigma2: 0.01, rho: 0.5 }.covariance(3);
        assert!((cov[(0, 0)] - 0.01).abs() < 1e-15);
        assert!((cov[(0, 1)] - 0.005).abs() < 1e-15);
        assert!((cov[(0, 2)] - 0.0025).abs() < 1e-15);
        assert!(cov.cholesky().is_some());
    }
}
