//! Discrete exponentials and the trigonometric and hyperbolic functions
//! built from them.
//!
//! Closed forms of `E(k, mσ) = Σ kⁿ x⁽ⁿ⁾(m) / n!`:
//!
//! | correspondence | `E(k, mσ)`                 |
//! |----------------|----------------------------|
//! | right          | `(1 + kσ)^m`               |
//! | left           | `(1 - kσ)^(-m)`            |
//! | symmetric      | `(kσ + √((kσ)² + 1))^m`    |

use std::f64::consts::PI;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_complex::Complex64;

use crate::correspondence::{vanishing_from, Correspondence, CorrespondenceKind};
use crate::error::{Error, Result};
use crate::series::{umbral_transform, SeriesStatus, SeriesSum, TaylorSeries};

const IMAG_RESIDUE: f64 = 1e-12;

fn base(c: &Correspondence, k: Complex64) -> Complex64 {
    let ks = k * c.sigma;
    let one = Complex64::new(1.0, 0.0);
    match c.kind {
        CorrespondenceKind::Right => one + ks,
        CorrespondenceKind::Left => one / (one - ks),
        CorrespondenceKind::Symmetric => {
            let root = (ks * ks + one).sqrt();
            let plus = ks + root;
            let minus = root - ks;
            // (kσ + r)(r - kσ) = 1; divide by the larger one to avoid cancellation.
            if plus.norm() >= minus.norm() {
                plus
            } else {
                one / minus
            }
        }
    }
}

fn int_pow(z: Complex64, m: i64) -> Complex64 {
    match i32::try_from(m) {
        Ok(p) => z.powi(p),
        Err(_) => (z.ln() * m as f64).exp(),
    }
}

/// Closed-form discrete exponential `E(k, mσ)`.
pub fn umbral_exp(c: &Correspondence, k: Complex64, m: i64) -> Result<Complex64> {
    if k == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let ks = k * c.sigma;
    let vanishing = match c.kind {
        CorrespondenceKind::Right => ks == Complex64::new(-1.0, 0.0) && m < 0,
        CorrespondenceKind::Left => ks == Complex64::new(1.0, 0.0) && m > 0,
        CorrespondenceKind::Symmetric => false,
    };
    if vanishing {
        return Err(Error::domain(format!(
            "{} exponential has a zero base at kσ = {} raised to a negative power",
            c.kind, ks
        )));
    }
    let z = int_pow(base(c, k), m);
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Overflow(format!(
            "exponential at m = {m} is not representable"
        )))
    }
}

/// Discrete exponential summed from its umbral series.
pub fn umbral_exp_series(c: &Correspondence, k: Complex64, m: i64, tol: f64) -> Result<SeriesSum> {
    umbral_transform(&TaylorSeries::exponential(k), c, m, tol)
}

/// Status the exponential series reaches at `m`, decided from the branch
/// structure alone.
pub fn expected_exp_status(c: &Correspondence, k: Complex64, m: i64) -> SeriesStatus {
    if k == Complex64::new(0.0, 0.0) || vanishing_from(c.kind, m).is_some() {
        return SeriesStatus::ExactCutoff;
    }
    if (k * c.sigma).norm() < 1.0 {
        SeriesStatus::Converged
    } else {
        SeriesStatus::Diverged
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrigKind {
    Sin,
    Cos,
    Sinh,
    Cosh,
}

impl TrigKind {
    pub const ALL: [TrigKind; 4] = [TrigKind::Sin, TrigKind::Cos, TrigKind::Sinh, TrigKind::Cosh];

    pub fn name(self) -> &'static str {
        match self {
            TrigKind::Sin => "sin",
            TrigKind::Cos => "cos",
            TrigKind::Sinh => "sinh",
            TrigKind::Cosh => "cosh",
        }
    }

    fn is_circular(self) -> bool {
        matches!(self, TrigKind::Sin | TrigKind::Cos)
    }
}

impl fmt::Display for TrigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TrigKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TrigKind::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::domain(format!(
                    "unknown function '{s}', expected sin, cos, sinh or cosh"
                ))
            })
    }
}

fn check_trig_domain(c: &Correspondence, k: f64, which: TrigKind) -> Result<()> {
    let ks = (k * c.sigma).abs();
    let ok = if which.is_circular() {
        ks <= 1.0
    } else {
        ks < 1.0
    };
    if ok && k.is_finite() {
        Ok(())
    } else {
        let bound = if which.is_circular() {
            "|kσ| ≤ 1"
        } else {
            "|kσ| < 1"
        };
        Err(Error::domain(format!(
            "{which} requires {bound}, got kσ = {}",
            k * c.sigma
        )))
    }
}

/// Discrete sin, cos, sinh or cosh at `mσ`, formed from complex exponentials.
pub fn umbral_trig(c: &Correspondence, k: f64, m: i64, which: TrigKind) -> Result<f64> {
    check_trig_domain(c, k, which)?;
    let arg = if which.is_circular() {
        Complex64::new(0.0, k)
    } else {
        Complex64::new(k, 0.0)
    };
    let plus = umbral_exp(c, arg, m)?;
    let minus = umbral_exp(c, -arg, m)?;
    let z = match which {
        TrigKind::Sin => (plus - minus) / Complex64::new(0.0, 2.0),
        TrigKind::Cos | TrigKind::Cosh => (plus + minus) / 2.0,
        TrigKind::Sinh => (plus - minus) / 2.0,
    };
    let scale = plus.norm().max(minus.norm()).max(f64::MIN_POSITIVE);
    if z.im.abs() > IMAG_RESIDUE * scale {
        return Err(Error::InternalConsistency(format!(
            "{which} at m = {m} has imaginary part {:e} against scale {scale:e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// Real-arithmetic closed forms of the discrete trig functions.
///
/// Circular functions: `ρ^m · sin(mθ)` with `θ = arcsin(kσ)`, `ρ = 1` for the
/// symmetric correspondence, `θ = arctan(kσ)` and `ρ = √(1 + (kσ)²)` for the
/// right one, `ρ = 1/√(1 + (kσ)²)` for the left one. Hyperbolic functions
/// are half sums and differences of the real exponentials.
pub fn umbral_trig_closed_form(c: &Correspondence, k: f64, m: i64, which: TrigKind) -> Result<f64> {
    let ks = k * c.sigma;
    let mf = m as f64;
    let value = match (c.kind, which) {
        (CorrespondenceKind::Symmetric, TrigKind::Sin | TrigKind::Cos) => {
            if ks.abs() > 1.0 {
                return Err(Error::domain(format!(
                    "{which} requires |kσ| ≤ 1, got {ks}"
                )));
            }
            let phase = mf * ks.asin();
            if which == TrigKind::Sin {
                phase.sin()
            } else {
                phase.cos()
            }
        }
        (kind, TrigKind::Sin | TrigKind::Cos) => {
            let growth = if kind == CorrespondenceKind::Right {
                mf
            } else {
                -mf
            };
            let rho = (0.5 * growth * ks.mul_add(ks, 1.0).ln()).exp();
            let phase = mf * ks.atan();
            rho * if which == TrigKind::Sin {
                phase.sin()
            } else {
                phase.cos()
            }
        }
        (CorrespondenceKind::Symmetric, _) => {
            let phase = mf * ks.asinh();
            if which == TrigKind::Sinh {
                phase.sinh()
            } else {
                phase.cosh()
            }
        }
        (_, _) => {
            let plus = umbral_exp(c, Complex64::new(k, 0.0), m)?.re;
            let minus = umbral_exp(c, Complex64::new(-k, 0.0), m)?.re;
            if which == TrigKind::Sinh {
                (plus - minus) / 2.0
            } else {
                (plus + minus) / 2.0
            }
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!(
            "{which} at m = {m} is not representable"
        )))
    }
}

/// A plane wave on the lattice described by momentum and wavelength.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveSpec {
    pub k: f64,
    /// Points per wavelength.
    pub l: f64,
    /// `l · σ`.
    pub lambda: f64,
    pub correspondence: Correspondence,
    /// The shortest wave the correspondence admits (`kσ = 1`).
    pub minimal: bool,
}

/// Fewest lattice points per wavelength: 4 for the symmetric correspondence,
/// 8 for right and left.
pub fn minimal_wavelength_points(kind: CorrespondenceKind) -> f64 {
    match kind {
        CorrespondenceKind::Symmetric => 4.0,
        CorrespondenceKind::Right | CorrespondenceKind::Left => 8.0,
    }
}

/// `k = sin(2π/l)/σ` (symmetric) or `k = tan(2π/l)/σ` (right, left).
pub fn wavelength_to_momentum(c: &Correspondence, l: f64) -> Result<WaveSpec> {
    let l_min = minimal_wavelength_points(c.kind);
    if !(l.is_finite() && l >= l_min * (1.0 - 1e-12)) {
        return Err(Error::domain(format!(
            "{} waves need at least {l_min} points per wavelength, got {l}",
            c.kind
        )));
    }
    let minimal = (l - l_min).abs() <= 1e-12 * l_min;
    let ks = if minimal {
        1.0
    } else {
        let angle = 2.0 * PI / l;
        match c.kind {
            CorrespondenceKind::Symmetric => angle.sin(),
            _ => angle.tan(),
        }
    };
    Ok(WaveSpec {
        k: ks / c.sigma,
        l,
        lambda: l * c.sigma,
        correspondence: *c,
        minimal,
    })
}

/// `λ = 2πσ / arcsin(kσ)` (symmetric) or `λ = 2πσ / arctan(kσ)` (right, left).
pub fn momentum_to_wavelength(c: &Correspondence, k: f64) -> Result<f64> {
    let ks = k * c.sigma;
    if !(ks > 0.0 && ks <= 1.0) {
        return Err(Error::domain(format!(
            "wavelength needs 0 < kσ ≤ 1, got {ks}"
        )));
    }
    if ks == 1.0 {
        return Ok(minimal_wavelength_points(c.kind) * c.sigma);
    }
    let angle = match c.kind {
        CorrespondenceKind::Symmetric => ks.asin(),
        _ => ks.atan(),
    };
    Ok(2.0 * PI * c.sigma / angle)
}

/// Amplitude factor `Aₙ(l) = sec^(l·n)(2π/l)` gained by right and left
/// discrete sines over `n` wavelengths.
pub fn amplitude_growth(l: f64, n: i64) -> Result<f64> {
    if !(l > 4.0 && l.is_finite()) {
        return Err(Error::domain(format!(
            "amplitude growth needs l > 4, got {l}"
        )));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let log_sec = -(2.0 * PI / l).cos().ln();
    let value = (l * n as f64 * log_sec).exp();
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("A_{n}({l}) is not representable")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdditionLawReport {
    /// `|E(k,m)E(k,n) - E(k,m+n)| / |E(k,m+n)|`.
    pub translation_residual: f64,
    /// `|E(k,m)E(k',m) - E(k+k',m)| / |E(k+k',m)|`.
    pub two_constant_residual: f64,
    pub two_constant_product: Complex64,
    pub two_constant_combined: Complex64,
}

/// Compares the translation law of discrete exponentials, which holds, with
/// the two-momenta law, which in general does not.
pub fn addition_law_check(
    c: &Correspondence,
    k: f64,
    k2: f64,
    m: i64,
    n: i64,
) -> Result<AdditionLawReport> {
    for q in [k, k2] {
        if !((q * c.sigma).abs() < 1.0) {
            return Err(Error::domain(format!(
                "momentum with kσ = {} is not convergent",
                q * c.sigma
            )));
        }
    }
    let e = |q: f64, p: i64| umbral_exp(c, Complex64::new(q, 0.0), p);
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm().max(f64::MIN_POSITIVE);

    let translated = e(k, m)? * e(k, n)?;
    let joined = e(
        k,
        m.checked_add(n)
            .ok_or_else(|| Error::domain("m + n overflows"))?,
    )?;
    let product = e(k, m)? * e(k2, m)?;
    let combined = e(k + k2, m)?;
    Ok(AdditionLawReport {
        translation_residual: rel(translated, joined),
        two_constant_residual: rel(product, combined),
        two_constant_product: product,
        two_constant_combined: combined,
    })
}

/// Lattice samples `f(mσ)` over a contiguous window, each with the status of
/// the series that defines it.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteFunction {
    pub sigma: f64,
    /// Lattice index of the first sample.
    pub start: i64,
    pub samples: Vec<Complex64>,
    pub status: Vec<SeriesStatus>,
}

impl DiscreteFunction {
    pub fn new(sigma: f64, start: i64, samples: Vec<Complex64>, status: Vec<SeriesStatus>) -> Self {
        assert_eq!(samples.len(), status.len());
        DiscreteFunction {
            sigma,
            start,
            samples,
            status,
        }
    }

    /// Samples `f` over `window`, with every status `ExactCutoff`.
    pub fn from_fn(sigma: f64, window: RangeInclusive<i64>, f: impl Fn(i64) -> Complex64) -> Self {
        let start = *window.start();
        let samples: Vec<_> = window.map(f).collect();
        let status = vec![SeriesStatus::ExactCutoff; samples.len()];
        DiscreteFunction {
            sigma,
            start,
            samples,
            status,
        }
    }

    /// Closed-form exponential over `window`, status from the branch
    /// structure.
    pub fn exp(c: &Correspondence, k: Complex64, window: RangeInclusive<i64>) -> Result<Self> {
        let start = *window.start();
        let mut samples = Vec::new();
        let mut status = Vec::new();
        for m in window {
            samples.push(umbral_exp(c, k, m)?);
            status.push(expected_exp_status(c, k, m));
        }
        Ok(DiscreteFunction {
            sigma: c.sigma,
            start,
            samples,
            status,
        })
    }

    /// Exponential summed from its series at every point.
    pub fn exp_series(
        c: &Correspondence,
        k: Complex64,
        window: RangeInclusive<i64>,
        tol: f64,
    ) -> Result<Self> {
        let start = *window.start();
        let mut samples = Vec::new();
        let mut status = Vec::new();
        for m in window {
            let s = umbral_exp_series(c, k, m, tol)?;
            samples.push(s.value);
            status.push(s.status);
        }
        Ok(DiscreteFunction {
            sigma: c.sigma,
            start,
            samples,
            status,
        })
    }

    pub fn trig(
        c: &Correspondence,
        k: f64,
        which: TrigKind,
        window: RangeInclusive<i64>,
    ) -> Result<Self> {
        let start = *window.start();
        let arg = if which.is_circular() {
            Complex64::new(0.0, k)
        } else {
            Complex64::new(k, 0.0)
        };
        let mut samples = Vec::new();
        let mut status = Vec::new();
        for m in window {
            samples.push(Complex64::new(umbral_trig(c, k, m, which)?, 0.0));
            status.push(expected_exp_status(c, arg, m).worst(expected_exp_status(c, -arg, m)));
        }
        Ok(DiscreteFunction {
            sigma: c.sigma,
            start,
            samples,
            status,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Index of the last sample.
    pub fn end(&self) -> i64 {
        self.start + self.samples.len() as i64 - 1
    }

    pub fn get(&self, m: i64) -> Option<Complex64> {
        let i = usize::try_from(m.checked_sub(self.start)?).ok()?;
        self.samples.get(i).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64, SeriesStatus)> + '_ {
        self.samples
            .iter()
            .zip(&self.status)
            .enumerate()
            .map(|(i, (&z, &s))| (self.start + i as i64, z, s))
    }

    pub fn max_norm(&self) -> f64 {
        self.samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl SeriesStatus {
    /// The less favourable of two statuses.
    pub fn worst(self, other: SeriesStatus) -> SeriesStatus {
        let rank = |s: SeriesStatus| match s {
            SeriesStatus::ExactCutoff => 0,
            SeriesStatus::Converged => 1,
            SeriesStatus::Diverged => 2,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(kind: CorrespondenceKind, sigma: f64) -> Correspondence {
        Correspondence::new(kind, sigma)
    }

    #[test]
    fn exp_examples() {
        let r = c(CorrespondenceKind::Right, 0.5);
        assert_eq!(
            umbral_exp(&r, Complex64::new(1.0, 0.0), 2).unwrap().re,
            2.25
        );
        let s = c(CorrespondenceKind::Symmetric, 1.0);
        let v = umbral_exp(&s, Complex64::new(0.6, 0.0), 1).unwrap().re;
        assert!((v - (0.6 + 1.36f64.sqrt())).abs() < 1e-15);
        let v = umbral_exp(&r, Complex64::new(1.0, 0.0), -1).unwrap().re;
        assert!((v - 1.0 / 1.5).abs() < 1e-15);
        for kind in CorrespondenceKind::ALL {
            assert_eq!(
                umbral_exp(&c(kind, 0.3), Complex64::new(0.0, 0.0), -7)
                    .unwrap()
                    .re,
                1.0
            );
        }
    }

    #[test]
    fn zero_base_with_negative_power() {
        let r = c(CorrespondenceKind::Right, 1.0);
        assert!(matches!(
            umbral_exp(&r, Complex64::new(-1.0, 0.0), -2),
            Err(Error::Domain(_))
        ));
        assert_eq!(
            umbral_exp(&r, Complex64::new(-1.0, 0.0), 2).unwrap().re,
            0.0
        );
        let l = c(CorrespondenceKind::Left, 1.0);
        assert!(matches!(
            umbral_exp(&l, Complex64::new(1.0, 0.0), 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn symmetric_negative_argument_is_stable() {
        // base·(1/base) = 1 with no cancellation at large negative kσ
        let s = c(CorrespondenceKind::Symmetric, 1.0);
        let a = umbral_exp(&s, Complex64::new(-1e8, 0.0), 1).unwrap().re;
        let b = umbral_exp(&s, Complex64::new(1e8, 0.0), 1).unwrap().re;
        assert!((a * b - 1.0).abs() < 1e-15);
    }

    #[test]
    fn trig_examples() {
        for kind in CorrespondenceKind::ALL {
            assert_eq!(
                umbral_trig(&c(kind, 0.1), 3.0, 0, TrigKind::Sin).unwrap(),
                0.0
            );
        }
        let s = c(CorrespondenceKind::Symmetric, 1.0);
        let v = umbral_trig(&s, (PI / 6.0).sin(), 3, TrigKind::Sin).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        let r = c(CorrespondenceKind::Right, 1.0);
        assert!((umbral_trig(&r, 1.0, 2, TrigKind::Sin).unwrap() - 2.0).abs() < 1e-15);
        assert!(umbral_trig(&r, 1.0, 2, TrigKind::Sinh).is_err());
        assert!(umbral_trig(&r, 1.01, 2, TrigKind::Cos).is_err());
    }

    #[test]
    fn closed_forms_match_exponential_combinations() {
        for kind in CorrespondenceKind::ALL {
            let corr = c(kind, 0.2);
            for which in TrigKind::ALL {
                for m in -12..=12 {
                    let a = umbral_trig(&corr, 2.5, m, which).unwrap();
                    let b = umbral_trig_closed_form(&corr, 2.5, m, which).unwrap();
                    assert!(
                        (a - b).abs() <= 1e-12 * a.abs().max(1.0),
                        "{kind} {which} {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn wavelengths() {
        let s = c(CorrespondenceKind::Symmetric, 0.5);
        let w = wavelength_to_momentum(&s, 4.0).unwrap();
        assert!(w.minimal);
        assert_eq!(w.k, 2.0);
        let w = wavelength_to_momentum(&s, 12.0).unwrap();
        assert!((w.k - 1.0).abs() < 1e-15);
        assert!(!w.minimal);
        let r = c(CorrespondenceKind::Right, 0.5);
        let w = wavelength_to_momentum(&r, 8.0).unwrap();
        assert!(w.minimal && w.k == 2.0);
        assert!(wavelength_to_momentum(&r, 7.9).is_err());
        assert!(wavelength_to_momentum(&s, 3.0).is_err());

        assert!((momentum_to_wavelength(&s, 2.0).unwrap() - 4.0 * 0.5).abs() < 1e-15);
        assert!((momentum_to_wavelength(&r, 2.0).unwrap() - 8.0 * 0.5).abs() < 1e-14);
        assert!((momentum_to_wavelength(&s, 1.0).unwrap() - 12.0 * 0.5).abs() < 1e-13);
        assert!(momentum_to_wavelength(&s, 0.0).is_err());
        assert!(momentum_to_wavelength(&r, 2.1).is_err());
    }

    #[test]
    fn amplitude() {
        assert!((amplitude_growth(8.0, 1).unwrap() - 16.0).abs() < 1e-12);
        assert_eq!(amplitude_growth(17.3, 0).unwrap(), 1.0);
        let expected = (1.0 / (2.0 * PI / 100.0).cos()).powi(100);
        assert!((amplitude_growth(100.0, 1).unwrap() - expected).abs() < 1e-12);
        assert!(amplitude_growth(4.0, 1).is_err());
    }

    #[test]
    fn addition_laws() {
        let r = c(CorrespondenceKind::Right, 1.0);
        let rep = addition_law_check(&r, 0.5, 0.2, 2, 3).unwrap();
        assert!(rep.translation_residual < 1e-15);
        let rep = addition_law_check(&r, 0.3, 0.4, 2, 0).unwrap();
        assert!((rep.two_constant_product.re - 3.3124).abs() < 1e-12);
        assert!((rep.two_constant_combined.re - 2.89).abs() < 1e-12);
        assert!(rep.two_constant_residual > 0.1);
        for kind in CorrespondenceKind::ALL {
            let rep = addition_law_check(&c(kind, 0.7), 0.9, 0.0, 4, -3).unwrap();
            assert!(rep.two_constant_residual < 1e-15);
        }
    }

    #[test]
    fn discrete_function_window() {
        let r = c(CorrespondenceKind::Right, 0.25);
        let f = DiscreteFunction::exp(&r, Complex64::new(1.0, 0.0), -3..=3).unwrap();
        assert_eq!(f.len(), 7);
        assert_eq!(f.end(), 3);
        assert_eq!(f.status[0], SeriesStatus::Converged);
        assert_eq!(f.status[6], SeriesStatus::ExactCutoff);
        assert_eq!(f.get(2).unwrap().re, 1.5625);
        assert!(f.get(4).is_none());
    }
}
