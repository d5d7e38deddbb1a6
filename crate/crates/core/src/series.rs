//! Umbral transform of Taylor series: `Σ cₙ xⁿ  →  Σ cₙ x⁽ⁿ⁾(m)`.
//!
//! Terms are accumulated in arbitrary-precision floating point. After each
//! pass the cancellation loss `log2(max |term| / |sum|)` is measured and the
//! pass is repeated at a higher precision whenever the working precision
//! cannot deliver the requested relative tolerance.

use num_complex::Complex64;

use crate::bigfloat::{float_from_f64, float_from_i128, BigComplex, Float};
use crate::correspondence::{vanishing_from, Correspondence, CorrespondenceKind};
use crate::error::{Error, Result};

const START_PRECISION: usize = 128;
const MAX_PRECISION: usize = 1 << 15;
const GUARD_BITS: f64 = 16.0;
const MAX_PASSES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesStatus {
    /// Every omitted term is exactly zero.
    ExactCutoff,
    /// The estimated tail is below the tolerance.
    Converged,
    /// Partial sums grow without bound, or terms do not decay.
    Diverged,
}

impl SeriesStatus {
    pub fn name(self) -> &'static str {
        match self {
            SeriesStatus::ExactCutoff => "exact_cutoff",
            SeriesStatus::Converged => "converged",
            SeriesStatus::Diverged => "diverged",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficients {
    /// Finitely many coefficients, lowest order first.
    List(Vec<Complex64>),
    /// `cₙ = kⁿ / n!`, the Taylor coefficients of `exp(k x)`.
    Exponential(Complex64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Sum a finite list completely; sum an infinite series until the tail
    /// estimate drops below the tolerance.
    Adaptive,
    /// Sum exactly the first `n` terms.
    Fixed(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSeries {
    pub coeffs: Coefficients,
    pub truncation: Truncation,
}

impl TaylorSeries {
    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::from_complex(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn from_complex(coeffs: Vec<Complex64>) -> Self {
        TaylorSeries {
            coeffs: Coefficients::List(coeffs),
            truncation: Truncation::Adaptive,
        }
    }

    pub fn exponential(k: Complex64) -> Self {
        TaylorSeries {
            coeffs: Coefficients::Exponential(k),
            truncation: Truncation::Adaptive,
        }
    }

    pub fn with_truncation(mut self, truncation: Truncation) -> Self {
        self.truncation = truncation;
        self
    }

    fn validate(&self) -> Result<()> {
        let finite = |z: &Complex64| z.re.is_finite() && z.im.is_finite();
        let ok = match &self.coeffs {
            Coefficients::List(v) => v.iter().all(finite),
            Coefficients::Exponential(k) => finite(k),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain("Taylor coefficients must be finite"))
        }
    }

    fn len(&self) -> Option<usize> {
        match &self.coeffs {
            Coefficients::List(v) => Some(v.len()),
            Coefficients::Exponential(k) if *k == Complex64::new(0.0, 0.0) => Some(1),
            Coefficients::Exponential(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesOptions {
    /// Relative tolerance on the sum.
    pub tol: f64,
    /// Growth factor of `|partial sum|` over the first nonzero term that,
    /// together with a run of increases, signals divergence.
    pub blowup_factor: f64,
    /// Number of consecutive increases required.
    pub blowup_run: usize,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            tol: 1e-12,
            blowup_factor: 1e12,
            blowup_run: 50,
            max_terms: 100_000,
        }
    }
}

impl SeriesOptions {
    pub fn with_tol(tol: f64) -> Self {
        SeriesOptions {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    pub status: SeriesStatus,
    /// Number of terms visited, zero terms included.
    pub terms: usize,
    /// Working precision of the accepted pass, in bits.
    pub precision_bits: usize,
}

/// Umbral transform of `f` at lattice index `m`.
pub fn umbral_transform(
    f: &TaylorSeries,
    c: &Correspondence,
    m: i64,
    tol: f64,
) -> Result<SeriesSum> {
    umbral_transform_with(f, c, m, &SeriesOptions::with_tol(tol))
}

pub fn umbral_transform_with(
    f: &TaylorSeries,
    c: &Correspondence,
    m: i64,
    opts: &SeriesOptions,
) -> Result<SeriesSum> {
    if !(opts.tol > 0.0 && opts.tol < 1.0) {
        return Err(Error::domain(format!(
            "tolerance must lie in (0, 1), got {}",
            opts.tol
        )));
    }
    if !(c.sigma > 0.0 && c.sigma.is_finite()) {
        return Err(Error::domain(format!(
            "spacing must be positive, got {}",
            c.sigma
        )));
    }
    f.validate()?;

    let mut precision = START_PRECISION;
    let mut passes = 0;
    loop {
        passes += 1;
        let pass = sum_pass(f, c, m, opts, precision);
        let required = pass.required_bits(opts.tol);
        let done = pass.status == SeriesStatus::Diverged
            || precision >= required
            || precision >= MAX_PRECISION
            || passes >= MAX_PASSES;
        if done {
            return finish(pass, precision);
        }
        precision = (required + 32).min(MAX_PRECISION);
    }
}

fn finish(pass: Pass, precision: usize) -> Result<SeriesSum> {
    let value = pass.sum.to_c64();
    if pass.status != SeriesStatus::Diverged && !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow(format!(
            "series sum of magnitude 2^{:.1} is not representable",
            pass.sum.log2_abs()
        )));
    }
    Ok(SeriesSum {
        value,
        status: pass.status,
        terms: pass.terms,
        precision_bits: precision,
    })
}

struct Pass {
    sum: BigComplex,
    status: SeriesStatus,
    terms: usize,
    max_log2: f64,
}

impl Pass {
    fn required_bits(&self, tol: f64) -> usize {
        if self.max_log2 == f64::NEG_INFINITY {
            return 0;
        }
        let s = self.sum.log2_abs();
        let lost = if s == f64::NEG_INFINITY {
            f64::INFINITY
        } else {
            (self.max_log2 - s).max(0.0)
        };
        let needed = -tol.log2() + GUARD_BITS + ((self.terms + 1) as f64).log2();
        let total = lost + needed;
        if total.is_finite() {
            total.ceil() as usize
        } else {
            MAX_PRECISION
        }
    }
}

/// Ratio bookkeeping for the tail bound.
///
/// Symmetric basic polynomials split into even and odd chains, each obeying
/// a two-step recurrence, so ratios are taken between terms `stride` apart:
/// 1 for right and left, 2 for symmetric. Zero terms are recorded so the
/// stride stays aligned with the term index.
struct RatioTracker {
    stride: usize,
    /// `log2 |term|` of the last `stride + 1` terms, oldest first.
    recent: Vec<f64>,
    last_ratio: Option<f64>,
    count: usize,
    limit: Option<f64>,
    /// Limit of the ratio when it is known in closed form.
    known_limit: Option<f64>,
}

impl RatioTracker {
    fn new(stride: usize, known_limit: Option<f64>) -> Self {
        RatioTracker {
            stride,
            recent: Vec::new(),
            last_ratio: None,
            count: 0,
            limit: None,
            known_limit,
        }
    }

    fn push(&mut self, log2_term: f64) {
        self.recent.push(log2_term);
        if self.recent.len() > self.stride + 1 {
            self.recent.remove(0);
        }
        if self.recent.len() <= self.stride {
            return;
        }
        let prev = self.recent[0];
        if !(prev.is_finite() && log2_term.is_finite()) {
            return;
        }
        let ratio = (log2_term - prev).exp2();
        self.count += 1;
        if let Some(before) = self.last_ratio {
            let t = self.count as f64;
            self.limit = Some(t * ratio - (t - 1.0) * before);
        }
        self.last_ratio = Some(ratio);
    }

    /// Ratio used for the tail bound: the largest of the current ratio, its
    /// extrapolated limit and the known limit.
    fn bound(&self) -> Option<f64> {
        let r = match (self.last_ratio, self.limit) {
            (Some(r), Some(l)) => r.max(l),
            _ => return None,
        };
        Some(self.known_limit.map_or(r, |k| r.max(k)))
    }

    fn at_least_one(&self) -> bool {
        self.limit.or(self.last_ratio).is_some_and(|r| r >= 1.0)
    }

    /// `log2` of the summed magnitudes of the last `stride` terms.
    fn head_log2(&self) -> f64 {
        let skip = self.recent.len().saturating_sub(self.stride);
        let total: f64 = self.recent[skip..].iter().map(|l| l.exp2()).sum();
        total.log2()
    }
}

fn tail_small(tracker: &RatioTracker, sum: &BigComplex, tol: f64) -> bool {
    let Some(r) = tracker.bound() else {
        return false;
    };
    if !(r < 1.0) {
        return false;
    }
    let s = sum.log2_abs();
    if s == f64::NEG_INFINITY {
        return false;
    }
    let tail = tracker.head_log2() + (r.max(f64::MIN_POSITIVE) / (1.0 - r)).log2();
    tail <= tol.log2() + s
}

fn sum_pass(
    f: &TaylorSeries,
    c: &Correspondence,
    m: i64,
    opts: &SeriesOptions,
    precision: usize,
) -> Pass {
    let kind = c.kind;
    let len = f.len();
    let cutoff = vanishing_from(kind, m).map(|v| v as usize);
    let infinite = len.is_none();
    let adaptive = f.truncation == Truncation::Adaptive;
    let abs_m = m.unsigned_abs() as usize;

    let sigma = float_from_f64(c.sigma, precision);
    let sigma2 = &sigma * &sigma;
    let one = float_from_f64(1.0, precision);

    // x⁽ⁿ⁾(m) for the current n and, in the symmetric case, n - 1.
    let mut x_prev = one.clone();
    let mut x_cur = one.clone();

    let exp_k = match &f.coeffs {
        Coefficients::Exponential(k) => Some(BigComplex::from_c64(*k, precision)),
        Coefficients::List(_) => None,
    };
    let mut exp_coeff = BigComplex {
        re: one.clone(),
        im: Float::ZERO,
    };

    let mut sum = BigComplex::zero();
    let mut max_log2 = f64::NEG_INFINITY;
    let mut first_log2: Option<f64> = None;
    let mut last_sum_log2 = f64::NEG_INFINITY;
    let mut sum_run = 0usize;
    let mut term_run = 0usize;
    let mut last_term_log2 = f64::NEG_INFINITY;
    let stride = if kind == CorrespondenceKind::Symmetric {
        2
    } else {
        1
    };
    // exponential terms k x⁽ⁿ⁾/n! approach the ratio |kσ| per step
    let known_limit = match &f.coeffs {
        Coefficients::Exponential(k) => Some((k.norm() * c.sigma).powi(stride as i32)),
        Coefficients::List(_) => None,
    };
    let mut tracker = RatioTracker::new(stride, known_limit);

    let mut n = 0usize;
    let status = loop {
        if cutoff.is_some_and(|v| n >= v) || len.is_some_and(|l| n >= l) {
            break SeriesStatus::ExactCutoff;
        }
        if let Truncation::Fixed(limit) = f.truncation {
            if n >= limit {
                break if tail_small(&tracker, &sum, opts.tol) {
                    SeriesStatus::Converged
                } else {
                    SeriesStatus::Diverged
                };
            }
        }
        if n >= opts.max_terms {
            break SeriesStatus::Diverged;
        }

        if n > 0 {
            let next = match kind {
                CorrespondenceKind::Right => {
                    &x_cur * &sigma * float_from_i128(m as i128 - (n as i128 - 1), precision)
                }
                CorrespondenceKind::Left => {
                    &x_cur * &sigma * float_from_i128(m as i128 + (n as i128 - 1), precision)
                }
                CorrespondenceKind::Symmetric if n == 1 => {
                    &sigma * float_from_i128(m as i128, precision)
                }
                CorrespondenceKind::Symmetric => {
                    let j = n as i128 - 2;
                    &x_prev * &sigma2 * float_from_i128(m as i128 * m as i128 - j * j, precision)
                }
            };
            x_prev = std::mem::replace(&mut x_cur, next);
        }

        let coeff = match (&f.coeffs, &exp_k) {
            (Coefficients::List(v), _) => BigComplex::from_c64(v[n], precision),
            (Coefficients::Exponential(_), Some(k)) => {
                if n > 0 {
                    exp_coeff = exp_coeff
                        .mul(k)
                        .div_real(&float_from_i128(n as i128, precision));
                }
                exp_coeff.clone()
            }
            (Coefficients::Exponential(_), None) => unreachable!(),
        };
        let term = coeff.scale(&x_cur);
        n += 1;
        if term.is_zero() {
            if stride > 1 {
                tracker.push(f64::NEG_INFINITY);
            }
            continue;
        }

        let term_log2 = term.log2_abs();
        sum.add_assign(&term);
        max_log2 = max_log2.max(term_log2);
        first_log2.get_or_insert(term_log2);
        tracker.push(term_log2);

        let sum_log2 = sum.log2_abs();
        sum_run = if sum_log2 > last_sum_log2 {
            sum_run + 1
        } else {
            0
        };
        term_run = if term_log2 >= last_term_log2 - 1e-12 {
            term_run + 1
        } else {
            0
        };
        last_sum_log2 = sum_log2;
        last_term_log2 = term_log2;

        if !(adaptive && infinite) || n <= abs_m {
            continue;
        }
        if tail_small(&tracker, &sum, opts.tol) {
            break SeriesStatus::Converged;
        }
        let blown_up = first_log2.is_some_and(|f0| sum_log2 - f0 > opts.blowup_factor.log2());
        if tracker.at_least_one()
            && ((sum_run >= opts.blowup_run && blown_up) || term_run >= opts.blowup_run)
        {
            break SeriesStatus::Diverged;
        }
    };

    Pass {
        sum,
        status,
        terms: n,
        max_log2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn polynomial_is_summed_exactly() {
        // 1 + 2x + 3x²  →  1 + 2·mσ + 3·mσ(m-1)σ
        let f = TaylorSeries::from_real(&[1.0, 2.0, 3.0]);
        let c = Correspondence::right(0.5);
        let s = umbral_transform(&f, &c, 7, 1e-14).unwrap();
        assert_eq!(s.status, SeriesStatus::ExactCutoff);
        let expected = 1.0 + 2.0 * 3.5 + 3.0 * 3.5 * 3.0;
        assert!((s.value.re - expected).abs() < 1e-13);
    }

    #[test]
    fn right_exponential_terminates_for_nonnegative_m() {
        let c = Correspondence::right(0.1);
        let s = umbral_transform(
            &TaylorSeries::exponential(Complex64::new(2.0, 0.0)),
            &c,
            5,
            1e-13,
        )
        .unwrap();
        assert_eq!(s.status, SeriesStatus::ExactCutoff);
        assert_eq!(s.terms, 6);
        assert!(close(s.value, Complex64::new(1.2f64.powi(5), 0.0), 1e-14));
    }

    #[test]
    fn right_exponential_converges_for_negative_m() {
        let c = Correspondence::right(0.1);
        let k = Complex64::new(-3.0, 0.0);
        let s = umbral_transform(&TaylorSeries::exponential(k), &c, -4, 1e-13).unwrap();
        assert_eq!(s.status, SeriesStatus::Converged);
        assert!(close(s.value, Complex64::new(0.7f64.powi(-4), 0.0), 1e-12));
    }

    #[test]
    fn symmetric_exponential_with_cancellation() {
        let sigma = 0.25;
        let c = Correspondence::symmetric(sigma);
        let k = Complex64::new(-3.0, 0.0);
        let s = umbral_transform(&TaylorSeries::exponential(k), &c, 40, 1e-12).unwrap();
        assert_eq!(s.status, SeriesStatus::Converged);
        let ks: f64 = -3.0 * sigma;
        let expected = (ks + (ks * ks + 1.0).sqrt()).powi(40);
        assert!(
            close(s.value, Complex64::new(expected, 0.0), 1e-11),
            "{:?} vs {expected}",
            s.value
        );
        assert!(s.precision_bits > START_PRECISION);
    }

    #[test]
    fn divergence_is_flagged() {
        let c = Correspondence::right(1.0);
        let s = umbral_transform(
            &TaylorSeries::exponential(Complex64::new(2.0, 0.0)),
            &c,
            -1,
            1e-12,
        )
        .unwrap();
        assert_eq!(s.status, SeriesStatus::Diverged);
        let s = umbral_transform(
            &TaylorSeries::exponential(Complex64::new(1.0, 0.0)),
            &c,
            -1,
            1e-12,
        )
        .unwrap();
        assert_eq!(s.status, SeriesStatus::Diverged);
    }

    #[test]
    fn fixed_truncation() {
        let c = Correspondence::left(0.5);
        let f = TaylorSeries::exponential(Complex64::new(0.2, 0.0))
            .with_truncation(Truncation::Fixed(3));
        let s = umbral_transform(&f, &c, 2, 1e-12).unwrap();
        // 1 + 0.2·1 + 0.02·(1·1.5)
        assert!((s.value.re - 1.23).abs() < 1e-15);
        assert_eq!(s.terms, 3);
        assert_ne!(s.status, SeriesStatus::ExactCutoff);
    }

    #[test]
    fn zero_momentum_is_one() {
        let c = Correspondence::symmetric(0.3);
        let s = umbral_transform(
            &TaylorSeries::exponential(Complex64::new(0.0, 0.0)),
            &c,
            -9,
            1e-12,
        )
        .unwrap();
        assert_eq!(s.status, SeriesStatus::ExactCutoff);
        assert_eq!(s.value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        let c = Correspondence::right(0.1);
        let f = TaylorSeries::from_real(&[f64::NAN]);
        assert!(matches!(
            umbral_transform(&f, &c, 0, 1e-12),
            Err(Error::Domain(_))
        ));
        let f = TaylorSeries::from_real(&[1.0]);
        assert!(matches!(
            umbral_transform(&f, &c, 0, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tolerance_is_met_when_ratios_rise_to_their_limit() {
        // symmetric terms split into two chains whose ratios climb towards (kσ)²
        for (kind, ks) in [
            (CorrespondenceKind::Symmetric, 0.2),
            (CorrespondenceKind::Symmetric, 0.9),
            (CorrespondenceKind::Right, -0.9),
            (CorrespondenceKind::Left, 0.9),
        ] {
            let c = Correspondence::new(kind, 0.2);
            let f = TaylorSeries::exponential(Complex64::new(ks / 0.2, 0.0));
            for m in -20i64..=20 {
                let want = match kind {
                    CorrespondenceKind::Right => (1.0f64 + ks).powi(m as i32),
                    CorrespondenceKind::Left => (1.0f64 - ks).powi(-(m as i32)),
                    CorrespondenceKind::Symmetric => {
                        (ks + (ks * ks + 1.0f64).sqrt()).powi(m as i32)
                    }
                };
                let s = umbral_transform(&f, &c, m, 1e-10).unwrap();
                let err = (s.value.re - want).abs() / want;
                assert!(err <= 1e-10, "{kind} kσ={ks} m={m}: {err:e}");
            }
        }
    }
}
