//! The right, left and symmetric umbral correspondences.
//!
//! Each correspondence pairs a delta operator with its basic polynomial
//! sequence `x⁽ⁿ⁾ = ξⁿ·1`:
//!
//! | kind      | Δ                  | x⁽ⁿ⁾                               |
//! |-----------|--------------------|------------------------------------|
//! | right     | `(T − 1)/σ`        | `x(x−σ)…(x−(n−1)σ)`                |
//! | left      | `(1 − T⁻¹)/σ`      | `x(x+σ)…(x+(n−1)σ)`                |
//! | symmetric | `(T − T⁻¹)/(2σ)`   | `x·Π_{i=0}^{n−2}(x + (2i−n+2)σ)`   |
//!
//! On the lattice `x = mσ` the sequences reduce to factorial and
//! double-factorial ratios. Those closed forms are evaluated here as
//! iterative products, exactly (rational σ), in `f64`, or in log space.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::operator::{apply_xi, DeltaOperator};
use crate::polynomial::Polynomial;

/// Above this degree or lattice index, tabulation switches to
/// [`basic_polynomial_log`].
pub const LOG_SPACE_THRESHOLD: u64 = 150;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CorrespondenceKind {
    Right,
    Left,
    Symmetric,
}

impl CorrespondenceKind {
    pub const ALL: [CorrespondenceKind; 3] = [
        CorrespondenceKind::Right,
        CorrespondenceKind::Left,
        CorrespondenceKind::Symmetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorrespondenceKind::Right => "right",
            CorrespondenceKind::Left => "left",
            CorrespondenceKind::Symmetric => "symmetric",
        }
    }
}

impl fmt::Display for CorrespondenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorrespondenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "right" | "+" => Ok(CorrespondenceKind::Right),
            "left" | "-" => Ok(CorrespondenceKind::Left),
            "symmetric" | "s" => Ok(CorrespondenceKind::Symmetric),
            other => Err(Error::domain(format!("unknown correspondence `{other}`"))),
        }
    }
}

/// A correspondence on the lattice `{mσ}`.
///
/// `S` is the type of the spacing: `f64` for tabulation, [`BigRational`] for
/// the exact operator calculus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correspondence<S = f64> {
    pub kind: CorrespondenceKind,
    pub sigma: S,
}

pub type ExactCorrespondence = Correspondence<BigRational>;

impl<S> Correspondence<S> {
    pub fn new(kind: CorrespondenceKind, sigma: S) -> Self {
        Correspondence { kind, sigma }
    }

    pub fn right(sigma: S) -> Self {
        Self::new(CorrespondenceKind::Right, sigma)
    }

    pub fn left(sigma: S) -> Self {
        Self::new(CorrespondenceKind::Left, sigma)
    }

    pub fn symmetric(sigma: S) -> Self {
        Self::new(CorrespondenceKind::Symmetric, sigma)
    }
}

impl Correspondence<f64> {
    pub fn point(&self, m: i64) -> LatticePoint {
        LatticePoint::new(m, self.sigma)
    }
}

impl ExactCorrespondence {
    pub fn delta(&self) -> DeltaOperator {
        DeltaOperator::for_kind(self.kind, self.sigma.clone())
    }

    pub fn basic_polynomial(&self, n: usize) -> Polynomial {
        basic_polynomial(self, n)
    }

    pub fn to_f64(&self) -> Correspondence<f64> {
        use num_traits::ToPrimitive;
        Correspondence::new(self.kind, self.sigma.to_f64().unwrap_or(f64::NAN))
    }
}

/// A site `x = mσ` of the lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticePoint {
    pub m: i64,
    pub x: f64,
}

impl LatticePoint {
    pub fn new(m: i64, sigma: f64) -> Self {
        LatticePoint {
            m,
            x: m as f64 * sigma,
        }
    }
}

/// `x⁽ⁿ⁾` as an exact polynomial, built as `ξⁿ·1`.
pub fn basic_polynomial(c: &ExactCorrespondence, n: usize) -> Polynomial {
    let mut p = Polynomial::one();
    for _ in 0..n {
        p = apply_xi(c, &p);
    }
    p
}

/// `x⁽⁰⁾, …, x⁽ⁿ_max⁾`, sharing the repeated `ξ` applications.
pub fn basic_polynomials(c: &ExactCorrespondence, n_max: usize) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut p = Polynomial::one();
    out.push(p.clone());
    for _ in 0..n_max {
        p = apply_xi(c, &p);
        out.push(p.clone());
    }
    out
}

/// Arithmetic run `start, start + step, …` of `count` positive integers.
#[derive(Clone, Copy, Debug)]
struct FactorRun {
    start: u64,
    count: u64,
    step: u64,
}

impl FactorRun {
    fn iter(self) -> impl Iterator<Item = u64> {
        (0..self.count).map(move |i| self.start + i * self.step)
    }
}

/// Closed-form value of `x⁽ⁿ⁾(mσ)`: either zero, or `±Π (f·σ)` over exactly
/// `n` positive integer factors `f`.
#[derive(Clone, Debug)]
enum ClosedForm {
    Zero,
    Product {
        negative: bool,
        runs: Vec<FactorRun>,
    },
}

impl ClosedForm {
    fn factors(&self) -> impl Iterator<Item = u64> + '_ {
        let runs: &[FactorRun] = match self {
            ClosedForm::Zero => &[],
            ClosedForm::Product { runs, .. } => runs,
        };
        runs.iter().flat_map(|r| r.iter())
    }
}

fn closed_form(kind: CorrespondenceKind, n: u64, m: i64) -> ClosedForm {
    use CorrespondenceKind::*;
    if n == 0 {
        return ClosedForm::Product {
            negative: false,
            runs: Vec::new(),
        };
    }
    let odd_n = n % 2 == 1;
    let run = |start, count, step| FactorRun { start, count, step };
    match kind {
        Right => {
            if m < 0 {
                // (−σ)ⁿ (−m+n−1)! / (−m−1)!
                let a = m.unsigned_abs();
                ClosedForm::Product {
                    negative: odd_n,
                    runs: vec![run(a, n, 1)],
                }
            } else if (m as u64) < n {
                ClosedForm::Zero
            } else {
                // σⁿ m! / (m−n)!
                let a = m as u64;
                ClosedForm::Product {
                    negative: false,
                    runs: vec![run(a - n + 1, n, 1)],
                }
            }
        }
        Left => {
            if m > 0 {
                // σⁿ (m+n−1)! / (m−1)!
                ClosedForm::Product {
                    negative: false,
                    runs: vec![run(m as u64, n, 1)],
                }
            } else if m.unsigned_abs() < n {
                ClosedForm::Zero
            } else {
                // (−σ)ⁿ (−m)! / (−m−n)!
                let a = m.unsigned_abs();
                ClosedForm::Product {
                    negative: odd_n,
                    runs: vec![run(a - n + 1, n, 1)],
                }
            }
        }
        Symmetric => {
            let a = m.unsigned_abs();
            let sign_flip = m < 0 && odd_n;
            if a == 0 {
                ClosedForm::Zero
            } else if n <= a {
                // (sign(m)σ)ⁿ |m| (|m|+n−2)!! / (|m|−n)!!
                ClosedForm::Product {
                    negative: sign_flip,
                    runs: vec![run(a, 1, 1), run(a + 2 - n, n - 1, 2)],
                }
            } else if (n - a).is_multiple_of(2) {
                ClosedForm::Zero
            } else {
                // (−1)^((n−|m|−1)/2) (sign(m)σ)ⁿ |m| (|m|+n−2)!! (n−|m|−2)!!
                // with both double factorials running over odd numbers.
                let alternating = ((n - a - 1) / 2) % 2 == 1;
                ClosedForm::Product {
                    negative: alternating ^ sign_flip,
                    runs: vec![
                        run(a, 1, 1),
                        run(1, (a + n - 1) / 2, 2),
                        run(1, (n - a - 1) / 2, 2),
                    ],
                }
            }
        }
    }
}

/// `x⁽ⁿ⁾(mσ)` from the closed form, as a left-to-right `f64` product.
///
/// Fails with [`Error::Overflow`] when a nonzero value leaves the `f64`
/// range; [`basic_polynomial_log`] covers those points.
pub fn basic_polynomial_value(c: &Correspondence<f64>, n: u64, m: i64) -> Result<f64> {
    match closed_form(c.kind, n, m) {
        ClosedForm::Zero => Ok(0.0),
        form @ ClosedForm::Product { negative, .. } => {
            let mut acc = 1.0_f64;
            for f in form.factors() {
                acc *= f as f64 * c.sigma;
                if !acc.is_finite() || acc == 0.0 {
                    return Err(Error::Overflow(format!(
                        "x^({n}) at m = {m}, sigma = {} is outside the f64 range",
                        c.sigma
                    )));
                }
            }
            Ok(if negative { -acc } else { acc })
        }
    }
}

/// `x⁽ⁿ⁾(mσ)` computed exactly.
pub fn basic_polynomial_value_exact(c: &ExactCorrespondence, n: u64, m: i64) -> BigRational {
    match closed_form(c.kind, n, m) {
        ClosedForm::Zero => BigRational::zero(),
        form @ ClosedForm::Product { negative, .. } => {
            let product: BigInt = form.factors().map(BigInt::from).product();
            let mut value = BigRational::from_integer(product);
            for _ in 0..n {
                value *= &c.sigma;
            }
            if negative {
                -value
            } else {
                value
            }
        }
    }
}

/// A real number stored as sign and natural log of its magnitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogValue {
    /// `-1`, `0` or `1`.
    pub sign: i8,
    /// `ln |value|`; `-inf` when the value is zero.
    pub ln_abs: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        sign: 0,
        ln_abs: f64::NEG_INFINITY,
    };

    /// Back to `f64`, saturating to `±inf` or `0`.
    pub fn to_f64(self) -> f64 {
        f64::from(self.sign) * self.ln_abs.exp()
    }

    pub fn log10_abs(self) -> f64 {
        self.ln_abs / std::f64::consts::LN_10
    }
}

/// `x⁽ⁿ⁾(mσ)` in log space, usable far beyond the `f64` range.
pub fn basic_polynomial_log(c: &Correspondence<f64>, n: u64, m: i64) -> LogValue {
    match closed_form(c.kind, n, m) {
        ClosedForm::Zero => LogValue::ZERO,
        form @ ClosedForm::Product { negative, .. } => {
            let ln_sigma = c.sigma.ln();
            let ln_abs = form.factors().map(|f| (f as f64).ln() + ln_sigma).sum();
            LogValue {
                sign: if negative { -1 } else { 1 },
                ln_abs,
            }
        }
    }
}

/// Lattice indices where `x⁽ⁿ⁾` vanishes, ascending.
///
/// Right: `0, 1, …, n−1`. Left: `−(n−1), …, 0`. Symmetric: the origin plus
/// every `m` with `|m| < n` and `n − m` even.
pub fn zeros_of_basic_polynomial(kind: CorrespondenceKind, n: u64) -> Vec<i64> {
    let n = n as i64;
    match kind {
        CorrespondenceKind::Right => (0..n).collect(),
        CorrespondenceKind::Left => (1 - n..=0).collect(),
        CorrespondenceKind::Symmetric => {
            (1 - n..n).filter(|&m| m == 0 || (n - m) % 2 == 0).collect()
        }
    }
}

/// Index `N` such that `x⁽ⁿ⁾(mσ) = 0` for every `n ≥ N`, if one exists.
pub(crate) fn vanishing_from(kind: CorrespondenceKind, m: i64) -> Option<u64> {
    match kind {
        CorrespondenceKind::Right if m >= 0 => Some(m as u64 + 1),
        CorrespondenceKind::Left if m <= 0 => Some(m.unsigned_abs() + 1),
        CorrespondenceKind::Symmetric if m == 0 => Some(1),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::rational;

    fn unit(kind: CorrespondenceKind) -> Correspondence<f64> {
        Correspondence::new(kind, 1.0)
    }

    /// Direct product `Π (x − rᵢ)` over the roots of `x⁽ⁿ⁾`, σ = 1.
    fn product_oracle(kind: CorrespondenceKind, n: i64, m: i64) -> i128 {
        if n == 0 {
            return 1;
        }
        let m = m as i128;
        match kind {
            CorrespondenceKind::Right => (0..n as i128).map(|i| m - i).product(),
            CorrespondenceKind::Left => (0..n as i128).map(|i| m + i).product(),
            CorrespondenceKind::Symmetric => {
                m * (0..=(n as i128 - 2))
                    .map(|i| m + 2 * i - (n as i128 - 2))
                    .product::<i128>()
            }
        }
    }

    #[test]
    fn spec_values() {
        use CorrespondenceKind::*;
        assert_eq!(basic_polynomial_value(&unit(Right), 2, 3).unwrap(), 6.0);
        assert_eq!(basic_polynomial_value(&unit(Right), 2, 1).unwrap(), 0.0);
        assert_eq!(basic_polynomial_value(&unit(Symmetric), 3, 1).unwrap(), 0.0);
        assert_eq!(
            basic_polynomial_value(&unit(Symmetric), 4, 1).unwrap(),
            -3.0
        );
    }

    #[test]
    fn closed_form_matches_products_small_grid() {
        for kind in CorrespondenceKind::ALL {
            for n in 0..=12 {
                for m in -12..=12 {
                    let got = basic_polynomial_value(&unit(kind), n as u64, m).unwrap();
                    assert_eq!(got, product_oracle(kind, n, m) as f64, "{kind} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn symmetric_negative_m_keeps_parity() {
        // x_s^(4)(-1) = x_s^(4)(1) = -3 and x_s^(5)(-2) = -x_s^(5)(2) = 30
        let c = unit(CorrespondenceKind::Symmetric);
        assert_eq!(basic_polynomial_value(&c, 4, -1).unwrap(), -3.0);
        assert_eq!(basic_polynomial_value(&c, 5, 2).unwrap(), -30.0);
        assert_eq!(basic_polynomial_value(&c, 5, -2).unwrap(), 30.0);
    }

    #[test]
    fn overflow_is_reported() {
        let c = unit(CorrespondenceKind::Right);
        let err = basic_polynomial_value(&c, 300, 400).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
        let log = basic_polynomial_log(&c, 300, 400);
        assert_eq!(log.sign, 1);
        // ln(400!/100!)
        let oracle: f64 = (101..=400).map(|j| (j as f64).ln()).sum();
        assert!((log.ln_abs - oracle).abs() < 1e-9 * oracle);
    }

    #[test]
    fn log_path_agrees_with_product() {
        let c = Correspondence::symmetric(0.3);
        for n in 0..20 {
            for m in -20..=20 {
                let v = basic_polynomial_value(&c, n, m).unwrap();
                let l = basic_polynomial_log(&c, n, m).to_f64();
                assert!((v - l).abs() <= 1e-12 * v.abs(), "n={n} m={m}: {v} vs {l}");
            }
        }
    }

    #[test]
    fn exact_value_with_third_spacing() {
        let c = Correspondence::right(rational(1, 3));
        // x(x - 1/3) at x = 1: 1 · 2/3
        assert_eq!(basic_polynomial_value_exact(&c, 2, 3), rational(2, 3));
    }

    #[test]
    fn zeros() {
        use CorrespondenceKind::*;
        assert_eq!(zeros_of_basic_polynomial(Right, 3), vec![0, 1, 2]);
        assert_eq!(zeros_of_basic_polynomial(Left, 3), vec![-2, -1, 0]);
        assert_eq!(zeros_of_basic_polynomial(Symmetric, 3), vec![-1, 0, 1]);
        assert_eq!(zeros_of_basic_polynomial(Symmetric, 4), vec![-2, 0, 2]);
        for kind in CorrespondenceKind::ALL {
            for n in 1..10u64 {
                let zeros = zeros_of_basic_polynomial(kind, n);
                for m in -12..=12 {
                    let v = basic_polynomial_value(&unit(kind), n, m).unwrap();
                    assert_eq!(v == 0.0, zeros.contains(&m), "{kind} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn parse_kind() {
        assert_eq!(
            "Symmetric".parse::<CorrespondenceKind>().unwrap(),
            CorrespondenceKind::Symmetric
        );
        assert!("up".parse::<CorrespondenceKind>().is_err());
    }
}
