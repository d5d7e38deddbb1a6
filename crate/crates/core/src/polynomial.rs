//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Shorthand for the rational `num / den`.
///
/// Panics if `den` is zero.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A polynomial in `x`; `coeffs[i]` multiplies `xⁱ`.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and has degree `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The coordinate `x`.
    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        Polynomial { coeffs }
    }

    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Builds a polynomial from integer coefficients, lowest degree first.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `xⁱ`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Multiplication by `x`.
    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(x + s)`, expanded with binomial coefficients.
    pub fn shift(&self, s: &BigRational) -> Self {
        let n = self.coeffs.len();
        if n == 0 || s.is_zero() {
            return self.clone();
        }
        // out[j] = Σ_{i ≥ j} c_i · C(i, j) · s^(i-j)
        let powers = powers_of(s, n);
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut binom = BigInt::one();
            for j in (0..=i).rev() {
                // binom = C(i, j); C(i, j - 1) = C(i, j) · j / (i - j + 1)
                out[j] += c * BigRational::from_integer(binom.clone()) * &powers[i - j];
                binom = binom * BigInt::from(j) / BigInt::from(i - j + 1);
            }
        }
        Self::new(out)
    }

    /// Largest absolute value among the coefficients (zero for the zero
    /// polynomial).
    pub fn max_abs_coeff(&self) -> BigRational {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

pub(crate) fn powers_of(s: &BigRational, count: usize) -> Vec<BigRational> {
    let mut powers = Vec::with_capacity(count);
    let mut acc = BigRational::one();
    for _ in 0..count {
        powers.push(acc.clone());
        acc *= s;
    }
    powers
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else if i == 0 {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                } else {
                    write!(f, "({}/{})", mag.numer(), mag.denom())?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_has_degree_minus_one() {
        assert_eq!(Polynomial::zero().degree(), -1);
        assert_eq!(Polynomial::from_integers(&[0, 0, 0]).degree(), -1);
        assert_eq!(Polynomial::one().degree(), 0);
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Polynomial::from_integers(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs().len(), 2);
    }

    #[test]
    fn shift_by_half_cubes() {
        // (x + 1/2)^3 = x^3 + 3/2 x^2 + 3/4 x + 1/8
        let p = Polynomial::monomial(3).shift(&rational(1, 2));
        let expected = Polynomial::new(vec![
            rational(1, 8),
            rational(3, 4),
            rational(3, 2),
            rational(1, 1),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn product_and_eval_agree() {
        let a = Polynomial::from_integers(&[1, 1]);
        let b = Polynomial::from_integers(&[-1, 1]);
        let p = &a * &b;
        assert_eq!(p, Polynomial::from_integers(&[-1, 0, 1]));
        assert_eq!(p.eval(&rational(3, 1)), rational(8, 1));
        assert_eq!(p.eval_f64(3.0), 8.0);
    }

    #[test]
    fn display() {
        let p = Polynomial::new(vec![
            rational(1, 8),
            rational(0, 1),
            rational(-3, 2),
            rational(1, 1),
        ]);
        assert_eq!(p.to_string(), "x^3 - (3/2)x^2 + 1/8");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_integers(&[0, -1]).to_string(), "-x");
    }
}
