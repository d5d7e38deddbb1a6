//! Exact operator calculus on rational polynomials.
//!
//! Operators act on [`Polynomial`]s with the lattice spacing substituted as
//! an exact rational, so identities such as `[Δ, ξ] = 1` can be checked with
//! no rounding at all.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::correspondence::{CorrespondenceKind, ExactCorrespondence};
use crate::error::{Error, Result};
use crate::polynomial::{powers_of, Polynomial};

/// `Δ = (1/(Nσ)) Σₙ aₙ Tⁿ`, a finite Laurent polynomial in the shift `T_σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaOperator {
    terms: BTreeMap<i64, BigRational>,
    normalizer: u64,
    sigma: BigRational,
}

impl DeltaOperator {
    /// Builds an operator from shift exponents and coefficients.
    ///
    /// Only structural requirements are enforced here (`N ≥ 1`, `σ > 0`);
    /// the two sum conditions are reported by [`check_delta_conditions`] and
    /// enforced by [`apply_delta`].
    pub fn new(
        terms: impl IntoIterator<Item = (i64, BigRational)>,
        normalizer: u64,
        sigma: BigRational,
    ) -> Result<Self> {
        if normalizer == 0 {
            return Err(Error::InvalidDelta("normalizer N must be positive".into()));
        }
        if !sigma.is_positive() {
            return Err(Error::InvalidDelta(
                "lattice spacing must be positive".into(),
            ));
        }
        let mut map = BTreeMap::new();
        for (n, a) in terms {
            *map.entry(n).or_insert_with(BigRational::zero) += a;
        }
        map.retain(|_, a| !a.is_zero());
        Ok(DeltaOperator {
            terms: map,
            normalizer,
            sigma,
        })
    }

    /// `(T − 1)/σ`
    pub fn right(sigma: BigRational) -> Self {
        Self::for_kind(CorrespondenceKind::Right, sigma)
    }

    /// `(1 − T⁻¹)/σ`
    pub fn left(sigma: BigRational) -> Self {
        Self::for_kind(CorrespondenceKind::Left, sigma)
    }

    /// `(T − T⁻¹)/(2σ)`
    pub fn symmetric(sigma: BigRational) -> Self {
        Self::for_kind(CorrespondenceKind::Symmetric, sigma)
    }

    pub(crate) fn for_kind(kind: CorrespondenceKind, sigma: BigRational) -> Self {
        let int = |v: i64| BigRational::from_integer(v.into());
        let (terms, normalizer) = match kind {
            CorrespondenceKind::Right => (vec![(1, int(1)), (0, int(-1))], 1),
            CorrespondenceKind::Left => (vec![(0, int(1)), (-1, int(-1))], 1),
            CorrespondenceKind::Symmetric => (vec![(1, int(1)), (-1, int(-1))], 2),
        };
        Self::new(terms, normalizer, sigma).expect("named delta operators are well formed")
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigRational> {
        &self.terms
    }

    pub fn normalizer(&self) -> u64 {
        self.normalizer
    }

    pub fn sigma(&self) -> &BigRational {
        &self.sigma
    }

    fn apply_unchecked(&self, p: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (n, a) in &self.terms {
            let shifted = p.shift(&(&self.sigma * BigRational::from_integer((*n).into())));
            acc = &acc + &shifted.scale(a);
        }
        let norm = BigRational::from_integer(self.normalizer.into()) * &self.sigma;
        acc.scale(&norm.recip())
    }
}

/// Outcome of [`check_delta_conditions`].
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaReport {
    /// `Σ aₙ`, must vanish.
    pub coefficient_sum: BigRational,
    /// `Σ n·aₙ`, must equal the normalizer.
    pub weighted_sum: BigRational,
    pub normalizer: u64,
}

impl DeltaReport {
    pub fn sums_to_zero(&self) -> bool {
        self.coefficient_sum.is_zero()
    }

    pub fn weighted_sum_matches(&self) -> bool {
        self.weighted_sum == BigRational::from_integer(self.normalizer.into())
    }

    pub fn passed(&self) -> bool {
        self.sums_to_zero() && self.weighted_sum_matches()
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.sums_to_zero() {
            out.push(format!(
                "sum of coefficients is {} (expected 0)",
                self.coefficient_sum
            ));
        }
        if !self.weighted_sum_matches() {
            out.push(format!(
                "weighted sum is {} (expected N = {})",
                self.weighted_sum, self.normalizer
            ));
        }
        out
    }
}

pub fn check_delta_conditions(d: &DeltaOperator) -> DeltaReport {
    let coefficient_sum = d.terms.values().fold(BigRational::zero(), |acc, a| acc + a);
    let weighted_sum = d.terms.iter().fold(BigRational::zero(), |acc, (n, a)| {
        acc + a * BigRational::from_integer((*n).into())
    });
    DeltaReport {
        coefficient_sum,
        weighted_sum,
        normalizer: d.normalizer,
    }
}

/// `p(x + s)`.
pub fn apply_shift(p: &Polynomial, s: &BigRational) -> Polynomial {
    p.shift(s)
}

/// `(1/(Nσ)) Σₙ aₙ p(x + nσ)`.
pub fn apply_delta(d: &DeltaOperator, p: &Polynomial) -> Result<Polynomial> {
    let report = check_delta_conditions(d);
    if !report.passed() {
        return Err(Error::InvalidDelta(report.failures().join("; ")));
    }
    Ok(d.apply_unchecked(p))
}

/// `β = (Δ′)⁻¹` for the named correspondences.
///
/// Right and left are plain shifts by `∓σ`. The symmetric `β` inverts the
/// averaging operator `A = (T + T⁻¹)/2`, which is the identity plus terms that
/// lower the degree by two, so `Aq = p` is solved by back-substitution from
/// the leading coefficient down.
pub fn apply_beta(c: &ExactCorrespondence, p: &Polynomial) -> Polynomial {
    match c.kind {
        CorrespondenceKind::Right => p.shift(&-&c.sigma),
        CorrespondenceKind::Left => p.shift(&c.sigma),
        CorrespondenceKind::Symmetric => invert_average(p, &c.sigma),
    }
}

fn invert_average(p: &Polynomial, sigma: &BigRational) -> Polynomial {
    let len = p.coeffs().len();
    if len == 0 {
        return Polynomial::zero();
    }
    // A xʲ = Σ_{i ≡ j (mod 2)} C(j, i) σ^(j−i) xⁱ, so
    // q_i = p_i − Σ_{j > i, j ≡ i} C(j, i) σ^(j−i) q_j.
    let powers = powers_of(sigma, len);
    let mut q = vec![BigRational::zero(); len];
    for i in (0..len).rev() {
        let mut qi = p.coeff(i);
        for j in (i + 2..len).step_by(2) {
            if q[j].is_zero() {
                continue;
            }
            let c = BigRational::from_integer(binomial(BigInt::from(j), BigInt::from(i)));
            qi -= c * &powers[j - i] * &q[j];
        }
        q[i] = qi;
    }
    Polynomial::new(q)
}

/// `ξ = Xβ`.
pub fn apply_xi(c: &ExactCorrespondence, p: &Polynomial) -> Polynomial {
    apply_beta(c, p).mul_x()
}

/// Operators that can be applied to polynomials and differentiated in the
/// Pincherle sense.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorKind {
    Shift(BigRational),
    Coordinate,
    Delta(DeltaOperator),
    Beta(ExactCorrespondence),
    Xi(ExactCorrespondence),
}

impl OperatorKind {
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(match self {
            OperatorKind::Shift(s) => p.shift(s),
            OperatorKind::Coordinate => p.mul_x(),
            OperatorKind::Delta(d) => apply_delta(d, p)?,
            OperatorKind::Beta(c) => apply_beta(c, p),
            OperatorKind::Xi(c) => apply_xi(c, p),
        })
    }
}

/// `O′ p = (OX − XO) p`.
pub fn pincherle_derivative(op: &OperatorKind, p: &Polynomial) -> Result<Polynomial> {
    let ox = op.apply(&p.mul_x())?;
    let xo = op.apply(p)?.mul_x();
    Ok(&ox - &xo)
}

/// Largest coefficient of `[Δ, ξ]xⁿ − xⁿ` over `n = 0..=degree_max`.
///
/// The arithmetic is exact, so any nonzero result is a genuine violation of
/// the Heisenberg relation.
pub fn commutator_residual(c: &ExactCorrespondence, degree_max: usize) -> BigRational {
    let delta = c.delta();
    let mut worst = BigRational::zero();
    for n in 0..=degree_max {
        let p = Polynomial::monomial(n);
        let delta_xi = delta.apply_unchecked(&apply_xi(c, &p));
        let xi_delta = apply_xi(c, &delta.apply_unchecked(&p));
        let residual = &(&delta_xi - &xi_delta) - &p;
        let dev = residual.max_abs_coeff();
        if dev > worst {
            worst = dev;
        }
    }
    worst
}

impl OperatorKind {
    /// Whether the operator commutes with `T_s` on every monomial up to
    /// `degree_max`.
    pub fn commutes_with_shift(&self, s: &BigRational, degree_max: usize) -> Result<bool> {
        for n in 0..=degree_max {
            let p = Polynomial::monomial(n);
            let lhs = self.apply(&p.shift(s))?;
            let rhs = self.apply(&p)?.shift(s);
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl From<DeltaOperator> for OperatorKind {
    fn from(d: DeltaOperator) -> Self {
        OperatorKind::Delta(d)
    }
}
