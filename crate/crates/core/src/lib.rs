//! Umbral calculus on a one-dimensional lattice.
//!
//! The crate is organised bottom-up:
//!
//! * [`polynomial`] and [`operator`] implement the exact operator calculus on
//!   rational polynomials: shifts, delta operators, Pincherle derivatives and
//!   the `β`/`ξ` operators of the three named correspondences.
//! * [`correspondence`] holds the right, left and symmetric basic polynomial
//!   sequences `x⁽ⁿ⁾`, both as exact polynomials and as closed-form lattice
//!   values.
//! * [`series`] carries Taylor series onto the lattice (`xⁿ → x⁽ⁿ⁾`) with an
//!   adaptive-precision summation engine.
//! * [`special`] builds discrete exponentials, trigonometric and hyperbolic
//!   functions on top of that.
//! * [`schrodinger`] solves the time-separated discrete Schrödinger problems:
//!   plane waves under a constant potential and the infinite well.
//! * [`verify`] bundles the invariant checks exposed by the `check` command.

// `!(x < y)` is used on purpose so that NaN falls on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correspondence;
pub mod error;
pub mod operator;
pub mod polynomial;
pub mod schrodinger;
pub mod series;
pub mod special;
pub mod verify;

mod bigfloat;

pub use correspondence::{
    basic_polynomial, basic_polynomial_log, basic_polynomial_value, basic_polynomial_value_exact,
    basic_polynomials, zeros_of_basic_polynomial, Correspondence, CorrespondenceKind,
    ExactCorrespondence, LatticePoint, LogValue, LOG_SPACE_THRESHOLD,
};
pub use error::{Error, Result};
pub use operator::{
    apply_beta, apply_delta, apply_shift, apply_xi, check_delta_conditions, commutator_residual,
    pincherle_derivative, DeltaOperator, DeltaReport, OperatorKind,
};
pub use polynomial::{rational, Polynomial};
pub use schrodinger::{
    apply_hamiltonian, energy_bounds, infinite_well_spectrum, infinite_well_wavefunction, separate,
    well_state_count, EnergyBounds, PhysicalUnits, PlaneWaveState, StateCount, TimeEvolution,
    WaveFunctionTable, WellLevel, WellSpectrum,
};
pub use series::{
    umbral_transform, Coefficients, SeriesOptions, SeriesStatus, SeriesSum, TaylorSeries,
    Truncation,
};
pub use special::{
    addition_law_check, amplitude_growth, momentum_to_wavelength, umbral_exp, umbral_exp_series,
    umbral_trig, umbral_trig_closed_form, wavelength_to_momentum, AdditionLawReport,
    DiscreteFunction, TrigKind, WaveSpec,
};

/// Version of this crate, echoed in tool output.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use num_complex::Complex64;
pub use num_rational::BigRational;
