//! Time-separated discrete Schrödinger problems.
//!
//! Spectra use natural units `ħ = 1`, `2m = 1`, so `E = k²`. Physical units
//! enter only through [`energy_bounds`] and [`well_max_energy_log10`].

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use num_complex::Complex64;

use crate::correspondence::{Correspondence, CorrespondenceKind};
use crate::error::{Error, Result};
use crate::series::SeriesStatus;
use crate::special::{umbral_exp, umbral_trig_closed_form, DiscreteFunction, TrigKind};

/// Reduced Planck constant, J·s.
pub const HBAR_J_S: f64 = 1.054_571_817e-34;
/// Elementary charge, C (joules per electronvolt).
pub const ELEMENTARY_CHARGE_C: f64 = 1.602_176_634e-19;
pub const ELECTRON_MASS_KG: f64 = 9.109_383_701_5e-31;
pub const PROTON_MASS_KG: f64 = 1.672_621_923_69e-27;
/// Planck length, m, to three figures.
pub const PLANCK_LENGTH_M: f64 = 1.62e-35;
/// Planck time, s, to three figures.
pub const PLANCK_TIME_S: f64 = 5.39e-44;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalUnits {
    pub hbar_j_s: f64,
    pub mass_kg: f64,
    pub sigma_m: f64,
    pub tau_s: f64,
}

impl PhysicalUnits {
    pub fn new(hbar_j_s: f64, mass_kg: f64, sigma_m: f64, tau_s: f64) -> Result<Self> {
        let u = PhysicalUnits {
            hbar_j_s,
            mass_kg,
            sigma_m,
            tau_s,
        };
        for (name, v) in [
            ("hbar", hbar_j_s),
            ("mass", mass_kg),
            ("sigma", sigma_m),
            ("tau", tau_s),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(u)
    }

    /// Planck-scale lattice for a particle of the given mass.
    pub fn planck(mass_kg: f64) -> Result<Self> {
        Self::new(HBAR_J_S, mass_kg, PLANCK_LENGTH_M, PLANCK_TIME_S)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyBounds {
    /// `ħ/τ` in eV.
    pub temporal_ev: f64,
    /// `ħ²/(2mσ²)` in eV.
    pub spatial_ev: f64,
}

impl EnergyBounds {
    /// The smaller of the two bounds.
    pub fn binding(&self) -> f64 {
        self.temporal_ev.min(self.spatial_ev)
    }
}

/// Largest energies representable by convergent discrete waves in time and
/// in space.
pub fn energy_bounds(u: &PhysicalUnits) -> EnergyBounds {
    EnergyBounds {
        temporal_ev: u.hbar_j_s / u.tau_s / ELEMENTARY_CHARGE_C,
        spatial_ev: u.hbar_j_s * u.hbar_j_s
            / (2.0 * u.mass_kg * u.sigma_m * u.sigma_m)
            / ELEMENTARY_CHARGE_C,
    }
}

/// `log10` of the largest right/left well energy `ħ²/(2mσ²)·tan²(π(M-1)/(2M))`
/// in eV, usable for astronomically large `M`.
pub fn well_max_energy_log10(u: &PhysicalUnits, m_points: f64) -> Result<f64> {
    if !(m_points >= 2.0 && m_points.is_finite()) {
        return Err(Error::domain(format!("well needs M ≥ 2, got {m_points}")));
    }
    // tan(π/2 - π/(2M)) = 1/tan(π/(2M))
    let log_tan = -(PI / (2.0 * m_points)).tan().log10();
    Ok(energy_bounds(u).spatial_ev.log10() + 2.0 * log_tan)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimeEvolution {
    /// `φ(ñτ)` for `ñ = 0 … n_steps`.
    pub function: DiscreteFunction,
    pub modulus: Vec<f64>,
}

/// Time factor `φ(ñτ) = C·E(iE, ñτ)` of a separated solution; the
/// correspondence spacing plays the role of `τ`.
pub fn separate(
    time: &Correspondence,
    energy: f64,
    n_steps: u64,
    amplitude: Complex64,
) -> Result<TimeEvolution> {
    if !((energy * time.sigma).abs() < 1.0) {
        return Err(Error::domain(format!(
            "time evolution needs |Eτ| < 1, got {}",
            energy * time.sigma
        )));
    }
    let last = i64::try_from(n_steps).map_err(|_| Error::domain("too many time steps"))?;
    let k = Complex64::new(0.0, energy);
    let mut samples = Vec::with_capacity(n_steps as usize + 1);
    for step in 0..=last {
        samples.push(amplitude * umbral_exp(time, k, step)?);
    }
    let modulus = samples.iter().map(|z| z.norm()).collect();
    let status = (0..=last)
        .map(|step| crate::special::expected_exp_status(time, k, step))
        .collect();
    Ok(TimeEvolution {
        function: DiscreteFunction::new(time.sigma, 0, samples, status),
        modulus,
    })
}

/// `(-Δ² + V₀)ψ` on the part of the window where the stencil fits.
///
/// Right: `(ψ(m+2) - 2ψ(m+1) + ψ(m))/σ²`, left: `(ψ(m) - 2ψ(m-1) + ψ(m-2))/σ²`,
/// symmetric: `(ψ(m+2) - 2ψ(m) + ψ(m-2))/(4σ²)`.
pub fn apply_hamiltonian(
    c: &Correspondence,
    v0: f64,
    psi: &DiscreteFunction,
) -> Result<DiscreteFunction> {
    let (lo, hi) = match c.kind {
        CorrespondenceKind::Right => (0usize, 2usize),
        CorrespondenceKind::Left => (2, 0),
        CorrespondenceKind::Symmetric => (2, 2),
    };
    let needed = lo + hi + 1;
    if psi.len() < needed {
        return Err(Error::WindowTooSmall {
            len: psi.len(),
            needed,
        });
    }
    let s = &psi.samples;
    let sigma2 = c.sigma * c.sigma;
    let mut samples = Vec::with_capacity(s.len() + 1 - needed);
    let mut status = Vec::with_capacity(samples.capacity());
    for i in lo..s.len() - hi {
        let second = match c.kind {
            CorrespondenceKind::Right => (s[i + 2] - s[i + 1] * 2.0 + s[i]) / sigma2,
            CorrespondenceKind::Left => (s[i] - s[i - 1] * 2.0 + s[i - 2]) / sigma2,
            CorrespondenceKind::Symmetric => (s[i + 2] - s[i] * 2.0 + s[i - 2]) / (4.0 * sigma2),
        };
        samples.push(-second + s[i] * v0);
        let worst = psi.status[i - lo..=i + hi]
            .iter()
            .fold(SeriesStatus::ExactCutoff, |a, &b| a.worst(b));
        status.push(worst);
    }
    Ok(DiscreteFunction::new(
        c.sigma,
        psi.start + lo as i64,
        samples,
        status,
    ))
}

/// `ψ = A·E(ik) + B·E(-ik)` above the potential, `A·E(κ) + B·E(-κ)` below it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWaveState {
    pub a: Complex64,
    pub b: Complex64,
    /// Momentum `k`, or decay constant `κ` when not oscillatory.
    pub k: f64,
    pub oscillatory: bool,
    pub correspondence: Correspondence,
}

impl PlaneWaveState {
    /// State of energy `energy` in the constant potential `v0`.
    pub fn new(
        c: &Correspondence,
        a: Complex64,
        b: Complex64,
        energy: f64,
        v0: f64,
    ) -> Result<Self> {
        if a == Complex64::new(0.0, 0.0) && b == Complex64::new(0.0, 0.0) {
            return Err(Error::domain("plane wave needs a nonzero amplitude"));
        }
        let k = (energy - v0).abs().sqrt();
        if !k.is_finite() {
            return Err(Error::domain("energy and potential must be finite"));
        }
        Ok(PlaneWaveState {
            a,
            b,
            k,
            oscillatory: energy >= v0,
            correspondence: *c,
        })
    }

    /// Energy eigenvalue in the potential `v0`.
    pub fn energy(&self, v0: f64) -> f64 {
        if self.oscillatory {
            v0 + self.k * self.k
        } else {
            v0 - self.k * self.k
        }
    }

    pub fn samples(&self, window: RangeInclusive<i64>) -> Result<DiscreteFunction> {
        let c = &self.correspondence;
        let q = if self.oscillatory {
            Complex64::new(0.0, self.k)
        } else {
            Complex64::new(self.k, 0.0)
        };
        let start = *window.start();
        let mut samples = Vec::new();
        let mut status = Vec::new();
        for m in window {
            samples.push(self.a * umbral_exp(c, q, m)? + self.b * umbral_exp(c, -q, m)?);
            status.push(
                crate::special::expected_exp_status(c, q, m)
                    .worst(crate::special::expected_exp_status(c, -q, m)),
            );
        }
        Ok(DiscreteFunction::new(c.sigma, start, samples, status))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WellLevel {
    pub n: u64,
    pub k: f64,
    /// `k²`; infinite for the non-physical state.
    pub energy: f64,
    pub physical: bool,
    pub convergent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WellSpectrum {
    pub kind: CorrespondenceKind,
    /// Number of lattice intervals across the well, `L = Mσ`.
    pub m_points: u64,
    pub sigma: f64,
    pub levels: Vec<WellLevel>,
    /// `(n, M - n)` pairs sharing one energy.
    pub degeneracy_pairs: Vec<(u64, u64)>,
}

impl WellSpectrum {
    pub fn width(&self) -> f64 {
        self.m_points as f64 * self.sigma
    }

    /// Continuous-well energy `(nπ/L)²` for comparison.
    pub fn continuum_energy(&self, n: u64) -> f64 {
        let k = n as f64 * PI / self.width();
        k * k
    }
}

fn check_points(m_points: u64) -> Result<()> {
    if m_points < 2 {
        return Err(Error::domain(format!("well needs M ≥ 2, got {m_points}")));
    }
    Ok(())
}

/// Quantized momentum `kₙ`: `tan(πn/M)/σ` (right, left) or `sin(πn/M)/σ`
/// (symmetric). Indices are folded into `0 … M/2` so that `n` and `M - n`
/// share one energy exactly.
pub fn level_momentum(c: &Correspondence, n: u64, m_points: u64) -> Result<f64> {
    check_points(m_points)?;
    let r = n % m_points;
    let (folded, sign) = if 2 * r > m_points {
        (m_points - r, -1.0)
    } else {
        (r, 1.0)
    };
    let pole = 2 * folded == m_points;
    let ks = match c.kind {
        CorrespondenceKind::Symmetric if pole => 1.0,
        CorrespondenceKind::Symmetric => {
            // sin(π(M - j)/M) = sin(πj/M): no sign change
            return Ok((PI * folded as f64 / m_points as f64).sin() / c.sigma);
        }
        _ if pole => {
            return Err(Error::NonPhysicalState {
                n,
                points: m_points,
            })
        }
        _ if 4 * folded == m_points => 1.0,
        _ => (PI * folded as f64 / m_points as f64).tan(),
    };
    Ok(sign * ks / c.sigma)
}

fn is_convergent(kind: CorrespondenceKind, n: u64, m_points: u64) -> bool {
    let r = n % m_points;
    let folded = r.min(m_points - r);
    match kind {
        CorrespondenceKind::Symmetric => true,
        _ => 4 * folded < m_points,
    }
}

/// Levels `n = 1 … ⌊M/2⌋` of the infinite well of width `Mσ`.
pub fn infinite_well_spectrum(c: &Correspondence, m_points: u64) -> Result<WellSpectrum> {
    check_points(m_points)?;
    let mut levels = Vec::new();
    for n in 1..=m_points / 2 {
        let level = match level_momentum(c, n, m_points) {
            Ok(k) => WellLevel {
                n,
                k,
                energy: k * k,
                physical: true,
                convergent: is_convergent(c.kind, n, m_points),
            },
            Err(Error::NonPhysicalState { .. }) => WellLevel {
                n,
                k: f64::INFINITY,
                energy: f64::INFINITY,
                physical: false,
                convergent: false,
            },
            Err(e) => return Err(e),
        };
        levels.push(level);
    }
    let degeneracy_pairs = (1..=m_points / 2)
        .filter(|&n| 2 * n != m_points)
        .map(|n| (n, m_points - n))
        .collect();
    Ok(WellSpectrum {
        kind: c.kind,
        m_points,
        sigma: c.sigma,
        levels,
        degeneracy_pairs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateCount {
    pub total: u64,
    pub physical: u64,
    pub convergent: u64,
}

pub fn well_state_count(kind: CorrespondenceKind, m_points: u64) -> Result<StateCount> {
    check_points(m_points)?;
    let total = m_points / 2;
    let physical = match kind {
        CorrespondenceKind::Symmetric => total,
        _ => total - u64::from(m_points.is_multiple_of(2)),
    };
    let convergent = (1..=total)
        .filter(|&n| is_convergent(kind, n, m_points))
        .count() as u64;
    Ok(StateCount {
        total,
        physical,
        convergent,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WaveFunctionTable {
    pub kind: CorrespondenceKind,
    pub n: u64,
    pub m_points: u64,
    pub sigma: f64,
    pub k: f64,
    pub energy: f64,
    /// `ψ(mσ)` for `m = 0 … M`.
    pub samples: Vec<f64>,
    /// `|ψ(0)|` and `|ψ(Mσ)|`.
    pub boundary_residuals: (f64, f64),
    /// Index of the largest `|ψ|`.
    pub peak_index: u64,
    /// `Σ m|ψ|² / Σ |ψ|²`.
    pub centroid: f64,
    pub convergent: bool,
}

impl WaveFunctionTable {
    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// Whether both boundary values are below `tol · max|ψ|`.
    pub fn boundary_ok(&self, tol: f64) -> bool {
        let bound = tol * self.max_abs();
        self.boundary_residuals.0 <= bound && self.boundary_residuals.1 <= bound
    }

    pub fn to_function(&self) -> DiscreteFunction {
        let status = if self.convergent {
            SeriesStatus::Converged
        } else {
            SeriesStatus::Diverged
        };
        let mut statuses = vec![status; self.samples.len()];
        statuses[0] = SeriesStatus::ExactCutoff;
        DiscreteFunction::new(
            self.sigma,
            0,
            self.samples
                .iter()
                .map(|&v| Complex64::new(v, 0.0))
                .collect(),
            statuses,
        )
    }
}

/// `ψₙ(mσ) = sin_c(kₙ, mσ)` for `m = 0 … M`.
pub fn infinite_well_wavefunction(
    c: &Correspondence,
    m_points: u64,
    n: u64,
) -> Result<WaveFunctionTable> {
    check_points(m_points)?;
    if n == 0 || n >= m_points {
        return Err(Error::domain(format!(
            "level must satisfy 1 ≤ n < M = {m_points}, got {n}"
        )));
    }
    let k = level_momentum(c, n, m_points)?;
    let last = i64::try_from(m_points).map_err(|_| Error::domain("well too wide"))?;
    let samples = (0..=last)
        .map(|m| umbral_trig_closed_form(c, k, m, TrigKind::Sin))
        .collect::<Result<Vec<_>>>()?;
    let (peak_index, _) = samples.iter().enumerate().fold((0, -1.0), |best, (i, v)| {
        if v.abs() > best.1 {
            (i, v.abs())
        } else {
            best
        }
    });
    let weight: f64 = samples.iter().map(|v| v * v).sum();
    let centroid = samples
        .iter()
        .enumerate()
        .map(|(i, v)| i as f64 * v * v)
        .sum::<f64>()
        / weight;
    Ok(WaveFunctionTable {
        kind: c.kind,
        n,
        m_points,
        sigma: c.sigma,
        k,
        energy: k * k,
        boundary_residuals: (samples[0].abs(), samples[m_points as usize].abs()),
        samples,
        peak_index: peak_index as u64,
        centroid,
        convergent: is_convergent(c.kind, n, m_points),
    })
}
