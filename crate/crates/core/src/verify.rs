//! Self-checks run by `umbralqm check`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;

use crate::correspondence::{
    basic_polynomial_value, basic_polynomial_value_exact, basic_polynomials, Correspondence,
    CorrespondenceKind, ExactCorrespondence,
};
use crate::operator::{apply_delta, commutator_residual};
use crate::polynomial::rational;
use crate::schrodinger::{
    apply_hamiltonian, energy_bounds, infinite_well_spectrum, infinite_well_wavefunction,
    PhysicalUnits, PlaneWaveState, ELECTRON_MASS_KG, PROTON_MASS_KG,
};
use crate::series::SeriesStatus;
use crate::special::{
    amplitude_growth, momentum_to_wavelength, umbral_exp, umbral_exp_series, umbral_trig,
    wavelength_to_momentum, TrigKind,
};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &'static str, failures: Vec<String>, ok_detail: String) -> CheckOutcome {
    if failures.is_empty() {
        CheckOutcome {
            name,
            passed: true,
            detail: ok_detail,
        }
    } else {
        CheckOutcome {
            name,
            passed: false,
            detail: failures.join("; "),
        }
    }
}

fn exact(kind: CorrespondenceKind, num: i64, den: i64) -> ExactCorrespondence {
    Correspondence::new(kind, rational(num, den))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

pub fn heisenberg(degree: usize) -> CheckOutcome {
    let mut failures = Vec::new();
    for kind in CorrespondenceKind::ALL {
        for (num, den) in [(1, 1), (1, 3)] {
            let r = commutator_residual(&exact(kind, num, den), degree);
            if !r.is_zero() {
                failures.push(format!("{kind} σ={num}/{den}: residual {r}"));
            }
        }
    }
    outcome(
        "heisenberg",
        failures,
        format!("[Δ, ξ] = 1 exactly up to degree {degree}"),
    )
}

pub fn lowering(n_max: usize) -> CheckOutcome {
    let mut failures = Vec::new();
    for kind in CorrespondenceKind::ALL {
        let c = exact(kind, 1, 3);
        let polys = basic_polynomials(&c, n_max);
        for n in 1..=n_max {
            let lowered = apply_delta(&c.delta(), &polys[n]);
            let expected = polys[n - 1].scale(&rational(n as i64, 1));
            if lowered.as_ref() != Ok(&expected) {
                failures.push(format!("{kind} n={n}"));
            }
        }
    }
    outcome(
        "lowering",
        failures,
        format!("Δ x⁽ⁿ⁾ = n x⁽ⁿ⁻¹⁾ for n ≤ {n_max}"),
    )
}

pub fn closed_forms() -> CheckOutcome {
    let mut failures = Vec::new();
    for kind in CorrespondenceKind::ALL {
        let c = exact(kind, 2, 7);
        let cf = c.to_f64();
        let polys = basic_polynomials(&c, 20);
        for (n, p) in polys.iter().enumerate() {
            for m in -20i64..=20 {
                let x = rational(2 * m, 7);
                let want = p.eval(&x);
                if basic_polynomial_value_exact(&c, n as u64, m) != want {
                    failures.push(format!("{kind} n={n} m={m} exact"));
                }
                let got = basic_polynomial_value(&cf, n as u64, m).unwrap_or(f64::NAN);
                let w = num_traits::ToPrimitive::to_f64(&want).unwrap_or(f64::NAN);
                if !((got - w).abs() <= 1e-12 * w.abs()) && !(w == 0.0 && got == 0.0) {
                    failures.push(format!("{kind} n={n} m={m} float"));
                }
            }
        }
    }
    outcome(
        "closed_forms",
        failures,
        "closed forms agree with expanded polynomials".into(),
    )
}

pub fn exponentials(tol: f64) -> CheckOutcome {
    let mut failures = Vec::new();
    let sigma = 0.1;
    for kind in CorrespondenceKind::ALL {
        let c = Correspondence::new(kind, sigma);
        for ks in [-0.9, -0.5, -0.2, 0.2, 0.5, 0.9] {
            let k = Complex64::new(ks / sigma, 0.0);
            for m in -20..=20 {
                let closed = umbral_exp(&c, k, m);
                let series = umbral_exp_series(&c, k, m, tol * 1e-2);
                match (closed, series) {
                    (Ok(a), Ok(s))
                        if s.status != SeriesStatus::Diverged && rel(s.value, a) <= tol => {}
                    (a, s) => failures.push(format!("{kind} kσ={ks} m={m}: {a:?} vs {s:?}")),
                }
            }
        }
        let outside = umbral_exp_series(&c, Complex64::new(1.5 / sigma, 0.0), -3, tol);
        let diverges = match kind {
            CorrespondenceKind::Left => {
                umbral_exp_series(&c, Complex64::new(1.5 / sigma, 0.0), 3, tol)
            }
            _ => outside,
        };
        if !matches!(diverges, Ok(s) if s.status == SeriesStatus::Diverged) {
            failures.push(format!("{kind}: series at kσ = 1.5 not flagged divergent"));
        }
    }
    outcome(
        "exponentials",
        failures,
        format!("series match closed forms to {tol:e}"),
    )
}

pub fn waves() -> CheckOutcome {
    let mut failures = Vec::new();
    for kind in CorrespondenceKind::ALL {
        let c = Correspondence::new(kind, 0.3);
        for l in [8.0, 9.5, 12.0, 20.0, 100.0] {
            let w = wavelength_to_momentum(&c, l).and_then(|w| momentum_to_wavelength(&c, w.k));
            match w {
                Ok(lambda) if (lambda / (l * 0.3) - 1.0).abs() <= 1e-10 => {}
                other => failures.push(format!("{kind} l={l}: {other:?}")),
            }
        }
        let min = if kind == CorrespondenceKind::Symmetric {
            4.0
        } else {
            8.0
        };
        if momentum_to_wavelength(&c, 1.0 / 0.3) != Ok(min * 0.3) {
            failures.push(format!("{kind}: minimal wavelength"));
        }
    }
    let s = Correspondence::symmetric(1.0);
    for l in [6.0, 8.0, 12.0] {
        let k = wavelength_to_momentum(&s, l)
            .map(|w| w.k)
            .unwrap_or(f64::NAN);
        for m in -50..=50 {
            let a = umbral_trig(&s, k, m, TrigKind::Sin).unwrap_or(f64::NAN);
            let b = umbral_trig(&s, k, m + l as i64, TrigKind::Sin).unwrap_or(f64::NAN);
            let exact = (2.0 * PI * m as f64 / l).sin();
            if !((a - b).abs() <= 1e-10 && (a - exact).abs() <= 1e-10) {
                failures.push(format!("symmetric sine l={l} m={m}"));
            }
        }
    }
    let r = Correspondence::right(1.0);
    for l in [8.0, 12.0] {
        let k = wavelength_to_momentum(&r, l)
            .map(|w| w.k)
            .unwrap_or(f64::NAN);
        let a1 = amplitude_growth(l, 1).unwrap_or(f64::NAN);
        for m in -20..=20 {
            let a = umbral_trig(&r, k, m, TrigKind::Sin).unwrap_or(f64::NAN);
            let b = umbral_trig(&r, k, m + l as i64, TrigKind::Sin).unwrap_or(f64::NAN);
            if !((b - a1 * a).abs() <= 1e-10 * b.abs().max(1.0)) {
                failures.push(format!("right sine envelope l={l} m={m}"));
            }
        }
    }
    outcome(
        "waves",
        failures,
        "wave relations, periodicity and envelope hold".into(),
    )
}

pub fn plane_waves() -> CheckOutcome {
    let mut failures = Vec::new();
    let sigma = 0.25;
    let v0 = 2.0;
    for kind in CorrespondenceKind::ALL {
        let c = Correspondence::new(kind, sigma);
        for ks in [0.2, 0.5, 0.9] {
            let k = ks / sigma;
            let state = PlaneWaveState::new(
                &c,
                Complex64::new(1.0, 0.5),
                Complex64::new(-0.3, 0.0),
                k * k + v0,
                v0,
            );
            let res = state.and_then(|s| {
                let psi = s.samples(-10..=10)?;
                let h = apply_hamiltonian(&c, v0, &psi)?;
                let e = s.energy(v0);
                let worst = h
                    .iter()
                    .map(|(m, z, _)| (z - psi.get(m).unwrap_or_default() * e).norm())
                    .fold(0.0, f64::max);
                Ok(worst / psi.max_norm())
            });
            match res {
                Ok(r) if r <= 1e-10 => {}
                other => failures.push(format!("{kind} kσ={ks}: {other:?}")),
            }
        }
    }
    outcome(
        "plane_waves",
        failures,
        "Hψ = (k² + V₀)ψ for plane waves".into(),
    )
}

pub fn bounds() -> CheckOutcome {
    let mut failures = Vec::new();
    let checks = [
        (ELECTRON_MASS_KG, true, 1.22e28, 0.01, "temporal"),
        (ELECTRON_MASS_KG, false, 1.46e50, 0.02, "electron"),
        (PROTON_MASS_KG, false, 7.94e46, 0.02, "proton"),
    ];
    for (mass, temporal, want, tol, label) in checks {
        let e = PhysicalUnits::planck(mass).map(|u| energy_bounds(&u));
        let got = e.map(|e| {
            if temporal {
                e.temporal_ev
            } else {
                e.spatial_ev
            }
        });
        match got {
            Ok(v) if (v / want - 1.0).abs() <= tol => {}
            other => failures.push(format!("{label}: {other:?} vs {want:e}")),
        }
    }
    outcome(
        "bounds",
        failures,
        "Planck-scale energy bounds reproduced".into(),
    )
}

pub fn well() -> CheckOutcome {
    let mut failures = Vec::new();
    let sigma = 0.5;
    for kind in CorrespondenceKind::ALL {
        let c = Correspondence::new(kind, sigma);
        for m_points in [8u64, 16, 32] {
            let Ok(spectrum) = infinite_well_spectrum(&c, m_points) else {
                failures.push(format!("{kind} M={m_points}: spectrum"));
                continue;
            };
            if spectrum.levels.len() as u64 != m_points / 2 {
                failures.push(format!("{kind} M={m_points}: level count"));
            }
            for level in spectrum
                .levels
                .iter()
                .filter(|l| l.physical && l.convergent)
            {
                let res = infinite_well_wavefunction(&c, m_points, level.n).and_then(|t| {
                    let psi = t.to_function();
                    let h = apply_hamiltonian(&c, 0.0, &psi)?;
                    let interior = h
                        .iter()
                        .filter(|(m, _, _)| *m > 0 && *m < m_points as i64)
                        .map(|(m, z, _)| (z - psi.get(m).unwrap_or_default() * t.energy).norm())
                        .fold(0.0, f64::max);
                    Ok((interior / t.max_abs(), t.boundary_ok(1e-10)))
                });
                match res {
                    Ok((r, true)) if r <= 1e-9 => {}
                    other => failures.push(format!("{kind} M={m_points} n={}: {other:?}", level.n)),
                }
            }
            if kind == CorrespondenceKind::Symmetric
                && spectrum
                    .levels
                    .iter()
                    .any(|l| l.energy > 1.0 / (sigma * sigma))
            {
                failures.push(format!("symmetric M={m_points}: energy above 1/σ²"));
            }
            if kind != CorrespondenceKind::Symmetric
                && spectrum.levels.last().is_some_and(|l| l.physical)
            {
                failures.push(format!("{kind} M={m_points}: pole state not flagged"));
            }
        }
    }
    outcome(
        "well",
        failures,
        "well eigenstates, boundaries and flags".into(),
    )
}

pub fn run_all(tol: f64) -> Vec<CheckOutcome> {
    vec![
        heisenberg(32),
        lowering(32),
        closed_forms(),
        exponentials(tol),
        waves(),
        plane_waves(),
        bounds(),
        well(),
    ]
}
