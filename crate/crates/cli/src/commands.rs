//! The subcommands. Each builds its tables from the core crate and leaves
//! encoding to the caller.

use std::f64::consts::PI;

use serde_json::{json, Map, Value};
use umbral_core::schrodinger::{
    level_momentum, well_max_energy_log10, ELECTRON_MASS_KG, HBAR_J_S, PLANCK_LENGTH_M,
    PLANCK_TIME_S, PROTON_MASS_KG,
};
use umbral_core::{
    amplitude_growth, basic_polynomial_value, energy_bounds, infinite_well_spectrum,
    infinite_well_wavefunction, momentum_to_wavelength, umbral_exp, umbral_exp_series, umbral_trig,
    verify, wavelength_to_momentum, Complex64, Correspondence, CorrespondenceKind,
    Error as CoreError, PhysicalUnits, SeriesStatus, TrigKind,
};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::table::{Cell, Table};

/// What a command produced.
#[derive(Clone, Debug)]
pub struct Output {
    pub command: &'static str,
    pub params: Map<String, Value>,
    pub tables: Vec<Table>,
    pub warnings: Vec<String>,
    /// Set when the command ran but its verdict is negative (`check`).
    pub failed: bool,
}

impl Output {
    fn new(command: &'static str) -> Self {
        Output {
            command,
            params: Map::new(),
            tables: Vec::new(),
            warnings: Vec::new(),
            failed: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SeriesMode {
    /// Series columns when |kσ| < 1, otherwise closed forms only.
    Auto,
    /// Always emit series columns; refuse when |kσ| ≥ 1.
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Particle {
    Electron,
    Proton,
    Custom,
}

fn lattice(cfg: &RunConfig) -> (Vec<i64>, Vec<Cell>, Vec<Cell>) {
    let ms: Vec<i64> = (cfg.window.0..=cfg.window.1).collect();
    let m_col = ms.iter().map(|&m| Cell::Int(m)).collect();
    let x_col = ms
        .iter()
        .map(|&m| Cell::Float(m as f64 * cfg.sigma))
        .collect();
    (ms, m_col, x_col)
}

fn check_window_len(cfg: &RunConfig) -> Result<(), CliError> {
    const MAX_ROWS: i64 = 10_000_000;
    if cfg.window.1.saturating_sub(cfg.window.0) >= MAX_ROWS {
        return Err(CliError::validation(format!(
            "window spans more than {MAX_ROWS} points"
        )));
    }
    Ok(())
}

fn push_complex(t: &mut Table, header: &str, values: &[Complex64], complex: bool) {
    if complex {
        t.push_column(
            format!("{header}_re"),
            values.iter().map(|z| Cell::Float(z.re)).collect(),
        );
        t.push_column(
            format!("{header}_im"),
            values.iter().map(|z| Cell::Float(z.im)).collect(),
        );
    } else {
        t.push_column(header, values.iter().map(|z| Cell::Float(z.re)).collect());
    }
}

/// Basic polynomials `x⁽ⁿ⁾(mσ)` beside the monomials `xⁿ`.
pub fn polys(cfg: &RunConfig, ns: &[u64]) -> Result<Output, CliError> {
    check_window_len(cfg)?;
    if ns.is_empty() {
        return Err(CliError::validation("at least one degree n is required"));
    }
    let mut out = Output::new("polys");
    out.params.insert("n".into(), json!(ns));
    let (ms, m_col, x_col) = lattice(cfg);
    let mut t = Table::new("polys");
    t.push_column("m", m_col);
    t.push_column("x", x_col);
    for &n in ns {
        let exp = i32::try_from(n)
            .map_err(|_| CliError::validation(format!("degree {n} is too large")))?;
        t.push_column(
            format!("continuous_n{n}"),
            ms.iter()
                .map(|&m| Cell::Float((m as f64 * cfg.sigma).powi(exp)))
                .collect(),
        );
    }
    for kind in cfg.corr.kinds() {
        let c = Correspondence::new(kind, cfg.sigma);
        for &n in ns {
            let values = ms
                .iter()
                .map(|&m| basic_polynomial_value(&c, n, m).map(Cell::Float))
                .collect::<Result<Vec<_>, _>>()?;
            t.push_column(format!("{kind}_n{n}"), values);
        }
    }
    out.tables.push(t);
    Ok(out)
}

/// Discrete exponentials `E(k, mσ)`: closed form, series and status.
pub fn exp(cfg: &RunConfig, k: f64, k_im: f64, mode: SeriesMode) -> Result<Output, CliError> {
    check_window_len(cfg)?;
    let kc = Complex64::new(k, k_im);
    if !(k.is_finite() && k_im.is_finite()) {
        return Err(CliError::validation("k must be finite"));
    }
    let complex = k_im != 0.0;
    let ks = kc.norm() * cfg.sigma;
    let mut out = Output::new("exp");
    out.params.insert("k".into(), json!(k));
    out.params.insert("k_im".into(), json!(k_im));
    let with_series = match mode {
        SeriesMode::Off => false,
        SeriesMode::Auto if ks >= 1.0 => {
            out.warnings.push(format!(
                "series columns omitted: |kσ| = {ks} lies outside the convergence disk"
            ));
            false
        }
        SeriesMode::Auto => true,
        SeriesMode::On if ks >= 1.0 => return Err(CliError::validation(format!(
            "series requested but |kσ| = {ks} ≥ 1, where the discrete exponential series diverges"
        ))),
        SeriesMode::On => true,
    };
    out.params.insert("series".into(), json!(with_series));

    let (ms, m_col, x_col) = lattice(cfg);
    let mut t = Table::new("exp");
    t.push_column("m", m_col);
    t.push_column("x", x_col);
    let continuous: Vec<Complex64> = ms
        .iter()
        .map(|&m| (kc * (m as f64 * cfg.sigma)).exp())
        .collect();
    push_complex(&mut t, "continuous", &continuous, complex);
    for kind in cfg.corr.kinds() {
        let c = Correspondence::new(kind, cfg.sigma);
        let closed = ms
            .iter()
            .map(|&m| umbral_exp(&c, kc, m))
            .collect::<Result<Vec<_>, _>>()?;
        push_complex(&mut t, &format!("{kind}_closed"), &closed, complex);
        let status: Vec<SeriesStatus> = if with_series {
            let sums = ms
                .iter()
                .map(|&m| umbral_exp_series(&c, kc, m, cfg.tol))
                .collect::<Result<Vec<_>, _>>()?;
            let values: Vec<Complex64> = sums.iter().map(|s| s.value).collect();
            push_complex(&mut t, &format!("{kind}_series"), &values, complex);
            sums.iter().map(|s| s.status).collect()
        } else {
            ms.iter()
                .map(|&m| umbral_core::special::expected_exp_status(&c, kc, m))
                .collect()
        };
        t.push_column(
            format!("{kind}_status"),
            status.iter().map(|s| Cell::from(s.name())).collect(),
        );
    }
    out.tables.push(t);
    Ok(out)
}

fn continuous_trig(which: TrigKind, arg: f64) -> f64 {
    match which {
        TrigKind::Sin => arg.sin(),
        TrigKind::Cos => arg.cos(),
        TrigKind::Sinh => arg.sinh(),
        TrigKind::Cosh => arg.cosh(),
    }
}

/// Discrete trigonometric or hyperbolic samples, given either the momentum
/// `k` or the number of points per wavelength `l`.
pub fn trig(
    cfg: &RunConfig,
    k: Option<f64>,
    l: Option<f64>,
    which: TrigKind,
) -> Result<Output, CliError> {
    check_window_len(cfg)?;
    let circular = matches!(which, TrigKind::Sin | TrigKind::Cos);
    let mut out = Output::new("trig");
    out.params.insert("func".into(), json!(which.name()));
    let kinds = cfg.corr.kinds();
    // momentum per correspondence, plus the continuous phase per point
    let (momenta, phase): (Vec<f64>, Box<dyn Fn(i64) -> f64>) = match (k, l) {
        (Some(k), None) => {
            if !k.is_finite() {
                return Err(CliError::validation("k must be finite"));
            }
            out.params.insert("k".into(), json!(k));
            let sigma = cfg.sigma;
            (
                vec![k; kinds.len()],
                Box::new(move |m| k * m as f64 * sigma),
            )
        }
        (None, Some(l)) => {
            if !circular {
                return Err(CliError::validation(format!(
                    "{which} has no wavelength; give --k instead of --l"
                )));
            }
            out.params.insert("l".into(), json!(l));
            let ks = kinds
                .iter()
                .map(|&kind| {
                    wavelength_to_momentum(&Correspondence::new(kind, cfg.sigma), l).map(|w| w.k)
                })
                .collect::<Result<Vec<_>, _>>()?;
            (ks, Box::new(move |m| 2.0 * PI * m as f64 / l))
        }
        _ => {
            return Err(CliError::validation(
                "exactly one of --k and --l is required",
            ))
        }
    };

    let (ms, m_col, x_col) = lattice(cfg);
    let mut t = Table::new("samples");
    t.push_column("m", m_col);
    t.push_column("x", x_col);
    t.push_column(
        "continuous",
        ms.iter()
            .map(|&m| Cell::Float(continuous_trig(which, phase(m))))
            .collect(),
    );
    for (&kind, &kk) in kinds.iter().zip(&momenta) {
        let c = Correspondence::new(kind, cfg.sigma);
        let values = ms
            .iter()
            .map(|&m| umbral_trig(&c, kk, m, which).map(Cell::Float))
            .collect::<Result<Vec<_>, _>>()?;
        t.push_column(kind.name(), values);
    }
    out.tables.push(t);

    if circular {
        let mut waves = Table::new("waves");
        waves.headers = ["corr", "k", "l", "lambda", "minimal", "amplitude_growth"]
            .map(String::from)
            .to_vec();
        for (&kind, &kk) in kinds.iter().zip(&momenta) {
            let c = Correspondence::new(kind, cfg.sigma);
            let spec = match l {
                Some(l) => wavelength_to_momentum(&c, l)?,
                None => match momentum_to_wavelength(&c, kk) {
                    Ok(lambda) => wavelength_to_momentum(&c, lambda / cfg.sigma)?,
                    Err(_) => {
                        out.warnings.push(format!(
                            "{kind}: no wavelength for kσ = {}, wave row omitted",
                            kk * cfg.sigma
                        ));
                        continue;
                    }
                },
            };
            let growth = match kind {
                CorrespondenceKind::Symmetric => Cell::Null,
                _ => Cell::Float(amplitude_growth(spec.l, 1)?),
            };
            waves.push_row(vec![
                kind.name().into(),
                Cell::Float(kk),
                Cell::Float(spec.l),
                Cell::Float(spec.lambda),
                Cell::Bool(spec.minimal),
                growth,
            ]);
        }
        out.tables.push(waves);
    }
    Ok(out)
}

/// Infinite-well spectrum and wavefunctions on `m = 0 … M`.
pub fn well(cfg: &RunConfig, m_points: u64, levels: Option<&[u64]>) -> Result<Output, CliError> {
    if m_points < 2 {
        return Err(CliError::validation(format!(
            "well needs M ≥ 2, got {m_points}"
        )));
    }
    if m_points > 10_000_000 {
        return Err(CliError::validation(format!(
            "well of M = {m_points} points is too large"
        )));
    }
    let kinds = cfg.corr.kinds();
    let mut out = Output::new("well");
    out.params.insert("points".into(), json!(m_points));

    let mut spectrum = Table::new("spectrum");
    spectrum.headers = [
        "corr",
        "n",
        "k",
        "energy",
        "continuum_energy",
        "physical",
        "convergent",
        "partner",
    ]
    .map(String::from)
    .to_vec();
    for &kind in &kinds {
        let s = infinite_well_spectrum(&Correspondence::new(kind, cfg.sigma), m_points)?;
        for lv in &s.levels {
            spectrum.push_row(vec![
                kind.name().into(),
                Cell::from(lv.n),
                Cell::Float(lv.k),
                Cell::Float(lv.energy),
                Cell::Float(s.continuum_energy(lv.n)),
                Cell::Bool(lv.physical),
                Cell::Bool(lv.convergent),
                Cell::from(m_points - lv.n),
            ]);
        }
    }

    // requested levels must exist for every selected correspondence;
    // default levels skip what a correspondence cannot represent
    let explicit = levels.is_some();
    let levels: Vec<u64> = match levels {
        Some(ls) => {
            if ls.is_empty() {
                return Err(CliError::validation("at least one level is required"));
            }
            ls.to_vec()
        }
        None => (1..=3).filter(|&n| n < m_points).collect(),
    };
    out.params.insert("levels".into(), json!(levels));

    let mut wf = Table::new("wavefunctions");
    let ms: Vec<i64> = (0..=m_points as i64).collect();
    wf.push_column("m", ms.iter().map(|&m| Cell::Int(m)).collect());
    wf.push_column(
        "x",
        ms.iter()
            .map(|&m| Cell::Float(m as f64 * cfg.sigma))
            .collect(),
    );
    for &n in &levels {
        if n == 0 || n >= m_points {
            return Err(CliError::validation(format!(
                "level must satisfy 1 ≤ n < M = {m_points}, got {n}"
            )));
        }
        wf.push_column(
            format!("continuous_n{n}"),
            ms.iter()
                .map(|&m| Cell::Float((PI * (n as f64) * m as f64 / m_points as f64).sin()))
                .collect(),
        );
    }
    for &kind in &kinds {
        let c = Correspondence::new(kind, cfg.sigma);
        for &n in &levels {
            match level_momentum(&c, n, m_points) {
                Err(CoreError::NonPhysicalState { .. }) if !explicit => {
                    out.warnings.push(format!(
                        "{kind}: level {n} is non-physical in a well of M = {m_points}, skipped"
                    ));
                    continue;
                }
                Err(e) => return Err(e.into()),
                Ok(_) => {}
            }
            let table = infinite_well_wavefunction(&c, m_points, n)?;
            wf.push_column(
                format!("{kind}_n{n}"),
                table.samples.iter().map(|&v| Cell::Float(v)).collect(),
            );
        }
    }
    out.tables.push(spectrum);
    out.tables.push(wf);
    Ok(out)
}

/// Largest energies representable in time and in space for a particle.
pub fn bounds(
    cfg: &RunConfig,
    particle: Particle,
    mass: Option<f64>,
    points: Option<f64>,
) -> Result<Output, CliError> {
    let mass_kg = match (particle, mass) {
        (Particle::Custom, Some(m)) => m,
        (Particle::Custom, None) => {
            return Err(CliError::validation("--particle custom needs --mass KG"))
        }
        (_, Some(_)) => {
            return Err(CliError::validation(
                "--mass only applies to --particle custom",
            ))
        }
        (Particle::Electron, None) => ELECTRON_MASS_KG,
        (Particle::Proton, None) => PROTON_MASS_KG,
    };
    let sigma_m = if cfg.sigma_explicit {
        cfg.sigma
    } else {
        PLANCK_LENGTH_M
    };
    let tau_s = if cfg.tau_explicit {
        cfg.tau
    } else {
        PLANCK_TIME_S
    };
    let units = PhysicalUnits::new(HBAR_J_S, mass_kg, sigma_m, tau_s)?;
    let b = energy_bounds(&units);
    let name = match particle {
        Particle::Electron => "electron",
        Particle::Proton => "proton",
        Particle::Custom => "custom",
    };
    let mut out = Output::new("bounds");
    out.params.insert("particle".into(), json!(name));
    let mut t = Table::new("bounds");
    t.headers = [
        "particle",
        "mass_kg",
        "sigma_m",
        "tau_s",
        "temporal_ev",
        "spatial_ev",
        "binding_ev",
    ]
    .map(String::from)
    .to_vec();
    let mut row = vec![
        name.into(),
        Cell::Float(mass_kg),
        Cell::Float(sigma_m),
        Cell::Float(tau_s),
        Cell::Float(b.temporal_ev),
        Cell::Float(b.spatial_ev),
        Cell::Float(b.binding()),
    ];
    if let Some(m) = points {
        out.params.insert("points".into(), json!(m));
        t.headers.push("well_points".into());
        t.headers.push("well_max_log10_ev".into());
        row.push(Cell::Float(m));
        row.push(Cell::Float(well_max_energy_log10(&units, m)?));
    }
    t.push_row(row);
    out.tables.push(t);
    Ok(out)
}

/// The invariant suite.
pub fn check(cfg: &RunConfig) -> Result<Output, CliError> {
    let mut out = Output::new("check");
    let mut t = Table::new("checks");
    t.headers = ["check", "passed", "detail"].map(String::from).to_vec();
    for c in verify::run_all(cfg.tol) {
        out.failed |= !c.passed;
        t.push_row(vec![c.name.into(), Cell::Bool(c.passed), c.detail.into()]);
    }
    out.tables.push(t);
    Ok(out)
}
