//! JSON run configuration. Every block is optional; unknown keys are
//! rejected, and all values are validated before any computation starts.

use bers_core::medium::{build_tables, MediumProfile, MediumTables, Permittivity};
use bers_core::Hyperbolic;
use num_complex::Complex64;
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },

    #[error("{path}: {source}")]
    Parse { path: String, source: serde_json::Error },

    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    AlgebraSelftest,
    FormalPowers,
    MaxwellVerify,
    ForcefreeVerify,
    DiracVerify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::AlgebraSelftest => "algebra-selftest",
            Command::FormalPowers => "formal-powers",
            Command::MaxwellVerify => "maxwell-verify",
            Command::ForcefreeVerify => "forcefree-verify",
            Command::DiracVerify => "dirac-verify",
        }
    }

    /// Coarsest node count per axis when the config leaves it open: `(ξ, t)`
    /// grids start at 33, `(t, x)` grids at 65 (the sextet coordinates of
    /// exact solutions reach their asymptotic order late), three-dimensional
    /// grids at 9.
    fn default_nodes(self) -> usize {
        match self {
            Command::ForcefreeVerify | Command::DiracVerify => 9,
            Command::MaxwellVerify => 65,
            _ => 33,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Optional; must agree with the subcommand when given.
    pub command: Option<String>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub medium: MediumConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub algebra: AlgebraConfig,
    #[serde(default)]
    pub formal_powers: FormalPowerConfig,
    #[serde(default)]
    pub maxwell: MaxwellConfig,
    #[serde(default)]
    pub forcefree: ForceFreeConfig,
    #[serde(default)]
    pub dirac: DiracConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Charge and current densities are out of scope; present only so the
    /// rejection can say so.
    sources: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum EpsConfig {
    Constant {
        value: f64,
    },
    /// `scale · exp(rate · x)`
    Exp {
        #[serde(default = "one")]
        scale: f64,
        rate: f64,
    },
    /// `scale · (x + shift)^power`
    Poly {
        #[serde(default = "one")]
        scale: f64,
        #[serde(default)]
        shift: f64,
        power: f64,
    },
    Table {
        x: Vec<f64>,
        eps: Vec<f64>,
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MediumConfig {
    pub eps: EpsConfig,
    pub mu: f64,
    pub x_range: [f64; 2],
    pub samples: usize,
}

impl Default for MediumConfig {
    /// `ε = e^{-2x}`, `μ = 1` on `[0, 1]`.
    fn default() -> Self {
        MediumConfig {
            eps: EpsConfig::Exp { scale: 1.0, rate: -2.0 },
            mu: 1.0,
            x_range: [0.0, 1.0],
            samples: 2001,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub time: Option<[f64; 2]>,
    /// In `ξ` for `formal-powers`, in `x` for `maxwell-verify`, and the
    /// per-axis range of the cube for the three-dimensional commands.
    pub space: Option<[f64; 2]>,
    /// Coarsest node count per axis; each refinement halves the spacing.
    pub nodes: Option<usize>,
    pub refinements: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AlgebraConfig {
    pub cases: usize,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig { cases: 1000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorChoice {
    /// `f = √C`
    SqrtC,
    /// `f = 1/√C`, the generator of the one-dimensional Maxwell reduction.
    InvSqrtC,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FormalPowerConfig {
    pub n_max: usize,
    /// Hyperbolic coefficients `a = u + vj` as `[u, v]`.
    pub coefficients: Vec<[f64; 2]>,
    pub generator: GeneratorChoice,
}

impl Default for FormalPowerConfig {
    fn default() -> Self {
        FormalPowerConfig {
            n_max: 4,
            coefficients: vec![[1.0, 0.0], [0.0, 1.0]],
            generator: GeneratorChoice::SqrtC,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MaxwellConfig {
    /// `(a1, a2)` of the closed-form `V1 = a1 c + i a2`.
    pub v1: [f64; 2],
    /// Coefficient pairs `[u1, v1, u2, v2]` for `(w1, w2) = (Z(a1), Z(a2))`.
    pub pipeline_pairs: Vec<[f64; 4]>,
    /// Largest formal-power degree pushed through the field reconstruction.
    pub n_max: usize,
    /// Random coefficient tuples for the sextet equivalence.
    pub random_cases: usize,
}

impl Default for MaxwellConfig {
    fn default() -> Self {
        MaxwellConfig {
            v1: [1.0, 2.0],
            pipeline_pairs: vec![[1.0, 0.0, 0.0, 1.0], [0.0, 1.0, 0.5, -1.0]],
            n_max: 4,
            random_cases: 20,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ForceFreeConfig {
    /// Complex `α` values as `[re, im]`.
    pub alpha: Vec<[f64; 2]>,
    pub axis: usize,
    pub random_cases: usize,
}

impl Default for ForceFreeConfig {
    fn default() -> Self {
        ForceFreeConfig {
            alpha: vec![[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]],
            axis: 1,
            random_cases: 5,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DiracConfig {
    pub m: f64,
    pub omega: f64,
    pub phi: f64,
    /// Integration steps on `[0, x_end]`, `x_end` being the upper end of
    /// the spatial range.
    pub steps: usize,
    /// Largest accepted local error estimate of the integrator.
    pub step_tol: f64,
    pub random_cases: usize,
}

impl Default for DiracConfig {
    fn default() -> Self {
        DiracConfig {
            m: 1.0,
            omega: 0.5,
            phi: 0.3,
            steps: 1024,
            step_tol: 1e-10,
            random_cases: 20,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Smallest accepted observed convergence order.
    pub min_order: f64,
    /// Finest-grid residual below which a check counts as exact.
    pub floor: f64,
    /// Nodewise tolerance of exact identities (vacuum collapse, quadratures).
    pub exact: f64,
    /// Relative tolerance of the algebra identities.
    pub algebra: f64,
    /// Smallest accepted `min |det|` of the Dirac oracle quartet.
    pub min_det: f64,
    /// Smallest accepted integrator order.
    pub integrator_order: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            min_order: 1.9,
            floor: 1e-10,
            exact: 1e-10,
            algebra: 1e-12,
            min_det: 0.1,
            integrator_order: 3.9,
        }
    }
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<String>,
    pub refinements: Option<usize>,
}

/// Fully validated settings for one run.
#[derive(Debug, Clone)]
pub struct Settings {
    pub command: Command,
    pub seed: u64,
    pub out_dir: String,
    pub time: (f64, f64),
    pub space: (f64, f64),
    /// Node counts per axis, coarsest first.
    pub levels: Vec<usize>,
    pub config: RunConfig,
}

impl Settings {
    /// Build the medium tables; only called by commands that need them.
    pub fn medium(&self) -> Result<MediumTables, ConfigError> {
        medium_tables(&self.config.medium)
    }

    /// The same medium on a different number of quadrature samples.
    pub fn medium_with_samples(&self, samples: usize) -> Result<MediumTables, ConfigError> {
        medium_tables(&MediumConfig {
            samples,
            ..self.config.medium.clone()
        })
    }

    pub fn coefficients(&self) -> Vec<Hyperbolic> {
        self.config
            .formal_powers
            .coefficients
            .iter()
            .map(|&[u, v]| Hyperbolic::new(u, v))
            .collect()
    }

    pub fn alphas(&self) -> Vec<Complex64> {
        self.config
            .forcefree
            .alpha
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect()
    }
}

pub fn load(path: Option<&Path>) -> Result<RunConfig, ConfigError> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: display.clone(),
        source,
    })?;
    parse(&text).map_err(|e| match e {
        ConfigError::Parse { source, .. } => ConfigError::Parse { path: display, source },
        other => other,
    })
}

pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
    serde_json::from_str(text).map_err(|source| ConfigError::Parse {
        path: "config".into(),
        source,
    })
}

fn profile(m: &MediumConfig) -> Result<MediumProfile, ConfigError> {
    let eps = match &m.eps {
        EpsConfig::Constant { value } => Permittivity::Constant(*value),
        EpsConfig::Exp { scale, rate } => Permittivity::Exp { scale: *scale, rate: *rate },
        EpsConfig::Poly { scale, shift, power } => Permittivity::Power {
            scale: *scale,
            shift: *shift,
            power: *power,
        },
        EpsConfig::Table { x, eps } => {
            Permittivity::table(x.clone(), eps.clone()).map_err(|e| invalid("medium.eps", e.to_string()))?
        }
    };
    if !(m.mu > 0.0) || !m.mu.is_finite() {
        return Err(invalid("medium.mu", format!("permeability must be positive, got {}", m.mu)));
    }
    MediumProfile::new((m.x_range[0], m.x_range[1]), eps, m.mu, m.samples)
        .map_err(|e| invalid("medium", e.to_string()))
}

fn medium_tables(m: &MediumConfig) -> Result<MediumTables, ConfigError> {
    build_tables(profile(m)?).map_err(|e| invalid("medium", e.to_string()))
}

fn check_range(field: &str, r: [f64; 2]) -> Result<(f64, f64), ConfigError> {
    if !(r[1] > r[0]) || !r[0].is_finite() || !r[1].is_finite() {
        return Err(invalid(field, format!("range [{}, {}] is empty", r[0], r[1])));
    }
    Ok((r[0], r[1]))
}

fn within(field: &str, r: (f64, f64), lo: f64, hi: f64) -> Result<(), ConfigError> {
    let slack = 1e-12 * (1.0 + hi.abs());
    if r.0 < lo - slack || r.1 > hi + slack {
        return Err(invalid(
            field,
            format!("range [{}, {}] must lie inside [{lo}, {hi}]", r.0, r.1),
        ));
    }
    Ok(())
}

fn finite(field: &str, v: f64) -> Result<(), ConfigError> {
    if !v.is_finite() {
        return Err(invalid(field, format!("must be finite, got {v}")));
    }
    Ok(())
}

/// Merge overrides and validate everything the command will touch.
pub fn validate(config: RunConfig, command: Command, overrides: &Overrides) -> Result<Settings, ConfigError> {
    if config.sources.is_some() {
        return Err(invalid(
            "sources",
            "charge and current densities are not supported; only sourceless systems are verified",
        ));
    }
    if let Some(name) = &config.command {
        if name != command.name() {
            return Err(invalid(
                "command",
                format!("config is for `{name}` but `{}` was requested", command.name()),
            ));
        }
    }
    // the medium is validated for every command so that a bad file never passes silently
    let tables = medium_tables(&config.medium)?;

    let refinements = overrides.refinements.or(config.grid.refinements).unwrap_or(3);
    if !(3..=6).contains(&refinements) {
        return Err(invalid(
            "grid.refinements",
            format!("need between 3 and 6 levels to report an order, got {refinements}"),
        ));
    }
    let nodes = config.grid.nodes.unwrap_or(command.default_nodes());
    if nodes < 5 {
        return Err(invalid("grid.nodes", format!("need at least 5 nodes per axis, got {nodes}")));
    }
    let mut levels = vec![nodes];
    for _ in 1..refinements {
        levels.push(2 * levels.last().unwrap() - 1);
    }

    let time = check_range("grid.time", config.grid.time.unwrap_or([0.0, 0.5]))?;
    let (x_lo, x_hi) = tables.x_range();
    let default_space = match command {
        Command::FormalPowers => [0.0, 0.5f64.min(tables.xi_max())],
        Command::MaxwellVerify => [x_lo, x_hi],
        _ => [0.0, 1.0],
    };
    let space = check_range("grid.space", config.grid.space.unwrap_or(default_space))?;

    let tol = &config.tolerances;
    for (field, v) in [
        ("tolerances.min_order", tol.min_order),
        ("tolerances.floor", tol.floor),
        ("tolerances.exact", tol.exact),
        ("tolerances.algebra", tol.algebra),
        ("tolerances.min_det", tol.min_det),
        ("tolerances.integrator_order", tol.integrator_order),
    ] {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(invalid(field, format!("must be a finite non-negative number, got {v}")));
        }
    }

    match command {
        Command::AlgebraSelftest => {
            if config.algebra.cases == 0 {
                return Err(invalid("algebra.cases", "need at least one case"));
            }
        }
        Command::FormalPowers => {
            within("grid.space", space, 0.0, tables.xi_max())?;
            let fp = &config.formal_powers;
            if fp.n_max > 12 {
                return Err(invalid("formal_powers.n_max", format!("at most 12, got {}", fp.n_max)));
            }
            if fp.coefficients.is_empty() {
                return Err(invalid("formal_powers.coefficients", "need at least one coefficient"));
            }
            for (k, [u, v]) in fp.coefficients.iter().enumerate() {
                finite(&format!("formal_powers.coefficients[{k}]"), u + v)?;
            }
        }
        Command::MaxwellVerify => {
            within("grid.space", space, x_lo, x_hi)?;
            let mx = &config.maxwell;
            finite("maxwell.v1", mx.v1[0] + mx.v1[1])?;
            if mx.n_max > 12 {
                return Err(invalid("maxwell.n_max", format!("at most 12, got {}", mx.n_max)));
            }
            for (k, p) in mx.pipeline_pairs.iter().enumerate() {
                finite(&format!("maxwell.pipeline_pairs[{k}]"), p.iter().sum())?;
            }
        }
        Command::ForcefreeVerify => {
            let ff = &config.forcefree;
            if !(1..=3).contains(&ff.axis) {
                return Err(invalid("forcefree.axis", format!("must be 1, 2 or 3, got {}", ff.axis)));
            }
            if ff.alpha.is_empty() {
                return Err(invalid("forcefree.alpha", "need at least one value"));
            }
            for (k, [re, im]) in ff.alpha.iter().enumerate() {
                finite(&format!("forcefree.alpha[{k}]"), re + im)?;
            }
        }
        Command::DiracVerify => {
            let d = &config.dirac;
            if !(d.m >= 0.0) || !d.m.is_finite() {
                return Err(invalid("dirac.m", format!("mass must be finite and non-negative, got {}", d.m)));
            }
            finite("dirac.omega", d.omega)?;
            finite("dirac.phi", d.phi)?;
            if d.steps < 8 {
                return Err(invalid("dirac.steps", format!("need at least 8 steps, got {}", d.steps)));
            }
            if !(d.step_tol > 0.0) {
                return Err(invalid("dirac.step_tol", format!("must be positive, got {}", d.step_tol)));
            }
            if space.0 < 0.0 {
                return Err(invalid(
                    "grid.space",
                    format!("solutions start at x1 = 0, range begins at {}", space.0),
                ));
            }
        }
    }

    Ok(Settings {
        command,
        seed: overrides.seed.or(config.seed).unwrap_or(0),
        out_dir: overrides
            .out
            .clone()
            .or_else(|| config.output.dir.clone())
            .unwrap_or_else(|| "bers-out".into()),
        time,
        space,
        levels,
        config,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings(text: &str, command: Command) -> Result<Settings, ConfigError> {
        validate(parse(text)?, command, &Overrides::default())
    }

    #[test]
    fn empty_config_uses_defaults() {
        let s = settings("{}", Command::FormalPowers).unwrap();
        assert_eq!(s.levels, vec![33, 65, 129]);
        assert_eq!(s.seed, 0);
        assert_eq!(s.space, (0.0, 0.5));
        let s = settings("{}", Command::ForcefreeVerify).unwrap();
        assert_eq!(s.levels, vec![9, 17, 33]);
    }

    #[test]
    fn unknown_keys_are_rejected_with_position() {
        let err = settings("{\n  \"medium\": {\"muu\": 1}\n}", Command::FormalPowers).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, ConfigError::Parse { .. }));
        assert!(msg.contains("muu") && msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn sources_are_rejected() {
        let err = settings(r#"{"sources": {"rho": 1}}"#, Command::MaxwellVerify).unwrap_err();
        assert!(err.to_string().starts_with("sources:"), "{err}");
    }

    #[test]
    fn non_positive_mu_is_rejected() {
        for mu in ["0", "-1"] {
            let err = settings(&format!(r#"{{"medium": {{"eps": {{"kind": "constant", "value": 1}}, "mu": {mu}}}}}"#), Command::FormalPowers)
                .unwrap_err();
            assert!(err.to_string().starts_with("medium.mu:"), "{err}");
        }
    }

    #[test]
    fn eps_kinds_parse() {
        for eps in [
            r#"{"kind": "exp", "rate": -2}"#,
            r#"{"kind": "poly", "shift": 1, "power": -4}"#,
            r#"{"kind": "constant", "value": 2}"#,
            r#"{"kind": "table", "x": [0, 0.5, 1], "eps": [1, 2, 3]}"#,
        ] {
            let text = format!(r#"{{"medium": {{"eps": {eps}}}}}"#);
            settings(&text, Command::MaxwellVerify).unwrap();
        }
        assert!(settings(r#"{"medium": {"eps": {"kind": "exp", "rate": -2, "bogus": 1}}}"#, Command::MaxwellVerify).is_err());
        let err = settings(r#"{"medium": {"eps": {"kind": "constant", "value": -1}}}"#, Command::MaxwellVerify).unwrap_err();
        assert!(err.to_string().starts_with("medium:"), "{err}");
    }

    #[test]
    fn overrides_win() {
        let o = Overrides {
            seed: Some(9),
            out: Some("elsewhere".into()),
            refinements: Some(4),
        };
        let s = validate(parse(r#"{"seed": 3, "grid": {"refinements": 3}}"#).unwrap(), Command::DiracVerify, &o).unwrap();
        assert_eq!((s.seed, s.out_dir.as_str(), s.levels.len()), (9, "elsewhere", 4));
    }

    #[test]
    fn ranges_and_levels_are_checked() {
        assert!(settings(r#"{"grid": {"space": [0, 5]}}"#, Command::FormalPowers).is_err());
        assert!(settings(r#"{"grid": {"space": [0.5, 0.1]}}"#, Command::ForcefreeVerify).is_err());
        assert!(settings(r#"{"grid": {"refinements": 2}}"#, Command::ForcefreeVerify).is_err());
        assert!(settings(r#"{"grid": {"nodes": 3}}"#, Command::ForcefreeVerify).is_err());
        assert!(settings(r#"{"command": "dirac-verify"}"#, Command::ForcefreeVerify).is_err());
        assert!(settings(r#"{"forcefree": {"axis": 4}}"#, Command::ForcefreeVerify).is_err());
    }
}
