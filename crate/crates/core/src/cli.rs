//! Experiment front end: argument and config-file parsing, dispatch into
//! the physics modules, and deterministic CSV/JSON rendering.
//!
//! Every experiment runs with zero flags; flags (or a `--config` JSON
//! document with the same schema) override the defaults, and identical
//! configurations produce byte-identical output.

use std::f64::consts::PI;

use serde_json::Value;

use crate::bell::{self, MeasurementSetting};
use crate::dirac::{self, DiracParams, Helicity};
use crate::dynamics::ZeemanParams;
use crate::error::{Error, Result};
use crate::mz::{fringe_sweep, MzConfig};
use crate::qla::{StateVector, C_ONE};
use crate::timequbit::{bloch_vector, rotate_bloch, state_from_angles, BlochAngles};

/// The experiments the binary can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    MzFringes,
    Chsh,
    ChshSample,
    BlochTrace,
    DiracPrecess,
    DiracSpectrum,
    LhvTable,
}

impl Experiment {
    pub const ALL: [Experiment; 7] = [
        Experiment::MzFringes,
        Experiment::Chsh,
        Experiment::ChshSample,
        Experiment::BlochTrace,
        Experiment::DiracPrecess,
        Experiment::DiracSpectrum,
        Experiment::LhvTable,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::MzFringes => "mz-fringes",
            Experiment::Chsh => "chsh",
            Experiment::ChshSample => "chsh-sample",
            Experiment::BlochTrace => "bloch-trace",
            Experiment::DiracPrecess => "dirac-precess",
            Experiment::DiracSpectrum => "dirac-spectrum",
            Experiment::LhvTable => "lhv-table",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|e| e.name() == name)
    }
}

/// A resolved experiment parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Num(f64),
    Vec3([f64; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ParamKind {
    Int,
    Num,
    /// Real 3-vector, `x,y,z` or an axis shorthand on the command line.
    Vec3,
    /// Like [`ParamKind::Vec3`] but normalized to unit length at parse time.
    UnitVec3,
}

struct ParamSpec {
    key: &'static str,
    kind: ParamKind,
    default: ParamValue,
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn schema(exp: Experiment) -> &'static [ParamSpec] {
    use ParamKind as K;
    use ParamValue as V;
    const MZ: &[ParamSpec] = &[
        ParamSpec { key: "omega", kind: K::Num, default: V::Num(1.0) },
        ParamSpec { key: "t_max", kind: K::Num, default: V::Num(4.0 * PI) },
        ParamSpec { key: "steps", kind: K::Int, default: V::Int(64) },
        ParamSpec { key: "lambda", kind: K::Num, default: V::Num(0.0) },
    ];
    const CHSH: &[ParamSpec] = &[
        ParamSpec { key: "a0", kind: K::UnitVec3, default: V::Vec3([0.0, 0.0, 1.0]) },
        ParamSpec { key: "a1", kind: K::UnitVec3, default: V::Vec3([1.0, 0.0, 0.0]) },
        ParamSpec { key: "b0", kind: K::UnitVec3, default: V::Vec3([FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2]) },
        ParamSpec { key: "b1", kind: K::UnitVec3, default: V::Vec3([-FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2]) },
    ];
    const CHSH_SAMPLE: &[ParamSpec] = &[
        ParamSpec { key: "a0", kind: K::UnitVec3, default: V::Vec3([0.0, 0.0, 1.0]) },
        ParamSpec { key: "a1", kind: K::UnitVec3, default: V::Vec3([1.0, 0.0, 0.0]) },
        ParamSpec { key: "b0", kind: K::UnitVec3, default: V::Vec3([FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2]) },
        ParamSpec { key: "b1", kind: K::UnitVec3, default: V::Vec3([-FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2]) },
        ParamSpec { key: "shots", kind: K::Int, default: V::Int(1_000_000) },
    ];
    const BLOCH: &[ParamSpec] = &[
        ParamSpec { key: "theta", kind: K::Num, default: V::Num(PI / 2.0) },
        ParamSpec { key: "phi", kind: K::Num, default: V::Num(0.0) },
        ParamSpec { key: "axis", kind: K::UnitVec3, default: V::Vec3([0.0, 0.0, 1.0]) },
        ParamSpec { key: "omega", kind: K::Num, default: V::Num(1.0) },
        ParamSpec { key: "t_max", kind: K::Num, default: V::Num(4.0 * PI) },
        ParamSpec { key: "steps", kind: K::Int, default: V::Int(64) },
    ];
    const DIRAC_PRECESS: &[ParamSpec] = &[
        ParamSpec { key: "mass", kind: K::Num, default: V::Num(1.0) },
        ParamSpec { key: "momentum", kind: K::Vec3, default: V::Vec3([0.0, 0.0, 1.0]) },
        ParamSpec { key: "helicity", kind: K::Int, default: V::Int(1) },
        ParamSpec { key: "theta", kind: K::Num, default: V::Num(0.0) },
        ParamSpec { key: "phi", kind: K::Num, default: V::Num(0.0) },
        ParamSpec { key: "t_max", kind: K::Num, default: V::Num(4.0 * PI) },
        ParamSpec { key: "steps", kind: K::Int, default: V::Int(64) },
    ];
    const DIRAC_SPECTRUM: &[ParamSpec] = &[
        ParamSpec { key: "mass", kind: K::Num, default: V::Num(1.0) },
        ParamSpec { key: "momentum", kind: K::Vec3, default: V::Vec3([0.0, 0.0, 1.0]) },
        ParamSpec { key: "steps", kind: K::Int, default: V::Int(64) },
    ];
    match exp {
        Experiment::MzFringes => MZ,
        Experiment::Chsh => CHSH,
        Experiment::ChshSample => CHSH_SAMPLE,
        Experiment::BlochTrace => BLOCH,
        Experiment::DiracPrecess => DIRAC_PRECESS,
        Experiment::DiracSpectrum => DIRAC_SPECTRUM,
        Experiment::LhvTable => &[],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// A fully resolved run: experiment, parameters (every schema key
/// present, in schema order), optional sampling seed, and output sink.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub parameters: Vec<(String, ParamValue)>,
    pub seed: Option<u64>,
    pub output_format: OutputFormat,
    pub output_path: Option<String>,
}

impl RunConfig {
    /// Defaults for an experiment, CSV to stdout, no seed.
    pub fn defaults(experiment: Experiment) -> Self {
        let parameters = schema(experiment)
            .iter()
            .map(|p| (p.key.to_string(), p.default))
            .collect();
        Self {
            experiment,
            parameters,
            seed: None,
            output_format: OutputFormat::Csv,
            output_path: None,
        }
    }

    /// Replaces one parameter value (used programmatically and in tests).
    pub fn with_param(mut self, key: &str, value: ParamValue) -> Self {
        for (k, v) in self.parameters.iter_mut() {
            if k == key {
                *v = value;
            }
        }
        self
    }

    fn lookup(&self, key: &str) -> Result<ParamValue> {
        self.parameters
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::Domain(format!("missing parameter '{key}'")))
    }

    fn num(&self, key: &str) -> Result<f64> {
        match self.lookup(key)? {
            ParamValue::Num(x) => Ok(x),
            ParamValue::Int(n) => Ok(n as f64),
            _ => Err(Error::Domain(format!("parameter '{key}' must be a number"))),
        }
    }

    fn int(&self, key: &str) -> Result<i64> {
        match self.lookup(key)? {
            ParamValue::Int(n) => Ok(n),
            _ => Err(Error::Domain(format!("parameter '{key}' must be an integer"))),
        }
    }

    fn vec3(&self, key: &str) -> Result<[f64; 3]> {
        match self.lookup(key)? {
            ParamValue::Vec3(v) => Ok(v),
            _ => Err(Error::Domain(format!("parameter '{key}' must be a 3-vector"))),
        }
    }
}

/// Errors from the command-line layer. Usage problems exit with status 1,
/// I/O problems with status 3; domain errors from the physics modules
/// surface separately and exit with status 2.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

/// Outcome of argument parsing.
#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Run(RunConfig),
    Help,
}

/// Parses raw arguments (no program name) into a run configuration.
/// `--config <path>` loads a JSON document with the same schema; explicit
/// command-line flags override file values. Unknown flags and unknown
/// parameter keys are rejected by name.
pub fn parse_args(args: &[String]) -> std::result::Result<Command, CliError> {
    if args.iter().any(|a| a == "--help" || a == "-h") {
        return Ok(Command::Help);
    }
    if args.is_empty() {
        return Err(CliError::Usage(
            "missing experiment; expected one of mz-fringes, chsh, chsh-sample, bloch-trace, dirac-precess, dirac-spectrum, lhv-table".into(),
        ));
    }

    let mut idx = 0;
    let mut cli_experiment = None;
    if !args[0].starts_with("--") {
        cli_experiment = Some(Experiment::from_name(&args[0]).ok_or_else(|| {
            CliError::Usage(format!("unknown experiment '{}'", args[0]))
        })?);
        idx = 1;
    }

    // Raw flag map; values stay as strings until the schema gives a type.
    let mut flags: Vec<(String, String)> = Vec::new();
    while idx < args.len() {
        let arg = &args[idx];
        let stripped = arg.strip_prefix("--").ok_or_else(|| {
            CliError::Usage(format!("unexpected argument '{arg}' (flags start with --)"))
        })?;
        let (key, value) = if let Some((k, v)) = stripped.split_once('=') {
            (k.to_string(), v.to_string())
        } else {
            idx += 1;
            let v = args.get(idx).ok_or_else(|| {
                CliError::Usage(format!("flag --{stripped} expects a value"))
            })?;
            (stripped.to_string(), v.clone())
        };
        flags.push((key.replace('-', "_"), value));
        idx += 1;
    }

    let mut take = |name: &str| -> Option<String> {
        let pos = flags.iter().position(|(k, _)| k == name)?;
        Some(flags.remove(pos).1)
    };

    let config_path = take("config");
    let seed_flag = take("seed");
    let format_flag = take("format");
    let output_flag = take("output");

    let file = match &config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read config '{path}': {e}")))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("config '{path}' is not valid JSON: {e}")))?;
            Some(value)
        }
        None => None,
    };
    if let Some(v) = &file {
        if !v.is_object() {
            return Err(CliError::Usage("config document must be a JSON object".into()));
        }
        for key in v.as_object().expect("checked").keys() {
            if !matches!(
                key.as_str(),
                "experiment" | "parameters" | "seed" | "output_format" | "output_path"
            ) {
                return Err(CliError::Usage(format!("unknown config key '{key}'")));
            }
        }
    }

    let experiment = match cli_experiment {
        Some(e) => e,
        None => {
            let name = file
                .as_ref()
                .and_then(|v| v.get("experiment"))
                .and_then(Value::as_str)
                .ok_or_else(|| CliError::Usage("missing experiment (give a subcommand or an 'experiment' key in the config)".into()))?;
            Experiment::from_name(name)
                .ok_or_else(|| CliError::Usage(format!("unknown experiment '{name}'")))?
        }
    };

    let file_params = file.as_ref().and_then(|v| v.get("parameters"));
    if let Some(params) = file_params {
        let obj = params
            .as_object()
            .ok_or_else(|| CliError::Usage("'parameters' must be a JSON object".into()))?;
        for key in obj.keys() {
            if !schema(experiment).iter().any(|p| p.key == key) {
                return Err(CliError::Usage(format!(
                    "unknown parameter '{key}' for experiment {}",
                    experiment.name()
                )));
            }
        }
    }

    let mut parameters = Vec::new();
    for spec in schema(experiment) {
        let value = if let Some(raw) = take(spec.key) {
            parse_param_str(spec, &raw)?
        } else if let Some(v) = file_params.and_then(|p| p.get(spec.key)) {
            parse_param_json(spec, v)?
        } else {
            spec.default
        };
        parameters.push((spec.key.to_string(), value));
    }

    if let Some((key, _)) = flags.first() {
        return Err(CliError::Usage(format!(
            "unknown flag --{} for experiment {}",
            key.replace('_', "-"),
            experiment.name()
        )));
    }

    let seed = match seed_flag {
        Some(raw) => Some(raw.parse::<u64>().map_err(|_| {
            CliError::Usage(format!("invalid value '{raw}' for --seed (expected a nonnegative integer)"))
        })?),
        None => match file.as_ref().and_then(|v| v.get("seed")) {
            None | Some(Value::Null) => None,
            Some(v) => Some(v.as_u64().ok_or_else(|| {
                CliError::Usage("config 'seed' must be a nonnegative integer".into())
            })?),
        },
    };

    let format_raw = format_flag.or_else(|| {
        file.as_ref()
            .and_then(|v| v.get("output_format"))
            .and_then(Value::as_str)
            .map(str::to_string)
    });
    let output_format = match format_raw.as_deref() {
        None | Some("csv") => OutputFormat::Csv,
        Some("json") => OutputFormat::Json,
        Some(other) => {
            return Err(CliError::Usage(format!(
                "invalid value '{other}' for --format (expected csv or json)"
            )))
        }
    };

    let output_path = output_flag.or_else(|| {
        file.as_ref()
            .and_then(|v| v.get("output_path"))
            .and_then(Value::as_str)
            .map(str::to_string)
    });

    Ok(Command::Run(RunConfig {
        experiment,
        parameters,
        seed,
        output_format,
        output_path,
    }))
}

/// Parses a standalone JSON run configuration (the `--config` schema).
pub fn config_from_json_str(text: &str) -> std::result::Result<RunConfig, CliError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Usage(format!("configuration is not valid JSON: {e}")))?;
    config_from_json(&value)
}

/// Parses an already-decoded JSON run configuration.
pub fn config_from_json(value: &Value) -> std::result::Result<RunConfig, CliError> {
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Usage("config document must be a JSON object".into()))?;
    for key in obj.keys() {
        if !matches!(
            key.as_str(),
            "experiment" | "parameters" | "seed" | "output_format" | "output_path"
        ) {
            return Err(CliError::Usage(format!("unknown config key '{key}'")));
        }
    }
    let name = obj
        .get("experiment")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::Usage("config needs an 'experiment' string".into()))?;
    let experiment = Experiment::from_name(name)
        .ok_or_else(|| CliError::Usage(format!("unknown experiment '{name}'")))?;

    let mut parameters = Vec::new();
    let params = obj.get("parameters");
    if let Some(params) = params {
        let pobj = params
            .as_object()
            .ok_or_else(|| CliError::Usage("'parameters' must be a JSON object".into()))?;
        for key in pobj.keys() {
            if !schema(experiment).iter().any(|p| p.key == key) {
                return Err(CliError::Usage(format!(
                    "unknown parameter '{key}' for experiment {name}"
                )));
            }
        }
    }
    for spec in schema(experiment) {
        let value = match params.and_then(|p| p.get(spec.key)) {
            Some(v) => parse_param_json(spec, v)?,
            None => spec.default,
        };
        parameters.push((spec.key.to_string(), value));
    }

    let seed = match obj.get("seed") {
        None | Some(Value::Null) => None,
        Some(v) => Some(v.as_u64().ok_or_else(|| {
            CliError::Usage("config 'seed' must be a nonnegative integer".into())
        })?),
    };
    let output_format = match obj.get("output_format").and_then(Value::as_str) {
        None | Some("csv") => OutputFormat::Csv,
        Some("json") => OutputFormat::Json,
        Some(other) => {
            return Err(CliError::Usage(format!(
                "invalid output_format '{other}' (expected csv or json)"
            )))
        }
    };
    let output_path = obj
        .get("output_path")
        .and_then(Value::as_str)
        .map(str::to_string);

    Ok(RunConfig {
        experiment,
        parameters,
        seed,
        output_format,
        output_path,
    })
}

fn parse_param_str(spec: &ParamSpec, raw: &str) -> std::result::Result<ParamValue, CliError> {
    match spec.kind {
        ParamKind::Int => raw
            .parse::<i64>()
            .map(ParamValue::Int)
            .map_err(|_| CliError::Usage(format!("invalid integer '{raw}' for --{}", flag_name(spec.key)))),
        ParamKind::Num => raw
            .parse::<f64>()
            .map(ParamValue::Num)
            .map_err(|_| CliError::Usage(format!("invalid number '{raw}' for --{}", flag_name(spec.key)))),
        ParamKind::Vec3 | ParamKind::UnitVec3 => {
            let v = parse_vec3_str(raw).ok_or_else(|| {
                CliError::Usage(format!(
                    "invalid 3-vector '{raw}' for --{} (expected x|y|z or 'a,b,c')",
                    flag_name(spec.key)
                ))
            })?;
            finish_vec3(spec, v)
        }
    }
}

fn parse_param_json(spec: &ParamSpec, value: &Value) -> std::result::Result<ParamValue, CliError> {
    match spec.kind {
        ParamKind::Int => value
            .as_i64()
            .map(ParamValue::Int)
            .ok_or_else(|| CliError::Usage(format!("parameter '{}' must be an integer", spec.key))),
        ParamKind::Num => value
            .as_f64()
            .map(ParamValue::Num)
            .ok_or_else(|| CliError::Usage(format!("parameter '{}' must be a number", spec.key))),
        ParamKind::Vec3 | ParamKind::UnitVec3 => {
            let v = match value {
                Value::String(s) => parse_vec3_str(s),
                Value::Array(items) if items.len() == 3 => {
                    let mut v = [0.0; 3];
                    let mut ok = true;
                    for (slot, item) in v.iter_mut().zip(items) {
                        match item.as_f64() {
                            Some(x) => *slot = x,
                            None => ok = false,
                        }
                    }
                    ok.then_some(v)
                }
                _ => None,
            }
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "parameter '{}' must be a 3-element number array or axis name",
                    spec.key
                ))
            })?;
            finish_vec3(spec, v)
        }
    }
}

fn finish_vec3(spec: &ParamSpec, v: [f64; 3]) -> std::result::Result<ParamValue, CliError> {
    if spec.kind == ParamKind::UnitVec3 {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(CliError::Usage(format!(
                "parameter '{}' must be a nonzero finite vector",
                spec.key
            )));
        }
        Ok(ParamValue::Vec3([v[0] / norm, v[1] / norm, v[2] / norm]))
    } else {
        Ok(ParamValue::Vec3(v))
    }
}

fn parse_vec3_str(raw: &str) -> Option<[f64; 3]> {
    match raw {
        "x" => return Some([1.0, 0.0, 0.0]),
        "y" => return Some([0.0, 1.0, 0.0]),
        "z" => return Some([0.0, 0.0, 1.0]),
        _ => {}
    }
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 3 {
        return None;
    }
    let mut v = [0.0; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part.trim().parse::<f64>().ok()?;
    }
    Some(v)
}

fn flag_name(key: &str) -> String {
    key.replace('_', "-")
}

/// One output cell: integer, 15-significant-digit number, label, or blank.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

/// Column-named rows produced by one experiment run.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// Runs the configured experiment and collects its rows.
pub fn run(config: &RunConfig) -> Result<Table> {
    match config.experiment {
        Experiment::MzFringes => run_mz_fringes(config),
        Experiment::Chsh => run_chsh(config),
        Experiment::ChshSample => run_chsh_sample(config),
        Experiment::BlochTrace => run_bloch_trace(config),
        Experiment::DiracPrecess => run_dirac_precess(config),
        Experiment::DiracSpectrum => run_dirac_spectrum(config),
        Experiment::LhvTable => run_lhv_table(),
    }
}

fn steps_from(config: &RunConfig) -> Result<usize> {
    let raw = config.int("steps")?;
    usize::try_from(raw).map_err(|_| Error::Domain(format!("steps must be positive, got {raw}")))
}

fn up_x() -> StateVector {
    StateVector::normalized(vec![C_ONE, C_ONE]).expect("nonzero")
}

fn run_mz_fringes(config: &RunConfig) -> Result<Table> {
    let omega = config.num("omega")?;
    let t_max = config.num("t_max")?;
    let steps = steps_from(config)?;
    let lambda = config.num("lambda")?;
    let zeeman = ZeemanParams::new(omega, [0.0, 0.0, 1.0])?;
    let cfg = MzConfig::new(zeeman, 0.0, up_x(), lambda)?;
    let rows = fringe_sweep(&cfg, omega * t_max, steps)?;
    Ok(Table {
        columns: vec!["phase", "p_d1", "p_d2"],
        rows: rows
            .into_iter()
            .map(|r| vec![Cell::Num(r.phase), Cell::Num(r.p_d1), Cell::Num(r.p_d2)])
            .collect(),
    })
}

fn chsh_settings(config: &RunConfig) -> Result<[MeasurementSetting; 4]> {
    Ok([
        MeasurementSetting::time(config.vec3("a0")?)?,
        MeasurementSetting::time(config.vec3("a1")?)?,
        MeasurementSetting::spin(config.vec3("b0")?)?,
        MeasurementSetting::spin(config.vec3("b1")?)?,
    ])
}

fn run_chsh(config: &RunConfig) -> Result<Table> {
    let [a0, a1, b0, b1] = chsh_settings(config)?;
    let rho = bell::bell_state().to_density();
    let out = bell::chsh(&rho, &a0, &a1, &b0, &b1)?;
    Ok(Table {
        columns: vec!["e00", "e01", "e10", "e11", "s"],
        rows: vec![vec![
            Cell::Num(out.e00),
            Cell::Num(out.e01),
            Cell::Num(out.e10),
            Cell::Num(out.e11),
            Cell::Num(out.s),
        ]],
    })
}

fn run_chsh_sample(config: &RunConfig) -> Result<Table> {
    let [a0, a1, b0, b1] = chsh_settings(config)?;
    let shots = config.int("shots")?;
    let shots = u64::try_from(shots)
        .map_err(|_| Error::Domain(format!("shots must be positive, got {shots}")))?;
    let base_seed = config.seed.unwrap_or(0);
    let rho = bell::bell_state().to_density();

    let pairs = [
        ("a0b0", &a0, &b0),
        ("a0b1", &a0, &b1),
        ("a1b0", &a1, &b0),
        ("a1b1", &a1, &b1),
    ];
    let mut rows = Vec::with_capacity(5);
    let mut estimates = [0.0; 4];
    for (k, (label, a, b)) in pairs.iter().enumerate() {
        // Each setting pair samples with its own derived seed.
        let seed = base_seed.wrapping_add(k as u64);
        let (record, e_hat) = bell::sample_correlation(&rho, a, b, shots, seed)?;
        estimates[k] = e_hat;
        rows.push(vec![
            Cell::Text((*label).to_string()),
            Cell::Int(record.n_pp as i64),
            Cell::Int(record.n_pm as i64),
            Cell::Int(record.n_mp as i64),
            Cell::Int(record.n_mm as i64),
            Cell::Num(e_hat),
        ]);
    }
    let s_hat = estimates[0] + estimates[1] + estimates[2] - estimates[3];
    rows.push(vec![
        Cell::Text("s_hat".to_string()),
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        Cell::Num(s_hat),
    ]);
    Ok(Table {
        columns: vec!["setting_pair", "n_pp", "n_pm", "n_mp", "n_mm", "e_hat"],
        rows,
    })
}

fn time_grid(t_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::Domain(format!(
            "a sweep needs at least 2 steps, got {steps}"
        )));
    }
    Ok((0..steps)
        .map(|k| t_max * k as f64 / (steps - 1) as f64)
        .collect())
}

fn trajectory_table(times: &[f64], points: &[crate::timequbit::BlochVector]) -> Table {
    Table {
        columns: vec!["t", "r_x", "r_y", "r_z"],
        rows: times
            .iter()
            .zip(points)
            .map(|(&t, r)| vec![Cell::Num(t), Cell::Num(r.x), Cell::Num(r.y), Cell::Num(r.z)])
            .collect(),
    }
}

fn run_bloch_trace(config: &RunConfig) -> Result<Table> {
    let angles = BlochAngles::new(config.num("theta")?, config.num("phi")?)?;
    let axis = config.vec3("axis")?;
    let omega = config.num("omega")?;
    let times = time_grid(config.num("t_max")?, steps_from(config)?)?;
    let r0 = bloch_vector(&state_from_angles(&angles).to_density());
    let points = times
        .iter()
        .map(|&t| rotate_bloch(&r0, axis, omega * t))
        .collect::<Result<Vec<_>>>()?;
    Ok(trajectory_table(&times, &points))
}

fn helicity_from(config: &RunConfig) -> Result<Helicity> {
    match config.int("helicity")? {
        1 => Ok(Helicity::Plus),
        -1 => Ok(Helicity::Minus),
        other => Err(Error::Domain(format!(
            "helicity must be +1 or -1, got {other}"
        ))),
    }
}

fn run_dirac_precess(config: &RunConfig) -> Result<Table> {
    let params = DiracParams::new(config.num("mass")?, config.vec3("momentum")?)?;
    let helicity = helicity_from(config)?;
    let angles = BlochAngles::new(config.num("theta")?, config.num("phi")?)?;
    let times = time_grid(config.num("t_max")?, steps_from(config)?)?;
    let psi0 = state_from_angles(&angles);
    let points = dirac::precess_state(&psi0, &params, helicity, &times)?;
    Ok(trajectory_table(&times, &points))
}

fn run_dirac_spectrum(config: &RunConfig) -> Result<Table> {
    let mass = config.num("mass")?;
    let momentum = config.vec3("momentum")?;
    let steps = steps_from(config)?;
    if steps < 2 {
        return Err(Error::Domain(format!(
            "a sweep needs at least 2 steps, got {steps}"
        )));
    }
    let mut rows = Vec::with_capacity(steps);
    for k in 0..steps {
        let scale = k as f64 / (steps - 1) as f64;
        let p = [momentum[0] * scale, momentum[1] * scale, momentum[2] * scale];
        let params = DiracParams::new(mass, p)?;
        let (vals, _) = dirac::dirac_hamiltonian(&params).herm_eig()?;
        rows.push(vec![
            Cell::Num(mass),
            Cell::Num(p[0]),
            Cell::Num(p[1]),
            Cell::Num(p[2]),
            Cell::Num(vals[0]),
            Cell::Num(vals[3]),
        ]);
    }
    Ok(Table {
        columns: vec!["m", "px", "py", "pz", "e_minus", "e_plus"],
        rows,
    })
}

fn run_lhv_table() -> Result<Table> {
    let (strategies, _) = bell::lhv_extremes();
    Ok(Table {
        columns: vec!["a0", "a1", "b0", "b1", "s"],
        rows: strategies
            .into_iter()
            .map(|r| {
                vec![
                    Cell::Int(r.a0 as i64),
                    Cell::Int(r.a1 as i64),
                    Cell::Int(r.b0 as i64),
                    Cell::Int(r.b1 as i64),
                    Cell::Num(r.s),
                ]
            })
            .collect(),
    })
}

/// Formats a float in plain decimal with 15 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (14 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

fn fmt_cell(cell: &Cell) -> String {
    match cell {
        Cell::Int(n) => n.to_string(),
        Cell::Num(x) => fmt_num(*x),
        Cell::Text(s) => s.clone(),
        Cell::Empty => String::new(),
    }
}

/// Renders a table as CSV with a header row.
pub fn render_csv(table: &Table) -> String {
    let mut out = String::new();
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(fmt_cell).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Full-precision float rendering for the meta block, so an emitted
/// configuration re-parses to exactly the configuration that ran.
fn json_f64_exact(x: f64) -> String {
    if x.is_finite() {
        let s = format!("{x}");
        if s.contains('.') || s.contains('e') || s.contains('E') {
            s
        } else {
            format!("{s}.0")
        }
    } else {
        "null".to_string()
    }
}

fn json_param(value: &ParamValue) -> String {
    match value {
        ParamValue::Int(n) => n.to_string(),
        ParamValue::Num(x) => json_f64_exact(*x),
        ParamValue::Vec3(v) => format!(
            "[{}, {}, {}]",
            json_f64_exact(v[0]),
            json_f64_exact(v[1]),
            json_f64_exact(v[2])
        ),
    }
}

fn json_cell(cell: &Cell) -> String {
    match cell {
        Cell::Int(n) => n.to_string(),
        Cell::Num(x) => {
            if x.is_finite() {
                fmt_num(*x)
            } else {
                "null".to_string()
            }
        }
        Cell::Text(s) => format!("\"{}\"", json_escape(s)),
        Cell::Empty => "null".to_string(),
    }
}

/// Renders `{ "meta": {...}, "rows": [...] }`. Rows are objects keyed by
/// column name with 15-significant-digit numbers; the meta block echoes
/// the resolved configuration at full precision.
pub fn render_json(config: &RunConfig, table: &Table) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"meta\": {\n");
    out.push_str(&format!(
        "    \"experiment\": \"{}\",\n",
        json_escape(config.experiment.name())
    ));
    out.push_str("    \"parameters\": {");
    let mut first = true;
    for (key, value) in &config.parameters {
        if !first {
            out.push(',');
        }
        first = false;
        out.push_str(&format!("\n      \"{}\": {}", json_escape(key), json_param(value)));
    }
    if !config.parameters.is_empty() {
        out.push_str("\n    ");
    }
    out.push_str("},\n");
    match config.seed {
        Some(seed) => out.push_str(&format!("    \"seed\": {seed}\n")),
        None => out.push_str("    \"seed\": null\n"),
    }
    out.push_str("  },\n  \"rows\": [\n");
    for (i, row) in table.rows.iter().enumerate() {
        out.push_str("    {");
        for (j, (col, cell)) in table.columns.iter().zip(row).enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("\"{}\": {}", json_escape(col), json_cell(cell)));
        }
        out.push('}');
        if i + 1 < table.rows.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]\n}\n");
    out
}

fn usage_text() -> String {
    "tqsim - temporal-orientation qubit experiments\n\
     \n\
     USAGE:\n\
    \x20   tqsim <experiment> [flags]\n\
    \x20   tqsim --config <path> [flags]\n\
     \n\
     EXPERIMENTS:\n\
    \x20   mz-fringes      port probabilities vs Larmor phase\n\
    \x20                   --omega --t-max --steps --lambda\n\
    \x20   chsh            exact CHSH correlators on the entangled time-spin state\n\
    \x20                   --a0 --a1 (time side) --b0 --b1 (spin side)\n\
    \x20   chsh-sample     finite-shot CHSH via Born-rule sampling\n\
    \x20                   chsh flags plus --shots, honors --seed\n\
    \x20   bloch-trace     rigid precession of a time-qubit Bloch vector\n\
    \x20                   --theta --phi --axis --omega --t-max --steps\n\
    \x20   dirac-precess   zitterbewegung precession about the effective field\n\
    \x20                   --mass --momentum --helicity --theta --phi --t-max --steps\n\
    \x20   dirac-spectrum  dispersion branches along a momentum ray\n\
    \x20                   --mass --momentum --steps\n\
    \x20   lhv-table       the 16 deterministic strategies and their CHSH values\n\
     \n\
     Directions and momenta parse as 'x', 'y', 'z', or 'a,b,c'.\n\
     \n\
     GLOBAL FLAGS:\n\
    \x20   --format csv|json    output format (default csv)\n\
    \x20   --output <path>      write to a file instead of stdout\n\
    \x20   --config <path>      load a JSON run configuration (flags override it)\n\
    \x20   --seed <n>           sampling seed\n\
    \x20   --help               show this text\n\
     \n\
     EXIT STATUS: 0 success, 1 usage error, 2 domain error, 3 I/O error.\n"
        .to_string()
}

/// Entry point used by the binary: parses, runs, renders, writes, and
/// maps errors onto exit statuses (1 usage, 2 domain, 3 I/O).
pub fn cli_main(args: &[String]) -> i32 {
    let config = match parse_args(args) {
        Ok(Command::Help) => {
            print!("{}", usage_text());
            return 0;
        }
        Ok(Command::Run(config)) => config,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run 'tqsim --help' for usage");
            return 1;
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            return 3;
        }
    };
    let table = match run(&config) {
        Ok(table) => table,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let rendered = match config.output_format {
        OutputFormat::Csv => render_csv(&table),
        OutputFormat::Json => render_json(&config, &table),
    };
    match &config.output_path {
        None => {
            print!("{rendered}");
            0
        }
        Some(path) => match std::fs::write(path, rendered) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: cannot write '{path}': {e}");
                3
            }
        },
    }
}
