use std::path::Path;

use tfa_core::groebner::{GroebnerConfig, DEFAULT_STEP_BUDGET};
use tfa_core::model::{bundled, parse_structure, InputSet, InputSignal, StructureSpec};
use tfa_core::Rat;

use crate::error::CliError;

pub const STEP_BUDGET_ENV: &str = "TFA_STEP_BUDGET";

/// Reads a model file; `@s0` and `@s1` name the bundled structures.
pub fn load_structure(file: &str) -> Result<StructureSpec, CliError> {
    let text = match file {
        "@s0" | "@S0" => bundled::S0.to_string(),
        "@s1" | "@S1" => bundled::S1.to_string(),
        path => std::fs::read_to_string(Path::new(path))
            .map_err(|e| CliError::Io(format!("{path}: {e}")))?,
    };
    Ok(parse_structure(&text)?)
}

/// Interprets the `--inputs` flag for a structure with `channels` inputs.
pub fn parse_inputs(text: &str, channels: usize) -> Result<InputSet, CliError> {
    let set = match text.trim() {
        "auto" => InputSet::default_for(channels),
        "full" => InputSet::Full,
        "uncontrolled" => InputSet::Uncontrolled,
        "none" if channels == 0 => InputSet::Uncontrolled,
        list => {
            let mut signals = list
                .split(',')
                .map(InputSignal::parse)
                .collect::<Result<Vec<_>, _>>()?;
            if signals.len() == 1 && channels > 1 {
                signals = vec![signals[0].clone(); channels];
            }
            InputSet::Restricted(signals)
        }
    };
    set.validate(channels)?;
    Ok(set)
}

/// Parses an exact rational written as an integer, a fraction `p/q` or a
/// decimal such as `-0.25` or `1e-3`.
pub fn parse_rational(text: &str) -> Result<Rat, CliError> {
    let t = text.trim();
    let bad = || CliError::Parse(format!("`{t}` is not a number"));
    if let Ok(r) = t.parse::<Rat>() {
        return Ok(r);
    }
    let (mantissa, exponent) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.trim_start_matches(['-', '+']).is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let shift = exponent - frac_part.len() as i32;
    let power = "0".repeat(shift.unsigned_abs() as usize);
    let exact = if shift >= 0 {
        format!("{digits}{power}")
    } else {
        format!("{digits}/1{power}")
    };
    exact.parse::<Rat>().map_err(|_| bad())
}

/// Parses `name=value,...` into a vector in declaration order.
pub fn parse_theta(text: &str, spec: &StructureSpec) -> Result<Vec<Rat>, CliError> {
    let mut values: Vec<Option<Rat>> = vec![None; spec.n_params()];
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("expected name=value, got `{item}`")))?;
        let idx = spec
            .params()
            .iter()
            .position(|p| p == name.trim())
            .ok_or_else(|| CliError::Parse(format!("unknown parameter `{}`", name.trim())))?;
        if values[idx].is_some() {
            return Err(CliError::Parse(format!(
                "parameter `{}` given twice",
                name.trim()
            )));
        }
        values[idx] = Some(parse_rational(value)?);
    }
    values
        .into_iter()
        .zip(spec.params())
        .map(|(v, name)| v.ok_or_else(|| CliError::Parse(format!("no value for `{name}`"))))
        .collect()
}

/// Step budget from the flag, else the environment, else the default.
pub fn groebner_config(flag: Option<u64>) -> Result<GroebnerConfig, CliError> {
    let step_budget = match flag {
        Some(b) => b,
        None => match std::env::var(STEP_BUDGET_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                CliError::Parse(format!(
                    "{STEP_BUDGET_ENV} must be a positive integer, got `{v}`"
                ))
            })?,
            Err(_) => DEFAULT_STEP_BUDGET,
        },
    };
    if step_budget == 0 {
        return Err(CliError::Parse("step budget must be positive".into()));
    }
    Ok(GroebnerConfig { step_budget })
}
