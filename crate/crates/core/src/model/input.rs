//! Input signals with rational Laplace transforms.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::polycore::{MultiPoly, Rat, Ring};

use super::{ModelError, LAPLACE_VAR};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum InputKind {
    Impulse,
    Step,
    Ramp,
    Exponential(Rat),
    None,
}

/// One scalar input channel signal `u(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InputSignal {
    pub kind: InputKind,
}

impl Serialize for InputSignal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl InputSignal {
    pub fn impulse() -> Self {
        InputSignal {
            kind: InputKind::Impulse,
        }
    }

    pub fn step() -> Self {
        InputSignal {
            kind: InputKind::Step,
        }
    }

    pub fn ramp() -> Self {
        InputSignal {
            kind: InputKind::Ramp,
        }
    }

    pub fn exponential(rate: Rat) -> Self {
        InputSignal {
            kind: InputKind::Exponential(rate),
        }
    }

    pub fn none() -> Self {
        InputSignal {
            kind: InputKind::None,
        }
    }

    /// Parses `impulse`, `step`, `ramp`, `none` or `exp:<rate>`.
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let t = text.trim();
        match t {
            "impulse" | "delta" => return Ok(Self::impulse()),
            "step" => return Ok(Self::step()),
            "ramp" => return Ok(Self::ramp()),
            "none" | "zero" => return Ok(Self::none()),
            _ => {}
        }
        let rate = t
            .strip_prefix("exp:")
            .or_else(|| t.strip_prefix("exponential:"))
            .ok_or_else(|| ModelError::InvalidInputSet(format!("unknown input signal `{t}`")))?;
        let rate: Rat = rate
            .trim()
            .parse()
            .map_err(|_| ModelError::InvalidInputSet(format!("bad exponential rate `{rate}`")))?;
        Ok(Self::exponential(rate))
    }

    pub fn label(&self) -> String {
        match &self.kind {
            InputKind::Impulse => "impulse".into(),
            InputKind::Step => "step".into(),
            InputKind::Ramp => "ramp".into(),
            InputKind::Exponential(a) => format!("exp:{a}"),
            InputKind::None => "none".into(),
        }
    }

    /// The ring `{s}` the transforms live in.
    pub fn laplace_ring() -> Arc<Ring> {
        Ring::new([LAPLACE_VAR]).expect("single variable")
    }

    /// `ℒ{u}(s)` as a numerator/denominator pair in the ring `{s}`.
    pub fn laplace(&self) -> (MultiPoly, MultiPoly) {
        let r = Self::laplace_ring();
        let one = MultiPoly::one(&r);
        let s = MultiPoly::var_index(&r, 0);
        match &self.kind {
            InputKind::Impulse => (one.clone(), one),
            InputKind::Step => (one, s),
            InputKind::Ramp => (one, s.pow(2)),
            InputKind::Exponential(a) => (one.clone(), &s - &MultiPoly::constant(&r, a.clone())),
            InputKind::None => (MultiPoly::zero(&r), one),
        }
    }

    /// `u(0⁺)`; `None` for the impulse, which has no finite value.
    pub fn initial_value(&self) -> Option<Rat> {
        match self.kind {
            InputKind::Impulse => None,
            InputKind::Step | InputKind::Exponential(_) => Some(Rat::one()),
            InputKind::Ramp | InputKind::None => Some(Rat::zero()),
        }
    }

    /// `u(t)` for non-impulsive signals.
    pub fn value_at(&self, t: f64) -> f64 {
        match &self.kind {
            InputKind::Impulse | InputKind::None => 0.0,
            InputKind::Step => 1.0,
            InputKind::Ramp => t,
            InputKind::Exponential(a) => (crate::polycore::to_f64(a) * t).exp(),
        }
    }
}

/// Which input experiments are available.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode", content = "signals")]
pub enum InputSet {
    /// Any input can be applied, so `V` and `W` are both observable.
    Full,
    /// Only these signals, one per input channel.
    Restricted(Vec<InputSignal>),
    Uncontrolled,
}

impl InputSet {
    pub fn validate(&self, inputs: usize) -> Result<(), ModelError> {
        match self {
            InputSet::Full if inputs == 0 => Err(ModelError::InvalidInputSet(
                "the full input set needs at least one input channel".into(),
            )),
            InputSet::Restricted(_) if inputs == 0 => Err(ModelError::InvalidInputSet(
                "a restricted input set needs at least one input channel".into(),
            )),
            InputSet::Restricted(sig) if sig.len() != inputs => Err(ModelError::InvalidInputSet(
                format!("{} signals given for {inputs} input channels", sig.len()),
            )),
            InputSet::Uncontrolled if inputs != 0 => Err(ModelError::InvalidInputSet(
                "an uncontrolled input set requires a structure without inputs".into(),
            )),
            _ => Ok(()),
        }
    }

    /// The natural choice for a structure: full when it has inputs.
    pub fn default_for(inputs: usize) -> Self {
        if inputs == 0 {
            InputSet::Uncontrolled
        } else {
            InputSet::Full
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            InputSet::Full => "full",
            InputSet::Restricted(_) => "restricted",
            InputSet::Uncontrolled => "uncontrolled",
        }
    }

    pub fn is_restricted(&self) -> bool {
        matches!(self, InputSet::Restricted(_))
    }
}
