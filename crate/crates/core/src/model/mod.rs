//! LTI model structures: `ẋ = A(θ)x + B(θ)u`, `y = C(θ)x`, `x(0) = x₀(θ)`.
//!
//! A [`StructureSpec`] is immutable once built; every constructor path goes
//! through [`StructureBuilder::build`], which enforces the dimension and
//! parameter invariants. Model files are read by [`parse_structure`].

mod check;
mod input;
mod parse;

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::polycore::{MultiPoly, PolyMatrix, Rat, Ring};

pub use check::{
    check_compartmental, check_nondegenerate_start, check_positive, Severity, Violation,
};
pub use input::{InputKind, InputSet, InputSignal};
pub use parse::parse_structure;

/// Name reserved for the Laplace variable.
pub const LAPLACE_VAR: &str = "s";

/// Bundled example structures.
pub mod bundled {
    /// Uncontrolled three-compartment structure, output from compartment 1.
    pub const S0: &str = include_str!("../../models/s0.model");
    /// The same structure with an input into compartment 3.
    pub const S1: &str = include_str!("../../models/s1.model");
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: dimension mismatch: {message}")]
    DimensionMismatch { line: usize, message: String },
    #[error("line {line}, column {column}: undeclared parameter `{name}`")]
    UndeclaredParameter {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("invalid parameter list: {0}")]
    InvalidParameter(String),
    #[error("structure violates the {class} class: {}", .violations.join("; "))]
    ClassViolation {
        class: StructureClass,
        violations: Vec<String>,
    },
    #[error("invalid input set: {0}")]
    InvalidInputSet(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureClass {
    GeneralLti,
    Positive,
    Compartmental,
}

impl StructureClass {
    pub fn name(self) -> &'static str {
        match self {
            StructureClass::GeneralLti => "general-lti",
            StructureClass::Positive => "positive",
            StructureClass::Compartmental => "compartmental",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "general-lti" | "general" | "lti" => Some(StructureClass::GeneralLti),
            "positive" => Some(StructureClass::Positive),
            "compartmental" => Some(StructureClass::Compartmental),
            _ => None,
        }
    }
}

impl std::fmt::Display for StructureClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Where a parameter is allowed to range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ParamDomain {
    #[default]
    Positive,
    NonNegative,
    Real,
}

impl ParamDomain {
    pub fn name(self) -> &'static str {
        match self {
            ParamDomain::Positive => "positive",
            ParamDomain::NonNegative => "nonnegative",
            ParamDomain::Real => "real",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "positive" => Some(ParamDomain::Positive),
            "nonnegative" => Some(ParamDomain::NonNegative),
            "real" => Some(ParamDomain::Real),
            _ => None,
        }
    }

    pub fn contains(self, v: &Rat) -> bool {
        use num_traits::Signed;
        match self {
            ParamDomain::Positive => v.is_positive(),
            ParamDomain::NonNegative => !v.is_negative(),
            ParamDomain::Real => true,
        }
    }

    /// Random value with numerator and denominator uniform in `[1, 10⁴]`,
    /// negated with probability ½ for real parameters.
    pub fn sample<R: Rng>(self, rng: &mut R) -> Rat {
        let v = Rat::new(
            rng.random_range(1..=10_000i64).into(),
            rng.random_range(1..=10_000i64).into(),
        );
        if self == ParamDomain::Real && rng.random_bool(0.5) {
            -v
        } else {
            v
        }
    }
}

/// A parsed and validated model structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureSpec {
    name: String,
    ring: Arc<Ring>,
    domains: Vec<ParamDomain>,
    class: StructureClass,
    a: PolyMatrix,
    b: PolyMatrix,
    c: PolyMatrix,
    x0: Vec<MultiPoly>,
}

impl StructureSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[String] {
        self.ring.vars()
    }

    /// Ring of the parameters, in declaration order.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn n_params(&self) -> usize {
        self.ring.len()
    }

    pub fn n_states(&self) -> usize {
        self.a.rows()
    }

    pub fn n_inputs(&self) -> usize {
        self.b.cols()
    }

    pub fn n_outputs(&self) -> usize {
        self.c.rows()
    }

    pub fn class(&self) -> StructureClass {
        self.class
    }

    pub fn domains(&self) -> &[ParamDomain] {
        &self.domains
    }

    pub fn domain_of(&self, param: &str) -> Option<ParamDomain> {
        self.ring.index_of(param).map(|i| self.domains[i])
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }

    pub fn c(&self) -> &PolyMatrix {
        &self.c
    }

    pub fn x0(&self) -> &[MultiPoly] {
        &self.x0
    }

    /// Copy with a different declared class and no class validation; used
    /// to inspect structures that would be rejected on parse.
    pub fn with_class_unchecked(&self, class: StructureClass) -> StructureSpec {
        StructureSpec {
            class,
            ..self.clone()
        }
    }

    /// Random point of the declared parameter domain.
    pub fn sample_parameters<R: Rng>(&self, rng: &mut R) -> Vec<Rat> {
        self.domains.iter().map(|d| d.sample(rng)).collect()
    }

    /// Model-file text that parses back to an identical structure.
    pub fn to_model_text(&self) -> String {
        parse::print_structure(self)
    }
}

/// Incremental construction of a [`StructureSpec`].
#[derive(Debug, Clone)]
pub struct StructureBuilder {
    name: String,
    ring: Arc<Ring>,
    domains: Vec<ParamDomain>,
    class: StructureClass,
    a: PolyMatrix,
    b: PolyMatrix,
    c: PolyMatrix,
    x0: Vec<MultiPoly>,
}

impl StructureBuilder {
    pub fn new<S: AsRef<str>>(
        name: &str,
        params: &[S],
        states: usize,
        inputs: usize,
        outputs: usize,
    ) -> Result<Self, ModelError> {
        let params: Vec<String> = params.iter().map(|p| p.as_ref().to_string()).collect();
        for p in &params {
            validate_param_name(p)?;
        }
        if states == 0 {
            return Err(ModelError::DimensionMismatch {
                line: 0,
                message: "a structure needs at least one state".into(),
            });
        }
        let ring = Ring::new(params).map_err(|e| ModelError::InvalidParameter(e.to_string()))?;
        Ok(StructureBuilder {
            name: name.to_string(),
            domains: vec![ParamDomain::Positive; ring.len()],
            class: StructureClass::GeneralLti,
            a: PolyMatrix::zeros(&ring, states, states),
            b: PolyMatrix::zeros(&ring, states, inputs),
            c: PolyMatrix::zeros(&ring, outputs, states),
            x0: vec![MultiPoly::zero(&ring); states],
            ring,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn class(mut self, class: StructureClass) -> Self {
        self.class = class;
        self
    }

    pub fn set_class(&mut self, class: StructureClass) {
        self.class = class;
    }

    pub fn set_domain(&mut self, param: &str, domain: ParamDomain) -> Result<(), ModelError> {
        let i = self
            .ring
            .index_of(param)
            .ok_or_else(|| ModelError::InvalidParameter(format!("unknown parameter `{param}`")))?;
        self.domains[i] = domain;
        Ok(())
    }

    fn checked(&self, p: MultiPoly) -> Result<MultiPoly, ModelError> {
        p.embed(&self.ring).map_err(|e| match e {
            crate::polycore::PolyError::UnknownVariable(name) => ModelError::UndeclaredParameter {
                line: 0,
                column: 0,
                name,
            },
            other => ModelError::InvalidParameter(other.to_string()),
        })
    }

    /// Sets `A[i][j]` (0-based).
    pub fn set_a(&mut self, i: usize, j: usize, p: MultiPoly) -> Result<(), ModelError> {
        bounds("A", i, j, self.a.rows(), self.a.cols())?;
        let p = self.checked(p)?;
        self.a.set(i, j, p);
        Ok(())
    }

    pub fn set_b(&mut self, i: usize, j: usize, p: MultiPoly) -> Result<(), ModelError> {
        bounds("B", i, j, self.b.rows(), self.b.cols())?;
        let p = self.checked(p)?;
        self.b.set(i, j, p);
        Ok(())
    }

    pub fn set_c(&mut self, i: usize, j: usize, p: MultiPoly) -> Result<(), ModelError> {
        bounds("C", i, j, self.c.rows(), self.c.cols())?;
        let p = self.checked(p)?;
        self.c.set(i, j, p);
        Ok(())
    }

    pub fn set_x0(&mut self, i: usize, p: MultiPoly) -> Result<(), ModelError> {
        bounds("x0", i, 0, self.x0.len(), 1)?;
        self.x0[i] = self.checked(p)?;
        Ok(())
    }

    /// Parses `text` in the parameter ring and stores it.
    pub fn parse_entry(&self, text: &str) -> Result<MultiPoly, crate::polycore::PolyError> {
        MultiPoly::parse(text, &self.ring)
    }

    /// Validates the declared class and freezes the structure.
    pub fn build(self) -> Result<StructureSpec, ModelError> {
        let spec = StructureSpec {
            name: self.name,
            ring: self.ring,
            domains: self.domains,
            class: self.class,
            a: self.a,
            b: self.b,
            c: self.c,
            x0: self.x0,
        };
        let violations = match spec.class {
            StructureClass::GeneralLti => Vec::new(),
            StructureClass::Positive => check_positive(&spec),
            StructureClass::Compartmental => check_compartmental(&spec),
        };
        let definite: Vec<String> = violations
            .iter()
            .filter(|v| v.severity == Severity::Definite)
            .map(|v| v.to_string())
            .collect();
        if !definite.is_empty() {
            return Err(ModelError::ClassViolation {
                class: spec.class,
                violations: definite,
            });
        }
        Ok(spec)
    }
}

fn bounds(what: &str, i: usize, j: usize, rows: usize, cols: usize) -> Result<(), ModelError> {
    if i >= rows || j >= cols {
        return Err(ModelError::DimensionMismatch {
            line: 0,
            message: format!(
                "{what} entry ({}, {}) lies outside its {rows}×{cols} shape",
                i + 1,
                j + 1
            ),
        });
    }
    Ok(())
}

fn validate_param_name(p: &str) -> Result<(), ModelError> {
    let mut chars = p.chars();
    let ok_start = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    if !ok_start || !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(ModelError::InvalidParameter(format!(
            "`{p}` is not a valid parameter name"
        )));
    }
    if p == LAPLACE_VAR {
        return Err(ModelError::InvalidParameter(format!(
            "`{LAPLACE_VAR}` is reserved for the Laplace variable"
        )));
    }
    Ok(())
}
