//! Numerical output simulation, used to confirm that candidate parameter
//! vectors really produce the same output as the true one.
//!
//! `y(t) = C e^{At} x₀` plus the input response. Non-impulsive catalog
//! inputs are generated by a small linear system appended to the state, so
//! every output sample is a single matrix exponential.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::model::{InputKind, InputSet, InputSignal, StructureSpec};
use crate::polycore::{to_f64, MultiPoly, Rat};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Scale below which outputs are compared absolutely.
pub const ABSOLUTE_FLOOR: f64 = 1e-12;
pub const MASS_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
    #[error("time grid must start at 0 and increase strictly")]
    BadGrid,
    #[error("expected {expected} parameter values, got {got}")]
    ParameterCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub t_grid: Vec<f64>,
    /// Signal applied on every input channel; `None` simulates the free
    /// response.
    pub input: Option<InputSignal>,
    pub tolerance: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            t_grid: uniform_grid(10.0, 201),
            input: None,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl SimConfig {
    pub fn with_input(mut self, input: Option<InputSignal>) -> Self {
        self.input = input;
        self
    }
}

/// `points` samples from 0 to `end` inclusive.
pub fn uniform_grid(end: f64, points: usize) -> Vec<f64> {
    let steps = points.saturating_sub(1).max(1) as f64;
    (0..points).map(|i| end * i as f64 / steps).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub t: Vec<f64>,
    /// `y[i][j]`: output `i` at `t[j]`.
    pub y: Vec<Vec<f64>>,
    /// `x[i][j]`: state `i` at `t[j]`.
    pub x: Vec<Vec<f64>>,
}

impl Trajectory {
    /// `t,y1..yk` with full double precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for i in 0..self.y.len() {
            out.push_str(&format!(",y{}", i + 1));
        }
        out.push('\n');
        for (j, t) in self.t.iter().enumerate() {
            out.push_str(&format!("{t:e}"));
            for series in &self.y {
                out.push_str(&format!(",{:e}", series[j]));
            }
            out.push('\n');
        }
        out
    }

    /// `Σᵢ xᵢ(t)` never grows by more than `slack` between samples.
    pub fn mass_nonincreasing(&self, slack: f64) -> bool {
        let mass: Vec<f64> = (0..self.t.len())
            .map(|j| self.x.iter().map(|s| s[j]).sum())
            .collect();
        mass.windows(2).all(|w| w[1] <= w[0] + slack)
    }
}

/// Input channel, generator matrix, initial generator state, output row.
type GeneratorBlock = (usize, DMatrix<f64>, DVector<f64>, DVector<f64>);

fn numeric(p: &MultiPoly, theta: &[Rat]) -> f64 {
    to_f64(&p.eval_indexed(theta))
}

/// Simulates with `cfg.input` on every channel.
pub fn simulate(
    spec: &StructureSpec,
    theta: &[Rat],
    cfg: &SimConfig,
) -> Result<Trajectory, SimError> {
    let signals = match &cfg.input {
        Some(sig) => vec![sig.clone(); spec.n_inputs()],
        None => Vec::new(),
    };
    simulate_channels(spec, theta, &signals, &cfg.t_grid)
}

/// Simulates with one signal per input channel (an empty list means no
/// input).
pub fn simulate_channels(
    spec: &StructureSpec,
    theta: &[Rat],
    signals: &[InputSignal],
    grid: &[f64],
) -> Result<Trajectory, SimError> {
    if theta.len() != spec.n_params() {
        return Err(SimError::ParameterCount {
            expected: spec.n_params(),
            got: theta.len(),
        });
    }
    if grid.first() != Some(&0.0) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SimError::BadGrid);
    }
    let n = spec.n_states();
    let b = DMatrix::from_fn(n, spec.n_inputs(), |i, j| {
        numeric(spec.b().get(i, j), theta)
    });
    let mut x0 = DVector::from_fn(n, |i, _| numeric(&spec.x0()[i], theta));

    // Generator blocks (matrix G, initial state w₀, output row h) per
    // non-impulsive channel.
    let mut blocks: Vec<GeneratorBlock> = Vec::new();
    for (j, sig) in signals.iter().enumerate() {
        match &sig.kind {
            InputKind::Impulse => x0 += b.column(j),
            InputKind::None => {}
            InputKind::Step => blocks.push((
                j,
                DMatrix::zeros(1, 1),
                DVector::from_element(1, 1.0),
                DVector::from_element(1, 1.0),
            )),
            InputKind::Ramp => blocks.push((
                j,
                DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]),
                DVector::from_vec(vec![0.0, 1.0]),
                DVector::from_vec(vec![1.0, 0.0]),
            )),
            InputKind::Exponential(a) => blocks.push((
                j,
                DMatrix::from_element(1, 1, to_f64(a)),
                DVector::from_element(1, 1.0),
                DVector::from_element(1, 1.0),
            )),
        }
    }
    let extra: usize = blocks.iter().map(|blk| blk.1.nrows()).sum();
    let size = n + extra;
    let mut m = DMatrix::zeros(size, size);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = numeric(spec.a().get(i, j), theta);
        }
    }
    let mut z0 = DVector::zeros(size);
    z0.rows_mut(0, n).copy_from(&x0);
    let mut offset = n;
    for (j, g, w0, h) in &blocks {
        let k = g.nrows();
        m.view_mut((offset, offset), (k, k)).copy_from(g);
        // x' += B[:, j] · (h · w)
        let coupling = b.column(*j) * h.transpose();
        m.view_mut((0, offset), (n, k)).copy_from(&coupling);
        z0.rows_mut(offset, k).copy_from(w0);
        offset += k;
    }

    let c = DMatrix::from_fn(spec.n_outputs(), n, |i, j| {
        numeric(spec.c().get(i, j), theta)
    });
    let mut y = vec![Vec::with_capacity(grid.len()); spec.n_outputs()];
    let mut x = vec![Vec::with_capacity(grid.len()); n];
    for &t in grid {
        let z = (&m * t).exp() * &z0;
        let state = z.rows(0, n);
        if state.iter().any(|v| !v.is_finite()) {
            return Err(SimError::NonFinite { t });
        }
        let out = &c * state;
        for (i, v) in out.iter().enumerate() {
            y[i].push(*v);
        }
        for (i, v) in state.iter().enumerate() {
            x[i].push(*v);
        }
    }
    Ok(Trajectory {
        t: grid.to_vec(),
        y,
        x,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateCheck {
    pub coincides: bool,
    /// Largest `|y′ − y|` relative to the magnitude of the true output
    /// series, over all experiments.
    pub max_relative_deviation: f64,
}

/// Input experiments available under an input set: the free response plus
/// impulse and step on every channel for the full set, the given signals
/// for a restricted one.
pub fn experiments(inputs: &InputSet, channels: usize) -> Vec<Vec<InputSignal>> {
    match inputs {
        InputSet::Uncontrolled => vec![Vec::new()],
        InputSet::Full => vec![
            Vec::new(),
            vec![InputSignal::impulse(); channels],
            vec![InputSignal::step(); channels],
        ],
        InputSet::Restricted(signals) => vec![signals.clone()],
    }
}

/// Relative deviation between two output sets, each series scaled by the
/// largest magnitude of the reference series.
pub fn relative_deviation(reference: &Trajectory, other: &Trajectory) -> f64 {
    reference
        .y
        .iter()
        .zip(&other.y)
        .map(|(r, o)| {
            let scale = r
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()))
                .max(ABSOLUTE_FLOOR);
            r.iter()
                .zip(o)
                .fold(0.0f64, |m, (a, b)| m.max((a - b).abs() / scale))
        })
        .fold(0.0, f64::max)
}

pub fn cross_validate(
    spec: &StructureSpec,
    theta_star: &[Rat],
    candidates: &[Vec<Rat>],
    inputs: &InputSet,
    cfg: &SimConfig,
) -> Result<Vec<CandidateCheck>, SimError> {
    let runs = experiments(inputs, spec.n_inputs());
    let references: Vec<Trajectory> = runs
        .iter()
        .map(|sig| simulate_channels(spec, theta_star, sig, &cfg.t_grid))
        .collect::<Result<_, _>>()?;
    candidates
        .iter()
        .map(|cand| {
            let mut worst = 0.0f64;
            for (sig, reference) in runs.iter().zip(&references) {
                let traj = simulate_channels(spec, cand, sig, &cfg.t_grid)?;
                worst = worst.max(relative_deviation(reference, &traj));
            }
            Ok(CandidateCheck {
                coincides: worst <= cfg.tolerance,
                max_relative_deviation: worst,
            })
        })
        .collect()
}

/// `∫₀^T e^{−st} y(t) dt` of the free response (impulse response when
/// `impulse` is set) by composite Simpson's rule on `intervals` (even)
/// subintervals.
pub fn laplace_numeric(
    spec: &StructureSpec,
    theta: &[Rat],
    s: f64,
    impulse: bool,
    t_end: f64,
    intervals: usize,
) -> Result<Vec<f64>, SimError> {
    let intervals = intervals + intervals % 2;
    let grid = uniform_grid(t_end, intervals + 1);
    let signals = if impulse {
        vec![InputSignal::impulse(); spec.n_inputs()]
    } else {
        Vec::new()
    };
    let traj = simulate_channels(spec, theta, &signals, &grid)?;
    let h = t_end / intervals as f64;
    Ok(traj
        .y
        .iter()
        .map(|series| {
            let mut acc = 0.0;
            for (j, v) in series.iter().enumerate() {
                let w = if j == 0 || j == intervals {
                    1.0
                } else if j % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                acc += w * v * (-s * grid[j]).exp();
            }
            acc * h / 3.0
        })
        .collect())
}
