use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use tfa_core::groebner::{buchberger, common_elements, ideal_equal, GroebnerConfig, Ideal};
use tfa_core::model::{
    check_compartmental, check_nondegenerate_start, InputKind, InputSignal, StructureSpec,
};
use tfa_core::polycore::MonomialOrder;
use tfa_core::sgi::{
    enumerate_solutions, identifiability, SgiConfig, SgiError, Solution, SolutionValue, Verdict,
};
use tfa_core::simcheck::{cross_validate, experiments, simulate, uniform_grid, SimConfig};
use tfa_core::transfer::{derive_transfer, extract_invariants, InvariantVector};
use tfa_core::Rat;

use crate::args::{AnalyzeArgs, GroebnerArgs, InvariantsArgs, SimulateArgs};
use crate::error::CliError;
use crate::load::{groebner_config, load_structure, parse_inputs, parse_theta};
use crate::report::{
    BasisEntry, CandidateEntry, ClassCheck, InvariantSection, OrderingSection, Report,
    SolutionSection, StructureSummary, Tool, TransferSection, ValidationSection, VerdictSection,
};

const START_TRIALS: usize = 3;

struct Stopwatch {
    enabled: bool,
    laps: BTreeMap<String, f64>,
    last: Instant,
}

impl Stopwatch {
    fn new(enabled: bool) -> Self {
        Stopwatch {
            enabled,
            laps: BTreeMap::new(),
            last: Instant::now(),
        }
    }

    fn lap(&mut self, stage: &str) {
        let now = Instant::now();
        self.laps
            .insert(stage.to_string(), (now - self.last).as_secs_f64() * 1e3);
        self.last = now;
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.enabled.then_some(self.laps)
    }
}

/// Writes `json` to `path`, or to stdout for `-`.
fn emit_json(path: &Path, json: &str) -> Result<(), CliError> {
    if path.as_os_str() == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(json.as_bytes())?;
        out.write_all(b"\n")?;
    } else {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn json_to_stdout(path: &Option<std::path::PathBuf>) -> bool {
    path.as_ref().is_some_and(|p| p.as_os_str() == "-")
}

/// Prints human-readable lines to stdout, or to stderr when stdout
/// carries JSON.
struct Console {
    to_stderr: bool,
}

impl Console {
    fn line(&self, text: impl AsRef<str>) {
        if self.to_stderr {
            eprintln!("{}", text.as_ref());
        } else {
            println!("{}", text.as_ref());
        }
    }
}

fn resolve_seed(seed: u64) -> (u64, bool) {
    if seed != 0 {
        return (seed, false);
    }
    loop {
        let s: u64 = rand::random();
        if s != 0 {
            return (s, true);
        }
    }
}

fn parse_order(spec: &StructureSpec, text: &str) -> Result<MonomialOrder, CliError> {
    Ok(MonomialOrder::parse(text, spec.ring())?)
}

pub fn verdict_line(name: &str, v: &Verdict) -> String {
    let size = match v.degree.finite() {
        Some(d) if v.dimension == 0 => format!("degree {d}"),
        _ => format!("dimension {}", v.dimension),
    };
    let gi = if v.globally_identifiable.is_empty() {
        "none".to_string()
    } else {
        v.globally_identifiable.join(", ")
    };
    format!(
        "{name} is {} ({size}); globally identifiable: {gi}",
        v.label()
    )
}

fn solution_line(params: &[String], s: &Solution) -> String {
    let values: Vec<String> = params
        .iter()
        .zip(&s.values)
        .map(|(n, v)| format!("{n}={v}"))
        .collect();
    let feasible = match s.feasible {
        Some(true) => "feasible",
        Some(false) => "infeasible",
        None => "feasibility unknown",
    };
    let mut line = format!("  ({}) {feasible}", values.join(", "));
    if s.is_true_point {
        line.push_str(", true point");
    }
    line
}

/// Exact parameter vector for simulation; interval values use their
/// midpoint.
fn candidate_point(s: &Solution) -> Option<Vec<Rat>> {
    s.values
        .iter()
        .map(|v| match v {
            SolutionValue::Exact(x) => Some(x.clone()),
            SolutionValue::Interval { lo, hi } => Some((lo + hi) / Rat::from_integer(2.into())),
            SolutionValue::Unresolved => None,
        })
        .collect()
}

fn invariant_ideal_bases(
    inv: &InvariantVector,
    orders: &[MonomialOrder],
    config: &GroebnerConfig,
) -> Result<Vec<Ideal>, CliError> {
    if inv.is_empty() {
        return Err(CliError::Degenerate(SgiError::NoInvariants.to_string()));
    }
    orders
        .iter()
        .map(|o| Ok(buchberger(inv.polys(), o.clone(), config)?))
        .collect()
}

fn ordering_section(spec: &StructureSpec, ideals: &[Ideal]) -> Result<OrderingSection, CliError> {
    let bases: Vec<_> = ideals.iter().map(|i| i.basis()).collect::<Result<_, _>>()?;
    let entries = ideals
        .iter()
        .zip(&bases)
        .map(|(i, b)| BasisEntry {
            order: i.order().describe(spec.ring()),
            basis: b.iter().map(|p| p.to_string_with(i.order())).collect(),
            independent_conditions: b.len(),
        })
        .collect();
    let (same_ideal, common) = if ideals.len() == 2 {
        let same = ideal_equal(&ideals[0], &ideals[1])?;
        let common = common_elements(&bases[0], &bases[1])
            .iter()
            .map(|p| p.to_string())
            .collect();
        (Some(same), Some(common))
    } else {
        (None, None)
    };
    Ok(OrderingSection {
        bases: entries,
        same_ideal,
        common_elements: common,
    })
}

fn print_ordering(console: &Console, section: &OrderingSection) {
    for b in &section.bases {
        console.line(&b.order);
        for (i, p) in b.basis.iter().enumerate() {
            console.line(format!("  g{} = {p}", i + 1));
        }
        console.line(format!(
            "  independent conditions: {}",
            b.independent_conditions
        ));
    }
    if let (Some(same), Some(common)) = (section.same_ideal, &section.common_elements) {
        let verdict = if same {
            "same ideal"
        } else {
            "different ideals"
        };
        console.line(format!("{verdict}; {} elements in common", common.len()));
        for p in common {
            console.line(format!("  {p}"));
        }
    }
}

pub fn analyze(args: &AnalyzeArgs) -> Result<(), CliError> {
    let console = Console {
        to_stderr: json_to_stdout(&args.json),
    };
    let mut clock = Stopwatch::new(args.timings);
    let spec = load_structure(&args.model.file)?;
    let inputs = parse_inputs(&args.model.inputs, spec.n_inputs())?;
    let groebner = groebner_config(args.budget.step_budget)?;
    let order = parse_order(&spec, &args.order)?;
    let compare = args
        .compare_order
        .as_deref()
        .map(|o| parse_order(&spec, o))
        .transpose()?;
    let (seed, seed_from_entropy) = resolve_seed(args.seed);
    clock.lap("parse");

    let violations = check_compartmental(&spec);
    let nondegenerate = check_nondegenerate_start(&spec, &inputs, START_TRIALS, seed);
    clock.lap("class_check");

    let td = derive_transfer(&spec);
    clock.lap("transfer");
    let inv = extract_invariants(&td, &inputs);
    clock.lap("invariants");

    let config = SgiConfig {
        seed,
        order: Some(order.clone()),
        groebner,
        max_solution_degree: args.max_solution_degree,
        ..SgiConfig::default()
    };
    let verdict = identifiability(&inv, &spec, &inputs, &config)?;
    clock.lap("classification");

    console.line(verdict_line(spec.name(), &verdict));
    for w in &verdict.warnings {
        eprintln!("warning: {w}");
    }
    if !nondegenerate {
        eprintln!("warning: the start is an equilibrium at the sampled parameters");
    }

    let mut solutions = None;
    let mut validation = None;
    if args.validate {
        let outcome = &verdict.outcomes[0];
        let params = spec.params();
        let enumerated = enumerate_solutions(
            &outcome.system,
            spec.domains(),
            args.max_solution_degree,
            &groebner,
        );
        clock.lap("solutions");
        match enumerated {
            Ok(sols) => {
                console.line(format!(
                    "solutions at seed {}: {} ({} feasible)",
                    outcome.system.seed,
                    sols.len(),
                    sols.iter().filter(|s| s.feasible == Some(true)).count()
                ));
                for s in &sols {
                    console.line(solution_line(params, s));
                }
                let cfg = SimConfig::default();
                let points: Vec<(usize, Vec<Rat>)> = sols
                    .iter()
                    .enumerate()
                    .filter_map(|(i, s)| candidate_point(s).map(|p| (i, p)))
                    .collect();
                let checks = cross_validate(
                    &spec,
                    &outcome.system.theta_star,
                    &points.iter().map(|(_, p)| p.clone()).collect::<Vec<_>>(),
                    &inputs,
                    &cfg,
                )?;
                clock.lap("simulation");
                let candidates: Vec<CandidateEntry> = points
                    .iter()
                    .zip(&checks)
                    .map(|((i, _), c)| CandidateEntry {
                        solution: *i,
                        coincides: c.coincides,
                        max_relative_deviation: c.max_relative_deviation,
                    })
                    .collect();
                let all_coincide = candidates.iter().all(|c| c.coincides);
                let worst = candidates
                    .iter()
                    .map(|c| c.max_relative_deviation)
                    .fold(0.0, f64::max);
                console.line(format!(
                    "simulation: {} of {} candidates coincide with the true output (max relative deviation {worst:e})",
                    candidates.iter().filter(|c| c.coincides).count(),
                    candidates.len()
                ));
                validation = Some(ValidationSection {
                    experiments: experiments(&inputs, spec.n_inputs())
                        .iter()
                        .map(|e| e.iter().map(InputSignal::label).collect())
                        .collect(),
                    t_end: *cfg.t_grid.last().unwrap_or(&0.0),
                    points: cfg.t_grid.len(),
                    tolerance: cfg.tolerance,
                    candidates,
                    all_coincide,
                });
                solutions = Some(SolutionSection::enumerated(
                    outcome.system.seed,
                    params,
                    &sols,
                ));
            }
            Err(
                e @ (SgiError::NotZeroDimensional { .. } | SgiError::DegreeBoundExceeded { .. }),
            ) => {
                console.line(format!("solutions not enumerated: {e}"));
                solutions = Some(SolutionSection::skipped(outcome.system.seed, e.to_string()));
            }
            Err(e) => return Err(e.into()),
        }
    }

    let ordering_experiment = match compare {
        Some(other) => {
            let ideals = invariant_ideal_bases(&inv, &[order, other], &groebner)?;
            let section = ordering_section(&spec, &ideals)?;
            print_ordering(&console, &section);
            clock.lap("ordering_experiment");
            Some(section)
        }
        None => None,
    };

    if let Some(path) = &args.json {
        let report = Report {
            tool: Tool::current(),
            structure: StructureSummary::of(&spec),
            input_set: inputs.clone(),
            compartmental_check: ClassCheck::new(&violations, nondegenerate),
            transfer: TransferSection::of(&td),
            invariants: InvariantSection::of(&inv),
            verdict: VerdictSection::of(&verdict, &spec, seed_from_entropy),
            solutions,
            validation,
            ordering_experiment,
            timings_ms: clock.finish(),
        };
        emit_json(path, &serde_json::to_string_pretty(&report)?)?;
    }
    Ok(())
}

pub fn invariants(args: &InvariantsArgs) -> Result<(), CliError> {
    let console = Console {
        to_stderr: json_to_stdout(&args.json),
    };
    let spec = load_structure(&args.model.file)?;
    let inputs = parse_inputs(&args.model.inputs, spec.n_inputs())?;
    let td = derive_transfer(&spec);
    let inv = extract_invariants(&td, &inputs);
    if inv.is_empty() {
        return Err(CliError::Degenerate(SgiError::NoInvariants.to_string()));
    }
    console.line(format!(
        "{} invariants of {} ({} input set)",
        inv.len(),
        spec.name(),
        inputs.mode_name()
    ));
    for line in inv.to_string().lines() {
        console.line(line);
    }
    for (label, kept) in &inv.duplicates {
        console.line(format!("duplicate: [{label}] equals [{kept}]"));
    }
    for label in &inv.constants {
        console.line(format!("constant: [{label}]"));
    }
    if !td.generically_minimal {
        console.line(
            "note: every entry cancelled a common factor; the structure is not generically minimal",
        );
    }
    if let Some(path) = &args.json {
        emit_json(
            path,
            &serde_json::to_string_pretty(&InvariantSection::of(&inv))?,
        )?;
    }
    Ok(())
}

pub fn groebner(args: &GroebnerArgs) -> Result<(), CliError> {
    let console = Console {
        to_stderr: json_to_stdout(&args.json),
    };
    let spec = load_structure(&args.model.file)?;
    let inputs = parse_inputs(&args.model.inputs, spec.n_inputs())?;
    let config = groebner_config(args.budget.step_budget)?;
    let mut orders = vec![parse_order(&spec, &args.order)?];
    if let Some(o) = &args.compare_order {
        orders.push(parse_order(&spec, o)?);
    }
    let inv = extract_invariants(&derive_transfer(&spec), &inputs);
    let ideals = invariant_ideal_bases(&inv, &orders, &config)?;
    let section = ordering_section(&spec, &ideals)?;
    print_ordering(&console, &section);
    if let Some(path) = &args.json {
        emit_json(path, &serde_json::to_string_pretty(&section)?)?;
    }
    Ok(())
}

pub fn simulate_cmd(args: &SimulateArgs) -> Result<(), CliError> {
    let spec = load_structure(&args.file)?;
    let theta = parse_theta(&args.theta, &spec)?;
    if !(args.t_end.is_finite() && args.t_end > 0.0) || args.points < 2 {
        return Err(CliError::Parse(
            "--t-end must be positive and --points at least 2".into(),
        ));
    }
    let signal = InputSignal::parse(&args.input)?;
    let input = match (spec.n_inputs(), &signal.kind) {
        (_, InputKind::None) => None,
        (0, _) => {
            return Err(CliError::Parse(format!(
                "{} has no input channel for `{}`",
                spec.name(),
                args.input
            )))
        }
        _ => Some(signal),
    };
    let cfg = SimConfig {
        t_grid: uniform_grid(args.t_end, args.points),
        ..SimConfig::default()
    }
    .with_input(input);
    let traj = simulate(&spec, &theta, &cfg)?;
    let csv = traj.to_csv();
    match &args.csv {
        Some(path) => std::fs::write(path, csv)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    Ok(())
}
