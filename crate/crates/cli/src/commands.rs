use std::fs;
use std::io::Write;
use std::path::Path;

use esq_core::bounds::{self, classical_extension, eigen_ensemble, squashed_objective, PURITY_TOL};
use esq_core::entropy::{
    check_strong_subadditivity, cmi_chain, conditional_mutual_information, subsystem_entropy,
};
use esq_core::{
    sweep, BoundReport, DensityMatrix, ExtensionState, FamilySpec, Grid, Method, Options,
    PartyGrouping, SystemLayout,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{
    BoundArgs, CheckArgs, Cli, Command, EntropyArgs, FamilyArgs, SourceArgs, SweepArgs,
    ThresholdArgs, UpperArgs,
};
use crate::error::{CliError, CliResult};
use crate::output::{crossing_lines, num, sweep_csv, sweep_svg};
use crate::statefile::StateFile;

/// Runs one parsed command, writing human-readable results to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    let opts = Options {
        base: cli.log_base,
        max_dim: cli.max_dim,
    };
    match &cli.command {
        Command::Bound(a) => cmd_bound(a, &opts, out),
        Command::Sweep(a) => cmd_sweep(a, &opts, out),
        Command::Threshold(a) => cmd_threshold(a, &opts, out),
        Command::Upper(a) => cmd_upper(a, &opts, out),
        Command::Entropy(a) => cmd_entropy(a, &opts, out),
        Command::Check(a) => cmd_check(a, &opts, out),
    }
}

fn spec_from(
    family: esq_core::Family,
    n: Option<usize>,
    p: f64,
    seed: u64,
    local_dim: usize,
    rank: usize,
) -> FamilySpec {
    let mut spec = FamilySpec::new(family);
    if let Some(n) = n {
        spec.n_parties = n;
    }
    spec.p = p;
    spec.seed = seed;
    spec.local_dim = local_dim;
    spec.rank = rank;
    spec
}

fn family_spec(a: &FamilyArgs) -> FamilySpec {
    spec_from(a.family, a.n, 0.0, a.seed, a.local_dim, a.rank)
}

/// Loads or builds the input state.
pub fn resolve_source(
    src: &SourceArgs,
    opts: &Options,
) -> CliResult<(DensityMatrix, SystemLayout, Option<FamilySpec>)> {
    match (&src.file, src.family) {
        (Some(path), _) => {
            let file = StateFile::load(path)?;
            let layout = SystemLayout::new(file.dims.clone())?;
            layout.check_guard(opts.max_dim)?;
            let (rho, layout) = file.to_state()?;
            Ok((rho, layout, file.family))
        }
        (None, Some(family)) => {
            let spec = spec_from(family, src.n, src.p, src.seed, src.local_dim, src.rank);
            let (rho, layout) = spec.build(opts.max_dim)?;
            Ok((rho, layout, Some(spec)))
        }
        (None, None) => Err(CliError::Input("pass --file PATH or --family NAME".into())),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("cannot serialize output: {e}")))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn verdict(report: &BoundReport) -> &'static str {
    if report.certifies_entanglement() {
        "entangled"
    } else {
        "inconclusive"
    }
}

#[derive(Serialize)]
struct BoundOutput<'a> {
    #[serde(flatten)]
    report: &'a BoundReport,
    verdict: &'static str,
}

fn cmd_bound(a: &BoundArgs, opts: &Options, out: &mut dyn Write) -> CliResult<()> {
    let (rho, layout, family) = resolve_source(&a.source, opts)?;
    if let Some(path) = &a.save_state {
        let mut file = StateFile::from_density(&rho, &layout);
        file.family = family;
        file.save(path)?;
    }
    let report = a.method.evaluate(&rho, &layout, opts)?;
    if a.json {
        return write_json(
            out,
            &BoundOutput {
                report: &report,
                verdict: verdict(&report),
            },
        );
    }
    let dims: Vec<String> = layout.dims().iter().map(|d| d.to_string()).collect();
    writeln!(out, "method: {}", report.method)?;
    writeln!(out, "dims: {}", dims.join(","))?;
    for (subset, s) in &report.entropies {
        writeln!(out, "S({subset}) = {}", num(*s))?;
    }
    for (i, c) in report.candidates.iter().enumerate() {
        writeln!(out, "candidate[{i}] = {}", num(*c))?;
    }
    writeln!(out, "value = {}", num(report.value))?;
    writeln!(out, "verdict: {}", verdict(&report))?;
    Ok(())
}

fn cmd_sweep(a: &SweepArgs, opts: &Options, out: &mut dyn Write) -> CliResult<()> {
    let grid: Grid = a.grid.parse()?;
    let mut methods = a.methods.clone();
    methods.sort();
    methods.dedup();
    let result = sweep::sweep(&family_spec(&a.family), &methods, &grid, opts)?;
    let csv = sweep_csv(&result);
    match &a.out {
        Some(path) => {
            write_file(path, &csv)?;
            for line in crossing_lines(&result) {
                writeln!(out, "{line}")?;
            }
        }
        None => out.write_all(csv.as_bytes())?,
    }
    if let Some(path) = &a.svg {
        write_file(path, &sweep_svg(&result))?;
    }
    Ok(())
}

/// Parses `lo:hi`.
pub fn parse_bracket(s: &str) -> CliResult<(f64, f64)> {
    let bad = || CliError::Input(format!("bracket must be lo:hi, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn cmd_threshold(a: &ThresholdArgs, opts: &Options, out: &mut dyn Write) -> CliResult<()> {
    let (lo, hi) = parse_bracket(&a.bracket)?;
    let t = sweep::threshold(&family_spec(&a.family), a.method, lo, hi, a.tol, opts)?;
    if a.json {
        return write_json(out, &t);
    }
    writeln!(out, "method: {}", t.method)?;
    writeln!(out, "p_star = {}", num(t.p_star))?;
    writeln!(out, "width = {}", num(t.width))?;
    writeln!(out, "iterations = {}", t.iterations)?;
    writeln!(out, "direction: {}", t.direction.name())?;
    Ok(())
}

/// Best available lower bound for the layout, if any applies.
fn best_lower(
    rho: &DensityMatrix,
    layout: &SystemLayout,
    opts: &Options,
) -> CliResult<Option<BoundReport>> {
    let method = match layout.parties() {
        3 => Method::Lemma1,
        n if n > 3 => Method::Lemma3,
        _ => return Ok(None),
    };
    Ok(Some(method.evaluate(rho, layout, opts)?))
}

fn cmd_upper(a: &UpperArgs, opts: &Options, out: &mut dyn Write) -> CliResult<()> {
    let (rho, layout, _) = resolve_source(&a.source, opts)?;
    let ext = match (&a.ext, a.eigen_ensemble) {
        (Some(path), _) => {
            let file = StateFile::load(path)?;
            let e_index = file
                .e_index
                .ok_or_else(|| CliError::Input("extension file needs \"e_index\"".into()))?;
            let (sigma, ext_layout) = file.to_state()?;
            ExtensionState::new(sigma, ext_layout, e_index)?
        }
        (None, true) => classical_extension(&eigen_ensemble(&rho), &layout)?,
        (None, false) => {
            return Err(CliError::Input(
                "pass --ext FILE or --eigen-ensemble".into(),
            ))
        }
    };
    let upper = squashed_objective(&ext, Some(&rho), opts)?;
    writeln!(out, "upper = {}", num(upper))?;
    match best_lower(&rho, &layout, opts)? {
        Some(lower) => {
            writeln!(out, "lower ({}) = {}", lower.method, num(lower.value))?;
            writeln!(out, "gap = {}", num(upper - lower.value))?;
        }
        None => writeln!(out, "lower: none for {} parties", layout.parties())?,
    }
    if rho.purity() >= 1.0 - PURITY_TOL && layout.dims().iter().all(|&d| d >= 2) {
        let exact = bounds::pure_state_squashed(&rho, &layout, opts)?;
        writeln!(out, "exact (pure state) = {}", num(exact))?;
    }
    Ok(())
}

fn cmd_entropy(a: &EntropyArgs, opts: &Options, out: &mut dyn Write) -> CliResult<()> {
    let (rho, layout, _) = resolve_source(&a.source, opts)?;
    let subset = match &a.subset {
        Some(s) => layout.normalize_subset(s)?,
        None => (0..layout.parties()).collect(),
    };
    let s = subsystem_entropy(&rho, &layout, &subset, opts.base)?;
    writeln!(out, "S({}) = {}", bounds::subset_key(&subset), num(s))?;
    Ok(())
}

/// Minimum CMI and worst chain-rule deviation over seeded random 3-qubit states.
pub fn ssa_trials(trials: usize, seed: u64, opts: &Options) -> CliResult<(f64, f64)> {
    let layout = SystemLayout::qubits(3)?;
    let roles = [([0], [1], [2]), ([0], [2], [1]), ([1], [2], [0])];
    let per_trial: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| -> CliResult<(f64, f64)> {
            let rho =
                esq_core::states::random_mixed(&layout, 1 + t % 8, seed.wrapping_add(t as u64))?;
            let mut min_cmi = f64::INFINITY;
            for (a, b, e) in &roles {
                let v = check_strong_subadditivity(&rho, &layout, a, b, e, opts.base)?;
                min_cmi = min_cmi.min(v);
            }
            let g = PartyGrouping::singletons(0..2).given(vec![2])?;
            let g3 = PartyGrouping::singletons(0..3);
            let dev = (cmi_chain(&rho, &layout, &g, opts.base)?
                - conditional_mutual_information(&rho, &layout, &g, opts.base)?)
            .abs()
            .max(
                (cmi_chain(&rho, &layout, &g3, opts.base)?
                    - conditional_mutual_information(&rho, &layout, &g3, opts.base)?)
                .abs(),
            );
            Ok((min_cmi, dev))
        })
        .collect::<CliResult<_>>()?;
    Ok(per_trial
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(m, d), &(a, b)| {
            (m.min(a), d.max(b))
        }))
}

fn cmd_check(a: &CheckArgs, opts: &Options, out: &mut dyn Write) -> CliResult<()> {
    if !a.ssa {
        return Err(CliError::Input("nothing to check: pass --ssa".into()));
    }
    if a.trials == 0 {
        return Err(CliError::Input("--trials must be positive".into()));
    }
    let (min_cmi, max_dev) = ssa_trials(a.trials, a.seed, opts)?;
    let pass = min_cmi >= -1e-9 && max_dev <= 1e-9;
    writeln!(out, "ssa: trials = {}, seed = {}", a.trials, a.seed)?;
    writeln!(out, "min CMI = {}", num(min_cmi))?;
    writeln!(out, "max |chain - direct| = {}", num(max_dev))?;
    writeln!(out, "result: {}", if pass { "pass" } else { "fail" })?;
    if pass {
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!(
            "strong subadditivity check failed: min CMI {min_cmi:e}, chain deviation {max_dev:e}"
        )))
    }
}
