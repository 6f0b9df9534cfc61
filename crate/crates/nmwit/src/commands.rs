//! Subcommand bodies. Each returns a finished [`Table`]; writing it out is
//! left to the caller.

use nmwit_core::entanglement::{
    detect_entanglement, region_boundaries, werner, MapFamilyPoint, PhaseGrid, PhaseRow, RegionBoundary,
};
use nmwit_core::lindblad::{LindbladGenerator, SmallTimeMap};
use nmwit_core::witness::{build_witness, evaluate, proposition1_suite, WitnessVerdict};
use nmwit_core::{choi_of, classify, classify_by_witness, optimal_decomposition, Error};
use rayon::prelude::*;

use crate::config::{EntangleConfig, Prop1Config, ScenarioConfig};
use crate::error::CliError;
use crate::formats::WitnessExport;
use crate::output::Table;

fn snapshot(generator: &LindbladGenerator, t: f64, epsilon: f64) -> Result<SmallTimeMap, CliError> {
    Ok(SmallTimeMap::new(generator.clone(), t, epsilon)?)
}

pub fn divisibility(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let generator = cfg.generator()?;
    let mut table = Table::new(&["t", "lambda_min", "trace_norm_excess", "markovian"]);
    for &t in &cfg.t_grid {
        let verdict = classify(&choi_of(&snapshot(&generator, t, cfg.epsilon)?)?, cfg.tolerance);
        table.push(vec![
            t.into(),
            verdict.minimum_eigenvalue.into(),
            verdict.trace_norm_excess.into(),
            verdict.markovian.into(),
        ]);
    }
    Ok(table)
}

pub fn spa(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let generator = cfg.generator()?;
    let mut table = Table::new(&["t", "lambda_minus", "p_star", "omega", "nu"]);
    for &t in &cfg.t_grid {
        let dec = optimal_decomposition(&snapshot(&generator, t, cfg.epsilon)?)?;
        table.push(vec![
            t.into(),
            dec.lambda_minus.into(),
            dec.p_star.into(),
            dec.omega.into(),
            dec.nu.into(),
        ]);
    }
    Ok(table)
}

/// Witness table plus one exportable witness per instant.
pub fn witness(cfg: &ScenarioConfig) -> Result<(Table, Vec<WitnessExport>), CliError> {
    let generator = cfg.generator()?;
    let mut table = Table::new(&["t", "omega", "nu", "witness_value", "detected"]);
    let mut exports = Vec::with_capacity(cfg.t_grid.len());
    for &t in &cfg.t_grid {
        let map = snapshot(&generator, t, cfg.epsilon)?;
        let w = build_witness(&map).map_err(|e| match e {
            Error::DegenerateMinimum { .. } => CliError::Degenerate { t, source: e },
            other => other.into(),
        })?;
        let choi = choi_of(&map)?;
        let value = evaluate(&w, &choi)?;
        let detected = classify_by_witness(&w, &choi, cfg.tolerance)? == WitnessVerdict::NonMarkovianDetected;
        table.push(vec![t.into(), w.omega.into(), w.nu.into(), value.into(), detected.into()]);
        exports.push(WitnessExport::from(&w));
    }
    Ok((table, exports))
}

/// Detection of a Werner state by a single map point. `p` defaults to the
/// singlet.
pub fn entangle_point(cfg: &EntangleConfig) -> Result<Table, CliError> {
    let pt = MapFamilyPoint::new(cfg.gamma1, cfg.gamma2);
    let p = cfg.p.unwrap_or(1.0);
    let state = werner(p)?;
    let detection = detect_entanglement(&state.matrix, &pt, cfg.tolerance).map_err(|e| match e {
        Error::MapNotPositive { gamma1, gamma2 } => CliError::NotPositive { gamma1, gamma2 },
        other => other.into(),
    })?;
    let mut table = Table::new(&["gamma1", "gamma2", "p", "lambda_min", "detected"]);
    table.push(vec![
        cfg.gamma1.into(),
        cfg.gamma2.into(),
        p.into(),
        detection.min_eigenvalue.into(),
        detection.detected.into(),
    ]);
    Ok(table)
}

pub fn phase_grid(cfg: &EntangleConfig) -> PhaseGrid {
    PhaseGrid {
        gamma1: cfg.gamma1_axis.into(),
        gamma2: cfg.gamma2_axis.into(),
        samples: cfg.samples,
        seed: cfg.seed,
        tolerance: cfg.tolerance,
    }
}

/// Evaluates every grid point in parallel; rows come back in grid order.
pub fn phase_rows(grid: &PhaseGrid) -> Result<Vec<PhaseRow>, CliError> {
    let inner = grid.gamma2.steps;
    Ok((0..grid.len())
        .into_par_iter()
        .map(|k| grid.point(k / inner, k % inner))
        .collect::<Result<Vec<_>, _>>()?)
}

pub fn entangle_scan(cfg: &EntangleConfig) -> Result<(Table, Vec<RegionBoundary>), CliError> {
    let rows = phase_rows(&phase_grid(cfg))?;
    let mut table = Table::new(&["gamma1", "gamma2", "positive", "cp", "werner_threshold"]);
    for row in &rows {
        table.push(vec![
            row.gamma1.into(),
            row.gamma2.into(),
            row.positive.into(),
            row.cp.into(),
            row.werner_threshold.into(),
        ]);
    }
    Ok((table, region_boundaries(&rows)))
}

pub fn prop1(cfg: &Prop1Config) -> Result<Table, CliError> {
    let residual = proposition1_suite(cfg.draws, cfg.seed)?;
    let mut table = Table::new(&["draws", "max_residual"]);
    table.push(vec![(cfg.draws as f64).into(), residual.into()]);
    Ok(table)
}
