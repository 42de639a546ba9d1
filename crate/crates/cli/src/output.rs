//! CSV and JSON emission of trajectories with per-node diagnostics.

use std::io::Write;

use mosaic_core::geometry::{evaluate_frame, SpheroidalChart};
use mosaic_core::scenarios::{diagnostics, Observer, TransportProblem, Trajectory};
use mosaic_core::MosaicError;
use serde::Serialize;

use crate::config::RunConfig;

pub fn header(rank: usize) -> Vec<String> {
    let mut h: Vec<String> = ["t", "y1", "y2"].map(String::from).to_vec();
    match rank {
        1 => h.extend(["r1", "r2"].map(String::from)),
        _ => h.extend(["q11", "q12", "q21", "q22"].map(String::from)),
    }
    h.extend(["norm", "phi1", "phi2"].map(String::from));
    if rank == 2 {
        h.extend(["trace", "asym", "eig1", "eig2"].map(String::from));
    }
    h
}

/// One row per (sample time, node); `None` marks an undefined diagnostic.
pub fn rows(p: &TransportProblem<f64>, tr: &Trajectory<f64>) -> Result<Vec<Vec<Option<f64>>>, MosaicError> {
    let chart = match tr.observer {
        Observer::Lagrangian => p.scenario.lagrangian_chart(),
        Observer::Eulerian => p.scenario.eulerian()?.0,
    };
    let rank = p.field.rank();
    let mut out = Vec::with_capacity(tr.times.len() * tr.nodes.len());
    for (k, &t) in tr.times.iter().enumerate() {
        for (n, y) in tr.nodes.iter().enumerate() {
            out.push(row(&chart, rank, t, *y, tr.values[k][n].data())?);
        }
    }
    Ok(out)
}

fn row(chart: &SpheroidalChart<f64>, rank: usize, t: f64, y: [f64; 2], data: &[f64]) -> Result<Vec<Option<f64>>, MosaicError> {
    let f = evaluate_frame(chart, t, y)?;
    let d = diagnostics(&f, &mosaic_core::tensor::Tensor::from_vec(2, rank, data.to_vec()))?;
    let mut r = vec![Some(t), Some(y[0]), Some(y[1])];
    r.extend(data.iter().map(|&x| Some(x)));
    r.push(Some(d.norm));
    r.push(d.phi.map(|p| p[0]));
    r.push(d.phi.map(|p| p[1]));
    if rank == 2 {
        r.push(d.trace);
        r.push(d.asym);
        r.push(d.eigenvalues.map(|e| e[0]));
        r.push(d.eigenvalues.map(|e| e[1]));
    }
    Ok(r)
}

pub fn write_csv(w: impl Write, header: &[String], rows: &[Vec<Option<f64>>]) -> std::io::Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(header)?;
    for r in rows {
        wr.write_record(r.iter().map(|x| x.map_or_else(String::new, |v| format!("{v:.16e}"))))?;
    }
    wr.flush()
}

#[derive(Serialize)]
struct JsonOutput<'a> {
    config: &'a RunConfig,
    columns: &'a [String],
    rows: &'a [Vec<Option<f64>>],
}

pub fn write_json(mut w: impl Write, config: &RunConfig, header: &[String], rows: &[Vec<Option<f64>>]) -> std::io::Result<()> {
    serde_json::to_writer(&mut w, &JsonOutput { config, columns: header, rows })?;
    writeln!(w)
}
