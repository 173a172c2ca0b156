use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::run::RunResult;
use super::scale::ScaleRow;
use super::sweep::LayerSummary;
use crate::ansatz::Algorithm;
use crate::bits::fmt_f64;
use crate::error::{Error, Result};

pub const SUMMARY_HEADER: [&str; 12] = [
    "alg", "layer", "seed", "T", "final_loss", "p_optimal", "argmax_match", "n1_actual", "n2_actual",
    "n1_paper", "n2_paper", "np",
];

pub fn trace_id(alg: Algorithm, layer: usize, seed: u64) -> String {
    format!("{alg}_L{layer}_s{seed}")
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_owned(),
        source,
    }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |source| Error::Csv {
        path: path.to_owned(),
        source,
    }
}

fn opt_f64(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn opt_bool(x: Option<bool>) -> String {
    x.map(|b| b.to_string()).unwrap_or_default()
}

/// `summary.csv` rows in `(alg, layer, seed)` order.
pub fn summary_rows(results: &[RunResult]) -> Vec<Vec<String>> {
    let mut sorted: Vec<&RunResult> = results.iter().collect();
    sorted.sort_by_key(|r| (r.algorithm, r.layer, r.seed));
    sorted
        .into_iter()
        .map(|r| {
            vec![
                r.algorithm.to_string(),
                r.layer.to_string(),
                r.seed.to_string(),
                r.converged_t.to_string(),
                fmt_f64(r.final_loss),
                opt_f64(r.p_optimal),
                opt_bool(r.argmax_match),
                r.gate_counts.singles.to_string(),
                r.gate_counts.doubles.to_string(),
                r.paper_model.singles.to_string(),
                r.paper_model.doubles.to_string(),
                r.n_params.to_string(),
            ]
        })
        .collect()
}

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err(path))?;
    w.write_record(header).map_err(csv_err(path))?;
    for row in rows {
        w.write_record(&row).map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// Writes `runs.jsonl`, `summary.csv` and `traces/<id>.csv` under `dir`.
pub fn emit_report(results: &[RunResult], dir: &Path) -> Result<()> {
    let traces = dir.join("traces");
    fs::create_dir_all(&traces).map_err(io_err(&traces))?;

    let mut sorted: Vec<&RunResult> = results.iter().collect();
    sorted.sort_by_key(|r| (r.algorithm, r.layer, r.seed));

    let jsonl = dir.join("runs.jsonl");
    let mut out = BufWriter::new(File::create(&jsonl).map_err(io_err(&jsonl))?);
    for r in &sorted {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n").map_err(io_err(&jsonl))?;
    }
    out.flush().map_err(io_err(&jsonl))?;

    write_csv(&dir.join("summary.csv"), &SUMMARY_HEADER, summary_rows(results))?;

    for r in &sorted {
        let path = dir.join(&r.trace_path);
        let rows = r
            .trace
            .losses
            .iter()
            .zip(&r.trace.grad_norms)
            .enumerate()
            .map(|(i, (l, g))| vec![i.to_string(), fmt_f64(*l), fmt_f64(*g)]);
        write_csv(&path, &["iteration", "loss", "grad_norm"], rows)?;
    }
    Ok(())
}

pub fn emit_layer_summary(summary: &[LayerSummary], path: &Path) -> Result<()> {
    let header = [
        "alg", "layer", "runs", "best_loss", "median_loss", "mean_p_optimal", "argmax_successes",
        "median_T", "np", "n2",
    ];
    let rows = summary.iter().map(|s| {
        vec![
            s.algorithm.to_string(),
            s.layer.to_string(),
            s.runs.to_string(),
            fmt_f64(s.best_loss),
            fmt_f64(s.median_loss),
            opt_f64(s.mean_p_optimal),
            s.argmax_successes.map(|k| k.to_string()).unwrap_or_default(),
            s.median_t.to_string(),
            s.n_params.to_string(),
            s.n2.to_string(),
        ]
    });
    write_csv(path, &header, rows)
}

pub fn emit_scale_table(rows: &[ScaleRow], path: &Path) -> Result<()> {
    let header = [
        "alg", "n_qubits", "n_edges", "layer", "n1", "n2", "n1_paper", "n2_paper", "np", "T",
        "classical_cost", "median_final_loss", "oracle_value", "mean_p_optimal",
    ];
    let rows = rows.iter().map(|r| {
        vec![
            r.algorithm.to_string(),
            r.n_qubits.to_string(),
            r.n_edges.to_string(),
            r.layer.to_string(),
            r.n1.to_string(),
            r.n2.to_string(),
            r.n1_paper.to_string(),
            r.n2_paper.to_string(),
            r.n_params.to_string(),
            r.t.to_string(),
            r.classical_cost.to_string(),
            fmt_f64(r.median_final_loss),
            opt_f64(r.oracle_value),
            opt_f64(r.mean_p_optimal),
        ]
    });
    write_csv(path, &header, rows)
}

pub fn read_runs(path: &Path) -> Result<Vec<RunResult>> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut runs = Vec::new();
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let run = serde_json::from_str(&line).map_err(|e| Error::Parse {
            path: path.to_owned(),
            line: k + 1,
            column: e.column(),
            message: e.to_string(),
        })?;
        runs.push(run);
    }
    Ok(runs)
}
