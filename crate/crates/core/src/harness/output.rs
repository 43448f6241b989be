//! `trace.csv`, `summary.json` and `params.csv`.

use std::fs;
use std::path::{Path, PathBuf};

use super::benchmark::BenchmarkSummary;
use crate::error::{Error, Result};
use crate::fem::ParameterVector;
use crate::optimizer::RunRecord;

pub const TRACE_FILE: &str = "trace.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const PARAMS_FILE: &str = "params.csv";

/// Writes one trace row per algorithm, seed and iteration (1-based).
pub fn write_trace<W: std::io::Write>(records: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["algorithm", "seed", "iteration", "best_cost", "mean_cost"])?;
    for r in records {
        for (i, (best, mean)) in r.best_cost.iter().zip(&r.mean_cost).enumerate() {
            w.serialize((r.algorithm.as_str(), r.seed, i + 1, best, mean))?;
        }
    }
    w.flush().map_err(|e| Error::io(TRACE_FILE, e))?;
    Ok(())
}

pub fn write_params<W: std::io::Write>(summary: &BenchmarkSummary, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["algorithm"];
    header.extend(ParameterVector::NAMES);
    w.write_record(&header)?;
    for s in &summary.algorithms {
        let mut row = vec![s.algorithm.to_string()];
        row.extend(s.mean_parameters.to_array().iter().map(f64::to_string));
        w.write_record(&row)?;
    }
    w.flush().map_err(|e| Error::io(PARAMS_FILE, e))?;
    Ok(())
}

/// Writes the three output files into `out_dir`, creating it if needed.
/// Returns the written paths.
pub fn emit_outputs(summary: &BenchmarkSummary, records: &[RunRecord], out_dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let create = |name: &str| {
        let path = out_dir.join(name);
        fs::File::create(&path).map(|f| (f, path.clone())).map_err(|e| Error::io(path, e))
    };

    let (f, trace) = create(TRACE_FILE)?;
    write_trace(records, std::io::BufWriter::new(f))?;

    let (f, json) = create(SUMMARY_FILE)?;
    serde_json::to_writer_pretty(std::io::BufWriter::new(f), summary)?;

    let (f, params) = create(PARAMS_FILE)?;
    write_params(summary, std::io::BufWriter::new(f))?;

    Ok(vec![trace, json, params])
}
