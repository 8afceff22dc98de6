//! CSV and run-manifest files.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use backhaul_core::montecarlo::{Axis, SweepRow, SweepSpec};
use backhaul_core::{Error, Metric, Strategy};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CSV_HEADER: &str = "axis,strategy,estimate,std_error,ci_low,ci_high,trials,flags";

/// Fixed six-digit notation, scientific below 1e-3.
pub fn format_number(x: f64) -> String {
    if x != 0.0 && x.abs() < 1e-3 {
        format!("{x:.6e}")
    } else {
        format!("{x:.6}")
    }
}

pub fn csv_text(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let e = &r.estimate;
        let flags = if e.low_confidence() { "low-confidence" } else { "" };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            format_number(r.axis_value),
            r.strategy,
            format_number(e.value),
            format_number(e.std_error),
            format_number(e.ci95.0),
            format_number(e.ci95.1),
            e.trials,
            flags
        ));
    }
    out
}

/// Writes `contents` to a sibling temporary file and renames it into place,
/// so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `<out>.csv` and `<out>.manifest.json`.
pub fn output_paths(out: &Path) -> (PathBuf, PathBuf) {
    let with = |ext: &str| {
        let mut s = out.as_os_str().to_owned();
        s.push(ext);
        PathBuf::from(s)
    };
    (with(".csv"), with(".manifest.json"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub axis: String,
    pub points: Vec<f64>,
    pub trials_per_point: u64,
    pub seed: u64,
    pub strategies: Vec<String>,
    pub metric: String,
    pub trace_length: u64,
}

impl SweepRecord {
    pub fn from_spec(spec: &SweepSpec) -> SweepRecord {
        SweepRecord {
            axis: spec.axis.name().to_string(),
            points: spec.points.clone(),
            trials_per_point: spec.trials_per_point,
            seed: spec.seed,
            strategies: spec.strategies.iter().map(|s| s.to_string()).collect(),
            metric: spec.metric.to_string(),
            trace_length: spec.trace_length,
        }
    }

    pub fn to_spec(&self) -> Result<SweepSpec, Error> {
        Ok(SweepSpec {
            axis: self.axis.parse::<Axis>()?,
            points: self.points.clone(),
            trials_per_point: self.trials_per_point,
            seed: self.seed,
            strategies: self
                .strategies
                .iter()
                .map(|s| s.parse::<Strategy>())
                .collect::<Result<_, _>>()?,
            metric: self.metric.parse::<Metric>()?,
            trace_length: self.trace_length,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointTiming {
    pub axis_value: f64,
    pub seconds: f64,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// SHA-256 of `config_text`.
    pub scenario_digest: String,
    /// Fully resolved scenario, figure overrides included.
    pub config_text: String,
    /// Configuration file the run started from, if any.
    pub config_path: Option<String>,
    pub sweep: SweepRecord,
    pub seed: u64,
    pub workers: Option<usize>,
    pub point_durations: Vec<PointTiming>,
    pub csv: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_switch_to_scientific_below_one_thousandth() {
        assert_eq!(format_number(0.0), "0.000000");
        assert_eq!(format_number(0.5), "0.500000");
        assert_eq!(format_number(1e-3), "0.001000");
        assert_eq!(format_number(2.5e-4), "2.500000e-4");
        assert_eq!(format_number(-3e-5), "-3.000000e-5");
        assert_eq!(format_number(400.0), "400.000000");
    }

    #[test]
    fn sweep_record_round_trips() {
        let spec = SweepSpec {
            axis: Axis::Key("fso.cn2".into()),
            points: vec![1e-14, 1e-13, 1e-12],
            trials_per_point: 10,
            seed: 3,
            strategies: vec!["hard@400".parse().unwrap(), "mode6".parse().unwrap()],
            metric: Metric::SwitchRate,
            trace_length: 50,
        };
        let rec = SweepRecord::from_spec(&spec);
        let json = serde_json::to_string(&rec).unwrap();
        let back: SweepRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_spec().unwrap(), spec);
    }

    #[test]
    fn paths_append_extensions() {
        let (c, m) = output_paths(Path::new("out/fig2.v1"));
        assert_eq!(c, PathBuf::from("out/fig2.v1.csv"));
        assert_eq!(m, PathBuf::from("out/fig2.v1.manifest.json"));
    }
}
