//! Seeded Monte Carlo sweeps over the four benchmark schemes, with CSV output.

pub mod config;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::amud::{run_scheme, SchemeId};
use crate::error::{Error, Result};
use crate::params::SimParams;
use crate::units::dbm_to_watts;
use crate::workload::hotspot_scenario;

pub use config::Config;

/// Environment variable capping the sweep worker pool.
pub const THREADS_ENV: &str = "SAGIN_SIM_THREADS";

pub const CSV_HEADER: &str = "axis,axis_value,scheme,seed,capacity_bps,power_w,ee_bps_per_w,fairness,served,dropped";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    /// Hotspot users beyond the GBS cap.
    ExcessUsers,
    /// Satellite transmit power, dBm.
    LeoTxPower,
    /// Satellite altitude, km.
    LeoAltitude,
    /// Excess users, light-load range.
    FairnessUsers,
}

impl SweepAxis {
    pub const ALL: [SweepAxis; 4] =
        [SweepAxis::ExcessUsers, SweepAxis::LeoTxPower, SweepAxis::LeoAltitude, SweepAxis::FairnessUsers];

    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::ExcessUsers => "excess-users",
            SweepAxis::LeoTxPower => "leo-power",
            SweepAxis::LeoAltitude => "leo-altitude",
            SweepAxis::FairnessUsers => "fairness",
        }
    }

    /// Preset axis points.
    pub fn default_values(self) -> Vec<f64> {
        match self {
            SweepAxis::ExcessUsers => (1..=10).map(|k| 40.0 * k as f64).collect(),
            SweepAxis::LeoTxPower => vec![30.0, 40.0, 50.0, 60.0],
            SweepAxis::LeoAltitude => vec![600.0, 800.0, 1000.0, 1200.0, 1400.0],
            SweepAxis::FairnessUsers => (1..=10).map(|k| 10.0 * k as f64).collect(),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SweepAxis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::config("sweep", format!("unknown sweep `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub schemes: Vec<SchemeId>,
    pub trials: usize,
    pub base_seed: u64,
    /// Excess users on the power and altitude axes.
    pub fixed_excess: usize,
}

impl SweepSpec {
    /// Preset points, all schemes, 20 trials.
    pub fn preset(axis: SweepAxis, base_seed: u64) -> Self {
        Self { axis, values: axis.default_values(), schemes: SchemeId::ALL.to_vec(), trials: 20, base_seed, fixed_excess: 400 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() || self.schemes.is_empty() {
            return Err(Error::config("sweep", "needs at least one axis value and one scheme"));
        }
        if self.trials == 0 {
            return Err(Error::config("trials", "must be at least 1"));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::config("sweep", "axis values must be finite"));
        }
        if matches!(self.axis, SweepAxis::ExcessUsers | SweepAxis::FairnessUsers)
            && self.values.iter().any(|v| *v < 0.0 || v.fract() != 0.0)
        {
            return Err(Error::config("sweep", "user counts must be non-negative integers"));
        }
        Ok(())
    }

    /// Parameters and excess-user count at one axis point.
    pub fn point(&self, base: &SimParams, value: f64) -> Result<(SimParams, usize)> {
        let mut p = base.clone();
        let excess = match self.axis {
            SweepAxis::ExcessUsers | SweepAxis::FairnessUsers => value as usize,
            SweepAxis::LeoTxPower => {
                p.sat_tx_power = dbm_to_watts(value);
                self.fixed_excess
            }
            SweepAxis::LeoAltitude => {
                p.sat_altitude = value * 1e3;
                self.fixed_excess
            }
        };
        p.validate()?;
        Ok((p, excess))
    }
}

/// One CSV line. Summary rows carry no seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub axis: String,
    pub axis_value: f64,
    pub scheme: String,
    pub seed: Option<u64>,
    pub capacity_bps: f64,
    pub power_w: f64,
    pub ee_bps_per_w: f64,
    pub fairness: f64,
    pub served: f64,
    pub dropped: f64,
}

impl ResultRow {
    pub fn is_summary(&self) -> bool {
        self.seed.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Ordered by (axis point, scheme, trial).
    pub rows: Vec<ResultRow>,
    /// Means over trials, ordered by (axis point, scheme).
    pub summary: Vec<ResultRow>,
}

impl SweepResult {
    /// Trial rows followed by summary rows.
    pub fn all_rows(&self) -> Vec<ResultRow> {
        self.rows.iter().chain(&self.summary).cloned().collect()
    }
}

fn worker_count() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse::<usize>().ok().filter(|n| *n > 0)
}

fn run_one(spec: &SweepSpec, base: &SimParams, value: f64, scheme: SchemeId, trial: usize) -> Result<ResultRow> {
    let (p, excess) = spec.point(base, value)?;
    let seed = spec.base_seed.wrapping_add(trial as u64);
    let state = hotspot_scenario(&p, excess, seed)?;
    let out = run_scheme(scheme, &state, &p, seed)?;
    let s = &out.score;
    Ok(ResultRow {
        axis: spec.axis.name().into(),
        axis_value: value,
        scheme: scheme.name().into(),
        seed: Some(seed),
        capacity_bps: s.capacity_total,
        power_w: s.power_total,
        ee_bps_per_w: s.energy_eff,
        fairness: s.fairness,
        served: s.served as f64,
        dropped: s.dropped as f64,
    })
}

fn mean_row(group: &[ResultRow]) -> ResultRow {
    let n = group.len() as f64;
    let mean = |f: fn(&ResultRow) -> f64| group.iter().map(f).sum::<f64>() / n;
    ResultRow {
        axis: group[0].axis.clone(),
        axis_value: group[0].axis_value,
        scheme: group[0].scheme.clone(),
        seed: None,
        capacity_bps: mean(|r| r.capacity_bps),
        power_w: mean(|r| r.power_w),
        ee_bps_per_w: mean(|r| r.ee_bps_per_w),
        fairness: mean(|r| r.fairness),
        served: mean(|r| r.served),
        dropped: mean(|r| r.dropped),
    }
}

/// Runs every (axis point, scheme, trial) in parallel. Output order does not
/// depend on the worker count.
pub fn run_sweep(spec: &SweepSpec, params: &SimParams) -> Result<SweepResult> {
    spec.validate()?;
    params.validate()?;
    let jobs: Vec<(f64, SchemeId, usize)> = spec
        .values
        .iter()
        .flat_map(|&v| spec.schemes.iter().flat_map(move |&s| (0..spec.trials).map(move |t| (v, s, t))))
        .collect();
    let work = || jobs.par_iter().map(|&(v, s, t)| run_one(spec, params, v, s, t)).collect::<Result<Vec<_>>>();
    let rows = match worker_count() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::config(THREADS_ENV, e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let summary = rows.chunks(spec.trials).map(mean_row).collect();
    Ok(SweepResult { rows, summary })
}

fn csv_err(path: &Path) -> impl Fn(csv::Error) -> Error + '_ {
    move |e| Error::Csv { path: path.to_path_buf(), source: e }
}

/// Writes `rows` under the standard header.
pub fn write_csv_to<W: std::io::Write>(rows: &[ResultRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    write_csv_to(rows, std::io::BufWriter::new(file)).map_err(csv_err(path))
}

pub fn read_csv(path: &Path) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_path(path).map_err(csv_err(path))?;
    r.deserialize().collect::<std::result::Result<_, _>>().map_err(csv_err(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: f64, seed: Option<u64>) -> ResultRow {
        ResultRow {
            axis: "excess-users".into(),
            axis_value: v,
            scheme: "amud".into(),
            seed,
            capacity_bps: 1.234_567_890_123e10,
            power_w: 1226.5,
            ee_bps_per_w: 0.1 + 0.2,
            fairness: 0.79,
            served: 487.0,
            dropped: 13.5,
        }
    }

    #[test]
    fn axis_names_round_trip() {
        for a in SweepAxis::ALL {
            assert_eq!(a.name().parse::<SweepAxis>().unwrap(), a);
        }
        assert!("warp".parse::<SweepAxis>().unwrap_err().is_config());
        assert_eq!(SweepAxis::LeoTxPower.default_values(), vec![30.0, 40.0, 50.0, 60.0]);
        assert_eq!(SweepAxis::ExcessUsers.default_values().len(), 10);
    }

    #[test]
    fn csv_shapes() {
        let mut buf = Vec::new();
        write_csv_to(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{CSV_HEADER}\n"));
        let mut buf = Vec::new();
        write_csv_to(&[row(40.0, Some(42))], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn csv_round_trip() {
        let dir = std::env::temp_dir().join(format!("sagin-csv-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("rows.csv");
        let rows = vec![row(40.0, Some(42)), row(80.0, Some(u64::MAX)), row(80.0, None)];
        write_csv(&rows, &path).unwrap();
        assert_eq!(read_csv(&path).unwrap(), rows);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn spec_validation() {
        let mut s = SweepSpec::preset(SweepAxis::ExcessUsers, 1);
        s.validate().unwrap();
        s.trials = 0;
        assert!(s.validate().is_err());
        let mut s = SweepSpec::preset(SweepAxis::FairnessUsers, 1);
        s.values = vec![10.5];
        assert!(s.validate().is_err());
    }

    #[test]
    fn point_applies_axis() {
        let base = SimParams::default();
        let s = SweepSpec::preset(SweepAxis::LeoAltitude, 0);
        let (p, n) = s.point(&base, 600.0).unwrap();
        assert_eq!((p.sat_altitude, n), (600e3, 400));
        let s = SweepSpec::preset(SweepAxis::LeoTxPower, 0);
        let (p, _) = s.point(&base, 30.0).unwrap();
        assert!((p.sat_tx_power - 1.0).abs() < 1e-12);
    }

    #[test]
    fn small_sweep_counts_and_means() {
        let spec = SweepSpec {
            axis: SweepAxis::FairnessUsers,
            values: vec![10.0, 20.0],
            schemes: vec![SchemeId::GbsOnly, SchemeId::LeoGbs],
            trials: 2,
            base_seed: 7,
            fixed_excess: 0,
        };
        let res = run_sweep(&spec, &SimParams::default()).unwrap();
        assert_eq!(res.rows.len(), 8);
        assert_eq!(res.summary.len(), 4);
        assert_eq!(res.rows[1].seed, Some(8));
        let m = (res.rows[0].capacity_bps + res.rows[1].capacity_bps) / 2.0;
        assert!((res.summary[0].capacity_bps - m).abs() <= 1e-12 * m.abs());
        assert_eq!(res.summary[1].scheme, "leo-gbs");
    }
}
