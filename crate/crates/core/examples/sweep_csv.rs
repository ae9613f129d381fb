//! Runs a preset sweep and writes per-trial and mean rows to a CSV file.
//!
//! cargo run --release --example sweep_csv -- [excess-users|leo-power|leo-altitude|fairness] [trials] [out.csv]

use std::path::PathBuf;

use sagin::experiments::{read_csv, run_sweep, write_csv, SweepAxis, SweepSpec};
use sagin::SimParams;

fn main() -> sagin::Result<()> {
    let mut args = std::env::args().skip(1);
    let axis: SweepAxis = args.next().as_deref().unwrap_or("leo-power").parse()?;
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let out = PathBuf::from(args.next().unwrap_or_else(|| format!("{axis}.csv")));

    let spec = SweepSpec { trials, ..SweepSpec::preset(axis, 42) };
    let res = run_sweep(&spec, &SimParams::default())?;
    write_csv(&res.all_rows(), &out)?;
    assert_eq!(read_csv(&out)?, res.all_rows());

    println!("{} rows -> {}", res.rows.len() + res.summary.len(), out.display());
    println!("{:>10}{:>10}{:>14}{:>12}", axis.name(), "scheme", "EE Mb/s/W", "fairness");
    for r in &res.summary {
        println!("{:>10}{:>10}{:>14.3}{:>12.3}", r.axis_value, r.scheme, r.ee_bps_per_w / 1e6, r.fairness);
    }
    Ok(())
}
