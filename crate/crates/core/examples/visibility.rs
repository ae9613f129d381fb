//! Visibility windows of a LEO satellite over one orbit, per altitude.
//!
//! cargo run --example visibility

use sagin::scenario::{satellite_visibility, Satellite};

fn main() -> sagin::Result<()> {
    for km in [600.0, 1000.0, 1400.0] {
        let sat = Satellite::new(km * 1e3, 10f64.to_radians(), 0.0, 100.0)?;
        let step = 1.0;
        let samples = (sat.orbital_period / step) as usize;
        let visible = (0..samples).filter(|k| satellite_visibility(&sat, *k as f64 * step) == 1).count();
        println!(
            "{km:>6.0} km: period {:>7.1} s, visible {:>6.1} s per orbit, overhead range {:>8.1} km, edge range {:>8.1} km",
            sat.orbital_period,
            visible as f64 * step,
            sat.range_to(0.0, 0.0) / 1e3,
            sat.min_elevation_slant_range / 1e3
        );
    }
    Ok(())
}
