//! Mean capacity, power, energy efficiency and fairness of the four schemes
//! at one load point.
//!
//! cargo run --release --example compare_schemes -- [excess_users] [trials] [sat_link_gain_db]

use sagin::{run_scheme, SchemeId, SimParams};
use sagin::workload::hotspot_scenario;

fn main() -> sagin::Result<()> {
    let mut args = std::env::args().skip(1);
    let excess: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(400);
    let trials: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let mut params = SimParams::default();
    if let Some(db) = args.next().and_then(|s| s.parse::<f64>().ok()) {
        params.sat_link_gain = sagin::units::db_to_linear(db);
    }

    println!("{excess} excess users, {trials} trials");
    println!("{:<10}{:>14}{:>10}{:>12}{:>10}{:>8}{:>8}", "scheme", "capacity Mb/s", "power W", "EE Mb/s/W", "fairness", "served", "qos!");
    for scheme in SchemeId::ALL {
        let (mut c, mut p, mut ee, mut f, mut s, mut q) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        for t in 0..trials {
            let seed = 42 + t;
            let state = hotspot_scenario(&params, excess, seed)?;
            let o = run_scheme(scheme, &state, &params, seed)?;
            c += o.score.capacity_total;
            p += o.score.power_total;
            ee += o.score.energy_eff;
            f += o.score.fairness;
            s += o.score.served as f64;
            q += o.assoc.qos_shortfall.len() as f64;
        }
        let k = trials as f64;
        println!(
            "{:<10}{:>14.1}{:>10.1}{:>12.3}{:>10.3}{:>8.1}{:>8.1}",
            scheme.name(),
            c / k / 1e6,
            p / k,
            ee / k / 1e6,
            f / k,
            s / k,
            q / k
        );
    }
    Ok(())
}
