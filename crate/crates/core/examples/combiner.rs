//! Direct link, equal-gain and optimal combining on one random cooperative
//! channel, swept over relay transmit power.
//!
//! cargo run --example combiner

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sagin::combining::{combiner_sinr, egc_average_sinr, egc_sinr, max_sinr, optimal_weight, CombinerInput};
use sagin::units::linear_to_db;

fn main() -> sagin::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut draw = |scale: f64| (0..2).map(|_| Complex64::new(rng.gen::<f64>(), rng.gen::<f64>()) * scale).collect::<Vec<_>>();
    let noise = 1e-13;
    let h_direct = draw(2e-8);
    let h_relay = draw(3e-6);
    let hbar = 2e-7;

    println!("{:>8}{:>10}{:>12}{:>12}{:>10}", "p (mW)", "direct", "egc avg", "egc phased", "optimal");
    for mw in [0.0, 1.0, 5.0, 20.0, 50.0, 100.0] {
        let ci = CombinerInput::cooperative(&h_direct, &h_relay, hbar, mw * 1e-3, noise, 0.0, 100.0)?;
        let direct = ci.hop_sinrs()?.gamma_direct;
        let opt = max_sinr(&ci)?;
        assert!((combiner_sinr(&ci, &optimal_weight(&ci))? - opt).abs() <= 1e-9 * opt);
        println!(
            "{mw:>8.0}{:>10.2}{:>12.2}{:>12.2}{:>10.2}",
            linear_to_db(direct),
            linear_to_db(egc_average_sinr(&ci)?),
            linear_to_db(egc_sinr(&ci)?),
            linear_to_db(opt)
        );
    }
    println!("values in dB");
    Ok(())
}
