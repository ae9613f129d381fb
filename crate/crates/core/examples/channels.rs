//! Air-to-ground path loss against elevation, and sample statistics of the
//! two shadowed-Rician presets.
//!
//! cargo run --example channels

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sagin::channel::{los_probability, path_loss, sample_shadowed_rician, A2GParams, SRFParams};

fn main() -> sagin::Result<()> {
    let a2g = A2GParams::urban();
    let h = 100.0;
    println!("relay at {h} m");
    println!("{:>10}{:>10}{:>10}{:>12}", "elev deg", "d (m)", "P_LoS", "PL avg dB");
    for deg in [10.0, 20.0, 30.0, 42.44, 60.0, 80.0] {
        let theta = f64::to_radians(deg);
        let d = h / theta.sin();
        let pl = path_loss(d, theta, &a2g)?;
        println!("{deg:>10.2}{d:>10.1}{:>10.3}{:>12.2}", los_probability(theta, &a2g)?, pl.avg);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 200_000;
    for (name, srf) in [("average", SRFParams::average_shadowing()), ("heavy", SRFParams::heavy_shadowing())] {
        let mean = (0..n).map(|_| sample_shadowed_rician(&srf, &mut rng).power()).sum::<f64>() / n as f64;
        println!("{name:>8} shadowing: E|g|^2 sampled {mean:.4}, expected {:.4}", srf.mean_power());
    }
    Ok(())
}
