//! Optimal elevation angle and the resulting relay footprint across altitudes.
//!
//! cargo run --example coverage

use sagin::amud::coverage::CoverageDesign;
use sagin::channel::A2GParams;
use sagin::link::{hover_power, HoverModel};

fn main() -> sagin::Result<()> {
    let a2g = A2GParams::urban();
    let hover = HoverModel::default();
    println!("{:>8}{:>12}{:>12}{:>12}{:>12}", "h (m)", "theta deg", "R (m)", "d_max (m)", "hover W");
    for h in [50.0, 100.0, 150.0, 200.0, 300.0] {
        let d = CoverageDesign::new(&a2g, h, 119.0)?;
        println!(
            "{h:>8.0}{:>12.3}{:>12.2}{:>12.2}{:>12.2}",
            d.theta_opt.to_degrees(),
            d.radius,
            d.d_max,
            hover_power(h, &hover)
        );
    }
    Ok(())
}
