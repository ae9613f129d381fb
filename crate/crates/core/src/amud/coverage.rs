//! Relay footprint geometry: the path-loss-optimal elevation angle and the
//! coverage radius and LoS distance it implies.

use std::f64::consts::{FRAC_PI_2, LN_10, PI};

use crate::channel::A2GParams;
use crate::error::{Error, Result};
use crate::numeric::bisect;

/// Residual whose root is the elevation angle minimising the footprint-edge
/// path loss. `A` is `eta_los - eta_nlos`.
pub fn elevation_residual(theta: f64, p: &A2GParams) -> f64 {
    let big_a = p.eta_los - p.eta_nlos;
    let e = (-p.b * (theta.to_degrees() - p.a)).exp();
    PI * theta.tan() / (9.0 * LN_10) + p.a * p.b * big_a * e / (p.a * e + 1.0).powi(2)
}

/// Root of [`elevation_residual`] in `(0, pi/2)`.
pub fn optimal_elevation_angle(p: &A2GParams) -> Result<f64> {
    let eps = 1e-9;
    bisect(|t| elevation_residual(t, p), eps, FRAC_PI_2 - eps, 1e-12)
}

/// `h / tan(theta)`.
pub fn coverage_radius(h: f64, theta_opt: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::invalid("h", "altitude must be positive"));
    }
    if !(theta_opt > 0.0 && theta_opt < FRAC_PI_2) {
        return Err(Error::invalid("theta_opt", "must lie in (0, pi/2)"));
    }
    Ok(h / theta_opt.tan())
}

/// `R_max / cos(theta)`.
pub fn max_los_distance(radius_max: f64, theta_opt: f64) -> Result<f64> {
    if !(theta_opt >= 0.0 && theta_opt < FRAC_PI_2) {
        return Err(Error::invalid("theta_opt", "must lie in [0, pi/2)"));
    }
    Ok(radius_max / theta_opt.cos())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageDesign {
    pub theta_opt: f64,
    pub radius: f64,
    pub radius_max: f64,
    pub d_max: f64,
    pub h_max: f64,
    pub pl_max: f64,
}

impl CoverageDesign {
    /// Footprint for relays flying at `altitude`, which is also the ceiling.
    pub fn new(p: &A2GParams, altitude: f64, pl_max: f64) -> Result<Self> {
        let theta_opt = optimal_elevation_angle(p)?;
        let radius = coverage_radius(altitude, theta_opt)?;
        Ok(Self {
            theta_opt,
            radius,
            radius_max: radius,
            d_max: max_los_distance(radius, theta_opt)?,
            h_max: altitude,
            pl_max,
        })
    }
}
