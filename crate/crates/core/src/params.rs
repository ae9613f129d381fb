//! Typed simulation parameters in SI units.

use serde::{Deserialize, Serialize};

use crate::channel::{A2GGainModel, A2GParams, SRFParams};
use crate::combining::EgcRule;
use crate::error::{Error, Result};
use crate::link::{HoverModel, NoiseModel};
use crate::scenario::{Area, Point2};
use crate::units::{db_to_linear, dbm_to_watts};

/// Which excess users the relay schemes move onto the cooperative path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CdGate {
    /// Every excess user inside a relay footprint (load cap permitting).
    #[default]
    AllCovered,
    /// Only covered users whose direct satellite SINR is below threshold.
    BelowThreshold,
}

/// Everything a scheme run needs. Powers in W, lengths in m, rates in Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct SimParams {
    pub a2g: A2GParams,
    pub a2g_gain_model: A2GGainModel,
    /// Draw Rayleigh small-scale fading on the relay to user link instead of unit gain.
    pub a2g_rayleigh: bool,
    pub noise: NoiseModel,
    pub path_loss_exp: f64,
    pub antennas: usize,

    pub area: Area,
    pub gbs_position: Point2,
    pub gbs_max_users: usize,
    pub gbs_tx_power: f64,
    pub gbs_min_distance: f64,

    pub num_uavs: usize,
    pub uav_max_users: usize,
    pub uav_altitude: f64,
    pub uav_p_max: f64,
    pub hover: HoverModel,
    pub max_path_loss_db: f64,

    pub sat_altitude: f64,
    pub sat_min_elevation: f64,
    pub sat_polar_angle: f64,
    pub sat_tx_power: f64,
    /// Extra link gain applied to both satellite hops (linear).
    pub sat_link_gain: f64,
    pub srf_uav: SRFParams,
    pub srf_user: SRFParams,

    pub gamma_th: f64,
    pub fairness_threshold: f64,
    pub density_threshold: f64,
    pub egc_rule: EgcRule,
    pub cd_gate: CdGate,

    pub power_tol: f64,
    pub power_max_iter: usize,

    pub num_slots: usize,
    pub slot_duration: f64,
    pub slot_index: usize,
    pub mobility_step: f64,

    /// Background (GBS) users are spread over this disk around the GBS.
    pub gbs_user_radius: f64,
    /// Hotspot centres keep at least this distance from the GBS.
    pub hotspot_min_gbs_distance: f64,
    pub total_users: usize,
}

impl Default for SimParams {
    fn default() -> Self {
        let bandwidth = 20e6;
        let gbs_max_users = 100;
        let psd = dbm_to_watts(-174.0);
        Self {
            a2g: A2GParams::urban(),
            a2g_gain_model: A2GGainModel::PathlossOnly,
            a2g_rayleigh: false,
            noise: NoiseModel {
                psd,
                bandwidth_uav: bandwidth,
                bandwidth_sat_uav: bandwidth,
                bandwidth_sat_user: bandwidth,
                bandwidth_gbs: bandwidth / gbs_max_users as f64,
            },
            path_loss_exp: 2.0,
            antennas: 2,
            area: Area { width: 1000.0, height: 1000.0 },
            gbs_position: Point2::new(500.0, 500.0),
            gbs_max_users,
            gbs_tx_power: dbm_to_watts(40.0),
            gbs_min_distance: 1.0,
            num_uavs: 2,
            uav_max_users: 200,
            uav_altitude: 100.0,
            uav_p_max: dbm_to_watts(20.0),
            hover: HoverModel::default(),
            max_path_loss_db: 119.0,
            sat_altitude: 1_000_000.0,
            sat_min_elevation: 10f64.to_radians(),
            sat_polar_angle: 0.0,
            sat_tx_power: dbm_to_watts(50.0),
            sat_link_gain: db_to_linear(-21.5),
            srf_uav: SRFParams::average_shadowing(),
            srf_user: SRFParams::heavy_shadowing(),
            gamma_th: db_to_linear(3.0),
            fairness_threshold: 0.9,
            density_threshold: 400e-6,
            egc_rule: EgcRule::SinrAverage,
            cd_gate: CdGate::AllCovered,
            power_tol: 1e-6,
            power_max_iter: 200,
            num_slots: 1,
            slot_duration: 1.0,
            slot_index: 0,
            mobility_step: 0.0,
            gbs_user_radius: 250.0,
            hotspot_min_gbs_distance: 300.0,
            total_users: 400,
        }
    }
}

impl SimParams {
    /// Thermal noise on the relay to user link, `B * psd`.
    pub fn uav_noise_power(&self) -> f64 {
        self.noise.uav()
    }

    pub fn validate(&self) -> Result<()> {
        self.noise.validated()?;
        let positive = [
            ("path_loss_exp", self.path_loss_exp),
            ("gbs_tx_power", self.gbs_tx_power),
            ("gbs_min_distance", self.gbs_min_distance),
            ("uav_altitude", self.uav_altitude),
            ("uav_p_max", self.uav_p_max),
            ("sat_altitude", self.sat_altitude),
            ("sat_tx_power", self.sat_tx_power),
            ("sat_link_gain", self.sat_link_gain),
            ("gamma_th", self.gamma_th),
            ("density_threshold", self.density_threshold),
            ("power_tol", self.power_tol),
            ("slot_duration", self.slot_duration),
            ("gbs_user_radius", self.gbs_user_radius),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, format!("{v} must be positive")));
            }
        }
        if !(1..=8).contains(&self.antennas) {
            return Err(Error::invalid("antennas", "must be between 1 and 8"));
        }
        if self.num_slots == 0 || self.slot_index >= self.num_slots {
            return Err(Error::invalid("slot_index", "must lie in [0, num_slots)"));
        }
        if !(0.0..=1.0).contains(&self.fairness_threshold) {
            return Err(Error::invalid("fairness_threshold", "must lie in [0, 1]"));
        }
        if !self.area.contains(&self.gbs_position) {
            return Err(Error::invalid("gbs_position", "outside the service area"));
        }
        if self.power_max_iter == 0 {
            return Err(Error::invalid("power_max_iter", "must be at least 1"));
        }
        if self.mobility_step < 0.0 || self.hotspot_min_gbs_distance < 0.0 {
            return Err(Error::invalid("geometry", "distances must be non-negative"));
        }
        Ok(())
    }
}
