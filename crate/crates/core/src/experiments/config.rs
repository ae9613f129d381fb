//! TOML configuration. Every key has a default; unknown keys are rejected.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channel::{A2GGainModel, A2GParams, SrfPreset};
use crate::combining::EgcRule;
use crate::error::{Error, Result};
use crate::link::{HoverModel, NoiseModel};
use crate::params::{CdGate, SimParams};
use crate::scenario::{Area, Point2};
use crate::units::{db_to_linear, dbm_to_watts};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelSection {
    pub a: f64,
    pub b: f64,
    pub eta_los_db: f64,
    pub eta_nlos_db: f64,
    pub carrier_freq_hz: f64,
    pub path_loss_exp: f64,
    pub noise_psd_dbm_hz: f64,
    pub a2g_gain_model: A2GGainModel,
    pub a2g_rayleigh: bool,
    pub antennas: usize,
    pub srf_uav: SrfPreset,
    pub srf_user: SrfPreset,
    pub egc_rule: EgcRule,
}

impl Default for ChannelSection {
    fn default() -> Self {
        Self {
            a: 9.61,
            b: 0.16,
            eta_los_db: 1.0,
            eta_nlos_db: 20.0,
            carrier_freq_hz: 2.4e9,
            path_loss_exp: 2.0,
            noise_psd_dbm_hz: -174.0,
            a2g_gain_model: A2GGainModel::PathlossOnly,
            a2g_rayleigh: false,
            antennas: 2,
            srf_uav: SrfPreset::Average,
            srf_user: SrfPreset::Heavy,
            egc_rule: EgcRule::SinrAverage,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetworkSection {
    pub area_width_m: f64,
    pub area_height_m: f64,
    pub gbs_x_m: f64,
    pub gbs_y_m: f64,
    pub bandwidth_hz: f64,
    pub gbs_max_users: usize,
    pub gbs_tx_power_dbm: f64,
    /// Split the GBS bandwidth evenly over its user cap.
    pub gbs_bandwidth_shared: bool,
    pub gbs_min_distance_m: f64,
    pub total_users: usize,
    pub gbs_user_radius_m: f64,
    pub hotspot_min_gbs_distance_m: f64,
    pub density_threshold_per_km2: f64,
}

impl Default for NetworkSection {
    fn default() -> Self {
        Self {
            area_width_m: 1000.0,
            area_height_m: 1000.0,
            gbs_x_m: 500.0,
            gbs_y_m: 500.0,
            bandwidth_hz: 20e6,
            gbs_max_users: 100,
            gbs_tx_power_dbm: 40.0,
            gbs_bandwidth_shared: true,
            gbs_min_distance_m: 1.0,
            total_users: 400,
            gbs_user_radius_m: 250.0,
            hotspot_min_gbs_distance_m: 300.0,
            density_threshold_per_km2: 400.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UavSection {
    pub count: usize,
    pub max_users: usize,
    pub altitude_m: f64,
    pub p_max_dbm: f64,
    pub hover_power_w: f64,
    pub hover_p0_w: f64,
    pub hover_delta: f64,
    pub max_path_loss_db: f64,
}

impl Default for UavSection {
    fn default() -> Self {
        Self {
            count: 2,
            max_users: 200,
            altitude_m: 100.0,
            p_max_dbm: 20.0,
            hover_power_w: 58.0,
            hover_p0_w: 50.0,
            hover_delta: 0.1,
            max_path_loss_db: 119.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SatelliteSection {
    pub altitude_km: f64,
    pub tx_power_dbm: f64,
    pub min_elevation_deg: f64,
    pub polar_angle_deg: f64,
    pub link_gain_db: f64,
}

impl Default for SatelliteSection {
    fn default() -> Self {
        Self { altitude_km: 1000.0, tx_power_dbm: 50.0, min_elevation_deg: 10.0, polar_angle_deg: 0.0, link_gain_db: -21.5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QosSection {
    pub sinr_threshold_db: f64,
    pub fairness_threshold: f64,
    pub cd_gate: CdGate,
    pub power_tol_w: f64,
    pub power_max_iter: usize,
}

impl Default for QosSection {
    fn default() -> Self {
        Self { sinr_threshold_db: 3.0, fairness_threshold: 0.9, cd_gate: CdGate::AllCovered, power_tol_w: 1e-6, power_max_iter: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimeSection {
    pub num_slots: usize,
    pub slot_duration_s: f64,
    pub slot_index: usize,
    pub mobility_step_m: f64,
}

impl Default for TimeSection {
    fn default() -> Self {
        Self { num_slots: 1, slot_duration_s: 1.0, slot_index: 0, mobility_step_m: 0.0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub channel: ChannelSection,
    pub network: NetworkSection,
    pub uav: UavSection,
    pub satellite: SatelliteSection,
    pub qos: QosSection,
    pub time: TimeSection,
}

fn field(key: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::config(key, e.to_string())
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let key = e
                .span()
                .map(|s| format!("line {}", text[..s.start].matches('\n').count() + 1))
                .unwrap_or_else(|| "config".into());
            Error::config(key, e.message().to_string())
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(path.display().to_string(), format!("cannot read: {e}")))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    /// Converts to SI parameters and validates them.
    pub fn to_params(&self) -> Result<SimParams> {
        let c = &self.channel;
        let n = &self.network;
        let u = &self.uav;
        let s = &self.satellite;
        let q = &self.qos;
        let t = &self.time;
        let a2g = A2GParams::new(c.a, c.b, c.eta_los_db, c.eta_nlos_db, c.carrier_freq_hz, c.path_loss_exp)
            .map_err(field("channel"))?;
        if n.gbs_max_users == 0 {
            return Err(Error::config("network.gbs_max_users", "must be at least 1"));
        }
        let gbs_bw = if n.gbs_bandwidth_shared { n.bandwidth_hz / n.gbs_max_users as f64 } else { n.bandwidth_hz };
        let noise = NoiseModel {
            psd: dbm_to_watts(c.noise_psd_dbm_hz),
            bandwidth_uav: n.bandwidth_hz,
            bandwidth_sat_uav: n.bandwidth_hz,
            bandwidth_sat_user: n.bandwidth_hz,
            bandwidth_gbs: gbs_bw,
        }
        .validated()
        .map_err(field("network.bandwidth_hz"))?;
        let base = u.hover_p0_w * (1.0 + u.hover_delta);
        if !(u.hover_power_w > base && u.altitude_m > 0.0) {
            return Err(Error::config("uav.hover_power_w", format!("must exceed hover_p0_w * (1 + hover_delta) = {base} W")));
        }
        let hover = HoverModel::new(u.hover_p0_w, u.hover_delta, 2.0 * (u.hover_power_w / base).ln() / u.altitude_m)
            .map_err(field("uav.hover_p0_w"))?;
        if !(0.0..90.0).contains(&s.min_elevation_deg) {
            return Err(Error::config("satellite.min_elevation_deg", "must lie in [0, 90)"));
        }
        let area = Area::new(n.area_width_m, n.area_height_m).map_err(field("network.area_width_m"))?;
        let p = SimParams {
            a2g,
            a2g_gain_model: c.a2g_gain_model,
            a2g_rayleigh: c.a2g_rayleigh,
            noise,
            path_loss_exp: c.path_loss_exp,
            antennas: c.antennas,
            area,
            gbs_position: Point2::new(n.gbs_x_m, n.gbs_y_m),
            gbs_max_users: n.gbs_max_users,
            gbs_tx_power: dbm_to_watts(n.gbs_tx_power_dbm),
            gbs_min_distance: n.gbs_min_distance_m,
            num_uavs: u.count,
            uav_max_users: u.max_users,
            uav_altitude: u.altitude_m,
            uav_p_max: dbm_to_watts(u.p_max_dbm),
            hover,
            max_path_loss_db: u.max_path_loss_db,
            sat_altitude: s.altitude_km * 1e3,
            sat_min_elevation: s.min_elevation_deg.to_radians(),
            sat_polar_angle: s.polar_angle_deg.to_radians(),
            sat_tx_power: dbm_to_watts(s.tx_power_dbm),
            sat_link_gain: db_to_linear(s.link_gain_db),
            srf_uav: c.srf_uav.params(),
            srf_user: c.srf_user.params(),
            gamma_th: db_to_linear(q.sinr_threshold_db),
            fairness_threshold: q.fairness_threshold,
            density_threshold: n.density_threshold_per_km2 * 1e-6,
            egc_rule: c.egc_rule,
            cd_gate: q.cd_gate,
            power_tol: q.power_tol_w,
            power_max_iter: q.power_max_iter,
            num_slots: t.num_slots,
            slot_duration: t.slot_duration_s,
            slot_index: t.slot_index,
            mobility_step: t.mobility_step_m,
            gbs_user_radius: n.gbs_user_radius_m,
            hotspot_min_gbs_distance: n.hotspot_min_gbs_distance_m,
            total_users: n.total_users,
        };
        p.validate().map_err(|e| match e {
            Error::InvalidParameter { name, reason } => Error::config(name, reason),
            other => other,
        })?;
        Ok(p)
    }
}
