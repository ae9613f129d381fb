//! Sweep workloads: the hotspot scenario layout and the seeded channel
//! realisation every scheme sees for a given trial.

use num_complex::Complex64;
use rand::seq::SliceRandom;

use crate::amud::coverage::CoverageDesign;
use crate::channel::{a2g_channel_gain, gbs_channel_gain, sample_rayleigh, sample_shadowed_rician, FadingSample};
use crate::error::{Error, Result};
use crate::link::hover_power;
use crate::params::SimParams;
use crate::rng::stream;
use crate::scenario::{
    disk_users, elevation_angle, slant_distance, GroundStation, Satellite, ScenarioState, SectorGrid, UavRelay, User,
};

const PURPOSE_LAYOUT: u64 = 0x6c61_796f;
const PURPOSE_DIRECT: u64 = 0x6469_7263;
const PURPOSE_GBS: u64 = 0x6762_7366;
const PURPOSE_RELAY: u64 = 0x7265_6c61;
const PURPOSE_A2G: u64 = 0x6132_6766;

pub fn ground_station(p: &SimParams) -> GroundStation {
    GroundStation {
        position: p.gbs_position,
        area: p.area,
        max_users: p.gbs_max_users,
        tx_power_per_user: p.gbs_tx_power,
    }
}

pub fn satellite(p: &SimParams) -> Result<Satellite> {
    Satellite::new(p.sat_altitude, p.sat_min_elevation, p.sat_polar_angle, p.sat_tx_power)
}

/// Hotspot centres: centres of full sector cells far enough from the GBS,
/// `count` of them drawn without replacement.
pub fn hotspot_centres(p: &SimParams, radius: f64, count: usize, seed: u64) -> Result<Vec<crate::scenario::Point2>> {
    let grid = SectorGrid::new(p.area, radius)?;
    let mut cells: Vec<_> = grid
        .full_cell_centers()
        .into_iter()
        .filter(|c| c.distance(&p.gbs_position) >= p.hotspot_min_gbs_distance)
        .collect();
    if cells.is_empty() && count > 0 {
        return Err(Error::invalid("hotspot_min_gbs_distance", "no sector cell is far enough from the GBS"));
    }
    let mut rng = stream(seed, PURPOSE_LAYOUT, 1);
    cells.shuffle(&mut rng);
    cells.truncate(count);
    Ok(cells)
}

/// `gbs_max_users` background users around the GBS plus `excess` users split
/// evenly over `num_uavs` hotspot disks of the relay coverage radius.
pub fn hotspot_scenario(p: &SimParams, excess: usize, seed: u64) -> Result<ScenarioState> {
    p.validate()?;
    let design = CoverageDesign::new(&p.a2g, p.uav_altitude, p.max_path_loss_db)?;
    let mut rng = stream(seed, PURPOSE_LAYOUT, 0);
    let mut users = disk_users(p.gbs_max_users, p.gbs_position, p.gbs_user_radius, p.area, 0, &mut rng);
    let spots = p.num_uavs.max(1);
    let centres = hotspot_centres(p, design.radius, spots, seed)?;
    if excess > 0 {
        let n = centres.len();
        for (k, c) in centres.iter().enumerate() {
            let share = excess / n + usize::from(k < excess % n);
            let first = users.len();
            users.extend(disk_users(share, *c, design.radius, p.area, first, &mut rng));
        }
    }
    Ok(ScenarioState {
        users,
        uavrs: Vec::new(),
        gbs: ground_station(p),
        satellite: satellite(p)?,
        slot_index: p.slot_index,
        num_slots: p.num_slots,
        slot_duration: p.slot_duration,
        rng_seed: seed,
    })
}

/// Seeded channel draws for one trial. Draws are keyed by user or relay id,
/// so every scheme run on the same seed sees identical channels.
#[derive(Debug, Clone)]
pub struct Realization<'a> {
    pub params: &'a SimParams,
    pub seed: u64,
    pub time: f64,
    pub satellite: Satellite,
}

impl<'a> Realization<'a> {
    pub fn new(params: &'a SimParams, state: &ScenarioState, seed: u64) -> Self {
        Self { params, seed, time: state.slot_start(), satellite: state.satellite }
    }

    fn sat_amplitude(&self, observer_altitude: f64) -> f64 {
        let d = self.satellite.range_to(self.time, observer_altitude);
        (self.params.sat_link_gain * d.powf(-self.params.path_loss_exp)).sqrt()
    }

    /// Direct satellite to user channel, one entry per user antenna.
    pub fn direct_channel(&self, user: &User) -> Vec<Complex64> {
        let mut rng = stream(self.seed, PURPOSE_DIRECT, user.id as u64);
        let amp = self.sat_amplitude(0.0);
        (0..self.params.antennas)
            .map(|_| sample_shadowed_rician(&self.params.srf_user, &mut rng).value * amp)
            .collect()
    }

    /// GBS to user channel, one entry per user antenna.
    pub fn gbs_channel(&self, user: &User) -> Result<Vec<Complex64>> {
        let mut rng = stream(self.seed, PURPOSE_GBS, user.id as u64);
        let r = user.position.distance(&self.params.gbs_position).max(self.params.gbs_min_distance);
        (0..self.params.antennas)
            .map(|_| gbs_channel_gain(r, sample_rayleigh(&mut rng), self.params.path_loss_exp))
            .collect()
    }

    /// Satellite to relay amplitude.
    pub fn relay_amplitude(&self, relay: &UavRelay) -> f64 {
        let mut rng = stream(self.seed, PURPOSE_RELAY, relay.id as u64);
        sample_shadowed_rician(&self.params.srf_uav, &mut rng).value.norm() * self.sat_amplitude(relay.altitude)
    }

    /// Relay to user channel, one entry per user antenna.
    pub fn a2g_channel(&self, user: &User, relay: &UavRelay) -> Result<Vec<Complex64>> {
        let d = slant_distance(user, relay);
        let theta = elevation_angle(user, relay);
        let mut rng = stream(self.seed, PURPOSE_A2G, (user.id as u64) << 8 | relay.id as u64);
        (0..self.params.antennas)
            .map(|_| {
                let fade = if self.params.a2g_rayleigh { sample_rayleigh(&mut rng) } else { FadingSample::unit() };
                a2g_channel_gain(d, theta, fade, &self.params.a2g, self.params.a2g_gain_model)
            })
            .collect()
    }

    pub fn hover_power(&self, relay_altitude: f64) -> f64 {
        hover_power(relay_altitude, &self.params.hover)
    }
}
