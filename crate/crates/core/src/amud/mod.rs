//! The decision layer: relay footprint, placement over hotspots, the
//! re-association loop with per-user power choice, and the four schemes.

pub mod coverage;
pub mod placement;
pub mod power;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::association::{cd_rate, gbs_rate, total_power, AssociationMap, NetworkScore, Serving};
use crate::channel::path_loss;
use crate::combining::{max_sinr, CombinerInput};
use crate::error::{Error, Result};
use crate::link::{interference_at_user, sinr_sat_user, snr_gbs_user};
use crate::params::{CdGate, SimParams};
use crate::scenario::{detect_hotspots, elevation_angle, horizontal_distance, slant_distance, Hotspot, HotspotKind, Point2, ScenarioState, SectorGrid, UavRelay, User};
use crate::workload::Realization;

pub use coverage::{coverage_radius, max_los_distance, optimal_elevation_angle, CoverageDesign};
pub use placement::{place_uavrs, Placement};
pub use power::{min_power, optimize_power, PowerChoice};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeId {
    AmudSagin,
    EgcSagin,
    LeoGbs,
    GbsOnly,
}

impl SchemeId {
    pub const ALL: [SchemeId; 4] = [SchemeId::AmudSagin, SchemeId::EgcSagin, SchemeId::LeoGbs, SchemeId::GbsOnly];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::AmudSagin => "amud",
            SchemeId::EgcSagin => "egc",
            SchemeId::LeoGbs => "leo-gbs",
            SchemeId::GbsOnly => "gbs-only",
        }
    }

    fn uses_relays(self) -> bool {
        matches!(self, SchemeId::AmudSagin | SchemeId::EgcSagin)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeId::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::config("schemes", format!("unknown scheme `{s}`")))
    }
}

/// Result of running one scheme on one slot.
#[derive(Debug, Clone)]
pub struct SchemeOutcome {
    pub scheme: SchemeId,
    pub assoc: AssociationMap,
    pub score: NetworkScore,
    pub relays: Vec<UavRelay>,
    pub design: CoverageDesign,
    /// SINR behind each user's rate (0 for dropped users).
    pub sinr: Vec<f64>,
    /// Direct satellite SINR of each user, for reference.
    pub direct_sinr: Vec<f64>,
    /// Optimal cooperative SINR at the committed power (relay users only).
    pub cd_max_sinr: Vec<f64>,
}

fn norm_sq(h: &[Complex64]) -> f64 {
    h.iter().map(|c| c.norm_sqr()).sum()
}

/// GBS admits the users nearest to it, up to its cap.
pub fn admit_gbs(users: &[User], gbs_position: Point2, cap: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..users.len()).collect();
    order.sort_by(|&a, &b| {
        let da = users[a].position.distance(&gbs_position);
        let db = users[b].position.distance(&gbs_position);
        da.total_cmp(&db).then(a.cmp(&b))
    });
    order.truncate(cap);
    order.sort_unstable();
    order
}

fn centroid(users: &[User], idx: &[usize]) -> Point2 {
    let n = idx.len().max(1) as f64;
    let (sx, sy) = idx.iter().fold((0.0, 0.0), |(x, y), &k| (x + users[k].position.x, y + users[k].position.y));
    Point2::new(sx / n, sy / n)
}

/// Chooses relay positions: density hotspots restricted to excess users,
/// largest first; relays left over go to the sector cells with the most
/// uncovered excess users.
pub fn plan_relays(
    state: &ScenarioState,
    params: &SimParams,
    design: &CoverageDesign,
    admitted: &[usize],
    excess: &[usize],
    hover: f64,
) -> Result<Placement> {
    let users = &state.users;
    let admitted_ids: Vec<usize> = admitted.iter().map(|&k| users[k].id).collect();
    let found = detect_hotspots(users, &state.gbs, &admitted_ids, design.radius, params.density_threshold)?;
    let is_excess: HashSet<usize> = excess.iter().map(|&k| users[k].id).collect();
    let mut spots: Vec<Hotspot> = found
        .into_iter()
        .filter(|h| h.kind == HotspotKind::DensityBased)
        .filter_map(|mut h| {
            h.member_users.retain(|id| is_excess.contains(id));
            if h.member_users.is_empty() {
                return None;
            }
            let idx: Vec<usize> = h.member_users.iter().filter_map(|id| users.iter().position(|u| u.id == *id)).collect();
            h.sector_center = centroid(users, &idx);
            Some(h)
        })
        .collect();
    spots.sort_by(|a, b| b.member_users.len().cmp(&a.member_users.len()));
    spots.truncate(params.num_uavs);
    if spots.len() < params.num_uavs {
        // Remaining relays go to the sector cells holding most uncovered excess users.
        let uncovered: Vec<usize> = excess
            .iter()
            .copied()
            .filter(|&k| !spots.iter().any(|h| users[k].position.distance(&h.sector_center) <= design.radius))
            .collect();
        let grid = SectorGrid::new(params.area, design.radius)?;
        let mut cells: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &k in &uncovered {
            cells.entry(grid.cell_of(&users[k].position)).or_default().push(k);
        }
        let mut groups: Vec<Vec<usize>> = cells.into_values().collect();
        groups.sort_by(|a, b| b.len().cmp(&a.len()));
        for g in groups.into_iter().take(params.num_uavs - spots.len()) {
            spots.push(Hotspot {
                kind: HotspotKind::ExcessBased,
                sector_center: centroid(users, &g),
                member_users: g.iter().map(|&k| users[k].id).collect(),
                density_threshold: params.density_threshold,
            });
        }
    }
    place_uavrs(&spots, params.num_uavs, design.radius_max, params.area, params.uav_altitude, design.radius, hover)
}

struct Candidate {
    relay: usize,
    interference: f64,
    h: Vec<Complex64>,
    hbar: f64,
    sinr_at_max: f64,
}

fn scheme_sinr(scheme: SchemeId, params: &SimParams, ci: &CombinerInput) -> Result<f64> {
    match scheme {
        SchemeId::EgcSagin => params.egc_rule.sinr(ci),
        _ => max_sinr(ci),
    }
}

/// Runs one scheme on one slot of `state`.
pub fn run_scheme(scheme: SchemeId, state: &ScenarioState, params: &SimParams, seed: u64) -> Result<SchemeOutcome> {
    params.validate()?;
    let design = CoverageDesign::new(&params.a2g, params.uav_altitude, params.max_path_loss_db)?;
    let real = Realization::new(params, state, seed);
    let users = &state.users;
    let n = users.len();
    let visible = state.satellite_visible();
    let noise = &params.noise;

    let mut assoc = AssociationMap::new(n);
    let mut rates = vec![0.0; n];
    let mut sinr = vec![0.0; n];
    let mut direct_sinr = vec![0.0; n];
    let mut cd_max_sinr = vec![0.0; n];

    let mut gbs_snr = Vec::with_capacity(n);
    for u in users {
        gbs_snr.push(snr_gbs_user(params.gbs_tx_power, &real.gbs_channel(u)?, noise));
    }
    let admitted = admit_gbs(users, params.gbs_position, params.gbs_max_users);
    for &k in &admitted {
        assoc.serving[k] = Serving::Gbs;
        sinr[k] = gbs_snr[k];
        rates[k] = gbs_rate(gbs_snr[k], noise.bandwidth_gbs, true);
    }
    let mut excess: Vec<usize> = (0..n).filter(|k| assoc.serving[*k] != Serving::Gbs).collect();
    excess.sort_by(|&a, &b| gbs_snr[a].total_cmp(&gbs_snr[b]).then(a.cmp(&b)));

    let mut relays = Vec::new();
    if visible && scheme != SchemeId::GbsOnly {
        let direct: Vec<Vec<Complex64>> = excess.iter().map(|&k| real.direct_channel(&users[k])).collect();
        if scheme.uses_relays() && !excess.is_empty() {
            let hover = real.hover_power(params.uav_altitude);
            relays = plan_relays(state, params, &design, &admitted, &excess, hover)?.relays;
        }
        let hbars: Vec<f64> = relays.iter().map(|r| real.relay_amplitude(r)).collect();
        let worst_case = vec![params.uav_p_max; relays.len()];
        let hover_total: f64 = relays.iter().map(|r| r.hover_power).sum();

        let mut cap_now: f64 = rates.iter().sum();
        let mut pow_now = assoc.count_gbs() as f64 * params.gbs_tx_power + hover_total + params.sat_tx_power;
        let mut load = vec![0usize; relays.len()];

        for (e, &k) in excess.iter().enumerate() {
            let user = &users[k];
            let h_d = &direct[e];
            let i_all = if relays.is_empty() {
                0.0
            } else {
                interference_at_user(user, usize::MAX, &relays, &worst_case, &params.a2g)?
            };
            let g_is = sinr_sat_user(true, params.sat_tx_power, h_d, noise, i_all);
            direct_sinr[k] = g_is;

            let gate_open = match params.cd_gate {
                CdGate::AllCovered => true,
                CdGate::BelowThreshold => g_is < params.gamma_th,
            };
            let mut best: Option<Candidate> = None;
            if gate_open {
                for (j, relay) in relays.iter().enumerate() {
                    if load[j] >= params.uav_max_users || horizontal_distance(user, relay) > relay.coverage_radius {
                        continue;
                    }
                    let pl = path_loss(slant_distance(user, relay), elevation_angle(user, relay), &params.a2g)?;
                    if pl.avg > params.max_path_loss_db {
                        continue;
                    }
                    let interference = interference_at_user(user, relay.id, &relays, &worst_case, &params.a2g)?;
                    let h = real.a2g_channel(user, relay)?;
                    let ci = CombinerInput::cooperative(h_d, &h, hbars[j], params.uav_p_max, noise.uav(), interference, params.sat_tx_power)?;
                    let s = scheme_sinr(scheme, params, &ci)?;
                    if best.as_ref().map_or(true, |b| s > b.sinr_at_max) {
                        best = Some(Candidate { relay: j, interference, h, hbar: hbars[j], sinr_at_max: s });
                    }
                }
            }

            if let Some(c) = best {
                let hn = norm_sq(&c.h);
                let p_min = min_power(params.gamma_th, noise.uav(), c.interference, hn)?;
                let eval = |p: f64| -> Result<(f64, f64)> {
                    let ci = CombinerInput::cooperative(h_d, &c.h, c.hbar, p, noise.uav(), c.interference, params.sat_tx_power)?;
                    Ok((scheme_sinr(scheme, params, &ci)?, max_sinr(&ci)?))
                };
                let objective = |p: f64| {
                    let s = eval(p).map(|x| x.0).unwrap_or(0.0);
                    (cap_now + cd_rate(s, noise.bandwidth_uav, true)) / (pow_now + p)
                };
                let choice = optimize_power(p_min, params.uav_p_max, objective, params.power_tol, params.power_max_iter);
                let (s, s_max) = eval(choice.power)?;
                let rate = cd_rate(s, noise.bandwidth_uav, true);
                assoc.serving[k] = Serving::Uav(c.relay);
                assoc.powers[k] = choice.power;
                if choice.infeasible || s < params.gamma_th {
                    assoc.qos_shortfall.push(k);
                }
                load[c.relay] += 1;
                rates[k] = rate;
                sinr[k] = s;
                cd_max_sinr[k] = s_max;
                cap_now += rate;
                pow_now += choice.power;
            } else if g_is >= params.gamma_th {
                assoc.serving[k] = Serving::Satellite;
                sinr[k] = g_is;
                rates[k] = gbs_rate(g_is, noise.bandwidth_sat_user, true);
                cap_now += rates[k];
            }
        }
    }

    let hovers: Vec<f64> = relays.iter().map(|r| r.hover_power).collect();
    let power = total_power(&assoc, &hovers, params.sat_tx_power, params.gbs_tx_power);
    let score = NetworkScore::new(&assoc, rates, power, params.fairness_threshold)?;
    Ok(SchemeOutcome { scheme, assoc, score, relays, design, sinr, direct_sinr, cd_max_sinr })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workload::hotspot_scenario;

    #[test]
    fn scheme_names_round_trip() {
        for s in SchemeId::ALL {
            assert_eq!(s.name().parse::<SchemeId>().unwrap(), s);
        }
        assert!("amud-sagin".parse::<SchemeId>().is_err());
    }

    #[test]
    fn gbs_only_drops_excess() {
        let p = SimParams::default();
        let st = hotspot_scenario(&p, 300, 42).unwrap();
        let o = run_scheme(SchemeId::GbsOnly, &st, &p, 42).unwrap();
        assert_eq!(o.score.dropped, 300);
        assert_eq!(o.score.served, 100);
        assert!(o.score.fairness <= 0.3);
        assert_eq!(o.score.power_total, 1000.0);
        assert!(o.relays.is_empty());
    }

    #[test]
    fn invisible_satellite_degenerates_to_gbs_only() {
        let mut p = SimParams::default();
        p.sat_polar_angle = std::f64::consts::PI;
        let st = hotspot_scenario(&p, 200, 5).unwrap();
        assert!(!st.satellite_visible());
        let a = run_scheme(SchemeId::AmudSagin, &st, &p, 5).unwrap();
        let g = run_scheme(SchemeId::GbsOnly, &st, &p, 5).unwrap();
        assert_eq!(a.score, g.score);
        assert!(a.relays.is_empty());
    }

    #[test]
    fn amud_and_egc_share_placement_and_amud_dominates() {
        let p = SimParams::default();
        let st = hotspot_scenario(&p, 200, 11).unwrap();
        let a = run_scheme(SchemeId::AmudSagin, &st, &p, 11).unwrap();
        let e = run_scheme(SchemeId::EgcSagin, &st, &p, 11).unwrap();
        assert_eq!(a.relays, e.relays);
        assert_eq!(a.relays.len(), 2);
        let mut both = 0;
        for k in 0..st.users.len() {
            if let (Serving::Uav(_), Serving::Uav(_)) = (a.assoc.serving[k], e.assoc.serving[k]) {
                assert!(a.sinr[k] >= e.sinr[k]);
                both += 1;
            }
        }
        assert!(both > 150, "{both}");
    }

    #[test]
    fn admission_is_nearest_first() {
        let users: Vec<User> = [(0.0, 0.0), (10.0, 0.0), (5.0, 0.0)]
            .iter()
            .enumerate()
            .map(|(id, &(x, y))| User { id, position: Point2::new(x, y) })
            .collect();
        assert_eq!(admit_gbs(&users, Point2::new(9.0, 0.0), 2), vec![1, 2]);
    }
}
