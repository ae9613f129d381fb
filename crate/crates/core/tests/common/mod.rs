//! Shared slot generator and invariant checks.

use sagin::association::Serving;
use sagin::workload::hotspot_scenario;
use sagin::{run_scheme, SchemeId, SchemeOutcome, SimParams};

/// One randomised slot, fully determined by `seed`.
#[derive(Debug, Clone)]
pub struct Slot {
    pub scheme: SchemeId,
    pub excess: usize,
    pub seed: u64,
    pub params: SimParams,
}

impl Slot {
    pub fn new(seed: u64, scheme: usize, excess: usize, uavs: usize, sat_polar_deg: f64) -> Self {
        let params = SimParams { num_uavs: uavs, sat_polar_angle: sat_polar_deg.to_radians(), ..Default::default() };
        Self { scheme: SchemeId::ALL[scheme % 4], excess, seed, params }
    }

    pub fn run(&self) -> SchemeOutcome {
        let state = hotspot_scenario(&self.params, self.excess, self.seed).expect("scenario");
        run_scheme(self.scheme, &state, &self.params, self.seed).expect("scheme run")
    }
}

/// Checks single association, load caps, the power box, relay separation,
/// the fairness range and cooperative gain over the direct link.
pub fn check(slot: &Slot, o: &SchemeOutcome) -> Result<(), String> {
    let p = &slot.params;
    let a = &o.assoc;
    let n = slot.excess + p.gbs_max_users;
    if a.serving.len() != n || a.powers.len() != n {
        return Err(format!("{} users but {} associations", n, a.serving.len()));
    }
    a.check(o.relays.len(), p.gbs_max_users, p.uav_max_users, p.uav_p_max).map_err(|e| e.to_string())?;
    if a.count_gbs() > p.gbs_max_users {
        return Err("GBS over capacity".into());
    }
    for j in 0..o.relays.len() {
        if a.count_uav(j) > p.uav_max_users {
            return Err(format!("relay {j} over capacity"));
        }
    }
    for (k, (&s, &pw)) in a.serving.iter().zip(&a.powers).enumerate() {
        let relay = matches!(s, Serving::Uav(_));
        if !(0.0..=p.uav_p_max).contains(&pw) || (!relay && pw != 0.0) {
            return Err(format!("user {k} power {pw} outside the box"));
        }
        if relay && o.cd_max_sinr[k] < o.direct_sinr[k] * (1.0 - 1e-12) {
            return Err(format!("user {k}: cooperative {} < direct {}", o.cd_max_sinr[k], o.direct_sinr[k]));
        }
    }
    let r_max = o.design.radius_max;
    for (i, u) in o.relays.iter().enumerate() {
        for v in &o.relays[i + 1..] {
            let d = u.position.distance(&v.position);
            if d < r_max - 1e-6 {
                return Err(format!("relays {} and {} only {d:.3} m apart (need {r_max:.3})", u.id, v.id));
            }
        }
    }
    let xi = o.score.fairness;
    if !(0.0..=1.0).contains(&xi) {
        return Err(format!("fairness {xi} outside [0, 1]"));
    }
    Ok(())
}
