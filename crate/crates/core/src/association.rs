//! Who serves whom, and how the result is scored: rates, total capacity,
//! total power, energy efficiency and Jain fairness.

use crate::error::{Error, Result};

/// Serving node of one user.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Serving {
    Gbs,
    /// Cooperative path through relay `j` (index into the relay list).
    Uav(usize),
    /// Direct satellite link without relay.
    Satellite,
    Dropped,
}

/// Per-user association. Vectors are indexed by user position.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociationMap {
    pub serving: Vec<Serving>,
    /// Relay transmit power per user; zero unless served through a relay.
    pub powers: Vec<f64>,
    /// Users served below the SINR threshold at full relay power.
    pub qos_shortfall: Vec<usize>,
}

impl AssociationMap {
    pub fn new(users: usize) -> Self {
        Self {
            serving: vec![Serving::Dropped; users],
            powers: vec![0.0; users],
            qos_shortfall: Vec::new(),
        }
    }

    fn collect(&self, pred: impl Fn(Serving) -> bool) -> Vec<usize> {
        self.serving
            .iter()
            .enumerate()
            .filter(|(_, s)| pred(**s))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn gbs_users(&self) -> Vec<usize> {
        self.collect(|s| s == Serving::Gbs)
    }

    pub fn uav_users(&self, j: usize) -> Vec<usize> {
        self.collect(|s| s == Serving::Uav(j))
    }

    pub fn satellite_users(&self) -> Vec<usize> {
        self.collect(|s| s == Serving::Satellite)
    }

    pub fn dropped(&self) -> Vec<usize> {
        self.collect(|s| s == Serving::Dropped)
    }

    pub fn served_count(&self) -> usize {
        self.serving.len() - self.dropped().len()
    }

    pub fn count_uav(&self, j: usize) -> usize {
        self.serving.iter().filter(|s| **s == Serving::Uav(j)).count()
    }

    pub fn count_gbs(&self) -> usize {
        self.serving.iter().filter(|s| **s == Serving::Gbs).count()
    }

    /// True when any user is served over a satellite path (direct or relayed).
    pub fn uses_satellite(&self) -> bool {
        self.serving
            .iter()
            .any(|s| matches!(s, Serving::Satellite | Serving::Uav(_)))
    }

    /// Checks load caps, the power box and that only relay users carry power.
    pub fn check(&self, relays: usize, max_gbs: usize, max_uav: usize, p_max: f64) -> Result<()> {
        if self.count_gbs() > max_gbs {
            return Err(Error::invalid("association", "GBS load cap exceeded"));
        }
        for j in 0..relays {
            if self.count_uav(j) > max_uav {
                return Err(Error::invalid("association", format!("relay {j} load cap exceeded")));
            }
        }
        for (s, p) in self.serving.iter().zip(&self.powers) {
            match s {
                Serving::Uav(j) if *j >= relays => {
                    return Err(Error::invalid("association", "unknown relay"));
                }
                Serving::Uav(_) if !(*p >= 0.0 && *p <= p_max * (1.0 + 1e-12)) => {
                    return Err(Error::invalid("powers", format!("{p} W outside [0, p_max]")));
                }
                Serving::Uav(_) => {}
                _ if *p != 0.0 => return Err(Error::invalid("powers", "power on non-relay user")),
                _ => {}
            }
        }
        Ok(())
    }
}

/// 1 while the GBS load is within its cap.
pub fn gbs_indicator(load: usize, max_users: usize) -> u8 {
    u8::from(load <= max_users)
}

/// QoS and coverage test for a relay association (closed conditions).
pub fn uav_association_indicator(horizontal: f64, radius: f64, sinr_cd: f64, gamma_th: f64) -> u8 {
    u8::from(sinr_cd >= gamma_th && horizontal * horizontal <= radius * radius)
}

/// Two-phase relay rate `B/2 log2(1 + sinr)`.
pub fn cd_rate(sinr: f64, bandwidth: f64, delta: bool) -> f64 {
    if !delta {
        return 0.0;
    }
    0.5 * bandwidth * (1.0 + sinr).log2()
}

/// Single-phase rate `B log2(1 + snr)`; used for GBS and direct satellite users.
pub fn gbs_rate(snr: f64, bandwidth: f64, delta: bool) -> f64 {
    if !delta {
        return 0.0;
    }
    bandwidth * (1.0 + snr).log2()
}

/// Sum of per-user rates; dropped users carry rate zero.
pub fn total_capacity(rates: &[f64]) -> f64 {
    rates.iter().sum()
}

/// Itemised downlink power.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PowerBreakdown {
    pub uav_tx: f64,
    pub uav_hover: f64,
    pub satellite: f64,
    pub gbs: f64,
}

impl PowerBreakdown {
    pub fn total(&self) -> f64 {
        self.uav_tx + self.uav_hover + self.satellite + self.gbs
    }
}

/// Relay transmit plus hover power for every deployed relay, satellite power
/// when any satellite path is in use, and `P_G` per GBS user.
pub fn total_power(
    assoc: &AssociationMap,
    hover_powers: &[f64],
    sat_tx_power: f64,
    gbs_power_per_user: f64,
) -> PowerBreakdown {
    PowerBreakdown {
        uav_tx: assoc.powers.iter().sum(),
        uav_hover: hover_powers.iter().sum(),
        satellite: if assoc.uses_satellite() { sat_tx_power } else { 0.0 },
        gbs: assoc.count_gbs() as f64 * gbs_power_per_user,
    }
}

pub fn energy_efficiency(capacity: f64, power: f64) -> Result<f64> {
    if !(power > 0.0) {
        return Err(Error::UndefinedRatio("total power"));
    }
    Ok(capacity / power)
}

/// Jain index over all users; zero when every rate is zero.
pub fn jain_fairness(rates: &[f64]) -> Result<f64> {
    if rates.is_empty() {
        return Err(Error::invalid("rates", "fairness needs at least one user"));
    }
    let s: f64 = rates.iter().sum();
    let s2: f64 = rates.iter().map(|r| r * r).sum();
    if s2 == 0.0 {
        return Ok(0.0);
    }
    Ok((s * s / (rates.len() as f64 * s2)).min(1.0))
}

/// Scored outcome of one scheme on one slot.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkScore {
    pub capacity_uav: f64,
    pub capacity_sat: f64,
    pub capacity_gbs: f64,
    pub capacity_total: f64,
    pub power: PowerBreakdown,
    pub power_total: f64,
    pub energy_eff: f64,
    pub fairness: f64,
    pub fairness_ok: bool,
    pub per_user_rates: Vec<f64>,
    pub served: usize,
    pub dropped: usize,
}

impl NetworkScore {
    pub fn new(assoc: &AssociationMap, rates: Vec<f64>, power: PowerBreakdown, fairness_threshold: f64) -> Result<Self> {
        if rates.len() != assoc.serving.len() {
            return Err(Error::invalid("rates", "one rate per user required"));
        }
        let mut cu = 0.0;
        let mut cs = 0.0;
        let mut cg = 0.0;
        for (s, r) in assoc.serving.iter().zip(&rates) {
            match s {
                Serving::Uav(_) => cu += r,
                Serving::Satellite => cs += r,
                Serving::Gbs => cg += r,
                Serving::Dropped => {}
            }
        }
        let power_total = power.total();
        let capacity_total = total_capacity(&rates);
        let fairness = if rates.is_empty() { 0.0 } else { jain_fairness(&rates)? };
        let energy_eff = if power_total > 0.0 { energy_efficiency(capacity_total, power_total)? } else { 0.0 };
        let dropped = assoc.dropped().len();
        Ok(Self {
            capacity_uav: cu,
            capacity_sat: cs,
            capacity_gbs: cg,
            capacity_total,
            power,
            power_total,
            energy_eff,
            fairness,
            fairness_ok: fairness >= fairness_threshold,
            per_user_rates: rates,
            served: assoc.serving.len() - dropped,
            dropped,
        })
    }
}
