//! Per-link arithmetic: AF relay gain, interference, the cooperative-path
//! SINRs, GBS SNR and UAV hover power.

use num_complex::Complex64;

use crate::channel::{path_loss, A2GParams};
use crate::error::{Error, Result};
use crate::scenario::{elevation_angle, slant_distance, UavRelay, User};

/// Noise PSD (W/Hz) and per-link bandwidths (Hz).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub psd: f64,
    pub bandwidth_uav: f64,
    pub bandwidth_sat_uav: f64,
    pub bandwidth_sat_user: f64,
    pub bandwidth_gbs: f64,
}

impl NoiseModel {
    /// Every link on the same bandwidth.
    pub fn uniform(psd: f64, bandwidth: f64) -> Result<Self> {
        Self {
            psd,
            bandwidth_uav: bandwidth,
            bandwidth_sat_uav: bandwidth,
            bandwidth_sat_user: bandwidth,
            bandwidth_gbs: bandwidth,
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        let all = [
            self.psd,
            self.bandwidth_uav,
            self.bandwidth_sat_uav,
            self.bandwidth_sat_user,
            self.bandwidth_gbs,
        ];
        if all.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::invalid("noise", "psd and bandwidths must be positive"));
        }
        Ok(self)
    }

    pub fn uav(&self) -> f64 {
        self.psd * self.bandwidth_uav
    }
    pub fn sat_uav(&self) -> f64 {
        self.psd * self.bandwidth_sat_uav
    }
    pub fn sat_user(&self) -> f64 {
        self.psd * self.bandwidth_sat_user
    }
    pub fn gbs(&self) -> f64 {
        self.psd * self.bandwidth_gbs
    }
}

/// SINRs along the cooperative path of one user, plus the relay normalisation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub gamma_sat_user: f64,
    pub gamma_sat_uav: f64,
    pub gamma_uav_user: f64,
    pub af_gain_sq: f64,
    pub varsigma: f64,
    pub interference: f64,
    pub sigma2: f64,
}

impl LinkBudget {
    pub fn new(
        gamma_sat_user: f64,
        gamma_sat_uav: f64,
        gamma_uav_user: f64,
        af_gain_sq: f64,
        sigma2: f64,
        interference: f64,
    ) -> Result<Self> {
        let vals = [gamma_sat_user, gamma_sat_uav, gamma_uav_user, interference];
        if vals.iter().any(|v| !(*v >= 0.0)) || !(af_gain_sq > 0.0) || !(sigma2 > 0.0) {
            return Err(Error::invalid("link_budget", "negative or undefined entry"));
        }
        Ok(Self {
            gamma_sat_user,
            gamma_sat_uav,
            gamma_uav_user,
            af_gain_sq,
            varsigma: 1.0 / (sigma2 * af_gain_sq),
            interference,
            sigma2,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoverModel {
    pub p0: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl HoverModel {
    pub fn new(p0: f64, delta: f64, epsilon: f64) -> Result<Self> {
        if !(p0 > 0.0 && epsilon > 0.0 && delta > -1.0) {
            return Err(Error::invalid("hover", "need p0 > 0, epsilon > 0, delta > -1"));
        }
        Ok(Self { p0, delta, epsilon })
    }

    /// `p0 = 50 W`, `delta = 0.1`, epsilon chosen so that `power_at_ref` W is
    /// drawn at `ref_altitude` m.
    pub fn calibrated(power_at_ref: f64, ref_altitude: f64) -> Result<Self> {
        let (p0, delta) = (50.0, 0.1);
        let base = p0 * (1.0 + delta);
        if !(power_at_ref > base && ref_altitude > 0.0) {
            return Err(Error::invalid(
                "hover_power",
                format!("must exceed {base} W at a positive reference altitude"),
            ));
        }
        Self::new(p0, delta, 2.0 * (power_at_ref / base).ln() / ref_altitude)
    }
}

impl Default for HoverModel {
    fn default() -> Self {
        Self::calibrated(58.0, 100.0).expect("valid calibration")
    }
}

pub fn hover_power(h: f64, m: &HoverModel) -> f64 {
    m.p0 * (1.0 + m.delta) * (m.epsilon * h / 2.0).exp()
}

/// Altitude at which hovering draws `p` watts.
pub fn altitude_from_power(p: f64, m: &HoverModel) -> Result<f64> {
    let base = m.p0 * (1.0 + m.delta);
    if !(p >= base) {
        return Err(Error::invalid("hover_power", format!("{p} W is below the {base} W floor")));
    }
    Ok(2.0 / m.epsilon * (p / base).ln())
}

/// `1 / (|hbar|^2 + sigma2)`.
pub fn af_gain_sq(sat_uav_amp: f64, sigma2: f64) -> f64 {
    1.0 / (sat_uav_amp * sat_uav_amp + sigma2)
}

/// Average path gain `10^(-pl_avg/10)` from `uav` to `user`.
pub fn avg_path_gain(user: &User, uav: &UavRelay, a2g: &A2GParams) -> Result<f64> {
    let pl = path_loss(slant_distance(user, uav), elevation_angle(user, uav), a2g)?;
    Ok(10f64.powf(-pl.avg / 10.0))
}

/// Aggregate interference at `user` from every relay except `serving`.
/// `powers[k]` is the transmit power of `uavrs[k]`.
pub fn interference_at_user(
    user: &User,
    serving: usize,
    uavrs: &[UavRelay],
    powers: &[f64],
    a2g: &A2GParams,
) -> Result<f64> {
    if powers.len() != uavrs.len() {
        return Err(Error::invalid("powers", "one power per relay required"));
    }
    let mut total = 0.0;
    for (u, &p) in uavrs.iter().zip(powers) {
        if u.id == serving || p <= 0.0 {
            continue;
        }
        total += p * avg_path_gain(user, u, a2g)?;
    }
    Ok(total)
}

fn norm_sq(h: &[Complex64]) -> f64 {
    h.iter().map(|c| c.norm_sqr()).sum()
}

pub fn sinr_uav_user(p_tx: f64, h: &[Complex64], noise: &NoiseModel, interference: f64) -> f64 {
    p_tx * norm_sq(h) / (noise.uav() + interference)
}

pub fn snr_sat_uav(visible: bool, p_s: f64, hbar: f64, noise: &NoiseModel) -> f64 {
    if !visible {
        return 0.0;
    }
    p_s * hbar * hbar / noise.sat_uav()
}

pub fn sinr_sat_user(visible: bool, p_s: f64, h: &[Complex64], noise: &NoiseModel, interference: f64) -> f64 {
    if !visible {
        return 0.0;
    }
    p_s * norm_sq(h) / (noise.sat_user() + interference)
}

pub fn snr_gbs_user(p_g: f64, h: &[Complex64], noise: &NoiseModel) -> f64 {
    p_g * norm_sq(h) / noise.gbs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Point2;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn noise_1e13() -> NoiseModel {
        // B * psd = 1e-13 W
        NoiseModel::uniform(1e-20, 1e7).unwrap()
    }

    #[test]
    fn af_gain_examples() {
        assert_eq!(af_gain_sq(0.0, 0.5), 2.0);
        assert!((af_gain_sq(0.5f64.sqrt(), 0.5) - 1.0 / (2.0 * 0.5)).abs() < 1e-15);
        assert!((af_gain_sq(3f64.sqrt(), 1.0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn varsigma_invariant() {
        let lb = LinkBudget::new(1.0, 2.0, 3.0, 0.37, 2.5e-13, 0.0).unwrap();
        assert!((lb.varsigma * lb.af_gain_sq * lb.sigma2 - 1.0).abs() < 1e-12);
        assert!(LinkBudget::new(-1.0, 2.0, 3.0, 0.37, 1.0, 0.0).is_err());
    }

    #[test]
    fn sinr_uav_user_examples() {
        let n = noise_1e13();
        let h = [c(1e-5)];
        assert_eq!(sinr_uav_user(0.0, &h, &n, 0.0), 0.0);
        assert!((sinr_uav_user(0.1, &h, &n, 0.0) - 100.0).abs() < 1e-9);
        assert!((sinr_uav_user(0.1, &h, &n, 1e-13) - 50.0).abs() < 1e-9);
    }

    #[test]
    fn sat_links() {
        let n = noise_1e13();
        assert_eq!(snr_sat_uav(false, 100.0, 1e-6, &n), 0.0);
        assert!((snr_sat_uav(true, 100.0, 1e-6, &n) - 1000.0).abs() < 1e-9);
        assert!((snr_sat_uav(true, 1000.0, 1e-6, &n) - 1e4).abs() < 1e-8);
        let h = [c(1e-13f64.sqrt())];
        assert_eq!(sinr_sat_user(false, 100.0, &h, &n, 0.0), 0.0);
        assert!((sinr_sat_user(true, 100.0, &h, &n, 0.0) - 100.0).abs() < 1e-9);
        assert!((sinr_sat_user(true, 100.0, &h, &n, 9e-13) - 10.0).abs() < 1e-9);
    }

    #[test]
    fn gbs_snr() {
        let n = noise_1e13();
        let h = [c(1e-6)];
        assert_eq!(snr_gbs_user(0.0, &h, &n), 0.0);
        assert!((snr_gbs_user(10.0, &h, &n) - 100.0).abs() < 1e-9);
        assert!((snr_gbs_user(10.0, &[c(0.5e-6)], &n) - 25.0).abs() < 1e-9);
    }

    #[test]
    fn hover_examples() {
        let m = HoverModel::default();
        assert!((hover_power(0.0, &m) - 55.0).abs() < 1e-12);
        assert!((hover_power(100.0, &m) - 58.0).abs() < 0.1);
        assert!((m.epsilon - 1.0621965e-3).abs() < 1e-9);
        assert!((altitude_from_power(hover_power(100.0, &m), &m).unwrap() - 100.0).abs() < 1e-6);
        assert!(altitude_from_power(10.0, &m).is_err());
    }

    fn relay(id: usize, x: f64) -> UavRelay {
        UavRelay { id, position: Point2::new(x, 0.0), altitude: 100.0, coverage_radius: 100.0, hover_power: 58.0 }
    }

    #[test]
    fn interference_examples() {
        let a2g = A2GParams::urban();
        let user = User { id: 0, position: Point2::new(0.0, 0.0) };
        let one = [relay(0, 0.0)];
        assert_eq!(interference_at_user(&user, 0, &one, &[0.1], &a2g).unwrap(), 0.0);
        let two = [relay(0, 0.0), relay(1, 300.0)];
        assert_eq!(interference_at_user(&user, 0, &two, &[0.1, 0.0], &a2g).unwrap(), 0.0);
        let i = interference_at_user(&user, 0, &two, &[0.1, 0.1], &a2g).unwrap();
        let g = avg_path_gain(&user, &two[1], &a2g).unwrap();
        assert!((i - 0.1 * g).abs() < 1e-30);
        assert!(i > 0.0 && i < 0.1);
        assert!(interference_at_user(&user, 0, &two, &[0.1], &a2g).is_err());
    }
}
