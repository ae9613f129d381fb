//! Propagation and fading: air-to-ground LoS/NLoS path loss, the UAV relay
//! to user gain, shadowed-Rician satellite links and Rayleigh GBS links.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::SPEED_OF_LIGHT;

/// How the UAV relay to user amplitude combines distance and path loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum A2GGainModel {
    /// `g * (4 pi fc d / c)^(-alpha/2) * 10^(-pl_avg/20)`.
    AsPrinted,
    /// `g * 10^(-pl_avg/20)`; distance enters only through `pl_avg`.
    PathlossOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct A2GParams {
    pub a: f64,
    pub b: f64,
    pub eta_los: f64,
    pub eta_nlos: f64,
    pub carrier_freq: f64,
    pub light_speed: f64,
    pub pathloss_exp: f64,
    beta: f64,
}

impl A2GParams {
    pub fn new(a: f64, b: f64, eta_los: f64, eta_nlos: f64, carrier_freq: f64, pathloss_exp: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::invalid("a/b", "environment constants must be positive"));
        }
        if !(eta_nlos > eta_los && eta_los >= 0.0) {
            return Err(Error::invalid("eta", "need eta_nlos > eta_los >= 0"));
        }
        if !(carrier_freq > 0.0) {
            return Err(Error::invalid("carrier_freq", "must be positive"));
        }
        let mut p = Self {
            a,
            b,
            eta_los,
            eta_nlos,
            carrier_freq,
            light_speed: SPEED_OF_LIGHT,
            pathloss_exp,
            beta: 0.0,
        };
        p.set_carrier_freq(carrier_freq);
        Ok(p)
    }

    /// Dense-urban defaults at 2.4 GHz.
    pub fn urban() -> Self {
        Self::new(9.61, 0.16, 1.0, 20.0, 2.4e9, 2.0).expect("valid constants")
    }

    pub fn set_carrier_freq(&mut self, fc: f64) {
        self.carrier_freq = fc;
        self.beta = 20.0 * (4.0 * PI * fc / self.light_speed).log10() + self.eta_nlos;
    }

    /// `20 log10(4 pi fc / c) + eta_nlos`, dB.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    fn free_space_db(&self, d: f64) -> f64 {
        20.0 * (4.0 * PI * self.carrier_freq * d / self.light_speed).log10()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SRFParams {
    pub direct_power: f64,
    pub scatter_half_power: f64,
    pub nakagami_m: f64,
    pub avg_gain: f64,
}

impl SRFParams {
    pub fn new(direct_power: f64, scatter_half_power: f64, nakagami_m: f64, avg_gain: f64) -> Result<Self> {
        if !(direct_power >= 0.0) {
            return Err(Error::invalid("direct_power", "must be non-negative"));
        }
        if !(scatter_half_power > 0.0) {
            return Err(Error::invalid("scatter_half_power", "must be positive"));
        }
        if !(nakagami_m >= 0.5) {
            return Err(Error::invalid("nakagami_m", "must be at least 0.5"));
        }
        Ok(Self { direct_power, scatter_half_power, nakagami_m, avg_gain })
    }

    pub fn average_shadowing() -> Self {
        Self { direct_power: 0.835, scatter_half_power: 0.126, nakagami_m: 10.1, avg_gain: 1.0 }
    }

    pub fn heavy_shadowing() -> Self {
        Self { direct_power: 8.97e-4, scatter_half_power: 0.063, nakagami_m: 0.739, avg_gain: 1.0 }
    }

    /// `2 * b + omega`.
    pub fn mean_power(&self) -> f64 {
        2.0 * self.scatter_half_power + self.direct_power
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SrfPreset {
    Average,
    Heavy,
}

impl SrfPreset {
    pub fn params(self) -> SRFParams {
        match self {
            SrfPreset::Average => SRFParams::average_shadowing(),
            SrfPreset::Heavy => SRFParams::heavy_shadowing(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FadingSource {
    Rayleigh,
    ShadowedRician,
    A2GSmallScale,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingSample {
    pub value: Complex64,
    pub source: FadingSource,
}

impl FadingSample {
    /// Deterministic unit amplitude for the air-to-ground small-scale term.
    pub fn unit() -> Self {
        Self { value: Complex64::new(1.0, 0.0), source: FadingSource::A2GSmallScale }
    }

    pub fn power(&self) -> f64 {
        self.value.norm_sqr()
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta <= PI / 2.0 + 1e-12) {
        return Err(Error::invalid("theta", format!("{theta} rad outside (0, pi/2]")));
    }
    Ok(())
}

fn check_distance(name: &'static str, d: f64) -> Result<()> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::invalid(name, format!("{d} is not a positive distance")));
    }
    Ok(())
}

/// Line-of-sight probability at elevation `theta`.
pub fn los_probability(theta: f64, p: &A2GParams) -> Result<f64> {
    check_theta(theta)?;
    Ok(1.0 / (1.0 + p.a * (-p.b * (theta.to_degrees() - p.a)).exp()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLoss {
    pub los: f64,
    pub nlos: f64,
    pub avg: f64,
}

pub fn path_loss(d: f64, theta: f64, p: &A2GParams) -> Result<PathLoss> {
    check_distance("d", d)?;
    let p_los = los_probability(theta, p)?;
    let fs = p.free_space_db(d);
    Ok(PathLoss {
        los: fs + p.eta_los,
        nlos: fs + p.eta_nlos,
        avg: (p.eta_los - p.eta_nlos) * p_los + 20.0 * d.log10() + p.beta,
    })
}

/// UAV relay to user amplitude under the chosen gain model.
pub fn a2g_channel_gain(
    d: f64,
    theta: f64,
    small_scale: FadingSample,
    p: &A2GParams,
    model: A2GGainModel,
) -> Result<Complex64> {
    let pl = path_loss(d, theta, p)?;
    let spread = match model {
        A2GGainModel::AsPrinted => {
            (4.0 * PI * p.carrier_freq * d / p.light_speed).powf(-p.pathloss_exp / 2.0)
        }
        A2GGainModel::PathlossOnly => 1.0,
    };
    Ok(small_scale.value * spread * 10f64.powf(-pl.avg / 20.0))
}

/// `sqrt(g_avg * d^-alpha)`.
pub fn sat_channel_gain(d: f64, avg_gain: f64, alpha: f64) -> Result<f64> {
    check_distance("d", d)?;
    Ok((avg_gain * d.powf(-alpha)).sqrt())
}

/// One shadowed-Rician draw `A e^{j zeta} + Z` with `A^2 ~ Gamma(m, omega/m)`
/// and `Z ~ CN(0, 2b)`.
pub fn sample_shadowed_rician<R: Rng + ?Sized>(srf: &SRFParams, rng: &mut R) -> FadingSample {
    let los_sq = if srf.direct_power > 0.0 {
        Gamma::new(srf.nakagami_m, srf.direct_power / srf.nakagami_m)
            .expect("validated shape")
            .sample(rng)
    } else {
        0.0
    };
    let phase = rng.gen_range(0.0..2.0 * PI);
    let s = srf.scatter_half_power.sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    FadingSample {
        value: Complex64::from_polar(los_sq.sqrt(), phase) + Complex64::new(s * re, s * im),
        source: FadingSource::ShadowedRician,
    }
}

/// Unit-power circular complex Gaussian draw.
pub fn sample_rayleigh<R: Rng + ?Sized>(rng: &mut R) -> FadingSample {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    FadingSample { value: Complex64::new(s * re, s * im), source: FadingSource::Rayleigh }
}

/// `g * r^-alpha`.
pub fn gbs_channel_gain(r: f64, fade: FadingSample, alpha: f64) -> Result<Complex64> {
    check_distance("r", r)?;
    Ok(fade.value * r.powf(-alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn p() -> A2GParams {
        A2GParams::urban()
    }

    #[test]
    fn los_probability_values() {
        let p = p();
        assert!((los_probability(PI / 2.0, &p).unwrap() - 0.999975).abs() < 1e-4);
        assert!((los_probability(PI / 4.0, &p).unwrap() - 0.96769).abs() < 1e-3);
        let at_a = los_probability(p.a.to_radians(), &p).unwrap();
        assert!((at_a - 1.0 / (1.0 + p.a)).abs() < 1e-12);
    }

    #[test]
    fn los_probability_range_check() {
        assert!(los_probability(0.0, &p()).is_err());
        assert!(los_probability(1.7, &p()).is_err());
        assert!(los_probability(-0.2, &p()).is_err());
    }

    #[test]
    fn path_loss_values() {
        let pl = path_loss(100.0, PI / 2.0, &p()).unwrap();
        assert!((pl.los - 81.05).abs() < 0.05, "{}", pl.los);
        assert!((pl.nlos - 100.05).abs() < 0.05);
        assert!((pl.avg - pl.los).abs() < 0.01);
        assert!(path_loss(0.0, 1.0, &p()).is_err());
    }

    #[test]
    fn beta_follows_carrier() {
        let mut q = p();
        let b0 = q.beta();
        q.set_carrier_freq(4.8e9);
        assert!((q.beta() - b0 - 20.0 * 2f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn a2g_gain_examples() {
        // identity: alpha 0 and pl_avg 0 dB is reached by zeroing the constants
        let mut q = A2GParams::new(9.61, 0.16, 0.0, 1e-9, 2.4e9, 0.0).unwrap();
        q.light_speed = 4.0 * PI * q.carrier_freq; // 4 pi fc / c = 1
        q.set_carrier_freq(q.carrier_freq);
        let g = a2g_channel_gain(1.0, PI / 2.0, FadingSample::unit(), &q, A2GGainModel::AsPrinted).unwrap();
        assert!((g.re - 1.0).abs() < 1e-6 && g.im == 0.0);

        // 4 pi fc d / c = 10 with pl_avg = 20 dB -> 0.01
        let mut q = A2GParams::new(9.61, 0.16, 0.0, 1.0, 2.4e9, 2.0).unwrap();
        q.light_speed = 4.0 * PI * q.carrier_freq;
        q.set_carrier_freq(q.carrier_freq);
        let g = a2g_channel_gain(10.0, PI / 2.0, FadingSample::unit(), &q, A2GGainModel::AsPrinted).unwrap();
        let pl = path_loss(10.0, PI / 2.0, &q).unwrap();
        // pl_avg here is ~20 dB; rescale to isolate the 10^-1 spread factor
        assert!((g.re / 10f64.powf(-pl.avg / 20.0) - 0.1).abs() < 1e-12);
        assert!((pl.avg - 20.0).abs() < 1e-3);
        assert!((g.re - 0.01).abs() < 1e-5);
    }

    #[test]
    fn a2g_gain_doubling_distance() {
        let q = p();
        let theta = 0.7;
        let g1 = a2g_channel_gain(100.0, theta, FadingSample::unit(), &q, A2GGainModel::AsPrinted).unwrap();
        let g2 = a2g_channel_gain(200.0, theta, FadingSample::unit(), &q, A2GGainModel::AsPrinted).unwrap();
        let dpl = path_loss(200.0, theta, &q).unwrap().avg - path_loss(100.0, theta, &q).unwrap().avg;
        assert!((g2.re / g1.re - 10f64.powf(-dpl / 20.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn pathloss_only_power_matches_pl_avg() {
        let q = p();
        let g = a2g_channel_gain(150.0, 0.6, FadingSample::unit(), &q, A2GGainModel::PathlossOnly).unwrap();
        let pl = path_loss(150.0, 0.6, &q).unwrap().avg;
        assert!((10.0 * g.norm_sqr().log10() + pl).abs() < 1e-9);
    }

    #[test]
    fn sat_gain_examples() {
        assert_eq!(sat_channel_gain(1.0, 1.0, 2.0).unwrap(), 1.0);
        assert!((sat_channel_gain(100.0, 4.0, 2.0).unwrap() - 0.02).abs() < 1e-15);
        let a = sat_channel_gain(50.0, 1.0, 2.0).unwrap();
        let b = sat_channel_gain(50.0, 4.0, 2.0).unwrap();
        assert!((b / a - 2.0).abs() < 1e-12);
        assert!(sat_channel_gain(0.0, 1.0, 2.0).is_err());
    }

    fn mc_mean_power(srf: &SRFParams, seed: u64) -> f64 {
        let mut rng = stream(seed, 1, 0);
        let n = 200_000;
        (0..n).map(|_| sample_shadowed_rician(srf, &mut rng).power()).sum::<f64>() / n as f64
    }

    #[test]
    fn srf_mean_power_presets() {
        let avg = mc_mean_power(&SRFParams::average_shadowing(), 3);
        assert!((avg / 1.087 - 1.0).abs() < 0.02, "{avg}");
        let heavy = mc_mean_power(&SRFParams::heavy_shadowing(), 4);
        assert!((heavy / 0.1269 - 1.0).abs() < 0.02, "{heavy}");
    }

    #[test]
    fn srf_degenerate_constant() {
        let srf = SRFParams { direct_power: 0.5, scatter_half_power: 1e-18, nakagami_m: 1e9, avg_gain: 1.0 };
        let mut rng = stream(5, 1, 0);
        for _ in 0..100 {
            let s = sample_shadowed_rician(&srf, &mut rng);
            assert!((s.value.norm() - 0.5f64.sqrt()).abs() < 1e-3);
        }
    }

    #[test]
    fn srf_reproducible() {
        let srf = SRFParams::average_shadowing();
        let mut a = stream(11, 2, 7);
        let mut b = stream(11, 2, 7);
        for _ in 0..50 {
            assert_eq!(sample_shadowed_rician(&srf, &mut a), sample_shadowed_rician(&srf, &mut b));
        }
    }

    #[test]
    fn srf_param_validation() {
        assert!(SRFParams::new(-1.0, 0.1, 1.0, 1.0).is_err());
        assert!(SRFParams::new(0.1, 0.0, 1.0, 1.0).is_err());
        assert!(SRFParams::new(0.1, 0.1, 0.4, 1.0).is_err());
        assert!(SRFParams::new(0.1, 0.1, 0.5, 1.0).is_ok());
    }

    #[test]
    fn gbs_gain_examples() {
        let one = FadingSample { value: Complex64::new(1.0, 0.0), source: FadingSource::Rayleigh };
        assert_eq!(gbs_channel_gain(1.0, one, 2.0).unwrap(), Complex64::new(1.0, 0.0));
        assert!((gbs_channel_gain(10.0, one, 2.0).unwrap().re - 0.01).abs() < 1e-15);
        assert!(gbs_channel_gain(0.0, one, 2.0).is_err());
        let mut rng = stream(8, 3, 0);
        let n = 200_000;
        let m = (0..n)
            .map(|_| gbs_channel_gain(1.0, sample_rayleigh(&mut rng), 2.0).unwrap().norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((m - 1.0).abs() < 0.02, "{m}");
    }
}
