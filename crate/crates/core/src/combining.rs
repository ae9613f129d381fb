//! Cooperative-diversity receiver: the user sees the direct satellite signal
//! on `L` antennas and the AF-relayed copy on another `L`, and combines all
//! `2L` branches with a weight vector `w`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CombinerInput {
    pub h_direct: Vec<Complex64>,
    pub h_relay: Vec<Complex64>,
    pub hbar: f64,
    pub af_gain: f64,
    pub sigma2: f64,
    pub tx_power: f64,
}

/// The four scalars that fully determine the optimal SINR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopSinrs {
    pub gamma_direct: f64,
    pub gamma_sat_uav: f64,
    pub gamma_uav_user: f64,
    pub varsigma: f64,
}

fn nsq(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    // a^H b
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

impl CombinerInput {
    pub fn new(
        h_direct: Vec<Complex64>,
        h_relay: Vec<Complex64>,
        hbar: f64,
        af_gain: f64,
        sigma2: f64,
        tx_power: f64,
    ) -> Result<Self> {
        if h_direct.is_empty() || h_direct.len() != h_relay.len() {
            return Err(Error::invalid("antennas", "direct and relay vectors need equal length L >= 1"));
        }
        if !(sigma2 > 0.0) {
            return Err(Error::invalid("sigma2", "must be positive"));
        }
        if !(tx_power >= 0.0 && af_gain >= 0.0) {
            return Err(Error::invalid("tx_power", "power and gain must be non-negative"));
        }
        Ok(Self { h_direct, h_relay, hbar, af_gain, sigma2, tx_power })
    }

    /// Builds the receiver model for one user from raw link quantities.
    ///
    /// `h_direct` and `h_relay` are raw amplitudes, `relay_power` the relay
    /// transmit power, `noise_power` the thermal noise `B * psd`, and
    /// `interference` the aggregate co-channel power from other relays,
    /// which is folded in as extra white noise on every branch.
    pub fn cooperative(
        h_direct: &[Complex64],
        h_relay: &[Complex64],
        hbar: f64,
        relay_power: f64,
        noise_power: f64,
        interference: f64,
        sat_power: f64,
    ) -> Result<Self> {
        let white = noise_power / (noise_power + interference);
        let d = white.sqrt();
        let r = (relay_power * white).sqrt();
        Self::new(
            h_direct.iter().map(|h| h * d).collect(),
            h_relay.iter().map(|h| h * r).collect(),
            hbar,
            (1.0 / (hbar * hbar + noise_power)).sqrt(),
            noise_power,
            sat_power,
        )
    }

    pub fn antennas(&self) -> usize {
        self.h_direct.len()
    }

    /// `[h_direct; h_relay * G * hbar]`.
    pub fn stacked(&self) -> Vec<Complex64> {
        let s = self.af_gain * self.hbar;
        self.h_direct.iter().copied().chain(self.h_relay.iter().map(|h| h * s)).collect()
    }

    pub fn hop_sinrs(&self) -> Result<HopSinrs> {
        let g2 = self.af_gain * self.af_gain;
        if g2 == 0.0 {
            return Err(Error::UndefinedRatio("relay gain"));
        }
        Ok(HopSinrs {
            gamma_direct: self.tx_power * nsq(&self.h_direct) / self.sigma2,
            gamma_sat_uav: self.tx_power * self.hbar * self.hbar / self.sigma2,
            gamma_uav_user: nsq(&self.h_relay) / self.sigma2,
            varsigma: 1.0 / (self.sigma2 * g2),
        })
    }

    fn noise_quadratic(&self, w: &[Complex64]) -> f64 {
        let l = self.antennas();
        let (wd, wr) = w.split_at(l);
        let g2 = self.af_gain * self.af_gain;
        self.sigma2 * (nsq(wd) + nsq(wr) + g2 * dot(&self.h_relay, wr).norm_sqr())
    }
}

/// Block-diagonal `sigma2 * diag(I, I + G^2 h_r h_r^H)`.
pub fn noise_covariance(ci: &CombinerInput) -> DMatrix<Complex64> {
    let l = ci.antennas();
    let g2 = ci.af_gain * ci.af_gain;
    let mut m = DMatrix::<Complex64>::identity(2 * l, 2 * l);
    for i in 0..l {
        for j in 0..l {
            m[(l + i, l + j)] += ci.h_relay[i] * ci.h_relay[j].conj() * g2;
        }
    }
    m * Complex64::new(ci.sigma2, 0.0)
}

pub fn combiner_sinr(ci: &CombinerInput, w: &[Complex64]) -> Result<f64> {
    if w.len() != 2 * ci.antennas() {
        return Err(Error::invalid("w", "length must be 2L"));
    }
    let den = ci.noise_quadratic(w);
    if !(den > 0.0) {
        return Err(Error::invalid("w", "zero weight vector"));
    }
    Ok(ci.tx_power * dot(w, &ci.stacked()).norm_sqr() / den)
}

/// `R_n^{-1} h`, with the relay block inverted by Sherman-Morrison.
pub fn optimal_weight(ci: &CombinerInput) -> Vec<Complex64> {
    let g2 = ci.af_gain * ci.af_gain;
    let s = ci.af_gain * ci.hbar;
    let shrink = 1.0 / (1.0 + g2 * nsq(&ci.h_relay));
    ci.h_direct
        .iter()
        .map(|h| h / ci.sigma2)
        .chain(ci.h_relay.iter().map(|h| h * (s * shrink / ci.sigma2)))
        .collect()
}

/// Optimal dual-hop SINR `gamma_is + gamma_js * gamma_ij / (gamma_ij + varsigma)`.
pub fn max_sinr_closed_form(gamma_direct: f64, gamma_sat_uav: f64, gamma_uav_user: f64, varsigma: f64) -> Result<f64> {
    if [gamma_direct, gamma_sat_uav, gamma_uav_user, varsigma].iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::invalid("gamma", "inputs must be non-negative"));
    }
    let den = gamma_uav_user + varsigma;
    if den == 0.0 {
        return Err(Error::invalid("gamma_uav_user", "second hop and varsigma both zero"));
    }
    Ok(gamma_direct + gamma_sat_uav * gamma_uav_user / den)
}

/// Optimal SINR of a receiver model.
pub fn max_sinr(ci: &CombinerInput) -> Result<f64> {
    let s = ci.hop_sinrs()?;
    max_sinr_closed_form(s.gamma_direct, s.gamma_sat_uav, s.gamma_uav_user, s.varsigma)
}

/// Unit-modulus weights co-phased with the stacked channel.
pub fn egc_weight(ci: &CombinerInput) -> Vec<Complex64> {
    ci.stacked()
        .into_iter()
        .map(|h| if h.norm() > 0.0 { h / h.norm() } else { Complex64::new(1.0, 0.0) })
        .collect()
}

pub fn egc_sinr(ci: &CombinerInput) -> Result<f64> {
    combiner_sinr(ci, &egc_weight(ci))
}

/// Relay-only SINR `gamma_js * gamma_ij / (gamma_ij + varsigma)`.
pub fn relay_path_sinr(ci: &CombinerInput) -> Result<f64> {
    let s = ci.hop_sinrs()?;
    max_sinr_closed_form(0.0, s.gamma_sat_uav, s.gamma_uav_user, s.varsigma)
}

/// Equal-weight average of the direct and relayed SINRs.
pub fn egc_average_sinr(ci: &CombinerInput) -> Result<f64> {
    let s = ci.hop_sinrs()?;
    Ok(0.5 * (s.gamma_direct + relay_path_sinr(ci)?))
}

/// Which equal-gain rule the EGC baseline uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EgcRule {
    /// Average of the direct and relayed SINRs.
    #[default]
    SinrAverage,
    /// Unit-modulus weights co-phased with the stacked channel.
    CoPhased,
}

impl EgcRule {
    pub fn sinr(self, ci: &CombinerInput) -> Result<f64> {
        match self {
            EgcRule::SinrAverage => egc_average_sinr(ci),
            EgcRule::CoPhased => egc_sinr(ci),
        }
    }
}

/// Dense reference evaluation `P h^H R_n^{-1} h`, used as an oracle.
pub fn dense_max_sinr(ci: &CombinerInput) -> Option<f64> {
    let inv = noise_covariance(ci).try_inverse()?;
    let h = DVector::from_vec(ci.stacked());
    Some(ci.tx_power * (h.adjoint() * inv * &h)[(0, 0)].re)
}
