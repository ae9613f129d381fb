//! Per-user relay transmit power.

use crate::error::{Error, Result};
use crate::numeric::maximize;

/// Smallest power meeting `gamma_th` on the relay to user hop.
pub fn min_power(gamma_th: f64, noise_power: f64, interference: f64, h_norm_sq: f64) -> Result<f64> {
    if !(h_norm_sq > 0.0) {
        return Err(Error::DeadChannel);
    }
    Ok(gamma_th * (noise_power + interference) / h_norm_sq)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerChoice {
    pub power: f64,
    /// `p_min > p_max`: QoS cannot be met and full power is used.
    pub infeasible: bool,
}

/// Maximises `objective` over `[0, p_max]` and applies the clipping ladder:
/// clamp into `[p_min, p_max]` when feasible, otherwise `p_max`.
pub fn optimize_power<F>(p_min: f64, p_max: f64, objective: F, tol: f64, max_iter: usize) -> PowerChoice
where
    F: Fn(f64) -> f64,
{
    if p_min > p_max {
        return PowerChoice { power: p_max, infeasible: true };
    }
    let best = maximize(&objective, 0.0, p_max, tol, max_iter).arg;
    let power = if best <= p_min {
        p_min
    } else if best >= p_max {
        p_max
    } else {
        best
    };
    PowerChoice { power, infeasible: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_power_examples() {
        let p = min_power(2.0, 1e-13, 0.0, 1e-10).unwrap();
        assert!((p - 2e-3).abs() < 1e-15);
        let p3 = min_power(2.0, 1e-13, 2e-13, 1e-10).unwrap();
        assert!((p3 / p - 3.0).abs() < 1e-12);
        // round trip through the hop SINR
        let (n, i, h) = (8e-14, 3e-14, 4e-9);
        let p = min_power(1.9953, n, i, h).unwrap();
        assert!((p * h / (n + i) / 1.9953 - 1.0).abs() < 1e-9);
        assert!(matches!(min_power(2.0, 1e-13, 0.0, 0.0), Err(Error::DeadChannel)));
    }

    #[test]
    fn ladder() {
        let dec = optimize_power(0.01, 0.1, |p| -p, 1e-6, 200);
        assert!((dec.power - 0.01).abs() < 1e-12 && !dec.infeasible);
        let inc = optimize_power(0.01, 0.1, |p| p, 1e-6, 200);
        assert!((inc.power - 0.1).abs() < 1e-12);
        let bad = optimize_power(0.5, 0.1, |p| p, 1e-6, 200);
        assert_eq!(bad, PowerChoice { power: 0.1, infeasible: true });
        let mid = optimize_power(0.0, 0.1, |p| -(p - 0.037).powi(2), 1e-9, 200);
        assert!((mid.power - 0.037).abs() < 1e-6);
    }
}
