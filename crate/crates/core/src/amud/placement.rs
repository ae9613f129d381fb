//! Relay placement over hotspots with pairwise separation.

use crate::error::{Error, Result};
use crate::scenario::{min_pairwise_distance, Area, Hotspot, Point2, UavRelay};

#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    pub relays: Vec<UavRelay>,
    /// Hotspots left without a relay because `K` ran out.
    pub unserved_hotspots: usize,
}

/// Pushes any pair closer than `min_sep` apart along the line joining them,
/// then clips to `area`. Fails if the area cannot hold the separation.
pub fn separate(points: &mut [Point2], min_sep: f64, area: Area) -> Result<()> {
    let n = points.len();
    for _ in 0..10_000 {
        let mut moved = false;
        for i in 0..n {
            for j in i + 1..n {
                let (pi, pj) = (points[i], points[j]);
                let d = pi.distance(&pj);
                if d >= min_sep * (1.0 - 1e-12) {
                    continue;
                }
                let (ux, uy) = if d > 0.0 {
                    ((pj.x - pi.x) / d, (pj.y - pi.y) / d)
                } else {
                    (1.0, 0.0)
                };
                let half = 0.5 * (min_sep - d);
                points[i] = area.clip(Point2::new(pi.x - half * ux, pi.y - half * uy));
                points[j] = area.clip(Point2::new(pj.x + half * ux, pj.y + half * uy));
                // A clipped point cannot move, so the partner takes the rest.
                let d2 = points[i].distance(&points[j]);
                if d2 < min_sep * (1.0 - 1e-12) {
                    let rest = min_sep - d2;
                    let q = points[j];
                    let shifted = area.clip(Point2::new(q.x + rest * ux, q.y + rest * uy));
                    if shifted != q {
                        points[j] = shifted;
                    } else {
                        let p = points[i];
                        points[i] = area.clip(Point2::new(p.x - rest * ux, p.y - rest * uy));
                    }
                }
                moved = true;
            }
        }
        if !moved {
            return Ok(());
        }
    }
    if min_pairwise_distance(points.iter().copied()) >= min_sep * (1.0 - 1e-9) {
        return Ok(());
    }
    Err(Error::invalid("placement", format!("cannot separate relays by {min_sep} m inside the area")))
}

/// One relay per hotspot, largest first, at the member centroid; at most `k`.
pub fn place_uavrs(
    hotspots: &[Hotspot],
    k: usize,
    min_sep: f64,
    area: Area,
    altitude: f64,
    coverage_radius: f64,
    hover_power: f64,
) -> Result<Placement> {
    let mut order: Vec<&Hotspot> = hotspots.iter().filter(|h| !h.member_users.is_empty()).collect();
    order.sort_by(|a, b| b.member_users.len().cmp(&a.member_users.len()));
    let chosen = order.len().min(k);
    let mut points: Vec<Point2> = order[..chosen].iter().map(|h| area.clip(h.sector_center)).collect();
    separate(&mut points, min_sep, area)?;
    Ok(Placement {
        relays: points
            .into_iter()
            .enumerate()
            .map(|(id, position)| UavRelay { id, position, altitude, coverage_radius, hover_power })
            .collect(),
        unserved_hotspots: order.len() - chosen,
    })
}
