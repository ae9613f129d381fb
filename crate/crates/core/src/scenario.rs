//! Geometric world: users, UAV relays, the ground base station (GBS), the
//! LEO satellite orbit, and hotspot detection over the GBS sector grid.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};
use crate::rng::stream;

/// Standard gravitational parameter of the Earth, m^3/s^2.
pub const EARTH_MU: f64 = 3.986_004_418e14;

/// Mean Earth radius, m.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Axis-aligned rectangle `[0, width] x [0, height]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Area {
    pub width: f64,
    pub height: f64,
}

impl Area {
    pub fn new(width: f64, height: f64) -> Result<Self> {
        if !(width > 0.0 && height > 0.0 && width.is_finite() && height.is_finite()) {
            return Err(Error::invalid(
                "area",
                format!("degenerate rectangle {width} x {height}"),
            ));
        }
        Ok(Self { width, height })
    }

    pub fn size(&self) -> f64 {
        self.width * self.height
    }

    pub fn contains(&self, p: &Point2) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }

    pub fn clip(&self, p: Point2) -> Point2 {
        Point2::new(p.x.clamp(0.0, self.width), p.y.clamp(0.0, self.height))
    }

    pub fn center(&self) -> Point2 {
        Point2::new(0.5 * self.width, 0.5 * self.height)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct User {
    pub id: usize,
    pub position: Point2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UavRelay {
    pub id: usize,
    pub position: Point2,
    pub altitude: f64,
    pub coverage_radius: f64,
    pub hover_power: f64,
}

impl UavRelay {
    pub fn covers(&self, user: &User) -> bool {
        let r = horizontal_distance(user, self);
        r * r <= self.coverage_radius * self.coverage_radius
    }
}

/// LEO satellite on a circular orbit in the plane through the service area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Satellite {
    pub altitude: f64,
    pub orbital_period: f64,
    pub polar_angle: f64,
    pub earth_radius: f64,
    pub earth_center_distance: f64,
    pub min_elevation_slant_range: f64,
    pub tx_power: f64,
}

impl Satellite {
    /// Builds a satellite whose visibility edge is the slant range at
    /// `min_elevation` (radians) and whose period follows Kepler's third law.
    pub fn new(altitude: f64, min_elevation: f64, polar_angle: f64, tx_power: f64) -> Result<Self> {
        if !(altitude > 0.0) {
            return Err(Error::invalid("altitude", "must be positive"));
        }
        if !(0.0..PI / 2.0).contains(&min_elevation) {
            return Err(Error::invalid("min_elevation", "must lie in [0, pi/2)"));
        }
        let r = EARTH_RADIUS_M + altitude;
        Ok(Self {
            altitude,
            orbital_period: 2.0 * PI * (r.powi(3) / EARTH_MU).sqrt(),
            polar_angle,
            earth_radius: EARTH_RADIUS_M,
            earth_center_distance: r,
            min_elevation_slant_range: slant_range_at_elevation(EARTH_RADIUS_M, altitude, min_elevation),
            tx_power,
        })
    }

    /// Central angle between the sub-satellite point and the service area at time `t`.
    pub fn orbital_angle(&self, t: f64) -> f64 {
        2.0 * PI * t / self.orbital_period - self.polar_angle
    }

    /// Visibility threshold on `cos(orbital_angle)`.
    pub fn visibility_threshold(&self) -> f64 {
        let (re, rec, dsr) = (
            self.earth_radius,
            self.earth_center_distance,
            self.min_elevation_slant_range,
        );
        (re * re + rec * rec - dsr * dsr) / (2.0 * re * rec)
    }

    /// Distance at time `t` to a point at height `observer_altitude` above the service area.
    pub fn range_to(&self, t: f64, observer_altitude: f64) -> f64 {
        let ro = self.earth_radius + observer_altitude;
        let rec = self.earth_center_distance;
        (ro * ro + rec * rec - 2.0 * ro * rec * self.orbital_angle(t).cos())
            .max(0.0)
            .sqrt()
    }
}

/// Slant range from the ground to a satellite seen at elevation `elevation`.
pub fn slant_range_at_elevation(earth_radius: f64, altitude: f64, elevation: f64) -> f64 {
    let r = earth_radius + altitude;
    let (s, c) = elevation.sin_cos();
    (r * r - earth_radius * earth_radius * c * c).sqrt() - earth_radius * s
}

/// 1 when the satellite is visible at `t`, else 0.
pub fn satellite_visibility(sat: &Satellite, t: f64) -> u8 {
    u8::from(sat.orbital_angle(t).cos() >= sat.visibility_threshold())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundStation {
    pub position: Point2,
    pub area: Area,
    pub max_users: usize,
    pub tx_power_per_user: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioState {
    pub users: Vec<User>,
    pub uavrs: Vec<UavRelay>,
    pub gbs: GroundStation,
    pub satellite: Satellite,
    pub slot_index: usize,
    pub num_slots: usize,
    pub slot_duration: f64,
    pub rng_seed: u64,
}

impl ScenarioState {
    /// Start time of the current slot, seconds.
    pub fn slot_start(&self) -> f64 {
        self.slot_index as f64 * self.slot_duration
    }

    pub fn satellite_visible(&self) -> bool {
        satellite_visibility(&self.satellite, self.slot_start()) == 1
    }

    /// Moves to the next slot. Users take a uniform random step of at most
    /// `mobility_step` meters (zero keeps them static).
    pub fn advance_slot(&mut self, mobility_step: f64) -> Result<()> {
        if self.slot_index + 1 >= self.num_slots {
            return Err(Error::invalid("slot_index", "already at the last slot"));
        }
        self.slot_index += 1;
        if mobility_step > 0.0 {
            let mut rng = stream(self.rng_seed, 0x6d6f_6269, self.slot_index as u64);
            for u in &mut self.users {
                let angle = rng.gen_range(0.0..2.0 * PI);
                let step = mobility_step * rng.gen::<f64>();
                let moved = Point2::new(
                    u.position.x + step * angle.cos(),
                    u.position.y + step * angle.sin(),
                );
                u.position = self.gbs.area.clip(moved);
            }
        }
        Ok(())
    }

    /// Smallest pairwise horizontal distance between UAV relays.
    pub fn min_uav_separation(&self) -> f64 {
        min_pairwise_distance(self.uavrs.iter().map(|u| u.position))
    }
}

pub(crate) fn min_pairwise_distance(points: impl Iterator<Item = Point2>) -> f64 {
    let pts: Vec<Point2> = points.collect();
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.min(pts[i].distance(&pts[j]));
        }
    }
    best
}

pub fn horizontal_distance(u: &User, v: &UavRelay) -> f64 {
    u.position.distance(&v.position)
}

pub fn slant_distance(u: &User, v: &UavRelay) -> f64 {
    horizontal_distance(u, v).hypot(v.altitude)
}

/// Elevation of the relay seen from the user, in `(0, pi/2]`.
pub fn elevation_angle(u: &User, v: &UavRelay) -> f64 {
    v.altitude.atan2(horizontal_distance(u, v))
}

/// Homogeneous Poisson point process over `area`.
pub fn generate_users(intensity: f64, area: Area, seed: u64) -> Result<Vec<User>> {
    if !(intensity > 0.0 && intensity.is_finite()) {
        return Err(Error::invalid("intensity", format!("{intensity} is not positive")));
    }
    let area = Area::new(area.width, area.height)?;
    let mut rng = stream(seed, 0x7070_70, 0);
    let mean = intensity * area.size();
    let count = Poisson::new(mean)
        .map_err(|e| Error::invalid("intensity", e.to_string()))?
        .sample(&mut rng) as usize;
    Ok(uniform_users(count, area, 0, &mut rng))
}

/// `count` users i.i.d. uniform over `area`, ids starting at `first_id`.
pub fn uniform_users(count: usize, area: Area, first_id: usize, rng: &mut ChaCha8Rng) -> Vec<User> {
    (0..count)
        .map(|k| User {
            id: first_id + k,
            position: Point2::new(rng.gen_range(0.0..=area.width), rng.gen_range(0.0..=area.height)),
        })
        .collect()
}

/// `count` users uniform over the disk of `radius` around `center`, clipped to `area`.
pub fn disk_users(
    count: usize,
    center: Point2,
    radius: f64,
    area: Area,
    first_id: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<User> {
    (0..count)
        .map(|k| {
            let r = radius * rng.gen::<f64>().sqrt();
            let a = rng.gen_range(0.0..2.0 * PI);
            User {
                id: first_id + k,
                position: area.clip(Point2::new(center.x + r * a.cos(), center.y + r * a.sin())),
            }
        })
        .collect()
}

/// Square sector grid over the GBS area; cells have side `2 * radius` and
/// the last row/column is clipped to the area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorGrid {
    pub area: Area,
    pub cell: f64,
}

impl SectorGrid {
    pub fn new(area: Area, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::invalid("radius", "sector radius must be positive"));
        }
        Ok(Self {
            area,
            cell: 2.0 * radius,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        (
            (self.area.width / self.cell).ceil().max(1.0) as usize,
            (self.area.height / self.cell).ceil().max(1.0) as usize,
        )
    }

    pub fn cell_of(&self, p: &Point2) -> (usize, usize) {
        let (nx, ny) = self.dims();
        (
            ((p.x / self.cell).floor().max(0.0) as usize).min(nx - 1),
            ((p.y / self.cell).floor().max(0.0) as usize).min(ny - 1),
        )
    }

    /// Centers of the cells that are not clipped by the area boundary.
    pub fn full_cell_centers(&self) -> Vec<Point2> {
        let nx = (self.area.width / self.cell).floor() as usize;
        let ny = (self.area.height / self.cell).floor() as usize;
        let mut out = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            for ix in 0..nx {
                out.push(Point2::new(
                    (ix as f64 + 0.5) * self.cell,
                    (iy as f64 + 0.5) * self.cell,
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HotspotKind {
    DensityBased,
    ExcessBased,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hotspot {
    pub kind: HotspotKind,
    pub sector_center: Point2,
    pub member_users: Vec<usize>,
    pub density_threshold: f64,
}

fn centroid<'a>(users: impl Iterator<Item = &'a User>) -> Point2 {
    let (mut sx, mut sy, mut n) = (0.0, 0.0, 0usize);
    for u in users {
        sx += u.position.x;
        sy += u.position.y;
        n += 1;
    }
    if n == 0 {
        return Point2::default();
    }
    Point2::new(sx / n as f64, sy / n as f64)
}

/// Finds overloaded sectors and GBS overflow.
///
/// A sector is a `DensityBased` hotspot when its member count exceeds
/// `density_threshold * pi * radius^2`. One `ExcessBased` hotspot collects the
/// users left outside `admitted` whenever `users.len() > gbs.max_users`.
/// Hotspot centers are member centroids.
pub fn detect_hotspots(
    users: &[User],
    gbs: &GroundStation,
    admitted: &[usize],
    radius: f64,
    density_threshold: f64,
) -> Result<Vec<Hotspot>> {
    let grid = SectorGrid::new(gbs.area, radius)?;
    let (nx, ny) = grid.dims();
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); nx * ny];
    for (k, u) in users.iter().enumerate() {
        let (ix, iy) = grid.cell_of(&u.position);
        cells[iy * nx + ix].push(k);
    }
    let limit = density_threshold * PI * radius * radius;
    let mut out = Vec::new();
    for members in cells.into_iter().filter(|m| !m.is_empty()) {
        if members.len() as f64 > limit {
            out.push(Hotspot {
                kind: HotspotKind::DensityBased,
                sector_center: centroid(members.iter().map(|&k| &users[k])),
                member_users: members.iter().map(|&k| users[k].id).collect(),
                density_threshold,
            });
        }
    }
    if users.len() > gbs.max_users {
        let mut served = vec![false; users.len()];
        for &id in admitted {
            if let Some(k) = users.iter().position(|u| u.id == id) {
                served[k] = true;
            }
        }
        let excess: Vec<&User> = users.iter().zip(&served).filter(|(_, s)| !**s).map(|(u, _)| u).collect();
        if !excess.is_empty() {
            out.push(Hotspot {
                kind: HotspotKind::ExcessBased,
                sector_center: centroid(excess.iter().copied()),
                member_users: excess.iter().map(|u| u.id).collect(),
                density_threshold,
            });
        }
    }
    Ok(out)
}
