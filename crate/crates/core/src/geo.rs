//! Coordinates, great-circle distances and 50 km distance bins.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::resolve::{Institution, Origin};

/// Mean Earth radius (IUGG), kilometres.
pub const EARTH_RADIUS_KM: f64 = 6371.0088;

/// Width of one distance bin, kilometres.
pub const BIN_WIDTH_KM: f64 = 50.0;

#[derive(Debug, Error, PartialEq)]
pub enum GeoError {
    #[error("coordinate out of range: lat {lat}, lon {lon}")]
    OutOfRange { lat: f64, lon: f64 },
    #[error("negative or non-finite distance {0}")]
    NegativeDistance(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeoPoint {
    lat: f64,
    lon: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lon: f64) -> Result<Self, GeoError> {
        if !(-90.0..=90.0).contains(&lat) || !(-180.0..=180.0).contains(&lon) {
            return Err(GeoError::OutOfRange { lat, lon });
        }
        Ok(Self { lat, lon })
    }

    pub fn lat(&self) -> f64 {
        self.lat
    }

    pub fn lon(&self) -> f64 {
        self.lon
    }
}

/// Great-circle distance on a sphere of radius [`EARTH_RADIUS_KM`], haversine form.
pub fn great_circle_distance(p: GeoPoint, q: GeoPoint) -> f64 {
    let phi1 = p.lat.to_radians();
    let phi2 = q.lat.to_radians();
    let dphi = phi2 - phi1;
    let dlambda = (q.lon - p.lon).to_radians();
    let h = (dphi / 2.0).sin().powi(2) + phi1.cos() * phi2.cos() * (dlambda / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
}

/// Half-open interval `[50(k-1), 50k)` km, indexed from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DistanceBin(u32);

impl DistanceBin {
    pub fn new(index: u32) -> Option<Self> {
        (index >= 1).then_some(Self(index))
    }

    pub fn index(&self) -> u32 {
        self.0
    }

    pub fn lo_km(&self) -> f64 {
        BIN_WIDTH_KM * f64::from(self.0 - 1)
    }

    pub fn hi_km(&self) -> f64 {
        BIN_WIDTH_KM * f64::from(self.0)
    }
}

impl fmt::Display for DistanceBin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.0)
    }
}

pub fn distance_bin(km: f64) -> Result<DistanceBin, GeoError> {
    if !km.is_finite() || km < 0.0 {
        return Err(GeoError::NegativeDistance(km));
    }
    let k = (km / BIN_WIDTH_KM).floor() as u32 + 1;
    let mut bin = DistanceBin(k);
    // guard against floor() landing one bin off near an exact multiple
    if km < bin.lo_km() {
        bin = DistanceBin(k - 1);
    } else if km >= bin.hi_km() {
        bin = DistanceBin(k + 1);
    }
    Ok(bin)
}

/// Coordinates of an institution, `None` for foreign or unlocated entries.
pub fn locate(institution: &Institution) -> Option<GeoPoint> {
    match institution.origin {
        Origin::Foreign(_) => None,
        Origin::Domestic => institution.location,
    }
}

/// Tally of institutions that could not be placed on the map.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocationTally {
    pub located: usize,
    pub unlocated: usize,
    pub foreign: usize,
}

impl LocationTally {
    pub fn count<'a>(institutions: impl IntoIterator<Item = &'a Institution>) -> Self {
        let mut tally = Self::default();
        for inst in institutions {
            match (&inst.origin, locate(inst)) {
                (Origin::Foreign(_), _) => tally.foreign += 1,
                (_, Some(_)) => tally.located += 1,
                (_, None) => tally.unlocated += 1,
            }
        }
        tally
    }
}
