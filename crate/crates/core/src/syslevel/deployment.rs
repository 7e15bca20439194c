use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::rng::{domain, stream};

/// Number of first-tier interfering sites.
pub const INTERFERERS: usize = 6;
/// Serving site plus interferers.
pub const SITES: usize = INTERFERERS + 1;

/// Three-sector parabolic antenna with electrical downtilt.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorAntenna {
    pub max_gain_dbi: f64,
    pub h_beamwidth_deg: f64,
    pub v_beamwidth_deg: f64,
    pub tilt_deg: f64,
    /// Attenuation cap of each cut and of the combined pattern.
    pub max_attenuation_db: f64,
}

impl Default for SectorAntenna {
    fn default() -> Self {
        Self {
            max_gain_dbi: 15.0,
            h_beamwidth_deg: 70.0,
            v_beamwidth_deg: 10.0,
            tilt_deg: 10.0,
            max_attenuation_db: 20.0,
        }
    }
}

impl SectorAntenna {
    /// Gain (dBi) towards azimuth offset `phi` from boresight and elevation
    /// angle `theta` below the horizon, both in degrees.
    pub fn gain_db(&self, phi: f64, theta: f64) -> f64 {
        let phi = (phi + 180.0).rem_euclid(360.0) - 180.0;
        let ah = (12.0 * (phi / self.h_beamwidth_deg).powi(2)).min(self.max_attenuation_db);
        let av = (12.0 * ((theta - self.tilt_deg) / self.v_beamwidth_deg).powi(2)).min(self.max_attenuation_db);
        self.max_gain_dbi - (ah + av).min(self.max_attenuation_db)
    }

    /// Best of three sectors with boresights at 0, 120 and 240 degrees.
    pub fn best_sector_gain_db(&self, azimuth: f64, theta: f64) -> f64 {
        [0.0, 120.0, 240.0]
            .iter()
            .map(|b| self.gain_db(azimuth - b, theta))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Macro-cell parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    pub cell_radius_m: f64,
    pub bs_power_dbm: f64,
    pub carrier_mhz: f64,
    pub bs_height_m: f64,
    pub ue_height_m: f64,
    /// Mean building height; the BS sits `bs_height_m - rooftop_m` above it.
    pub rooftop_m: f64,
    pub noise_figure_db: f64,
    /// Serving links received below this power are in outage.
    pub sensitivity_dbm: f64,
    pub shadowing_db: f64,
    pub min_distance_m: f64,
    pub max_distance_m: f64,
    pub antenna: SectorAntenna,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            cell_radius_m: 500.0,
            bs_power_dbm: 43.0,
            carrier_mhz: 2600.0,
            bs_height_m: 25.0,
            ue_height_m: 1.5,
            rooftop_m: 10.0,
            noise_figure_db: 9.0,
            sensitivity_dbm: -120.0,
            shadowing_db: 6.0,
            min_distance_m: 50.0,
            max_distance_m: 1000.0,
            antenna: SectorAntenna::default(),
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.cell_radius_m > 0.0) {
            return Err(Error::InvalidConfig("cell radius must be positive".into()));
        }
        if !(self.min_distance_m > 0.0 && self.min_distance_m < self.max_distance_m) {
            return Err(Error::InvalidConfig("UE distance range must satisfy 0 < min < max".into()));
        }
        if !(self.bs_height_m > self.rooftop_m) {
            return Err(Error::InvalidConfig("BS must be above the rooftop level".into()));
        }
        if !(self.shadowing_db >= 0.0) || !(self.carrier_mhz > 0.0) {
            return Err(Error::InvalidConfig("bad shadowing or carrier".into()));
        }
        Ok(())
    }

    /// Urban macro path loss in dB at horizontal distance `d_m`.
    pub fn path_loss_db(&self, d_m: f64) -> f64 {
        let dhb = self.bs_height_m - self.rooftop_m;
        let d_km = d_m.max(1.0) / 1000.0;
        40.0 * (1.0 - 4e-3 * dhb) * d_km.log10() - 18.0 * dhb.log10() + 21.0 * self.carrier_mhz.log10() + 80.0
    }

    /// Thermal noise power (dBm) over `bandwidth_hz`.
    pub fn noise_dbm(&self, bandwidth_hz: f64) -> f64 {
        -174.0 + 10.0 * bandwidth_hz.log10() + self.noise_figure_db
    }
}

/// Serving site at the origin and six interferers on the first tier.
#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub params: SystemParams,
    /// Site positions in metres; index 0 serves.
    pub sites: [(f64, f64); SITES],
}

impl Deployment {
    pub fn inter_site_distance(&self) -> f64 {
        3.0 * self.params.cell_radius_m
    }
}

/// Hexagonal first tier at distance `3R`, angles 0 to 300 degrees.
pub fn generate_deployment(params: SystemParams) -> Result<Deployment> {
    params.validate()?;
    let isd = 3.0 * params.cell_radius_m;
    let mut sites = [(0.0, 0.0); SITES];
    for (i, s) in sites.iter_mut().skip(1).enumerate() {
        let a = (60.0 * i as f64).to_radians();
        *s = (isd * a.cos(), isd * a.sin());
    }
    Ok(Deployment { params, sites })
}

/// One user: position and the large-scale gains of its seven links.
#[derive(Debug, Clone, PartialEq)]
pub struct UeDrop {
    pub id: u64,
    pub position: (f64, f64),
    pub distance_m: f64,
    pub shadowing_db: [f64; SITES],
    /// Transmit power times antenna gain (mW) per site.
    pub eirp_mw: [f64; SITES],
    /// Path gain including shadowing, linear, per site.
    pub path_gain: [f64; SITES],
}

impl UeDrop {
    /// Mean received power (dBm) from site `i`.
    pub fn rx_power_dbm(&self, i: usize) -> f64 {
        10.0 * (self.eirp_mw[i] * self.path_gain[i]).log10()
    }
}

fn large_scale(dep: &Deployment, id: u64, position: (f64, f64), shadowing_db: [f64; SITES]) -> UeDrop {
    let p = &dep.params;
    let mut eirp_mw = [0.0; SITES];
    let mut path_gain = [0.0; SITES];
    for (i, site) in dep.sites.iter().enumerate() {
        let (dx, dy) = (position.0 - site.0, position.1 - site.1);
        let d = dx.hypot(dy).max(1.0);
        let azimuth = dy.atan2(dx).to_degrees();
        let theta = (p.bs_height_m - p.ue_height_m).atan2(d).to_degrees();
        let g = p.antenna.best_sector_gain_db(azimuth, theta);
        eirp_mw[i] = 10f64.powf((p.bs_power_dbm + g) / 10.0);
        path_gain[i] = 10f64.powf(-(p.path_loss_db(d) + shadowing_db[i]) / 10.0).min(1.0);
    }
    UeDrop {
        id,
        position,
        distance_m: position.0.hypot(position.1),
        shadowing_db,
        eirp_mw,
        path_gain,
    }
}

/// Places one user uniformly over the annulus `[min, max]` around the
/// serving site and draws independent log-normal shadowing per link.
pub fn drop_ue(dep: &Deployment, seed: u64, id: u64) -> UeDrop {
    let p = &dep.params;
    let mut rng = stream(seed, &[domain::DROP, id]);
    let (a2, b2) = (p.min_distance_m.powi(2), p.max_distance_m.powi(2));
    let r = (a2 + rng.random::<f64>() * (b2 - a2)).sqrt().clamp(p.min_distance_m, p.max_distance_m);
    let phi = rng.random::<f64>() * std::f64::consts::TAU;
    let mut shadowing_db = [0.0; SITES];
    for s in shadowing_db.iter_mut() {
        let z: f64 = rng.sample(StandardNormal);
        *s = p.shadowing_db * z;
    }
    large_scale(dep, id, (r * phi.cos(), r * phi.sin()), shadowing_db)
}

/// Users `0..n`, each from its own stream.
pub fn drop_ues(n: usize, dep: &Deployment, seed: u64) -> Vec<UeDrop> {
    (0..n as u64).map(|id| drop_ue(dep, seed, id)).collect()
}
