//! Counter-based random streams.
//!
//! Every random quantity in a simulation is drawn from a stream addressed by
//! `(master seed, domain, ids...)`. Two workers that address different tuples
//! never share state, and a given tuple always yields the same sequence no
//! matter how work is partitioned across threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type SimRng = ChaCha8Rng;

/// Stream domains. Keeping them distinct guarantees that, for example, the
/// channel draws of a UE are independent of its packet noise.
pub mod domain {
    pub const CALIBRATION: u64 = 1;
    pub const LINK: u64 = 2;
    pub const CHANNEL: u64 = 3;
    pub const PACKET: u64 = 4;
    pub const DROP: u64 = 5;
    pub const ENSEMBLE: u64 = 6;
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Returns the stream addressed by `ids` under `master`.
pub fn stream(master: u64, ids: &[u64]) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    let mut key = 0x6A09_E667_F3BC_C908u64;
    for &id in ids {
        key = splitmix64(key ^ id);
    }
    rng.set_stream(key);
    rng
}

/// Circularly-symmetric complex Gaussian sample with `E|z|^2 = var`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R, var: f64) -> Complex64 {
    let s = (0.5 * var).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

/// Stable stream id for a label (FNV-1a).
pub fn label_id(label: &str) -> u64 {
    label.bytes().fold(0xCBF2_9CE4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01B3))
}

/// Converts a signed dB-like value into a stable stream id.
pub fn quantize_db(db: f64) -> u64 {
    (db * 1000.0).round() as i64 as u64
}
