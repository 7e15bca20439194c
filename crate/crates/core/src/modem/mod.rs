//! GFDM waveform: prototype filters, modulation, cyclic prefix and the
//! zero-forcing receiver.
//!
//! Conventions: filters have unit energy, constellations unit average
//! energy, and a block of `N = K * M` samples is transformed with the
//! unnormalised DFT internally (scaling is applied on the inverse).

mod config;
mod filter;
mod grid;
mod transceiver;

pub use config::{FilterKind, GfdmConfig};
pub use filter::{build_filter, PrototypeFilter};
pub use grid::{add_cp, remove_cp, SampleBlock, SymbolGrid};
pub use transceiver::{
    demodulate_zf, modulate_direct, modulate_fast, GfdmModem, MAX_CONDITION_NUMBER, MIN_CHANNEL_MAGNITUDE,
};
