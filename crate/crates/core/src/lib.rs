//! GFDM link-level simulation and mutual-information based link quality
//! model.
//!
//! The crate has two halves. The *bit-level* half ([`modem`], [`fec`],
//! [`channel`], [`sim`]) pushes turbo-coded packets through a GFDM
//! transmitter, a channel and a zero-forcing receiver. The *abstraction*
//! half ([`linkquality`]) predicts the block error rate of the same packets
//! from nothing but their per-frequency-sample SINR. [`syslevel`] runs both
//! over a cellular deployment and compares them.

pub mod channel;
pub mod error;
pub mod fec;
pub mod linkquality;
pub mod modem;
pub mod rng;
pub mod sim;
pub mod syslevel;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/waveform.md")]
    mod waveform {}
    #[doc = include_str!("../../../book/src/coding.md")]
    mod coding {}
    #[doc = include_str!("../../../book/src/channels.md")]
    mod channels {}
    #[doc = include_str!("../../../book/src/link_quality.md")]
    mod link_quality {}
    #[doc = include_str!("../../../book/src/system_level.md")]
    mod system_level {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
