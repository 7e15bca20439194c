//! Bit-level coding chain: turbo code, rate matching, Gray QAM and soft
//! demapping.

mod codec;
mod constellation;
mod mcs;
mod qpp_table;
mod ratematch;
mod turbo;

pub use codec::FecCodec;
pub use constellation::{Constellation, LLR_CLIP};
pub use mcs::{CodeRate, McsMode, McsSpec};
pub use ratematch::{BitInterleaver, RateMatcher};
pub use turbo::{largest_block_length, supported_block_lengths, QppInterleaver, TurboCode, MAX_ITERATIONS};
