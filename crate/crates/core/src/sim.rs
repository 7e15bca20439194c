//! Bit-level link simulation: the full coded GFDM chain for one packet.

use rand::Rng;

use crate::channel::{add_spectral_noise, apply_channel, ChannelRealization};
use crate::error::{Error, Result};
use crate::fec::{FecCodec, McsMode, McsSpec};
use crate::modem::{add_cp, remove_cp, GfdmConfig, GfdmModem, SymbolGrid};

/// How a packet reaches the receiver.
#[derive(Debug, Clone, Copy)]
pub enum PacketChannel<'a> {
    /// Waveform level: cyclic prefix, convolution with the taps, white
    /// noise, then frequency-domain zero forcing with the known response.
    Waveform(&'a ChannelRealization),
    /// Already equalised spectrum plus independent Gaussian noise of
    /// variance `bin_var[f]` on frequency sample `f` (unitary-DFT scale).
    /// Used for interference treated as coloured noise.
    Equalized { bin_var: &'a [f64] },
}

/// Error counts over a set of packets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ErrorCounts {
    pub packets: u64,
    pub block_errors: u64,
    pub bits: u64,
    pub bit_errors: u64,
}

impl ErrorCounts {
    pub fn add(&mut self, other: ErrorCounts) {
        self.packets += other.packets;
        self.block_errors += other.block_errors;
        self.bits += other.bits;
        self.bit_errors += other.bit_errors;
    }

    pub fn bler(&self) -> f64 {
        if self.packets == 0 {
            0.0
        } else {
            self.block_errors as f64 / self.packets as f64
        }
    }

    pub fn ber(&self) -> f64 {
        if self.bits == 0 {
            0.0
        } else {
            self.bit_errors as f64 / self.bits as f64
        }
    }
}

/// Coded GFDM link for one waveform and MCS. One code block fills the
/// active symbols of one GFDM block.
#[derive(Debug, Clone)]
pub struct LinkSimulator {
    modem: GfdmModem,
    codec: FecCodec,
}

impl LinkSimulator {
    pub fn new(config: GfdmConfig, spec: McsSpec) -> Result<Self> {
        let mcs = spec.fit(config.active_symbols())?;
        Self::with_mcs(config, mcs)
    }

    pub fn with_mcs(config: GfdmConfig, mcs: McsMode) -> Result<Self> {
        if mcs.coded_len != config.active_symbols() * mcs.spec.bits {
            return Err(Error::InvalidConfig(format!(
                "{} coded bits do not fill {} active symbols",
                mcs.coded_len,
                config.active_symbols()
            )));
        }
        Ok(Self {
            modem: GfdmModem::new(config)?,
            codec: FecCodec::new(mcs)?,
        })
    }

    pub fn modem(&self) -> &GfdmModem {
        &self.modem
    }

    pub fn mcs(&self) -> &McsMode {
        self.codec.mcs()
    }

    pub fn config(&self) -> &GfdmConfig {
        self.modem.config()
    }

    /// Simulates one packet with fresh random information bits.
    pub fn run_packet<R: Rng + ?Sized>(&self, channel: PacketChannel<'_>, rng: &mut R) -> Result<ErrorCounts> {
        let config = self.modem.config();
        let mcs = self.codec.mcs();
        let info: Vec<u8> = (0..mcs.info_len).map(|_| rng.random::<bool>() as u8).collect();
        let coded = self.codec.encode(&info)?;
        let symbols = self.codec.map(&coded)?;
        let grid = SymbolGrid::from_active_symbols(config, &symbols)?;
        let x = self.modem.modulate(&grid)?;

        let (equalized, bin_var) = match channel {
            PacketChannel::Waveform(ch) => {
                let tx = add_cp(&x, config)?;
                let rx = apply_channel(&tx, ch, config.cp_len, rng)?;
                let eq = self.modem.equalize_zf(&remove_cp(&rx, config)?, &ch.h)?;
                (eq, ch.equalized_noise())
            }
            PacketChannel::Equalized { bin_var } => {
                let mut spec = self.modem.spectrum(&x)?;
                add_spectral_noise(&mut spec, bin_var, rng)?;
                (self.modem.from_spectrum(&spec)?, bin_var.to_vec())
            }
        };

        let rx_grid = self.modem.demodulate(&equalized)?;
        let per_subcarrier = self.modem.zf_noise_variance(&bin_var)?;
        let m = config.sub_symbols;
        let noise: Vec<f64> = config
            .active
            .iter()
            .flat_map(|&k| std::iter::repeat_n(per_subcarrier[k], m))
            .collect();
        let llr = self.codec.demap(&rx_grid.active_symbols(config), &noise)?;
        let decoded = self.codec.decode(&llr)?;
        let bit_errors = decoded.iter().zip(&info).filter(|(a, b)| a != b).count() as u64;
        Ok(ErrorCounts {
            packets: 1,
            block_errors: (bit_errors > 0) as u64,
            bits: mcs.info_len as u64,
            bit_errors,
        })
    }

    /// Runs `packets` packets over the same channel.
    pub fn run_packets<R: Rng + ?Sized>(
        &self,
        channel: PacketChannel<'_>,
        packets: u64,
        rng: &mut R,
    ) -> Result<ErrorCounts> {
        let mut total = ErrorCounts::default();
        for _ in 0..packets {
            total.add(self.run_packet(channel, rng)?);
        }
        Ok(total)
    }
}
