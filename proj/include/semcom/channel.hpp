#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "semcom/random.hpp"
#include "semcom/util.hpp"

namespace semcom {

enum class Fading { AwgnOnly, Rayleigh };

struct ChannelConfig {
  double snr_db = 6.0;
  Fading fading = Fading::Rayleigh;
  int relay_hops = 1;            // 1 = direct, 2 = decode-and-forward relay
  int max_retransmissions = 3;   // extra attempts after the first
  std::uint64_t seed = 0;
  bool noise_enabled = true;
};

// Wire layout, 10 bytes:
//   0     version (always 1)
//   1     codec_id
//   2     flags
//   3..6  payload length in bits, big-endian
//   7     reserved (0)
//   8..9  CRC-16/CCITT-FALSE over bytes 0..7, big-endian
inline constexpr std::size_t kHeaderBytes = 10;
inline constexpr std::size_t kHeaderBits = kHeaderBytes * 8;
inline constexpr std::uint8_t kFrameVersion = 1;

struct FrameHeader {
  std::uint8_t version = kFrameVersion;
  std::uint8_t codec_id = 0;
  std::uint8_t flags = 0;
  std::uint32_t payload_bit_length = 0;
};

struct Frame {
  FrameHeader header;
  BitVec payload;
};

std::uint16_t crc16_ccitt_false(const std::uint8_t* data, std::size_t len);

std::vector<std::uint8_t> header_bytes(const FrameHeader& h);

// Rejects payloads over the 32-bit length field.
Frame make_frame(const BitVec& payload, std::uint8_t codec_id, std::uint8_t flags = 0);

BitVec frame_to_bits(const Frame& frame);

struct HeaderParse {
  FrameHeader header;
  bool crc_ok = false;
};

// Reads 80 bits; throws SizeError when fewer are available.
HeaderParse parse_header(const BitVec& bits);

// 0 -> +1, 1 -> -1.
Eigen::ArrayXd modulate_bpsk(const BitVec& bits);

struct ChannelOutput {
  Eigen::ArrayXcd received;
  Eigen::ArrayXcd gains;  // all-ones under AWGN
};

// y = h*x + n with n ~ CN(0, sigma^2), sigma^2 = 10^(-snr_db/10); Rayleigh
// draws h ~ CN(0,1) per symbol. noise_enabled=false zeroes n but keeps h.
ChannelOutput apply_channel(const Eigen::ArrayXd& symbols, const ChannelConfig& cfg, Rng& rng);

// Coherent: bit = 0 iff Re(y * conj(h)) >= 0.
BitVec demodulate(const ChannelOutput& out);

// Throws MeasurementError on length mismatch or empty input.
double compute_ber(const BitVec& sent, const BitVec& received);

struct TransmitReport {
  bool delivered = false;
  int attempts = 0;              // total attempts including the first
  int retransmissions_used = 0;
  double payload_ber = 0.0;      // errors in the delivered attempt's payload
  BitVec payload;                // as received on the delivered attempt
};

// One hop per relay stage, decode-and-forward: the relay re-modulates its
// hard decisions. A header CRC failure on any hop triggers a retransmission
// of the whole frame, up to cfg.max_retransmissions extra attempts.
TransmitReport transmit(const Frame& frame, const ChannelConfig& cfg);

// Chunked Monte-Carlo BER of uncoded random BPSK bits over the configured
// channel. Chunk streams derive from cfg.seed, so the estimate does not
// depend on the thread count. threads = 0 uses the hardware concurrency.
double monte_carlo_ber(const ChannelConfig& cfg, std::size_t total_bits, int threads = 0);

}  // namespace semcom
