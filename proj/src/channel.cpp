#include "semcom/channel.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "semcom/errors.hpp"

namespace semcom {

std::uint16_t crc16_ccitt_false(const std::uint8_t* data, std::size_t len) {
  std::uint16_t crc = 0xFFFF;
  for (std::size_t i = 0; i < len; ++i) {
    crc ^= static_cast<std::uint16_t>(data[i]) << 8;
    for (int b = 0; b < 8; ++b)
      crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021)
                           : static_cast<std::uint16_t>(crc << 1);
  }
  return crc;
}

std::vector<std::uint8_t> header_bytes(const FrameHeader& h) {
  std::vector<std::uint8_t> bytes(kHeaderBytes, 0);
  bytes[0] = h.version;
  bytes[1] = h.codec_id;
  bytes[2] = h.flags;
  bytes[3] = static_cast<std::uint8_t>(h.payload_bit_length >> 24);
  bytes[4] = static_cast<std::uint8_t>(h.payload_bit_length >> 16);
  bytes[5] = static_cast<std::uint8_t>(h.payload_bit_length >> 8);
  bytes[6] = static_cast<std::uint8_t>(h.payload_bit_length);
  bytes[7] = 0;
  const std::uint16_t crc = crc16_ccitt_false(bytes.data(), 8);
  bytes[8] = static_cast<std::uint8_t>(crc >> 8);
  bytes[9] = static_cast<std::uint8_t>(crc);
  return bytes;
}

Frame make_frame(const BitVec& payload, std::uint8_t codec_id, std::uint8_t flags) {
  if (payload.size() > std::numeric_limits<std::uint32_t>::max())
    throw SizeError("payload exceeds the 32-bit length field");
  Frame f;
  f.header.codec_id = codec_id;
  f.header.flags = flags;
  f.header.payload_bit_length = static_cast<std::uint32_t>(payload.size());
  f.payload = payload;
  return f;
}

BitVec frame_to_bits(const Frame& frame) {
  BitVec bits;
  bits.reserve(kHeaderBits + frame.payload.size());
  for (std::uint8_t byte : header_bytes(frame.header))
    for (int b = 7; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((byte >> b) & 1u));
  bits.insert(bits.end(), frame.payload.begin(), frame.payload.end());
  return bits;
}

HeaderParse parse_header(const BitVec& bits) {
  if (bits.size() < kHeaderBits)
    throw SizeError("need " + std::to_string(kHeaderBits) + " header bits, got " +
                    std::to_string(bits.size()));
  std::uint8_t bytes[kHeaderBytes] = {};
  for (std::size_t i = 0; i < kHeaderBits; ++i)
    bytes[i / 8] = static_cast<std::uint8_t>((bytes[i / 8] << 1) | bits[i]);
  HeaderParse p;
  p.header.version = bytes[0];
  p.header.codec_id = bytes[1];
  p.header.flags = bytes[2];
  p.header.payload_bit_length = (static_cast<std::uint32_t>(bytes[3]) << 24) |
                                (static_cast<std::uint32_t>(bytes[4]) << 16) |
                                (static_cast<std::uint32_t>(bytes[5]) << 8) |
                                static_cast<std::uint32_t>(bytes[6]);
  const std::uint16_t wire_crc =
      static_cast<std::uint16_t>((static_cast<std::uint16_t>(bytes[8]) << 8) | bytes[9]);
  p.crc_ok = (crc16_ccitt_false(bytes, 8) == wire_crc) && (p.header.version == kFrameVersion);
  return p;
}

Eigen::ArrayXd modulate_bpsk(const BitVec& bits) {
  Eigen::ArrayXd symbols(static_cast<Eigen::Index>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i)
    symbols[static_cast<Eigen::Index>(i)] = bits[i] ? -1.0 : 1.0;
  return symbols;
}

ChannelOutput apply_channel(const Eigen::ArrayXd& symbols, const ChannelConfig& cfg, Rng& rng) {
  const Eigen::Index n = symbols.size();
  ChannelOutput out;
  out.received.resize(n);
  out.gains.resize(n);
  const double sigma = std::sqrt(std::pow(10.0, -cfg.snr_db / 10.0));

  if (cfg.fading == Fading::AwgnOnly) {
    out.gains.setOnes();
    if (!cfg.noise_enabled) {
      out.received.real() = symbols;
      out.received.imag().setZero();
      return out;
    }
    // Only Re(n) ~ N(0, sigma^2/2) ever reaches the coherent demodulator, so
    // each Box-Muller pair covers two symbols.
    const double scale = sigma * M_SQRT1_2;
    double pending = 0.0;
    bool has_pending = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double g;
      if (has_pending) {
        g = pending;
        has_pending = false;
      } else {
        const auto [a, b] = rng.gaussian_pair();
        g = a;
        pending = b;
        has_pending = true;
      }
      out.received[i] = std::complex<double>(symbols[i] + scale * g, 0.0);
    }
    return out;
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> h = rng.complex_gaussian();
    std::complex<double> noise(0.0, 0.0);
    if (cfg.noise_enabled) noise = sigma * rng.complex_gaussian();
    out.gains[i] = h;
    out.received[i] = h * symbols[i] + noise;
  }
  return out;
}

BitVec demodulate(const ChannelOutput& out) {
  const Eigen::ArrayXd metric = (out.received * out.gains.conjugate()).real();
  BitVec bits(static_cast<std::size_t>(metric.size()));
  for (Eigen::Index i = 0; i < metric.size(); ++i)
    bits[static_cast<std::size_t>(i)] = metric[i] >= 0.0 ? 0 : 1;
  return bits;
}

double compute_ber(const BitVec& sent, const BitVec& received) {
  if (sent.empty()) throw MeasurementError("ber undefined for empty bit streams");
  if (sent.size() != received.size())
    throw MeasurementError("ber needs equal lengths, got " + std::to_string(sent.size()) +
                           " vs " + std::to_string(received.size()));
  std::size_t errors = 0;
  for (std::size_t i = 0; i < sent.size(); ++i)
    if (sent[i] != received[i]) ++errors;
  return static_cast<double>(errors) / static_cast<double>(sent.size());
}

TransmitReport transmit(const Frame& frame, const ChannelConfig& cfg) {
  if (cfg.relay_hops < 1 || cfg.relay_hops > 2)
    throw ConfigError("relay_hops must be 1 or 2");
  if (cfg.max_retransmissions < 0) throw ConfigError("max_retransmissions must be >= 0");

  const BitVec sent_bits = frame_to_bits(frame);
  Rng rng(cfg.seed);

  TransmitReport report;
  for (int attempt = 0; attempt <= cfg.max_retransmissions; ++attempt) {
    ++report.attempts;
    BitVec hop_bits = sent_bits;
    bool header_ok = true;
    for (int hop = 0; hop < cfg.relay_hops; ++hop) {
      const ChannelOutput out = apply_channel(modulate_bpsk(hop_bits), cfg, rng);
      hop_bits = demodulate(out);
      // decode-and-forward: a relay only forwards frames whose header checks out
      if (!parse_header(hop_bits).crc_ok) {
        header_ok = false;
        break;
      }
    }
    if (!header_ok) continue;

    report.delivered = true;
    report.retransmissions_used = attempt;
    report.payload.assign(hop_bits.begin() + static_cast<std::ptrdiff_t>(kHeaderBits),
                          hop_bits.end());
    if (!frame.payload.empty()) report.payload_ber = compute_ber(frame.payload, report.payload);
    return report;
  }
  report.retransmissions_used = cfg.max_retransmissions;
  return report;
}

namespace {

std::size_t chunk_errors(const ChannelConfig& cfg, std::uint64_t chunk_index,
                         std::size_t chunk_bits) {
  Rng rng(derive_stream_seed(cfg.seed, {chunk_index}));
  BitVec bits(chunk_bits);
  for (std::size_t i = 0; i < chunk_bits; i += 64) {
    std::uint64_t word = rng.next_u64();
    for (std::size_t b = 0; b < 64 && i + b < chunk_bits; ++b) {
      bits[i + b] = static_cast<std::uint8_t>(word & 1u);
      word >>= 1;
    }
  }
  const BitVec out = demodulate(apply_channel(modulate_bpsk(bits), cfg, rng));
  std::size_t errors = 0;
  for (std::size_t i = 0; i < chunk_bits; ++i)
    if (bits[i] != out[i]) ++errors;
  return errors;
}

}  // namespace

double monte_carlo_ber(const ChannelConfig& cfg, std::size_t total_bits, int threads) {
  if (total_bits == 0) throw MeasurementError("ber estimate needs at least one bit");
  constexpr std::size_t kChunkBits = std::size_t{1} << 18;
  const std::uint64_t num_chunks = (total_bits + kChunkBits - 1) / kChunkBits;

  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, num_chunks));

  std::vector<std::future<std::size_t>> futures;
  futures.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    futures.push_back(std::async(std::launch::async, [&, w] {
      std::size_t errors = 0;
      for (std::uint64_t c = w; c < num_chunks; c += workers) {
        const std::size_t bits_here =
            c + 1 == num_chunks ? total_bits - c * kChunkBits : kChunkBits;
        errors += chunk_errors(cfg, c, bits_here);
      }
      return errors;
    }));
  }
  std::size_t errors = 0;
  for (auto& f : futures) errors += f.get();
  return static_cast<double>(errors) / static_cast<double>(total_bits);
}

}  // namespace semcom
