#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semcom/util.hpp"

namespace semcom {

// Word-boundary marker appended to every word before merging (U+2581).
inline constexpr const char* kWordBoundaryMarker = "\xE2\x96\x81";

// Receiver-side placeholder for a token id invalidated in transit (U+25A1).
inline constexpr const char* kErasurePlaceholder = "\xE2\x96\xA1";

using TokenId = std::uint32_t;

struct BpeModel {
  std::vector<std::string> base_vocab;  // single-codepoint tokens, sorted; includes the marker
  std::vector<std::pair<std::string, std::string>> merges;  // training order
  std::unordered_map<std::string, TokenId> token_to_id;
  std::vector<std::string> id_to_token;
  int id_width_bits = 0;  // ceil(log2(vocab size + 2)), covers PAD and ERASURE

  TokenId vocab_size() const { return static_cast<TokenId>(id_to_token.size()); }
  TokenId pad_id() const { return vocab_size(); }
  TokenId erasure_id() const { return vocab_size() + 1; }
};

struct EncodedPayload {
  std::vector<TokenId> ids;
  std::size_t source_token_count = 0;  // word tokens of the encoded text

  std::size_t m() const { return ids.size(); }
};

struct CompressionReport {
  double cr_reduction = 0.0;    // 1 - m/n
  double cr_ratio = 0.0;  // m/n, the headline figure
  std::size_t n = 0;
  std::size_t m = 0;
};

// Greedy pair merging over whitespace-delimited words, each suffixed with the
// boundary marker. Ties break to the lexicographically smallest pair; merging
// stops early once no adjacent pair occurs at least twice. Deterministic.
// Throws ConfigError on an empty corpus or one containing the marker glyph.
BpeModel train_bpe(const std::vector<std::string>& corpus_texts, std::size_t num_merges);

// Segments by replaying merges in training order. Codepoints outside the base
// vocabulary map to the ERASURE id.
EncodedPayload encode(const BpeModel& model, const std::string& text);

// Inverse of encode on valid ids. ERASURE renders as a stand-alone "□" token,
// PAD as nothing. Ids past ERASURE throw CorruptionError.
std::string decode(const BpeModel& model, const std::vector<TokenId>& ids);

// Fixed-width big-endian id packing (codec-agnostic).
BitVec pack_ids(const std::vector<TokenId>& ids, int width_bits);

// Inverse of pack_ids; any id >= valid_limit comes back as erasure_id.
// Throws FramingError when the bit count is not a multiple of the width.
std::vector<TokenId> unpack_ids(const BitVec& bits, int width_bits, TokenId valid_limit,
                                TokenId erasure_id);

BitVec ids_to_bits(const EncodedPayload& payload, const BpeModel& model);
std::vector<TokenId> bits_to_ids(const BitVec& bits, const BpeModel& model);

// Both CR forms; n = 0 throws MeasurementError.
CompressionReport compression_report(std::size_t n, std::size_t m);

// Versioned JSON persistence.
void save_bpe(const BpeModel& model, const std::string& path);
BpeModel load_bpe(const std::string& path);

}  // namespace semcom
