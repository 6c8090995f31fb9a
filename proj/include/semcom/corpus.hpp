#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semcom/util.hpp"

namespace semcom {

// Default entropy gate threshold in bits.
inline constexpr double kDefaultEntropyThresholdBits = 3.85;

struct Sentence {
  std::uint64_t id = 0;
  std::string text;
  std::optional<int> label;  // sentiment label carried as metadata only
};

using Corpus = std::vector<Sentence>;

struct TokenSequence {
  std::vector<std::string> tokens;

  std::size_t n() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

enum class GateClass { Structured, Unstructured };

struct GateDecision {
  double entropy_bits = 0.0;
  double threshold_bits = kDefaultEntropyThresholdBits;
  GateClass cls = GateClass::Structured;
};

// Reads a TSV corpus: `sentence<TAB>label`, label in {0,1}, LF or CRLF.
// A first line equal to the literal pair ("sentence", "label") is skipped.
// Throws IoError for a missing file and ParseError (naming the line) for
// malformed rows.
Corpus load_corpus(const std::string& path);

// Lowercases, splits on Unicode whitespace, and peels leading/trailing ASCII
// punctuation off each chunk as single-character tokens. Deterministic.
TokenSequence tokenize_words(const std::string& text);

// Shannon entropy in bits of the within-sentence token distribution.
// Empty sequence -> 0.
double sentence_entropy(const TokenSequence& tokens);

// Unstructured iff entropy strictly exceeds the threshold.
GateDecision classify_entropy(double entropy_bits, double threshold_bits);

GateDecision classify_sentence(const TokenSequence& tokens,
                               double threshold_bits = kDefaultEntropyThresholdBits);

}  // namespace semcom
