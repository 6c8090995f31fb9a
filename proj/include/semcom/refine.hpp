#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "semcom/corpus.hpp"

namespace semcom {

inline constexpr const char* kSentenceStart = "<s>";
inline constexpr const char* kSentenceEnd = "</s>";

// Bidirectional add-k n-gram model. The backward side is a forward model
// trained on reversed streams; both see (order-1) start markers and one end
// marker per sentence.
struct NGramModel {
  int order = 3;
  double k = 0.1;
  std::vector<std::string> vocab;  // sorted, markers excluded
  std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>> forward;
  std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>> backward;
  std::unordered_map<std::string, std::size_t> unigram;
  std::size_t total_tokens = 0;

  // Smoothed P(token | context); falls back to the smoothed unigram when the
  // context was never seen.
  double prob(const std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>>&
                  table,
              const std::vector<std::string>& context, const std::string& token) const;
};

std::string join_context(const std::vector<std::string>& context);

// Throws ConfigError for order < 2, k <= 0, or an empty corpus.
NGramModel train_ngram(const std::vector<TokenSequence>& corpus, int order = 3, double k = 0.1);

struct RefineReport {
  std::size_t erasures_in = 0;
  std::size_t erasures_repaired = 0;
  std::size_t tokens_out = 0;
  std::vector<std::size_t> positions;  // repaired indices
};

// Replaces each erasure placeholder left to right with the vocabulary token
// maximizing P_fwd(c | left) * P_bwd(c | right); already-repaired tokens feed
// later left contexts, right contexts stay as received. Ties break to the
// lexicographically smallest candidate. Non-erased tokens are never touched.
std::pair<std::vector<std::string>, RefineReport> refine(const NGramModel& model,
                                                         const std::vector<std::string>& tokens);

void save_ngram(const NGramModel& model, const std::string& path);
NGramModel load_ngram(const std::string& path);

}  // namespace semcom
