#include "semcom/corpus.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <unordered_map>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

// Trims ASCII whitespace from both ends.
std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_ascii_punct_cp(const std::string& cp) {
  return cp.size() == 1 && std::ispunct(static_cast<unsigned char>(cp[0]));
}

}  // namespace

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path);

  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  std::uint64_t next_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty()) continue;

    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError("corpus line " + std::to_string(line_no) +
                       ": expected exactly two tab-separated fields");
    }
    const std::string text(trim(std::string_view(line).substr(0, tab)));
    const std::string label(trim(std::string_view(line).substr(tab + 1)));

    if (line_no == 1 && text == "sentence" && label == "label") continue;  // header

    if (text.empty()) {
      throw ParseError("corpus line " + std::to_string(line_no) + ": empty sentence field");
    }
    if (label != "0" && label != "1") {
      throw ParseError("corpus line " + std::to_string(line_no) + ": label must be 0 or 1, got '" +
                       label + "'");
    }
    corpus.push_back(Sentence{next_id++, text, label == "1" ? 1 : 0});
  }
  return corpus;
}

TokenSequence tokenize_words(const std::string& text) {
  TokenSequence seq;
  for (const std::string& chunk : split_whitespace(ascii_lower(text))) {
    const std::vector<std::string> cps = utf8::codepoints(chunk);

    std::size_t first = 0;
    while (first < cps.size() && is_ascii_punct_cp(cps[first])) ++first;
    std::size_t last = cps.size();
    while (last > first && is_ascii_punct_cp(cps[last - 1])) --last;

    for (std::size_t i = 0; i < first; ++i) seq.tokens.push_back(cps[i]);
    if (first < last) {
      std::string core;
      for (std::size_t i = first; i < last; ++i) core += cps[i];
      seq.tokens.push_back(std::move(core));
    }
    for (std::size_t i = last; i < cps.size(); ++i) seq.tokens.push_back(cps[i]);
  }
  return seq;
}

double sentence_entropy(const TokenSequence& tokens) {
  if (tokens.empty()) return 0.0;
  std::unordered_map<std::string, std::size_t> counts;
  for (const std::string& t : tokens.tokens) ++counts[t];

  const double n = static_cast<double>(tokens.n());
  double bits = 0.0;
  for (const auto& [token, count] : counts) {
    const double p = static_cast<double>(count) / n;
    bits -= p * std::log2(p);
  }
  return bits < 0.0 ? 0.0 : bits;  // clamp -0.0 from the single-token case
}

GateDecision classify_entropy(double entropy_bits, double threshold_bits) {
  GateDecision d;
  d.entropy_bits = entropy_bits;
  d.threshold_bits = threshold_bits;
  d.cls = entropy_bits > threshold_bits ? GateClass::Unstructured : GateClass::Structured;
  return d;
}

GateDecision classify_sentence(const TokenSequence& tokens, double threshold_bits) {
  return classify_entropy(sentence_entropy(tokens), threshold_bits);
}

}  // namespace semcom
