#include "semcom/bpe.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "semcom/corpus.hpp"
#include "semcom/errors.hpp"

namespace semcom {

namespace {

using Word = std::vector<std::string>;  // symbol sequence, finest grain = codepoint

std::vector<Word> split_into_symbol_words(const std::string& text) {
  std::vector<Word> words;
  for (const std::string& w : split_whitespace(text)) {
    Word symbols = utf8::codepoints(w);
    symbols.push_back(kWordBoundaryMarker);
    words.push_back(std::move(symbols));
  }
  return words;
}

void finalize_ids(BpeModel& model) {
  // base vocab first (sorted), then merged tokens in merge order, dedup kept-first
  std::vector<std::string> ordered = model.base_vocab;
  for (const auto& [a, b] : model.merges) ordered.push_back(a + b);
  model.id_to_token.clear();
  model.token_to_id.clear();
  for (const auto& tok : ordered) {
    if (model.token_to_id.count(tok)) continue;
    model.token_to_id.emplace(tok, static_cast<TokenId>(model.id_to_token.size()));
    model.id_to_token.push_back(tok);
  }
  const std::size_t total = model.id_to_token.size() + 2;  // + PAD + ERASURE
  int bits = 1;
  while ((std::size_t{1} << bits) < total) ++bits;
  model.id_width_bits = bits;
}

void apply_merge(std::vector<Word>& words, const std::string& a, const std::string& b) {
  for (Word& w : words) {
    Word out;
    out.reserve(w.size());
    std::size_t i = 0;
    while (i < w.size()) {
      if (i + 1 < w.size() && w[i] == a && w[i + 1] == b) {
        out.push_back(a + b);
        i += 2;
      } else {
        out.push_back(w[i]);
        ++i;
      }
    }
    w = std::move(out);
  }
}

}  // namespace

BpeModel train_bpe(const std::vector<std::string>& corpus_texts, std::size_t num_merges) {
  std::vector<Word> words;
  std::set<std::string> base;
  for (const auto& text : corpus_texts) {
    if (text.find(kWordBoundaryMarker) != std::string::npos)
      throw ConfigError("training text contains the reserved word-boundary glyph");
    auto ws = split_into_symbol_words(text);
    for (auto& w : ws) {
      for (const auto& s : w) base.insert(s);
      words.push_back(std::move(w));
    }
  }
  if (words.empty()) throw ConfigError("bpe training corpus has no words");

  BpeModel model;
  model.base_vocab.assign(base.begin(), base.end());  // std::set gives byte-order sort

  for (std::size_t round = 0; round < num_merges; ++round) {
    std::map<std::pair<std::string, std::string>, std::size_t> pair_counts;
    for (const Word& w : words)
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        ++pair_counts[{w[i], w[i + 1]}];

    std::pair<std::string, std::string> best;
    std::size_t best_count = 0;
    for (const auto& [pair, count] : pair_counts) {
      // std::map iterates in lex order, so keeping the first strict maximum
      // realizes the smallest-pair tie-break.
      if (count > best_count) {
        best = pair;
        best_count = count;
      }
    }
    if (best_count < 2) break;
    model.merges.push_back(best);
    apply_merge(words, best.first, best.second);
  }

  finalize_ids(model);
  return model;
}

EncodedPayload encode(const BpeModel& model, const std::string& text) {
  EncodedPayload payload;
  payload.source_token_count = tokenize_words(text).n();
  std::vector<Word> words = split_into_symbol_words(text);
  for (Word& w : words) {
    // unknown codepoints become erasures before any merging
    bool all_known = true;
    for (const auto& s : w) {
      if (!model.token_to_id.count(s)) {
        all_known = false;
        break;
      }
    }
    if (!all_known) {
      for (const auto& s : w) {
        if (model.token_to_id.count(s))
          payload.ids.push_back(model.token_to_id.at(s));
        else
          payload.ids.push_back(model.erasure_id());
      }
      continue;
    }
    for (const auto& [a, b] : model.merges) {
      Word out;
      out.reserve(w.size());
      std::size_t i = 0;
      while (i < w.size()) {
        if (i + 1 < w.size() && w[i] == a && w[i + 1] == b) {
          out.push_back(a + b);
          i += 2;
        } else {
          out.push_back(w[i]);
          ++i;
        }
      }
      w = std::move(out);
    }
    for (const auto& s : w) payload.ids.push_back(model.token_to_id.at(s));
  }
  return payload;
}

std::string decode(const BpeModel& model, const std::vector<TokenId>& ids) {
  std::string joined;
  for (TokenId id : ids) {
    if (id == model.pad_id()) continue;
    if (id == model.erasure_id()) {
      joined += " ";
      joined += kErasurePlaceholder;
      joined += " ";
      continue;
    }
    if (id >= model.vocab_size())
      throw CorruptionError("token id " + std::to_string(id) + " outside vocabulary");
    joined += model.id_to_token[id];
  }
  // boundary markers become spaces; collapse and trim
  std::string spaced;
  std::size_t i = 0;
  const std::string marker = kWordBoundaryMarker;
  while (i < joined.size()) {
    if (joined.compare(i, marker.size(), marker) == 0) {
      spaced += ' ';
      i += marker.size();
    } else {
      spaced += joined[i];
      ++i;
    }
  }
  std::string out;
  bool pending_space = false;
  for (char c : spaced) {
    if (c == ' ') {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

BitVec pack_ids(const std::vector<TokenId>& ids, int width_bits) {
  if (width_bits <= 0 || width_bits > 32) throw ConfigError("id width out of range");
  BitVec bits;
  bits.reserve(ids.size() * static_cast<std::size_t>(width_bits));
  for (TokenId id : ids) {
    if (width_bits < 32 && id >= (TokenId{1} << width_bits))
      throw SizeError("token id " + std::to_string(id) + " does not fit in " +
                      std::to_string(width_bits) + " bits");
    for (int b = width_bits - 1; b >= 0; --b)
      bits.push_back(static_cast<std::uint8_t>((id >> b) & 1u));
  }
  return bits;
}

std::vector<TokenId> unpack_ids(const BitVec& bits, int width_bits, TokenId valid_limit,
                                TokenId erasure_id) {
  if (width_bits <= 0 || width_bits > 32) throw ConfigError("id width out of range");
  if (bits.size() % static_cast<std::size_t>(width_bits) != 0)
    throw FramingError("bit stream length " + std::to_string(bits.size()) +
                       " is not a multiple of the id width " + std::to_string(width_bits));
  std::vector<TokenId> ids;
  ids.reserve(bits.size() / static_cast<std::size_t>(width_bits));
  for (std::size_t i = 0; i < bits.size(); i += static_cast<std::size_t>(width_bits)) {
    TokenId id = 0;
    for (int b = 0; b < width_bits; ++b) id = (id << 1) | bits[i + static_cast<std::size_t>(b)];
    ids.push_back(id < valid_limit ? id : erasure_id);
  }
  return ids;
}

BitVec ids_to_bits(const EncodedPayload& payload, const BpeModel& model) {
  return pack_ids(payload.ids, model.id_width_bits);
}

std::vector<TokenId> bits_to_ids(const BitVec& bits, const BpeModel& model) {
  // PAD stays legal on the wire; anything past it degrades to ERASURE -- one
  // corrupted id must not kill the sentence.
  return unpack_ids(bits, model.id_width_bits, model.pad_id() + 1, model.erasure_id());
}

CompressionReport compression_report(std::size_t n, std::size_t m) {
  if (n == 0) throw MeasurementError("compression ratio undefined for an empty source");
  CompressionReport r;
  r.n = n;
  r.m = m;
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  r.cr_reduction = 1.0 - mm / nn;
  r.cr_ratio = mm / nn;
  return r;
}

void save_bpe(const BpeModel& model, const std::string& path) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["base_vocab"] = model.base_vocab;
  nlohmann::json merges = nlohmann::json::array();
  for (const auto& [a, b] : model.merges) merges.push_back({a, b});
  j["merges"] = std::move(merges);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << '\n';
}

BpeModel load_bpe(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.contains("format_version") || !j["format_version"].is_number_integer() ||
      j["format_version"].get<int>() != 1)
    throw ParseError(path + ": unsupported or missing format_version");
  if (!j.contains("base_vocab") || !j["base_vocab"].is_array())
    throw ParseError(path + ": base_vocab missing");
  if (!j.contains("merges") || !j["merges"].is_array())
    throw ParseError(path + ": merges missing");
  BpeModel model;
  model.base_vocab = j["base_vocab"].get<std::vector<std::string>>();
  for (const auto& m : j["merges"]) {
    if (!m.is_array() || m.size() != 2) throw ParseError(path + ": malformed merge entry");
    model.merges.emplace_back(m[0].get<std::string>(), m[1].get<std::string>());
  }
  finalize_ids(model);
  return model;
}

}  // namespace semcom
