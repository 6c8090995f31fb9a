#include "semcom/refine.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "semcom/bpe.hpp"
#include "semcom/errors.hpp"

namespace semcom {

namespace {

constexpr char kSep = '\x1f';

void count_stream(const std::vector<std::string>& tokens, int order,
                  std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>>&
                      table) {
  std::vector<std::string> padded;
  padded.reserve(tokens.size() + static_cast<std::size_t>(order));
  for (int i = 0; i < order - 1; ++i) padded.emplace_back(kSentenceStart);
  padded.insert(padded.end(), tokens.begin(), tokens.end());
  padded.emplace_back(kSentenceEnd);
  for (std::size_t i = static_cast<std::size_t>(order) - 1; i < padded.size(); ++i) {
    std::vector<std::string> ctx(padded.begin() + static_cast<std::ptrdiff_t>(i) - (order - 1),
                                 padded.begin() + static_cast<std::ptrdiff_t>(i));
    ++table[join_context(ctx)][padded[i]];
  }
}

std::size_t table_total(const std::unordered_map<std::string, std::size_t>& row) {
  std::size_t total = 0;
  for (const auto& [tok, c] : row) total += c;
  return total;
}

}  // namespace

std::string join_context(const std::vector<std::string>& context) {
  std::string key;
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (i) key += kSep;
    key += context[i];
  }
  return key;
}

double NGramModel::prob(
    const std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>>& table,
    const std::vector<std::string>& context, const std::string& token) const {
  const double v = static_cast<double>(vocab.size());
  const auto it = table.find(join_context(context));
  if (it == table.end()) {
    // context never observed: smoothed unigram backoff
    const auto ut = unigram.find(token);
    const double c = ut == unigram.end() ? 0.0 : static_cast<double>(ut->second);
    return (c + k) / (static_cast<double>(total_tokens) + k * v);
  }
  const auto& row = it->second;
  const auto tok_it = row.find(token);
  const double c = tok_it == row.end() ? 0.0 : static_cast<double>(tok_it->second);
  return (c + k) / (static_cast<double>(table_total(row)) + k * v);
}

NGramModel train_ngram(const std::vector<TokenSequence>& corpus, int order, double k) {
  if (order < 2) throw ConfigError("ngram order must be >= 2");
  if (k <= 0.0) throw ConfigError("smoothing k must be positive");
  if (corpus.empty()) throw ConfigError("ngram training corpus is empty");

  NGramModel model;
  model.order = order;
  model.k = k;

  std::set<std::string> vocab;
  for (const TokenSequence& seq : corpus) {
    count_stream(seq.tokens, order, model.forward);
    std::vector<std::string> rev(seq.tokens.rbegin(), seq.tokens.rend());
    count_stream(rev, order, model.backward);
    for (const std::string& tok : seq.tokens) {
      ++model.unigram[tok];
      ++model.total_tokens;
      vocab.insert(tok);
    }
  }
  if (vocab.empty()) throw ConfigError("ngram training corpus has no tokens");
  model.vocab.assign(vocab.begin(), vocab.end());
  return model;
}

std::pair<std::vector<std::string>, RefineReport> refine(const NGramModel& model,
                                                         const std::vector<std::string>& tokens) {
  std::vector<std::string> out = tokens;
  RefineReport report;
  const int ctx_len = model.order - 1;

  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] != kErasurePlaceholder) continue;
    ++report.erasures_in;

    // left context from the (partially repaired) output
    std::vector<std::string> fwd_ctx;
    for (int d = ctx_len; d >= 1; --d) {
      const std::ptrdiff_t p = static_cast<std::ptrdiff_t>(i) - d;
      fwd_ctx.push_back(p < 0 ? kSentenceStart : out[static_cast<std::size_t>(p)]);
    }
    // right context as received, read outside-in to match the reversed stream
    std::vector<std::string> bwd_ctx;
    for (int d = ctx_len; d >= 1; --d) {
      const std::size_t p = i + static_cast<std::size_t>(d);
      bwd_ctx.push_back(p >= out.size() ? kSentenceStart : out[p]);
    }

    const std::string* best = nullptr;
    double best_score = -1.0;
    for (const std::string& cand : model.vocab) {
      const double score =
          model.prob(model.forward, fwd_ctx, cand) * model.prob(model.backward, bwd_ctx, cand);
      // vocab is sorted, so strict improvement keeps the smallest on ties
      if (score > best_score) {
        best_score = score;
        best = &cand;
      }
    }
    if (best) {
      out[i] = *best;
      ++report.erasures_repaired;
      report.positions.push_back(i);
    }
  }
  report.tokens_out = out.size();
  return {std::move(out), report};
}

namespace {

nlohmann::json table_to_json(
    const std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>>& table) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [ctx, row] : table) {
    nlohmann::json r = nlohmann::json::object();
    for (const auto& [tok, c] : row) r[tok] = c;
    j[ctx] = std::move(r);
  }
  return j;
}

void table_from_json(
    const nlohmann::json& j,
    std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>>& table) {
  for (const auto& [ctx, row] : j.items())
    for (const auto& [tok, c] : row.items()) table[ctx][tok] = c.get<std::size_t>();
}

}  // namespace

void save_ngram(const NGramModel& model, const std::string& path) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["order"] = model.order;
  j["k"] = model.k;
  j["vocab"] = model.vocab;
  j["forward"] = table_to_json(model.forward);
  j["backward"] = table_to_json(model.backward);
  nlohmann::json uni = nlohmann::json::object();
  for (const auto& [tok, c] : model.unigram) uni[tok] = c;
  j["unigram"] = std::move(uni);
  j["total_tokens"] = model.total_tokens;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump() << '\n';
}

NGramModel load_ngram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
    throw ParseError(path + ": unsupported or missing format_version");
  NGramModel model;
  try {
    model.order = j.at("order").get<int>();
    model.k = j.at("k").get<double>();
    model.vocab = j.at("vocab").get<std::vector<std::string>>();
    table_from_json(j.at("forward"), model.forward);
    table_from_json(j.at("backward"), model.backward);
    for (const auto& [tok, c] : j.at("unigram").items())
      model.unigram[tok] = c.get<std::size_t>();
    model.total_tokens = j.at("total_tokens").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return model;
}

}  // namespace semcom
