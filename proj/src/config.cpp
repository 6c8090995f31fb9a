#include "semcom/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

void check_keys(const nlohmann::json& j, const std::set<std::string>& known,
                const std::string& scope) {
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError(scope + key + ": unknown field");
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out, const std::string& scope) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(scope + key + ": wrong type");
  }
}

CodecDescriptor parse_codec(const nlohmann::json& j) {
  static const std::set<std::string> known = {"kind", "name", "hidden_dim", "endpoint",
                                              "timeout_seconds"};
  check_keys(j, known, "codec.");
  CodecDescriptor d;
  std::string kind = "reference";
  read(j, "kind", kind, "codec.");
  if (kind == "reference") {
    d.kind = CodecKind::ReferenceBpe;
    d.name = "reference-bpe";
  } else if (kind == "remote") {
    d.kind = CodecKind::Remote;
    d.name = "remote";
  } else {
    throw ConfigError("codec.kind: must be \"reference\" or \"remote\"");
  }
  read(j, "name", d.name, "codec.");
  if (j.contains("hidden_dim")) {
    int dim = 0;
    read(j, "hidden_dim", dim, "codec.");
    if (dim <= 0) throw ConfigError("codec.hidden_dim: must be > 0");
    d.hidden_dim = dim;
  }
  if (j.contains("endpoint")) {
    std::string endpoint;
    read(j, "endpoint", endpoint, "codec.");
    d.endpoint = endpoint;
  }
  read(j, "timeout_seconds", d.timeout_seconds, "codec.");
  return d;
}

ChannelConfig parse_channel(const nlohmann::json& j) {
  static const std::set<std::string> known = {"snr_db", "fading", "relay_hops",
                                              "max_retransmissions", "noise_enabled"};
  check_keys(j, known, "channel.");
  ChannelConfig c;
  read(j, "snr_db", c.snr_db, "channel.");
  std::string fading = "rayleigh";
  if (j.contains("fading")) read(j, "fading", fading, "channel.");
  if (fading == "rayleigh")
    c.fading = Fading::Rayleigh;
  else if (fading == "awgn")
    c.fading = Fading::AwgnOnly;
  else
    throw ConfigError("channel.fading: must be \"rayleigh\" or \"awgn\"");
  read(j, "relay_hops", c.relay_hops, "channel.");
  read(j, "max_retransmissions", c.max_retransmissions, "channel.");
  read(j, "noise_enabled", c.noise_enabled, "channel.");
  return c;
}

}  // namespace

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "snr_points_db",  "trials_per_sentence", "sentence_limit", "codec",
      "channel",        "bitrate_bits_per_s",  "entropy_threshold",
      "master_seed",    "kg_enabled",          "refine_enabled", "bpe_merges",
      "ngram_order",    "ngram_k",             "corpus",         "lexicon"};
  if (!j.is_object()) throw ConfigError("config root: must be a JSON object");
  check_keys(j, known, "");

  ExperimentConfig cfg;
  read(j, "snr_points_db", cfg.snr_points_db, "");
  read(j, "trials_per_sentence", cfg.trials_per_sentence, "");
  read(j, "sentence_limit", cfg.sentence_limit, "");
  if (j.contains("codec")) cfg.codec = parse_codec(j.at("codec"));
  if (j.contains("channel")) cfg.channel = parse_channel(j.at("channel"));
  read(j, "bitrate_bits_per_s", cfg.bitrate_bits_per_s, "");
  read(j, "entropy_threshold", cfg.entropy_threshold, "");
  read(j, "master_seed", cfg.master_seed, "");
  read(j, "kg_enabled", cfg.kg_enabled, "");
  read(j, "refine_enabled", cfg.refine_enabled, "");
  read(j, "bpe_merges", cfg.bpe_merges, "");
  read(j, "ngram_order", cfg.ngram_order, "");
  read(j, "ngram_k", cfg.ngram_k, "");
  read(j, "corpus", cfg.corpus_path, "");
  read(j, "lexicon", cfg.lexicon_path, "");
  validate(cfg);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_experiment_config(j);
}

nlohmann::json experiment_config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["snr_points_db"] = cfg.snr_points_db;
  j["trials_per_sentence"] = cfg.trials_per_sentence;
  j["sentence_limit"] = cfg.sentence_limit;
  nlohmann::json codec;
  codec["kind"] = cfg.codec.kind == CodecKind::Remote ? "remote" : "reference";
  codec["name"] = cfg.codec.name;
  if (cfg.codec.hidden_dim) codec["hidden_dim"] = *cfg.codec.hidden_dim;
  if (cfg.codec.endpoint) codec["endpoint"] = *cfg.codec.endpoint;
  codec["timeout_seconds"] = cfg.codec.timeout_seconds;
  j["codec"] = std::move(codec);
  nlohmann::json channel;
  channel["fading"] = cfg.channel.fading == Fading::Rayleigh ? "rayleigh" : "awgn";
  channel["relay_hops"] = cfg.channel.relay_hops;
  channel["max_retransmissions"] = cfg.channel.max_retransmissions;
  channel["noise_enabled"] = cfg.channel.noise_enabled;
  j["channel"] = std::move(channel);
  j["bitrate_bits_per_s"] = cfg.bitrate_bits_per_s;
  j["entropy_threshold"] = cfg.entropy_threshold;
  j["master_seed"] = cfg.master_seed;
  j["kg_enabled"] = cfg.kg_enabled;
  j["refine_enabled"] = cfg.refine_enabled;
  j["bpe_merges"] = cfg.bpe_merges;
  j["ngram_order"] = cfg.ngram_order;
  j["ngram_k"] = cfg.ngram_k;
  j["corpus"] = cfg.corpus_path;
  j["lexicon"] = cfg.lexicon_path;
  return j;
}

}  // namespace semcom
