#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semcom/channel.hpp"
#include "semcom/codec.hpp"
#include "semcom/corpus.hpp"
#include "semcom/kg.hpp"
#include "semcom/refine.hpp"

namespace semcom {

struct ExperimentConfig {
  std::vector<double> snr_points_db = {2.0, 4.0, 6.0, 8.0, 10.0};
  int trials_per_sentence = 5;
  int sentence_limit = 0;  // 0 = whole corpus
  CodecDescriptor codec;
  ChannelConfig channel;  // template; snr_db and seed are set per trial
  double bitrate_bits_per_s = 1e6;
  double entropy_threshold = kDefaultEntropyThresholdBits;
  std::uint64_t master_seed = 20240901;
  bool kg_enabled = true;
  bool refine_enabled = true;
  int bpe_merges = 800;
  int ngram_order = 3;
  double ngram_k = 0.1;
  std::string corpus_path = "data/sst2_mini.tsv";
  std::string lexicon_path = "data/lexicon.tsv";
};

// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& cfg);

struct ModelBundle {
  Lexicon lexicon;
  BpeModel bpe;
  NGramModel ngram;
};

// BPE trains on raw sentences plus their preprocessed surfaces (so the ";"
// separator is covered); the n-gram trains on the transmitted domain only.
ModelBundle build_models(const Corpus& corpus, Lexicon lexicon, const ExperimentConfig& cfg);

struct PipelineResult {
  std::string original;
  PreprocessedText s_tot;
  EncodedPayload s_enc;
  std::string s_dec;
  bool delivered = false;
  std::optional<double> ss;              // vs the transmitted surface
  std::optional<double> ss_vs_original;  // vs the raw input sentence
  std::optional<double> ber;             // payload, pre-refinement
  double cr_ratio = 0.0;                 // m over the original word-token count
  double cr_reduction = 0.0;
  double tt_ms = 0.0;            // airtime + processing
  double tt_airtime_ms = 0.0;    // deterministic component
  double tt_processing_ms = 0.0; // wall clock, excluded from byte-identity
  int retransmissions_used = 0;
  std::size_t refine_replaced = 0;
};

// tt_ms = encode_wall_ms + decode_wall_ms + (payload_bits + 80) / bitrate * 1000.
double measure_tt(double encode_wall_ms, double decode_wall_ms, std::size_t payload_bits,
                  double bitrate_bits_per_s);

// Algorithm: gate/KG preprocess, encode to bits, frame, transmit at snr_db,
// unframe, decode, refine, then score. The channel stream is derived from
// (master_seed, snr_index, sentence id, trial_index).
PipelineResult run_pipeline(const Sentence& sentence, const ExperimentConfig& cfg,
                            const ModelBundle& models, Codec& codec, double snr_db,
                            std::size_t snr_index, int trial_index);

struct MetricsRow {
  double snr_db = 0.0;
  double mean_ss = 0.0;
  double mean_ber = 0.0;
  double mean_cr_ratio = 0.0;
  double mean_tt_ms = 0.0;  // airtime only, so reruns are byte-identical
  double delivery_rate = 0.0;
  std::size_t n_samples = 0;  // delivered trials feeding the means
};

struct TimingRow {
  double snr_db = 0.0;
  double mean_processing_ms = 0.0;  // wall clock, varies run to run
  double mean_total_tt_ms = 0.0;
  std::size_t n_samples = 0;
};

struct SweepResult {
  std::vector<MetricsRow> rows;     // ordered by SNR
  std::vector<TimingRow> timing;
};

// Means cover delivered trials only; delivery_rate is delivered / attempted.
SweepResult sweep(const Corpus& corpus, const ExperimentConfig& cfg, const ModelBundle& models);

}  // namespace semcom
