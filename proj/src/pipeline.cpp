#include "semcom/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "semcom/embedding.hpp"
#include "semcom/errors.hpp"

namespace semcom {

namespace {

double wall_ms(std::chrono::steady_clock::time_point from) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - from)
      .count();
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.snr_points_db.empty()) throw ConfigError("snr_points_db: must be non-empty");
  for (std::size_t i = 0; i + 1 < cfg.snr_points_db.size(); ++i)
    if (!(cfg.snr_points_db[i] < cfg.snr_points_db[i + 1]))
      throw ConfigError("snr_points_db: must be strictly increasing");
  for (const double s : cfg.snr_points_db)
    if (!std::isfinite(s)) throw ConfigError("snr_points_db: values must be finite");
  if (cfg.trials_per_sentence < 1) throw ConfigError("trials_per_sentence: must be >= 1");
  if (cfg.sentence_limit < 0) throw ConfigError("sentence_limit: must be >= 0");
  if (!(cfg.bitrate_bits_per_s > 0.0)) throw ConfigError("bitrate_bits_per_s: must be > 0");
  if (!std::isfinite(cfg.entropy_threshold))
    throw ConfigError("entropy_threshold: must be finite");
  if (cfg.channel.relay_hops < 1 || cfg.channel.relay_hops > 2)
    throw ConfigError("channel.relay_hops: must be 1 or 2");
  if (cfg.channel.max_retransmissions < 0)
    throw ConfigError("channel.max_retransmissions: must be >= 0");
  if (cfg.codec.kind == CodecKind::Remote && !cfg.codec.endpoint)
    throw ConfigError("codec.endpoint: required for the remote codec");
  if (!(cfg.codec.timeout_seconds > 0.0)) throw ConfigError("codec.timeout_seconds: must be > 0");
  if (cfg.bpe_merges < 0) throw ConfigError("bpe_merges: must be >= 0");
  if (cfg.ngram_order < 2) throw ConfigError("ngram_order: must be >= 2");
  if (!(cfg.ngram_k > 0.0)) throw ConfigError("ngram_k: must be > 0");
}

ModelBundle build_models(const Corpus& corpus, Lexicon lexicon, const ExperimentConfig& cfg) {
  if (corpus.empty()) throw ConfigError("corpus: must be non-empty");
  ModelBundle bundle;
  bundle.lexicon = std::move(lexicon);

  std::vector<std::string> bpe_texts;
  std::vector<TokenSequence> ngram_streams;
  bpe_texts.reserve(corpus.size() * 2);
  ngram_streams.reserve(corpus.size());
  for (const Sentence& s : corpus) {
    bpe_texts.push_back(s.text);
    if (cfg.kg_enabled) {
      const PreprocessedText pre = preprocess(s, cfg.entropy_threshold, bundle.lexicon);
      if (pre.path == PreprocessPath::KgCompressed) bpe_texts.push_back(pre.surface);
      ngram_streams.push_back(tokenize_words(pre.surface));
    } else {
      ngram_streams.push_back(tokenize_words(s.text));
    }
  }
  bundle.bpe = train_bpe(bpe_texts, static_cast<std::size_t>(cfg.bpe_merges));
  bundle.ngram = train_ngram(ngram_streams, cfg.ngram_order, cfg.ngram_k);
  return bundle;
}

double measure_tt(double encode_wall_ms, double decode_wall_ms, std::size_t payload_bits,
                  double bitrate_bits_per_s) {
  if (!(bitrate_bits_per_s > 0.0)) throw ConfigError("bitrate_bits_per_s: must be > 0");
  const double airtime_ms =
      (static_cast<double>(payload_bits) + static_cast<double>(kHeaderBits)) /
      bitrate_bits_per_s * 1000.0;
  return encode_wall_ms + decode_wall_ms + airtime_ms;
}

PipelineResult run_pipeline(const Sentence& sentence, const ExperimentConfig& cfg,
                            const ModelBundle& models, Codec& codec, double snr_db,
                            std::size_t snr_index, int trial_index) {
  PipelineResult result;
  result.original = sentence.text;

  const auto t_enc = std::chrono::steady_clock::now();
  if (cfg.kg_enabled) {
    result.s_tot = preprocess(sentence, cfg.entropy_threshold, models.lexicon);
  } else {
    result.s_tot.sentence_id = sentence.id;
    result.s_tot.surface = sentence.text;
    result.s_tot.path = PreprocessPath::PassThrough;
  }
  result.s_enc = codec.encode_text(result.s_tot.surface);
  const BitVec payload_bits = codec.to_bits(result.s_enc);
  const Frame frame = make_frame(payload_bits, codec.wire_id());
  const double encode_ms = wall_ms(t_enc);

  const std::size_t n_original = tokenize_words(sentence.text).n();
  const CompressionReport cr = compression_report(n_original, result.s_enc.m());
  result.cr_ratio = cr.cr_ratio;
  result.cr_reduction = cr.cr_reduction;

  ChannelConfig ch = cfg.channel;
  ch.snr_db = snr_db;
  ch.seed = derive_stream_seed(cfg.master_seed,
                               {static_cast<std::uint64_t>(snr_index), sentence.id,
                                static_cast<std::uint64_t>(trial_index)});
  const TransmitReport tx = transmit(frame, ch);
  result.delivered = tx.delivered;
  result.retransmissions_used = tx.retransmissions_used;

  result.tt_airtime_ms = measure_tt(0.0, 0.0, payload_bits.size(), cfg.bitrate_bits_per_s);
  if (!tx.delivered) {
    result.tt_processing_ms = encode_ms;
    result.tt_ms = result.tt_airtime_ms + result.tt_processing_ms;
    return result;
  }

  const auto t_dec = std::chrono::steady_clock::now();
  const std::vector<TokenId> ids = codec.from_bits(tx.payload);
  const std::string decoded = codec.decode_ids(ids);
  std::vector<std::string> tokens = tokenize_words(decoded).tokens;
  if (cfg.refine_enabled) {
    auto [repaired, report] = refine(models.ngram, tokens);
    tokens = std::move(repaired);
    result.refine_replaced = report.erasures_repaired;
  }
  result.s_dec = join_tokens(tokens);
  const double decode_ms = wall_ms(t_dec);

  result.ber = tx.payload_ber;
  result.ss = semantic_similarity(result.s_tot.surface, result.s_dec);
  result.ss_vs_original = semantic_similarity(result.original, result.s_dec);
  result.tt_processing_ms = encode_ms + decode_ms;
  result.tt_ms = measure_tt(encode_ms, decode_ms, payload_bits.size(), cfg.bitrate_bits_per_s);
  return result;
}

SweepResult sweep(const Corpus& corpus, const ExperimentConfig& cfg, const ModelBundle& models) {
  validate(cfg);
  if (corpus.empty()) throw ConfigError("corpus: must be non-empty");

  const std::size_t limit = cfg.sentence_limit > 0
                                ? std::min(corpus.size(), static_cast<std::size_t>(cfg.sentence_limit))
                                : corpus.size();
  const std::unique_ptr<Codec> codec = make_codec(cfg.codec, &models.bpe);

  SweepResult out;
  for (std::size_t si = 0; si < cfg.snr_points_db.size(); ++si) {
    const double snr_db = cfg.snr_points_db[si];
    std::size_t attempted = 0;
    std::size_t delivered = 0;
    double sum_ss = 0.0, sum_ber = 0.0, sum_cr = 0.0, sum_air = 0.0, sum_proc = 0.0,
           sum_tt = 0.0;
    for (std::size_t sent = 0; sent < limit; ++sent) {
      for (int trial = 0; trial < cfg.trials_per_sentence; ++trial) {
        const PipelineResult r =
            run_pipeline(corpus[sent], cfg, models, *codec, snr_db, si, trial);
        ++attempted;
        if (!r.delivered) continue;
        ++delivered;
        sum_ss += *r.ss;
        sum_ber += *r.ber;
        sum_cr += r.cr_ratio;
        sum_air += r.tt_airtime_ms;
        sum_proc += r.tt_processing_ms;
        sum_tt += r.tt_ms;
      }
    }
    MetricsRow row;
    row.snr_db = snr_db;
    row.n_samples = delivered;
    row.delivery_rate = attempted ? static_cast<double>(delivered) / static_cast<double>(attempted)
                                  : 0.0;
    if (delivered > 0) {
      const double d = static_cast<double>(delivered);
      row.mean_ss = sum_ss / d;
      row.mean_ber = sum_ber / d;
      row.mean_cr_ratio = sum_cr / d;
      row.mean_tt_ms = sum_air / d;
    }
    out.rows.push_back(row);

    TimingRow timing;
    timing.snr_db = snr_db;
    timing.n_samples = delivered;
    if (delivered > 0) {
      timing.mean_processing_ms = sum_proc / static_cast<double>(delivered);
      timing.mean_total_tt_ms = sum_tt / static_cast<double>(delivered);
    }
    out.timing.push_back(timing);
  }
  return out;
}

}  // namespace semcom
