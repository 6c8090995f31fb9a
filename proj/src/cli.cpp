#include "semcom/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "semcom/config.hpp"
#include "semcom/embedding.hpp"
#include "semcom/errors.hpp"
#include "semcom/report.hpp"

namespace semcom {

namespace {

struct GlobalFlags {
  double entropy_threshold = kDefaultEntropyThresholdBits;
  std::string codec = "reference";
  std::string endpoint;
  int relay_hops = 1;
  std::uint64_t seed = ExperimentConfig{}.master_seed;
  bool entropy_threshold_set = false;
  bool codec_set = false;
  bool endpoint_set = false;
  bool relay_hops_set = false;
  bool seed_set = false;
};

void apply_globals(ExperimentConfig& cfg, const GlobalFlags& g) {
  if (g.entropy_threshold_set) cfg.entropy_threshold = g.entropy_threshold;
  if (g.codec_set) {
    cfg.codec.kind = g.codec == "remote" ? CodecKind::Remote : CodecKind::ReferenceBpe;
    cfg.codec.name = g.codec == "remote" ? "remote" : "reference-bpe";
  }
  if (g.endpoint_set) cfg.codec.endpoint = g.endpoint;
  if (g.relay_hops_set) cfg.channel.relay_hops = g.relay_hops;
  if (g.seed_set) cfg.master_seed = g.seed;
}

ModelBundle load_and_build(const ExperimentConfig& cfg, Corpus& corpus) {
  corpus = load_corpus(cfg.corpus_path);
  Lexicon lexicon = Lexicon::load(cfg.lexicon_path);
  return build_models(corpus, std::move(lexicon), cfg);
}

int cmd_ingest(const std::string& tsv, double threshold) {
  const Corpus corpus = load_corpus(tsv);
  std::size_t structured = 0;
  double min_h = 0.0, max_h = 0.0, sum_h = 0.0;
  bool first = true;
  for (const Sentence& s : corpus) {
    const GateDecision gate = classify_sentence(tokenize_words(s.text), threshold);
    if (gate.cls == GateClass::Structured) ++structured;
    if (first) {
      min_h = max_h = gate.entropy_bits;
      first = false;
    } else {
      min_h = std::min(min_h, gate.entropy_bits);
      max_h = std::max(max_h, gate.entropy_bits);
    }
    sum_h += gate.entropy_bits;
  }
  const std::size_t total = corpus.size();
  std::printf("sentences: %zu\n", total);
  std::printf("entropy_threshold_bits: %.4f\n", threshold);
  std::printf("structured: %zu\n", structured);
  std::printf("unstructured: %zu\n", total - structured);
  if (total > 0) {
    std::printf("entropy_bits_min: %.4f\n", min_h);
    std::printf("entropy_bits_mean: %.4f\n", sum_h / static_cast<double>(total));
    std::printf("entropy_bits_max: %.4f\n", max_h);
  }
  return 0;
}

int cmd_train(ExperimentConfig cfg, const std::string& out_dir) {
  Corpus corpus;
  const ModelBundle models = load_and_build(cfg, corpus);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory " + out_dir + ": " + ec.message());
  const std::filesystem::path dir(out_dir);
  save_bpe(models.bpe, (dir / "bpe.json").string());
  save_ngram(models.ngram, (dir / "ngram.json").string());

  nlohmann::json report;
  report["sentences"] = corpus.size();
  report["bpe_vocab_size"] = models.bpe.vocab_size();
  report["bpe_merges"] = models.bpe.merges.size();
  report["id_width_bits"] = models.bpe.id_width_bits;
  report["ngram_order"] = models.ngram.order;
  report["ngram_vocab_size"] = models.ngram.vocab.size();
  report["ngram_total_tokens"] = models.ngram.total_tokens;
  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmd_kg_extract(const ExperimentConfig& cfg, const std::string& out_path) {
  const Corpus corpus = load_corpus(cfg.corpus_path);
  const Lexicon lexicon = Lexicon::load(cfg.lexicon_path);

  std::vector<Triple> all;
  for (const Sentence& s : corpus) {
    const TokenSequence tokens = tokenize_words(s.text);
    if (classify_sentence(tokens, cfg.entropy_threshold).cls != GateClass::Structured) continue;
    const auto tagged = pos_tag(tokens, lexicon);
    for (Triple& t : extract_triples(tagged, extract_entities(tagged)))
      all.push_back(std::move(t));
  }
  const KnowledgeGraph kg = build_graph(all);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw IoError("cannot write " + out_path);
  out << serialize_ntriples(kg);
  std::printf("sentences: %zu\nnodes: %zu\nedges: %zu\n", corpus.size(), kg.nodes.size(),
              kg.edges.size());
  return 0;
}

int cmd_run(ExperimentConfig cfg, const std::string& sentence_text, double snr_db,
            bool no_noise) {
  if (no_noise) cfg.channel.noise_enabled = false;
  validate(cfg);
  Corpus corpus;
  const ModelBundle models = load_and_build(cfg, corpus);
  const std::unique_ptr<Codec> codec = make_codec(cfg.codec, &models.bpe);

  const Sentence sentence{0, sentence_text, std::nullopt};
  const PipelineResult r = run_pipeline(sentence, cfg, models, *codec, snr_db, 0, 0);

  nlohmann::json j;
  j["original"] = r.original;
  j["s_tot"] = {{"surface", r.s_tot.surface},
                {"path", r.s_tot.path == PreprocessPath::KgCompressed ? "kg" : "passthrough"}};
  j["m"] = r.s_enc.m();
  j["n_source_tokens"] = r.s_enc.source_token_count;
  j["cr_ratio"] = r.cr_ratio;
  j["cr_reduction"] = r.cr_reduction;
  j["snr_db"] = snr_db;
  j["delivered"] = r.delivered;
  j["retransmissions_used"] = r.retransmissions_used;
  j["s_dec"] = r.s_dec;
  j["ss"] = r.ss ? nlohmann::json(*r.ss) : nlohmann::json(nullptr);
  j["ss_vs_original"] =
      r.ss_vs_original ? nlohmann::json(*r.ss_vs_original) : nlohmann::json(nullptr);
  j["ber"] = r.ber ? nlohmann::json(*r.ber) : nlohmann::json(nullptr);
  j["tt_ms"] = r.tt_ms;
  j["tt_airtime_ms"] = r.tt_airtime_ms;
  j["tt_processing_ms"] = r.tt_processing_ms;
  j["refine_replaced"] = r.refine_replaced;
  j["seed"] = cfg.master_seed;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, const GlobalFlags& g) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  apply_globals(cfg, g);
  validate(cfg);
  Corpus corpus;
  const ModelBundle models = load_and_build(cfg, corpus);
  const SweepResult result = sweep(corpus, cfg, models);
  write_report(result, experiment_config_to_json(cfg), out_dir);
  for (const MetricsRow& row : result.rows) {
    std::printf("snr %5.2f dB  ss %.4f  ber %.6f  cr %.4f  tt %.4f ms  delivery %.3f  n %zu\n",
                row.snr_db, row.mean_ss, row.mean_ber, row.mean_cr_ratio, row.mean_tt_ms,
                row.delivery_rate, row.n_samples);
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"end-to-end semantic communication link simulator"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalFlags g;
  auto* opt_threshold =
      app.add_option("--entropy-threshold", g.entropy_threshold, "entropy gate threshold, bits");
  auto* opt_codec = app.add_option("--codec", g.codec, "codec kind")
                        ->check(CLI::IsMember({"reference", "remote"}));
  auto* opt_endpoint = app.add_option("--endpoint", g.endpoint, "remote codec URL");
  auto* opt_relay =
      app.add_option("--relay-hops", g.relay_hops, "channel hops")->check(CLI::IsMember({1, 2}));
  auto* opt_seed = app.add_option("--seed", g.seed, "master seed");

  std::string ingest_tsv;
  auto* ingest = app.add_subcommand("ingest", "validate a corpus and print gate statistics");
  ingest->add_option("tsv", ingest_tsv, "corpus TSV path")->required();

  std::string train_corpus = ExperimentConfig{}.corpus_path;
  std::string train_lexicon = ExperimentConfig{}.lexicon_path;
  std::string train_out;
  int train_merges = ExperimentConfig{}.bpe_merges;
  int train_order = ExperimentConfig{}.ngram_order;
  double train_k = ExperimentConfig{}.ngram_k;
  auto* train = app.add_subcommand("train", "fit the BPE and n-gram models");
  train->add_option("--corpus", train_corpus, "corpus TSV path")->required();
  train->add_option("--merges", train_merges, "BPE merge budget");
  train->add_option("--ngram-order", train_order, "n-gram order");
  train->add_option("--ngram-k", train_k, "add-k smoothing constant");
  train->add_option("--lexicon", train_lexicon, "POS lexicon TSV path");
  train->add_option("--out", train_out, "output directory")->required();

  std::string kg_corpus = ExperimentConfig{}.corpus_path;
  std::string kg_lexicon = ExperimentConfig{}.lexicon_path;
  std::string kg_out;
  auto* kg = app.add_subcommand("kg", "knowledge graph tools");
  auto* kg_extract = kg->add_subcommand("extract", "extract triples to an N-Triples file");
  kg_extract->add_option("--corpus", kg_corpus, "corpus TSV path")->required();
  kg_extract->add_option("--lexicon", kg_lexicon, "POS lexicon TSV path");
  kg_extract->add_option("--out", kg_out, "N-Triples output path")->required();
  kg->require_subcommand(1);

  std::string run_sentence;
  std::string run_corpus = ExperimentConfig{}.corpus_path;
  std::string run_lexicon = ExperimentConfig{}.lexicon_path;
  double run_snr = 6.0;
  bool run_no_noise = false;
  auto* run = app.add_subcommand("run", "trace one sentence through the pipeline");
  run->add_option("--sentence", run_sentence, "text to transmit")->required();
  run->add_option("--snr", run_snr, "SNR in dB");
  run->add_flag("--no-noise", run_no_noise, "disable channel noise");
  run->add_option("--corpus", run_corpus, "training corpus TSV path");
  run->add_option("--lexicon", run_lexicon, "POS lexicon TSV path");

  std::string sweep_config;
  std::string sweep_out = "out";
  auto* sweep_cmd = app.add_subcommand("sweep", "run the SNR sweep from a config file");
  sweep_cmd->add_option("--config", sweep_config, "experiment config JSON")->required();
  sweep_cmd->add_option("--out", sweep_out, "report output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  g.entropy_threshold_set = opt_threshold->count() > 0;
  g.codec_set = opt_codec->count() > 0;
  g.endpoint_set = opt_endpoint->count() > 0;
  g.relay_hops_set = opt_relay->count() > 0;
  g.seed_set = opt_seed->count() > 0;

  try {
    if (ingest->parsed()) return cmd_ingest(ingest_tsv, g.entropy_threshold);
    if (train->parsed()) {
      ExperimentConfig cfg;
      cfg.corpus_path = train_corpus;
      cfg.lexicon_path = train_lexicon;
      cfg.bpe_merges = train_merges;
      cfg.ngram_order = train_order;
      cfg.ngram_k = train_k;
      apply_globals(cfg, g);
      validate(cfg);
      return cmd_train(cfg, train_out);
    }
    if (kg_extract->parsed()) {
      ExperimentConfig cfg;
      cfg.corpus_path = kg_corpus;
      cfg.lexicon_path = kg_lexicon;
      apply_globals(cfg, g);
      return cmd_kg_extract(cfg, kg_out);
    }
    if (run->parsed()) {
      ExperimentConfig cfg;
      cfg.corpus_path = run_corpus;
      cfg.lexicon_path = run_lexicon;
      apply_globals(cfg, g);
      return cmd_run(cfg, run_sentence, run_snr, run_no_noise);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_config, sweep_out, g);
  } catch (const TransportError& e) {
    std::cerr << "remote codec transport error: " << e.what() << '\n';
    return 4;
  } catch (const ProtocolError& e) {
    std::cerr << "remote codec protocol error: " << e.what() << '\n';
    return 4;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace semcom
