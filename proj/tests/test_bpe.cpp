#include <doctest.h>

#include <fstream>
#include <string>
#include <vector>

#include "semcom/bpe.hpp"
#include "semcom/corpus.hpp"
#include "semcom/errors.hpp"

using namespace semcom;

namespace {
const std::string kDataDir = std::string(SEMCOM_SOURCE_DIR) + "/data";

std::string normalized(const std::string& text) {
    auto t = tokenize_words(text);
    std::string out;
    for (std::size_t i = 0; i < t.n(); ++i) {
        if (i) out += ' ';
        out += t.tokens[i];
    }
    return out;
}
}  // namespace

TEST_CASE("first merge is the most frequent pair") {
    auto model = train_bpe({"aaab aaab"}, 1);
    REQUIRE(model.merges.size() == 1);
    CHECK(model.merges[0].first == "a");
    CHECK(model.merges[0].second == "a");
}

TEST_CASE("ties break to the lexicographically smallest pair") {
    // every adjacent pair occurs exactly twice; ("a","b") sorts first
    auto model = train_bpe({"ab ab ba ba"}, 1);
    REQUIRE(model.merges.size() == 1);
    CHECK(model.merges[0].first == "a");
    CHECK(model.merges[0].second == "b");
}

TEST_CASE("merging stops when no pair repeats") {
    auto model = train_bpe({"ab cd"}, 100);
    // the only repeated pair is (x, marker) per word: (b,_) once, (d,_) once
    CHECK(model.merges.empty());
}

TEST_CASE("zero merges yields a character model") {
    auto model = train_bpe({"ab ab"}, 0);
    CHECK(model.merges.empty());
    auto payload = encode(model, "ab");
    CHECK(payload.m() == 3);  // 'a', 'b', marker
    CHECK(decode(model, payload.ids) == "ab");
}

TEST_CASE("training is deterministic") {
    std::vector<std::string> corpus = {"the solid film", "the solid story", "a solid film"};
    auto a = train_bpe(corpus, 50);
    auto b = train_bpe(corpus, 50);
    CHECK(a.merges == b.merges);
    CHECK(a.id_to_token == b.id_to_token);
    CHECK(a.id_width_bits == b.id_width_bits);
}

TEST_CASE("more merges never increase the id count") {
    std::vector<std::string> corpus = {"the solid film holds", "the solid film delivers",
                                       "a solid story holds"};
    auto m0 = train_bpe(corpus, 0);
    auto m20 = train_bpe(corpus, 20);
    auto m200 = train_bpe(corpus, 200);
    const std::string probe = "the solid film holds";
    CHECK(encode(m20, probe).m() <= encode(m0, probe).m());
    CHECK(encode(m200, probe).m() <= encode(m20, probe).m());
}

TEST_CASE("roundtrip over the fixture corpus") {
    auto corpus = load_corpus(kDataDir + "/sst2_mini.tsv");
    std::vector<std::string> texts;
    for (const auto& s : corpus) texts.push_back(s.text);
    auto model = train_bpe(texts, 400);
    for (std::size_t i = 0; i < corpus.size(); i += 23) {
        auto payload = encode(model, corpus[i].text);
        CHECK(decode(model, payload.ids) == normalized(corpus[i].text));
    }
}

TEST_CASE("id width covers vocab plus pad and erasure") {
    auto model = train_bpe({"ab ab"}, 0);
    // base vocab {a, b, marker} -> 3 ids + PAD + ERASURE = 5 -> 3 bits
    CHECK(model.vocab_size() == 3);
    CHECK(model.pad_id() == 3);
    CHECK(model.erasure_id() == 4);
    CHECK(model.id_width_bits == 3);
}

TEST_CASE("fixed-width packing is big-endian") {
    BitVec bits = pack_ids({5}, 12);
    REQUIRE(bits.size() == 12);
    const int expected[12] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1};
    for (int i = 0; i < 12; ++i) CHECK(bits[i] == expected[i]);
    auto ids = unpack_ids(bits, 12, 4096, 4095);
    REQUIRE(ids.size() == 1);
    CHECK(ids[0] == 5);
}

TEST_CASE("unpack rejects ragged bit counts") {
    BitVec bits(13, 0);
    CHECK_THROWS_AS(unpack_ids(bits, 12, 100, 99), FramingError);
}

TEST_CASE("unpack maps out-of-range ids to the erasure id") {
    BitVec bits = pack_ids({7, 3}, 4);
    auto ids = unpack_ids(bits, 4, /*valid_limit=*/5, /*erasure_id=*/9);
    REQUIRE(ids.size() == 2);
    CHECK(ids[0] == 9);
    CHECK(ids[1] == 3);
}

TEST_CASE("bit bridge roundtrips and degrades corrupted ids to erasures") {
    auto model = train_bpe({"the solid film", "the solid story"}, 30);
    auto payload = encode(model, "the solid film");
    BitVec bits = ids_to_bits(payload, model);
    CHECK(bits.size() == payload.m() * static_cast<std::size_t>(model.id_width_bits));
    CHECK(bits_to_ids(bits, model) == payload.ids);

    // force the first id to the all-ones pattern, beyond ERASURE
    for (int i = 0; i < model.id_width_bits; ++i) bits[i] = 1;
    auto ids = bits_to_ids(bits, model);
    const bool first_is_erasure = ids[0] == model.erasure_id();
    CHECK(first_is_erasure);
    auto text = decode(model, ids);
    CHECK(text.find(kErasurePlaceholder) != std::string::npos);
}

TEST_CASE("pad ids decode to nothing and stay wire-legal") {
    auto model = train_bpe({"ab ab"}, 0);
    std::vector<TokenId> ids = {model.token_to_id.at("a"), model.pad_id()};
    BitVec bits = pack_ids(ids, model.id_width_bits);
    CHECK(bits_to_ids(bits, model) == ids);
    CHECK(decode(model, {model.pad_id()}).empty());
}

TEST_CASE("decode rejects ids past the erasure id") {
    auto model = train_bpe({"ab ab"}, 0);
    CHECK_THROWS_AS(decode(model, {model.erasure_id() + 1}), CorruptionError);
}

TEST_CASE("unknown codepoints encode as erasures") {
    auto model = train_bpe({"plain ascii text only"}, 10);
    auto payload = encode(model, "caf\xC3\xA9");
    bool has_erasure = false;
    for (TokenId id : payload.ids) has_erasure |= id == model.erasure_id();
    CHECK(has_erasure);
    auto text = decode(model, payload.ids);
    CHECK(text.find(kErasurePlaceholder) != std::string::npos);
}

TEST_CASE("erasure decodes as a standalone token") {
    auto model = train_bpe({"the solid film"}, 10);
    auto payload = encode(model, "the film");
    std::vector<TokenId> ids = payload.ids;
    ids[0] = model.erasure_id();
    auto toks = tokenize_words(decode(model, ids));
    REQUIRE(!toks.empty());
    CHECK(toks.tokens[0] == kErasurePlaceholder);
}

TEST_CASE("training rejects empty corpora and marker glyphs") {
    CHECK_THROWS_AS(train_bpe({}, 10), ConfigError);
    CHECK_THROWS_AS(train_bpe({"   "}, 10), ConfigError);
    CHECK_THROWS_AS(train_bpe({std::string("bad ") + kWordBoundaryMarker}, 10), ConfigError);
}

TEST_CASE("compression report forms") {
    auto r = compression_report(10, 7);
    CHECK(r.cr_reduction == doctest::Approx(0.3));
    CHECK(r.cr_ratio == doctest::Approx(0.7));
    CHECK(r.n == 10);
    CHECK(r.m == 7);
    CHECK_THROWS_AS(compression_report(0, 7), MeasurementError);
}

TEST_CASE("bpe model persists through json") {
    auto model = train_bpe({"the solid film", "the solid story", "a charming film"}, 40);
    const std::string path = "/tmp/semcom_bpe_model.json";
    save_bpe(model, path);
    auto loaded = load_bpe(path);
    CHECK(loaded.merges == model.merges);
    CHECK(loaded.id_to_token == model.id_to_token);
    CHECK(loaded.base_vocab == model.base_vocab);
    CHECK(loaded.id_width_bits == model.id_width_bits);

    auto payload = encode(loaded, "the charming story");
    CHECK(decode(loaded, payload.ids) == "the charming story");

    CHECK_THROWS_AS(load_bpe("/tmp/missing_bpe_model.json"), IoError);
    {
        std::ofstream f("/tmp/semcom_bpe_garbage.json");
        f << "{not json";
    }
    CHECK_THROWS_AS(load_bpe("/tmp/semcom_bpe_garbage.json"), ParseError);
}
