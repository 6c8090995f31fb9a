#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "semcom/errors.hpp"
#include "semcom/kg.hpp"

using namespace semcom;

namespace {
const std::string kDataDir = std::string(SEMCOM_SOURCE_DIR) + "/data";

Lexicon mini_lexicon() {
    Lexicon lex;
    lex.add("director", PosTag::Noun);
    lex.add("film", PosTag::Noun);
    lex.add("cat", PosTag::Noun);
    lex.add("mice", PosTag::Noun);
    lex.add("made", PosTag::Verb);
    lex.add("chase", PosTag::Verb);
    lex.add("solid", PosTag::Adj);
    lex.add("charming", PosTag::Adj);
    lex.add("and", PosTag::Other);
    lex.add("with", PosTag::Adp);
    lex.add("it", PosTag::Pron);
    return lex;
}

std::vector<PosTaggedToken> tag(const std::string& text, const Lexicon& lex) {
    return pos_tag(tokenize_words(text), lex);
}
}  // namespace

TEST_CASE("tagger precedence: punct, determiners, table, suffixes, noun default") {
    Lexicon lex = mini_lexicon();
    CHECK(lex.tag_of(".") == PosTag::Punct);
    CHECK(lex.tag_of("the") == PosTag::Det);
    CHECK(lex.tag_of("those") == PosTag::Det);
    CHECK(lex.tag_of("made") == PosTag::Verb);
    CHECK(lex.tag_of("solid") == PosTag::Adj);
    CHECK(lex.tag_of("quickly") == PosTag::Other);    // -ly
    CHECK(lex.tag_of("running") == PosTag::Verb);     // -ing
    CHECK(lex.tag_of("walked") == PosTag::Verb);      // -ed
    CHECK(lex.tag_of("chases") == PosTag::Verb);      // -s on a known verb stem
    CHECK(lex.tag_of("cats") == PosTag::Noun);        // -s on a non-verb stem
    CHECK(lex.tag_of("flibbertigibbet") == PosTag::Noun);  // unknown
}

TEST_CASE("pos tag round trip through names") {
    for (PosTag t : {PosTag::Noun, PosTag::Verb, PosTag::Adj, PosTag::Det, PosTag::Adp,
                     PosTag::Pron, PosTag::Punct, PosTag::Other}) {
        CHECK(pos_tag_from_string(to_string(t)) == t);
    }
    CHECK_THROWS_AS(pos_tag_from_string("VRB"), ParseError);
}

TEST_CASE("entity chunking drops determiners and keeps adjectives") {
    Lexicon lex = mini_lexicon();
    auto entities = extract_entities(tag("the solid film", lex));
    REQUIRE(entities.size() == 1);
    CHECK(entities[0].surface() == "solid film");
    CHECK(entities[0].start == 0);  // span includes the determiner position
    CHECK(entities[0].end == 3);
}

TEST_CASE("entity chunks do not overlap and consume noun runs") {
    Lexicon lex = mini_lexicon();
    auto entities = extract_entities(tag("the director film made it", lex));
    REQUIRE(entities.size() == 2);
    CHECK(entities[0].surface() == "director film");
    CHECK(entities[1].surface() == "it");
}

TEST_CASE("triple extraction on the canonical example") {
    Lexicon lex = mini_lexicon();
    auto tagged = tag("the director made a solid film", lex);
    auto triples = extract_triples(tagged, extract_entities(tagged));
    REQUIRE(triples.size() == 1);
    CHECK(triples[0] == Triple{"director", "made", "solid film"});
}

TEST_CASE("one triple per verb run, nearest entities on both sides") {
    Lexicon lex = mini_lexicon();
    auto tagged = tag("cats chase mice and dogs chase cats", lex);
    auto triples = extract_triples(tagged, extract_entities(tagged));
    REQUIRE(triples.size() == 2);
    CHECK(triples[0] == Triple{"cats", "chase", "mice"});
    CHECK(triples[1] == Triple{"dogs", "chase", "cats"});
}

TEST_CASE("verb runs missing a side yield nothing") {
    Lexicon lex = mini_lexicon();
    auto tagged = tag("made a solid film", lex);  // no subject entity before the verb
    CHECK(extract_triples(tagged, extract_entities(tagged)).empty());

    auto tagged2 = tag("the director made", lex);  // no object entity after the verb
    CHECK(extract_triples(tagged2, extract_entities(tagged2)).empty());
}

TEST_CASE("graph keeps unique nodes in insertion order") {
    auto kg = build_graph({{"cats", "chase", "mice"}, {"dogs", "chase", "cats"}});
    REQUIRE(kg.nodes.size() == 3);
    CHECK(kg.nodes[0] == "cats");
    CHECK(kg.nodes[1] == "mice");
    CHECK(kg.nodes[2] == "dogs");
    CHECK(kg.edges.size() == 2);
    CHECK(kg.has_node("dogs"));
    CHECK_FALSE(kg.has_node("fish"));
}

TEST_CASE("linearization joins triples with a semicolon separator") {
    auto kg = build_graph({{"cats", "chase", "mice"}, {"dogs", "chase", "cats"}});
    CHECK(linearize(kg) == "cats chase mice ; dogs chase cats");
    CHECK(linearize(build_graph({{"director", "made", "solid film"}})) ==
          "director made solid film");
    CHECK(linearize(KnowledgeGraph{}).empty());
}

TEST_CASE("ntriples serialization replaces spaces with underscores") {
    auto kg = build_graph({{"director", "made", "solid film"}});
    CHECK(serialize_ntriples(kg) == "<director> <made> <solid_film> .\n");
}

TEST_CASE("preprocess compresses the canonical sentence") {
    Lexicon lex = mini_lexicon();
    Sentence s{7, "the director made a solid film", std::nullopt};
    auto out = preprocess(s, kDefaultEntropyThresholdBits, lex);
    CHECK(out.sentence_id == 7);
    CHECK(out.path == PreprocessPath::KgCompressed);
    CHECK(out.surface == "director made solid film");
}

TEST_CASE("preprocess passes through when extraction finds nothing") {
    Lexicon lex = mini_lexicon();
    Sentence s{0, "a charming film", std::nullopt};
    auto out = preprocess(s, kDefaultEntropyThresholdBits, lex);
    CHECK(out.path == PreprocessPath::PassThrough);
    CHECK(out.surface == "a charming film");
}

TEST_CASE("preprocess passes through unstructured sentences untouched") {
    Lexicon lex = Lexicon::load(kDataDir + "/lexicon.tsv");
    // 16 distinct tokens, entropy log2(16) = 4 > 3.85
    Sentence s{1, "one two three four five six seven eight nine ten eleven twelve "
                  "thirteen fourteen fifteen sixteen", std::nullopt};
    auto out = preprocess(s, kDefaultEntropyThresholdBits, lex);
    CHECK(out.path == PreprocessPath::PassThrough);
    CHECK(out.surface == s.text);
}

TEST_CASE("kg surfaces never invent tokens and never grow") {
    Lexicon lex = Lexicon::load(kDataDir + "/lexicon.tsv");
    auto corpus = load_corpus(kDataDir + "/sst2_mini.tsv");
    for (const auto& s : corpus) {
        auto out = preprocess(s, kDefaultEntropyThresholdBits, lex);
        auto orig = tokenize_words(s.text);
        auto surf = tokenize_words(out.surface);
        CHECK(surf.n() <= orig.n());
        if (out.path == PreprocessPath::KgCompressed) {
            std::unordered_set<std::string> vocab(orig.tokens.begin(), orig.tokens.end());
            for (const auto& tok : surf.tokens) {
                if (tok == ";") continue;
                CHECK(vocab.count(tok) == 1);
            }
        }
    }
}

TEST_CASE("preprocess is deterministic") {
    Lexicon lex = Lexicon::load(kDataDir + "/lexicon.tsv");
    auto corpus = load_corpus(kDataDir + "/sst2_mini.tsv");
    for (std::size_t i = 0; i < corpus.size(); i += 37) {
        auto a = preprocess(corpus[i], kDefaultEntropyThresholdBits, lex);
        auto b = preprocess(corpus[i], kDefaultEntropyThresholdBits, lex);
        CHECK(a.surface == b.surface);
        CHECK(a.path == b.path);
    }
}

TEST_CASE("lexicon load rejects bad tags") {
    const std::string path = "/tmp/semcom_bad_lexicon.tsv";
    {
        std::ofstream f(path);
        f << "word\tBOGUS\n";
    }
    CHECK_THROWS_AS(Lexicon::load(path), ParseError);
    CHECK_THROWS_AS(Lexicon::load("/tmp/definitely_missing_lexicon.tsv"), IoError);
}
