#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "semcom/corpus.hpp"

namespace semcom {

enum class PosTag { Noun, Verb, Adj, Det, Adp, Pron, Punct, Other };

const char* to_string(PosTag tag);
PosTag pos_tag_from_string(const std::string& name);  // throws ParseError on unknown names

struct PosTaggedToken {
  std::string token;
  PosTag tag = PosTag::Other;
};

// Word -> tag table loaded from a TSV data file, plus suffix heuristics for
// unknown words. Immutable after load.
class Lexicon {
 public:
  Lexicon() = default;

  // Lines `word<TAB>TAG`; '#' comment lines and blank lines are skipped.
  static Lexicon load(const std::string& path);

  void add(const std::string& word, PosTag tag) { entries_[word] = tag; }

  // Tagging policy: punctuation, then the closed determiner list, then the
  // table, then suffix rules (-ly -> OTHER, -ing/-ed -> VERB, -s on a known
  // verb stem -> VERB), else NOUN.
  PosTag tag_of(const std::string& token) const;

  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, PosTag> entries_;
};

// Contiguous nominal span: (DET? ADJ* (NOUN|PRON)+), end exclusive.
struct Entity {
  std::vector<std::string> tokens;  // span tokens, determiner dropped
  std::size_t start = 0;
  std::size_t end = 0;

  std::string surface() const;
};

struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;

  bool operator==(const Triple&) const = default;
};

struct KnowledgeGraph {
  std::vector<std::string> nodes;  // unique, insertion order
  std::vector<Triple> edges;       // extraction order

  bool has_node(const std::string& name) const;
};

enum class PreprocessPath { KgCompressed, PassThrough };

struct PreprocessedText {
  std::uint64_t sentence_id = 0;
  std::string surface;  // linearized triples, or the original text
  PreprocessPath path = PreprocessPath::PassThrough;
};

std::vector<PosTaggedToken> pos_tag(const TokenSequence& tokens, const Lexicon& lexicon);

// Left-to-right maximal (DET? ADJ* (NOUN|PRON)+) chunks, non-overlapping.
std::vector<Entity> extract_entities(const std::vector<PosTaggedToken>& tagged);

// One candidate triple per contiguous VERB run: subject is the nearest entity
// ending at or before the run, object the nearest entity starting after it.
// Runs missing either side yield nothing.
std::vector<Triple> extract_triples(const std::vector<PosTaggedToken>& tagged,
                                    const std::vector<Entity>& entities);

KnowledgeGraph build_graph(const std::vector<Triple>& triples);

// Edges rendered in order as "subject predicate object", joined by " ; ".
std::string linearize(const KnowledgeGraph& kg);

// One `<subject> <predicate> <object> .` line per edge, spaces in names
// replaced by underscores.
std::string serialize_ntriples(const KnowledgeGraph& kg);

// Gate + extraction for one sentence. Unstructured sentences, sentences
// yielding no triples, and sentences whose linearized form would not shrink
// the token count all pass through unchanged.
PreprocessedText preprocess(const Sentence& sentence, double threshold_bits,
                            const Lexicon& lexicon);

}  // namespace semcom
