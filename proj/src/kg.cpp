#include "semcom/kg.hpp"

#include <algorithm>
#include <fstream>

#include "semcom/errors.hpp"

namespace semcom {

namespace {

const std::unordered_set<std::string>& closed_determiners() {
  static const std::unordered_set<std::string> dets = {"a",    "an",    "the",  "this",
                                                       "that", "these", "those"};
  return dets;
}

bool ends_with(const std::string& s, std::string_view suffix) {
  // Strict: the suffix must leave at least one stem character.
  return s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_nominal(PosTag tag) { return tag == PosTag::Noun || tag == PosTag::Pron; }

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

const char* to_string(PosTag tag) {
  switch (tag) {
    case PosTag::Noun: return "NOUN";
    case PosTag::Verb: return "VERB";
    case PosTag::Adj: return "ADJ";
    case PosTag::Det: return "DET";
    case PosTag::Adp: return "ADP";
    case PosTag::Pron: return "PRON";
    case PosTag::Punct: return "PUNCT";
    case PosTag::Other: return "OTHER";
  }
  return "OTHER";
}

PosTag pos_tag_from_string(const std::string& name) {
  if (name == "NOUN") return PosTag::Noun;
  if (name == "VERB") return PosTag::Verb;
  if (name == "ADJ") return PosTag::Adj;
  if (name == "DET") return PosTag::Det;
  if (name == "ADP") return PosTag::Adp;
  if (name == "PRON") return PosTag::Pron;
  if (name == "PUNCT") return PosTag::Punct;
  if (name == "OTHER") return PosTag::Other;
  throw ParseError("unknown POS tag name: '" + name + "'");
}

Lexicon Lexicon::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open lexicon file: " + path);

  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("lexicon line " + std::to_string(line_no) + ": expected word<TAB>TAG");
    }
    lex.add(line.substr(0, tab), pos_tag_from_string(line.substr(tab + 1)));
  }
  return lex;
}

PosTag Lexicon::tag_of(const std::string& token) const {
  if (is_ascii_punct_token(token)) return PosTag::Punct;
  if (closed_determiners().count(token)) return PosTag::Det;

  if (const auto it = entries_.find(token); it != entries_.end()) return it->second;

  if (ends_with(token, "ly")) return PosTag::Other;
  if (ends_with(token, "ing") || ends_with(token, "ed")) return PosTag::Verb;
  if (ends_with(token, "s")) {
    const auto stem = entries_.find(token.substr(0, token.size() - 1));
    if (stem != entries_.end() && stem->second == PosTag::Verb) return PosTag::Verb;
  }
  return PosTag::Noun;
}

std::vector<PosTaggedToken> pos_tag(const TokenSequence& tokens, const Lexicon& lexicon) {
  std::vector<PosTaggedToken> tagged;
  tagged.reserve(tokens.n());
  for (const std::string& t : tokens.tokens) tagged.push_back({t, lexicon.tag_of(t)});
  return tagged;
}

std::string Entity::surface() const { return join(tokens, " "); }

std::vector<Entity> extract_entities(const std::vector<PosTaggedToken>& tagged) {
  std::vector<Entity> entities;
  std::size_t i = 0;
  while (i < tagged.size()) {
    std::size_t j = i;
    bool has_det = false;
    if (tagged[j].tag == PosTag::Det) {
      has_det = true;
      ++j;
    }
    while (j < tagged.size() && tagged[j].tag == PosTag::Adj) ++j;
    const std::size_t noun_start = j;
    while (j < tagged.size() && is_nominal(tagged[j].tag)) ++j;

    if (j == noun_start) {
      // No nominal head: the chunk attempt fails, resume after the first token.
      ++i;
      continue;
    }
    Entity e;
    e.start = i;
    e.end = j;
    for (std::size_t k = i + (has_det ? 1 : 0); k < j; ++k) e.tokens.push_back(tagged[k].token);
    entities.push_back(std::move(e));
    i = j;
  }
  return entities;
}

std::vector<Triple> extract_triples(const std::vector<PosTaggedToken>& tagged,
                                    const std::vector<Entity>& entities) {
  std::vector<Triple> triples;
  std::size_t i = 0;
  while (i < tagged.size()) {
    if (tagged[i].tag != PosTag::Verb) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    std::vector<std::string> verb_tokens;
    while (run_end < tagged.size() && tagged[run_end].tag == PosTag::Verb) {
      verb_tokens.push_back(tagged[run_end].token);
      ++run_end;
    }

    const Entity* subject = nullptr;
    for (const Entity& e : entities) {
      if (e.end <= i && (subject == nullptr || e.end > subject->end)) subject = &e;
    }
    const Entity* object = nullptr;
    for (const Entity& e : entities) {
      if (e.start >= run_end && (object == nullptr || e.start < object->start)) object = &e;
    }
    if (subject != nullptr && object != nullptr) {
      triples.push_back({subject->surface(), join(verb_tokens, " "), object->surface()});
    }
    i = run_end;
  }
  return triples;
}

bool KnowledgeGraph::has_node(const std::string& name) const {
  return std::find(nodes.begin(), nodes.end(), name) != nodes.end();
}

KnowledgeGraph build_graph(const std::vector<Triple>& triples) {
  KnowledgeGraph kg;
  std::unordered_set<std::string> seen;
  const auto add_node = [&](const std::string& name) {
    if (seen.insert(name).second) kg.nodes.push_back(name);
  };
  for (const Triple& t : triples) {
    add_node(t.subject);
    add_node(t.object);
    kg.edges.push_back(t);
  }
  return kg;
}

std::string linearize(const KnowledgeGraph& kg) {
  std::string out;
  for (std::size_t i = 0; i < kg.edges.size(); ++i) {
    if (i > 0) out += " ; ";
    const Triple& t = kg.edges[i];
    out += t.subject + " " + t.predicate + " " + t.object;
  }
  return out;
}

std::string serialize_ntriples(const KnowledgeGraph& kg) {
  const auto escape = [](std::string name) {
    std::replace(name.begin(), name.end(), ' ', '_');
    return name;
  };
  std::string out;
  for (const Triple& t : kg.edges) {
    out += "<" + escape(t.subject) + "> <" + escape(t.predicate) + "> <" + escape(t.object) +
           "> .\n";
  }
  return out;
}

PreprocessedText preprocess(const Sentence& sentence, double threshold_bits,
                            const Lexicon& lexicon) {
  PreprocessedText out;
  out.sentence_id = sentence.id;
  out.surface = sentence.text;
  out.path = PreprocessPath::PassThrough;

  const TokenSequence tokens = tokenize_words(sentence.text);
  const GateDecision gate = classify_sentence(tokens, threshold_bits);
  if (gate.cls == GateClass::Unstructured) return out;

  const std::vector<PosTaggedToken> tagged = pos_tag(tokens, lexicon);
  const std::vector<Entity> entities = extract_entities(tagged);
  const std::vector<Triple> triples = extract_triples(tagged, entities);
  if (triples.empty()) return out;

  const std::string surface = linearize(build_graph(triples));
  // Shared entities can repeat across triples and the " ; " separator adds a
  // token, so the linearized form is not guaranteed to shrink. Only take the
  // compressed path when it actually does.
  if (tokenize_words(surface).n() > tokens.n()) return out;

  out.surface = surface;
  out.path = PreprocessPath::KgCompressed;
  return out;
}

}  // namespace semcom
