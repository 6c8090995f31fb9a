#include "semcom/embedding.hpp"

#include "semcom/corpus.hpp"
#include "semcom/util.hpp"

namespace semcom {

EmbeddingVec embed(const std::string& text) {
  EmbeddingVec v = EmbeddingVec::Zero();
  const TokenSequence tokens = tokenize_words(text);
  for (const std::string& tok : tokens.tokens)
    v[static_cast<int>(fnv1a64(tok) % kEmbeddingDim)] += 1.0;
  const double norm = v.norm();
  if (norm > 0.0) v /= norm;
  return v;
}

double semantic_similarity(const std::string& a, const std::string& b) {
  const EmbeddingVec va = embed(a);
  const EmbeddingVec vb = embed(b);
  const bool za = va.isZero(0.0);
  const bool zb = vb.isZero(0.0);
  if (za && zb) return 1.0;
  if (za || zb) return 0.0;
  return va.dot(vb);  // unit vectors, so the dot product is the cosine
}

}  // namespace semcom
