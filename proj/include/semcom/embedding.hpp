#pragma once

#include <string>

#include <Eigen/Dense>

namespace semcom {

inline constexpr int kEmbeddingDim = 256;

using EmbeddingVec = Eigen::Matrix<double, kEmbeddingDim, 1>;

// Feature-hashed bag of words: each word token adds 1 to bucket
// fnv1a64(token) mod 256, then the vector is L2-normalized. An empty or
// all-whitespace text embeds to the zero vector.
EmbeddingVec embed(const std::string& text);

// Cosine over embed(). Either side zero -> 0.0, except two zero vectors
// (both texts token-free) compare as identical -> 1.0.
double semantic_similarity(const std::string& a, const std::string& b);

}  // namespace semcom
