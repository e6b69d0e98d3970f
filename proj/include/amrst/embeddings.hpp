#ifndef AMRST_EMBEDDINGS_HPP
#define AMRST_EMBEDDINGS_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace amrst {

// What to do with a token that has no stored vector.
struct OovPolicy {
  enum class Kind { Skip, HashFallback };
  Kind kind = Kind::HashFallback;
  std::uint64_t seed = 0;

  static OovPolicy skip() { return {Kind::Skip, 0}; }
  static OovPolicy hash_fallback(std::uint64_t seed) { return {Kind::HashFallback, seed}; }
};

// Read-only token -> vector map grounding all WMD/similarity computations.
// Immutable and safely shareable once built.
class EmbeddingStore {
 public:
  EmbeddingStore(Eigen::Index dimension, OovPolicy oov);

  void insert(const std::string& token, Eigen::VectorXd vector);

  // Stored vector, or the OOV fallback; nullopt under the Skip policy.
  std::optional<Eigen::VectorXd> lookup(const std::string& token) const;
  bool contains(const std::string& token) const { return vectors_.count(token) > 0; }

  Eigen::Index dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }
  const OovPolicy& oov_policy() const { return oov_; }

  // Human-readable provenance tag for reports.
  std::string description() const;

 private:
  Eigen::Index dimension_;
  OovPolicy oov_;
  std::unordered_map<std::string, Eigen::VectorXd> vectors_;
};

// Deterministic unit-norm vector derived solely from (token, seed). Stable
// across platforms (no std:: distributions involved).
Eigen::VectorXd hash_fallback_vector(const std::string& token, std::uint64_t seed,
                                     Eigen::Index dimension);

// Empty store that resolves every token through the hash fallback.
EmbeddingStore make_hash_store(Eigen::Index dimension, std::uint64_t seed);

// Plain-text embedding file: optional header line `<count> <dim>`, then one
// `token v1 ... vd` per line. Throws FormatError with a line number on a
// malformed line or inconsistent dimension.
EmbeddingStore load_embeddings(const std::string& path,
                               OovPolicy oov = OovPolicy::hash_fallback(0));
EmbeddingStore parse_embeddings(const std::string& file_text,
                                OovPolicy oov = OovPolicy::hash_fallback(0));

}  // namespace amrst

#endif  // AMRST_EMBEDDINGS_HPP
