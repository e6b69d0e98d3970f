#include "amrst/embeddings.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "amrst/errors.hpp"

namespace amrst {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a(const std::string& s, std::uint64_t seed) {
  std::uint64_t h = kFnvOffset ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

// splitmix64: portable stream of 64-bit values.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

bool parse_positive_int(const std::string& s, long& out) {
  if (s.empty()) return false;
  long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
    if (v > 1'000'000'000L) return false;
  }
  out = v;
  return v > 0;
}

}  // namespace

Eigen::VectorXd hash_fallback_vector(const std::string& token, std::uint64_t seed,
                                     Eigen::Index dimension) {
  std::uint64_t state = fnv1a(token, seed);
  Eigen::VectorXd v(dimension);
  // Box-Muller over splitmix64 draws; isotropic, then normalized.
  for (Eigen::Index i = 0; i < dimension; i += 2) {
    double u1 = uniform01(state);
    double u2 = uniform01(state);
    if (u1 < 1e-300) u1 = 1e-300;
    const double r = std::sqrt(-2.0 * std::log(u1));
    v[i] = r * std::cos(2.0 * M_PI * u2);
    if (i + 1 < dimension) v[i + 1] = r * std::sin(2.0 * M_PI * u2);
  }
  const double norm = v.norm();
  if (norm > 0.0) v /= norm;
  else v[0] = 1.0;
  return v;
}

EmbeddingStore::EmbeddingStore(Eigen::Index dimension, OovPolicy oov)
    : dimension_(dimension), oov_(oov) {
  if (dimension < 1) throw ValidationError("embedding dimension must be positive");
}

void EmbeddingStore::insert(const std::string& token, Eigen::VectorXd vector) {
  if (vector.size() != dimension_)
    throw ValidationError("vector for '" + token + "' has dimension " +
                          std::to_string(vector.size()) + ", store expects " +
                          std::to_string(dimension_));
  vectors_[token] = std::move(vector);
}

std::optional<Eigen::VectorXd> EmbeddingStore::lookup(const std::string& token) const {
  if (auto it = vectors_.find(token); it != vectors_.end()) return it->second;
  if (oov_.kind == OovPolicy::Kind::HashFallback)
    return hash_fallback_vector(token, oov_.seed, dimension_);
  return std::nullopt;
}

std::string EmbeddingStore::description() const {
  std::string d = "dim=" + std::to_string(dimension_) + ",vocab=" + std::to_string(size());
  if (oov_.kind == OovPolicy::Kind::HashFallback)
    d += ",oov=hash(seed=" + std::to_string(oov_.seed) + ")";
  else
    d += ",oov=skip";
  return d;
}

EmbeddingStore make_hash_store(Eigen::Index dimension, std::uint64_t seed) {
  return EmbeddingStore(dimension, OovPolicy::hash_fallback(seed));
}

EmbeddingStore parse_embeddings(const std::string& file_text, OovPolicy oov) {
  std::istringstream in(file_text);
  std::string line;
  std::size_t line_no = 0;
  Eigen::Index dim = -1;
  std::vector<std::pair<std::string, Eigen::VectorXd>> rows;
  bool first_content_line = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<std::string> fields;
    std::string f;
    while (ls >> f) fields.push_back(f);

    if (first_content_line && fields.size() == 2) {
      long count = 0, header_dim = 0;
      if (parse_positive_int(fields[0], count) && parse_positive_int(fields[1], header_dim)) {
        dim = static_cast<Eigen::Index>(header_dim);
        first_content_line = false;
        continue;  // `<count> <dim>` header
      }
    }
    first_content_line = false;

    if (fields.size() < 2)
      throw FormatError("embedding line needs a token and at least one value", line_no);
    const Eigen::Index row_dim = static_cast<Eigen::Index>(fields.size() - 1);
    if (dim < 0) dim = row_dim;
    if (row_dim != dim)
      throw FormatError("expected " + std::to_string(dim) + " values, got " +
                            std::to_string(row_dim),
                        line_no);
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const std::string& val = fields[static_cast<std::size_t>(i) + 1];
      std::size_t consumed = 0;
      double x = 0.0;
      try {
        x = std::stod(val, &consumed);
      } catch (const std::exception&) {
        throw FormatError("bad float '" + val + "'", line_no);
      }
      if (consumed != val.size()) throw FormatError("bad float '" + val + "'", line_no);
      v[i] = x;
    }
    rows.emplace_back(fields[0], std::move(v));
  }
  if (dim < 0) throw FormatError("embedding file has no vectors");
  EmbeddingStore store(dim, oov);
  for (auto& [token, vec] : rows) store.insert(token, std::move(vec));
  return store;
}

EmbeddingStore load_embeddings(const std::string& path, OovPolicy oov) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open embedding file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_embeddings(buf.str(), oov);
}

}  // namespace amrst
