#ifndef AMRST_SMATCH_HPP
#define AMRST_SMATCH_HPP

#include <cstdint>
#include <vector>

#include "amrst/amr.hpp"

namespace amrst {

// Partial injective map vars(g1) -> vars(g2).
struct VariableMapping {
  std::vector<std::pair<std::string, std::string>> pairs;

  bool operator==(const VariableMapping&) const = default;
};

struct SmatchScore {
  std::size_t matches = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
  VariableMapping mapping;
};

// Matched triples of (g1, g2) under mapping m. Triple sets are built with
// include_top = true; each triple of g1 matches at most one triple of g2.
// Throws ValidationError when m is not a valid injective mapping.
std::size_t triple_match_count(const AmrGraph& g1, const AmrGraph& g2, const VariableMapping& m);

// Globally optimal score by exhaustive enumeration of injective mappings.
// Requires min(|vars(g1)|, |vars(g2)|) <= 8; throws ValidationError beyond
// that bound.
SmatchScore smatch_exact(const AmrGraph& g1, const AmrGraph& g2);

// Hill climbing: one concept-greedy start plus seeded-random restarts, each
// improved by the best single-pair move/swap until a local optimum.
// Deterministic given the seed; never exceeds the exact score.
SmatchScore smatch_hill_climb(const AmrGraph& g1, const AmrGraph& g2, std::size_t restarts = 4,
                              std::uint64_t seed = 0);

struct ScoreDistribution {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

struct CorpusSmatchResult {
  std::vector<SmatchScore> scores;
  ScoreDistribution f_distribution;
};

// Per-pair hill-climbing scores plus quartiles of F (linear interpolation
// between closest ranks). Throws ValidationError on an empty list.
CorpusSmatchResult smatch_corpus(const std::vector<std::pair<AmrGraph, AmrGraph>>& pairs,
                                 std::size_t restarts = 4, std::uint64_t seed = 0);

// Quartiles over arbitrary values (used by the CLI summary as well).
ScoreDistribution score_distribution(std::vector<double> values);

}  // namespace amrst

#endif  // AMRST_SMATCH_HPP
