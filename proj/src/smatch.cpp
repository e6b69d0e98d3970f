#include "amrst/smatch.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "amrst/errors.hpp"

namespace amrst {

namespace {

using TripleCount = std::unordered_map<std::string, std::size_t>;

std::string triple_key(const AmrTriple& t, const std::string& mapped_subject,
                       const std::string& mapped_object) {
  std::string key;
  switch (t.kind) {
    case AmrTriple::Kind::Instance:
      key = "I|";
      break;
    case AmrTriple::Kind::Relation:
      key = "R|";
      break;
    case AmrTriple::Kind::Attribute:
      key = "A|";
      break;
    case AmrTriple::Kind::Top:
      key = "T|";
      break;
  }
  key += mapped_subject;
  key += '|';
  key += t.role;
  key += '|';
  key += mapped_object;
  return key;
}

TripleCount count_triples_identity(const std::vector<AmrTriple>& triples) {
  TripleCount counts;
  for (const auto& t : triples) ++counts[triple_key(t, t.subject, t.object)];
  return counts;
}

// Count of g1 triples that find a distinct partner in g2 under the variable
// translation `map1to2` (vars absent from the map cannot match).
std::size_t match_count(const std::vector<AmrTriple>& triples1, const TripleCount& counts2,
                        const std::unordered_map<std::string, std::string>& map1to2) {
  TripleCount used;
  std::size_t matches = 0;
  for (const auto& t : triples1) {
    auto subj = map1to2.find(t.subject);
    if (subj == map1to2.end()) continue;
    std::string object = t.object;
    if (t.kind == AmrTriple::Kind::Relation) {
      auto obj = map1to2.find(t.object);
      if (obj == map1to2.end()) continue;
      object = obj->second;
    }
    const std::string key = triple_key(t, subj->second, object);
    auto avail = counts2.find(key);
    if (avail == counts2.end()) continue;
    if (used[key] < avail->second) {
      ++used[key];
      ++matches;
    }
  }
  return matches;
}

SmatchScore make_score(std::size_t matches, std::size_t n_triples1, std::size_t n_triples2,
                       VariableMapping mapping) {
  SmatchScore s;
  s.matches = matches;
  s.precision = n_triples1 ? static_cast<double>(matches) / static_cast<double>(n_triples1) : 0.0;
  s.recall = n_triples2 ? static_cast<double>(matches) / static_cast<double>(n_triples2) : 0.0;
  s.f = (s.precision + s.recall) > 0.0
            ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
            : 0.0;
  s.mapping = std::move(mapping);
  return s;
}

// Search state over total injective assignments from the smaller variable
// set to the larger one. `swapped` records whether sides were exchanged so
// the exposed mapping always runs g1 -> g2.
struct MatchProblem {
  std::vector<std::string> small_vars, large_vars;
  std::vector<AmrTriple> small_triples;
  TripleCount large_counts;
  std::size_t n_triples1 = 0, n_triples2 = 0;
  bool swapped = false;

  MatchProblem(const AmrGraph& g1, const AmrGraph& g2) {
    const AmrGraph* a = &g1;
    const AmrGraph* b = &g2;
    swapped = g1.variable_count() > g2.variable_count();
    if (swapped) std::swap(a, b);
    for (const auto& [v, c] : a->instances) small_vars.push_back(v);
    for (const auto& [v, c] : b->instances) large_vars.push_back(v);
    small_triples = extract_triples(*a, /*include_top=*/true);
    large_counts = count_triples_identity(extract_triples(*b, true));
    n_triples1 = extract_triples(g1, true).size();
    n_triples2 = extract_triples(g2, true).size();
  }

  std::size_t evaluate(const std::vector<int>& assign) const {
    std::unordered_map<std::string, std::string> map;
    map.reserve(assign.size());
    for (std::size_t i = 0; i < assign.size(); ++i)
      if (assign[i] >= 0) map.emplace(small_vars[i], large_vars[assign[i]]);
    return match_count(small_triples, large_counts, map);
  }

  SmatchScore to_score(std::size_t matches, const std::vector<int>& assign) const {
    VariableMapping m;
    for (std::size_t i = 0; i < assign.size(); ++i) {
      if (assign[i] < 0) continue;
      if (swapped)
        m.pairs.emplace_back(large_vars[assign[i]], small_vars[i]);
      else
        m.pairs.emplace_back(small_vars[i], large_vars[assign[i]]);
    }
    std::sort(m.pairs.begin(), m.pairs.end());
    return make_score(matches, n_triples1, n_triples2, std::move(m));
  }

  // Concept-greedy start: match equal concepts first, fill the rest in order.
  std::vector<int> greedy_start(const AmrGraph& g1, const AmrGraph& g2) const {
    const AmrGraph& small = swapped ? g2 : g1;
    const AmrGraph& large = swapped ? g1 : g2;
    std::vector<int> assign(small_vars.size(), -1);
    std::vector<bool> used(large_vars.size(), false);
    for (std::size_t i = 0; i < small_vars.size(); ++i) {
      const std::string& concept_label = small.concept_of(small_vars[i]);
      for (std::size_t j = 0; j < large_vars.size(); ++j) {
        if (!used[j] && large.concept_of(large_vars[j]) == concept_label) {
          assign[i] = static_cast<int>(j);
          used[j] = true;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < assign.size(); ++i) {
      if (assign[i] >= 0) continue;
      for (std::size_t j = 0; j < large_vars.size(); ++j)
        if (!used[j]) {
          assign[i] = static_cast<int>(j);
          used[j] = true;
          break;
        }
    }
    return assign;
  }
};

// Portable Fisher-Yates (std::shuffle's draw sequence is not specified).
template <typename T>
void shuffle_deterministic(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[rng() % i]);
}

// Best-improvement local search over single-pair moves and swaps;
// first-found wins ties. Returns the local-optimum match count.
std::size_t hill_climb_from(const MatchProblem& prob, std::vector<int>& assign) {
  std::size_t current = prob.evaluate(assign);
  const std::size_t n_small = prob.small_vars.size();
  const std::size_t n_large = prob.large_vars.size();
  std::vector<int> owner(n_large, -1);
  for (std::size_t i = 0; i < n_small; ++i)
    if (assign[i] >= 0) owner[assign[i]] = static_cast<int>(i);

  while (true) {
    std::size_t best = current;
    int best_i = -1, best_j = -1;
    for (std::size_t i = 0; i < n_small; ++i) {
      for (std::size_t j = 0; j < n_large; ++j) {
        if (assign[i] == static_cast<int>(j)) continue;
        const int prev_i = assign[i];
        const int other = owner[j];
        assign[i] = static_cast<int>(j);
        if (other >= 0) assign[other] = prev_i;
        const std::size_t cand = prob.evaluate(assign);
        assign[i] = prev_i;
        if (other >= 0) assign[other] = static_cast<int>(j);
        if (cand > best) {
          best = cand;
          best_i = static_cast<int>(i);
          best_j = static_cast<int>(j);
        }
      }
    }
    if (best_i < 0) break;
    const int prev_i = assign[best_i];
    const int other = owner[best_j];
    assign[best_i] = best_j;
    owner[best_j] = best_i;
    if (other >= 0) {
      assign[other] = prev_i;
      if (prev_i >= 0) owner[prev_i] = other;
    } else if (prev_i >= 0) {
      owner[prev_i] = -1;
    }
    current = best;
  }
  return current;
}

}  // namespace

std::size_t triple_match_count(const AmrGraph& g1, const AmrGraph& g2, const VariableMapping& m) {
  std::unordered_map<std::string, std::string> map;
  std::unordered_set<std::string> range;
  for (const auto& [a, b] : m.pairs) {
    if (!g1.has_variable(a))
      throw ValidationError("mapping domain '" + a + "' is not a variable of g1");
    if (!g2.has_variable(b))
      throw ValidationError("mapping range '" + b + "' is not a variable of g2");
    if (!map.emplace(a, b).second)
      throw ValidationError("mapping maps '" + a + "' twice");
    if (!range.insert(b).second) throw ValidationError("mapping is not injective at '" + b + "'");
  }
  return match_count(extract_triples(g1, true), count_triples_identity(extract_triples(g2, true)),
                     map);
}

SmatchScore smatch_exact(const AmrGraph& g1, const AmrGraph& g2) {
  constexpr std::size_t kMaxVars = 8;
  if (std::min(g1.variable_count(), g2.variable_count()) > kMaxVars)
    throw ValidationError("smatch_exact size bound exceeded (min side must have <= " +
                          std::to_string(kMaxVars) + " variables)");
  MatchProblem prob(g1, g2);
  const std::size_t n_small = prob.small_vars.size();
  const std::size_t n_large = prob.large_vars.size();

  std::vector<int> assign(n_small, -1);
  std::vector<bool> used(n_large, false);
  std::vector<int> best_assign = assign;
  std::size_t best = prob.evaluate(assign);  // empty mapping baseline

  auto search = [&](auto&& self, std::size_t i) -> void {
    if (i == n_small) {
      const std::size_t cand = prob.evaluate(assign);
      if (cand > best) {
        best = cand;
        best_assign = assign;
      }
      return;
    }
    for (std::size_t j = 0; j < n_large; ++j) {
      if (used[j]) continue;
      used[j] = true;
      assign[i] = static_cast<int>(j);
      self(self, i + 1);
      used[j] = false;
      assign[i] = -1;
    }
  };
  if (n_small > 0 && n_large > 0) search(search, 0);
  return prob.to_score(best, best_assign);
}

SmatchScore smatch_hill_climb(const AmrGraph& g1, const AmrGraph& g2, std::size_t restarts,
                              std::uint64_t seed) {
  if (restarts < 1) throw ValidationError("smatch_hill_climb requires restarts >= 1");
  MatchProblem prob(g1, g2);
  const std::size_t n_small = prob.small_vars.size();
  const std::size_t n_large = prob.large_vars.size();
  if (n_small == 0 || n_large == 0)
    return prob.to_score(0, std::vector<int>(n_small, -1));

  std::size_t best = 0;
  std::vector<int> best_assign(n_small, -1);
  bool have_best = false;
  for (std::size_t r = 0; r < restarts; ++r) {
    std::vector<int> assign;
    if (r == 0) {
      assign = prob.greedy_start(g1, g2);
    } else {
      std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + r);
      std::vector<int> perm(n_large);
      for (std::size_t j = 0; j < n_large; ++j) perm[j] = static_cast<int>(j);
      shuffle_deterministic(perm, rng);
      assign.assign(perm.begin(), perm.begin() + static_cast<long>(n_small));
    }
    const std::size_t local = hill_climb_from(prob, assign);
    if (!have_best || local > best) {
      best = local;
      best_assign = assign;
      have_best = true;
    }
  }
  return prob.to_score(best, best_assign);
}

ScoreDistribution score_distribution(std::vector<double> values) {
  if (values.empty()) throw ValidationError("cannot summarize an empty score list");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
  };
  return {values.front(), quantile(0.25), quantile(0.5), quantile(0.75), values.back()};
}

CorpusSmatchResult smatch_corpus(const std::vector<std::pair<AmrGraph, AmrGraph>>& pairs,
                                 std::size_t restarts, std::uint64_t seed) {
  if (pairs.empty()) throw ValidationError("smatch_corpus requires a non-empty pair list");
  CorpusSmatchResult result;
  result.scores.reserve(pairs.size());
  std::vector<double> fs;
  fs.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    result.scores.push_back(smatch_hill_climb(a, b, restarts, seed));
    fs.push_back(result.scores.back().f);
  }
  result.f_distribution = score_distribution(std::move(fs));
  return result;
}

}  // namespace amrst
