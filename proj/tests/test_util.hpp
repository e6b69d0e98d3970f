#ifndef AMRST_TEST_UTIL_HPP
#define AMRST_TEST_UTIL_HPP

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "amrst/amr.hpp"

namespace testutil {

// Portable seeded generator (splitmix64) so fixtures never depend on the
// standard library's distribution implementations.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline const std::vector<std::string>& concept_pool() {
  static const std::vector<std::string> pool = {
      "eat-01", "see-01",  "say-01", "go-02",  "want-01", "dog",  "cat",   "crumb",
      "child",  "table",   "person", "city",   "name",    "and",  "still", "under",
      "book",   "give-01", "run-02", "small",  "big",     "tree", "house", "water"};
  return pool;
}

inline const std::vector<std::string>& role_pool() {
  static const std::vector<std::string> pool = {":ARG0", ":ARG1", ":ARG2", ":mod",
                                                ":op1",  ":op2",  ":time", ":location"};
  return pool;
}

// Random rooted graph: a spanning tree over `n_vars` variables plus optional
// re-entrant and attribute edges. Always satisfies the graph invariants.
inline amrst::AmrGraph random_graph(Rng& rng, std::size_t max_vars) {
  const std::size_t n = 1 + rng.below(max_vars);
  amrst::AmrGraph g;
  for (std::size_t i = 0; i < n; ++i) {
    g.instances.emplace_back("g" + std::to_string(i),
                             concept_pool()[rng.below(concept_pool().size())]);
  }
  g.root = "g0";
  for (std::size_t i = 1; i < n; ++i) {
    const std::string parent = "g" + std::to_string(rng.below(i));
    g.edges.push_back({parent, role_pool()[rng.below(role_pool().size())],
                       amrst::EdgeTarget::variable("g" + std::to_string(i))});
  }
  // Re-entrancies.
  if (n >= 2 && rng.uniform() < 0.4) {
    const std::string from = "g" + std::to_string(rng.below(n));
    const std::string to = "g" + std::to_string(rng.below(n));
    if (from != to)
      g.edges.push_back({from, role_pool()[rng.below(role_pool().size())],
                         amrst::EdgeTarget::variable(to)});
  }
  // Attributes and literals.
  if (rng.uniform() < 0.5) {
    const std::string from = "g" + std::to_string(rng.below(n));
    if (rng.uniform() < 0.5)
      g.edges.push_back({from, ":polarity", amrst::EdgeTarget::constant("-")});
    else
      g.edges.push_back({from, ":name", amrst::EdgeTarget::literal("Anwar")});
  }
  if (rng.uniform() < 0.3) {
    const std::string from = "g" + std::to_string(rng.below(n));
    g.edges.push_back(
        {from, ":quant", amrst::EdgeTarget::constant(std::to_string(rng.below(100)))});
  }
  return g;
}

// Exact isomorphism up to variable renaming for graphs with identical
// structure and edge order: DFS linearization renames variables canonically.
inline bool isomorphic(const amrst::AmrGraph& a, const amrst::AmrGraph& b) {
  return amrst::linearize_dfs(a).joined() == amrst::linearize_dfs(b).joined();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string data_path(const std::string& name) {
  return std::string(AMRST_TEST_DATA_DIR) + "/" + name;
}

// Verbatim graph texts quoted from published AMR examples; used as
// round-trip fixtures.
inline const std::vector<std::string>& fixture_amrs() {
  static const std::vector<std::string> texts = {
      // zero / crumb chains
      "(z / zero)",
      "(c / crumb :poss (c2 / child))",
      "(e / eat-01 :ARG0 (d / dog :location (u / under :op1 (t / table))) "
      ":ARG1 (c / crumb :poss (c2 / child)) :mod (s / still))",
      // make/feel/exist with a re-entrant pronoun
      "(a / and :op1 (m / make-02 :ARG1 (f / feel-01 :ARG0 (w / we) :ARG1 (e / exist-01 "
      ":ARG1 w))) :op2 (s / shew-01 :ARG0 w))",
      "(h / have-purpose-91 :ARG2 (a / and :op1 (m / make-02 :ARG1 (f / feel-01 :ARG0 (w / we) "
      ":ARG1 (e / exist-01 :ARG1 w))) :op2 (s / show-01 :ARG0 w :ARG1 e)))",
      "(m / multi-sentence :snt1 (c / contrast-01 :ARG2 (t / trust-01 :polarity - "
      ":mode imperative :ARG0 (y / you) :ARG1 (t2 / this))) :snt2 (b / beware-01 "
      ":mode imperative :ARG0 (y2 / youth :ARG1-of (e / easy-05 :ARG2-of (h / have-degree-91 "
      ":ARG1 y2 :ARG3 (t3 / too))))))",
      "(c / contrast-01 :ARG2 (a / and :op1 (t / trust-02 :polarity - :mode imperative "
      ":ARG0 (y / you :mod (y2 / youth)) :ARG1 (t2 / this)) :op2 (h / have-degree-91 "
      ":ARG1 t2 :ARG2 (e / easy-05 :ARG1 t2) :ARG3 (t3 / too))))",
      "(g / go-02 :mode imperative :ARG0 (y / you) :manner (p / peace) :time (b / before "
      ":op1 (p2 / person :name (n / name :op1 \"Lord\"))))",
      "(r / require-01 :ARG1 (t / thing :ARG0-of (c / convert-01 :mod (c2 / catalytic))) "
      ":location (a / and :op1 (s / state :name (n / name :op1 \"California\")) "
      ":op2 (s2 / state :name (n2 / name :op1 \"Oregon\")) :op3 (s3 / state "
      ":name (n3 / name :op1 \"Washington\"))))",
      "(c / crown-01 :ARG0 (ii / it) :ARG1 (t / tower :mod (l / lofty)))",
      "(h / have-org-role-91 :ARG0 (g / goat :ARG1-of (r / rough-04)) :ARG1 (c / country "
      ":name (n / name :op1 \"Greece\")) :ARG2 (k / king))",
      "(w / wither-01 :ARG1 (t / they) :location (a / around :op1 (g / grave :poss (ii / i))))",
      "(m / misery :poss (ii / i) :domain (f / fortune :poss ii))",
  };
  return texts;
}

}  // namespace testutil

#endif  // AMRST_TEST_UTIL_HPP
