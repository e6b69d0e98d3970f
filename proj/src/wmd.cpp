#include "amrst/wmd.hpp"

#include "amrst/errors.hpp"

namespace amrst {

namespace {

// Applies the OOV policy and returns the surviving tokens.
std::vector<std::string> resolve_tokens(const std::vector<std::string>& tokens,
                                        const EmbeddingStore& store) {
  std::vector<std::string> kept;
  kept.reserve(tokens.size());
  for (const auto& t : tokens)
    if (store.lookup(t)) kept.push_back(t);
  return kept;
}

}  // namespace

WmdResult wmd_detailed(const std::vector<std::string>& tokens_a,
                       const std::vector<std::string>& tokens_b, const EmbeddingStore& store) {
  const auto a = resolve_tokens(tokens_a, store);
  const auto b = resolve_tokens(tokens_b, store);
  if (a.empty() || b.empty())
    throw EmptyExtractionError("wmd inputs are empty after OOV handling (" +
                               std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                               " tokens)");
  WmdResult r;
  r.supply = make_nbow(a);
  r.demand = make_nbow(b);
  const Eigen::Index m = static_cast<Eigen::Index>(r.supply.size());
  const Eigen::Index n = static_cast<Eigen::Index>(r.demand.size());
  std::vector<Eigen::VectorXd> va(static_cast<std::size_t>(m)), vb(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < m; ++i)
    va[static_cast<std::size_t>(i)] = *store.lookup(r.supply.tokens[static_cast<std::size_t>(i)]);
  for (Eigen::Index j = 0; j < n; ++j)
    vb[static_cast<std::size_t>(j)] = *store.lookup(r.demand.tokens[static_cast<std::size_t>(j)]);
  Eigen::MatrixXd costs(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      costs(i, j) = (va[static_cast<std::size_t>(i)] - vb[static_cast<std::size_t>(j)]).norm();
  r.plan = solve_transport(r.supply, r.demand, costs);
  r.distance = r.plan.cost;
  return r;
}

double wmd(const std::vector<std::string>& tokens_a, const std::vector<std::string>& tokens_b,
           const EmbeddingStore& store) {
  return wmd_detailed(tokens_a, tokens_b, store).distance;
}

double wmd_overall(const std::string& sentence, const AmrGraph& graph, const EmbeddingStore& store,
                   const ExtractionConfig& cfg) {
  return wmd(extract_sentence_content(sentence, cfg), extract_amr_content(graph, cfg), store);
}

double wmd_verb_overall(const std::string& sentence, const AmrGraph& graph,
                        const EmbeddingStore& store, const PosTagger& tagger,
                        const ExtractionConfig& cfg) {
  return wmd(extract_sentence_verbs(sentence, tagger), extract_amr_verbs(graph, cfg), store);
}

}  // namespace amrst
