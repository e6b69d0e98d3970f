#ifndef AMRST_WMD_HPP
#define AMRST_WMD_HPP

#include <string>
#include <vector>

#include "amrst/amr.hpp"
#include "amrst/embeddings.hpp"
#include "amrst/extraction.hpp"
#include "amrst/transport.hpp"

namespace amrst {

// Word Mover's Distance: optimal transport cost between the nBOW
// distributions of the two token lists under Euclidean ground distance.
// Throws EmptyExtractionError when either side is empty after OOV handling.
double wmd(const std::vector<std::string>& tokens_a, const std::vector<std::string>& tokens_b,
           const EmbeddingStore& store);

// As wmd, but also returns the plan.
struct WmdResult {
  double distance = 0.0;
  NbowDistribution supply, demand;
  TransportPlan plan;
};
WmdResult wmd_detailed(const std::vector<std::string>& tokens_a,
                       const std::vector<std::string>& tokens_b, const EmbeddingStore& store);

// Text-AMR content preservation: wmd between the sentence content extraction
// and the graph content extraction.
double wmd_overall(const std::string& sentence, const AmrGraph& graph, const EmbeddingStore& store,
                   const ExtractionConfig& cfg);

// Verb-only variant: sentence verbs via the tagger vs PropBank frames.
double wmd_verb_overall(const std::string& sentence, const AmrGraph& graph,
                        const EmbeddingStore& store, const PosTagger& tagger,
                        const ExtractionConfig& cfg);

}  // namespace amrst

#endif  // AMRST_WMD_HPP
