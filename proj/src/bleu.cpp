#include "amrst/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "amrst/extraction.hpp"

namespace amrst {

namespace {

constexpr double kEpsilon = 1e-9;
constexpr int kMaxOrder = 4;

std::map<std::vector<std::string>, std::size_t> ngram_counts(
    const std::vector<std::string>& tokens, int order) {
  std::map<std::vector<std::string>, std::size_t> counts;
  if (static_cast<int>(tokens.size()) < order) return counts;
  for (std::size_t i = 0; i + static_cast<std::size_t>(order) <= tokens.size(); ++i)
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<long>(i),
                                      tokens.begin() + static_cast<long>(i) + order)];
  return counts;
}

}  // namespace

double self_bleu(const std::vector<std::string>& source_tokens,
                 const std::vector<std::string>& target_tokens) {
  if (target_tokens.empty()) return 0.0;
  double log_sum = 0.0;
  for (int order = 1; order <= kMaxOrder; ++order) {
    const auto hyp = ngram_counts(target_tokens, order);
    if (hyp.empty()) continue;  // no n-grams of this order in the hypothesis
    const auto ref = ngram_counts(source_tokens, order);
    std::size_t clipped = 0, total = 0;
    for (const auto& [gram, count] : hyp) {
      total += count;
      auto it = ref.find(gram);
      if (it != ref.end()) clipped += std::min(count, it->second);
    }
    double p = total ? static_cast<double>(clipped) / static_cast<double>(total) : 0.0;
    if (p <= 0.0) p = kEpsilon;
    log_sum += std::log(p) / kMaxOrder;
  }
  const double c = static_cast<double>(target_tokens.size());
  const double r = static_cast<double>(source_tokens.size());
  const double bp = c < r ? std::exp(1.0 - r / c) : 1.0;
  return bp * std::exp(log_sum);
}

double self_bleu(const std::string& source, const std::string& target) {
  return self_bleu(tokenize(source), tokenize(target));
}

}  // namespace amrst
