#ifndef AMRST_BLEU_HPP
#define AMRST_BLEU_HPP

#include <string>
#include <vector>

namespace amrst {

// BLEU-4 of `target` against the single reference `source`: n-gram orders
// 1-4 with uniform weights and brevity penalty. A modified precision of zero
// is smoothed to 1e-9; orders with no target n-grams (short sentences) are
// skipped so that self_bleu(s, s) = 1 for any non-empty s. Empty target
// scores 0.
double self_bleu(const std::string& source, const std::string& target);
double self_bleu(const std::vector<std::string>& source_tokens,
                 const std::vector<std::string>& target_tokens);

}  // namespace amrst

#endif  // AMRST_BLEU_HPP
