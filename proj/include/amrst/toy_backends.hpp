#ifndef AMRST_TOY_BACKENDS_HPP
#define AMRST_TOY_BACKENDS_HPP

#include <json.hpp>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "amrst/pipeline.hpp"

namespace amrst {

// style -> (generic lemma -> style surface form)
using ToyLexicons = std::map<std::string, std::map<std::string, std::string>>;

// Deterministic rule-based backends so the iterative loop runs without any
// neural model. fine_tune extends the lexicons from observed pairs; every
// operation is a pure function of the lexicons and the input.
class ToyEncoderBackend : public EncoderBackend {
 public:
  explicit ToyEncoderBackend(std::map<std::string, std::string> normalizations = {});

  // Root frame from the verb-position token (`lemma-01`), subject via :ARG0,
  // first object via :ARG1, further content tokens via :mod.
  AmrGraph to_amr(const std::string& sentence) override;
  void fine_tune(const std::vector<std::pair<std::string, AmrGraph>>& pairs) override;

  const std::map<std::string, std::string>& normalizations() const { return normalizations_; }
  std::size_t fine_tune_calls() const { return fine_tune_calls_; }

 private:
  std::map<std::string, std::string> normalizations_;  // surface -> generic lemma
  std::size_t fine_tune_calls_ = 0;
};

class ToyDecoderBackend : public DecoderBackend {
 public:
  ToyDecoderBackend(std::string style, std::map<std::string, std::string> lexicon);

  // DFS concept readout with lexicon substitution; empty lexicon is an
  // identity readout.
  std::string to_text(const AmrGraph& graph) override;
  void fine_tune(const std::vector<std::pair<std::string, AmrGraph>>& pairs) override;

  const std::string& style() const { return style_; }
  const std::map<std::string, std::string>& lexicon() const { return lexicon_; }
  // Styles of all sentences ever passed to fine_tune, for provenance audits.
  const std::vector<std::vector<std::string>>& training_history() const { return history_; }

 private:
  std::string style_;
  std::map<std::string, std::string> lexicon_;  // generic lemma -> style surface
  std::vector<std::vector<std::string>> history_;
};

class ToyStylerBackend : public StylerBackend {
 public:
  explicit ToyStylerBackend(ToyLexicons lexicons);

  // Token-level lexicon substitution on raw text.
  std::string stylize(const std::string& sentence, const std::string& style) override;

 private:
  ToyLexicons lexicons_;
};

struct ToyBackends {
  std::shared_ptr<ToyEncoderBackend> encoder;
  std::map<std::string, std::shared_ptr<ToyDecoderBackend>> decoders;
  std::shared_ptr<ToyStylerBackend> styler;

  Backends as_backends() const;

  // Learned-state snapshot for pipeline resume.
  nlohmann::ordered_json state_to_json() const;
  void state_from_json(const nlohmann::json& j);
};

// One decoder per lexicon style. The seed is kept for interface parity; all
// toy rules are deterministic without it. Throws ValidationError on an empty
// lexicon map.
ToyBackends make_toy_backends(const ToyLexicons& lexicons, std::uint64_t seed = 0);

}  // namespace amrst

#endif  // AMRST_TOY_BACKENDS_HPP
