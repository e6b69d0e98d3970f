#ifndef AMRST_STYLE_METRICS_HPP
#define AMRST_STYLE_METRICS_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "amrst/amr.hpp"
#include "amrst/embeddings.hpp"
#include "amrst/extraction.hpp"

namespace amrst {

// One (source, target) style-transfer row.
struct EvalInstance {
  std::string source;
  std::string target;
  std::string source_style;
  std::string target_style;
  std::optional<AmrGraph> intermediate_amr;
};

struct StyleDecision {
  std::string label;
  double confidence = 0.0;  // in [0, 1]
};

// Style classifier seam; the trained model sits behind this interface.
// Implementations must be deterministic.
class StyleScorer {
 public:
  virtual ~StyleScorer() = default;
  virtual StyleDecision classify(const std::string& sentence) const = 0;
  virtual std::vector<std::string> labels() const = 0;
};

// Marker-count scorer: classify = argmax over styles of marker hits,
// confidence = top count / total hits, ties broken by style order (sorted).
class LexiconStyleScorer : public StyleScorer {
 public:
  using Lexicons = std::map<std::string, std::unordered_set<std::string>>;
  explicit LexiconStyleScorer(Lexicons lexicons);

  StyleDecision classify(const std::string& sentence) const override;
  std::vector<std::string> labels() const override;

  // JSON file: {"style": ["marker", ...], ...}
  static LexiconStyleScorer from_file(const std::string& path);
  static LexiconStyleScorer from_json_text(const std::string& text);

 private:
  Lexicons lexicons_;
};

using SimilarityFn = std::function<double(const std::string&, const std::string&)>;

// Cosine of mean content-token embeddings, mapped from [-1,1] to [0,1].
// Symmetric; 1.0 for identical content-token multisets. Throws
// EmptyExtractionError when either side has no content tokens.
double embedding_sim(const std::string& source, const std::string& target,
                     const EmbeddingStore& store, const ExtractionConfig& cfg);
SimilarityFn make_embedding_sim(const EmbeddingStore& store, const ExtractionConfig& cfg);

// Fraction of instances whose target classifies as the target (accuracy) or
// source (retention) style. Throws on empty input or a label outside the
// scorer's set.
double style_accuracy(const std::vector<EvalInstance>& instances, const StyleScorer& scorer);
double style_retention(const std::vector<EvalInstance>& instances, const StyleScorer& scorer);

// Mean over ALL instances of sim(source, target) * [classified correctly].
double weighted_style_accuracy(const std::vector<EvalInstance>& instances,
                               const StyleScorer& scorer, const SimilarityFn& sim_fn);

struct MaskConfig {
  std::string mask_token = "<MASK>";
  bool mask_amr_structure = false;  // additionally mask role/pointer tokens
};

// Replaces entity/number/common-noun tokens with the mask token; when
// mask_amr_structure is on, role tokens and pointer tokens are masked too.
// Sequence length and unmasked tokens are preserved.
std::vector<std::string> mask_for_style_probe(const std::vector<std::string>& tokens,
                                              const PosTagger& tagger, const MaskConfig& cfg);

// Table-shaped aggregate for one transfer direction.
struct DirectionReport {
  std::string source_style;
  std::string target_style;
  double self_bleu = 0.0;
  double wmd = 0.0;
  double sim = 0.0;
  double style_retention = 0.0;
  double style_transfer = 0.0;
  double weighted_style_accuracy = 0.0;
  std::size_t n = 0;
  std::string sim_backend;  // which similarity produced the sim/WSA columns
};

// Aggregates one direction (all instances must share it): mean self-BLEU,
// mean content-token WMD, mean sim, retention, transfer, WSA.
DirectionReport direction_report(const std::vector<EvalInstance>& instances,
                                 const StyleScorer& scorer, const SimilarityFn& sim_fn,
                                 const EmbeddingStore& store, const ExtractionConfig& cfg,
                                 const std::string& sim_backend_name);

// --- I/O ---

// JSONL: {"source":..., "target":..., "source_style":..., "target_style":...,
// "amr": optional penman string}. Throws FormatError with the line number.
std::vector<EvalInstance> read_instances_jsonl(const std::string& text);
std::vector<EvalInstance> load_instances_jsonl(const std::string& path);

// One row per direction, fixed column order
// (S-BLEU, WMD, SIM, S.R., S.T., WSAcc), 6 fraction digits.
std::string reports_to_tsv(const std::vector<DirectionReport>& reports);
std::string reports_to_json(const std::vector<DirectionReport>& reports);

// Fixed-point decimal with 6 fraction digits, locale-independent.
std::string format_fixed(double value, int digits = 6);

}  // namespace amrst

#endif  // AMRST_STYLE_METRICS_HPP
