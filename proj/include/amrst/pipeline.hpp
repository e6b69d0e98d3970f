#ifndef AMRST_PIPELINE_HPP
#define AMRST_PIPELINE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "amrst/amr.hpp"
#include "amrst/embeddings.hpp"
#include "amrst/extraction.hpp"
#include "amrst/style_metrics.hpp"

namespace amrst {

// --- Corpora ---

// Sentence/graph pairs used to train the text-to-graph encoder.
struct GoldAmrCorpus {
  std::vector<std::pair<std::string, AmrGraph>> pairs;
};

struct MonoStyleCorpus {
  std::string style;
  std::vector<std::string> sentences;
};

// Stylized sentence mapped to the gold graph of its generic original;
// retained only when similarity >= the configured threshold.
struct SyntheticPair {
  std::string sentence;
  AmrGraph graph;
  std::string style;
  double similarity = 0.0;
};

struct SyntheticCorpus {
  std::vector<SyntheticPair> pairs;
};

// (sentence, graph produced by the current encoder) pairs for one style.
struct DecoderTrainSet {
  std::string style;
  std::vector<std::pair<std::string, AmrGraph>> pairs;
};

// --- Backend seams ---

class EncoderBackend {
 public:
  virtual ~EncoderBackend() = default;
  virtual AmrGraph to_amr(const std::string& sentence) = 0;
  virtual void fine_tune(const std::vector<std::pair<std::string, AmrGraph>>& pairs) = 0;
};

class DecoderBackend {
 public:
  virtual ~DecoderBackend() = default;
  virtual std::string to_text(const AmrGraph& graph) = 0;
  virtual void fine_tune(const std::vector<std::pair<std::string, AmrGraph>>& pairs) = 0;
};

class StylerBackend {
 public:
  virtual ~StylerBackend() = default;
  virtual std::string stylize(const std::string& sentence, const std::string& style) = 0;
};

struct Backends {
  std::shared_ptr<EncoderBackend> encoder;
  std::map<std::string, std::shared_ptr<DecoderBackend>> decoders;  // per style
  std::shared_ptr<StylerBackend> styler;
};

// --- Configuration ---

struct PipelineConfig {
  std::vector<std::string> styles;
  double delta = 0.7;                // similarity threshold for synthetic pairs
  std::optional<double> wmd_filter;  // ceiling on wmd_overall when set (0.15 typical)
  std::size_t iterations = 2;
  std::uint64_t seed = 0;
  // Regenerated synthetic pairs are re-filtered with delta each iteration;
  // turn off to keep every regenerated pair regardless of similarity.
  bool refilter_each_iteration = true;
  // A corpus pass aborts once this fraction of items has failed.
  double abort_failure_fraction = 0.10;

  void validate() const;
};

// --- Results and bookkeeping ---

struct ItemFailure {
  std::size_t index = 0;
  std::string style;
  std::string message;
};

struct FilterStats {
  std::size_t input = 0;
  std::size_t kept = 0;
  std::size_t dropped_similarity = 0;
  std::size_t dropped_wmd = 0;
  std::size_t failed = 0;
  double mean_similarity = 0.0;  // over kept pairs
};

struct SyntheticBuildResult {
  std::map<std::string, std::vector<SyntheticPair>> per_style;
  std::map<std::string, FilterStats> stats;
  std::vector<ItemFailure> failures;

  SyntheticCorpus merged() const;
};

struct TrainsetBuildResult {
  DecoderTrainSet set;
  std::vector<ItemFailure> failures;
};

struct IterationReport {
  std::size_t index = 0;  // 1-based
  std::size_t encoder_trainset_size = 0;
  std::map<std::string, std::size_t> decoder_trainset_sizes;
  std::map<std::string, FilterStats> regen_stats;
  std::size_t synthetic_size = 0;
  double synthetic_mean_similarity = 0.0;

  nlohmann::ordered_json to_json() const;
};

struct PipelineResult {
  std::map<std::string, FilterStats> bootstrap_stats;
  std::vector<IterationReport> iterations;
  SyntheticCorpus final_synthetic;
  nlohmann::ordered_json log;  // bootstrap + per-iteration records
};

// --- Operations ---

// Stylize every gold sentence into every style and keep (stylized, gold
// graph) pairs passing the similarity filter (and the WMD ceiling when
// configured, which requires `store`). Per-item backend failures are
// recorded, not fatal, up to the abort fraction.
SyntheticBuildResult bootstrap_synthetic(const GoldAmrCorpus& gold, StylerBackend& styler,
                                         const SimilarityFn& sim_fn, const PipelineConfig& cfg,
                                         const EmbeddingStore* store = nullptr,
                                         const ExtractionConfig& xcfg =
                                             ExtractionConfig::defaults());

// Encode every sentence of the corpus with the current encoder.
TrainsetBuildResult build_decoder_trainset(const MonoStyleCorpus& corpus, EncoderBackend& encoder,
                                           double abort_failure_fraction = 0.10);

// Regenerate synthetic pairs from gold graphs through the per-style
// decoders; the delta filter is re-applied when cfg.refilter_each_iteration.
SyntheticBuildResult regenerate_synthetic(const GoldAmrCorpus& gold,
                                          const std::map<std::string,
                                                         std::shared_ptr<DecoderBackend>>& decoders,
                                          const SimilarityFn& sim_fn, const PipelineConfig& cfg);

// Mutable loop state. Backends are trained in place.
struct PipelineState {
  const GoldAmrCorpus* gold = nullptr;
  const std::map<std::string, MonoStyleCorpus>* mono = nullptr;
  Backends* backends = nullptr;
  SyntheticCorpus synthetic;
  std::size_t completed_iterations = 0;
};

// One loop body: X := dedup(S u synthetic); fine-tune the encoder on X; per
// style build the decoder trainset, fine-tune the decoder, regenerate the
// synthetic pairs; replace state.synthetic with the union. The state is only
// committed when the whole body succeeds.
IterationReport run_iteration(PipelineState& state, const PipelineConfig& cfg,
                              const SimilarityFn& sim_fn);

using IterationCallback = std::function<void(const IterationReport&, const SyntheticCorpus&)>;

// bootstrap_synthetic once (unless resuming), then cfg.iterations loop
// bodies. Deterministic given the seed and deterministic backends.
// `on_iteration` fires after each committed iteration.
PipelineResult run_pipeline(const PipelineConfig& cfg, Backends& backends,
                            const GoldAmrCorpus& gold,
                            const std::map<std::string, MonoStyleCorpus>& mono,
                            const SimilarityFn& sim_fn, const EmbeddingStore* store = nullptr,
                            const ExtractionConfig& xcfg = ExtractionConfig::defaults(),
                            const IterationCallback& on_iteration = {},
                            std::optional<SyntheticCorpus> resume_synthetic = std::nullopt,
                            std::size_t start_iteration = 0);

// Inference: encode, decode with the target-style decoder, and keep the
// intermediate graph for auditability.
struct StyleTransferResult {
  std::string text;
  AmrGraph graph;
};
StyleTransferResult style_transfer(const std::string& sentence, const std::string& source_style,
                                   const std::string& target_style, EncoderBackend& encoder,
                                   const std::map<std::string,
                                                  std::shared_ptr<DecoderBackend>>& decoders);

// Round-trip protocol: decode(encode(r)) scored against r per sentence.
struct ReconstructionReport {
  std::string style;
  double wmd = 0.0;
  double sim = 0.0;
  double self_bleu = 0.0;
  double style_retention = 0.0;
  std::size_t n = 0;
  std::vector<ItemFailure> failures;
};
ReconstructionReport reconstruction_eval(const MonoStyleCorpus& corpus, EncoderBackend& encoder,
                                         DecoderBackend& decoder, const EmbeddingStore& store,
                                         const ExtractionConfig& xcfg, const SimilarityFn& sim_fn,
                                         const StyleScorer* scorer = nullptr);

// Fits a style scorer on one token-sequence corpus per style.
class StyleScorerFactory {
 public:
  virtual ~StyleScorerFactory() = default;
  virtual std::unique_ptr<StyleScorer> fit(
      const std::map<std::string, std::vector<std::vector<std::string>>>& sequences) = 0;
};

// Assigns each token to the style where it occurs strictly most often and
// classifies by marker count (deterministic stand-in for a trained
// classifier).
class MarkerFrequencyScorerFactory : public StyleScorerFactory {
 public:
  std::unique_ptr<StyleScorer> fit(
      const std::map<std::string, std::vector<std::vector<std::string>>>& sequences) override;
};

// Per-style classifier accuracy over three input variants: raw sentence
// tokens, masked sentence tokens, and masked AMR content tokens from the
// encoder.
struct ProbeReport {
  std::vector<std::string> variants;
  std::map<std::string, std::map<std::string, double>> accuracy;  // style -> variant -> acc
  std::map<std::string, double> average;                          // variant -> mean

  nlohmann::ordered_json to_json() const;
};
ProbeReport style_agnosticity_probe(const std::map<std::string, MonoStyleCorpus>& corpora,
                                    EncoderBackend& encoder, const PosTagger& tagger,
                                    StyleScorerFactory& factory,
                                    const ExtractionConfig& xcfg = ExtractionConfig::defaults());

// --- Corpus I/O ---

// Gold: {"text": ..., "penman": ...} per line. Mono: {"text": ...} per line.
GoldAmrCorpus load_gold_corpus_jsonl(const std::string& path);
MonoStyleCorpus load_mono_corpus_jsonl(const std::string& path, const std::string& style);
GoldAmrCorpus read_gold_corpus_jsonl(const std::string& text);
MonoStyleCorpus read_mono_corpus_jsonl(const std::string& text, const std::string& style);

std::string synthetic_to_jsonl(const std::vector<SyntheticPair>& pairs);
std::vector<SyntheticPair> synthetic_from_jsonl(const std::string& text);

}  // namespace amrst

#endif  // AMRST_PIPELINE_HPP
