#include "amrst/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "amrst/bleu.hpp"
#include "amrst/errors.hpp"
#include "amrst/wmd.hpp"

namespace amrst {

namespace {

void check_abort(std::size_t failed, std::size_t processed, std::size_t total, double fraction,
                 const std::string& what) {
  if (processed < 10) return;  // let small corpora finish before judging
  if (static_cast<double>(failed) > fraction * static_cast<double>(total))
    throw BackendError(BackendError::Kind::Item,
                       what + ": " + std::to_string(failed) + "/" + std::to_string(total) +
                           " items failed (abort threshold " + std::to_string(fraction) + ")");
}

double mean_similarity(const std::vector<SyntheticPair>& pairs) {
  if (pairs.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& p : pairs) sum += p.similarity;
  return sum / static_cast<double>(pairs.size());
}

nlohmann::ordered_json stats_to_json(const std::map<std::string, FilterStats>& stats) {
  nlohmann::ordered_json j;
  for (const auto& [style, s] : stats) {
    nlohmann::ordered_json row;
    row["input"] = s.input;
    row["kept"] = s.kept;
    row["dropped_similarity"] = s.dropped_similarity;
    row["dropped_wmd"] = s.dropped_wmd;
    row["failed"] = s.failed;
    row["mean_similarity"] = format_fixed(s.mean_similarity);
    j[style] = std::move(row);
  }
  return j;
}

// Marker-count scorer produced by MarkerFrequencyScorerFactory; unlike the
// public lexicon scorer it tolerates empty and identical marker sets (a
// fitted corpus may carry no signal at all).
class FittedMarkerScorer : public StyleScorer {
 public:
  FittedMarkerScorer(std::map<std::string, std::unordered_set<std::string>> markers)
      : markers_(std::move(markers)) {}

  StyleDecision classify(const std::string& sentence) const override {
    const auto tokens = tokenize(lowercase(sentence));
    std::size_t total = 0;
    std::string best_style = markers_.begin()->first;
    std::size_t best_count = 0;
    for (const auto& [style, set] : markers_) {
      std::size_t count = 0;
      for (const auto& t : tokens)
        if (set.count(t)) ++count;
      total += count;
      if (count > best_count) {
        best_count = count;
        best_style = style;
      }
    }
    return {best_style, total ? static_cast<double>(best_count) / static_cast<double>(total) : 0.0};
  }

  std::vector<std::string> labels() const override {
    std::vector<std::string> out;
    for (const auto& [style, set] : markers_) out.push_back(style);
    return out;
  }

 private:
  std::map<std::string, std::unordered_set<std::string>> markers_;
};

}  // namespace

void PipelineConfig::validate() const {
  if (styles.size() < 2) throw ValidationError("pipeline needs at least 2 styles");
  if (delta < 0.0 || delta > 1.0) throw ValidationError("delta must lie in [0, 1]");
  if (iterations < 1) throw ValidationError("iterations must be >= 1");
  if (wmd_filter && *wmd_filter < 0.0) throw ValidationError("wmd_filter must be nonnegative");
  std::unordered_set<std::string> seen;
  for (const auto& s : styles)
    if (!seen.insert(s).second) throw ValidationError("duplicate style '" + s + "'");
}

SyntheticCorpus SyntheticBuildResult::merged() const {
  SyntheticCorpus all;
  for (const auto& [style, pairs] : per_style)
    all.pairs.insert(all.pairs.end(), pairs.begin(), pairs.end());
  return all;
}

SyntheticBuildResult bootstrap_synthetic(const GoldAmrCorpus& gold, StylerBackend& styler,
                                         const SimilarityFn& sim_fn, const PipelineConfig& cfg,
                                         const EmbeddingStore* store,
                                         const ExtractionConfig& xcfg) {
  cfg.validate();
  if (gold.pairs.empty()) throw ValidationError("gold corpus is empty");
  if (cfg.wmd_filter && !store)
    throw ValidationError("wmd_filter requires an embedding store");

  SyntheticBuildResult result;
  for (const auto& style : cfg.styles) {
    auto& kept = result.per_style[style];
    auto& stats = result.stats[style];
    stats.input = gold.pairs.size();
    for (std::size_t i = 0; i < gold.pairs.size(); ++i) {
      const auto& [sentence, graph] = gold.pairs[i];
      try {
        const std::string stylized = styler.stylize(sentence, style);
        const double sim = sim_fn(sentence, stylized);
        if (sim < cfg.delta) {
          ++stats.dropped_similarity;
          continue;
        }
        if (cfg.wmd_filter && wmd_overall(stylized, graph, *store, xcfg) >= *cfg.wmd_filter) {
          ++stats.dropped_wmd;
          continue;
        }
        kept.push_back({stylized, graph, style, sim});
      } catch (const std::exception& e) {
        ++stats.failed;
        result.failures.push_back({i, style, e.what()});
        check_abort(stats.failed, i + 1, gold.pairs.size(), cfg.abort_failure_fraction,
                    "bootstrap stylization for '" + style + "'");
      }
    }
    stats.kept = kept.size();
    stats.mean_similarity = mean_similarity(kept);
  }
  return result;
}

TrainsetBuildResult build_decoder_trainset(const MonoStyleCorpus& corpus, EncoderBackend& encoder,
                                           double abort_failure_fraction) {
  if (corpus.sentences.empty())
    throw ValidationError("mono-style corpus '" + corpus.style + "' is empty");
  TrainsetBuildResult result;
  result.set.style = corpus.style;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    try {
      result.set.pairs.emplace_back(corpus.sentences[i], encoder.to_amr(corpus.sentences[i]));
    } catch (const std::exception& e) {
      result.failures.push_back({i, corpus.style, e.what()});
      check_abort(result.failures.size(), i + 1, corpus.sentences.size(), abort_failure_fraction,
                  "encoding corpus '" + corpus.style + "'");
    }
  }
  return result;
}

SyntheticBuildResult regenerate_synthetic(
    const GoldAmrCorpus& gold,
    const std::map<std::string, std::shared_ptr<DecoderBackend>>& decoders,
    const SimilarityFn& sim_fn, const PipelineConfig& cfg) {
  cfg.validate();
  SyntheticBuildResult result;
  for (const auto& style : cfg.styles) {
    auto it = decoders.find(style);
    if (it == decoders.end() || !it->second)
      throw ValidationError("no decoder for style '" + style + "'");
    auto& kept = result.per_style[style];
    auto& stats = result.stats[style];
    stats.input = gold.pairs.size();
    for (std::size_t i = 0; i < gold.pairs.size(); ++i) {
      const auto& [sentence, graph] = gold.pairs[i];
      try {
        const std::string regenerated = it->second->to_text(graph);
        double sim = 0.0;
        try {
          sim = sim_fn(sentence, regenerated);
        } catch (const EmptyExtractionError&) {
          sim = 0.0;  // e.g. decoder emitted an empty string
        }
        if (cfg.refilter_each_iteration && sim < cfg.delta) {
          ++stats.dropped_similarity;
          continue;
        }
        kept.push_back({regenerated, graph, style, sim});
      } catch (const std::exception& e) {
        ++stats.failed;
        result.failures.push_back({i, style, e.what()});
        check_abort(stats.failed, i + 1, gold.pairs.size(), cfg.abort_failure_fraction,
                    "regenerating corpus '" + style + "'");
      }
    }
    stats.kept = kept.size();
    stats.mean_similarity = mean_similarity(kept);
  }
  return result;
}

IterationReport run_iteration(PipelineState& state, const PipelineConfig& cfg,
                              const SimilarityFn& sim_fn) {
  cfg.validate();
  if (!state.gold || !state.mono || !state.backends)
    throw ValidationError("pipeline state is not fully initialized");
  if (!state.backends->encoder) throw ValidationError("no encoder backend");
  if (!state.backends->styler) throw ValidationError("no styler backend");

  IterationReport report;
  report.index = state.completed_iterations + 1;

  // X := S u synthetic, deduplicated on (sentence, canonical serialization).
  std::vector<std::pair<std::string, AmrGraph>> trainset;
  std::unordered_set<std::string> seen;
  auto add = [&](const std::string& sentence, const AmrGraph& graph) {
    std::string key = sentence;
    key += '\x1f';
    key += serialize_penman(graph);
    if (seen.insert(key).second) trainset.emplace_back(sentence, graph);
  };
  for (const auto& [sentence, graph] : state.gold->pairs) add(sentence, graph);
  for (const auto& p : state.synthetic.pairs) add(p.sentence, p.graph);
  report.encoder_trainset_size = trainset.size();

  state.backends->encoder->fine_tune(trainset);

  for (const auto& style : cfg.styles) {
    auto mono_it = state.mono->find(style);
    if (mono_it == state.mono->end())
      throw ValidationError("no mono-style corpus for style '" + style + "'");
    auto dec_it = state.backends->decoders.find(style);
    if (dec_it == state.backends->decoders.end() || !dec_it->second)
      throw ValidationError("no decoder for style '" + style + "'");
    TrainsetBuildResult built = build_decoder_trainset(mono_it->second, *state.backends->encoder,
                                                       cfg.abort_failure_fraction);
    report.decoder_trainset_sizes[style] = built.set.pairs.size();
    dec_it->second->fine_tune(built.set.pairs);
  }

  SyntheticBuildResult regen =
      regenerate_synthetic(*state.gold, state.backends->decoders, sim_fn, cfg);
  report.regen_stats = regen.stats;

  SyntheticCorpus next = regen.merged();
  report.synthetic_size = next.pairs.size();
  report.synthetic_mean_similarity = mean_similarity(next.pairs);

  // Commit only now: a throw above leaves the previous synthetic corpus and
  // iteration count untouched.
  state.synthetic = std::move(next);
  ++state.completed_iterations;
  return report;
}

nlohmann::ordered_json IterationReport::to_json() const {
  nlohmann::ordered_json j;
  j["iteration"] = index;
  j["encoder_trainset_size"] = encoder_trainset_size;
  nlohmann::ordered_json dec;
  for (const auto& [style, size] : decoder_trainset_sizes) dec[style] = size;
  j["decoder_trainset_sizes"] = std::move(dec);
  j["regenerated"] = stats_to_json(regen_stats);
  j["synthetic_size"] = synthetic_size;
  j["synthetic_mean_similarity"] = format_fixed(synthetic_mean_similarity);
  return j;
}

PipelineResult run_pipeline(const PipelineConfig& cfg, Backends& backends,
                            const GoldAmrCorpus& gold,
                            const std::map<std::string, MonoStyleCorpus>& mono,
                            const SimilarityFn& sim_fn, const EmbeddingStore* store,
                            const ExtractionConfig& xcfg, const IterationCallback& on_iteration,
                            std::optional<SyntheticCorpus> resume_synthetic,
                            std::size_t start_iteration) {
  cfg.validate();
  if (!backends.styler) throw ValidationError("no styler backend");

  PipelineResult result;
  result.log = nlohmann::ordered_json::object();
  PipelineState state;
  state.gold = &gold;
  state.mono = &mono;
  state.backends = &backends;
  state.completed_iterations = start_iteration;

  if (resume_synthetic) {
    state.synthetic = std::move(*resume_synthetic);
    result.log["resumed_from_iteration"] = start_iteration;
  } else {
    SyntheticBuildResult boot =
        bootstrap_synthetic(gold, *backends.styler, sim_fn, cfg, store, xcfg);
    result.bootstrap_stats = boot.stats;
    state.synthetic = boot.merged();
    result.log["bootstrap"] = stats_to_json(boot.stats);
  }

  nlohmann::ordered_json iteration_log = nlohmann::ordered_json::array();
  while (state.completed_iterations < cfg.iterations) {
    IterationReport report = run_iteration(state, cfg, sim_fn);
    iteration_log.push_back(report.to_json());
    if (on_iteration) on_iteration(report, state.synthetic);
    result.iterations.push_back(std::move(report));
  }
  result.log["iterations"] = std::move(iteration_log);
  result.final_synthetic = std::move(state.synthetic);
  return result;
}

StyleTransferResult style_transfer(
    const std::string& sentence, const std::string& source_style, const std::string& target_style,
    EncoderBackend& encoder,
    const std::map<std::string, std::shared_ptr<DecoderBackend>>& decoders) {
  (void)source_style;  // recorded by callers; transfer itself needs only the target
  auto it = decoders.find(target_style);
  if (it == decoders.end() || !it->second)
    throw ValidationError("unknown target style '" + target_style + "'");
  StyleTransferResult result;
  result.graph = encoder.to_amr(sentence);
  result.text = it->second->to_text(result.graph);
  return result;
}

ReconstructionReport reconstruction_eval(const MonoStyleCorpus& corpus, EncoderBackend& encoder,
                                         DecoderBackend& decoder, const EmbeddingStore& store,
                                         const ExtractionConfig& xcfg, const SimilarityFn& sim_fn,
                                         const StyleScorer* scorer) {
  if (corpus.sentences.empty())
    throw ValidationError("mono-style corpus '" + corpus.style + "' is empty");
  ReconstructionReport report;
  report.style = corpus.style;
  double wmd_sum = 0.0, sim_sum = 0.0, bleu_sum = 0.0;
  std::size_t retention_hits = 0, scored = 0;
  for (std::size_t i = 0; i < corpus.sentences.size(); ++i) {
    const std::string& original = corpus.sentences[i];
    try {
      const std::string rebuilt = decoder.to_text(encoder.to_amr(original));
      wmd_sum += wmd(extract_sentence_content(original, xcfg),
                     extract_sentence_content(rebuilt, xcfg), store);
      sim_sum += sim_fn(original, rebuilt);
      bleu_sum += self_bleu(original, rebuilt);
      if (scorer && scorer->classify(rebuilt).label == corpus.style) ++retention_hits;
      ++scored;
    } catch (const std::exception& e) {
      report.failures.push_back({i, corpus.style, e.what()});
    }
  }
  if (scored == 0) throw EmptyExtractionError("no sentence of the corpus could be scored");
  report.n = scored;
  report.wmd = wmd_sum / static_cast<double>(scored);
  report.sim = sim_sum / static_cast<double>(scored);
  report.self_bleu = bleu_sum / static_cast<double>(scored);
  report.style_retention =
      scorer ? static_cast<double>(retention_hits) / static_cast<double>(scored) : 0.0;
  return report;
}

std::unique_ptr<StyleScorer> MarkerFrequencyScorerFactory::fit(
    const std::map<std::string, std::vector<std::vector<std::string>>>& sequences) {
  if (sequences.empty()) throw ValidationError("cannot fit a scorer on no styles");
  // token -> style -> count
  std::map<std::string, std::map<std::string, std::size_t>> freq;
  for (const auto& [style, seqs] : sequences)
    for (const auto& seq : seqs)
      for (const auto& tok : seq) ++freq[lowercase(tok)][style];

  std::map<std::string, std::unordered_set<std::string>> markers;
  for (const auto& [style, seqs] : sequences) markers[style];  // all styles present
  for (const auto& [token, by_style] : freq) {
    std::string best;
    std::size_t best_count = 0;
    bool tie = false;
    for (const auto& [style, count] : by_style) {
      if (count > best_count) {
        best = style;
        best_count = count;
        tie = false;
      } else if (count == best_count) {
        tie = true;
      }
    }
    if (!tie && !best.empty()) markers[best].insert(token);
  }
  return std::make_unique<FittedMarkerScorer>(std::move(markers));
}

ProbeReport style_agnosticity_probe(const std::map<std::string, MonoStyleCorpus>& corpora,
                                    EncoderBackend& encoder, const PosTagger& tagger,
                                    StyleScorerFactory& factory, const ExtractionConfig& xcfg) {
  if (corpora.size() < 2) throw ValidationError("probe needs at least 2 styles");
  ProbeReport report;
  report.variants = {"original", "original_masked", "amr_masked"};

  MaskConfig text_mask{xcfg.mask_token, /*mask_amr_structure=*/false};
  MaskConfig amr_mask{xcfg.mask_token, /*mask_amr_structure=*/true};

  // variant -> style -> sequences
  std::map<std::string, std::map<std::string, std::vector<std::vector<std::string>>>> inputs;
  for (const auto& [style, corpus] : corpora) {
    for (const auto& sentence : corpus.sentences) {
      const auto tokens = tokenize(sentence);
      inputs["original"][style].push_back(tokens);
      inputs["original_masked"][style].push_back(mask_for_style_probe(tokens, tagger, text_mask));
      const auto amr_tokens = extract_amr_content(encoder.to_amr(sentence), xcfg);
      inputs["amr_masked"][style].push_back(mask_for_style_probe(amr_tokens, tagger, amr_mask));
    }
  }

  for (const auto& variant : report.variants) {
    const auto& per_style = inputs[variant];
    auto scorer = factory.fit(per_style);
    double acc_sum = 0.0;
    for (const auto& [style, seqs] : per_style) {
      std::size_t hits = 0;
      for (const auto& seq : seqs) {
        std::string joined;
        for (std::size_t i = 0; i < seq.size(); ++i) {
          if (i) joined += ' ';
          joined += seq[i];
        }
        if (scorer->classify(joined).label == style) ++hits;
      }
      const double acc =
          seqs.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(seqs.size());
      report.accuracy[style][variant] = acc;
      acc_sum += acc;
    }
    report.average[variant] = acc_sum / static_cast<double>(per_style.size());
  }
  return report;
}

nlohmann::ordered_json ProbeReport::to_json() const {
  nlohmann::ordered_json j;
  j["variants"] = variants;
  nlohmann::ordered_json grid;
  for (const auto& [style, row] : accuracy) {
    nlohmann::ordered_json r;
    for (const auto& variant : variants) r[variant] = format_fixed(row.at(variant));
    grid[style] = std::move(r);
  }
  j["accuracy"] = std::move(grid);
  nlohmann::ordered_json avg;
  for (const auto& variant : variants) avg[variant] = format_fixed(average.at(variant));
  j["average"] = std::move(avg);
  return j;
}

// --- Corpus I/O ---

namespace {

template <typename Fn>
void for_each_jsonl(const std::string& text, Fn&& fn) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("bad JSON: ") + e.what(), line_no);
    }
    fn(j, line_no);
  }
}

std::string slurp(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(std::string("cannot open ") + what + " '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

GoldAmrCorpus read_gold_corpus_jsonl(const std::string& text) {
  GoldAmrCorpus corpus;
  for_each_jsonl(text, [&](const nlohmann::json& j, std::size_t line_no) {
    try {
      corpus.pairs.emplace_back(j.at("text").get<std::string>(),
                                parse_penman(j.at("penman").get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("gold row needs text+penman: ") + e.what(), line_no);
    } catch (const ParseError& e) {
      throw FormatError(std::string("bad penman: ") + e.what(), line_no);
    }
  });
  if (corpus.pairs.empty()) throw FormatError("gold corpus is empty");
  return corpus;
}

MonoStyleCorpus read_mono_corpus_jsonl(const std::string& text, const std::string& style) {
  MonoStyleCorpus corpus;
  corpus.style = style;
  for_each_jsonl(text, [&](const nlohmann::json& j, std::size_t line_no) {
    try {
      corpus.sentences.push_back(j.at("text").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("mono row needs text: ") + e.what(), line_no);
    }
  });
  if (corpus.sentences.empty()) throw FormatError("mono-style corpus is empty");
  return corpus;
}

GoldAmrCorpus load_gold_corpus_jsonl(const std::string& path) {
  return read_gold_corpus_jsonl(slurp(path, "gold corpus"));
}

MonoStyleCorpus load_mono_corpus_jsonl(const std::string& path, const std::string& style) {
  return read_mono_corpus_jsonl(slurp(path, "mono corpus"), style);
}

std::string synthetic_to_jsonl(const std::vector<SyntheticPair>& pairs) {
  std::string out;
  for (const auto& p : pairs) {
    nlohmann::ordered_json j;
    j["text"] = p.sentence;
    j["penman"] = serialize_penman(p.graph);
    j["style"] = p.style;
    j["similarity"] = p.similarity;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<SyntheticPair> synthetic_from_jsonl(const std::string& text) {
  std::vector<SyntheticPair> pairs;
  for_each_jsonl(text, [&](const nlohmann::json& j, std::size_t line_no) {
    try {
      SyntheticPair p;
      p.sentence = j.at("text").get<std::string>();
      p.graph = parse_penman(j.at("penman").get<std::string>());
      p.style = j.at("style").get<std::string>();
      p.similarity = j.at("similarity").get<double>();
      pairs.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("bad synthetic row: ") + e.what(), line_no);
    } catch (const ParseError& e) {
      throw FormatError(std::string("bad penman: ") + e.what(), line_no);
    }
  });
  return pairs;
}

}  // namespace amrst
